#include "balltrace/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace balltrace {

namespace {

void write_number(std::ostream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
  os << buf;
}

void write(std::ostream& os, const Json& j, int indent, int depth) {
  const auto pad = [&](int level) {
    if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ',';
        first = false;
        pad(depth + 1);
        os << Json(k).dump() << (indent > 0 ? ": " : ":");
        write(os, v, indent, depth + 1);
      }
      pad(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // arrays of scalars stay on one line
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
      os << '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << (flat && indent > 0 ? ", " : ",");
        first = false;
        if (!flat) pad(depth + 1);
        write(os, v, indent, depth + 1);
      }
      if (!flat) pad(depth);
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

Json window_json(std::uint64_t lo, std::uint64_t hi) { return Json::array({lo, hi}); }

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  return os.str();
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const IntegralValue& v) {
  Json j;
  j["value"] = v.approx.real();
  j["value_imag"] = v.approx.imag();
  j["exact"] = v.exact ? Json(to_string(*v.exact)) : Json(nullptr);
  j["provenance"] = v.provenance == Provenance::closed_form ? "closed-form" : "monte-carlo";
  return j;
}

Json to_json(const PartFit& f) {
  Json j;
  j["kappa"] = f.kappa;
  j["intercept"] = f.intercept;
  j["window"] = window_json(f.n_lo, f.n_hi);
  j["points"] = f.points;
  j["residual"] = f.residual;
  j["stability"] = f.stability;
  j["finite_rank"] = f.finite_rank;
  j["macaev_bound"] = f.macaev_bound;
  return j;
}

Json to_json(const DixmierFit& f, std::size_t curve_points) {
  Json j;
  j["kappa"] = f.kappa;
  j["intercept"] = f.intercept;
  j["window"] = window_json(f.n_lo, f.n_hi);
  j["residual"] = f.residual;
  j["stability"] = f.stability;
  j["stable"] = f.stable;
  j["macaev_bound"] = f.macaev_bound;
  j["eigenvalue_count"] = f.eigenvalue_count;
  j["completeness_threshold"] = f.completeness_threshold;
  j["positive"] = to_json(f.positive);
  j["negative"] = to_json(f.negative);
  if (curve_points > 0) {
    Json n = Json::array(), s = Json::array();
    const auto& pts = f.curves.positive.points;
    const std::size_t step = std::max<std::size_t>(1, pts.size() / curve_points);
    for (std::size_t i = 0; i < pts.size(); i += step) {
      n.push_back(pts[i].n);
      s.push_back(pts[i].sum);
    }
    j["curve"] = Json{{"n", n}, {"sum", s}};
  }
  return j;
}

Json to_json(const SpectralRun& r) {
  Json j;
  j["path"] = to_string(r.path);
  j["shells"] = r.shells;
  if (r.path == SpectralPath::dense) j["truncation"] = r.truncation;
  j["exact_window"] = r.exact_degree;
  j["kappa"] = r.kappa.real();
  j["kappa_imag"] = r.kappa.imag();
  if (r.path == SpectralPath::closed_form) j["scalar"] = complex_json(r.scalar);
  j["stable"] = r.stable();
  j["fit"] = to_json(r.fit);
  if (r.anti_hermitian) j["anti_hermitian_fit"] = to_json(*r.anti_hermitian);
  if (r.path == SpectralPath::dense) j["eigen_residual"] = r.eigen_residual;
  return j;
}

Json to_json(const TraceFormulaReport& r) {
  Json j;
  j["kappa"] = r.run.kappa.real();
  j["kappa_imag"] = r.run.kappa.imag();
  j["intercept"] = r.run.fit.intercept;
  j["window"] = window_json(r.run.fit.n_lo, r.run.fit.n_hi);
  j["stability"] = r.run.fit.stability;
  j["integral_exact"] = r.integral.exact ? Json(to_string(*r.integral.exact)) : Json(nullptr);
  j["integral"] = r.integral.approx.real();
  j["integral_imag"] = r.integral.approx.imag();
  j["ratio"] = r.ratio ? Json(r.ratio->real()) : Json(nullptr);
  j["ratio_imag"] = r.ratio ? Json(r.ratio->imag()) : Json(nullptr);
  j["factorial_ratio"] = r.factorial_ratio ? Json(r.factorial_ratio->real()) : Json(nullptr);
  j["model_constant"] = r.model_constant;
  j["literal_ratio"] = r.literal_ratio;
  Json pairs = Json::array();
  for (const auto& [f, g] : r.pairs) pairs.push_back(Json::array({f.to_string(), g.to_string()}));
  j["pairs"] = pairs;
  j["integrand"] = r.integrand.to_string();
  j["spectral"] = to_json(r.run);
  return j;
}

Json to_json(const HankelReport& r) {
  Json j;
  j["kappa"] = r.run.kappa.real();
  j["intercept"] = r.run.fit.intercept;
  j["window"] = window_json(r.run.fit.n_lo, r.run.fit.n_hi);
  j["stability"] = r.run.fit.stability;
  j["integral_exact"] = r.integral.exact ? Json(to_string(*r.integral.exact)) : Json(nullptr);
  j["integral"] = r.integral.approx.real();
  j["bracket_integral_exact"] = r.bracket_integral.exact ? Json(to_string(*r.bracket_integral.exact)) : Json(nullptr);
  j["bracket_integral"] = r.bracket_integral.approx.real();
  j["ratio"] = r.ratio ? Json(*r.ratio) : Json(nullptr);
  j["factorial_ratio"] = r.factorial_ratio ? Json(*r.factorial_ratio) : Json(nullptr);
  j["model_constant"] = r.model_constant;
  j["literal_ratio"] = r.literal_ratio;
  j["f"] = r.f.to_string();
  j["density"] = r.density.to_string();
  j["spectral"] = to_json(r.run);
  return j;
}

Json to_json(const CalibrationReport& r) {
  Json j;
  j["kappa"] = r.fit.kappa;
  j["expected"] = r.expected;
  j["relative_error"] = r.expected != 0.0 ? (r.fit.kappa - r.expected) / r.expected : r.fit.kappa;
  j["literal_value"] = r.literal_value;
  j["literal_ratio"] = r.fit.kappa / r.literal_value;
  j["quotient_range"] = Json{{"n_min", 10000}, {"n_max", 1000000}, {"min", r.quotient.min}, {"max", r.quotient.max},
                             {"points", r.quotient.points}};
  j["fit"] = to_json(r.fit, 64);
  return j;
}

Json to_json(const WedgeIntegral& w) {
  Json j;
  j["determinant"] = w.determinant.to_string();
  j["normalized_integral"] = to_json(w.raw);
  j["lebesgue_integral"] = complex_json(w.scaled);
  j["form_constant"] = complex_json(w.form_constant);
  j["value"] = complex_json(w.value);
  return j;
}

Json to_json(const HeltonHoweReport& r, std::size_t trace_points) {
  Json j;
  j["partial_trace"] = complex_json(r.partial_traces.back());
  j["limit"] = complex_json(r.limit);
  j["rate"] = complex_json(r.rate);
  j["wedge"] = to_json(r.wedge);
  j["constant"] = complex_json(r.constant);
  j["window"] = r.window;
  j["truncation"] = r.truncation;
  j["exact_window"] = r.exact_degree;
  Json n = Json::array(), re = Json::array(), im = Json::array();
  const std::size_t total = r.partial_traces.size();
  const std::size_t step = std::max<std::size_t>(1, total / std::max<std::size_t>(trace_points, 1));
  for (std::size_t i = 0; i < total; i += step) {
    n.push_back(i);
    re.push_back(r.partial_traces[i].real());
    im.push_back(r.partial_traces[i].imag());
  }
  j["traces"] = Json{{"n", n}, {"re", re}, {"im", im}};
  Json syms = Json::array();
  for (const auto& s : r.symbols) syms.push_back(s.to_string());
  j["symbols"] = syms;
  return j;
}

Json to_json(const SchattenRow& row) {
  Json j;
  j["p"] = row.p;
  j["window"] = row.window;
  j["partial"] = row.partial;
  j["integral"] = to_json(row.integral);
  j["ratio"] = row.ratio;
  return j;
}

Json to_json(const BlockOperator& a) {
  Json j;
  j["d"] = a.dim();
  j["nu"] = a.nu() ? Json(*a.nu()) : Json(nullptr);
  j["N"] = a.max_degree();
  j["exact_degree"] = a.exact_degree();
  Json blocks = Json::array();
  for (int s : a.shifts())
    for (int m = 0; m <= a.max_degree(); ++m) {
      if (!a.has_block(m, s)) continue;
      const DenseBlock b = a.dense_block(m, s);
      Json re = Json::array(), im = Json::array();
      for (Eigen::Index c = 0; c < b.cols(); ++c)
        for (Eigen::Index r = 0; r < b.rows(); ++r) {
          re.push_back(b(r, c).real());
          im.push_back(b(r, c).imag());
        }
      blocks.push_back(Json{{"m", m}, {"s", s}, {"rows", b.rows()}, {"cols", b.cols()}, {"re", re}, {"im", im}});
    }
  j["blocks"] = blocks;
  return j;
}

BlockOperator operator_from_json(const Json& j) {
  const std::optional<double> nu = j.at("nu").is_null() ? std::nullopt : std::optional<double>(j.at("nu").get<double>());
  BlockOperator a(j.at("d").get<int>(), nu, j.at("N").get<int>());
  a.set_exact_degree(j.at("exact_degree").get<int>());
  for (const auto& b : j.at("blocks")) {
    const int m = b.at("m").get<int>(), s = b.at("s").get<int>();
    a.ensure_shift(s);
    auto& blk = a.mutable_block(m, s);
    const auto rows = b.at("rows").get<Eigen::Index>(), cols = b.at("cols").get<Eigen::Index>();
    if (rows != blk.rows() || cols != blk.cols()) throw domain_error("blocks", "block shape does not match the basis");
    const auto& re = b.at("re");
    const auto& im = b.at("im");
    std::vector<Eigen::Triplet<Complex>> trip;
    for (Eigen::Index c = 0; c < cols; ++c)
      for (Eigen::Index r = 0; r < rows; ++r) {
        const auto k = static_cast<std::size_t>(c * rows + r);
        const Complex v(re.at(k).get<double>(), im.at(k).get<double>());
        if (v != Complex{}) trip.emplace_back(r, c, v);
      }
    blk.setFromTriplets(trip.begin(), trip.end());
  }
  return a;
}

void write_curve_csv(std::ostream& os, const Curves& c) {
  os << "sign,n,sum,edge\n";
  char buf[96];
  for (int sign = 0; sign < 2; ++sign)
    for (const auto& p : (sign == 0 ? c.positive : c.negative).points) {
      std::snprintf(buf, sizeof buf, "%s,%llu,%.17g,%.17g\n", sign == 0 ? "+" : "-",
                    static_cast<unsigned long long>(p.n), p.sum, p.edge);
      os << buf;
    }
}

}  // namespace balltrace
