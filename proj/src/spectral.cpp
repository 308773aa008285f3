#include "balltrace/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace balltrace {

ShellSpectrum::ShellSpectrum(int dim, int first_shell) : dim_(dim), first_shell_(first_shell) {}

void ShellSpectrum::push_shell(std::vector<Eigenvalue> values) { shells_.push_back(std::move(values)); }

std::uint64_t ShellSpectrum::count() const {
  std::uint64_t n = 0;
  for (const auto& sh : shells_)
    for (const auto& e : sh) n += e.multiplicity;
  return n;
}

std::vector<double> ShellSpectrum::sorted_by_magnitude() const {
  std::vector<double> v;
  v.reserve(count());
  for (const auto& sh : shells_)
    for (const auto& e : sh) v.insert(v.end(), e.multiplicity, e.value);
  std::stable_sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  return v;
}

namespace {

void check_window(const BlockOperator& a, int first, int last) {
  if (first < 0 || first > last) throw domain_error("shells", "empty or negative shell range");
  if (last > a.exact_degree())
    throw domain_error("shells", "shell " + std::to_string(last) + " lies outside the exact window (exact degree " +
                                     std::to_string(a.exact_degree()) + ")");
}

bool is_diagonal(const SparseBlock& b) {
  for (int k = 0; k < b.outerSize(); ++k)
    for (SparseBlock::InnerIterator it(b, k); it; ++it)
      if (it.row() != it.col() && it.value() != Complex{}) return false;
  return true;
}

}  // namespace

ShellSpectrum hermitian_eigen(const BlockOperator& a, int first, int last) {
  check_window(a, first, last);
  for (int s : a.shifts()) {
    if (s == 0) continue;
    for (int m = first; m <= last; ++m)
      if (a.has_block(m, s) && m + s >= first && m + s <= last && a.block(m, s).norm() > 0.0)
        throw domain_error("operator", "hermitian_eigen needs a degree-diagonal operator on the requested shells");
  }
  const double scale = std::max(max_abs_entry(a, last), 1e-300);
  const int count = last - first + 1;
  std::vector<std::vector<Eigenvalue>> values(static_cast<std::size_t>(count));
  std::vector<double> residuals(static_cast<std::size_t>(count), 0.0);
  std::vector<double> norms(static_cast<std::size_t>(count), 0.0);
  std::vector<int> asymmetric(static_cast<std::size_t>(count), 0);

#pragma omp parallel for schedule(dynamic)
  for (int m = first; m <= last; ++m) {
    const auto idx = static_cast<std::size_t>(m - first);
    const DenseBlock blk = a.dense_block(m, 0);
    if ((blk - blk.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      asymmetric[idx] = 1;
      continue;
    }
    auto& out = values[idx];
    out.reserve(static_cast<std::size_t>(blk.rows()));
    if (!a.has_block(m, 0) || is_diagonal(a.block(m, 0))) {
      for (Eigen::Index i = 0; i < blk.rows(); ++i) out.push_back({blk(i, i).real(), 1});
      std::sort(out.begin(), out.end(), [](const Eigenvalue& x, const Eigenvalue& y) { return x.value < y.value; });
    } else if (blk.imag().cwiseAbs().maxCoeff() == 0.0) {
      // real symmetric block: same contract, a quarter of the work
      const Eigen::MatrixXd re = blk.real();
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(re);
      if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on shell " + std::to_string(m));
      const auto& lam = es.eigenvalues();
      const Eigen::MatrixXd r = re * es.eigenvectors() - es.eigenvectors() * lam.asDiagonal();
      residuals[idx] = r.colwise().norm().maxCoeff();
      for (Eigen::Index i = 0; i < lam.size(); ++i) out.push_back({lam(i), 1});
    } else {
      const Eigen::SelfAdjointEigenSolver<DenseBlock> es(blk);
      if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed on shell " + std::to_string(m));
      const auto& lam = es.eigenvalues();
      const DenseBlock r = blk * es.eigenvectors() - es.eigenvectors() * lam.asDiagonal();
      residuals[idx] = r.colwise().norm().maxCoeff();
      for (Eigen::Index i = 0; i < lam.size(); ++i) out.push_back({lam(i), 1});
    }
    for (const auto& e : out) norms[idx] = std::max(norms[idx], std::abs(e.value));
  }

  for (int i = 0; i < count; ++i)
    if (asymmetric[static_cast<std::size_t>(i)])
      throw domain_error("operator", "block on shell " + std::to_string(first + i) + " is not Hermitian");

  ShellSpectrum spec(a.dim(), first);
  for (auto& v : values) spec.push_shell(std::move(v));
  const double norm = *std::max_element(norms.begin(), norms.end());
  const double res = *std::max_element(residuals.begin(), residuals.end());
  spec.residual = norm > 0.0 ? res / norm : 0.0;
  if (spec.residual > 1e-9) throw std::runtime_error("eigen residual " + std::to_string(spec.residual) + " above 1e-9");
  return spec;
}

double schatten_partial(const BlockOperator& a, double p, int window) {
  if (!(p > 0.0)) throw domain_error("p", "must be > 0");
  check_window(a, 0, window);
  const auto shifts = a.shifts();
  auto sum_powers = [p](const Eigen::VectorXd& gram_eigs) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < gram_eigs.size(); ++i) s += std::pow(std::max(gram_eigs(i), 0.0), p / 2.0);
    return s;
  };

  if (shifts.size() <= 1) {
    const int s = shifts.empty() ? 0 : shifts.front();
    double total = 0.0;
    for (int m = 0; m <= window; ++m) {
      if (!a.has_block(m, s) || m + s > window) continue;
      const DenseBlock b = a.dense_block(m, s);
      const DenseBlock g = b.adjoint() * b;
      total += sum_powers(Eigen::SelfAdjointEigenSolver<DenseBlock>(g, Eigen::EigenvaluesOnly).eigenvalues());
    }
    return total;
  }
  const DenseBlock dense = dense_window(a, window);
  const DenseBlock g = dense.adjoint() * dense;
  return sum_powers(Eigen::SelfAdjointEigenSolver<DenseBlock>(g, Eigen::EigenvaluesOnly).eigenvalues());
}

std::vector<Complex> partial_traces(const BlockOperator& a, int window) {
  check_window(a, 0, window);
  std::vector<Complex> out;
  Complex acc{};
  for (int m = 0; m <= window; ++m) {
    if (a.has_block(m, 0)) acc += a.block(m, 0).diagonal().sum();
    out.push_back(acc);
  }
  return out;
}

Complex partial_trace(const BlockOperator& a, int window) { return partial_traces(a, window).back(); }

void write_csv(std::ostream& os, const ShellSpectrum& s) {
  const auto old = os.precision(17);
  os << "shell,index,value\n";
  for (int m = s.first_shell(); m <= s.last_shell(); ++m) {
    std::uint64_t index = 0;
    for (const auto& e : s.shell(m))
      for (std::uint64_t k = 0; k < e.multiplicity; ++k) os << m << ',' << index++ << ',' << e.value << '\n';
  }
  os.precision(old);
}

nlohmann::ordered_json to_json(const ShellSpectrum& s) {
  nlohmann::ordered_json j;
  j["d"] = s.dim();
  j["first_shell"] = s.first_shell();
  j["last_shell"] = s.last_shell();
  j["residual"] = s.residual;
  auto shells = nlohmann::ordered_json::array();
  for (int m = s.first_shell(); m <= s.last_shell(); ++m) {
    nlohmann::ordered_json sh;
    sh["m"] = m;
    auto vals = nlohmann::ordered_json::array();
    auto mult = nlohmann::ordered_json::array();
    for (const auto& e : s.shell(m)) {
      vals.push_back(e.value);
      mult.push_back(e.multiplicity);
    }
    sh["values"] = vals;
    sh["multiplicities"] = mult;
    shells.push_back(sh);
  }
  j["shells"] = shells;
  return j;
}

}  // namespace balltrace
