#pragma once

#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "balltrace/experiments.hpp"
#include "balltrace/fock.hpp"

namespace balltrace {

using Json = nlohmann::ordered_json;

/// Serializes with every floating-point value at 17 significant digits
/// ("%.17g"); non-finite values become null.
std::string dump_json(const Json& j, int indent = 2);

Json complex_json(Complex z);
Json to_json(const IntegralValue& v);
Json to_json(const PartFit& f);
/// `curve_points` limits how many partial-sum points are embedded (0: none).
Json to_json(const DixmierFit& f, std::size_t curve_points = 0);
Json to_json(const SpectralRun& r);
Json to_json(const TraceFormulaReport& r);
Json to_json(const HankelReport& r);
Json to_json(const CalibrationReport& r);
Json to_json(const HeltonHoweReport& r, std::size_t trace_points = 64);
Json to_json(const WedgeIntegral& w);
Json to_json(const SchattenRow& row);

/// {d, nu, N, exact_degree, blocks: [{m, s, rows, cols, re: [...], im: [...]}]}
/// with dense column-major block data; nu is null on the Fock side.
Json to_json(const BlockOperator& a);
BlockOperator operator_from_json(const Json& j);

/// Partial-sum curve as CSV: sign,n,sum,edge.
void write_curve_csv(std::ostream& os, const Curves& c);

}  // namespace balltrace
