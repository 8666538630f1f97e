#pragma once

#include "hardyop/carleson.hpp"

// vendor single-header nlohmann/json
#include "json.hpp"

namespace hardyop::io {

using json = nlohmann::json;

// exponents may be infinite; they travel as the string "inf"
json exponent_to_json(double p);
double exponent_from_json(const json& j);

json to_json(const QuadratureScheme& s);
QuadratureScheme scheme_from_json(const json& j);

json to_json(const CarlesonWindow& w);
CarlesonWindow window_from_json(const json& j);

json to_json(const Symbol& s);
Symbol symbol_from_json(const json& j);

json pair_to_json(const Symbol& psi, const BallSelfMap& phi);
std::pair<Symbol, BallSelfMap> pair_from_json(const json& j);
std::pair<Symbol, BallSelfMap> load_pair_file(const std::string& path);

json to_json(const HardyExpansion& e);
HardyExpansion expansion_from_json(const json& j);

json to_json(const EmpiricalPullbackMeasure& mu);
EmpiricalPullbackMeasure measure_from_json(const json& j);

json to_json(const ExtremeSetProfile& p);
json to_json(const EstimateReport& r);
json to_json(const BoundednessReport& r);
json to_json(const CarlesonReport& r);
json to_json(const CompactnessVerdict& v);

/// (x, y) rows as CSV text with a header line.
std::string trace_csv(const std::string& xname, const std::string& yname,
                      std::span<const std::pair<double, double>> rows);

/// Write text to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace hardyop::io
