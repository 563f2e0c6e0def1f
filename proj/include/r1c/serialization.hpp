#pragma once

#include "r1c/choquet1d.hpp"
#include "r1c/convexity.hpp"
#include "r1c/measure.hpp"
#include "r1c/prelaminate.hpp"
#include "r1c/report.hpp"

#include <json.hpp>

#include <string>

namespace r1c {

using json = nlohmann::json;

json to_json(const Eigen::MatrixXd& m);
json to_json(const ComplexPair& p);
json to_json(const Point& p);
json to_json(const Domain& d);
json to_json(const VerificationReport& r);
json to_json(const ConvexityWitness& w);
json to_json(const ScanConfig& cfg);
json to_json(const ViolationReport& r);
json to_json(const Prelaminate& p);
json to_json(const DiscreteMeasure& nu);
json to_json(const LaminateTestReport& r);
json to_json(const NullLagrangianFit& fit, int n);
json to_json(const MinorRankResult& r);
json to_json(const HomogeneityBoundResult& r);

Eigen::MatrixXd matrix_from_json(const json& j);

/// Measure file schema:
/// {"space": "full"|"symmetric", "n": int,
///  "atoms": [{"weight": w, "matrix": [[...], ...]}, ...]}
/// Validation failures (weight sum, symmetry, shapes) throw with a message
/// naming the offending quantity.
DiscreteMeasure measure_from_json(const json& j);
DiscreteMeasure parse_measure_file(const std::string& path);

}  // namespace r1c
