#include "r1c/serialization.hpp"

#include <fstream>

namespace r1c {

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ComplexPair& p) {
  return json{{"z", {p.z.real(), p.z.imag()}}, {"w", {p.w.real(), p.w.imag()}}};
}

json to_json(const Point& p) {
  if (std::holds_alternative<ComplexPair>(p)) return to_json(std::get<ComplexPair>(p));
  return to_json(std::get<Eigen::MatrixXd>(p));
}

json to_json(const Domain& d) {
  if (d.kind == SpaceKind::complex_pair) return json{{"space", "complex_pair"}};
  return json{{"space", to_string(d.kind)}, {"n", d.n}};
}

json to_json(const VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"where", f.where}, {"invariant", f.invariant}, {"value", f.value}});
  return json{{"passed", r.passed}, {"failures", std::move(failures)}};
}

json to_json(const ConvexityWitness& w) {
  return json{{"base", to_json(w.base)},
              {"direction", to_json(w.direction)},
              {"t", {w.t_minus, w.t_center, w.t_plus}},
              {"gap", w.gap},
              {"scale", w.scale}};
}

json to_json(const ScanConfig& cfg) {
  return json{{"seed", cfg.seed},
              {"n_base_points", cfg.n_base_points},
              {"n_directions", cfg.n_directions},
              {"segment_grid", cfg.segment_grid},
              {"box_radius", cfg.box_radius},
              {"tolerance", cfg.tolerance}};
}

json to_json(const ViolationReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) witnesses.push_back(to_json(w));
  return json{{"integrand_id", r.integrand_id},
              {"passed", r.passed},
              {"violation_count", r.violation_count},
              {"checks", r.checks},
              {"witnesses", std::move(witnesses)},
              {"config_echo", to_json(r.config)}};
}

namespace {

json node_to_json(const PrelamNode& node) {
  json j{{"point", to_json(node.point)}};
  if (!node.is_leaf()) {
    j["lambda"] = node.lambda;
    j["left"] = node_to_json(*node.left);
    j["right"] = node_to_json(*node.right);
  }
  return j;
}

}  // namespace

json to_json(const Prelaminate& p) {
  json atoms = json::array();
  for (const auto& [w, pt] : p.atoms()) atoms.push_back({{"weight", w}, {"point", to_json(pt)}});
  return json{{"domain", to_json(p.domain())},
              {"tree", node_to_json(p.root())},
              {"atoms", std::move(atoms)}};
}

json to_json(const DiscreteMeasure& nu) {
  json atoms = json::array();
  for (const auto& a : nu.atoms())
    atoms.push_back({{"weight", a.weight}, {"matrix", to_json(a.point)}});
  return json{{"space", to_string(nu.space().kind)}, {"n", nu.space().n},
              {"atoms", std::move(atoms)}};
}

json to_json(const LaminateTestReport& r) {
  json j{{"verdict", r.consistent() ? "consistent" : "not_laminate"},
         {"tolerance", r.tolerance},
         {"family", r.family},
         {"per_integrand_gaps", r.per_integrand_gaps}};
  if (r.witness)
    j["witness"] = {{"integrand", r.witness->integrand},
                    {"gap", r.witness->gap},
                    {"kind", r.witness->kind}};
  else
    j["witness"] = nullptr;
  return j;
}

json to_json(const NullLagrangianFit& fit, int n) {
  const auto& basis = minor_basis(n);
  json labels = json::array();
  labels.push_back("1");
  for (const auto& spec : basis) labels.push_back(spec.label());
  json coeffs = json::array();
  coeffs.push_back(fit.c);
  for (int i = 0; i < fit.v.size(); ++i) coeffs.push_back(fit.v[i]);
  return json{{"n", fit.n},
              {"labels", std::move(labels)},
              {"coefficients", std::move(coeffs)},
              {"residual", fit.residual},
              {"sample_count", fit.sample_count},
              {"rank", fit.rank},
              {"condition", fit.condition}};
}

json to_json(const MinorRankResult& r) {
  json j{{"rank", r.rank},
         {"minor_count", r.minor_count},
         {"sample_count", r.sample_count}};
  if (r.relation_checked) j["relation_residual"] = r.relation_residual;
  return j;
}

json to_json(const HomogeneityBoundResult& r) {
  json curve = json::array();
  for (const auto& [t, v] : r.curve) curve.push_back({t, v});
  return json{{"a", r.a},
              {"p", r.p},
              {"satisfied", r.satisfied},
              {"derivative_at_1", r.derivative_at_1},
              {"derivative_fd", r.derivative_fd},
              {"curve", std::move(curve)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("matrix: expected a non-empty array of row arrays");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("matrix: ragged rows in row " + std::to_string(i + 1));
    for (int c = 0; c < cols; ++c) {
      if (!j[i][c].is_number())
        throw std::invalid_argument("matrix: non-numeric entry at (" + std::to_string(i + 1) +
                                    "," + std::to_string(c + 1) + ")");
      m(i, c) = j[i][c].get<double>();
    }
  }
  return m;
}

DiscreteMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("measure: expected a JSON object");
  for (const char* key : {"space", "n", "atoms"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("measure: missing field \"") + key + "\"");
  const SpaceKind kind = space_kind_from_string(j["space"].get<std::string>());
  if (kind == SpaceKind::complex_pair)
    throw std::invalid_argument("measure: space must be full or symmetric");
  const int n = j["n"].get<int>();
  if (n < 1) throw std::invalid_argument("measure: n must be positive");
  if (!j["atoms"].is_array() || j["atoms"].empty())
    throw std::invalid_argument("measure: atoms must be a non-empty array");
  std::vector<WeightedAtom> atoms;
  for (const auto& ja : j["atoms"]) {
    if (!ja.contains("weight") || !ja.contains("matrix"))
      throw std::invalid_argument("measure: each atom needs \"weight\" and \"matrix\"");
    WeightedAtom a;
    a.weight = ja["weight"].get<double>();
    a.point = matrix_from_json(ja["matrix"]);
    atoms.push_back(std::move(a));
  }
  return DiscreteMeasure(Domain{kind, n}, std::move(atoms));
}

DiscreteMeasure parse_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open measure file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("measure file " + path + ": " + e.what());
  }
  return measure_from_json(j);
}

}  // namespace r1c
