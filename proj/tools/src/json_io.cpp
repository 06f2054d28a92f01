#include "hklab_cli/json_io.hpp"

#include <fstream>
#include <iostream>

#include "hklab/errors.hpp"

namespace hklab::io {

namespace {

Error bad(const std::string& what) { return Error(ErrorCode::InvalidArgument, what); }

json vector_to_json(const std::vector<Matrix>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<Matrix> vector_from_json(const json& j) {
  if (!j.is_array()) throw bad("expected a list of matrices");
  std::vector<Matrix> out;
  for (const auto& e : j) out.push_back(matrix_from_json(e));
  return out;
}

cplx entry_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw bad("matrix entries must be numbers or [re, im] pairs");
}

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

BalanceStatus status_from_string(const std::string& s) {
  for (BalanceStatus st : {BalanceStatus::converged, BalanceStatus::max_iter_exceeded, BalanceStatus::stalled})
    if (to_string(st) == s) return st;
  throw bad("unknown balance status '" + s + "'");
}

BalanceMethod method_from_string(const std::string& s) {
  for (BalanceMethod m : {BalanceMethod::newton, BalanceMethod::gradient})
    if (to_string(m) == s) return m;
  throw bad("unknown balance method '" + s + "'");
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw bad(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw bad(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json matrix_to_json(const Matrix& M) {
  json data = json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c) data.push_back(cplx_to_json(M(r, c)));
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (j.is_array()) {
    // Bare list of rows.
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows ? static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0) : 0;
    Matrix M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
        throw bad("matrix row " + std::to_string(r) + " has the wrong length");
      for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
    }
    return M;
  }
  const auto rows = field<Eigen::Index>(j, "rows");
  const auto cols = field<Eigen::Index>(j, "cols");
  if (rows < 0 || cols < 0) throw bad("matrix dimensions must be non-negative");
  if (!j.contains("data") || !j.at("data").is_array()) throw bad("matrix needs a 'data' list");
  const json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) throw bad("matrix data length differs from rows * cols");
  Matrix M(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = entry_from_json(data[static_cast<std::size_t>(r * cols + c)]);
  return M;
}

json jordan_to_json(const JordanType& J) {
  json out = json::array();
  for (const auto& [center, parts] : J.blocks) out.push_back({{"eigenvalue", center}, {"partition", parts}});
  return out;
}

JordanType jordan_from_json(const json& j) {
  if (!j.is_array()) throw bad("Jordan type must be a list");
  JordanType J;
  for (const auto& e : j) J.blocks[field<double>(e, "eigenvalue")] = field<Partition>(e, "partition");
  return J;
}

json spectral_to_json(const SpectralData& s) {
  return {{"values", s.values}, {"multiplicities", s.multiplicities}};
}

SpectralData spectral_from_json(const json& j) {
  SpectralData s;
  s.values = field<std::vector<double>>(j, "values");
  s.multiplicities = field<std::vector<int>>(j, "multiplicities");
  if (s.values.size() != s.multiplicities.size()) throw bad("values and multiplicities differ in length");
  return s;
}

json dims_to_json(const DimensionVector& d) { return {{"v", d.v}, {"w", d.w}}; }

DimensionVector dims_from_json(const json& j) {
  DimensionVector d;
  d.v = field<std::vector<int>>(j, "v");
  d.w = field<std::vector<int>>(j, "w");
  d.validate();
  return d;
}

json rep_to_json(const QuiverRep& rep) {
  return {{"dims", dims_to_json(rep.dims)},
          {"X", vector_to_json(rep.X)},
          {"Y", vector_to_json(rep.Y)},
          {"x", matrix_to_json(rep.x)},
          {"y", matrix_to_json(rep.y)}};
}

QuiverRep rep_from_json(const json& j) {
  if (!j.is_object()) throw bad("representation must be an object");
  QuiverRep rep;
  rep.dims = dims_from_json(j.at("dims"));
  rep.X = vector_from_json(j.value("X", json::array()));
  rep.Y = vector_from_json(j.value("Y", json::array()));
  if (!j.contains("x") || !j.contains("y")) throw bad("representation needs 'x' and 'y'");
  rep.x = matrix_from_json(j.at("x"));
  rep.y = matrix_from_json(j.at("y"));
  rep.validate();
  return rep;
}

json balance_to_json(const BalanceReport& r) {
  json steps = json::array();
  for (const auto& s : r.step_history) steps.push_back({{"step", s.step}, {"residual", s.residual}});
  return {{"method", std::string(to_string(r.method))},
          {"status", std::string(to_string(r.status))},
          {"converged", r.converged},
          {"iterations", r.iterations},
          {"initial_residual", r.initial_residual},
          {"final_residual", r.final_residual},
          {"step_history", std::move(steps)}};
}

BalanceReport balance_from_json(const json& j) {
  BalanceReport r;
  r.method = method_from_string(field<std::string>(j, "method"));
  r.status = status_from_string(field<std::string>(j, "status"));
  r.converged = field<bool>(j, "converged");
  r.iterations = field<int>(j, "iterations");
  r.initial_residual = field<double>(j, "initial_residual");
  r.final_residual = field<double>(j, "final_residual");
  for (const auto& s : j.value("step_history", json::array()))
    r.step_history.push_back({field<double>(s, "step"), field<double>(s, "residual")});
  return r;
}

json encoded_to_json(const EncodedPoint& p) {
  json targets = json::array();
  for (const auto& t : p.level.targets) targets.push_back(matrix_to_json(t));
  json zeta = json::array();
  for (const auto& z : p.level.zeta) zeta.push_back(cplx_to_json(z));
  return {{"rep", rep_to_json(p.rep)},
          {"zeta", spectral_to_json(p.zeta)},
          {"jordan", jordan_to_json(p.jordan)},
          {"cluster_order", p.cluster_order},
          {"level",
           {{"ordered", p.level.ordered}, {"cluster_of", p.level.cluster_of}, {"zeta", std::move(zeta)},
            {"targets", std::move(targets)}}},
          {"balance", balance_to_json(p.balance)},
          {"kappa", cplx_to_json(p.kappa)},
          {"level_residual", p.level_residual},
          {"decode_residual", p.decode_residual}};
}

EncodedPoint encoded_from_json(const json& j) {
  EncodedPoint p;
  p.rep = rep_from_json(j.at("rep"));
  p.zeta = spectral_from_json(j.at("zeta"));
  p.jordan = jordan_from_json(j.value("jordan", json::array()));
  p.cluster_order = j.value("cluster_order", std::vector<int>{});
  if (j.contains("level")) {
    const json& l = j.at("level");
    p.level.ordered = field<std::vector<double>>(l, "ordered");
    p.level.cluster_of = field<std::vector<int>>(l, "cluster_of");
    for (const auto& z : l.at("zeta")) p.level.zeta.push_back(entry_from_json(z));
    p.level.targets = vector_from_json(l.at("targets"));
  }
  if (j.contains("balance")) p.balance = balance_from_json(j.at("balance"));
  p.kappa = j.contains("kappa") ? entry_from_json(j.at("kappa")) : kKappa;
  p.level_residual = j.value("level_residual", 0.0);
  p.decode_residual = j.value("decode_residual", 0.0);
  return p;
}

json trace_to_json(const TracePath& path) {
  json samples = json::array();
  for (const auto& s : path.samples)
    samples.push_back({{"a", s.a},
                       {"M", matrix_to_json(s.M)},
                       {"corrector_residual", s.corrector_residual},
                       {"corrector_iterations", s.corrector_iterations},
                       {"spectral_drift", s.spectral_drift}});
  return {{"source", matrix_to_json(path.source)},
          {"target", matrix_to_json(path.target)},
          {"scale", path.scale},
          {"jordan", jordan_to_json(path.jordan)},
          {"steps", path.steps},
          {"halvings", path.halvings},
          {"complete", path.complete},
          {"max_corrector_residual", path.max_corrector_residual},
          {"max_spectral_drift", path.max_spectral_drift},
          {"max_similarity_condition", path.max_similarity_condition},
          {"samples", std::move(samples)}};
}

TracePath trace_from_json(const json& j) {
  TracePath p;
  p.source = matrix_from_json(j.at("source"));
  p.target = matrix_from_json(j.at("target"));
  p.scale = field<double>(j, "scale");
  p.jordan = jordan_from_json(j.at("jordan"));
  p.steps = field<int>(j, "steps");
  p.halvings = field<int>(j, "halvings");
  p.complete = field<bool>(j, "complete");
  p.max_corrector_residual = field<double>(j, "max_corrector_residual");
  p.max_spectral_drift = field<double>(j, "max_spectral_drift");
  p.max_similarity_condition = field<double>(j, "max_similarity_condition");
  for (const auto& s : j.at("samples")) {
    TraceSample t;
    t.a = field<double>(s, "a");
    t.M = matrix_from_json(s.at("M"));
    t.corrector_residual = field<double>(s, "corrector_residual");
    t.corrector_iterations = field<int>(s, "corrector_iterations");
    t.spectral_drift = field<double>(s, "spectral_drift");
    p.samples.push_back(std::move(t));
  }
  return p;
}

json ks_endpoint_to_json(const KsEndpointReport& r) {
  return {{"source_imag", r.source_imag},
          {"symmetry_residual", r.symmetry_residual},
          {"spectral_drift", r.spectral_drift},
          {"jordan_equal", r.jordan_equal},
          {"source_type", jordan_to_json(r.source_type)},
          {"target_type", jordan_to_json(r.target_type)},
          {"ks_label", r.ks_label ? json(*r.ks_label) : json(nullptr)}};
}

json ks_table_to_json(const KsTable& t) {
  json pairs = json::array();
  for (const auto& p : t.pairs) pairs.push_back({{"real", p.real_label}, {"symmetric", p.symmetric_label}});
  json covers = json::array();
  for (const auto& [i, k] : t.real_side.covers()) covers.push_back({t.real_side.labels[i], t.real_side.labels[k]});
  return {{"n", t.n}, {"pairs", std::move(pairs)}, {"covers", std::move(covers)}};
}

json hecke_to_json(const HeckePresentation& h) {
  json gens = json::array();
  for (const auto& g : h.generators)
    gens.push_back({{"name", g.name}, {"d", g.d}, {"quadratic_relation", g.quadratic_relation}});
  return {{"form", std::string(to_string(h.form.family))},
          {"n", h.form.n},
          {"p", h.form.p},
          {"root_system", h.root_system},
          {"generators", std::move(gens)},
          {"coxeter", h.coxeter},
          {"braid_relations", h.braid_relations},
          {"specialization", h.specialization}};
}

json roots_to_json(const RestrictedRootData& r) {
  json roots = json::array();
  for (const auto& root : r.positive_roots)
    roots.push_back({{"functional", std::vector<double>(root.functional.data(),
                                                        root.functional.data() + root.functional.size())},
                     {"multiplicity", root.multiplicity}});
  return {{"root_system", r.root_system},
          {"reduced", r.reduced},
          {"rank", r.little_weyl_rank},
          {"positive_roots", std::move(roots)},
          {"simple_roots", r.simple_roots},
          {"coxeter", r.coxeter}};
}

json semismall_to_json(const std::vector<SemismallRow>& rows) {
  json out = json::array();
  for (const auto& r : rows)
    out.push_back({{"partition", r.lambda},
                   {"orbit_dim", r.orbit_dim},
                   {"fiber_dim", r.fiber_dim},
                   {"twice_bound", r.twice_bound},
                   {"holds", r.holds},
                   {"equality", r.equality}});
  return out;
}

json suite_to_json(const SuiteReport& r) {
  json claims = json::array();
  for (const auto& c : r.claims) {
    json cj = {{"id", c.id},
               {"statement", c.statement},
               {"negative_control", c.negative_control},
               {"pass", c.pass},
               {"cases", c.cases},
               {"max_residual", c.max_residual},
               {"threshold", c.threshold}};
    if (c.counterexample) {
      const auto& ce = *c.counterexample;
      cj["counterexample"] = {{"case_id", ce.case_id},
                              {"seed", ce.seed},
                              {"a", ce.a},
                              {"M", matrix_to_json(ce.M)},
                              {"detail", ce.detail}};
    } else {
      cj["counterexample"] = nullptr;
    }
    claims.push_back(std::move(cj));
  }
  return {{"seed", r.seed}, {"all_pass", r.all_pass()}, {"runtime_seconds", r.runtime_seconds},
          {"claims", std::move(claims)}};
}

SuiteReport suite_from_json(const json& j) {
  SuiteReport r;
  r.seed = field<std::uint64_t>(j, "seed");
  r.runtime_seconds = field<double>(j, "runtime_seconds");
  for (const auto& cj : j.at("claims")) {
    ClaimResult c;
    c.id = field<std::string>(cj, "id");
    c.statement = field<std::string>(cj, "statement");
    c.negative_control = field<bool>(cj, "negative_control");
    c.pass = field<bool>(cj, "pass");
    c.cases = field<int>(cj, "cases");
    c.max_residual = field<double>(cj, "max_residual");
    c.threshold = field<double>(cj, "threshold");
    if (cj.contains("counterexample") && !cj.at("counterexample").is_null()) {
      const json& e = cj.at("counterexample");
      c.counterexample = Counterexample{field<std::string>(e, "case_id"), field<std::uint64_t>(e, "seed"),
                                        field<double>(e, "a"), matrix_from_json(e.at("M")),
                                        field<std::string>(e, "detail")};
    }
    r.claims.push_back(std::move(c));
  }
  return r;
}

json equivariance_to_json(const EquivarianceReport& r) {
  return {{"orthogonal", r.orthogonal}, {"scaling", r.scaling},   {"beta", r.beta},
          {"involutivity", r.involutivity}, {"charpoly", r.charpoly}, {"trials", r.trials}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::string& path) {
  std::ifstream in;
  std::istream* src = &in;
  if (path == "-") {
    src = &std::cin;
  } else {
    in.open(path);
    if (!in) throw bad("cannot open '" + path + "'");
  }
  try {
    return json::parse(*src);
  } catch (const json::parse_error& e) {
    throw bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw bad("cannot write '" + path + "'");
  out << text;
}

}  // namespace hklab::io
