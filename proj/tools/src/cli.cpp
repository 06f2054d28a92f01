#include "hklab_cli/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hklab/errors.hpp"
#include "hklab_cli/json_io.hpp"

namespace hklab::cli {

namespace {

using io::json;

struct Common {
  std::string in = "-";
  std::string out;
};

struct Args {
  Common io;
  std::string method = "newton";
  int max_iter = 2000;
  bool no_balance = false;
  std::vector<int> order;
  std::string form = "gl";
  int n = 2;
  int p = 0;
  double a = 0.0;
  std::string report;
  int steps = 64;
  bool check = false;
  std::string format;
  bool roots = false;
  int nmax = 4;
  std::uint64_t seed = 7;
  int samples = 4;
  int trace_nmax = 4;
  int trace_steps = 16;
  bool no_controls = false;
};

class Outputs {
 public:
  Outputs(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
      out_ << text;
    else
      io::write_text(path, text);
  }
  std::ostream& diag() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

BalanceMethod parse_method(const std::string& s) {
  if (s == "newton") return BalanceMethod::newton;
  if (s == "gradient") return BalanceMethod::gradient;
  throw Error(ErrorCode::InvalidArgument, "unknown balance method '" + s + "'");
}

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("HKLAB_TOL"); env && *env) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size())
      throw Error(ErrorCode::InvalidArgument, std::string("HKLAB_TOL is not a number: ") + env);
    tol.residual = v;
  }
  tol.validate();
  return tol;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

void balance_table(std::ostream& os, const BalanceReport& r) {
  os << "balance  method=" << to_string(r.method) << "  status=" << to_string(r.status)
     << "  iterations=" << r.iterations << "\n";
  os << "  iter        step    residual\n";
  os << "     0           -  " << sci(r.initial_residual) << "\n";
  const std::size_t m = r.step_history.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (m > 12 && i == 5) {
      os << "   ...\n";
      i = m - 6;
    }
    os << std::setw(6) << i + 1 << "  " << sci(r.step_history[i].step) << "  " << sci(r.step_history[i].residual)
       << "\n";
  }
}

// Accepts a bare representation or anything carrying one under "rep".
QuiverRep rep_from_any(const json& j) { return io::rep_from_json(j.contains("rep") ? j.at("rep") : j); }

Matrix read_square(const std::string& path) {
  Matrix M = io::matrix_from_json(io::read_json_file(path));
  if (M.rows() != M.cols()) throw Error(ErrorCode::NonSquare, "input matrix is not square");
  if (!M.allFinite()) throw Error(ErrorCode::InvalidArgument, "input matrix has non-finite entries");
  return M;
}

int cmd_encode(const Args& a, const Tolerances& tol, Outputs& o) {
  const Matrix M = read_square(a.io.in);
  EncodeOptions opts;
  opts.cluster_order = a.order;
  EncodedPoint p = a.no_balance ? encode(M, tol, opts)
                                : encode_balanced(M, tol, opts, a.max_iter, parse_method(a.method));
  if (!a.no_balance) balance_table(o.diag(), p.balance);
  o.diag() << "level residual " << sci(p.level_residual) << ", decode residual " << sci(p.decode_residual) << "\n";
  o.emit(a.io.out, io::dump(io::encoded_to_json(p)));
  return a.no_balance || p.balance.converged ? ok : numerical;
}

int cmd_decode(const Args& a, Outputs& o) {
  const json j = io::read_json_file(a.io.in);
  Conventions conv;
  if (j.contains("kappa")) conv.kappa = io::matrix_from_json(json::array({json::array({j.at("kappa")})}))(0, 0);
  o.emit(a.io.out, io::dump(io::matrix_to_json(decode(rep_from_any(j), conv))));
  return ok;
}

int cmd_balance(const Args& a, const Tolerances& tol, Outputs& o) {
  const QuiverRep rep = rep_from_any(io::read_json_file(a.io.in));
  if (a.max_iter < 0) throw Error(ErrorCode::InvalidArgument, "--max-iter must be >= 0");
  const auto [balanced, report] = balance(rep, tol, a.max_iter, parse_method(a.method));
  balance_table(o.diag(), report);
  o.emit(a.io.out, io::dump({{"rep", io::rep_to_json(balanced)}, {"balance", io::balance_to_json(report)}}));
  return report.converged ? ok : numerical;
}

int cmd_involve(const Args& a, const Tolerances& tol, Outputs& o) {
  const Matrix M = read_square(a.io.in);
  const InvolutionParam param(a.a);
  const RealFormSpec form{family_from_string(a.form), static_cast<int>(M.rows()), a.p};
  form.validate();
  AlphaOptions opts;
  opts.max_iter = a.max_iter;
  opts.method = parse_method(a.method);

  json report = {{"form", std::string(to_string(form.family))}, {"a", a.a}, {"n", form.n}};
  Matrix out;
  if (a.form == "gl") {
    const AlphaResult r = alpha_gl_detailed(M, param, tol, opts);
    out = r.value;
    report["balance"] = io::balance_to_json(r.point.balance);
    report["level_residual"] = r.point.level_residual;
    report["decode_residual"] = r.point.decode_residual;
    report["jordan"] = io::jordan_to_json(r.point.jordan);
  } else {
    out = alpha_classical(form, M, param, tol, opts);
    report["membership_residual"] = membership_residual(form, out);
  }
  report["charpoly_drift"] = charpoly_drift(out, M);
  o.emit(a.io.out, io::dump(io::matrix_to_json(out)));
  if (!a.report.empty()) io::write_text(a.report, io::dump(report));
  return ok;
}

int cmd_trace(const Args& a, const Tolerances& tol, Outputs& o) {
  const Matrix M = read_square(a.io.in);
  try {
    const TracePath path = trace(M, a.steps, tol);
    json j = io::trace_to_json(path);
    if (a.check) j["ks_endpoint"] = io::ks_endpoint_to_json(verify_ks_endpoint(path, tol));
    o.diag() << "trace  steps=" << path.steps << "  halvings=" << path.halvings
             << "  max corrector residual " << sci(path.max_corrector_residual) << "  max drift "
             << sci(path.max_spectral_drift) << "\n";
    o.emit(a.io.out, io::dump(j));
    return ok;
  } catch (const StepFloorReachedError& e) {
    o.diag() << "trace: " << e.what() << "\n";
    o.emit(a.io.out, io::dump(io::trace_to_json(e.partial())));
    return numerical;
  }
}

int cmd_ks(const Args& a, const Tolerances& tol, Outputs& o) {
  if (a.n < 1 || a.n > 12) throw Error(ErrorCode::InvalidArgument, "--n must lie in [1, 12]");
  const KsTable t = ks_table_gl(a.n);
  const std::string fmt = a.format.empty() ? "table" : a.format;
  if (fmt == "table") {
    o.emit(a.io.out, ks_table_text(t));
  } else if (fmt == "dot") {
    o.emit(a.io.out, ks_table_dot(t));
  } else {
    json j = io::ks_table_to_json(t);
    if (a.check) {
      json checks = json::array();
      bool all = true;
      for (const auto& c : ks_crosscheck(t, a.seed, a.steps, tol)) {
        checks.push_back({{"label", c.label},
                          {"target_type", io::jordan_to_json(c.target_type)},
                          {"symmetry_residual", c.symmetry_residual},
                          {"matches", c.matches}});
        all = all && c.matches;
      }
      j["crosscheck"] = std::move(checks);
      o.emit(a.io.out, io::dump(j));
      return all ? ok : numerical;
    }
    o.emit(a.io.out, io::dump(j));
  }
  return ok;
}

int cmd_hecke(const Args& a, Outputs& o) {
  if (a.n < 1 || a.n > 8) throw Error(ErrorCode::InvalidArgument, "--n must lie in [1, 8]");
  const RealFormSpec form{family_from_string(a.form), a.n, a.p};
  form.validate();
  const HeckePresentation h = hecke_parameters(form);
  if (a.format == "text") {
    o.emit(a.io.out, hecke_text(h));
  } else {
    json j = io::hecke_to_json(h);
    if (a.roots) j["restricted_roots"] = io::roots_to_json(restricted_roots(form));
    o.emit(a.io.out, io::dump(j));
  }
  return ok;
}

int cmd_semismall(const Args& a, Outputs& o) {
  const auto rows = semismall_check_gl(a.n);
  if (a.format == "json")
    o.emit(a.io.out, io::dump(io::semismall_to_json(rows)));
  else
    o.emit(a.io.out, semismall_text(rows));
  bool all = true;
  for (const auto& r : rows) all = all && r.holds;
  return all ? ok : numerical;
}

int cmd_verify(const Args& a, const Tolerances& tol, Outputs& o) {
  SuiteConfig cfg;
  cfg.n_max = a.nmax;
  cfg.seed = a.seed;
  cfg.samples_per_case = a.samples;
  cfg.trace_n_max = a.trace_nmax;
  cfg.trace_steps = a.trace_steps;
  cfg.negative_controls = !a.no_controls;
  cfg.tol = tol;
  const SuiteReport r = run_suite(cfg);
  for (const auto& c : r.claims)
    o.diag() << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(40) << c.id << std::right
             << " cases=" << std::setw(4) << c.cases << "  max=" << sci(c.max_residual)
             << "  threshold=" << sci(c.threshold) << "\n";
  o.diag() << (r.all_pass() ? "all claims pass" : "some claims fail") << " (" << std::fixed
           << std::setprecision(1) << r.runtime_seconds << " s)\n";
  o.emit(a.io.out, io::dump(io::suite_to_json(r)));
  return r.all_pass() ? ok : numerical;
}

void add_io(CLI::App* sub, Common& c, bool needs_input = true) {
  if (needs_input) sub->add_option("--in", c.in, "input JSON file ('-' for stdin)")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default: stdout)");
}

void add_balance_opts(CLI::App* sub, Args& a) {
  sub->add_option("--method", a.method, "balance method")
      ->check(CLI::IsMember({"newton", "gradient"}))
      ->capture_default_str();
  sub->add_option("--max-iter", a.max_iter, "balance iteration cap")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hklab: interpolating involutions on matrices with real spectrum"};
  app.require_subcommand(1, 1);
  Args a;

  auto* enc = app.add_subcommand("encode", "quiver representative of a matrix");
  add_io(enc, a.io);
  add_balance_opts(enc, a);
  enc->add_flag("--no-balance", a.no_balance, "skip the balancing flow");
  enc->add_option("--order", a.order, "cluster order (indices into increasing centers)");

  auto* dec = app.add_subcommand("decode", "matrix of a representative");
  add_io(dec, a.io);

  auto* bal = app.add_subcommand("balance", "drive the real moment map to zero");
  add_io(bal, a.io);
  add_balance_opts(bal, a);

  auto* inv = app.add_subcommand("involve", "apply alpha_a");
  add_io(inv, a.io);
  add_balance_opts(inv, a);
  inv->add_option("--form", a.form, "real form family")->capture_default_str();
  inv->add_option("--p", a.p, "signature parameter");
  inv->add_option("--a", a.a, "involution parameter in [0, 1]")->required();
  inv->add_option("--report", a.report, "diagnostics JSON file");

  auto* tr = app.add_subcommand("trace", "continue alpha_a fixed points from a = 0 to 1");
  add_io(tr, a.io);
  tr->add_option("--steps", a.steps, "nominal step count")->capture_default_str();
  tr->add_flag("--check", a.check, "attach the endpoint orbit report");

  auto* ks = app.add_subcommand("ks", "paired orbit posets for gl_n");
  add_io(ks, a.io, false);
  ks->add_option("--n", a.n, "matrix size")->required();
  ks->add_option("--format", a.format, "output format")->check(CLI::IsMember({"table", "dot", "json"}));
  ks->add_flag("--check", a.check, "trace one real nilpotent per orbit (json only)");
  ks->add_option("--seed", a.seed, "seed for --check")->capture_default_str();
  ks->add_option("--steps", a.steps, "trace steps for --check")->capture_default_str();

  auto* hk = app.add_subcommand("hecke", "Hecke algebra parameters of a real form");
  add_io(hk, a.io, false);
  hk->add_option("--form", a.form, "real form family")->required();
  hk->add_option("--n", a.n, "matrix size")->required();
  hk->add_option("--p", a.p, "signature parameter");
  hk->add_option("--format", a.format, "output format")->check(CLI::IsMember({"json", "text"}));
  hk->add_flag("--roots", a.roots, "include the restricted root data");

  auto* ss = app.add_subcommand("semismall", "fibre dimension table for gl_n");
  add_io(ss, a.io, false);
  ss->add_option("--n", a.n, "matrix size")->required();
  ss->add_option("--format", a.format, "output format")->check(CLI::IsMember({"table", "json"}));

  auto* ver = app.add_subcommand("verify", "run the seeded property suite");
  add_io(ver, a.io, false);
  ver->add_option("--nmax", a.nmax, "largest matrix size")->capture_default_str();
  ver->add_option("--seed", a.seed, "suite seed")->capture_default_str();
  ver->add_option("--samples", a.samples, "samples per size")->capture_default_str();
  ver->add_option("--trace-nmax", a.trace_nmax, "largest size for traced paths")->capture_default_str();
  ver->add_option("--trace-steps", a.trace_steps, "steps per traced path")->capture_default_str();
  ver->add_flag("--no-controls", a.no_controls, "skip negative controls");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
      err << sub->help();
    else
      err << app.help();
    return usage;
  }

  Outputs o(out, err);
  try {
    const Tolerances tol = tolerances_from_env();
    if (*enc) return cmd_encode(a, tol, o);
    if (*dec) return cmd_decode(a, o);
    if (*bal) return cmd_balance(a, tol, o);
    if (*inv) return cmd_involve(a, tol, o);
    if (*tr) return cmd_trace(a, tol, o);
    if (*ks) return cmd_ks(a, tol, o);
    if (*hk) return cmd_hecke(a, o);
    if (*ss) return cmd_semismall(a, o);
    if (*ver) return cmd_verify(a, tol, o);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_validation_error(e.code()) ? invalid_input : numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return numerical;
  }
  return usage;
}

}  // namespace hklab::cli
