// Acceptance run: one line per criterion, exit status 1 when any is red.
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "hklab/errors.hpp"
#include "hklab/homeo.hpp"
#include "hklab/involution.hpp"
#include "hklab/ks_orbits.hpp"
#include "hklab/mv_bridge.hpp"
#include "hklab/springer_hecke.hpp"
#include "hklab/verify.hpp"

using namespace hklab;

namespace {

constexpr double kEndpointTol = 1e-8;    // relative to 1 + ||M||_F
constexpr double kInvolutiveTol = 1e-6;  // relative to 1 + ||M||_F
constexpr double kDriftTol = 1e-7;
constexpr double kEquivTol = 1e-5;
constexpr double kSymTol = 1e-6;
constexpr double kTraceDriftTol = 1e-6;
constexpr double kBalanceTol = 1e-10;
constexpr int kBalanceIterCap = 2000;
constexpr int kEquivTrials = 20;
constexpr std::uint64_t kSeed = 20240607;

const std::vector<double> kGrid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

struct Line {
  bool pass = true;
  double worst = 0.0;
  int cases = 0;
  std::string note;

  void see(double r, bool ok, const std::string& where) {
    ++cases;
    worst = std::max(worst, r);
    if (!ok && pass) {
      pass = false;
      note = "first failure at " + where;
    }
  }
  void see(double r, double tol, const std::string& where) { see(r, r <= tol, where); }
};

std::string at(const SuiteSample& s, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " a=%.1f", a);
  return s.id + buf;
}

double rel(const Matrix& a, const Matrix& b, const Matrix& ref) { return frob(a - b) / (1.0 + frob(ref)); }

// Criterion 1 on a sample set under the given conventions.
Line endpoints(const std::vector<SuiteSample>& samples, const Tolerances& tol, const AlphaOptions& opts) {
  Line l;
  for (const auto& s : samples) {
    try {
      l.see(rel(alpha_gl(s.M, InvolutionParam(0.0), tol, opts), s.M.conjugate(), s.M), kEndpointTol, at(s, 0.0));
      l.see(rel(alpha_gl(s.M, InvolutionParam(1.0), tol, opts), s.M.transpose(), s.M), kEndpointTol, at(s, 1.0));
    } catch (const Error& e) {
      l.see(std::numeric_limits<double>::infinity(), false, s.id + ": " + e.what());
    }
  }
  return l;
}

void print(int k, const char* name, const Line& l, double tol) {
  std::printf("criterion %d %-22s %s  cases=%-5d worst=%.3e  tol=%.0e%s%s\n", k, name, l.pass ? "PASS" : "FAIL",
              l.cases, l.worst, tol, l.note.empty() ? "" : "  ", l.note.c_str());
}

}  // namespace

int main() {
  const Tolerances tol;
  SuiteConfig cfg;
  cfg.n_max = 5;
  cfg.samples_per_case = 10;
  cfg.seed = kSeed;
  const std::vector<SuiteSample> samples = suite_samples(cfg);
  bool all = true;
  auto report = [&](int k, const char* name, const Line& l, double t) {
    print(k, name, l, t);
    all = all && l.pass;
  };

  // 1
  const Line c1 = endpoints(samples, tol, AlphaOptions{});
  report(1, "endpoints", c1, kEndpointTol);

  // 2, 3, 4 on the 11-point grid
  Line c2, c3, c4;
  for (const auto& s : samples)
    for (double a : kGrid) {
      try {
        const Matrix A = alpha_gl(s.M, InvolutionParam(a), tol);
        c2.see(rel(alpha_gl(A, InvolutionParam(a), tol), s.M, s.M), kInvolutiveTol, at(s, a));
        c3.see(charpoly_drift(A, s.M), kDriftTol, at(s, a));
        const bool same = same_jordan_type(jordan_type(A, tol), s.type);
        c4.see(same ? 0.0 : 1.0, same, at(s, a));
      } catch (const Error& e) {
        for (Line* l : {&c2, &c3, &c4}) l->see(std::numeric_limits<double>::infinity(), false, at(s, a) + ": " + e.what());
      }
    }
  report(2, "involutivity", c2, kInvolutiveTol);
  report(3, "charpoly-drift", c3, kDriftTol);
  report(4, "jordan-type", c4, 0.0);

  // 5
  Line c5;
  for (const auto& s : samples)
    for (double a : {0.0, 0.35, 0.5, 1.0}) {
      try {
        const EquivarianceReport e = equivariance_suite(s.M, InvolutionParam(a), kEquivTrials, s.seed, tol);
        c5.see(std::max({e.orthogonal, e.scaling, e.beta}), kEquivTol, at(s, a));
      } catch (const Error& e) {
        c5.see(std::numeric_limits<double>::infinity(), false, at(s, a) + ": " + e.what());
      }
    }
  report(5, "equivariance", c5, kEquivTol);

  // 6
  Line c6;
  for (int n = 1; n <= 4; ++n)
    for (const Partition& lam : partitions(n)) {
      JordanType J;
      J.blocks[0.0] = lam;
      std::string where = "nilpotent (";
      for (std::size_t i = 0; i < lam.size(); ++i) where += (i ? "," : "") + std::to_string(lam[i]);
      where += ")";
      try {
        const Matrix M = random_real_spectrum_matrix(n, J, kSeed + 31 * n + lam.size());
        const TracePath p = trace(M, 16, tol);
        const KsEndpointReport r = verify_ks_endpoint(p, tol);
        const bool nilpotent = r.target_type.blocks.size() == 1 && std::abs(r.target_type.blocks.begin()->first) <= kEndpointTol;
        const bool ok = p.complete && r.symmetry_residual <= kSymTol && r.jordan_equal && nilpotent &&
                        r.ks_label.has_value() && *r.ks_label == lam;
        c6.see(r.symmetry_residual, ok, where);
      } catch (const Error& e) {
        c6.see(std::numeric_limits<double>::infinity(), false, where + ": " + e.what());
      }
    }
  for (int n = 2; n <= 5; ++n) {
    JordanType J;
    for (int i = 0; i < n; ++i) J.blocks[1.1 * i - 0.5 * n] = {1};
    const std::string where = "distinct spectrum n=" + std::to_string(n);
    try {
      const Matrix M = random_real_spectrum_matrix(n, J, kSeed + 7 * n);
      const TracePath p = trace(M, 16, tol);
      const KsEndpointReport r = verify_ks_endpoint(p, tol);
      const bool ok = p.complete && p.max_spectral_drift <= kTraceDriftTol && r.symmetry_residual <= kSymTol &&
                      r.jordan_equal;
      c6.see(std::max(p.max_spectral_drift, r.symmetry_residual), ok, where);
    } catch (const Error& e) {
      c6.see(std::numeric_limits<double>::infinity(), false, where + ": " + e.what());
    }
  }
  report(6, "traced-endpoints", c6, kSymTol);

  // 7
  Line c7;
  for (const auto& s : samples) {
    try {
      const EncodedPoint p = encode_balanced(s.M, tol, EncodeOptions{}, kBalanceIterCap);
      bool decreasing = true;
      for (std::size_t i = 1; i < p.balance.step_history.size(); ++i)
        decreasing = decreasing && p.balance.step_history[i].residual < p.balance.step_history[i - 1].residual;
      const double mr = moment_norm(mu_real(p.rep));
      const double r = std::max(p.level_residual, mr);
      c7.see(r, r <= kBalanceTol && p.balance.converged && p.balance.iterations <= kBalanceIterCap && decreasing,
             s.id);
    } catch (const Error& e) {
      c7.see(std::numeric_limits<double>::infinity(), false, s.id + ": " + e.what());
    }
  }
  report(7, "balance", c7, kBalanceTol);

  // 8
  Line c8;
  for (int n = 2; n <= 5; ++n) {
    for (const auto& [family, d] : {std::pair{Family::gl_split, 1}, std::pair{Family::gl_complex, 2}}) {
      const HeckePresentation h = hecke_parameters({family, n, 0});
      bool ok = static_cast<int>(h.generators.size()) == n - 1;
      for (const auto& g : h.generators) ok = ok && g.d == d;
      c8.see(ok ? 0.0 : 1.0, ok, std::string(to_string(family)) + " n=" + std::to_string(n));
    }
  }
  for (int n = 1; n <= 6; ++n)
    for (const auto& row : semismall_check_gl(n)) c8.see(row.holds ? 0.0 : 1.0, row.holds, "semismall n=" + std::to_string(n));
  {
    const auto rows = semismall_check_gl(2);
    const bool ok = rows.size() == 2 && rows[0].fiber_dim == 0 && rows[1].fiber_dim == 1;
    c8.see(ok ? 0.0 : 1.0, ok, "fibre dims n=2");
  }
  report(8, "hecke-semismall", c8, 0.0);

  // 9: each broken convention must turn criterion 1 red
  Line c9;
  AlphaOptions kappa_flip;
  kappa_flip.conv.kappa = -kKappa;
  AlphaOptions mu_flip;
  mu_flip.conv.framing_sign = -1.0;
  for (const auto& [name, opts] : {std::pair{"kappa flip", kappa_flip}, std::pair{"mu flip", mu_flip}}) {
    const Line broken = endpoints(samples, tol, opts);
    c9.see(broken.pass ? 1.0 : 0.0, !broken.pass, name);
  }
  report(9, "negative-controls", c9, 0.0);

  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: some criteria fail");
  return all ? 0 : 1;
}
