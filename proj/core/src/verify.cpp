#include "hklab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>

#include "hklab/errors.hpp"
#include "hklab/homeo.hpp"
#include "hklab/involution.hpp"
#include "hklab/ks_orbits.hpp"
#include "hklab/mv_bridge.hpp"
#include "hklab/quiver.hpp"
#include "hklab/springer_hecke.hpp"

namespace hklab {

void SuiteConfig::validate() const {
  tol.validate();
  if (n_max < 1 || n_max > 8) throw Error(ErrorCode::InvalidArgument, "n_max must lie in [1, 8]");
  if (samples_per_case < 1) throw Error(ErrorCode::InvalidArgument, "samples_per_case must be >= 1");
  if (trace_n_max < 0 || trace_n_max > 8 || semismall_n_max < 1 || semismall_n_max > 6)
    throw Error(ErrorCode::InvalidArgument, "trace_n_max in [0, 8], semismall_n_max in [1, 6]");
  if (trace_steps < 1 || equivariance_trials < 1)
    throw Error(ErrorCode::InvalidArgument, "trace_steps and equivariance_trials must be >= 1");
  bool has0 = false, has1 = false;
  for (double a : a_grid) {
    if (!(a >= 0.0 && a <= 1.0)) throw Error(ErrorCode::InvalidArgument, "a_grid must lie in [0, 1]");
    has0 = has0 || a == 0.0;
    has1 = has1 || a == 1.0;
  }
  if (!has0 || !has1) throw Error(ErrorCode::InvalidArgument, "a_grid must contain 0 and 1");
}

bool SuiteReport::all_pass() const {
  return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
}

const ClaimResult* SuiteReport::find(const std::string& id) const {
  for (const auto& c : claims)
    if (c.id == id) return &c;
  return nullptr;
}

const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> registry = {
      {"bridge.balance", "mv_bridge", "balance reaches ||mu_R|| <= residual with strictly decreasing steps", false},
      {"bridge.level_residual", "mv_bridge", "encoded representatives sit on their mu_C level", false},
      {"bridge.round_trip", "mv_bridge", "decode(balance(encode(M))) = M", false},
      {"control.kappa_flip", "verify", "a decode-side kappa sign flip breaks the endpoint identities", true},
      {"control.mu_sign_flip", "verify", "a flipped framing sign in mu_C breaks the endpoint identities", true},
      {"hecke.complex_parameters", "springer_hecke", "d_s = 2 for complex groups viewed as real forms", false},
      {"hecke.semismall", "springer_hecke", "real Springer fibres satisfy the semismall bound", false},
      {"hecke.split_parameters", "springer_hecke", "d_s = 1 for split gl and sl", false},
      {"involution.beta_commutes", "involution", "alpha_a commutes with beta(M) = -M^T", false},
      {"involution.beta_square", "involution", "beta is an involution", false},
      {"involution.charpoly_invariant", "involution", "alpha_a preserves the characteristic polynomial", false},
      {"involution.classical_endpoints", "involution", "classical forms: alpha_0 = eta, alpha_1 = -theta, output stays in the algebra", false},
      {"involution.endpoint_conjugation", "involution", "alpha_0(M) = conj(M)", false},
      {"involution.endpoint_transpose", "involution", "alpha_1(M) = M^T", false},
      {"involution.fixed_endpoint_sets", "involution", "alpha_0 fixes exactly real matrices, alpha_1 exactly symmetric ones", false},
      {"involution.involutive", "involution", "alpha_a(alpha_a(M)) = M", false},
      {"involution.orbit_invariant", "involution", "alpha_a preserves the Jordan type", false},
      {"involution.ordering_independent", "involution", "alpha_a does not depend on the eigenvalue ordering", false},
      {"involution.orthogonal_equivariant", "involution", "alpha_a(k M k^T) = k alpha_a(M) k^T for k in O_n(R)", false},
      {"involution.scaling_equivariant", "involution", "alpha_a(t^2 M) = t^2 alpha_a(M) for t in R^x", false},
      {"ks.poset_axioms", "ks_orbits", "dominance order is a partial order on partitions", false},
      {"ks.table_identity", "ks_orbits", "traced real nilpotents land on the symmetric orbit with the same partition", false},
      {"moment.conjugation_intertwines", "quiver_core", "conj intertwines mu_C with conj and mu_R with -conj", false},
      {"moment.quadratic_scaling", "quiver_core", "mu(t v) = t^2 mu(v)", false},
      {"trace.distinct_spectrum", "homeo_tracer", "distinct real spectra trace to symmetric matrices without drift", false},
      {"trace.equivariant", "homeo_tracer", "the traced map is O_n(R)- and positive-scaling-equivariant", false},
      {"trace.nilpotent_orbits", "homeo_tracer", "real nilpotents trace to symmetric nilpotents of the same type", false},
  };
  return registry;
}

Matrix jordan_normal_form(const JordanType& jordan) {
  const int n = jordan.size();
  Matrix J = Matrix::Zero(n, n);
  int off = 0;
  for (const auto& [center, parts] : jordan.blocks)
    for (int part : parts) {
      for (int i = 0; i < part; ++i) {
        J(off + i, off + i) = center;
        if (i + 1 < part) J(off + i, off + i + 1) = 1.0;
      }
      off += part;
    }
  return J;
}

Matrix random_real_spectrum_matrix(int n, const JordanType& jordan, std::uint64_t seed) {
  if (jordan.size() != n) throw Error(ErrorCode::SizeMismatch, "Jordan type size differs from n");
  const Matrix P = random_conditioned(n, seed, 10.0).cast<cplx>();
  const Matrix M = P * jordan_normal_form(jordan) * P.inverse();
  return M.real().cast<cplx>();
}

Matrix complexify_entries(const Matrix& M, std::uint64_t seed) {
  const int n = static_cast<int>(M.rows());
  Rng rng(mix_seed(seed, 77));
  Eigen::HouseholderQR<Matrix> qa(gaussian_complex(n, n, rng));
  Eigen::HouseholderQR<Matrix> qb(gaussian_complex(n, n, rng));
  const Matrix U = qa.householderQ();
  const Matrix V = qb.householderQ();
  std::uniform_real_distribution<double> ud(0.0, std::log(10.0));
  Eigen::VectorXcd sigma(n);
  for (int i = 0; i < n; ++i) sigma(i) = std::exp(ud(rng));
  const Matrix G = U * sigma.asDiagonal() * V.adjoint();
  return G * M * G.inverse();
}

JordanType random_jordan_type(int n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 11));
  std::vector<double> grid;
  for (int k = -4; k <= 4; ++k) grid.push_back(0.75 * k);
  std::shuffle(grid.begin(), grid.end(), rng);
  std::uniform_int_distribution<int> nclusters(1, n);
  const int k = std::min<int>(nclusters(rng), static_cast<int>(grid.size()));

  // Random composition of n into k positive parts.
  std::vector<int> mult(k, 1);
  std::uniform_int_distribution<int> pick(0, k - 1);
  for (int i = k; i < n; ++i) ++mult[pick(rng)];

  JordanType J;
  for (int c = 0; c < k; ++c) {
    auto options = partitions(mult[c]);
    std::uniform_int_distribution<std::size_t> pp(0, options.size() - 1);
    J.blocks[grid[c]] = options[pp(rng)];
  }
  return J;
}

std::vector<SuiteSample> suite_samples(const SuiteConfig& config) {
  std::vector<SuiteSample> out;
  for (int n = 1; n <= config.n_max; ++n)
    for (int s = 0; s < config.samples_per_case; ++s) {
      SuiteSample smp;
      smp.n = n;
      smp.seed = mix_seed(config.seed, static_cast<std::uint64_t>(1000 * n + s));
      smp.id = "n" + std::to_string(n) + "-s" + std::to_string(s);
      smp.type = random_jordan_type(n, smp.seed);
      smp.M = random_real_spectrum_matrix(n, smp.type, smp.seed);
      if (s % 2 == 1) smp.M = complexify_entries(smp.M, smp.seed);
      out.push_back(std::move(smp));
    }
  return out;
}

namespace {

class Tally {
 public:
  Tally(const ClaimInfo& info, double threshold) {
    r_.id = info.id;
    r_.statement = info.statement;
    r_.negative_control = info.negative_control;
    r_.threshold = threshold;
  }

  void observe(double residual, bool ok, const Counterexample& ce) {
    ++r_.cases;
    if (std::isfinite(residual)) r_.max_residual = std::max(r_.max_residual, residual);
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.counterexample = ce;
    }
  }

  void check(double residual, const Counterexample& ce) { observe(residual, residual <= r_.threshold, ce); }

  void fail(const Counterexample& ce) { observe(std::numeric_limits<double>::infinity(), false, ce); }

  ClaimResult& result() { return r_; }

 private:
  ClaimResult r_;
};

const ClaimInfo& info(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw Error(ErrorCode::InvalidArgument, "unregistered claim " + id);
}

Counterexample make_ce(const SuiteSample& s, double a, const std::string& detail) {
  return {s.id, s.seed, a, s.M, detail};
}

Matrix member_of(const RealFormSpec& form, std::uint64_t seed) {
  const int n = form.n;
  Rng rng(mix_seed(seed, 5));
  std::uniform_int_distribution<int> grid(-3, 3);
  switch (form.family) {
    case Family::gl_split:
    case Family::sl_split:
    case Family::sl_quaternionic:
    case Family::su_pq: {
      JordanType J;
      for (int i = 0; i < n; ++i) J.blocks[0.8 * i - 1.1] = {1};
      Matrix M = complexify_entries(random_real_spectrum_matrix(n, J, seed), seed);
      if (form.family != Family::gl_split) M -= (M.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
      return M;
    }
    case Family::so_pq:
    case Family::so_star: {
      const RealMatrix G = gaussian_real(n, n, rng);
      const Matrix A = cplx(0.0, 1.0) * (G - G.transpose()).cast<cplx>();
      const Matrix Gc = gaussian_complex(n, n, rng);
      const Matrix B = 0.3 * (Gc - Gc.transpose());
      const Matrix g = expm(B);
      return g * A * g.inverse();
    }
    case Family::sp_split:
    case Family::sp_pq: {
      const int m = n / 2;
      JordanType J;
      for (int i = 0; i < m; ++i) J.blocks[0.9 * i + 0.4] = {1};
      const Matrix A = random_real_spectrum_matrix(m, J, seed);
      Matrix M = Matrix::Zero(n, n);
      M.topLeftCorner(m, m) = A;
      M.bottomRightCorner(m, m) = -A.transpose();
      const Matrix P = 0.2 * gaussian_complex(m, m, rng);
      const Matrix Q0 = gaussian_complex(m, m, rng);
      const Matrix R0 = gaussian_complex(m, m, rng);
      Matrix B(n, n);
      B << P, 0.1 * (Q0 + Q0.transpose()), 0.1 * (R0 + R0.transpose()), -P.transpose();
      const Matrix g = expm(B);
      return g * M * g.inverse();
    }
    default:
      break;
  }
  throw Error(ErrorCode::UnsupportedForm, "no sampler for this family");
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Tolerances& tol = config.tol;
  const auto samples = suite_samples(config);
  std::map<std::string, ClaimResult> results;
  auto commit = [&](Tally& t) { results[t.result().id] = t.result(); };

  // quiver_core
  {
    Tally conj(info("moment.conjugation_intertwines"), 1e-10);
    Tally quad(info("moment.quadratic_scaling"), 1e-10);
    for (int n = 1; n <= config.n_max; ++n) {
      Rng rng(mix_seed(config.seed, 500 + n));
      const QuiverRep rep = random_rep(DimensionVector::chain(n), rng);
      const auto m = mu(rep);
      const auto mc = mu(conj_rep(rep));
      double r = 0.0;
      for (std::size_t k = 0; k < m.real.size(); ++k) {
        r = std::max(r, (mc.complex[k] - m.complex[k].conjugate()).norm());
        r = std::max(r, (mc.real[k] + m.real[k].conjugate()).norm());
      }
      const Counterexample ce{"rep-n" + std::to_string(n), mix_seed(config.seed, 500 + n), 0.0, Matrix(), "random representation"};
      conj.check(r / (1.0 + rep_norm(rep) * rep_norm(rep)), ce);
      const auto m2 = mu(scale(rep, 2.0));
      double q = 0.0;
      for (std::size_t k = 0; k < m.real.size(); ++k) {
        q = std::max(q, (m2.real[k] - 4.0 * m.real[k]).norm());
        q = std::max(q, (m2.complex[k] - 4.0 * m.complex[k]).norm());
      }
      quad.check(q / (1.0 + rep_norm(rep) * rep_norm(rep)), ce);
    }
    commit(conj);
    commit(quad);
  }

  // mv_bridge and involution on the random sample set
  {
    Tally round(info("bridge.round_trip"), 1e-8);
    Tally level(info("bridge.level_residual"), 1e-10);
    Tally bal(info("bridge.balance"), tol.residual);
    Tally e0(info("involution.endpoint_conjugation"), 1e-8);
    Tally e1(info("involution.endpoint_transpose"), 1e-8);
    Tally invol(info("involution.involutive"), 1e-6);
    Tally chi(info("involution.charpoly_invariant"), 1e-7);
    Tally orbit(info("involution.orbit_invariant"), 0.0);
    Tally order(info("involution.ordering_independent"), 1e-6);
    Tally orth(info("involution.orthogonal_equivariant"), 1e-5);
    Tally scal(info("involution.scaling_equivariant"), 1e-5);
    Tally bcomm(info("involution.beta_commutes"), 1e-5);
    Tally bsq(info("involution.beta_square"), 0.0);
    Tally fixed(info("involution.fixed_endpoint_sets"), 1e-8);

    for (const auto& s : samples) {
      const Matrix& M = s.M;
      try {
        const EncodedPoint ep = encode_balanced(M, tol);
        level.check(ep.level_residual, make_ce(s, 0.0, "mu_C level residual"));
        bool monotone = true;
        for (std::size_t i = 1; i < ep.balance.step_history.size(); ++i)
          monotone = monotone && ep.balance.step_history[i].residual < ep.balance.step_history[i - 1].residual;
        bal.observe(ep.balance.final_residual,
                    ep.balance.converged && monotone && ep.balance.iterations <= 2000,
                    make_ce(s, 0.0, "balance " + std::string(to_string(ep.balance.status))));
        round.check(frob(decode(ep.rep) - M) / (1.0 + frob(M)), make_ce(s, 0.0, "round trip"));
      } catch (const Error& e) {
        const auto ce = make_ce(s, 0.0, e.what());
        level.fail(ce);
        bal.fail(ce);
        round.fail(ce);
      }

      bsq.check((beta_gl(beta_gl(M)) - M).norm(), make_ce(s, 0.0, "beta^2"));

      for (double a : config.a_grid) {
        try {
          const Matrix A = alpha_gl(M, InvolutionParam(a), tol);
          if (a == 0.0) e0.check((A - M.conjugate()).norm() / (1.0 + frob(M)), make_ce(s, a, "alpha_0 vs conj"));
          if (a == 1.0) e1.check((A - M.transpose()).norm() / (1.0 + frob(M)), make_ce(s, a, "alpha_1 vs transpose"));
          const Matrix AA = alpha_gl(A, InvolutionParam(a), tol);
          invol.check((AA - M).norm() / (1.0 + frob(M)), make_ce(s, a, "alpha_a twice"));
          chi.check(charpoly_drift(A, M), make_ce(s, a, "charpoly drift"));
          const bool same = same_jordan_type(jordan_type(A, tol), s.type, 1e-6);
          orbit.observe(same ? 0.0 : 1.0, same, make_ce(s, a, "Jordan type changed"));
        } catch (const Error& e) {
          const auto ce = make_ce(s, a, e.what());
          if (a == 0.0) e0.fail(ce);
          if (a == 1.0) e1.fail(ce);
          invol.fail(ce);
          chi.fail(ce);
          orbit.fail(ce);
        }
      }

      // Reverse the nonzero clusters; the zero cluster keeps its leading place.
      const SpectralData sd = s.type.spectrum();
      if (sd.values.size() >= 2) {
        try {
          auto def = default_cluster_order(sd, tol.cluster * (1.0 + frob(M)));
          std::vector<int> alt = def;
          const bool lead_zero = std::abs(sd.values[def.front()]) <= tol.cluster * (1.0 + frob(M));
          std::reverse(alt.begin() + (lead_zero ? 1 : 0), alt.end());
          if (alt != def) {
            AlphaOptions o1, o2;
            o1.cluster_order = def;
            o2.cluster_order = alt;
            o1.known_type = o2.known_type = s.type;
            for (double a : {0.3, 0.5, 0.8}) {
              const Matrix A1 = alpha_gl(M, InvolutionParam(a), tol, o1);
              const Matrix A2 = alpha_gl(M, InvolutionParam(a), tol, o2);
              order.check((A1 - A2).norm() / (1.0 + frob(M)), make_ce(s, a, "reordered clusters"));
            }
          }
        } catch (const Error& e) {
          order.fail(make_ce(s, 0.5, e.what()));
        }
      }

      try {
        const auto eq = equivariance_suite(M, InvolutionParam(0.5), config.equivariance_trials, s.seed, tol);
        orth.check(eq.orthogonal, make_ce(s, 0.5, "orthogonal equivariance"));
        scal.check(eq.scaling, make_ce(s, 0.5, "scaling equivariance"));
        bcomm.check(eq.beta, make_ce(s, 0.5, "beta commutation"));
      } catch (const Error& e) {
        const auto ce = make_ce(s, 0.5, e.what());
        orth.fail(ce);
        scal.fail(ce);
        bcomm.fail(ce);
      }

      // Endpoint fixed sets: real M is alpha_0-fixed, a complexified copy is not; alpha_1
      // fixes M exactly when M is symmetric.
      try {
        const bool real_entries = imag_residual(M) == 0.0;
        const Matrix A0 = alpha_gl(M, InvolutionParam(0.0), tol);
        const Matrix A1 = alpha_gl(M, InvolutionParam(1.0), tol);
        const double r0 = (A0 - M).norm() / (1.0 + frob(M));
        const double r1 = (A1 - M).norm() / (1.0 + frob(M));
        const bool sym = symmetry_residual(M) <= 1e-8 * (1.0 + frob(M));
        const bool ok0 = real_entries ? r0 <= 1e-8 : (imag_residual(M) <= 1e-6 || r0 > 1e-6);
        const bool ok1 = sym ? r1 <= 1e-8 : r1 > 1e-6;
        fixed.observe(real_entries ? r0 : 0.0, ok0 && ok1, make_ce(s, 0.0, "fixed-set characterisation"));
      } catch (const Error& e) {
        fixed.fail(make_ce(s, 0.0, e.what()));
      }
    }
    for (Tally* t : {&round, &level, &bal, &e0, &e1, &invol, &chi, &orbit, &order, &orth, &scal, &bcomm, &bsq, &fixed})
      commit(*t);
  }

  // classical families
  {
    Tally cls(info("involution.classical_endpoints"), 1e-8);
    const std::vector<RealFormSpec> forms = {
        {Family::gl_split, 3, 0},  {Family::sl_split, 3, 0},  {Family::sl_quaternionic, 4, 0},
        {Family::su_pq, 3, 1},     {Family::so_pq, 3, 1},     {Family::so_star, 4, 0},
        {Family::sp_split, 4, 0},  {Family::sp_pq, 4, 1},
    };
    std::uint64_t idx = 0;
    for (const auto& form : forms) {
      const std::uint64_t sd = mix_seed(config.seed, 900 + idx++);
      SuiteSample s{std::string(to_string(form.family)), sd, form.n, {}, {}};
      try {
        s.M = member_of(form, sd);
        const Matrix A0 = alpha_classical(form, s.M, InvolutionParam(0.0), tol);
        const Matrix A1 = alpha_classical(form, s.M, InvolutionParam(1.0), tol);
        const Matrix Ah = alpha_classical(form, s.M, InvolutionParam(0.5), tol);
        const double sc = 1.0 + frob(s.M);
        cls.check((A0 - eta_form(form, s.M)).norm() / sc, make_ce(s, 0.0, "alpha_0 vs eta"));
        cls.check((A1 + theta_form(form, s.M, tol)).norm() / sc, make_ce(s, 1.0, "alpha_1 vs -theta"));
        cls.check(membership_residual(form, Ah) / sc, make_ce(s, 0.5, "output left the algebra"));
      } catch (const Error& e) {
        cls.fail(make_ce(s, 0.0, e.what()));
      }
    }
    commit(cls);
  }

  // homeo_tracer and ks_orbits
  {
    Tally nil(info("trace.nilpotent_orbits"), 1e-6);
    Tally dist(info("trace.distinct_spectrum"), 1e-6);
    Tally teq(info("trace.equivariant"), 1e-5);
    Tally kst(info("ks.table_identity"), 0.0);
    Tally poset(info("ks.poset_axioms"), 0.0);

    for (int n = 1; n <= std::max(config.trace_n_max, 1); ++n) {
      const auto dp = dominance_poset(n);
      const bool ok = dp.is_partial_order();
      poset.observe(ok ? 0.0 : 1.0, ok, {"poset-n" + std::to_string(n), 0, 0.0, Matrix(), "poset axioms"});
    }

    for (int n = 1; n <= config.trace_n_max; ++n) {
      const KsTable table = ks_table_gl(n);
      std::uint64_t idx = 0;
      for (const auto& pr : table.pairs) {
        SuiteSample s;
        s.n = n;
        s.seed = mix_seed(config.seed, 2000 + 10 * n + idx++);
        s.type.blocks[0.0] = pr.real_label;
        s.id = "trace-n" + std::to_string(n) + "-" + std::to_string(idx);
        s.M = random_real_spectrum_matrix(n, s.type, s.seed);
        try {
          const TracePath path = trace(s.M, config.trace_steps, tol);
          const KsEndpointReport rep = verify_ks_endpoint(path, tol);
          const bool ok = rep.jordan_equal && rep.spectral_drift <= 1e-6 &&
                          rep.symmetry_residual <= 1e-6 && rep.source_imag == 0.0;
          nil.observe(std::max(rep.symmetry_residual, rep.spectral_drift), ok,
                      make_ce(s, 1.0, "symmetric target / Jordan type / drift"));
          const bool label_ok = rep.ks_label.has_value() && *rep.ks_label == pr.symmetric_label;
          kst.observe(label_ok ? 0.0 : 1.0, label_ok, make_ce(s, 1.0, "KS label mismatch"));
        } catch (const Error& e) {
          nil.fail(make_ce(s, 1.0, e.what()));
          kst.fail(make_ce(s, 1.0, e.what()));
        }
      }

      SuiteSample s;
      s.n = n;
      s.seed = mix_seed(config.seed, 3000 + n);
      for (int i = 0; i < n; ++i) s.type.blocks[1.0 + 0.7 * i - 0.35 * n] = {1};
      s.id = "trace-distinct-n" + std::to_string(n);
      s.M = random_real_spectrum_matrix(n, s.type, s.seed);
      try {
        const TracePath path = trace(s.M, config.trace_steps, tol);
        const KsEndpointReport rep = verify_ks_endpoint(path, tol);
        const bool ok = rep.jordan_equal && rep.spectral_drift <= 1e-6 && rep.symmetry_residual <= 1e-6 &&
                        path.max_spectral_drift <= 1e-6;
        dist.observe(std::max({rep.symmetry_residual, rep.spectral_drift, path.max_spectral_drift}), ok,
                     make_ce(s, 1.0, "distinct spectrum trace"));

        if (n >= 2) {
          const Matrix k = random_orthogonal(n, mix_seed(s.seed, 1)).cast<cplx>();
          const TracePath pk = trace(k * s.M * k.transpose(), config.trace_steps, tol);
          teq.check((pk.target - k * path.target * k.transpose()).norm(), make_ce(s, 1.0, "O_n trace equivariance"));
          const double t = 2.5;
          const TracePath pt = trace(t * s.M, config.trace_steps, tol);
          teq.check((pt.target - t * path.target).norm(), make_ce(s, 1.0, "scaling trace equivariance"));
        }
      } catch (const Error& e) {
        dist.fail(make_ce(s, 1.0, e.what()));
        teq.fail(make_ce(s, 1.0, e.what()));
      }
    }
    for (Tally* t : {&nil, &dist, &teq, &kst, &poset}) commit(*t);
  }

  // springer_hecke
  {
    Tally split(info("hecke.split_parameters"), 0.0);
    Tally cplxd(info("hecke.complex_parameters"), 0.0);
    Tally semi(info("hecke.semismall"), 0.0);
    for (int n = 2; n <= std::max(2, config.n_max); ++n) {
      for (Family f : {Family::gl_split, Family::sl_split, Family::gl_complex, Family::sl_complex}) {
        const bool is_split = f == Family::gl_split || f == Family::sl_split;
        Tally& t = is_split ? split : cplxd;
        const int want = is_split ? 1 : 2;
        const Counterexample ce{std::string(to_string(f)) + "-n" + std::to_string(n), 0, 0.0, Matrix(), "d_s"};
        try {
          const auto h = hecke_parameters({f, n, 0});
          bool ok = static_cast<int>(h.generators.size()) == n - 1;
          int worst = 0;
          for (const auto& g : h.generators) {
            ok = ok && g.d == want;
            worst = std::max(worst, std::abs(g.d - want));
          }
          t.observe(worst, ok, ce);
        } catch (const Error& e) {
          t.fail({ce.case_id, 0, 0.0, Matrix(), e.what()});
        }
      }
    }
    for (int n = 1; n <= config.semismall_n_max; ++n)
      for (const auto& row : semismall_check_gl(n)) {
        std::string lbl;
        for (int p : row.lambda) lbl += std::to_string(p);
        semi.observe(row.holds ? 0.0 : 1.0, row.holds, {"semismall-" + lbl, 0, 0.0, Matrix(), "bound violated"});
      }
    for (Tally* t : {&split, &cplxd, &semi}) commit(*t);
  }

  // negative controls: the broken pipelines must fail the endpoint identities
  if (config.negative_controls) {
    Tally kap(info("control.kappa_flip"), 0.0);
    Tally muf(info("control.mu_sign_flip"), 0.0);
    AlphaOptions flip_kappa;
    flip_kappa.conv.kappa = -kKappa;
    AlphaOptions flip_mu;
    flip_mu.conv.framing_sign = -1.0;
    int detected_k = 0, detected_m = 0, nonzero = 0;
    auto endpoint_fails = [&](const Matrix& M, const AlphaOptions& opts) {
      try {
        const double sc = 1e-8 * (1.0 + frob(M));
        const double r0 = (alpha_gl(M, InvolutionParam(0.0), tol, opts) - M.conjugate()).norm();
        const double r1 = (alpha_gl(M, InvolutionParam(1.0), tol, opts) - M.transpose()).norm();
        return r0 > sc || r1 > sc;
      } catch (const Error&) {
        return true;
      }
    };
    for (const auto& s : samples) {
      if (frob(s.M) == 0.0) continue;
      ++nonzero;
      detected_k += endpoint_fails(s.M, flip_kappa);
      detected_m += endpoint_fails(s.M, flip_mu);
    }
    // Detection means the endpoint criterion goes red; the residual reports the missed fraction.
    const auto frac = [&](int d) { return nonzero ? 1.0 - static_cast<double>(d) / nonzero : 1.0; };
    kap.observe(frac(detected_k), detected_k > 0, {"control-kappa", config.seed, 0.0, Matrix(), "kappa flip went undetected"});
    muf.observe(frac(detected_m), detected_m > 0, {"control-mu", config.seed, 0.0, Matrix(), "mu flip went undetected"});
    kap.result().cases = muf.result().cases = nonzero;
    commit(kap);
    commit(muf);
  }

  SuiteReport report;
  report.seed = config.seed;
  for (auto& [id, r] : results) report.claims.push_back(std::move(r));
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace hklab
