#include "hklab/springer_hecke.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "hklab/errors.hpp"
#include "hklab/ks_orbits.hpp"

namespace hklab {

namespace {

constexpr double kRootTol = 1e-8;

using LinearMap = std::function<std::vector<double>(const Matrix&)>;

Eigen::VectorXd flatten(const Matrix& X) {
  const Eigen::Index m = X.size();
  Eigen::VectorXd u(2 * m);
  for (Eigen::Index i = 0; i < m; ++i) {
    u(i) = X.data()[i].real();
    u(m + i) = X.data()[i].imag();
  }
  return u;
}

Matrix unflatten(const Eigen::VectorXd& u, int N) {
  Matrix X(N, N);
  const Eigen::Index m = X.size();
  for (Eigen::Index i = 0; i < m; ++i) X.data()[i] = cplx(u(i), u(m + i));
  return X;
}

// Orthonormal basis (columns, in flattened coordinates) of {X : constraint(X) = 0}.
Eigen::MatrixXd null_space(int N, const LinearMap& constraint) {
  const int dim = 2 * N * N;
  std::vector<Eigen::VectorXd> cols;
  for (int j = 0; j < dim; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(j) = 1.0;
    const auto c = constraint(unflatten(e, N));
    cols.push_back(Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
  }
  const auto rows = cols.front().size();
  if (rows == 0) return Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd C(rows, dim);
  for (int j = 0; j < dim; ++j) C.col(j) = cols[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10) ++rank;
  return svd.matrixV().rightCols(dim - rank);
}

void push_complex(std::vector<double>& out, const Matrix& M) {
  for (Eigen::Index i = 0; i < M.size(); ++i) {
    out.push_back(M.data()[i].real());
    out.push_back(M.data()[i].imag());
  }
}

struct Realization {
  int N = 0;
  LinearMap constraint;
  std::vector<Matrix> cartan;  // basis H_1..H_r of a, mutually orthogonal, equal norms
};

Realization realize(const RealFormSpec& form) {
  form.validate();
  Realization R;
  const int n = form.n;
  R.N = n;
  auto diagonal_cartan = [&] {
    for (int i = 0; i < n; ++i) {
      Matrix H = Matrix::Zero(n, n);
      H(i, i) = 1.0;
      R.cartan.push_back(H);
    }
  };
  switch (form.family) {
    case Family::gl_split:
      R.constraint = [](const Matrix& X) {
        std::vector<double> c;
        for (Eigen::Index i = 0; i < X.size(); ++i) c.push_back(X.data()[i].imag());
        return c;
      };
      diagonal_cartan();
      break;
    case Family::sl_split:
      R.constraint = [](const Matrix& X) {
        std::vector<double> c;
        for (Eigen::Index i = 0; i < X.size(); ++i) c.push_back(X.data()[i].imag());
        c.push_back(X.trace().real());
        return c;
      };
      diagonal_cartan();
      break;
    case Family::gl_complex:
      R.constraint = [](const Matrix&) { return std::vector<double>{}; };
      diagonal_cartan();
      break;
    case Family::sl_complex:
      R.constraint = [](const Matrix& X) {
        return std::vector<double>{X.trace().real(), X.trace().imag()};
      };
      diagonal_cartan();
      break;
    case Family::su_pq: {
      const int p = form.p;
      const int q = n - p;
      const Matrix D = signature_matrix(p, q);
      R.constraint = [D](const Matrix& X) {
        std::vector<double> c;
        push_complex(c, X.adjoint() * D + D * X);
        c.push_back(X.trace().real());
        c.push_back(X.trace().imag());
        return c;
      };
      // a = real diagonal part of the off-diagonal p x q block.
      for (int i = 0; i < std::min(p, q); ++i) {
        Matrix H = Matrix::Zero(n, n);
        H(i, p + i) = 1.0;
        H(p + i, i) = 1.0;
        R.cartan.push_back(H);
      }
      break;
    }
    default:
      throw Error(ErrorCode::UnsupportedForm,
                  std::string(to_string(form.family)) + " restricted roots are not tabulated");
  }
  return R;
}

bool same_root(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return a.size() == b.size() && (a - b).norm() <= kRootTol * (1.0 + a.norm());
}

std::string type_name(const RestrictedRootData& d) {
  const int r = d.little_weyl_rank;
  if (r == 0) return "A_0";
  if (!d.reduced) return "BC_" + std::to_string(r);
  bool has4 = false, has6 = false;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      has4 = has4 || d.coxeter[i][j] == 4;
      has6 = has6 || d.coxeter[i][j] == 6;
    }
  if (has6) return "G_2";
  if (!has4) return "A_" + std::to_string(r);
  // B or C: C has a single long simple root.
  std::vector<double> len;
  for (int s : d.simple_roots) len.push_back(d.positive_roots[s].functional.squaredNorm());
  const double mx = *std::max_element(len.begin(), len.end());
  const auto n_long = std::count_if(len.begin(), len.end(), [&](double l) { return l > 0.75 * mx; });
  return (n_long == 1 && r > 1 ? "C_" : "B_") + std::to_string(r);
}

int coxeter_entry(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c2 = std::pow(a.dot(b), 2) / (a.squaredNorm() * b.squaredNorm());
  if (c2 < 0.125) return 2;
  if (c2 < 0.375) return 3;
  if (c2 < 0.625) return 4;
  return 6;
}

}  // namespace

int RestrictedRootData::multiplicity_of(const Eigen::VectorXd& functional) const {
  for (const auto& r : positive_roots)
    if (same_root(r.functional, functional) || same_root(r.functional, -functional)) return r.multiplicity;
  return 0;
}

RestrictedRootData restricted_roots(const RealFormSpec& form) {
  const Realization R = realize(form);
  const Eigen::MatrixXd B = null_space(R.N, R.constraint);
  const int r = static_cast<int>(R.cartan.size());
  const auto dimg = B.cols();

  std::vector<Eigen::MatrixXd> ad;
  for (const auto& H : R.cartan) {
    Eigen::MatrixXd A(dimg, dimg);
    for (Eigen::Index j = 0; j < dimg; ++j) {
      const Matrix X = unflatten(B.col(j), R.N);
      A.col(j) = B.transpose() * flatten(H * X - X * H);
    }
    ad.push_back(0.5 * (A + A.transpose()));
  }

  // Generic element of a separates the joint eigenspaces.
  Eigen::MatrixXd generic = Eigen::MatrixXd::Zero(dimg, dimg);
  for (int i = 0; i < r; ++i) generic += (1.0 + std::sqrt(2.0 + i) / 7.0 + 0.1 * std::numbers::pi * i) * ad[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(generic);
  const auto& ev = es.eigenvalues();

  RestrictedRootData out;
  out.form = form;
  std::vector<RestrictedRoot> all;
  for (Eigen::Index i = 0; i < dimg;) {
    Eigen::Index j = i;
    while (j < dimg && std::abs(ev(j) - ev(i)) <= kRootTol * (1.0 + std::abs(ev(i)))) ++j;
    if (std::abs(ev(i)) > kRootTol) {
      const Eigen::MatrixXd V = es.eigenvectors().middleCols(i, j - i);
      Eigen::VectorXd f(r);
      for (int k = 0; k < r; ++k) f(k) = (V.transpose() * ad[k] * V).trace() / static_cast<double>(j - i);
      all.push_back({f, static_cast<int>(j - i)});
    }
    i = j;
  }

  Eigen::VectorXd weight(r);
  for (int k = 0; k < r; ++k) weight(k) = std::pow(2.0, r - k);
  for (const auto& root : all)
    if (root.functional.dot(weight) > 0.0) out.positive_roots.push_back(root);

  auto is_root = [&](const Eigen::VectorXd& f) {
    for (const auto& root : out.positive_roots)
      if (same_root(root.functional, f)) return true;
    return false;
  };

  for (std::size_t a = 0; a < out.positive_roots.size(); ++a) {
    const auto& fa = out.positive_roots[a].functional;
    if (is_root(0.5 * fa)) {
      out.reduced = false;
      continue;
    }
    bool decomposable = false;
    for (std::size_t b = 0; b < out.positive_roots.size() && !decomposable; ++b)
      if (b != a && is_root(fa - out.positive_roots[b].functional)) decomposable = true;
    if (!decomposable) out.simple_roots.push_back(static_cast<int>(a));
  }
  for (const auto& root : out.positive_roots)
    if (is_root(2.0 * root.functional)) out.reduced = false;

  out.little_weyl_rank = static_cast<int>(out.simple_roots.size());
  const int sr = out.little_weyl_rank;
  out.coxeter.assign(sr, std::vector<int>(sr, 1));
  for (int i = 0; i < sr; ++i)
    for (int j = 0; j < sr; ++j)
      if (i != j)
        out.coxeter[i][j] = coxeter_entry(out.positive_roots[out.simple_roots[i]].functional,
                                          out.positive_roots[out.simple_roots[j]].functional);
  out.root_system = type_name(out);
  return out;
}

HeckePresentation hecke_parameters(const RealFormSpec& form) {
  const RestrictedRootData rd = restricted_roots(form);
  HeckePresentation h;
  h.form = form;
  h.root_system = rd.root_system;
  h.coxeter = rd.coxeter;
  bool all_odd = true, all_even = true;
  for (std::size_t i = 0; i < rd.simple_roots.size(); ++i) {
    const auto& f = rd.positive_roots[rd.simple_roots[i]].functional;
    HeckeGenerator g;
    g.name = "T_" + std::to_string(i + 1);
    g.d = rd.multiplicity_of(f) + rd.multiplicity_of(2.0 * f);
    g.quadratic_relation = "(" + g.name + " - 1)(" + g.name + (g.d % 2 == 0 ? " + 1" : " - 1") + ") = 0";
    all_odd = all_odd && g.d % 2 == 1;
    all_even = all_even && g.d % 2 == 0;
    h.generators.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = i + 1; j < h.generators.size(); ++j) {
      const int m = h.coxeter[i][j];
      std::string lhs, rhs;
      for (int k = 0; k < m; ++k) {
        lhs += (k ? " " : "") + h.generators[k % 2 == 0 ? i : j].name;
        rhs += (k ? " " : "") + h.generators[k % 2 == 0 ? j : i].name;
      }
      h.braid_relations.push_back(lhs + " = " + rhs);
    }
  if (h.generators.empty())
    h.specialization = "trivial (no simple reflections)";
  else if (all_even)
    h.specialization = "group algebra C[W]";
  else if (all_odd)
    h.specialization = "Hecke algebra of W at q = -1";
  else
    h.specialization = "mixed quadratic parameters";
  return h;
}

std::vector<SemismallRow> semismall_check_gl(int n) {
  if (n < 1 || n > 6) throw Error(ErrorCode::InvalidArgument, "semismall table covers 1 <= n <= 6");
  std::vector<SemismallRow> rows;
  for (const auto& lam : partitions(n)) {
    SemismallRow row;
    row.lambda = lam;
    int sq = 0;
    for (int t : conjugate_partition(lam)) {
      sq += t * t;
      row.fiber_dim += t * (t - 1) / 2;
    }
    row.orbit_dim = n * n - sq;
    row.twice_bound = (n * n - n) - row.orbit_dim;
    row.holds = 2 * row.fiber_dim <= row.twice_bound;
    row.equality = 2 * row.fiber_dim == row.twice_bound;
    rows.push_back(row);
  }
  return rows;
}

std::string hecke_text(const HeckePresentation& h) {
  std::ostringstream os;
  os << "form " << to_string(h.form.family) << " n=" << h.form.n;
  if (h.form.family == Family::su_pq) os << " p=" << h.form.p;
  os << "\nrestricted root system " << h.root_system << "\n";
  for (const auto& g : h.generators) os << g.name << "  d=" << g.d << "  " << g.quadratic_relation << "\n";
  for (const auto& b : h.braid_relations) os << b << "\n";
  os << "specialization: " << h.specialization << "\n";
  return os.str();
}

std::string semismall_text(const std::vector<SemismallRow>& rows) {
  std::ostringstream os;
  os << "partition\tdim O\tfiber dim\tbound\tholds\tequality\n";
  for (const auto& r : rows) {
    os << "(";
    for (std::size_t i = 0; i < r.lambda.size(); ++i) os << (i ? "," : "") << r.lambda[i];
    os << ")\t" << r.orbit_dim << "\t" << r.fiber_dim << "\t" << r.twice_bound / 2.0 << "\t"
       << (r.holds ? "yes" : "no") << "\t" << (r.equality ? "yes" : "no") << "\n";
  }
  return os.str();
}

}  // namespace hklab
