#include "hklab/ks_orbits.hpp"

#include <sstream>

#include "hklab/errors.hpp"
#include "hklab/homeo.hpp"

namespace hklab {

namespace {

void extend(int remaining, int cap, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, cap); part >= 1; --part) {
    cur.push_back(part);
    extend(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

std::string label(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

std::vector<Partition> partitions(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "partitions needs n >= 0");
  std::vector<Partition> out;
  Partition cur;
  extend(n, n, cur, out);
  return out;
}

bool dominance_leq(const Partition& lhs, const Partition& rhs) {
  if (partition_size(lhs) != partition_size(rhs))
    throw Error(ErrorCode::SizeMismatch, "dominance compares partitions of different sizes");
  int sl = 0, sr = 0;
  for (std::size_t i = 0; i < std::max(lhs.size(), rhs.size()); ++i) {
    sl += i < lhs.size() ? lhs[i] : 0;
    sr += i < rhs.size() ? rhs[i] : 0;
    if (sl > sr) return false;
  }
  return true;
}

bool OrbitPoset::is_partial_order() const {
  const std::size_t m = labels.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (!leq[i][i]) return false;
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) return false;
      for (std::size_t k = 0; k < m; ++k)
        if (leq[i][j] && leq[j][k] && !leq[i][k]) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, int>> OrbitPoset::covers() const {
  std::vector<std::pair<int, int>> out;
  const int m = static_cast<int>(labels.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool direct = true;
      for (int k = 0; k < m && direct; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) direct = false;
      if (direct) out.emplace_back(i, j);
    }
  return out;
}

OrbitPoset dominance_poset(int n) {
  OrbitPoset p;
  p.labels = partitions(n);
  const std::size_t m = p.labels.size();
  p.leq.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) p.leq[i][j] = dominance_leq(p.labels[i], p.labels[j]);
  return p;
}

KsTable ks_table_gl(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ks table needs n >= 1");
  KsTable t;
  t.n = n;
  t.real_side = dominance_poset(n);
  t.symmetric_side = t.real_side;
  for (const auto& p : t.real_side.labels) t.pairs.push_back({p, p});
  return t;
}

std::string ks_table_text(const KsTable& table) {
  std::ostringstream os;
  os << "n = " << table.n << "\n";
  os << "real orbit\tsymmetric orbit\n";
  for (const auto& pr : table.pairs) os << label(pr.real_label) << "\t" << label(pr.symmetric_label) << "\n";
  os << "closure order (covering relations):\n";
  for (const auto& [i, j] : table.real_side.covers())
    os << label(table.real_side.labels[i]) << " < " << label(table.real_side.labels[j]) << "\n";
  return os.str();
}

std::string ks_table_dot(const KsTable& table) {
  std::ostringstream os;
  os << "digraph ks_gl" << table.n << " {\n  rankdir=BT;\n";
  const auto emit = [&](const OrbitPoset& p, const char* side) {
    os << "  subgraph cluster_" << side << " {\n    label=\"" << side << "\";\n";
    for (std::size_t i = 0; i < p.labels.size(); ++i)
      os << "    " << side << i << " [label=\"" << label(p.labels[i]) << "\"];\n";
    for (const auto& [i, j] : p.covers()) os << "    " << side << i << " -> " << side << j << ";\n";
    os << "  }\n";
  };
  emit(table.real_side, "real");
  emit(table.symmetric_side, "symmetric");
  for (std::size_t i = 0; i < table.pairs.size(); ++i)
    os << "  real" << i << " -> symmetric" << i << " [style=dashed, dir=none];\n";
  os << "}\n";
  return os.str();
}

JordanType orbit_label(const Matrix& M, const Tolerances& tol) { return jordan_type(M, tol); }

Matrix nilpotent_from_partition(const Partition& p) {
  const int n = partition_size(p);
  Matrix N = Matrix::Zero(n, n);
  int offset = 0;
  for (int part : p) {
    for (int i = 0; i + 1 < part; ++i) N(offset + i, offset + i + 1) = 1.0;
    offset += part;
  }
  return N;
}

std::vector<KsTraceCheck> ks_crosscheck(const KsTable& table, std::uint64_t seed, int steps,
                                        const Tolerances& tol) {
  std::vector<KsTraceCheck> out;
  std::uint64_t idx = 0;
  for (const auto& pr : table.pairs) {
    const RealMatrix P = random_conditioned(table.n, mix_seed(seed, idx++), 10.0);
    const Matrix Pc = P.cast<cplx>();
    const Matrix M0 = (Pc * nilpotent_from_partition(pr.real_label) * Pc.inverse()).real().cast<cplx>();
    const TracePath path = trace(M0, steps, tol);
    KsTraceCheck c;
    c.label = pr.symmetric_label;
    c.target_type = orbit_label(path.target, tol);
    c.symmetry_residual = symmetry_residual(path.target);
    c.matches = c.target_type.is_nilpotent(tol.cluster * (1.0 + frob(path.target))) &&
                c.target_type.blocks.begin()->second == pr.symmetric_label;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace hklab
