#pragma once

// Independent reference computations used only by tests.

#include <cstdint>
#include <map>
#include <vector>

#include "hklab/linalg.hpp"

namespace oracle {

using Row = std::vector<std::int64_t>;
using ModMatrix = std::vector<Row>;
using u128 = unsigned __int128;

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a = mod(a, p);
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Row echelon over F_p; returns the rank and leaves the pivots in place.
inline int rank_mod(ModMatrix m, std::int64_t p) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const std::int64_t iv = inv_mod(m[r][c], p);
    for (auto& x : m[r]) x = x * iv % p;
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c]) {
        const std::int64_t f = m[i][c];
        for (std::size_t k = 0; k < cols; ++k) m[i][k] = mod(m[i][k] - f * m[r][k], p);
      }
    ++r;
  }
  return static_cast<int>(r);
}

inline ModMatrix mul_mod(const ModMatrix& a, const ModMatrix& b, std::int64_t p) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  ModMatrix c(n, Row(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < m; ++j) c[i][j] = (c[i][j] + a[i][l] * b[l][j]) % p;
  return c;
}

inline ModMatrix nilpotent_mod(const hklab::Partition& lam) {
  const int n = hklab::partition_size(lam);
  ModMatrix N(n, Row(n, 0));
  int off = 0;
  for (int part : lam) {
    for (int i = 0; i + 1 < part; ++i) N[off + i][off + i + 1] = 1;
    off += part;
  }
  return N;
}

// Null space basis (columns) of N over F_p; for a nilpotent Jordan matrix this is explicit:
// the first basis vector of every block.
inline std::vector<Row> kernel_basis(const hklab::Partition& lam) {
  const int n = hklab::partition_size(lam);
  std::vector<Row> basis;
  int off = 0;
  for (int part : lam) {
    Row v(n, 0);
    v[off] = 1;
    basis.push_back(v);
    off += part;
  }
  return basis;
}

inline hklab::Partition partition_from_ranks(const std::vector<int>& r) {
  // r[0] = dim, r[j] = rank N^j; column lengths are successive drops.
  hklab::Partition cols;
  for (std::size_t j = 1; j < r.size(); ++j)
    if (r[j - 1] - r[j] > 0) cols.push_back(r[j - 1] - r[j]);
  return hklab::conjugate_partition(cols);
}

// Number of complete flags over F_p stable under a nilpotent of type lam. Recursion: the first
// line L lies in ker N and the rest is a stable flag of V/L, whose type is read off from ranks.
class SpringerCounter {
 public:
  explicit SpringerCounter(std::int64_t p) : p_(p) {}

  u128 count(const hklab::Partition& lam) {
    if (lam.empty()) return 1;
    if (auto it = memo_.find(lam); it != memo_.end()) return it->second;
    const int n = hklab::partition_size(lam);
    std::map<hklab::Partition, u128> tally;
    const auto basis = kernel_basis(lam);
    const int k = static_cast<int>(basis.size());
    if (k == n) {
      // N = 0: every line, quotient stays zero.
      u128 lines = 0, pw = 1;
      for (int i = 0; i < n; ++i) {
        lines += pw;
        pw *= static_cast<u128>(p_);
      }
      tally[hklab::Partition(static_cast<std::size_t>(n - 1), 1)] = lines;
    } else {
      std::vector<ModMatrix> powers;
      ModMatrix P = nilpotent_mod(lam);
      while (rank_mod(P, p_) > 0) {
        powers.push_back(P);
        P = mul_mod(P, nilpotent_mod(lam), p_);
      }
      // Normalised coordinates: leading nonzero entry 1.
      for (int lead = 0; lead < k; ++lead) {
        const int free = k - lead - 1;
        std::int64_t total = 1;
        for (int i = 0; i < free; ++i) total *= p_;
        for (std::int64_t code = 0; code < total; ++code) {
          Row c(k, 0);
          c[lead] = 1;
          std::int64_t rest = code;
          for (int i = lead + 1; i < k; ++i) {
            c[i] = rest % p_;
            rest /= p_;
          }
          Row v(n, 0);
          for (int i = 0; i < k; ++i)
            if (c[i])
              for (int j = 0; j < n; ++j) v[j] = (v[j] + c[i] * basis[i][j]) % p_;
          std::vector<int> r{n - 1};
          for (const auto& Pj : powers) {
            ModMatrix aug = Pj;
            for (int i = 0; i < n; ++i) aug[i].push_back(v[i]);
            r.push_back(rank_mod(aug, p_) - 1);
          }
          r.push_back(0);
          ++tally[partition_from_ranks(r)];
        }
      }
    }
    u128 total = 0;
    for (const auto& [mu, lines] : tally) total += lines * count(mu);
    memo_[lam] = total;
    return total;
  }

 private:
  std::int64_t p_;
  std::map<hklab::Partition, u128> memo_;
};

// Base-q digits of a value; for a point count with nonnegative coefficients below q these are
// exactly the polynomial coefficients, lowest degree first.
inline std::vector<int> base_digits(u128 v, std::int64_t q) {
  std::vector<int> d;
  while (v) {
    d.push_back(static_cast<int>(v % static_cast<u128>(q)));
    v /= static_cast<u128>(q);
  }
  return d;
}

// Dominance by explicit partial sums, independent of the library.
inline bool dominated(const hklab::Partition& a, const hklab::Partition& b) {
  int sa = 0, sb = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

// Number of partitions of n by Euler's pentagonal recurrence.
inline long long partition_count(int n) {
  std::vector<long long> p(static_cast<std::size_t>(n + 1), 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1;; ++k) {
      const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
      if (g1 > m) break;
      const long long sign = (k % 2) ? 1 : -1;
      p[m] += sign * p[m - g1];
      if (g2 <= m) p[m] += sign * p[m - g2];
    }
  return p[n];
}

}  // namespace oracle
