#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hklab/linalg.hpp"

namespace hklab {

// Lexicographically descending: n = 3 gives (3), (2,1), (1,1,1).
std::vector<Partition> partitions(int n);

// Partial sums of lhs never exceed those of rhs.
bool dominance_leq(const Partition& lhs, const Partition& rhs);

struct OrbitPoset {
  std::vector<Partition> labels;
  std::vector<std::vector<bool>> leq;

  bool is_partial_order() const;
  // Hasse diagram edges (i covered by j).
  std::vector<std::pair<int, int>> covers() const;
};

OrbitPoset dominance_poset(int n);

struct KsPair {
  Partition real_label;
  Partition symmetric_label;
};

struct KsTable {
  int n = 0;
  std::vector<KsPair> pairs;
  OrbitPoset real_side;
  OrbitPoset symmetric_side;
};

KsTable ks_table_gl(int n);

std::string ks_table_text(const KsTable& table);
std::string ks_table_dot(const KsTable& table);

JordanType orbit_label(const Matrix& M, const Tolerances& tol);

// Real nilpotent in Jordan form with the given block sizes.
Matrix nilpotent_from_partition(const Partition& p);

struct KsTraceCheck {
  Partition label;
  JordanType target_type;
  double symmetry_residual = 0.0;
  bool matches = false;
};

// Traces a seeded real nilpotent of each type and labels the symmetric endpoint.
std::vector<KsTraceCheck> ks_crosscheck(const KsTable& table, std::uint64_t seed, int steps,
                                        const Tolerances& tol);

}  // namespace hklab
