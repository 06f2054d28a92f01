#pragma once

#include <string>
#include <vector>

#include "hklab/involution.hpp"
#include "hklab/linalg.hpp"

namespace hklab {

struct RestrictedRoot {
  Eigen::VectorXd functional;  // values on the chosen basis H_1..H_r of a
  int multiplicity = 0;        // real dimension of the root space
};

struct RestrictedRootData {
  RealFormSpec form;
  std::string root_system;                 // e.g. "A_3", "BC_2", "C_2"
  bool reduced = true;
  int little_weyl_rank = 0;
  std::vector<RestrictedRoot> positive_roots;
  std::vector<int> simple_roots;           // indices into positive_roots
  std::vector<std::vector<int>> coxeter;   // m_ij between simple reflections

  int multiplicity_of(const Eigen::VectorXd& functional) const;  // 0 when not a root
};

// Realises g_R inside gl_N(C) as a real subspace, diagonalises ad(a) on it and reads off roots
// and real multiplicities. Supported: gl_split, sl_split, gl_complex, sl_complex, su_pq.
RestrictedRootData restricted_roots(const RealFormSpec& form);

struct HeckeGenerator {
  std::string name;
  int d = 0;  // sum of m(alpha) over alpha with s_alpha = s
  std::string quadratic_relation;
};

struct HeckePresentation {
  RealFormSpec form;
  std::string root_system;
  std::vector<HeckeGenerator> generators;
  std::vector<std::vector<int>> coxeter;
  std::vector<std::string> braid_relations;
  std::string specialization;
};

HeckePresentation hecke_parameters(const RealFormSpec& form);

struct SemismallRow {
  Partition lambda;
  int orbit_dim = 0;      // n^2 - sum (lambda^t_i)^2
  int fiber_dim = 0;      // sum C(lambda^t_i, 2)
  int twice_bound = 0;    // dim N - dim O, with dim N = n^2 - n
  bool holds = false;     // 2 * fiber_dim <= twice_bound
  bool equality = false;
};

std::vector<SemismallRow> semismall_check_gl(int n);

std::string hecke_text(const HeckePresentation& h);
std::string semismall_text(const std::vector<SemismallRow>& rows);

}  // namespace hklab
