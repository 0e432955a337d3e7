#pragma once

// The conjugation module underlying the derivation computations:
// Gbar = G/Phi(G) acting on A = Omega_1(Z(Phi(G))), with the filtration
// A_i = A intersect Z_i(G) and the companion subgroups A* intersect Z_i.

#include <optional>
#include <vector>

#include "pgroup/structure.hpp"

namespace pgroup {

struct ModuleAction {
  const PcGroup* group = nullptr;

  Subgroup phi;        // Frattini subgroup
  Subgroup z_phi;      // Z(Phi(G))
  Subgroup c_zphi;     // C_G(Z(Phi(G)))
  Subgroup c_phi;      // C_G(Phi(G))
  Subgroup a_sub;      // A = Omega_1(Z(Phi(G)))
  Subgroup astar;      // Omega_1*(G) intersect Z(Phi(G))
  Subgroup zg;         // Z(G)
  std::vector<Subgroup> zs;  // upper central series, zs[i] = Z_i
  int cls = 0;

  bool standing_hypothesis = false;  // C_G(Z(Phi(G))) == Phi(G)
  bool a_in_z3 = false;              // A <= Z_3(G)

  int n = 0;                        // d(G): number of basis cosets
  std::vector<int> basis_gen_idx;   // pc generators whose cosets form the basis
  std::vector<Elt> transversal;     // lex-first representative of each basis coset
  std::vector<FpVec> bar_coords;    // Gbar coordinates per group element

  AbelianCoords acoords;            // F_p coordinates on A
  int dim_a = 0;
  std::vector<FpMatrix> act;        // act[i]: conjugation by transversal[i] on A

  std::vector<FpSubspace> a_levels;     // A_i as subspaces of A, i = 0..cls
  std::vector<Subgroup> astar_levels;   // A* intersect Z_i, i = 0..cls
  std::vector<int> dims_a;              // d(A_i), i = 0..cls
  std::vector<int> dims_astar;          // d(A* intersect Z_i), i = 0..cls

  Fp prime() const { return group->prime(); }
  const FpSubspace& a_level(int i) const;     // clamped: i<=0 zero, i>=cls full A
  const Subgroup& astar_level(int i) const;
  // matrix of conjugation by the coset with coordinates c
  FpMatrix coset_action(const FpVec& c) const;
};

// Requires cl(G) >= 2. The standing centralizer hypothesis is evaluated and
// recorded, not required.
ModuleAction build_module_action(const PcGroup& g);

struct TraceMap {
  int source = 0;   // basis index
  FpMatrix mat;     // a -> a * a^x * ... * a^{x^(p-1)} in A-coordinates
};

// Trace endomorphism of the i-th basis coset; checks tau^2 = 0 and the
// iterated-commutator formula tau(a) = [a,_{p-1} x] on a spanning set.
TraceMap trace_map(const ModuleAction& action, int i);

// Trace of an arbitrary coset (coordinates c), p terms.
FpMatrix coset_trace(const ModuleAction& action, const FpVec& c);

// dims[j] = d(ker tau_i intersect A_j) for j = 0..cls; enforces
// A_j <= ker tau for j <= p-1 and d >= d(A_j) - d(A_{j-p+1}).
std::vector<int> kernel_filtration(const ModuleAction& action, int i);

}  // namespace pgroup
