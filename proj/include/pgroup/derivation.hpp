#pragma once

// Derivations Gbar -> A: the extension criterion on generator images, the
// coefficient matrix E of the bracket-symmetry constraints, solved derivation
// spaces Der^C(Gbar, A), cocycle evaluation, and inner-derivation subspaces.

#include <optional>
#include <vector>

#include "pgroup/action.hpp"

namespace pgroup {

// A derivation is stored as the concatenated A-coordinates of its generator
// images (n blocks of length dim A).
struct Derivation {
  FpVec images;

  FpVec image_block(const ModuleAction& a, int i) const {
    return FpVec(images.begin() + static_cast<std::ptrdiff_t>(i) * a.dim_a,
                 images.begin() + static_cast<std::ptrdiff_t>(i + 1) * a.dim_a);
  }
  bool is_zero() const { return fp_is_zero(images); }
  bool operator==(const Derivation&) const = default;
};

// Extension criterion for a generator assignment b_1..b_n (A-coordinates):
// b_i in ker tau_{x_i} and [b_i, x_j] = [b_j, x_i] for all i, j.
bool extension_check(const ModuleAction& a, const std::vector<FpVec>& images);
bool extension_check(const ModuleAction& a, const Derivation& d);

// Coefficient matrix E for (C, D): binom(n,2)*dim(D) rows, dim(C)*n columns,
// rows ordered lexicographically by (i, j, q). Requires [C, x_i] <= D.
FpMatrix constraint_matrix(const ModuleAction& a, const FpSubspace& c, const FpSubspace& d);

struct DerivationSpace {
  FpSubspace space;       // subspace of F_p^(n * dim A)
  FpSubspace constraint;  // the C that was solved against
  std::vector<Derivation> basis() const;
  int dim() const { return static_cast<int>(space.dim()); }
};

// Der^C(Gbar, A), solved on the product of the kernels ker tau_{x_i} /\ C.
// D defaults to the span of all [C, x_i].
DerivationSpace derivation_space(const ModuleAction& a, const FpSubspace& c,
                                 const std::optional<FpSubspace>& d = std::nullopt);

// Cocycle value at the coset with coordinates c, in A-coordinates.
FpVec apply_derivation(const ModuleAction& a, const Derivation& d, const FpVec& c);
// Same, evaluated at a group element (through its coset).
Elt derivation_value_at(const ModuleAction& a, const Derivation& d, Elt e);

// phi_a for a in Z(Phi(G)): xbar -> [x, a]. Throws std::domain_error when
// some image [x_i, a] falls outside A (that happens exactly when a is not in
// Omega_1*(G)).
Derivation inner_derivation(const ModuleAction& a, Elt elt);

// Span of {phi_a : a in W} for a subgroup W <= A*; checks the dimension
// equals log_p |W / (W /\ Z(G))|.
FpSubspace inner_space(const ModuleAction& a, const Subgroup& w);

// Span of {phi_g : g in C_G(Phi), [G, g] <= A}: exactly the derivations whose
// lift is an inner automorphism. Coincides with inner_space(A*) when
// C_G(Z(Phi(G))) = Phi(G).
FpSubspace inner_space_full(const ModuleAction& a);

// Quadratic oracle: every tuple in C^n surviving extension_check, in odometer
// order. Guarded against more than `limit` candidate tuples.
std::vector<Derivation> enumerate_derivations_bruteforce(const ModuleAction& a,
                                                         const FpSubspace& c,
                                                         std::size_t limit = 5'000'000);

// Lemma-style search at one filtration level: when
// dim Der(Gbar, A_{level-1}) > dim Ider(Gbar, A* /\ Z_level), returns a basis
// derivation of that space outside the full inner subspace.
std::optional<Derivation> find_noninner_derivation(const ModuleAction& a, int level);

}  // namespace pgroup
