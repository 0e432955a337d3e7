#pragma once

// Explicit automorphisms of a PcGroup: lifting derivations to order-p
// automorphisms fixing the Frattini subgroup pointwise, innerness decisions
// with witnesses, a direct order-3 construction for 2-generated groups of
// class 3 with cyclic center, and brute-force search oracles.

#include <optional>
#include <vector>

#include "pgroup/derivation.hpp"

namespace pgroup {

struct Automorphism {
  const PcGroup* group = nullptr;
  std::vector<Elt> gen_images;  // image of every pc generator
  std::vector<Elt> full_map;    // cached permutation over all elements
  std::int64_t order = 1;      // exact multiplicative order of full_map

  Elt apply(Elt e) const { return full_map[static_cast<std::size_t>(e)]; }
};

// Builds the unique homomorphic extension of the generator images and checks
// the presentation relations, bijectivity, and caches the order. Returns
// nothing when the images do not define an automorphism.
std::optional<Automorphism> make_automorphism(const PcGroup& g,
                                              const std::vector<Elt>& gen_images);

// Full quadratic check phi(ab) = phi(a)phi(b); throws on violation.
void verify_automorphism_all_pairs(const Automorphism& alpha);

bool fixes_pointwise(const Automorphism& alpha, const Subgroup& sub);

struct InnerWitness {
  bool inner = false;
  Elt by = 0;  // conjugating element when inner
};

// Exhaustive scan: alpha equals conjugation by some element?
InnerWitness is_inner(const Automorphism& alpha);

// Lemma-style innerness decision through the inner derivation subspace;
// agrees with is_inner(lift_derivation(...)) by construction.
bool is_inner_via_derivation(const ModuleAction& a, const Derivation& d);

// x -> x * delta(xbar): an automorphism fixing Phi(G) pointwise, of order p
// exactly when delta != 0. Throws std::invalid_argument on an invalid delta.
Automorphism lift_derivation(const ModuleAction& a, const Derivation& d);

// Order-3 construction for p = 3, d(G) = 2, cl(G) = 3, Z(G) cyclic: search
// for k of order 3 in Z_2(G) \ Z(G) with k outside G', set beta(u x^i) =
// u (xk)^i on the maximal subgroup C_G(k). Every output is post-verified;
// returns nothing when no candidate k survives.
std::optional<Automorphism> case_b_construct(const PcGroup& g);

struct SearchCaps {
  std::int64_t full_search_max_order = 1024;  // general search limits
  int full_search_max_d = 4;
  double max_candidates = 2e7;
};

// Deterministic search for a non-inner automorphism of order p. With
// require_frattini_fixed the candidate images run over g_i * c with c in
// Omega_1(Z(Phi(G))) and results must fix Phi(G) pointwise; otherwise images
// run over all elements of matching order (within the caps).
std::optional<Automorphism> brute_force_search(const PcGroup& g, bool require_frattini_fixed,
                                               const SearchCaps& caps = {});

}  // namespace pgroup
