#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgroup/automorphism.hpp"
#include "pgroup/corpus.hpp"

using namespace pgroup;

namespace {

const CorpusEntry& entry(const std::string& name) {
  for (const CorpusEntry& e : builtin_corpus())
    if (e.name == name) return e;
  throw std::logic_error("no corpus entry " + name);
}

Automorphism identity_automorphism(const PcGroup& g) {
  std::vector<Elt> gens;
  for (int i = 0; i < g.ngens(); ++i) gens.push_back(g.generator(i));
  auto a = make_automorphism(g, gens);
  REQUIRE(a.has_value());
  return *a;
}

Automorphism conjugation_by(const PcGroup& g, Elt c) {
  std::vector<Elt> gens;
  for (int i = 0; i < g.ngens(); ++i) gens.push_back(g.conjugate(g.generator(i), c));
  auto a = make_automorphism(g, gens);
  REQUIRE(a.has_value());
  return *a;
}

}  // namespace

TEST_CASE("make_automorphism rejects non-automorphisms") {
  PcGroup g = corpus_group(entry("d16"));
  // send r to an element of order 2: the power relation g2^2 = g3 breaks
  std::vector<Elt> bad{g.generator(0), g.generator(3), g.generator(2), g.generator(3)};
  CHECK_FALSE(make_automorphism(g, bad).has_value());
  // collapse everything to the identity: relations hold but not bijective
  std::vector<Elt> collapse(4, g.identity());
  CHECK_FALSE(make_automorphism(g, collapse).has_value());
}

TEST_CASE("identity and conjugations are inner, with witnesses") {
  PcGroup g = corpus_group(entry("d16"));
  Automorphism id = identity_automorphism(g);
  InnerWitness w = is_inner(id);
  CHECK(w.inner);
  CHECK(w.by == g.identity());

  Subgroup z = center(g);
  for (Elt c : {g.generator(0), g.generator(1), g.mul(g.generator(0), g.generator(1))}) {
    Automorphism conj = conjugation_by(g, c);
    InnerWitness cw = is_inner(conj);
    CHECK(cw.inner);
    // witness is determined up to the center
    bool same_coset = false;
    for (Elt zz : z.members) same_coset = same_coset || g.mul(cw.by, zz) == c;
    CHECK(same_coset);
  }
}

TEST_CASE("lift of the zero derivation is the identity") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  Derivation zero{FpVec(static_cast<std::size_t>(a.n) * a.dim_a, 0)};
  Automorphism alpha = lift_derivation(a, zero);
  CHECK(alpha.order == 1);
  for (Elt e = 0; e < g.size(); ++e) CHECK(alpha.apply(e) == e);
}

TEST_CASE("lift of an inner derivation is conjugation by the same element") {
  for (const char* name : {"w81", "mc243", "d16"}) {
    PcGroup g = corpus_group(entry(name));
    ModuleAction a = build_module_action(g);
    for (Elt c : a.astar.members) {
      Automorphism lifted = lift_derivation(a, inner_derivation(a, c));
      for (Elt e = 0; e < g.size(); ++e) CHECK(lifted.apply(e) == g.conjugate(e, c));
    }
  }
}

TEST_CASE("every nonzero lift has order exactly p and fixes Phi pointwise") {
  for (const char* name : {"w81", "f243", "mc243", "m625", "d16c2c2"}) {
    PcGroup g = corpus_group(entry(name));
    ModuleAction a = build_module_action(g);
    DerivationSpace ds = derivation_space(a, a.a_level(a.cls));
    for (const Derivation& d : ds.basis()) {
      Automorphism alpha = lift_derivation(a, d);  // internally verified
      CHECK(alpha.order == static_cast<std::int64_t>(g.prime()));
      CHECK(fixes_pointwise(alpha, a.phi));
    }
  }
}

TEST_CASE("lifting is additive: lift(d1 + d2) = lift(d1) o lift(d2)") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  DerivationSpace ds = derivation_space(a, a.a_level(a.cls));
  auto basis = ds.basis();
  for (const Derivation& d1 : basis)
    for (const Derivation& d2 : basis) {
      Derivation sum{fp_add(d1.images, d2.images, g.prime())};
      Automorphism lhs = lift_derivation(a, sum);
      Automorphism a1 = lift_derivation(a, d1);
      Automorphism a2 = lift_derivation(a, d2);
      for (Elt e = 0; e < g.size(); ++e) CHECK(lhs.apply(e) == a2.apply(a1.apply(e)));
    }
}

TEST_CASE("innerness through derivations agrees with the exhaustive scan") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    if (g.is_abelian()) continue;
    ModuleAction a = build_module_action(g);
    DerivationSpace ds = derivation_space(a, a.a_level(a.cls));
    for (const Derivation& d : ds.basis()) {
      bool via = is_inner_via_derivation(a, d);
      bool direct = is_inner(lift_derivation(a, d)).inner;
      INFO(e.name);
      CHECK(via == direct);
    }
  }
}

TEST_CASE("case-b construction: preconditions") {
  CHECK_THROWS_AS((void)case_b_construct(corpus_group(entry("d16"))), std::invalid_argument);
  CHECK_THROWS_AS((void)case_b_construct(corpus_group(entry("heis27"))), std::invalid_argument);
  CHECK_THROWS_AS((void)case_b_construct(corpus_group(entry("f243"))), std::invalid_argument);
}

TEST_CASE("case-b on the wreath-type group of order 81: no candidate k exists") {
  // Z_2 = G' here, so no k of order 3 in Z_2 \ Z avoids G'; recorded fixture
  PcGroup g = corpus_group(entry("w81"));
  auto zs = upper_central_series(g);
  Subgroup der = derived_subgroup(g);
  CHECK(zs[2].members == der.members);
  CHECK_FALSE(case_b_construct(g).has_value());
}

TEST_CASE("case-b on the metacyclic C27:C9 group succeeds") {
  PcGroup g = corpus_group(entry("mc243"));
  auto beta = case_b_construct(g);
  REQUIRE(beta.has_value());
  CHECK(beta->order == 3);
  CHECK_FALSE(is_inner(*beta).inner);
  CHECK(fixes_pointwise(*beta, frattini(g)));
  verify_automorphism_all_pairs(*beta);
  // the defining identity of the construction: (xk)^3 = x^3 for the chosen
  // k in Z_2 \ Z of order 3 outside G'; re-derive k = g4 = b^3 and x = g2
  auto zs = upper_central_series(g);
  Subgroup der = derived_subgroup(g);
  Elt k = g.generator(3);
  CHECK(zs[2].contains(k));
  CHECK_FALSE(zs[1].contains(k));
  CHECK_FALSE(der.contains(k));
  CHECK(g.power(k, 3) == g.identity());
  Subgroup cent = centralizer(g, std::vector<Elt>{k});
  CHECK(cent.size() * 3 == g.size());
  Elt x = g.generator(1);
  CHECK_FALSE(cent.contains(x));
  CHECK(g.power(g.mul(x, k), 3) == g.power(x, 3));
}

TEST_CASE("brute force search: preconditions and caps") {
  PcGroup ab(parse_presentation("p=2; n=3\n"));
  CHECK_THROWS_AS((void)brute_force_search(ab, true), std::invalid_argument);
  PcGroup g = corpus_group(entry("w81"));
  SearchCaps tight;
  tight.full_search_max_order = 16;
  CHECK_THROWS_AS((void)brute_force_search(g, false, tight), CapExceededError);
}

TEST_CASE("brute force on D16 finds the classic non-inner r -> r^5") {
  PcGroup g = corpus_group(entry("d16"));
  auto a = brute_force_search(g, true);
  REQUIRE(a.has_value());
  CHECK(a->order == 2);
  CHECK_FALSE(is_inner(*a).inner);
  CHECK(fixes_pointwise(*a, frattini(g)));
  // recorded fixture: s fixed, r -> r g4 = r^5
  CHECK(a->gen_images[0] == g.generator(0));
  CHECK(a->gen_images[1] == g.mul(g.generator(1), g.generator(3)));
}

TEST_CASE("general search covers maps outside the Frattini-fixed family") {
  // extraspecial 27: every order-3 map in the Frattini-fixed family is inner,
  // but a -> ab extends to a non-inner automorphism of order 3
  PcGroup g = corpus_group(entry("heis27"));
  CHECK_FALSE(brute_force_search(g, true).has_value());
  auto a = brute_force_search(g, false);
  REQUIRE(a.has_value());
  CHECK(a->order == 3);
  CHECK_FALSE(is_inner(*a).inner);
  CHECK(fixes_pointwise(*a, frattini(g)));  // det of the induced map is 1
}

TEST_CASE("witnesses returned by searches replay through full verification") {
  for (const char* name : {"q16", "sd16", "w81"}) {
    PcGroup g = corpus_group(entry(name));
    auto a = brute_force_search(g, true);
    REQUIRE(a.has_value());
    CHECK_NOTHROW(verify_automorphism_all_pairs(*a));
    CHECK(a->order == static_cast<std::int64_t>(g.prime()));
    CHECK_FALSE(is_inner(*a).inner);
  }
}
