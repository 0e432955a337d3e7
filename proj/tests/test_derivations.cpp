#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pgroup/corpus.hpp"
#include "pgroup/derivation.hpp"

using namespace pgroup;

namespace {

const CorpusEntry& entry(const std::string& name) {
  for (const CorpusEntry& e : builtin_corpus())
    if (e.name == name) return e;
  throw std::logic_error("no corpus entry " + name);
}

FpMatrix from_rows(Fp p, const std::vector<FpVec>& rows) {
  FpMatrix m(p, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

std::vector<FpVec> sorted_images(const std::vector<Derivation>& ds) {
  std::vector<FpVec> v;
  for (const Derivation& d : ds) v.push_back(d.images);
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<FpVec> sorted_space(const DerivationSpace& ds) {
  std::vector<FpVec> v = ds.space.elements();
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("module action construction and degeneracies") {
  PcGroup ab(parse_presentation("p=3; n=2\n"));
  CHECK_THROWS_AS((void)build_module_action(ab), std::invalid_argument);

  // class 2 with G' = Z(G): all of A is central, A_1 = A
  PcGroup h = corpus_group(entry("heis27"));
  ModuleAction a = build_module_action(h);
  CHECK(a.cls == 2);
  CHECK(a.dims_a[1] == a.dim_a);
  CHECK(a.a_levels[1].dim() == a.a_levels[a.cls].dim());

  PcGroup d = corpus_group(entry("d16"));
  ModuleAction ad = build_module_action(d);
  CHECK(ad.dim_a == 1);                     // A = {1, r^4}
  CHECK(ad.act[0] == FpMatrix::identity(2, 1));  // central, trivial action
  CHECK(ad.act[1] == FpMatrix::identity(2, 1));
  CHECK(ad.dims_a[1] == 1);
}

TEST_CASE("w81 module action: frozen fixture") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  CHECK(a.n == 2);
  CHECK(a.dim_a == 2);
  CHECK_FALSE(a.standing_hypothesis);
  CHECK(a.dims_a == std::vector<int>{0, 1, 2, 2});
  CHECK(a.dims_astar == std::vector<int>{0, 1, 2, 2});
  // basis picked in enumeration order: g4 (central), then g3
  CHECK(a.acoords.basis() ==
        std::vector<Elt>{g.generator(3), g.generator(2)});
  // conjugation by g1 sends g3 to g3 g4 and fixes g4; g2 acts trivially
  CHECK(a.act[0] == from_rows(3, {{1, 1}, {0, 1}}));
  CHECK(a.act[1] == FpMatrix::identity(3, 2));
}

TEST_CASE("trace maps: trivial action gives tau = 0; tau(a) = [a,_{p-1} x]") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  for (int i = 0; i < a.n; ++i) {
    TraceMap t = trace_map(a, i);  // internal checks: tau^2 = 0 and the formula
    CHECK(t.mat.is_zero());        // frozen: both traces vanish here
    // p = 3: tau_x(a) = [a, x, x] for every a in A, on the whole module
    for (Elt m : a.a_sub.members) {
      FpVec lhs = t.mat.apply(a.acoords.coords(m));
      Elt rhs = g.left_normed_commutator(m, a.transversal[i], 2);
      CHECK(lhs == a.acoords.coords(rhs));
    }
    // tau_x(a^x) = tau_x(a)
    for (Elt m : a.a_sub.members) {
      FpVec c1 = t.mat.apply(a.acoords.coords(g.conjugate(m, a.transversal[i])));
      FpVec c2 = t.mat.apply(a.acoords.coords(m));
      CHECK(c1 == c2);
    }
  }
}

TEST_CASE("trace maps have nonzero instances too") {
  // unitriangular 4x4 over F_2: conjugation genuinely moves A, so some trace
  // survives (p = 2 means tau = 1 + M)
  PcGroup g = corpus_group(entry("ut42"));
  ModuleAction a = build_module_action(g);
  bool some_nonzero = false;
  for (int i = 0; i < a.n; ++i) {
    TraceMap t = trace_map(a, i);
    FpSubspace ker = fp_nullspace(t.mat);
    CHECK(2 * ker.dim() >= static_cast<std::size_t>(a.dim_a));  // d(ker) >= d(A)/2
    some_nonzero = some_nonzero || !t.mat.is_zero();
  }
  CHECK(some_nonzero);
}

TEST_CASE("kernel filtration: frozen w81 table and the two lemma bounds") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  CHECK(kernel_filtration(a, 0) == std::vector<int>{0, 1, 2, 2});
  CHECK(kernel_filtration(a, 1) == std::vector<int>{0, 1, 2, 2});
  // the bounds themselves are hard postconditions inside kernel_filtration;
  // run them over every corpus action
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup h = corpus_group(e);
    if (h.is_abelian()) continue;
    ModuleAction ah = build_module_action(h);
    for (int i = 0; i < ah.n; ++i) CHECK_NOTHROW((void)kernel_filtration(ah, i));
  }
}

TEST_CASE("extension check: zero map, inner derivations, frozen non-example") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  CHECK(extension_check(a, std::vector<FpVec>(a.n, FpVec(a.dim_a, 0))));
  for (Elt z : a.astar.members) CHECK(extension_check(a, inner_derivation(a, z)));
  // b_1 = b_2 = g3 lies in both kernels but breaks bracket symmetry:
  // [b_1, x_2] = 0 while [b_2, x_1] = g4
  CHECK_FALSE(extension_check(a, {FpVec{0, 1}, FpVec{0, 1}}));
}

TEST_CASE("constraint matrix: no pairs means no rows; frozen w81 shape") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);

  // single-generator module action: E has zero rows
  ModuleAction single = a;
  single.n = 1;
  single.act = {a.act[0]};
  single.basis_gen_idx = {a.basis_gen_idx[0]};
  single.transversal = {a.transversal[0]};
  FpMatrix e1 = constraint_matrix(single, single.a_level(3), single.a_level(3));
  CHECK(e1.rows() == 0);
  CHECK(e1.cols() == 2);

  FpMatrix e = constraint_matrix(a, a.a_level(3), a.a_level(3));
  REQUIRE(e.rows() == 2);
  REQUIRE(e.cols() == 4);
  CHECK(e.row(0) == FpVec{0, 0, 0, 2});
  CHECK(e.row(1) == FpVec{0, 0, 0, 0});

  // trivial action: E = 0
  PcGroup d = corpus_group(entry("d16"));
  ModuleAction ad = build_module_action(d);
  FpMatrix ed = constraint_matrix(ad, ad.a_level(3), ad.a_level(3));
  CHECK(ed.is_zero());
  CHECK(ed.rows() == 1);

  // hypothesis violation: [C, x] must land inside D, and [A, x_1] != 0 here
  CHECK_THROWS_AS((void)constraint_matrix(a, a.a_level(3), a.a_level(0)),
                  std::invalid_argument);
}

TEST_CASE("derivation spaces: degenerate constraints") {
  PcGroup d = corpus_group(entry("d16"));
  ModuleAction a = build_module_action(d);
  // trivial action: Der = Hom(Gbar, A) of dimension n * dim A
  DerivationSpace full = derivation_space(a, a.a_level(a.cls));
  CHECK(full.dim() == a.n * a.dim_a);
  DerivationSpace zero = derivation_space(a, FpSubspace::zero(2, a.dim_a));
  CHECK(zero.dim() == 0);
}

TEST_CASE("oracle equivalence: solver equals brute-force enumeration") {
  for (const char* name : {"d16", "q16", "sd16", "w81", "heis27", "mc243", "f243"}) {
    PcGroup g = corpus_group(entry(name));
    ModuleAction a = build_module_action(g);
    if (a.n > 3 || a.a_sub.size() > 27) continue;
    for (int i = 1; i <= a.cls; ++i) {
      DerivationSpace ds = derivation_space(a, a.a_level(i));
      std::vector<Derivation> brute = enumerate_derivations_bruteforce(a, a.a_level(i));
      INFO(name << " level " << i);
      CHECK(sorted_space(ds) == sorted_images(brute));
    }
  }
}

TEST_CASE("w81 frozen dimensions") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  CHECK(derivation_space(a, a.a_level(1)).dim() == 2);
  CHECK(derivation_space(a, a.a_level(2)).dim() == 3);
  CHECK(derivation_space(a, a.a_level(3)).dim() == 3);
  CHECK(inner_space(a, a.astar).dim() == 1);
  CHECK(inner_space_full(a).dim() == 2);
}

TEST_CASE("direct-product splitting when some generator acts trivially") {
  for (const char* name : {"d16", "w81", "d16c2c2", "m625"}) {
    PcGroup g = corpus_group(entry(name));
    ModuleAction a = build_module_action(g);
    std::vector<int> trivial, acting;
    for (int i = 0; i < a.n; ++i) {
      if (a.act[i] == FpMatrix::identity(g.prime(), a.dim_a))
        trivial.push_back(i);
      else
        acting.push_back(i);
    }
    if (trivial.empty()) continue;
    // fixed points of the whole action
    FpSubspace fixed = FpSubspace::full(g.prime(), a.dim_a);
    for (int i = 0; i < a.n; ++i) {
      FpMatrix m = a.act[i];
      for (std::size_t r = 0; r < m.rows(); ++r)
        m.at(r, r) = (m.at(r, r) + g.prime() - 1) % g.prime();
      fixed = fp_intersect(fixed, fp_nullspace(m));
    }
    ModuleAction reduced = a;
    reduced.n = static_cast<int>(acting.size());
    reduced.act.clear();
    reduced.basis_gen_idx.clear();
    reduced.transversal.clear();
    for (int i : acting) {
      reduced.act.push_back(a.act[i]);
      reduced.basis_gen_idx.push_back(a.basis_gen_idx[i]);
      reduced.transversal.push_back(a.transversal[i]);
    }
    int reduced_dim = reduced.n == 0
                          ? 0
                          : derivation_space(reduced, a.a_level(a.cls)).dim();
    int full_dim = derivation_space(a, a.a_level(a.cls)).dim();
    INFO(name);
    CHECK(full_dim ==
          static_cast<int>(trivial.size() * fixed.dim()) + reduced_dim);
  }
}

TEST_CASE("cocycle evaluation: defining values, zero map, order independence") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  DerivationSpace ds = derivation_space(a, a.a_level(a.cls));
  Derivation zero{FpVec(static_cast<std::size_t>(a.n) * a.dim_a, 0)};
  for (Elt e = 0; e < g.size(); ++e)
    CHECK(derivation_value_at(a, zero, e) == g.identity());

  const Fp p = g.prime();
  for (const Derivation& d : ds.basis()) {
    // value on the i-th basis coset is the i-th image block
    for (int i = 0; i < a.n; ++i)
      CHECK(apply_derivation(a, d, a.bar_coords[a.transversal[i]]) == d.image_block(a, i));
    // word-order independence: evaluate with the reversed generator order
    for (Elt e = 0; e < g.size(); ++e) {
      const FpVec& c = a.bar_coords[e];
      FpVec acc(a.dim_a, 0);
      FpMatrix post = FpMatrix::identity(p, a.dim_a);
      for (int i = 0; i < a.n; ++i) {  // reversed: x_n first, then x_{n-1}...
        FpMatrix partial(p, a.dim_a, a.dim_a);
        FpMatrix powm = FpMatrix::identity(p, a.dim_a);
        for (Fp t = 0; t < c[i] % p; ++t) {
          partial = partial.plus(powm);
          powm = powm.times(a.act[i]);
        }
        acc = fp_add(acc, post.apply(partial.apply(d.image_block(a, i))), p);
        post = post.times(a.act[i].pow(c[i] % p));
      }
      CHECK(acc == apply_derivation(a, d, c));
    }
    // delta(x1 x2) = delta(x1)^{x2} * delta(x2), checked in the group
    Elt x1 = a.transversal[0], x2 = a.transversal[1];
    Elt v = derivation_value_at(a, d, g.mul(x1, x2));
    Elt expect = g.mul(g.conjugate(a.acoords.decode(d.image_block(a, 0)), x2),
                       a.acoords.decode(d.image_block(a, 1)));
    CHECK(v == expect);
  }
}

TEST_CASE("inner derivations and inner spaces") {
  PcGroup g = corpus_group(entry("w81"));
  ModuleAction a = build_module_action(g);
  // a in Z(G) gives the zero derivation
  for (Elt z : a.zg.members) CHECK(inner_derivation(a, z).is_zero());
  CHECK_THROWS_AS((void)inner_derivation(a, g.generator(0)), std::invalid_argument);

  // dim Ider(Gbar, A* /\ Z_i) <= d(A_i); Lemma 3.3(2) is asserted inside
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup h = corpus_group(e);
    if (h.is_abelian()) continue;
    ModuleAction ah = build_module_action(h);
    for (int i = 1; i <= ah.cls; ++i) {
      FpSubspace is = inner_space(ah, ah.astar_level(i));
      INFO(e.name << " i=" << i);
      CHECK(static_cast<int>(is.dim()) <= ah.dims_a[i]);
    }
  }
}

TEST_CASE("inner spaces: Ider(A*) /\\ Der(A_{i-1}) = Ider(A* /\\ Z_i)") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    if (g.is_abelian()) continue;
    ModuleAction a = build_module_action(g);
    FpSubspace istar = inner_space(a, a.astar);
    for (int i = 1; i <= a.cls + 1; ++i) {
      FpSubspace lhs =
          fp_intersect(istar, derivation_space(a, a.a_level(i - 1)).space);
      FpSubspace rhs = inner_space(a, a.astar_level(i));
      INFO(e.name << " i=" << i);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("inner_space_full equals Ider(A*) under the centralizer hypothesis") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    if (g.is_abelian()) continue;
    ModuleAction a = build_module_action(g);
    FpSubspace istar = inner_space(a, a.astar);
    FpSubspace full = inner_space_full(a);
    INFO(e.name);
    CHECK(full.contains(istar));
    if (a.standing_hypothesis) CHECK(full == istar);
  }
}

TEST_CASE("find_noninner_derivation on the order-5^4 group") {
  PcGroup g = corpus_group(entry("m625"));
  ModuleAction a = build_module_action(g);
  auto d = find_noninner_derivation(a, 2);
  REQUIRE(d.has_value());
  CHECK_FALSE(d->is_zero());
  CHECK(extension_check(a, *d));
  CHECK_FALSE(inner_space_full(a).contains(d->images));
}

TEST_CASE("derivation space bound holds for the (A_i, A_{i-1}) ladder") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    if (g.is_abelian()) continue;
    ModuleAction a = build_module_action(g);
    for (int i = 1; i <= a.cls; ++i) {
      // bound asserted internally with D = span of [C, x_j]; here pass the
      // explicit coarser D = A_{i-1} as the lemma states it
      DerivationSpace ds = derivation_space(a, a.a_level(i), a.a_level(i - 1));
      long bound = 0;
      for (int j = 0; j < a.n; ++j) {
        TraceMap t = trace_map(a, j);
        bound += static_cast<long>(
            fp_intersect(fp_nullspace(t.mat), a.a_level(i)).dim());
      }
      bound -= static_cast<long>(a.n) * (a.n - 1) / 2 * a.a_level(i - 1).dim();
      INFO(e.name << " i=" << i);
      CHECK(ds.dim() >= bound);
    }
  }
}
