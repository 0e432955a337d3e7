#include "pgroup/automorphism.hpp"

#include <numeric>
#include <stdexcept>

namespace pgroup {

namespace {

std::int64_t permutation_order(const std::vector<Elt>& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::int64_t ord = 1;
  for (std::size_t s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    std::int64_t len = 0;
    std::size_t cur = s;
    while (!seen[cur]) {
      seen[cur] = 1;
      cur = static_cast<std::size_t>(perm[cur]);
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Elt eval_word(const PcGroup& g, const Word& w, const std::vector<Elt>& images) {
  Elt r = g.identity();
  for (const Letter& l : w) {
    Elt f = images[static_cast<std::size_t>(l.gen)];
    for (int t = 0; t < l.exp; ++t) r = g.mul(r, f);
  }
  return r;
}

bool relations_hold(const PcGroup& g, const std::vector<Elt>& images) {
  const PcPresentation& pres = g.presentation();
  const int n = g.ngens();
  for (int i = 0; i < n; ++i) {
    Elt lhs = g.power(images[i], static_cast<std::int64_t>(g.prime()));
    if (lhs != eval_word(g, pres.power_word(i), images)) return false;
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      Elt lhs = g.commutator(images[j], images[i]);
      if (lhs != eval_word(g, pres.comm_word(j, i), images)) return false;
    }
  return true;
}

bool is_permutation(const std::vector<Elt>& map) {
  std::vector<char> seen(map.size(), 0);
  for (Elt v : map) {
    if (v < 0 || static_cast<std::size_t>(v) >= map.size() || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

// spanning tree over right multiplication by a chosen set of generators
struct SpanningTree {
  std::vector<Elt> order;                   // breadth-first discovery order
  std::vector<std::pair<Elt, int>> step;    // step[e] = (parent, index into gens)
};

SpanningTree build_tree(const PcGroup& g, const std::vector<Elt>& gens) {
  SpanningTree t;
  t.step.assign(static_cast<std::size_t>(g.size()), {-1, -1});
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  seen[0] = 1;
  t.order.push_back(g.identity());
  for (std::size_t head = 0; head < t.order.size(); ++head) {
    Elt e = t.order[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elt f = g.mul(e, gens[k]);
      if (!seen[static_cast<std::size_t>(f)]) {
        seen[static_cast<std::size_t>(f)] = 1;
        t.step[static_cast<std::size_t>(f)] = {e, static_cast<int>(k)};
        t.order.push_back(f);
      }
    }
  }
  if (t.order.size() != static_cast<std::size_t>(g.size()))
    throw std::logic_error("spanning tree: generators do not generate");
  return t;
}

std::vector<Elt> extend_over_tree(const PcGroup& g, const SpanningTree& t,
                                  const std::vector<Elt>& gen_images) {
  std::vector<Elt> map(static_cast<std::size_t>(g.size()), 0);
  for (Elt e : t.order) {
    if (e == g.identity()) continue;
    auto [parent, k] = t.step[static_cast<std::size_t>(e)];
    map[static_cast<std::size_t>(e)] =
        g.mul(map[static_cast<std::size_t>(parent)], gen_images[static_cast<std::size_t>(k)]);
  }
  return map;
}

}  // namespace

std::optional<Automorphism> make_automorphism(const PcGroup& g,
                                              const std::vector<Elt>& gen_images) {
  if (static_cast<int>(gen_images.size()) != g.ngens())
    throw std::invalid_argument("make_automorphism: one image per pc generator required");
  if (!relations_hold(g, gen_images)) return std::nullopt;
  // relations hold, so the extension along any spanning word is the
  // homomorphism determined by the images
  std::vector<Elt> gens(static_cast<std::size_t>(g.ngens()));
  for (int i = 0; i < g.ngens(); ++i) gens[static_cast<std::size_t>(i)] = g.generator(i);
  SpanningTree tree = build_tree(g, gens);
  std::vector<Elt> map = extend_over_tree(g, tree, gen_images);
  if (!is_permutation(map)) return std::nullopt;
  Automorphism a;
  a.group = &g;
  a.gen_images = gen_images;
  a.order = permutation_order(map);
  a.full_map = std::move(map);
  return a;
}

void verify_automorphism_all_pairs(const Automorphism& alpha) {
  const PcGroup& g = *alpha.group;
  if (!is_permutation(alpha.full_map))
    throw std::logic_error("automorphism verification: map is not a bijection");
  for (Elt a = 0; a < g.size(); ++a)
    for (Elt b = 0; b < g.size(); ++b)
      if (alpha.apply(g.mul(a, b)) != g.mul(alpha.apply(a), alpha.apply(b)))
        throw std::logic_error("automorphism verification: homomorphism fails on a pair");
}

bool fixes_pointwise(const Automorphism& alpha, const Subgroup& sub) {
  for (Elt e : sub.members)
    if (alpha.apply(e) != e) return false;
  return true;
}

InnerWitness is_inner(const Automorphism& alpha) {
  const PcGroup& g = *alpha.group;
  for (Elt cand = 0; cand < g.size(); ++cand) {
    bool match = true;
    for (int k = 0; k < g.ngens() && match; ++k)
      match = alpha.gen_images[static_cast<std::size_t>(k)] == g.conjugate(g.generator(k), cand);
    if (match) return {true, cand};
  }
  return {false, 0};
}

bool is_inner_via_derivation(const ModuleAction& a, const Derivation& d) {
  return inner_space_full(a).contains(d.images);
}

Automorphism lift_derivation(const ModuleAction& a, const Derivation& d) {
  if (!extension_check(a, d))
    throw std::invalid_argument("lift_derivation: images fail the extension criterion");
  const PcGroup& g = *a.group;
  Automorphism out;
  out.group = &g;
  out.full_map.resize(static_cast<std::size_t>(g.size()));
  for (Elt e = 0; e < g.size(); ++e)
    out.full_map[static_cast<std::size_t>(e)] = g.mul(e, derivation_value_at(a, d, e));
  for (int k = 0; k < g.ngens(); ++k)
    out.gen_images.push_back(out.full_map[static_cast<std::size_t>(g.generator(k))]);
  verify_automorphism_all_pairs(out);
  out.order = permutation_order(out.full_map);
  if (!fixes_pointwise(out, a.phi))
    throw std::logic_error("lift_derivation: Phi(G) is not fixed pointwise");
  std::int64_t expected = d.is_zero() ? 1 : static_cast<std::int64_t>(a.prime());
  if (out.order != expected)
    throw std::logic_error("lift_derivation: lifted automorphism has unexpected order");
  return out;
}

std::optional<Automorphism> case_b_construct(const PcGroup& g) {
  if (g.prime() != 3) throw std::invalid_argument("case_b_construct: requires p = 3");
  std::vector<Subgroup> zs = upper_central_series(g);
  int cls = static_cast<int>(zs.size()) - 1;
  if (cls != 3) throw std::invalid_argument("case_b_construct: requires class 3");
  if (min_generators(g) != 2) throw std::invalid_argument("case_b_construct: requires d(G) = 2");
  Subgroup z = zs[1];
  if (min_generators_abelian(g, z) != 1)
    throw std::invalid_argument("case_b_construct: requires cyclic center");

  Subgroup der = derived_subgroup(g);
  Subgroup phi = frattini(g);
  const Subgroup& z2 = zs[2];

  for (Elt k : z2.members) {
    if (z.contains(k) || der.contains(k)) continue;
    if (g.power(k, 3) != g.identity()) continue;
    Subgroup cent = centralizer(g, std::vector<Elt>{k});
    if (cent.size() * 3 != g.size()) continue;  // C_G(k) must be maximal
    // first element outside the centralizer, in enumeration order
    Elt x = -1;
    for (Elt e = 0; e < g.size(); ++e)
      if (!cent.contains(e)) {
        x = e;
        break;
      }
    Elt xk = g.mul(x, k);
    if (g.power(xk, 3) != g.power(x, 3)) continue;  // (xk)^3 = x^3 must hold
    Elt xinv = g.inverse(x);
    std::vector<Elt> map(static_cast<std::size_t>(g.size()));
    bool welldef = true;
    for (Elt e = 0; e < g.size() && welldef; ++e) {
      Elt u = e;
      int i = 0;
      while (i < 3 && !cent.contains(u)) {
        u = g.mul(u, xinv);
        ++i;
      }
      if (i == 3) {
        welldef = false;
        break;
      }
      map[static_cast<std::size_t>(e)] = g.mul(u, g.power(xk, i));
    }
    if (!welldef) continue;
    Automorphism beta;
    beta.group = &g;
    beta.full_map = std::move(map);
    for (int t = 0; t < g.ngens(); ++t)
      beta.gen_images.push_back(beta.full_map[static_cast<std::size_t>(g.generator(t))]);
    if (!is_permutation(beta.full_map)) continue;
    bool hom = true;
    for (Elt a = 0; a < g.size() && hom; ++a)
      for (Elt b = 0; b < g.size() && hom; ++b)
        hom = beta.apply(g.mul(a, b)) == g.mul(beta.apply(a), beta.apply(b));
    if (!hom) continue;
    beta.order = permutation_order(beta.full_map);
    if (beta.order != 3) continue;
    if (!fixes_pointwise(beta, phi)) continue;
    if (is_inner(beta).inner) continue;
    verify_automorphism_all_pairs(beta);
    return beta;
  }
  return std::nullopt;
}

std::optional<Automorphism> brute_force_search(const PcGroup& g, bool require_frattini_fixed,
                                               const SearchCaps& caps) {
  if (g.is_abelian())
    throw std::invalid_argument("brute_force_search: group must be non-abelian");
  const Fp p = g.prime();

  Subgroup phi = frattini(g);
  // basis generators modulo Phi, greedy in presentation order
  std::vector<int> basis_idx;
  {
    std::vector<Elt> span_gens = phi.generators;
    Subgroup span = phi;
    for (int k = 0; k < g.ngens(); ++k) {
      if (span.contains(g.generator(k))) continue;
      basis_idx.push_back(k);
      span_gens.push_back(g.generator(k));
      span = closure(g, span_gens);
    }
  }
  const int d = static_cast<int>(basis_idx.size());
  std::vector<Elt> basis_gens;
  for (int k : basis_idx) basis_gens.push_back(g.generator(k));
  SpanningTree tree = build_tree(g, basis_gens);

  auto try_candidate = [&](const std::vector<Elt>& images) -> std::optional<Automorphism> {
    std::vector<Elt> map = extend_over_tree(g, tree, images);
    std::vector<Elt> gen_images(static_cast<std::size_t>(g.ngens()));
    for (int k = 0; k < g.ngens(); ++k)
      gen_images[static_cast<std::size_t>(k)] = map[static_cast<std::size_t>(g.generator(k))];
    if (!relations_hold(g, gen_images)) return std::nullopt;
    if (!is_permutation(map)) return std::nullopt;
    Automorphism a;
    a.group = &g;
    a.gen_images = std::move(gen_images);
    a.order = permutation_order(map);
    a.full_map = std::move(map);
    if (a.order != static_cast<std::int64_t>(p)) return std::nullopt;
    if (require_frattini_fixed && !fixes_pointwise(a, phi)) return std::nullopt;
    if (is_inner(a).inner) return std::nullopt;
    verify_automorphism_all_pairs(a);
    return a;
  };

  if (require_frattini_fixed) {
    Subgroup cg_phi = centralizer(g, phi.members);
    Subgroup z_phi = subgroup_from_members(g, intersect_members(cg_phi, phi));
    Subgroup a_sub = omega1(g, z_phi);
    double total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<double>(a_sub.members.size());
    if (total > caps.max_candidates)
      throw CapExceededError("brute_force_search: Frattini-fixed family exceeds the cap");
    std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
    for (;;) {
      std::vector<Elt> images(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i)
        images[static_cast<std::size_t>(i)] =
            g.mul(basis_gens[static_cast<std::size_t>(i)], a_sub.members[pick[static_cast<std::size_t>(i)]]);
      if (auto a = try_candidate(images)) return a;
      int i = d - 1;
      for (; i >= 0; --i) {
        if (++pick[static_cast<std::size_t>(i)] < a_sub.members.size()) break;
        pick[static_cast<std::size_t>(i)] = 0;
      }
      if (i < 0) break;
    }
    return std::nullopt;
  }

  if (g.size() > caps.full_search_max_order || d > caps.full_search_max_d)
    throw CapExceededError("brute_force_search: group exceeds the full-search caps");
  // candidate images bucketed by element order
  std::vector<std::vector<Elt>> buckets(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::int64_t want = g.element_order(basis_gens[static_cast<std::size_t>(i)]);
    for (Elt e = 0; e < g.size(); ++e)
      if (g.element_order(e) == want) buckets[static_cast<std::size_t>(i)].push_back(e);
  }
  double total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<double>(buckets[static_cast<std::size_t>(i)].size());
  if (total > caps.max_candidates)
    throw CapExceededError("brute_force_search: candidate family exceeds the cap");
  std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
  for (;;) {
    std::vector<Elt> images(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
      images[static_cast<std::size_t>(i)] = buckets[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]];
    if (auto a = try_candidate(images)) return a;
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++pick[static_cast<std::size_t>(i)] < buckets[static_cast<std::size_t>(i)].size()) break;
      pick[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return std::nullopt;
}

}  // namespace pgroup
