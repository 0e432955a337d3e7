#pragma once

// Subgroup-theoretic invariants computed by exhaustive scan: centers,
// centralizers, derived/Frattini subgroups, central series, omega subgroups,
// generator counts, ranks via full subgroup enumeration, and quotients.
// Subgroups are explicit element sets; no induced presentations.

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "pgroup/group.hpp"

namespace pgroup {

using Elt = std::int32_t;

template <class G>
concept GroupLike = requires(const G& g, Elt a, Elt b, int i) {
  { g.size() } -> std::convertible_to<std::int64_t>;
  { g.prime() } -> std::convertible_to<Fp>;
  { g.identity() } -> std::convertible_to<Elt>;
  { g.mul(a, b) } -> std::convertible_to<Elt>;
  { g.generator_count() } -> std::convertible_to<int>;
  { g.generator(i) } -> std::convertible_to<Elt>;
};

struct Subgroup {
  std::vector<Elt> members;     // sorted ascending
  std::vector<Elt> generators;  // greedy minimal-by-construction
  std::vector<char> in;         // membership bitmap over the ambient group

  std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
  bool contains(Elt e) const { return in[static_cast<std::size_t>(e)] != 0; }
  bool operator==(const Subgroup& rhs) const { return members == rhs.members; }
};

template <GroupLike G>
Elt grp_pow(const G& g, Elt a, std::int64_t m);
template <GroupLike G>
std::int64_t grp_order(const G& g, Elt a);
template <GroupLike G>
Elt grp_inverse(const G& g, Elt a);
template <GroupLike G>
Elt grp_comm(const G& g, Elt a, Elt b);
template <GroupLike G>
Elt grp_conj(const G& g, Elt a, Elt x);

int log_base(std::int64_t value, std::int64_t base);

template <GroupLike G>
Subgroup trivial_subgroup(const G& g);
template <GroupLike G>
Subgroup full_subgroup(const G& g);
template <GroupLike G>
Subgroup closure(const G& g, std::span<const Elt> seeds);
template <GroupLike G>
Subgroup subgroup_from_members(const G& g, std::vector<Elt> members);

template <GroupLike G>
Subgroup center(const G& g);
template <GroupLike G>
Subgroup centralizer(const G& g, std::span<const Elt> set);

template <GroupLike G>
Subgroup derived_subgroup(const G& g);
template <GroupLike G>
Subgroup gamma3(const G& g);
template <GroupLike G>
Subgroup frattini(const G& g);

template <GroupLike G>
Subgroup omega1(const G& g, const Subgroup& h);
template <GroupLike G>
Subgroup omega1_star(const G& g);

// d(G) = dim of G/Frattini(G) over F_p
template <GroupLike G>
int min_generators(const G& g);
// d of an abelian subgroup: log |W| - log |W^p|
template <GroupLike G>
int min_generators_abelian(const G& g, const Subgroup& w);

// direct chain 1 = Z_0 <= Z_1 <= ... <= G; works for any group-like object
template <GroupLike G>
std::vector<Subgroup> upper_central_series_direct(const G& g);
template <GroupLike G>
int nilpotency_class(const G& g);

// rk(G): max d(H) over all subgroups, enumerated by cyclic extension.
// Throws CapExceededError above the order cap.
template <GroupLike G>
int rank(const G& g, std::int64_t order_cap);

class QuotientGroup {
 public:
  QuotientGroup(const PcGroup& parent, Subgroup normal);

  std::int64_t size() const { return static_cast<std::int64_t>(reps_.size()); }
  Fp prime() const { return parent_->prime(); }
  Elt identity() const { return 0; }
  Elt mul(Elt a, Elt b) const {
    return coset_of_[static_cast<std::size_t>(parent_->mul(reps_[a], reps_[b]))];
  }
  int generator_count() const { return static_cast<int>(gens_.size()); }
  Elt generator(int i) const { return gens_[i]; }

  Elt coset_of(Elt parent_elt) const { return coset_of_[static_cast<std::size_t>(parent_elt)]; }
  Elt rep(Elt coset) const { return reps_[coset]; }  // lexicographically first
  const PcGroup& parent() const { return *parent_; }
  const Subgroup& normal_subgroup() const { return normal_; }

 private:
  const PcGroup* parent_;
  Subgroup normal_;
  std::vector<Elt> coset_of_;
  std::vector<Elt> reps_;
  std::vector<Elt> gens_;
};

QuotientGroup quotient(const PcGroup& g, Subgroup normal);

// Z_{i+1}/Z_i = center of G/Z_i, computed through QuotientGroup.
std::vector<Subgroup> upper_central_series(const PcGroup& g);

// F_p coordinates on an elementary abelian subgroup of a PcGroup.
class AbelianCoords {
 public:
  AbelianCoords() = default;
  static AbelianCoords from_subgroup(const PcGroup& g, const Subgroup& a);

  std::size_t dim() const { return basis_.size(); }
  Fp modulus() const { return p_; }
  const std::vector<Elt>& basis() const { return basis_; }
  bool contains_elt(Elt e) const { return coords_.count(e) != 0; }
  FpVec coords(Elt e) const;  // throws std::domain_error outside the subgroup
  Elt decode(const FpVec& v) const;

 private:
  const PcGroup* g_ = nullptr;
  Fp p_ = 2;
  std::vector<Elt> basis_;
  std::unordered_map<Elt, FpVec> coords_;
};

// Row space spanned by the coordinates of a set of elements (all of which
// must lie inside the coordinatized subgroup).
FpSubspace subspace_of(const AbelianCoords& a, std::span<const Elt> elements);

std::vector<Elt> intersect_members(const Subgroup& a, const Subgroup& b);

// Commutator identity battery for 3-groups of class <= 3 (binomial expansion
// of [x,y^i] and [x^i,y], the cube laws, the Jacobi-style triple product, and
// Z(Phi(G)) <= Omega_1*(G)). Pairs/triples are exhaustive up to
// max_exhaustive_order, sampled above it.
struct IdentityReport {
  bool applicable = false;
  std::vector<std::pair<std::string, bool>> results;
  std::int64_t pairs_checked = 0;
  std::int64_t triples_checked = 0;
  bool all_pass() const {
    for (auto& [name, ok] : results)
      if (!ok) return false;
    return true;
  }
};

IdentityReport check_class3_identities(const PcGroup& g, std::int64_t max_exhaustive_order = 81,
                                       std::int64_t random_triples = 10000,
                                       std::uint64_t seed = 12345);

// ---- template implementations ----

template <GroupLike G>
Elt grp_pow(const G& g, Elt a, std::int64_t m) {
  if (m < 0) {
    std::int64_t ord = grp_order(g, a);
    m = ord - ((-m) % ord);
  }
  Elt result = g.identity();
  Elt base = a;
  while (m > 0) {
    if (m & 1) result = g.mul(result, base);
    base = g.mul(base, base);
    m >>= 1;
  }
  return result;
}

template <GroupLike G>
std::int64_t grp_order(const G& g, Elt a) {
  std::int64_t ord = 1;
  Elt t = a;
  while (t != g.identity()) {
    t = grp_pow(g, t, static_cast<std::int64_t>(g.prime()));
    ord *= g.prime();
  }
  return ord;
}

template <GroupLike G>
Elt grp_inverse(const G& g, Elt a) {
  return grp_pow(g, a, grp_order(g, a) - 1);
}

template <GroupLike G>
Elt grp_comm(const G& g, Elt a, Elt b) {
  return g.mul(g.mul(grp_inverse(g, a), grp_inverse(g, b)), g.mul(a, b));
}

template <GroupLike G>
Elt grp_conj(const G& g, Elt a, Elt x) {
  return g.mul(g.mul(grp_inverse(g, x), a), x);
}

namespace detail {

template <GroupLike G>
std::vector<Elt> closure_members(const G& g, std::span<const Elt> gens) {
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
  std::vector<Elt> out{g.identity()};
  in[static_cast<std::size_t>(g.identity())] = 1;
  for (std::size_t head = 0; head < out.size(); ++head)
    for (Elt s : gens) {
      Elt y = g.mul(out[head], s);
      if (!in[static_cast<std::size_t>(y)]) {
        in[static_cast<std::size_t>(y)] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

template <GroupLike G>
Subgroup pack_subgroup(const G& g, std::vector<Elt> members, std::vector<Elt> gens) {
  Subgroup s;
  s.members = std::move(members);
  s.generators = std::move(gens);
  s.in.assign(static_cast<std::size_t>(g.size()), 0);
  for (Elt e : s.members) s.in[static_cast<std::size_t>(e)] = 1;
  return s;
}

}  // namespace detail

template <GroupLike G>
Subgroup trivial_subgroup(const G& g) {
  return detail::pack_subgroup(g, {g.identity()}, {});
}

template <GroupLike G>
Subgroup full_subgroup(const G& g) {
  std::vector<Elt> all(static_cast<std::size_t>(g.size()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elt>(i);
  std::vector<Elt> gens;
  for (int i = 0; i < g.generator_count(); ++i) gens.push_back(g.generator(i));
  return detail::pack_subgroup(g, std::move(all), std::move(gens));
}

template <GroupLike G>
Subgroup closure(const G& g, std::span<const Elt> seeds) {
  std::vector<Elt> gens;
  std::vector<Elt> members{g.identity()};
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
  in[static_cast<std::size_t>(g.identity())] = 1;
  for (Elt s : seeds) {
    if (in[static_cast<std::size_t>(s)]) continue;
    gens.push_back(s);
    members = detail::closure_members(g, gens);
    for (Elt e : members) in[static_cast<std::size_t>(e)] = 1;
  }
  return detail::pack_subgroup(g, std::move(members), std::move(gens));
}

template <GroupLike G>
Subgroup subgroup_from_members(const G& g, std::vector<Elt> members) {
  std::sort(members.begin(), members.end());
  Subgroup s = closure(g, members);
  if (s.members != members)
    throw std::invalid_argument("subgroup_from_members: set is not closed");
  return s;
}

template <GroupLike G>
Subgroup center(const G& g) {
  std::vector<Elt> members;
  for (Elt x = 0; x < g.size(); ++x) {
    bool central = true;
    for (int i = 0; i < g.generator_count() && central; ++i) {
      Elt gen = g.generator(i);
      central = g.mul(x, gen) == g.mul(gen, x);
    }
    if (central) members.push_back(x);
  }
  return closure(g, members);
}

template <GroupLike G>
Subgroup centralizer(const G& g, std::span<const Elt> set) {
  std::vector<Elt> members;
  for (Elt x = 0; x < g.size(); ++x) {
    bool commutes = true;
    for (Elt s : set) {
      if (g.mul(x, s) != g.mul(s, x)) {
        commutes = false;
        break;
      }
    }
    if (commutes) members.push_back(x);
  }
  return closure(g, members);
}

template <GroupLike G>
Subgroup derived_subgroup(const G& g) {
  std::vector<Elt> seeds;
  for (Elt x = 0; x < g.size(); ++x)
    for (int i = 0; i < g.generator_count(); ++i)
      seeds.push_back(grp_comm(g, x, g.generator(i)));
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return closure(g, seeds);
}

template <GroupLike G>
Subgroup gamma3(const G& g) {
  Subgroup der = derived_subgroup(g);
  std::vector<Elt> seeds;
  for (Elt c : der.members)
    for (int i = 0; i < g.generator_count(); ++i)
      seeds.push_back(grp_comm(g, c, g.generator(i)));
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return closure(g, seeds);
}

template <GroupLike G>
Subgroup frattini(const G& g) {
  Subgroup der = derived_subgroup(g);
  std::vector<Elt> seeds = der.generators;
  for (Elt x = 0; x < g.size(); ++x)
    seeds.push_back(grp_pow(g, x, static_cast<std::int64_t>(g.prime())));
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return closure(g, seeds);
}

template <GroupLike G>
Subgroup omega1(const G& g, const Subgroup& h) {
  std::vector<Elt> seeds;
  for (Elt x : h.members)
    if (grp_pow(g, x, static_cast<std::int64_t>(g.prime())) == g.identity()) seeds.push_back(x);
  return closure(g, seeds);
}

template <GroupLike G>
Subgroup omega1_star(const G& g) {
  Subgroup z = center(g);
  std::vector<Elt> seeds;
  for (Elt x = 0; x < g.size(); ++x)
    if (z.contains(grp_pow(g, x, static_cast<std::int64_t>(g.prime())))) seeds.push_back(x);
  return closure(g, seeds);
}

template <GroupLike G>
int min_generators(const G& g) {
  if (g.size() == 1) return 0;
  Subgroup phi = frattini(g);
  return log_base(g.size(), g.prime()) - log_base(phi.size(), g.prime());
}

template <GroupLike G>
int min_generators_abelian(const G& g, const Subgroup& w) {
  if (w.size() == 1) return 0;
  std::vector<Elt> pths;
  for (Elt x : w.members) pths.push_back(grp_pow(g, x, static_cast<std::int64_t>(g.prime())));
  std::sort(pths.begin(), pths.end());
  pths.erase(std::unique(pths.begin(), pths.end()), pths.end());
  Subgroup wp = closure(g, pths);
  return log_base(w.size(), g.prime()) - log_base(wp.size(), g.prime());
}

template <GroupLike G>
std::vector<Subgroup> upper_central_series_direct(const G& g) {
  std::vector<Subgroup> zs{trivial_subgroup(g)};
  for (;;) {
    const Subgroup& zi = zs.back();
    if (zi.size() == g.size()) break;
    std::vector<Elt> members;
    for (Elt x = 0; x < g.size(); ++x) {
      bool ok = true;
      for (int i = 0; i < g.generator_count() && ok; ++i)
        ok = zi.contains(grp_comm(g, x, g.generator(i)));
      if (ok) members.push_back(x);
    }
    if (static_cast<std::int64_t>(members.size()) == zi.size())
      throw std::logic_error("upper central series stalled (group not nilpotent?)");
    zs.push_back(closure(g, members));
  }
  return zs;
}

template <GroupLike G>
int nilpotency_class(const G& g) {
  return static_cast<int>(upper_central_series_direct(g).size()) - 1;
}

namespace detail {

template <GroupLike G>
Subgroup normalizer(const G& g, const Subgroup& h) {
  std::vector<Elt> members;
  for (Elt x = 0; x < g.size(); ++x) {
    bool ok = true;
    for (Elt s : h.generators) {
      if (!h.contains(grp_conj(g, s, x))) {
        ok = false;
        break;
      }
    }
    if (ok) members.push_back(x);
  }
  return detail::pack_subgroup(g, std::move(members), {});
}

// d(H) without an induced presentation: Frattini of H from its generators.
// H' is the closure of generator commutators, grown until stable under
// conjugation by the generators of H; Phi(H) = H' * (generator p-th powers).
template <GroupLike G>
int subgroup_min_generators(const G& g, const Subgroup& h) {
  if (h.size() == 1) return 0;
  std::vector<Elt> seeds;
  for (std::size_t i = 0; i < h.generators.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      seeds.push_back(grp_comm(g, h.generators[i], h.generators[j]));
  Subgroup der = closure(g, seeds);
  for (;;) {
    std::vector<Elt> extra;
    for (Elt m : der.generators)
      for (Elt s : h.generators) {
        Elt c = grp_conj(g, m, s);
        if (!der.contains(c)) extra.push_back(c);
      }
    if (extra.empty()) break;
    std::vector<Elt> all = der.generators;
    all.insert(all.end(), extra.begin(), extra.end());
    der = closure(g, all);
  }
  std::vector<Elt> phi_seeds = der.generators;
  for (Elt s : h.generators)
    phi_seeds.push_back(grp_pow(g, s, static_cast<std::int64_t>(g.prime())));
  Subgroup phi = closure(g, phi_seeds);
  return log_base(h.size(), g.prime()) - log_base(phi.size(), g.prime());
}

}  // namespace detail

template <GroupLike G>
int rank(const G& g, std::int64_t order_cap) {
  if (g.size() > order_cap)
    throw CapExceededError("rank: group order " + std::to_string(g.size()) +
                           " exceeds the enumeration cap " + std::to_string(order_cap));
  const Fp p = g.prime();
  std::vector<Subgroup> level{trivial_subgroup(g)};
  int best = 0;
  std::size_t total = 1;
  while (!level.empty()) {
    std::vector<Subgroup> next;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen;
    for (const Subgroup& h : level) {
      Subgroup norm = detail::normalizer(g, h);
      for (Elt x : norm.members) {
        if (h.contains(x)) continue;
        if (!h.contains(grp_pow(g, x, static_cast<std::int64_t>(p)))) continue;
        std::vector<Elt> members;
        members.reserve(h.members.size() * p);
        Elt xp = g.identity();
        for (Fp e = 0; e < p; ++e) {
          for (Elt m : h.members) members.push_back(g.mul(m, xp));
          xp = g.mul(xp, x);
        }
        std::sort(members.begin(), members.end());
        std::uint64_t key = 1469598103934665603ull;
        for (Elt m : members) {
          key ^= static_cast<std::uint64_t>(m) + 1;
          key *= 1099511628211ull;
        }
        auto& bucket = seen[key];
        bool dup = false;
        for (std::size_t idx : bucket)
          if (next[idx].members == members) {
            dup = true;
            break;
          }
        if (dup) continue;
        bucket.push_back(next.size());
        std::vector<Elt> gens = h.generators;
        gens.push_back(x);
        next.push_back(detail::pack_subgroup(g, std::move(members), std::move(gens)));
        if (++total > 500'000) throw CapExceededError("rank: subgroup count exceeds cap");
      }
    }
    for (const Subgroup& h : next)
      best = std::max(best, detail::subgroup_min_generators(g, h));
    level = std::move(next);
  }
  return best;
}

}  // namespace pgroup
