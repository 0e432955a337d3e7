#include "pgroup/structure.hpp"

#include <random>
#include <stdexcept>

namespace pgroup {

int log_base(std::int64_t value, std::int64_t base) {
  int k = 0;
  std::int64_t v = 1;
  while (v < value) {
    v *= base;
    ++k;
  }
  if (v != value) throw std::logic_error("log_base: value is not a power of the base");
  return k;
}

QuotientGroup::QuotientGroup(const PcGroup& parent, Subgroup normal)
    : parent_(&parent), normal_(std::move(normal)) {
  // normality: generator conjugates of every member stay inside
  for (Elt x : normal_.members)
    for (int k = 0; k < parent.generator_count(); ++k)
      if (!normal_.contains(parent.conjugate(x, parent.generator(k))))
        throw std::invalid_argument("quotient: subgroup is not normal");

  coset_of_.assign(static_cast<std::size_t>(parent.size()), -1);
  for (Elt e = 0; e < parent.size(); ++e) {
    if (coset_of_[static_cast<std::size_t>(e)] >= 0) continue;
    Elt id = static_cast<Elt>(reps_.size());
    reps_.push_back(e);  // first element scanned = lexicographically least
    for (Elt n : normal_.members) coset_of_[static_cast<std::size_t>(parent.mul(e, n))] = id;
  }

  // well-definedness spot check across a second representative choice
  if (normal_.members.size() > 1) {
    Elt n0 = normal_.members[1];
    for (Elt c = 0; c < static_cast<Elt>(reps_.size()); ++c)
      for (int k = 0; k < parent.generator_count(); ++k) {
        Elt g = parent.generator(k);
        Elt a = parent.mul(reps_[c], g);
        Elt b = parent.mul(parent.mul(reps_[c], n0), g);
        if (coset_of_[static_cast<std::size_t>(a)] != coset_of_[static_cast<std::size_t>(b)])
          throw std::logic_error("quotient: coset product is not well defined");
      }
  }

  for (int k = 0; k < parent.generator_count(); ++k) {
    Elt c = coset_of_[static_cast<std::size_t>(parent.generator(k))];
    if (c != 0 && std::find(gens_.begin(), gens_.end(), c) == gens_.end()) gens_.push_back(c);
  }
  if (gens_.empty()) gens_.push_back(0);
}

QuotientGroup quotient(const PcGroup& g, Subgroup normal) {
  return QuotientGroup(g, std::move(normal));
}

std::vector<Subgroup> upper_central_series(const PcGroup& g) {
  std::vector<Subgroup> zs{trivial_subgroup(g)};
  for (;;) {
    const Subgroup& zi = zs.back();
    if (zi.size() == g.size()) break;
    QuotientGroup q(g, zi);
    Subgroup zq = center(q);
    std::vector<Elt> members;
    for (Elt x = 0; x < g.size(); ++x)
      if (zq.contains(q.coset_of(x))) members.push_back(x);
    if (static_cast<std::int64_t>(members.size()) == zi.size())
      throw std::logic_error("upper central series stalled");
    zs.push_back(subgroup_from_members(g, std::move(members)));
  }
  return zs;
}

AbelianCoords AbelianCoords::from_subgroup(const PcGroup& g, const Subgroup& a) {
  AbelianCoords c;
  c.g_ = &g;
  c.p_ = g.prime();
  for (Elt x : a.members) {
    if (g.power(x, static_cast<std::int64_t>(g.prime())) != g.identity())
      throw std::invalid_argument("AbelianCoords: subgroup is not elementary abelian");
    for (Elt y : a.generators)
      if (g.mul(x, y) != g.mul(y, x))
        throw std::invalid_argument("AbelianCoords: subgroup is not abelian");
  }
  c.coords_[g.identity()] = FpVec{};
  for (Elt x : a.members) {
    if (c.coords_.count(x)) continue;
    // x is independent of the chosen basis; extend every known coordinate
    std::size_t k = c.basis_.size();
    c.basis_.push_back(x);
    std::unordered_map<Elt, FpVec> grown;
    for (auto& [e, v] : c.coords_) {
      Elt cur = e;
      for (Fp i = 0; i < c.p_; ++i) {
        FpVec w = v;
        w.resize(k + 1, 0);
        w[k] = i;
        grown[cur] = std::move(w);
        cur = g.mul(cur, x);
      }
    }
    c.coords_ = std::move(grown);
  }
  // pad all coordinate vectors to the final dimension
  for (auto& [e, v] : c.coords_) v.resize(c.basis_.size(), 0);
  if (c.coords_.size() != a.members.size())
    throw std::logic_error("AbelianCoords: span does not match subgroup");
  return c;
}

FpVec AbelianCoords::coords(Elt e) const {
  auto it = coords_.find(e);
  if (it == coords_.end())
    throw std::domain_error("AbelianCoords: element outside the coordinatized subgroup");
  return it->second;
}

Elt AbelianCoords::decode(const FpVec& v) const {
  if (v.size() != basis_.size()) throw std::invalid_argument("AbelianCoords::decode: bad length");
  Elt r = g_->identity();
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v[i] % p_ != 0) r = g_->mul(r, g_->power(basis_[i], v[i] % p_));
  return r;
}

FpSubspace subspace_of(const AbelianCoords& a, std::span<const Elt> elements) {
  std::vector<FpVec> rows;
  rows.reserve(elements.size());
  for (Elt e : elements) rows.push_back(a.coords(e));
  return FpSubspace::span(a.modulus(), a.dim(), rows);
}

std::vector<Elt> intersect_members(const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> out;
  for (Elt e : a.members)
    if (b.contains(e)) out.push_back(e);
  return out;
}

IdentityReport check_class3_identities(const PcGroup& g, std::int64_t max_exhaustive_order,
                                       std::int64_t random_triples, std::uint64_t seed) {
  IdentityReport rep;
  if (g.prime() != 3 || nilpotency_class(g) > 3) return rep;
  rep.applicable = true;

  auto binom2 = [](std::int64_t i) { return i * (i - 1) / 2; };
  bool ok1 = true, ok2 = true, ok3 = true, ok4 = true, ok5 = true;

  auto check_pair = [&](Elt x, Elt y) {
    ++rep.pairs_checked;
    Elt xy = g.commutator(x, y);
    Elt xyy = g.left_normed_commutator(x, y, 2);
    Elt xyx = g.commutator(g.commutator(x, y), x);
    for (std::int64_t i = 0; i <= 9 && (ok1 || ok2); ++i) {
      if (ok1 &&
          g.commutator(x, g.power(y, i)) !=
              g.mul(g.power(xy, i), g.power(xyy, binom2(i))))
        ok1 = false;
      if (ok2 &&
          g.commutator(g.power(x, i), y) !=
              g.mul(g.power(xy, i), g.power(xyx, binom2(i))))
        ok2 = false;
    }
    if (ok3) {
      bool lhs = g.commutator(g.power(x, 3), y) == g.identity();
      bool rhs = g.power(xy, 3) == g.identity();
      if (lhs != rhs) ok3 = false;
    }
    if (ok4) {
      Elt yx = g.commutator(y, x);
      Elt want = g.mul(g.mul(g.power(x, 3), g.power(y, 3)),
                       g.mul(g.power(yx, 3),
                             g.mul(g.left_normed_commutator(y, x, 2),
                                   g.power(g.commutator(yx, y), 2))));
      if (g.power(g.mul(x, y), 3) != want) ok4 = false;
    }
  };
  auto check_triple = [&](Elt x, Elt y, Elt z) {
    ++rep.triples_checked;
    Elt t = g.mul(g.commutator(g.commutator(x, y), z),
                  g.mul(g.commutator(g.commutator(y, z), x),
                        g.commutator(g.commutator(z, x), y)));
    if (t != g.identity()) ok5 = false;
  };

  if (g.size() <= max_exhaustive_order) {
    for (Elt x = 0; x < g.size(); ++x)
      for (Elt y = 0; y < g.size(); ++y) check_pair(x, y);
    for (Elt x = 0; x < g.size(); ++x)
      for (Elt y = 0; y < g.size(); ++y)
        for (Elt z = 0; z < g.size(); ++z) check_triple(x, y, z);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, g.size() - 1);
    for (std::int64_t t = 0; t < random_triples; ++t) {
      Elt x = static_cast<Elt>(dist(rng));
      Elt y = static_cast<Elt>(dist(rng));
      Elt z = static_cast<Elt>(dist(rng));
      check_pair(x, y);
      check_triple(x, y, z);
    }
  }

  Subgroup phi = frattini(g);
  Subgroup cphi = centralizer(g, phi.members);
  Subgroup zphi = subgroup_from_members(g, intersect_members(cphi, phi));
  Subgroup om_star = omega1_star(g);
  bool ok6 = true;
  for (Elt e : zphi.members)
    if (!om_star.contains(e)) ok6 = false;

  rep.results = {{"[x,y^i] = [x,y]^i [x,y,y]^C(i,2)", ok1},
                 {"[x^i,y] = [x,y]^i [x,y,x]^C(i,2)", ok2},
                 {"[x^3,y] = 1 iff [x,y]^3 = 1", ok3},
                 {"(xy)^3 = x^3 y^3 [y,x]^3 [y,x,x] [y,x,y]^2", ok4},
                 {"[x,y,z][y,z,x][z,x,y] = 1", ok5},
                 {"Z(Phi(G)) <= Omega_1*(G)", ok6}};
  return rep;
}

}  // namespace pgroup
