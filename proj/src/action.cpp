#include "pgroup/action.hpp"

#include <stdexcept>

namespace pgroup {

const FpSubspace& ModuleAction::a_level(int i) const {
  static const FpSubspace empty;
  if (i <= 0) {
    if (a_levels.empty()) return empty;
    return a_levels[0];
  }
  if (i >= cls) return a_levels[cls];
  return a_levels[i];
}

const Subgroup& ModuleAction::astar_level(int i) const {
  if (i <= 0) return astar_levels[0];
  if (i >= cls) return astar_levels[cls];
  return astar_levels[i];
}

FpMatrix ModuleAction::coset_action(const FpVec& c) const {
  FpMatrix m = FpMatrix::identity(prime(), dim_a);
  for (int i = 0; i < n; ++i)
    if (c[i] % prime() != 0) m = act[i].pow(c[i] % prime()).times(m);
  return m;
}

ModuleAction build_module_action(const PcGroup& g) {
  if (g.is_abelian()) throw std::invalid_argument("build_module_action: group is abelian");

  ModuleAction a;
  a.group = &g;
  a.phi = frattini(g);
  Subgroup cg_phi = centralizer(g, a.phi.members);
  a.c_phi = cg_phi;
  a.z_phi = subgroup_from_members(g, intersect_members(cg_phi, a.phi));
  a.c_zphi = centralizer(g, a.z_phi.members);
  a.a_sub = omega1(g, a.z_phi);
  a.zg = center(g);
  a.zs = upper_central_series(g);
  a.cls = static_cast<int>(a.zs.size()) - 1;
  a.standing_hypothesis = a.c_zphi.members == a.phi.members;
  {
    const Subgroup& z3 = a.zs[std::min(a.cls, 3)];
    a.a_in_z3 = true;
    for (Elt e : a.a_sub.members)
      if (!z3.contains(e)) {
        a.a_in_z3 = false;
        break;
      }
  }
  a.astar = subgroup_from_members(g, intersect_members(omega1_star(g), a.z_phi));

  // basis cosets: greedy over the pc generators, independence modulo Phi
  {
    std::vector<Elt> span_gens = a.phi.generators;
    Subgroup span = a.phi;
    for (int k = 0; k < g.ngens(); ++k) {
      Elt gen = g.generator(k);
      if (span.contains(gen)) continue;
      a.basis_gen_idx.push_back(k);
      span_gens.push_back(gen);
      span = closure(g, span_gens);
    }
    if (span.size() != g.size()) throw std::logic_error("basis cosets do not generate");
  }
  a.n = static_cast<int>(a.basis_gen_idx.size());

  // Gbar coordinates through the quotient by Phi
  QuotientGroup q(g, a.phi);
  {
    std::vector<FpVec> coset_coords(static_cast<std::size_t>(q.size()));
    std::vector<char> seen(static_cast<std::size_t>(q.size()), 0);
    FpVec c(a.n, 0);
    const Fp p = g.prime();
    for (;;) {
      Elt e = g.identity();
      for (int i = 0; i < a.n; ++i)
        if (c[i]) e = g.mul(e, g.power(g.generator(a.basis_gen_idx[i]), c[i]));
      Elt coset = q.coset_of(e);
      if (seen[static_cast<std::size_t>(coset)])
        throw std::logic_error("basis cosets are not independent");
      seen[static_cast<std::size_t>(coset)] = 1;
      coset_coords[static_cast<std::size_t>(coset)] = c;
      int i = a.n - 1;
      for (; i >= 0; --i) {
        if (++c[i] < p) break;
        c[i] = 0;
      }
      if (i < 0) break;
    }
    a.bar_coords.resize(static_cast<std::size_t>(g.size()));
    for (Elt e = 0; e < g.size(); ++e)
      a.bar_coords[static_cast<std::size_t>(e)] = coset_coords[static_cast<std::size_t>(q.coset_of(e))];
    a.transversal.resize(a.n);
    for (int i = 0; i < a.n; ++i)
      a.transversal[i] = q.rep(q.coset_of(g.generator(a.basis_gen_idx[i])));
  }

  a.acoords = AbelianCoords::from_subgroup(g, a.a_sub);
  a.dim_a = static_cast<int>(a.acoords.dim());

  // conjugation matrices, checked against a second transversal choice
  for (int i = 0; i < a.n; ++i) {
    FpMatrix m(g.prime(), a.dim_a, a.dim_a);
    for (int k = 0; k < a.dim_a; ++k) {
      FpVec col = a.acoords.coords(g.conjugate(a.acoords.basis()[k], a.transversal[i]));
      for (int r = 0; r < a.dim_a; ++r) m.at(r, k) = col[r];
    }
    if (static_cast<int>(fp_rank(m)) != a.dim_a)
      throw std::logic_error("conjugation action is not invertible on A");
    if (a.phi.members.size() > 1) {
      Elt second = g.mul(a.transversal[i], a.phi.members[1]);
      for (int k = 0; k < a.dim_a; ++k) {
        FpVec col = a.acoords.coords(g.conjugate(a.acoords.basis()[k], second));
        for (int r = 0; r < a.dim_a; ++r)
          if (m.at(r, k) != col[r])
            throw std::logic_error("conjugation action depends on the transversal choice");
      }
    }
    a.act.push_back(std::move(m));
  }

  for (int i = 0; i <= a.cls; ++i) {
    std::vector<Elt> ai = intersect_members(a.a_sub, a.zs[i]);
    a.a_levels.push_back(subspace_of(a.acoords, ai));
    a.astar_levels.push_back(subgroup_from_members(g, intersect_members(a.astar, a.zs[i])));
    a.dims_a.push_back(static_cast<int>(a.a_levels.back().dim()));
    a.dims_astar.push_back(min_generators_abelian(g, a.astar_levels.back()));
  }
  return a;
}

FpMatrix coset_trace(const ModuleAction& action, const FpVec& c) {
  const Fp p = action.prime();
  FpMatrix m = action.coset_action(c);
  FpMatrix acc(p, action.dim_a, action.dim_a);
  FpMatrix powm = FpMatrix::identity(p, action.dim_a);
  for (Fp t = 0; t < p; ++t) {
    acc = acc.plus(powm);
    powm = powm.times(m);
  }
  return acc;
}

TraceMap trace_map(const ModuleAction& action, int i) {
  const Fp p = action.prime();
  const PcGroup& g = *action.group;
  FpMatrix acc(p, action.dim_a, action.dim_a);
  FpMatrix powm = FpMatrix::identity(p, action.dim_a);
  for (Fp t = 0; t < p; ++t) {
    acc = acc.plus(powm);
    powm = powm.times(action.act[i]);
  }
  if (!acc.times(acc).is_zero()) throw std::logic_error("trace map: tau^2 != 0");
  for (int k = 0; k < action.dim_a; ++k) {
    Elt basis_elt = action.acoords.basis()[k];
    Elt grp = g.left_normed_commutator(basis_elt, action.transversal[i], static_cast<int>(p) - 1);
    FpVec want = action.acoords.coords(grp);
    FpVec e(action.dim_a, 0);
    e[k] = 1;
    if (acc.apply(e) != want)
      throw std::logic_error("trace map: tau(a) != [a,_{p-1} x] on a basis element");
  }
  return {i, std::move(acc)};
}

std::vector<int> kernel_filtration(const ModuleAction& action, int i) {
  TraceMap tau = trace_map(action, i);
  FpSubspace ker = fp_nullspace(tau.mat);
  const int p = static_cast<int>(action.prime());
  std::vector<int> dims;
  for (int j = 0; j <= action.cls; ++j) {
    const FpSubspace& aj = action.a_levels[j];
    FpSubspace meet = fp_intersect(ker, aj);
    dims.push_back(static_cast<int>(meet.dim()));
    if (j <= p - 1 && !ker.contains(aj))
      throw std::logic_error("kernel filtration: A_j not inside ker tau for j <= p-1");
    int lower = j - p + 1;
    int d_lower = lower <= 0 ? 0 : action.dims_a[std::min(lower, action.cls)];
    if (dims.back() < action.dims_a[j] - d_lower)
      throw std::logic_error("kernel filtration: dimension bound violated");
  }
  return dims;
}

}  // namespace pgroup
