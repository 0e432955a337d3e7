#include "pgroup/derivation.hpp"

#include <stdexcept>

namespace pgroup {

namespace {

FpMatrix trace_plain(const FpMatrix& m, Fp p) {
  FpMatrix acc(p, m.rows(), m.cols());
  FpMatrix powm = FpMatrix::identity(p, m.rows());
  for (Fp t = 0; t < p; ++t) {
    acc = acc.plus(powm);
    powm = powm.times(m);
  }
  return acc;
}

// [b, x_i] in A-coordinates: (M_i - I) b
FpVec bracket(const ModuleAction& a, const FpVec& b, int i) {
  return fp_sub(a.act[i].apply(b), b, a.prime());
}

// coordinates of v with respect to the rref basis of `space`
std::optional<FpVec> coords_in(const FpSubspace& space, const FpVec& v) {
  if (!space.contains(v)) return std::nullopt;
  FpVec c(space.dim(), 0);
  for (std::size_t r = 0; r < space.dim(); ++r) {
    std::size_t pivot = 0;
    while (pivot < space.ambient() && space.basis()[r][pivot] == 0) ++pivot;
    c[r] = v[pivot];
  }
  return c;
}

FpVec concat_blocks(const std::vector<FpVec>& blocks) {
  FpVec out;
  for (const FpVec& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<FpVec> split_blocks(const ModuleAction& a, const FpVec& v) {
  std::vector<FpVec> out;
  for (int i = 0; i < a.n; ++i)
    out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i) * a.dim_a,
                     v.begin() + static_cast<std::ptrdiff_t>(i + 1) * a.dim_a);
  return out;
}

}  // namespace

bool extension_check(const ModuleAction& a, const std::vector<FpVec>& images) {
  if (static_cast<int>(images.size()) != a.n)
    throw std::invalid_argument("extension_check: wrong number of images");
  for (int i = 0; i < a.n; ++i) {
    if (static_cast<int>(images[i].size()) != a.dim_a)
      throw std::invalid_argument("extension_check: image has wrong dimension");
    FpMatrix tau = trace_plain(a.act[i], a.prime());
    if (!fp_is_zero(tau.apply(images[i]))) return false;
  }
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j)
      if (bracket(a, images[i], j) != bracket(a, images[j], i)) return false;
  return true;
}

bool extension_check(const ModuleAction& a, const Derivation& d) {
  return extension_check(a, split_blocks(a, d.images));
}

FpMatrix constraint_matrix(const ModuleAction& a, const FpSubspace& c, const FpSubspace& d) {
  const Fp p = a.prime();
  const std::size_t r = c.dim(), s = d.dim();
  const std::size_t n = static_cast<std::size_t>(a.n);
  // m^q_{il}: D-coordinates of [c_l, x_i]; the hypothesis [C, x_i] <= D is
  // exactly what makes these well defined
  std::vector<std::vector<FpVec>> mq(n, std::vector<FpVec>(r));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < r; ++l) {
      auto co = coords_in(d, bracket(a, c.basis()[l], static_cast<int>(i)));
      if (!co)
        throw std::invalid_argument("constraint_matrix: [C, x_i] is not contained in D");
      mq[i][l] = *co;
    }
  FpMatrix e(p, n * (n - 1) / 2 * s, r * n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t q = 0; q < s; ++q, ++row)
        for (std::size_t l = 0; l < r; ++l) {
          e.at(row, i * r + l) = mq[j][l][q];
          e.at(row, j * r + l) = (p - mq[i][l][q]) % p;
        }
  return e;
}

std::vector<Derivation> DerivationSpace::basis() const {
  std::vector<Derivation> out;
  for (const FpVec& v : space.basis()) out.push_back(Derivation{v});
  return out;
}

DerivationSpace derivation_space(const ModuleAction& a, const FpSubspace& c,
                                 const std::optional<FpSubspace>& d) {
  const Fp p = a.prime();
  if (c.ambient() != static_cast<std::size_t>(a.dim_a))
    throw std::invalid_argument("derivation_space: C must be a subspace of A");

  // restricted domain: product of the kernels ker tau_{x_i} /\ C
  std::vector<FpSubspace> kernels;
  for (int i = 0; i < a.n; ++i)
    kernels.push_back(fp_intersect(fp_nullspace(trace_plain(a.act[i], p)), c));

  FpSubspace dd;
  if (d) {
    dd = *d;
  } else {
    std::vector<FpVec> rows;
    for (int i = 0; i < a.n; ++i)
      for (const FpVec& b : c.basis()) rows.push_back(bracket(a, b, i));
    dd = FpSubspace::span(p, a.dim_a, rows);
  }
  for (int i = 0; i < a.n; ++i)
    for (const FpVec& b : c.basis())
      if (!dd.contains(bracket(a, b, i)))
        throw std::invalid_argument("derivation_space: [C, x_i] not contained in D");

  std::vector<std::size_t> offset(a.n + 1, 0);
  for (int i = 0; i < a.n; ++i) offset[i + 1] = offset[i] + kernels[i].dim();
  const std::size_t cols = offset[a.n];
  const std::size_t s = dd.dim();

  // bracket symmetry rows, D-coordinates, pairs (i < j) in lex order
  FpMatrix sys(p, static_cast<std::size_t>(a.n) * (a.n - 1) / 2 * s, cols);
  std::size_t row = 0;
  for (int i = 0; i < a.n; ++i)
    for (int j = i + 1; j < a.n; ++j) {
      for (std::size_t l = 0; l < kernels[i].dim(); ++l) {
        FpVec co = *coords_in(dd, bracket(a, kernels[i].basis()[l], j));
        for (std::size_t q = 0; q < s; ++q) sys.at(row + q, offset[i] + l) = co[q];
      }
      for (std::size_t l = 0; l < kernels[j].dim(); ++l) {
        FpVec co = *coords_in(dd, bracket(a, kernels[j].basis()[l], i));
        for (std::size_t q = 0; q < s; ++q)
          sys.at(row + q, offset[j] + l) = (p - co[q]) % p;
      }
      row += s;
    }

  FpSubspace sols = fp_nullspace(sys);
  std::vector<FpVec> vectors;
  for (const FpVec& t : sols.basis()) {
    std::vector<FpVec> blocks;
    for (int i = 0; i < a.n; ++i) {
      FpVec b(a.dim_a, 0);
      for (std::size_t l = 0; l < kernels[i].dim(); ++l)
        if (t[offset[i] + l] != 0)
          b = fp_add(b, fp_scale(kernels[i].basis()[l], t[offset[i] + l], p), p);
      blocks.push_back(std::move(b));
    }
    vectors.push_back(concat_blocks(blocks));
  }
  DerivationSpace ds;
  ds.space = FpSubspace::span(p, static_cast<std::size_t>(a.n) * a.dim_a, vectors);
  ds.constraint = c;
  if (ds.space.dim() != sols.dim())
    throw std::logic_error("derivation_space: solution embedding lost rank");

  // dimension bound from the rank-nullity count on E_{C,D}
  long bound = 0;
  for (int i = 0; i < a.n; ++i) bound += static_cast<long>(kernels[i].dim());
  bound -= static_cast<long>(a.n) * (a.n - 1) / 2 * static_cast<long>(s);
  if (static_cast<long>(ds.space.dim()) < bound)
    throw std::logic_error("derivation_space: dimension bound violated");
  for (const Derivation& b : ds.basis())
    if (!extension_check(a, b))
      throw std::logic_error("derivation_space: basis element fails the extension criterion");
  return ds;
}

FpVec apply_derivation(const ModuleAction& a, const Derivation& d, const FpVec& c) {
  const Fp p = a.prime();
  if (static_cast<int>(c.size()) != a.n)
    throw std::invalid_argument("apply_derivation: bad coset coordinates");
  FpVec acc(a.dim_a, 0);
  FpMatrix post = FpMatrix::identity(p, a.dim_a);
  for (int i = a.n - 1; i >= 0; --i) {
    Fp e = c[i] % p;
    // delta(x^e) = (1 + M + ... + M^(e-1)) b
    FpMatrix partial(p, a.dim_a, a.dim_a);
    FpMatrix powm = FpMatrix::identity(p, a.dim_a);
    for (Fp t = 0; t < e; ++t) {
      partial = partial.plus(powm);
      powm = powm.times(a.act[i]);
    }
    acc = fp_add(acc, post.apply(partial.apply(d.image_block(a, i))), p);
    post = post.times(a.act[i].pow(e));
  }
  return acc;
}

Elt derivation_value_at(const ModuleAction& a, const Derivation& d, Elt e) {
  return a.acoords.decode(apply_derivation(a, d, a.bar_coords[static_cast<std::size_t>(e)]));
}

Derivation inner_derivation(const ModuleAction& a, Elt elt) {
  if (!a.z_phi.contains(elt))
    throw std::invalid_argument("inner_derivation: element is not in Z(Phi(G))");
  const PcGroup& g = *a.group;
  std::vector<FpVec> blocks;
  for (int i = 0; i < a.n; ++i) {
    Elt img = g.commutator(a.transversal[i], elt);
    if (!a.acoords.contains_elt(img))
      throw std::domain_error("inner_derivation: image [x, a] falls outside A");
    blocks.push_back(a.acoords.coords(img));
  }
  Derivation d{concat_blocks(blocks)};
  if (!extension_check(a, d))
    throw std::logic_error("inner_derivation: phi_a fails the extension criterion");
  return d;
}

FpSubspace inner_space(const ModuleAction& a, const Subgroup& w) {
  for (Elt e : w.generators)
    if (!a.astar.contains(e))
      throw std::invalid_argument("inner_space: subgroup is not contained in A*");
  std::vector<FpVec> rows;
  for (Elt e : w.members) rows.push_back(inner_derivation(a, e).images);
  FpSubspace s = FpSubspace::span(a.prime(), static_cast<std::size_t>(a.n) * a.dim_a, rows);
  std::int64_t kernel = static_cast<std::int64_t>(intersect_members(w, a.zg).size());
  int expected = log_base(w.size() / kernel, a.prime());
  if (static_cast<int>(s.dim()) != expected)
    throw std::logic_error("inner_space: dimension differs from |W / (W /\\ Z(G))|");
  return s;
}

FpSubspace inner_space_full(const ModuleAction& a) {
  const PcGroup& g = *a.group;
  std::vector<FpVec> rows;
  for (Elt e : a.c_phi.members) {
    std::vector<FpVec> blocks;
    bool inside = true;
    for (int i = 0; i < a.n && inside; ++i) {
      Elt img = g.commutator(a.transversal[i], e);
      if (!a.acoords.contains_elt(img))
        inside = false;
      else
        blocks.push_back(a.acoords.coords(img));
    }
    if (inside) rows.push_back(concat_blocks(blocks));
  }
  return FpSubspace::span(a.prime(), static_cast<std::size_t>(a.n) * a.dim_a, rows);
}

std::vector<Derivation> enumerate_derivations_bruteforce(const ModuleAction& a,
                                                         const FpSubspace& c,
                                                         std::size_t limit) {
  std::vector<FpVec> pool = c.elements();
  double total = 1;
  for (int i = 0; i < a.n; ++i) total *= static_cast<double>(pool.size());
  if (total > static_cast<double>(limit))
    throw CapExceededError("enumerate_derivations_bruteforce: |C|^n exceeds the cap");

  std::vector<Derivation> out;
  std::vector<std::size_t> pick(a.n, 0);
  for (;;) {
    std::vector<FpVec> images;
    for (int i = 0; i < a.n; ++i) images.push_back(pool[pick[i]]);
    if (extension_check(a, images)) out.push_back(Derivation{concat_blocks(images)});
    int i = a.n - 1;
    for (; i >= 0; --i) {
      if (++pick[i] < pool.size()) break;
      pick[i] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

std::optional<Derivation> find_noninner_derivation(const ModuleAction& a, int level) {
  DerivationSpace der = derivation_space(a, a.a_level(level - 1));
  FpSubspace ider = inner_space(a, a.astar_level(level));
  if (der.dim() <= static_cast<int>(ider.dim())) return std::nullopt;
  FpSubspace full = inner_space_full(a);
  for (const Derivation& d : der.basis())
    if (!full.contains(d.images)) return d;
  return std::nullopt;
}

}  // namespace pgroup
