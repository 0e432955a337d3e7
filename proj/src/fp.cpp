#include "pgroup/fp.hpp"

#include <cassert>
#include <stdexcept>

namespace pgroup {

Fp fp_inv(Fp a, Fp p) {
  a %= p;
  if (a == 0) throw std::domain_error("fp_inv: zero has no inverse");
  // extended Euclid on (a, p)
  std::int64_t t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p;
  return static_cast<Fp>(t);
}

FpVec fp_add(const FpVec& a, const FpVec& b, Fp p) {
  assert(a.size() == b.size());
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

FpVec fp_sub(const FpVec& a, const FpVec& b, Fp p) {
  assert(a.size() == b.size());
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + p - b[i]) % p;
  return r;
}

FpVec fp_scale(const FpVec& a, Fp c, Fp p) {
  FpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = static_cast<Fp>((static_cast<std::uint64_t>(a[i]) * c) % p);
  return r;
}

bool fp_is_zero(const FpVec& a) {
  for (Fp x : a)
    if (x != 0) return false;
  return true;
}

FpMatrix FpMatrix::identity(Fp p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FpVec FpMatrix::row(std::size_t i) const {
  return FpVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void FpMatrix::set_row(std::size_t i, const FpVec& v) {
  assert(v.size() == cols_);
  std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

FpMatrix FpMatrix::times(const FpMatrix& rhs) const {
  assert(cols_ == rhs.rows_ && p_ == rhs.p_);
  FpMatrix r(p_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Fp aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        r.at(i, j) = static_cast<Fp>(
            (r.at(i, j) + static_cast<std::uint64_t>(aik) * rhs.at(k, j)) % p_);
    }
  return r;
}

FpVec FpMatrix::apply(const FpVec& v) const {
  assert(v.size() == cols_);
  FpVec r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      acc += static_cast<std::uint64_t>(at(i, j)) * v[j];
    r[i] = static_cast<Fp>(acc % p_);
  }
  return r;
}

FpMatrix FpMatrix::pow(std::uint64_t e) const {
  assert(rows_ == cols_);
  FpMatrix result = identity(p_, rows_);
  FpMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result.times(base);
    base = base.times(base);
    e >>= 1;
  }
  return result;
}

FpMatrix FpMatrix::plus(const FpMatrix& rhs) const {
  assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
  FpMatrix r(p_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + rhs.a_[i]) % p_;
  return r;
}

bool FpMatrix::is_zero() const {
  for (Fp x : a_)
    if (x != 0) return false;
  return true;
}

std::vector<std::size_t> fp_rref(FpMatrix& m) {
  const Fp p = m.modulus();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // first nonzero entry in this column at or below row r
    std::size_t pivot = r;
    while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(r, j), m.at(pivot, j));
    Fp inv = fp_inv(m.at(r, c), p);
    for (std::size_t j = 0; j < m.cols(); ++j)
      m.at(r, j) = static_cast<Fp>((static_cast<std::uint64_t>(m.at(r, j)) * inv) % p);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Fp f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = static_cast<Fp>(
            (m.at(i, j) + static_cast<std::uint64_t>(p - f) * m.at(r, j)) % p);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t fp_rank(const FpMatrix& m) {
  FpMatrix c = m;
  return fp_rref(c).size();
}

FpSubspace fp_nullspace(const FpMatrix& m) {
  FpMatrix r = m;
  std::vector<std::size_t> pivots = fp_rref(r);
  const Fp p = m.modulus();
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<FpVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    FpVec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = (p - r.at(i, free)) % p;
    basis.push_back(std::move(v));
  }
  return FpSubspace::span(p, m.cols(), basis);
}

std::optional<FpVec> fp_solve(const FpMatrix& m, const FpVec& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("fp_solve: dimension mismatch");
  const Fp p = m.modulus();
  FpMatrix aug(p, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols()) = rhs[i] % p;
  }
  std::vector<std::size_t> pivots = fp_rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // inconsistent
  FpVec x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, m.cols());
  return x;
}

FpSubspace FpSubspace::full(Fp p, std::size_t ambient) {
  std::vector<FpVec> rows;
  for (std::size_t i = 0; i < ambient; ++i) {
    FpVec v(ambient, 0);
    v[i] = 1;
    rows.push_back(std::move(v));
  }
  return span(p, ambient, rows);
}

FpSubspace FpSubspace::span(Fp p, std::size_t ambient, const std::vector<FpVec>& vectors) {
  FpMatrix m(p, vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) m.set_row(i, vectors[i]);
  std::size_t rank = fp_rref(m).size();
  FpSubspace s(p, ambient);
  for (std::size_t i = 0; i < rank; ++i) s.basis_.push_back(m.row(i));
  return s;
}

FpVec FpSubspace::reduce(FpVec v) const {
  if (v.size() != ambient_) throw std::invalid_argument("FpSubspace::reduce: ambient mismatch");
  for (const FpVec& b : basis_) {
    std::size_t pivot = 0;
    while (pivot < ambient_ && b[pivot] == 0) ++pivot;
    if (pivot == ambient_) continue;
    Fp f = v[pivot] % p_;  // basis row has pivot 1
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      v[j] = static_cast<Fp>((v[j] + static_cast<std::uint64_t>(p_ - f) * b[j]) % p_);
  }
  return v;
}

bool FpSubspace::contains(const FpVec& v) const { return fp_is_zero(reduce(v)); }

bool FpSubspace::contains(const FpSubspace& other) const {
  for (const FpVec& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

std::vector<FpVec> FpSubspace::elements() const {
  std::vector<FpVec> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim(); ++i) total *= p_;
  out.reserve(total);
  FpVec coeff(dim(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    FpVec v(ambient_, 0);
    for (std::size_t i = 0; i < dim(); ++i)
      if (coeff[i] != 0) v = fp_add(v, fp_scale(basis_[i], coeff[i], p_), p_);
    out.push_back(std::move(v));
    // odometer over coefficients, last index fastest
    for (std::size_t i = dim(); i-- > 0;) {
      if (++coeff[i] < p_) break;
      coeff[i] = 0;
    }
  }
  return out;
}

FpSubspace fp_sum(const FpSubspace& u, const FpSubspace& v) {
  if (u.ambient() != v.ambient() || u.modulus() != v.modulus())
    throw std::invalid_argument("fp_sum: ambient mismatch");
  std::vector<FpVec> rows = u.basis();
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return FpSubspace::span(u.modulus(), u.ambient(), rows);
}

// Zassenhaus: rref of [U U; V 0]; rows with zero left half carry the
// intersection in their right half.
FpSubspace fp_intersect(const FpSubspace& u, const FpSubspace& v) {
  if (u.ambient() != v.ambient() || u.modulus() != v.modulus())
    throw std::invalid_argument("fp_intersect: ambient mismatch");
  const std::size_t n = u.ambient();
  const Fp p = u.modulus();
  FpMatrix m(p, u.dim() + v.dim(), 2 * n);
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m.at(i, j) = u.basis()[i][j];
      m.at(i, n + j) = u.basis()[i][j];
    }
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(u.dim() + i, j) = v.basis()[i][j];
  fp_rref(m);
  std::vector<FpVec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n && left_zero; ++j) left_zero = m.at(i, j) == 0;
    if (!left_zero) continue;
    FpVec right(n);
    for (std::size_t j = 0; j < n; ++j) right[j] = m.at(i, n + j);
    if (!fp_is_zero(right)) rows.push_back(std::move(right));
  }
  return FpSubspace::span(p, n, rows);
}

}  // namespace pgroup
