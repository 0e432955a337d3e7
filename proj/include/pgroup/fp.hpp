#pragma once

// Exact linear algebra over the prime field F_p (p a machine-word prime).
// Echelon forms use the first nonzero entry in column order as pivot, so
// every basis this module hands out is reproducible run to run.

#include <cstdint>
#include <optional>
#include <vector>

namespace pgroup {

using Fp = std::uint32_t;
using FpVec = std::vector<Fp>;

Fp fp_inv(Fp a, Fp p);

FpVec fp_add(const FpVec& a, const FpVec& b, Fp p);
FpVec fp_sub(const FpVec& a, const FpVec& b, Fp p);
FpVec fp_scale(const FpVec& a, Fp c, Fp p);
bool fp_is_zero(const FpVec& a);

class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(Fp p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static FpMatrix identity(Fp p, std::size_t n);

  Fp& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Fp at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp modulus() const { return p_; }

  FpVec row(std::size_t i) const;
  void set_row(std::size_t i, const FpVec& v);

  FpMatrix times(const FpMatrix& rhs) const;
  FpVec apply(const FpVec& v) const;
  FpMatrix pow(std::uint64_t e) const;
  FpMatrix plus(const FpMatrix& rhs) const;
  bool is_zero() const;
  bool operator==(const FpMatrix& rhs) const = default;

 private:
  Fp p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Fp> a_;
};

// Row space in reduced row echelon form; the canonical basis makes equality
// of subspaces a plain comparison of basis rows.
class FpSubspace {
 public:
  FpSubspace() = default;
  FpSubspace(Fp p, std::size_t ambient) : p_(p), ambient_(ambient) {}

  static FpSubspace zero(Fp p, std::size_t ambient) { return {p, ambient}; }
  static FpSubspace full(Fp p, std::size_t ambient);
  static FpSubspace span(Fp p, std::size_t ambient, const std::vector<FpVec>& vectors);

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  Fp modulus() const { return p_; }
  const std::vector<FpVec>& basis() const { return basis_; }

  bool contains(const FpVec& v) const;
  bool contains(const FpSubspace& other) const;
  // Remainder of v after reduction by the basis; zero iff contained.
  FpVec reduce(FpVec v) const;
  // Enumerates all p^dim member vectors in a fixed coefficient order.
  std::vector<FpVec> elements() const;

  bool operator==(const FpSubspace& rhs) const = default;

 private:
  Fp p_ = 2;
  std::size_t ambient_ = 0;
  std::vector<FpVec> basis_;  // rref rows, pivot columns strictly increasing
};

// In-place reduction to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> fp_rref(FpMatrix& m);

std::size_t fp_rank(const FpMatrix& m);
FpSubspace fp_nullspace(const FpMatrix& m);
std::optional<FpVec> fp_solve(const FpMatrix& m, const FpVec& rhs);

FpSubspace fp_sum(const FpSubspace& u, const FpSubspace& v);
FpSubspace fp_intersect(const FpSubspace& u, const FpSubspace& v);

}  // namespace pgroup
