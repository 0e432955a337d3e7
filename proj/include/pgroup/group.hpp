#pragma once

// Finite p-group arithmetic backed by a consistent power-commutator
// presentation. Construction enumerates all p^n normal forms, runs the
// standard overlap consistency checks, and tabulates right multiplication
// by each generator; everything else is table lookup.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pgroup/presentation.hpp"

namespace pgroup {

class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConsistencyReport {
  bool ok = true;
  std::string first_failure;  // names the overlap that broke
};

// Collects an arbitrary word to its normal form exponent vector
// (collection from the left with a worklist of uncollected occurrences).
std::vector<Fp> collect_word(const PcPresentation& pres, Word w);

// Overlap checks: for k > j > i the two bracketings of g_k g_j g_i, the two
// power overlaps g_j^p g_i / g_j g_i^p for j > i, and g_i^p g_i = g_i g_i^p.
ConsistencyReport check_consistency(const PcPresentation& pres);

class PcGroup {
 public:
  using Elt = std::int32_t;

  explicit PcGroup(PcPresentation pres, std::int64_t max_elements = 20000);

  Fp prime() const { return pres_.p; }
  int ngens() const { return pres_.ngens; }
  int generator_count() const { return pres_.ngens; }
  std::int64_t size() const { return size_; }
  const PcPresentation& presentation() const { return pres_; }

  Elt identity() const { return 0; }
  Elt generator(int i) const;
  Elt mul(Elt a, Elt b) const;
  Elt inverse(Elt a) const;
  Elt power(Elt a, std::int64_t m) const;
  std::int64_t element_order(Elt a) const;
  // [a, b] = a^-1 b^-1 a b, so that a^b = a [a, b].
  Elt commutator(Elt a, Elt b) const;
  Elt conjugate(Elt a, Elt x) const;  // x^-1 a x
  // [a,_0 x] = a, [a,_{k+1} x] = [[a,_k x], x]
  Elt left_normed_commutator(Elt a, Elt x, int count) const;

  std::vector<Fp> exponents(Elt a) const;
  Elt element(const std::vector<Fp>& exps) const;
  std::string element_text(Elt a) const;

  bool is_abelian() const;

  // Spanning-tree step: for e != identity, e == mul(prev, generator(k)).
  // Lets callers extend generator images over the whole group in one sweep.
  std::pair<Elt, int> word_step(Elt e) const { return wstep_[e]; }

 private:
  Elt right_mul_gen(Elt a, int k) const { return rmul_[static_cast<std::size_t>(a) * pres_.ngens + k]; }

  PcPresentation pres_;
  std::int64_t size_ = 1;
  std::vector<std::int64_t> radix_;       // radix_[i] = p^(n-1-i)
  std::vector<Elt> rmul_;                 // size * ngens
  std::vector<std::pair<Elt, int>> wstep_;
};

}  // namespace pgroup
