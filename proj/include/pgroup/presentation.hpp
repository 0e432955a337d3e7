#pragma once

// Power-commutator presentations of finite p-groups in which every relative
// order equals p: relations g_i^p = w_i and [g_j, g_i] = w_ji with each word
// written over strictly higher-indexed generators.

#include <stdexcept>
#include <string>
#include <vector>

#include "pgroup/fp.hpp"

namespace pgroup {

struct Letter {
  int gen;  // 0-based generator index
  int exp;  // positive while inside the collector
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int col)
      : std::runtime_error(std::move(msg)), line(line), col(col) {}
  int line, col;
};

class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PcPresentation {
  Fp p = 2;
  int ngens = 0;
  std::vector<Word> power;              // power[i]: g_i^p, gens strictly > i
  std::vector<std::vector<Word>> comm;  // comm[j][i], j > i: [g_j, g_i], gens > j

  const Word& power_word(int i) const { return power[i]; }
  const Word& comm_word(int j, int i) const { return comm[j][i]; }

  // Normalized text: sorted relations, trivial ones omitted, no whitespace.
  // This is the byte string certificates hash.
  std::string canonical_text() const;
};

// Grammar (statements split on ';' and newlines, '#' comments):
//   p = <prime>     n = <count>
//   g<i>^<p> = <word>          (exponent must equal p)
//   [g<j>,g<i>] = <word>       (j > i)
//   <word> ::= "1" | factor ('*' factor)*      factor ::= g<k> | g<k>^<e>
// with word indices strictly increasing and above the defining generator(s),
// and exponents in [0, p).
PcPresentation parse_presentation(const std::string& text);

std::string sha256_hex(const std::string& data);

inline std::string group_hash(const PcPresentation& pres) {
  return sha256_hex(pres.canonical_text());
}

}  // namespace pgroup
