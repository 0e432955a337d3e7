#include "pgroup/corpus.hpp"

namespace pgroup {

// Each presentation names the higher generators so that g_{i+1}.. spell out
// the derived/power chain: dihedral-like groups use g1 = reflection, g2 =
// rotation, g3 = rotation^2, g4 = rotation^4.
const std::vector<CorpusEntry>& builtin_corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"d16",
       "# dihedral group of order 16\n"
       "p = 2; n = 4\n"
       "g2^2 = g3\n"
       "g3^2 = g4\n"
       "[g2,g1] = g3*g4\n"
       "[g3,g1] = g4\n",
       16, 3, 2, 1, "DS-fallback"},
      {"q16",
       "# generalized quaternion group of order 16\n"
       "p = 2; n = 4\n"
       "g1^2 = g4\n"
       "g2^2 = g3\n"
       "g3^2 = g4\n"
       "[g2,g1] = g3*g4\n"
       "[g3,g1] = g4\n",
       16, 3, 2, 1, "DS-fallback"},
      {"sd16",
       "# semidihedral group of order 16\n"
       "p = 2; n = 4\n"
       "g2^2 = g3\n"
       "g3^2 = g4\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g4\n",
       16, 3, 2, 1, "DS-fallback"},
      {"d16c2c2",
       "# D16 x C2 x C2: class 3, d = 4, non-cyclic center\n"
       "p = 2; n = 6\n"
       "g2^2 = g3\n"
       "g3^2 = g4\n"
       "[g2,g1] = g3*g4\n"
       "[g3,g1] = g4\n",
       64, 3, 4, 3, "Thm4.5(1)"},
      {"w81",
       "# wreath-type 3-group of order 81 (Sylow 3-subgroup of S_9)\n"
       "p = 3; n = 4\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g4\n",
       81, 3, 2, 1, "Thm3.5(1)"},
      {"w81c3",
       "# (wreath-type of order 81) x C3: class 3, d = 3\n"
       "p = 3; n = 5\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g4\n",
       243, 3, 3, 2, "Lem4.2"},
      {"mc243",
       "# metacyclic C27 : C9 with a^b = a^4 (g1=b, g2=a, g3=a^3, g4=b^3, g5=a^9):\n"
       "# 2-generated, class 3, cyclic center\n"
       "p = 3; n = 5\n"
       "g1^3 = g4\n"
       "g2^3 = g3\n"
       "g3^3 = g5\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g5\n"
       "[g4,g2] = g5^2\n",
       243, 3, 2, 1, "Thm4.4-caseB"},
      {"f243",
       "# largest 2-generated class-3 quotient with both length-3 commutators\n"
       "# surviving independently; C_G(Z(Phi(G))) = Phi(G) holds here\n"
       "p = 3; n = 5\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g4\n"
       "[g3,g2] = g5\n",
       243, 3, 2, 2, "Lem4.2"},
      {"ut42",
       "# upper unitriangular 4x4 matrices over F_2 (order 64, class 3, d = 3):\n"
       "# g1..g3 the superdiagonal transvections, g4..g6 the deeper ones\n"
       "p = 2; n = 6\n"
       "[g2,g1] = g4\n"
       "[g3,g2] = g5\n"
       "[g4,g3] = g6\n"
       "[g5,g1] = g6\n",
       64, 3, 3, 1, "DS-fallback"},
      {"heis27",
       "# extraspecial group of order 27, exponent 3 (class-2 control)\n"
       "p = 3; n = 3\n"
       "[g2,g1] = g3\n",
       27, 2, 2, 1, "Thm3.5(1)"},
      {"m625",
       "# class-3 group of order 5^4\n"
       "p = 5; n = 4\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g4\n",
       625, 3, 2, 1, "Thm3.5(1)"},
      {"mc3125",
       "# metacyclic C125 : C25 with a^b = a^6 (g1=b, g2=a, g3=a^5, g4=b^5,\n"
       "# g5=a^25); C_G(Z(Phi(G))) = Phi(G) holds, so p > 3 routes directly\n"
       "p = 5; n = 5\n"
       "g1^5 = g4\n"
       "g2^5 = g3\n"
       "g3^5 = g5\n"
       "[g2,g1] = g3\n"
       "[g3,g1] = g5\n"
       "[g4,g2] = g5^4\n",
       3125, 3, 2, 1, "Thm3.4(1)"},
  };
  return entries;
}

PcGroup corpus_group(const CorpusEntry& entry) {
  return PcGroup(parse_presentation(entry.text));
}

}  // namespace pgroup
