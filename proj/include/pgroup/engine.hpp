#pragma once

// Decision tree routing a group through the non-inner automorphism criteria
// and assembling an independently verifiable certificate.

#include <optional>

#include "pgroup/automorphism.hpp"
#include "pgroup/certificate.hpp"

namespace pgroup {

struct AnalyzeConfig {
  std::int64_t max_order = 4096;  // full-analysis cap
  SearchCaps search;
  // rank enumeration cap is p^5; computed per group
  std::int64_t rank_cap(Fp p) const {
    std::int64_t c = 1;
    for (int i = 0; i < 5; ++i) c *= p;
    return c;
  }
};

Profile compute_profile(const PcGroup& g, const ModuleAction& action, const AnalyzeConfig& cfg);

// First satisfied subcase of the class-<=3 criterion set, or nothing:
// (1) p > 3; (2) p = 3, d > 3; (3) p = 3, d = 3, dimension mismatch;
// (4) p = 3, d = 3, some trace vanishes off Phi; (5) d = 3 and Z(G) a direct
// factor of A*. Requires Omega_1(Z(Phi(G))) <= Z_3(G).
std::optional<int> check_thm34(const ModuleAction& action, std::string* detail = nullptr);

// Rank criterion: 1 for odd p when rk(G/Z) < binom(d+1,2) d(Z), 2 for p = 2
// when rk(G/Z) < binom(d,2) d(Z). A surrogate upper bound may only affirm.
std::optional<int> check_thm35(const Profile& profile);

// Class-3 2-group criteria; returns a criterion tag.
std::optional<std::string> check_p2(const Profile& profile);

// Exhaustive complement test in a finite abelian p-group: S is a direct
// factor of W iff S is pure in W.
bool is_direct_factor_abelian(const PcGroup& g, const Subgroup& w, const Subgroup& s);

Certificate analyze(const PcGroup& g, const AnalyzeConfig& cfg = {});

struct VerifyResult {
  bool ok = true;
  std::string failed_check;
  std::string detail;
};

// Independent re-check of a certificate: group hash, profile, criterion
// preconditions, and full witness verification.
VerifyResult verify_certificate(const PcGroup& g, const Certificate& cert,
                                const AnalyzeConfig& cfg = {});

}  // namespace pgroup
