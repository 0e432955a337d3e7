#pragma once

// The analysis verdict: group profile, hypothesis flags, the criterion that
// fired, the witness automorphism, and the ordered check transcript. The
// JSON form is byte-stable: fixed key order, no timestamps.

#include <optional>
#include <string>
#include <vector>

#include "pgroup/fp.hpp"

namespace pgroup {

struct RankInfo {
  bool available = false;
  bool exact = false;  // false: upper bound d(G/G'Z) + d(G'Z/Z)
  int value = 0;
  bool operator==(const RankInfo&) const = default;
};

struct Profile {
  Fp p = 2;
  std::int64_t order = 0;
  int cls = 0;
  int d = 0;
  int d_center = 0;
  bool center_cyclic = false;
  int dim_a = 0;
  std::vector<int> dims_a;      // d(A_i), i = 1..cls
  std::vector<int> dims_astar;  // d(A* /\ Z_i), i = 1..cls
  int d_zphi = 0;
  int d_zphi_z2 = 0;
  RankInfo rank_gz;
  bool operator==(const Profile&) const = default;
};

struct WitnessData {
  std::vector<std::vector<Fp>> generator_images;  // exponent vector per pc generator
  std::int64_t order = 0;
  bool frattini_fixed = false;
};

struct TranscriptEntry {
  std::string check;
  std::string outcome;
  std::string detail;
};

inline constexpr int kCertificateSchemaVersion = 1;

struct Certificate {
  int schema_version = kCertificateSchemaVersion;
  std::string group_id;
  Profile profile;
  bool hyp_centralizer = false;  // C_G(Z(Phi(G))) == Phi(G)
  bool hyp_omega_z3 = false;     // Omega_1(Z(Phi(G))) <= Z_3(G)
  std::string criterion;
  std::optional<WitnessData> witness;
  std::vector<TranscriptEntry> transcript;

  std::string to_json() const;
  // Throws std::runtime_error on malformed input or schema version mismatch.
  static Certificate from_json(const std::string& text);
};

const std::vector<std::string>& criterion_tags();

}  // namespace pgroup
