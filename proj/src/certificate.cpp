#include "pgroup/certificate.hpp"

#include <json.hpp>

namespace pgroup {

using ordered_json = nlohmann::ordered_json;

const std::vector<std::string>& criterion_tags() {
  static const std::vector<std::string> tags = {
      "Thm3.4(1)", "Thm3.4(2)", "Thm3.4(3)", "Thm3.4(4)", "Thm3.4(5)",
      "Thm3.5(1)", "Thm3.5(2)", "Lem4.2",    "Thm4.4-caseB",
      "Thm4.5(1)", "Thm4.5(2)", "Thm4.6",    "DS-fallback",
      "BRUTE-FORCE", "NONE-FOUND"};
  return tags;
}

std::string Certificate::to_json() const {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["group_id"] = group_id;
  ordered_json p;
  p["p"] = profile.p;
  p["order"] = profile.order;
  p["class"] = profile.cls;
  p["d"] = profile.d;
  p["d_center"] = profile.d_center;
  p["center_cyclic"] = profile.center_cyclic;
  p["dim_A"] = profile.dim_a;
  p["dims_A"] = profile.dims_a;
  p["dims_Astar_Z"] = profile.dims_astar;
  p["d_ZPhi"] = profile.d_zphi;
  p["d_ZPhi_Z2"] = profile.d_zphi_z2;
  ordered_json r;
  r["available"] = profile.rank_gz.available;
  r["exact"] = profile.rank_gz.exact;
  r["value"] = profile.rank_gz.value;
  p["rank_GZ"] = r;
  j["profile"] = p;
  ordered_json h;
  h["centralizer_eq_frattini"] = hyp_centralizer;
  h["omega_ZPhi_in_Z3"] = hyp_omega_z3;
  j["hypothesis_flags"] = h;
  j["criterion"] = criterion;
  if (witness) {
    ordered_json w;
    w["generator_images"] = witness->generator_images;
    w["order"] = witness->order;
    w["frattini_fixed"] = witness->frattini_fixed;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  ordered_json t = ordered_json::array();
  for (const TranscriptEntry& e : transcript) {
    ordered_json te;
    te["check"] = e.check;
    te["outcome"] = e.outcome;
    te["detail"] = e.detail;
    t.push_back(te);
  }
  j["transcript"] = t;
  return j.dump(2) + "\n";
}

Certificate Certificate::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Certificate c;
  c.schema_version = j.at("schema_version").get<int>();
  if (c.schema_version != kCertificateSchemaVersion)
    throw std::runtime_error("certificate schema version mismatch: got " +
                             std::to_string(c.schema_version) + ", expected " +
                             std::to_string(kCertificateSchemaVersion));
  c.group_id = j.at("group_id").get<std::string>();
  const auto& p = j.at("profile");
  c.profile.p = p.at("p").get<Fp>();
  c.profile.order = p.at("order").get<std::int64_t>();
  c.profile.cls = p.at("class").get<int>();
  c.profile.d = p.at("d").get<int>();
  c.profile.d_center = p.at("d_center").get<int>();
  c.profile.center_cyclic = p.at("center_cyclic").get<bool>();
  c.profile.dim_a = p.at("dim_A").get<int>();
  c.profile.dims_a = p.at("dims_A").get<std::vector<int>>();
  c.profile.dims_astar = p.at("dims_Astar_Z").get<std::vector<int>>();
  c.profile.d_zphi = p.at("d_ZPhi").get<int>();
  c.profile.d_zphi_z2 = p.at("d_ZPhi_Z2").get<int>();
  c.profile.rank_gz.available = p.at("rank_GZ").at("available").get<bool>();
  c.profile.rank_gz.exact = p.at("rank_GZ").at("exact").get<bool>();
  c.profile.rank_gz.value = p.at("rank_GZ").at("value").get<int>();
  c.hyp_centralizer = j.at("hypothesis_flags").at("centralizer_eq_frattini").get<bool>();
  c.hyp_omega_z3 = j.at("hypothesis_flags").at("omega_ZPhi_in_Z3").get<bool>();
  c.criterion = j.at("criterion").get<std::string>();
  if (!j.at("witness").is_null()) {
    WitnessData w;
    w.generator_images = j.at("witness").at("generator_images").get<std::vector<std::vector<Fp>>>();
    w.order = j.at("witness").at("order").get<std::int64_t>();
    w.frattini_fixed = j.at("witness").at("frattini_fixed").get<bool>();
    c.witness = std::move(w);
  }
  for (const auto& te : j.at("transcript"))
    c.transcript.push_back({te.at("check").get<std::string>(), te.at("outcome").get<std::string>(),
                            te.at("detail").get<std::string>()});
  return c;
}

}  // namespace pgroup
