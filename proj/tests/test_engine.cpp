#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgroup/corpus.hpp"
#include "pgroup/engine.hpp"

using namespace pgroup;

namespace {

const CorpusEntry& entry(const std::string& name) {
  for (const CorpusEntry& e : builtin_corpus())
    if (e.name == name) return e;
  throw std::logic_error("no corpus entry " + name);
}

bool transcript_has(const Certificate& c, const std::string& check) {
  for (const TranscriptEntry& t : c.transcript)
    if (t.check.find(check) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("analyze rejects abelian groups and oversized groups") {
  PcGroup ab(parse_presentation("p=3; n=2\n"));
  CHECK_THROWS_AS((void)analyze(ab), std::invalid_argument);
  AnalyzeConfig tiny;
  tiny.max_order = 8;
  CHECK_THROWS_AS((void)analyze(corpus_group(entry("d16")), tiny), CapExceededError);
}

TEST_CASE("corpus routing matches the recorded criteria") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    Certificate c = analyze(g);
    INFO(e.name);
    CHECK(c.criterion == e.expected_criterion);
    REQUIRE(c.witness.has_value());
    CHECK(c.witness->order == static_cast<std::int64_t>(g.prime()));
  }
}

TEST_CASE("soundness: every corpus certificate re-verifies") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    Certificate c = analyze(g);
    VerifyResult vr = verify_certificate(g, c);
    INFO(e.name << ": " << vr.failed_check << " " << vr.detail);
    CHECK(vr.ok);
  }
}

TEST_CASE("determinism: two runs serialize to identical bytes") {
  for (const char* name : {"d16", "w81", "mc243"}) {
    PcGroup g1 = corpus_group(entry(name));
    PcGroup g2 = corpus_group(entry(name));
    CHECK(analyze(g1).to_json() == analyze(g2).to_json());
  }
}

TEST_CASE("check_thm34 subcases") {
  // p = 5: subcase (1) immediately
  {
    PcGroup g = corpus_group(entry("m625"));
    ModuleAction a = build_module_action(g);
    std::string detail;
    auto sub = check_thm34(a, &detail);
    REQUIRE(sub.has_value());
    CHECK(*sub == 1);
  }
  // p = 3 and d(G) = 4: subcase (2); w81 x C3 x C3 has d = 4
  {
    PcGroup g(parse_presentation(
        "p = 3; n = 6\n[g2,g1] = g3\n[g3,g1] = g4\n"));
    ModuleAction a = build_module_action(g);
    REQUIRE(a.n == 4);
    auto sub = check_thm34(a);
    REQUIRE(sub.has_value());
    CHECK(*sub == 2);
  }
  // p = 3, d = 3 with mismatched dims: subcase (3); w81 x C3 has
  // d(Z(Phi) /\ Z_2) = 2 != 3 d(Z) = 6
  {
    PcGroup g = corpus_group(entry("w81c3"));
    ModuleAction a = build_module_action(g);
    REQUIRE(a.n == 3);
    std::string detail;
    auto sub = check_thm34(a, &detail);
    REQUIRE(sub.has_value());
    CHECK(*sub == 3);
    CHECK(detail.find("d(Z(Phi)") != std::string::npos);
  }
  // d = 2 never matches a subcase
  {
    PcGroup g = corpus_group(entry("mc243"));
    ModuleAction a = build_module_action(g);
    CHECK_FALSE(check_thm34(a).has_value());
  }
}

TEST_CASE("check_thm35 evaluates the strict rank inequality") {
  // w81 x C3: class 3 with non-cyclic center; rk(G/Z) = 2 < binom(4,2) * 2
  {
    PcGroup g = corpus_group(entry("w81c3"));
    ModuleAction a = build_module_action(g);
    Profile pr = compute_profile(g, a, {});
    auto which = check_thm35(pr);
    REQUIRE(which.has_value());
    CHECK(*which == 1);
  }
  // Q16: rk(Q16/Z) = 2 >= binom(2,2) * 1 = 1, strict inequality fails
  {
    PcGroup g = corpus_group(entry("q16"));
    ModuleAction a = build_module_action(g);
    Profile pr = compute_profile(g, a, {});
    CHECK(pr.rank_gz.exact);
    CHECK(pr.rank_gz.value == 2);
    CHECK_FALSE(check_thm35(pr).has_value());
  }
}

TEST_CASE("check_p2 tags") {
  {
    PcGroup g = corpus_group(entry("d16c2c2"));
    ModuleAction a = build_module_action(g);
    Profile pr = compute_profile(g, a, {});
    auto tag = check_p2(pr);
    REQUIRE(tag.has_value());
    CHECK(*tag == "Thm4.5(1)");
  }
  {
    PcGroup g = corpus_group(entry("q16"));
    ModuleAction a = build_module_action(g);
    Profile pr = compute_profile(g, a, {});
    CHECK_FALSE(check_p2(pr).has_value());  // d = 2 with cyclic center
  }
  Profile synth;
  synth.p = 2;
  synth.cls = 3;
  synth.d = 3;
  synth.d_center = 3;
  synth.center_cyclic = false;
  CHECK(check_p2(synth) == std::optional<std::string>{"Thm4.5(2)"});
  synth.d = 5;
  synth.d_center = 1;
  synth.center_cyclic = true;
  CHECK(check_p2(synth) == std::optional<std::string>{"Thm4.6"});
  synth.p = 3;
  CHECK_FALSE(check_p2(synth).has_value());
}

TEST_CASE("direct factor test in abelian groups") {
  // C4 x C2 with S = the order-2 subgroup of the C4 factor: not a factor
  PcGroup g(parse_presentation("p=2; n=3\ng1^2 = g3\n"));
  Subgroup w = full_subgroup(g);
  Subgroup s_inside = closure(g, std::vector<Elt>{g.generator(2)});
  CHECK_FALSE(is_direct_factor_abelian(g, w, s_inside));
  Subgroup s_factor = closure(g, std::vector<Elt>{g.generator(1)});
  CHECK(is_direct_factor_abelian(g, w, s_factor));
  CHECK(is_direct_factor_abelian(g, w, w));
  CHECK(is_direct_factor_abelian(g, w, trivial_subgroup(g)));
}

TEST_CASE("transcripts record hypothesis, caps, and search outcomes") {
  PcGroup q16 = corpus_group(entry("q16"));
  Certificate c = analyze(q16);
  CHECK(c.criterion == "DS-fallback");
  CHECK(transcript_has(c, "caps"));
  CHECK(transcript_has(c, "standing-hypothesis"));
  CHECK(transcript_has(c, "ds-fallback"));
  CHECK(transcript_has(c, "search"));
  CHECK(transcript_has(c, "witness-verify"));

  PcGroup f = corpus_group(entry("f243"));
  Certificate cf = analyze(f);
  CHECK(cf.hyp_centralizer);
  CHECK(transcript_has(cf, "level-scan"));
}

TEST_CASE("level-scan gap implies a witness (contrapositive hook)") {
  for (const CorpusEntry& e : builtin_corpus()) {
    PcGroup g = corpus_group(e);
    ModuleAction a = build_module_action(g);
    Profile pr = compute_profile(g, a, {});
    bool f1_hook = pr.dims_a.size() >= 2 && pr.dims_a[1] < a.n * pr.dims_a[0];
    bool gap = false;
    for (int i = 2; i <= a.cls + 1 && !gap; ++i)
      gap = derivation_space(a, a.a_level(i - 1)).dim() >
            static_cast<int>(pr.dims_a[std::min(i, a.cls) - 1]);
    Certificate c = analyze(g);
    INFO(e.name);
    if (f1_hook || gap) CHECK(c.witness.has_value());
  }
}

TEST_CASE("verify: wrong group is rejected before anything else") {
  PcGroup d16 = corpus_group(entry("d16"));
  PcGroup q16 = corpus_group(entry("q16"));
  Certificate c = analyze(d16);
  VerifyResult vr = verify_certificate(q16, c);
  CHECK_FALSE(vr.ok);
  CHECK(vr.failed_check == "group-hash");
}

TEST_CASE("verify: witness mutations are rejected with named checks") {
  for (const char* name : {"d16", "w81", "mc243", "d16c2c2"}) {
    PcGroup g = corpus_group(entry(name));
    Certificate c = analyze(g);
    REQUIRE(c.witness.has_value());

    // bump one exponent in the image of the last pc generator: that image is
    // pinned by the lower relations, so homomorphism or Phi-fixing breaks
    Certificate mut = c;
    auto& img = mut.witness->generator_images.back();
    img.back() = (img.back() + 1) % g.prime();
    VerifyResult vr = verify_certificate(g, mut);
    INFO(name << " exponent mutation: " << vr.failed_check);
    CHECK_FALSE(vr.ok);
    CHECK_FALSE(vr.failed_check.empty());

    // profile dimension mutation
    Certificate mut2 = c;
    mut2.profile.dims_a[0] += 1;
    vr = verify_certificate(g, mut2);
    CHECK_FALSE(vr.ok);
    CHECK(vr.failed_check == "profile");

    // criterion tag mutation: pick the first tag whose preconditions fail
    Certificate mut3 = c;
    for (const std::string& tag : criterion_tags()) {
      if (tag == c.criterion || tag == "NONE-FOUND" || tag == "BRUTE-FORCE") continue;
      mut3.criterion = tag;
      vr = verify_certificate(g, mut3);
      if (!vr.ok) break;
    }
    CHECK_FALSE(vr.ok);
    CHECK(vr.failed_check == "criterion-preconditions");
  }
}

TEST_CASE("verify: order and innerness mutations") {
  PcGroup g = corpus_group(entry("d16"));
  Certificate c = analyze(g);
  // replace the witness by the identity map: relations hold, order is 1
  Certificate mut = c;
  for (int i = 0; i < g.ngens(); ++i)
    mut.witness->generator_images[i] = g.exponents(g.generator(i));
  VerifyResult vr = verify_certificate(g, mut);
  CHECK_FALSE(vr.ok);
  CHECK(vr.failed_check == "witness-order");

  // replace the witness by conjugation by r: inner
  Certificate mut2 = c;
  Elt r = g.generator(1);
  for (int i = 0; i < g.ngens(); ++i)
    mut2.witness->generator_images[i] = g.exponents(g.conjugate(g.generator(i), r));
  vr = verify_certificate(g, mut2);
  CHECK_FALSE(vr.ok);
  CHECK((vr.failed_check == "witness-noninner" || vr.failed_check == "witness-order"));
}

TEST_CASE("certificate JSON round-trips; schema version is enforced") {
  PcGroup g = corpus_group(entry("w81"));
  Certificate c = analyze(g);
  Certificate back = Certificate::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.profile == c.profile);
  CHECK(back.criterion == c.criterion);

  std::string bumped = c.to_json();
  bumped.replace(bumped.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  CHECK_THROWS_WITH_AS((void)Certificate::from_json(bumped),
                       doctest::Contains("schema version mismatch"), std::runtime_error);
}

TEST_CASE("profile rank bound is used only above the enumeration cap") {
  PcGroup g = corpus_group(entry("m625"));
  ModuleAction a = build_module_action(g);
  AnalyzeConfig cfg;
  Profile pr = compute_profile(g, a, cfg);
  CHECK(pr.rank_gz.available);
  CHECK(pr.rank_gz.exact);  // |G/Z| = 125 <= 5^5
  // the class-2 surrogate agrees as an upper bound where both paths exist
  CHECK(pr.rank_gz.value <= pr.d + pr.d * (pr.d - 1) / 2 + pr.d_center);
}
