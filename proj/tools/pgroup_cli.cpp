// Command-line surface: analyze a presentation, run the built-in corpus,
// verify certificates, and print derivation / identity / oracle reports.
// Exit codes: 0 success, 1 parse or verification failure, 2 cap exceeded.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "pgroup/corpus.hpp"
#include "pgroup/derivation.hpp"
#include "pgroup/engine.hpp"

namespace {

using namespace pgroup;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << data;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

PcGroup load_group(const std::string& path, std::int64_t max_elements) {
  return PcGroup(parse_presentation(read_file(path)), max_elements);
}

int cmd_analyze(const std::string& file, std::int64_t max_order, const std::string& json_out) {
  AnalyzeConfig cfg;
  cfg.max_order = max_order;
  PcGroup g = load_group(file, max_order);
  Certificate cert = analyze(g, cfg);
  std::cout << "group " << file << ": order " << cert.profile.order << ", class "
            << cert.profile.cls << ", d = " << cert.profile.d << "\n";
  std::cout << "criterion: " << cert.criterion << "\n";
  if (cert.witness) {
    std::cout << "witness: order-" << cert.witness->order << " non-inner automorphism"
              << (cert.witness->frattini_fixed ? ", fixes Phi(G) pointwise" : "") << "\n";
  } else {
    std::cout << "witness: none found within the configured caps\n";
  }
  if (!json_out.empty()) {
    write_file_atomic(json_out, cert.to_json());
    std::cout << "certificate written to " << json_out << "\n";
  } else {
    std::cout << cert.to_json();
  }
  return 0;
}

int cmd_verify(const std::string& file, const std::string& cert_path) {
  PcGroup g = load_group(file, 20000);
  Certificate cert = Certificate::from_json(read_file(cert_path));
  VerifyResult vr = verify_certificate(g, cert);
  if (vr.ok) {
    std::cout << "VERIFIED: criterion " << cert.criterion << "\n";
    return 0;
  }
  std::cerr << "REJECTED at check '" << vr.failed_check << "': " << vr.detail << "\n";
  return 1;
}

int cmd_corpus(const std::string& filter, const std::string& out_dir) {
  struct Row {
    std::string name;
    std::string line;
    bool ok;
  };
  std::vector<std::future<Row>> futures;
  for (const CorpusEntry& entry : builtin_corpus()) {
    if (!filter.empty() && entry.name.find(filter) == std::string::npos) continue;
    futures.push_back(std::async(std::launch::async, [entry, &out_dir]() -> Row {
      std::ostringstream line;
      try {
        PcGroup g = corpus_group(entry);
        Certificate cert = analyze(g);
        VerifyResult vr = verify_certificate(g, cert);
        bool profile_ok = cert.profile.order == entry.order && cert.profile.cls == entry.cls &&
                          cert.profile.d == entry.d && cert.profile.d_center == entry.d_center;
        bool criterion_ok = cert.criterion == entry.expected_criterion;
        line << entry.name << ": order " << cert.profile.order << ", class " << cert.profile.cls
             << ", d " << cert.profile.d << ", criterion " << cert.criterion
             << (cert.witness ? " (witness order " + std::to_string(cert.witness->order) + ")"
                              : " (no witness)")
             << (vr.ok ? ", verified" : ", VERIFY FAILED: " + vr.failed_check)
             << (profile_ok ? "" : ", PROFILE MISMATCH")
             << (criterion_ok ? "" : ", expected criterion " + entry.expected_criterion);
        if (!out_dir.empty())
          write_file_atomic(out_dir + "/" + entry.name + ".cert.json", cert.to_json());
        return {entry.name, line.str(), vr.ok && profile_ok && criterion_ok};
      } catch (const std::exception& e) {
        line << entry.name << ": ERROR " << e.what();
        return {entry.name, line.str(), false};
      }
    }));
  }
  bool all_ok = true;
  for (auto& f : futures) {
    Row r = f.get();
    std::cout << r.line << "\n";
    all_ok = all_ok && r.ok;
  }
  return all_ok ? 0 : 1;
}

int cmd_derivations(const std::string& file, int level) {
  PcGroup g = load_group(file, 20000);
  ModuleAction action = build_module_action(g);
  std::cout << "d(G) = " << action.n << ", dim A = " << action.dim_a << ", class " << action.cls
            << ", standing hypothesis "
            << (action.standing_hypothesis ? "holds" : "fails") << "\n";
  auto print_level = [&](int i) {
    DerivationSpace der = derivation_space(action, action.a_level(i - 1));
    FpSubspace ider = inner_space(action, action.astar_level(i));
    std::cout << "level " << i << ": dim Der(Gbar, A_" << (i - 1) << ") = " << der.dim()
              << ", dim Ider(Gbar, A* /\\ Z_" << i << ") = " << ider.dim()
              << (der.dim() > static_cast<int>(ider.dim()) ? "  <-- gap" : "") << "\n";
  };
  if (level > 0) {
    print_level(level);
  } else {
    for (int i = 1; i <= action.cls + 1; ++i) print_level(i);
  }
  return 0;
}

int cmd_oracle_compare(const std::string& file) {
  PcGroup g = load_group(file, 20000);
  ModuleAction action = build_module_action(g);
  bool all_equal = true;
  for (int i = 1; i <= action.cls; ++i) {
    const FpSubspace& c = action.a_level(i);
    DerivationSpace der = derivation_space(action, c);
    std::vector<Derivation> brute = enumerate_derivations_bruteforce(action, c);
    std::vector<FpVec> solved;
    for (const FpVec& coeff : der.space.elements()) solved.push_back(coeff);
    std::vector<FpVec> enumerated;
    for (const Derivation& d : brute) enumerated.push_back(d.images);
    std::sort(solved.begin(), solved.end());
    std::sort(enumerated.begin(), enumerated.end());
    bool equal = solved == enumerated;
    all_equal = all_equal && equal;
    std::cout << "C = A_" << i << ": "
              << (equal ? "EQUAL (dim " + std::to_string(der.dim()) + ")"
                        : "MISMATCH: solver " + std::to_string(solved.size()) + " vs brute " +
                              std::to_string(enumerated.size()))
              << "\n";
  }
  return all_equal ? 0 : 1;
}

int cmd_identities(const std::string& file) {
  PcGroup g = load_group(file, 20000);
  IdentityReport rep = check_class3_identities(g);
  if (!rep.applicable) {
    std::cerr << "identities: requires a 3-group of class <= 3\n";
    return 1;
  }
  std::cout << "checked " << rep.pairs_checked << " pairs, " << rep.triples_checked
            << " triples\n";
  for (auto& [name, ok] : rep.results)
    std::cout << (ok ? "PASS  " : "FAIL  ") << name << "\n";
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"non-inner automorphisms of finite p-groups: analysis and certificates"};
  app.require_subcommand(1);

  std::string file, json_out, cert_path, filter, out_dir;
  std::int64_t max_order = 4096;
  int level = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a presentation file");
  analyze_cmd->add_option("file", file)->required();
  analyze_cmd->add_option("--max-order", max_order, "largest group order to analyze");
  analyze_cmd->add_option("--json", json_out, "write the certificate to this path");

  auto* verify_cmd = app.add_subcommand("verify", "re-verify a certificate");
  verify_cmd->add_option("file", file)->required();
  verify_cmd->add_option("cert", cert_path)->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "operate on the built-in corpus");
  auto* corpus_run = corpus_cmd->add_subcommand("run", "analyze and verify every entry");
  corpus_run->add_option("--filter", filter, "only entries whose name contains this");
  corpus_run->add_option("--out", out_dir, "write certificates into this directory");

  auto* der_cmd = app.add_subcommand("derivations", "derivation/inner dimensions per level");
  der_cmd->add_option("file", file)->required();
  der_cmd->add_option("--level", level, "only this filtration level");

  auto* oracle_cmd = app.add_subcommand("oracle-compare",
                                        "brute-force vs solved derivation spaces");
  oracle_cmd->add_option("file", file)->required();

  auto* id_cmd = app.add_subcommand("identities", "class-3 commutator identity suite");
  id_cmd->add_option("file", file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(analyze_cmd)) return cmd_analyze(file, max_order, json_out);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(file, cert_path);
    if (app.got_subcommand(corpus_cmd)) return cmd_corpus(filter, out_dir);
    if (app.got_subcommand(der_cmd)) return cmd_derivations(file, level);
    if (app.got_subcommand(oracle_cmd)) return cmd_oracle_compare(file);
    if (app.got_subcommand(id_cmd)) return cmd_identities(file);
  } catch (const pgroup::CapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 2;
  } catch (const pgroup::ParseError& e) {
    std::cerr << "parse error at line " << e.line << ", column " << e.col << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
