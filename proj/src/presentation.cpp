#include "pgroup/presentation.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <sstream>
#include <tuple>

namespace pgroup {

namespace {

bool is_prime(Fp n) {
  if (n < 2) return false;
  for (Fp d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Cursor over one statement, remembering line/column for diagnostics.
struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  int line;
  int col0;  // column of s[0] in the original line (1-based)

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col0 + static_cast<int>(pos));
  }
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool done() {
    skip_ws();
    return pos == s.size();
  }
  long integer() {
    skip_ws();
    if (pos == s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected integer");
    long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + (s[pos] - '0');
      if (v > 1'000'000) fail("integer too large");
      ++pos;
    }
    return v;
  }
};

struct Builder {
  long p = -1, n = -1;
  std::vector<std::pair<int, Word>> powers;                 // (i, word) 0-based
  std::vector<std::tuple<int, int, Word>> comms;            // (j, i, word)

  void require_header(Cursor& c) const {
    if (p < 0 || n < 0) c.fail("p and n must be declared before relations");
  }
};

int gen_index(Cursor& c, const Builder& b) {
  c.skip_ws();
  if (c.pos == c.s.size() || c.s[c.pos] != 'g') c.fail("expected generator");
  ++c.pos;
  long i = c.integer();
  if (i < 1 || i > b.n) c.fail("generator index out of range");
  return static_cast<int>(i) - 1;
}

// Word over generators with index strictly greater than min_gen (0-based).
Word parse_word(Cursor& c, const Builder& b, int min_gen) {
  Word w;
  c.skip_ws();
  if (c.pos < c.s.size() && c.s[c.pos] == '1') {
    ++c.pos;
    return w;
  }
  int last = -1;
  for (;;) {
    int g = gen_index(c, b);
    long e = 1;
    if (c.eat('^')) e = c.integer();
    if (e >= static_cast<long>(b.p)) c.fail("exponent out of range");
    if (g <= min_gen)
      c.fail("weighting violation: word may only use higher-indexed generators");
    if (g <= last) c.fail("word generator indices must be strictly increasing");
    last = g;
    if (e > 0) w.push_back({g, static_cast<int>(e)});
    if (!c.eat('*')) break;
  }
  return w;
}

void parse_statement(const std::string& stmt, int line, int col0, Builder& b) {
  Cursor c{stmt, 0, line, col0};
  c.skip_ws();
  if (c.done()) return;
  char head = c.s[c.pos];
  if (head == 'p' || head == 'n') {
    ++c.pos;
    c.expect('=');
    long v = c.integer();
    if (!c.done()) c.fail("trailing characters after header");
    if (head == 'p') {
      if (b.p >= 0) c.fail("duplicate 'p' header");
      if (!is_prime(static_cast<Fp>(v))) c.fail("p must be a prime");
      b.p = v;
    } else {
      if (b.n >= 0) c.fail("duplicate 'n' header");
      if (v < 1 || v > 64) c.fail("n out of range");
      b.n = v;
    }
    return;
  }
  if (head == 'g') {
    b.require_header(c);
    int i = gen_index(c, b);
    c.expect('^');
    long e = c.integer();
    if (e != b.p) c.fail("power relation exponent must equal p");
    c.expect('=');
    Word w = parse_word(c, b, i);
    if (!c.done()) c.fail("trailing characters after relation");
    for (auto& [pi, pw] : b.powers)
      if (pi == i) c.fail("duplicate power relation");
    b.powers.emplace_back(i, std::move(w));
    return;
  }
  if (head == '[') {
    b.require_header(c);
    c.expect('[');
    int j = gen_index(c, b);
    c.expect(',');
    int i = gen_index(c, b);
    c.expect(']');
    if (j <= i) c.fail("commutator [gj,gi] requires j > i");
    c.expect('=');
    Word w = parse_word(c, b, j);
    if (!c.done()) c.fail("trailing characters after relation");
    for (auto& [cj, ci, cw] : b.comms)
      if (cj == j && ci == i) c.fail("duplicate commutator relation");
    b.comms.emplace_back(j, i, std::move(w));
    return;
  }
  c.fail("unrecognized statement");
}

}  // namespace

PcPresentation parse_presentation(const std::string& text) {
  Builder b;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::size_t start = 0;
    while (start <= raw.size()) {
      std::size_t semi = raw.find(';', start);
      std::string stmt = raw.substr(start, semi == std::string::npos ? semi : semi - start);
      parse_statement(stmt, line, static_cast<int>(start) + 1, b);
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
  }
  if (b.p < 0) throw ParseError("missing 'p' header", line, 1);
  if (b.n < 0) throw ParseError("missing 'n' header", line, 1);

  PcPresentation pres;
  pres.p = static_cast<Fp>(b.p);
  pres.ngens = static_cast<int>(b.n);
  pres.power.assign(pres.ngens, {});
  pres.comm.assign(pres.ngens, std::vector<Word>(pres.ngens));
  for (auto& [i, w] : b.powers) pres.power[i] = std::move(w);
  for (auto& [j, i, w] : b.comms) pres.comm[j][i] = std::move(w);
  return pres;
}

namespace {
std::string word_text(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) out += '*';
    out += 'g' + std::to_string(w[t].gen + 1);
    if (w[t].exp != 1) out += '^' + std::to_string(w[t].exp);
  }
  return out;
}
}  // namespace

std::string PcPresentation::canonical_text() const {
  std::string out = "p=" + std::to_string(p) + "\nn=" + std::to_string(ngens) + "\n";
  for (int i = 0; i < ngens; ++i)
    if (!power[i].empty())
      out += 'g' + std::to_string(i + 1) + '^' + std::to_string(p) + '=' +
             word_text(power[i]) + '\n';
  for (int j = 1; j < ngens; ++j)
    for (int i = 0; i < j; ++i)
      if (!comm[j][i].empty())
        out += "[g" + std::to_string(j + 1) + ",g" + std::to_string(i + 1) + "]=" +
               word_text(comm[j][i]) + '\n';
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace pgroup
