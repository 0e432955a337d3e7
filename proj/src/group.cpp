#include "pgroup/group.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace pgroup {

namespace {

Word letters_of(const std::vector<Fp>& exps) {
  Word w;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) w.push_back({static_cast<int>(i), static_cast<int>(exps[i])});
  return w;
}

}  // namespace

std::vector<Fp> collect_word(const PcPresentation& pres, Word w) {
  const int p = static_cast<int>(pres.p);
  long long steps = 0;
  for (;;) {
    if (++steps > 200'000'000)
      throw std::runtime_error("collection did not terminate (inconsistent relations?)");
    // scan for the leftmost uncollected occurrence
    bool mutated = false;
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (w[t].exp == 0) {
        w.erase(w.begin() + t);
        mutated = true;
        break;
      }
      if (w[t].exp >= p) {
        // g^e = g^(e-p) * (g^p relation word)
        int g = w[t].gen;
        Word repl;
        if (w[t].exp - p > 0) repl.push_back({g, w[t].exp - p});
        const Word& pw = pres.power_word(g);
        repl.insert(repl.end(), pw.begin(), pw.end());
        w.erase(w.begin() + t);
        w.insert(w.begin() + t, repl.begin(), repl.end());
        mutated = true;
        break;
      }
      if (t + 1 < w.size() && w[t].gen == w[t + 1].gen) {
        w[t].exp += w[t + 1].exp;
        w.erase(w.begin() + t + 1);
        mutated = true;
        break;
      }
      if (t + 1 < w.size() && w[t].gen > w[t + 1].gen) {
        // h^a g^b = g (h c)^a g^(b-1)  with c = [h, g]
        int h = w[t].gen, a = w[t].exp;
        int g = w[t + 1].gen, b = w[t + 1].exp;
        const Word& c = pres.comm_word(h, g);
        Word repl;
        repl.push_back({g, 1});
        for (int r = 0; r < a; ++r) {
          repl.push_back({h, 1});
          repl.insert(repl.end(), c.begin(), c.end());
        }
        if (b - 1 > 0) repl.push_back({g, b - 1});
        w.erase(w.begin() + t, w.begin() + t + 2);
        w.insert(w.begin() + t, repl.begin(), repl.end());
        mutated = true;
        break;
      }
    }
    if (!mutated) break;
  }
  std::vector<Fp> exps(pres.ngens, 0);
  for (const Letter& l : w) exps[l.gen] = static_cast<Fp>(l.exp);
  return exps;
}

namespace {

std::vector<Fp> collect_concat(const PcPresentation& pres, const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return collect_word(pres, std::move(w));
}

std::string exps_text(const std::vector<Fp>& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s + ")";
}

}  // namespace

ConsistencyReport check_consistency(const PcPresentation& pres) {
  const int n = pres.ngens;
  const int p = static_cast<int>(pres.p);
  auto mismatch = [&](const std::string& name, const std::vector<Fp>& l,
                      const std::vector<Fp>& r) {
    return ConsistencyReport{false, name + ": " + exps_text(l) + " != " + exps_text(r)};
  };

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Word gj_gi = letters_of(collect_concat(pres, {{j, 1}}, {{i, 1}}));
        Word gk_gj = letters_of(collect_concat(pres, {{k, 1}}, {{j, 1}}));
        auto lhs = collect_concat(pres, {{k, 1}}, gj_gi);
        auto rhs = collect_concat(pres, gk_gj, {{i, 1}});
        if (lhs != rhs)
          return mismatch("overlap g" + std::to_string(k + 1) + "(g" + std::to_string(j + 1) +
                              " g" + std::to_string(i + 1) + ") vs (g" + std::to_string(k + 1) +
                              " g" + std::to_string(j + 1) + ")g" + std::to_string(i + 1),
                          lhs, rhs);
      }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Word gj_gi = letters_of(collect_concat(pres, {{j, 1}}, {{i, 1}}));
      auto lhs = collect_concat(pres, pres.power_word(j), {{i, 1}});
      auto rhs = collect_concat(pres, {{j, p - 1}}, gj_gi);
      if (lhs != rhs)
        return mismatch("power overlap g" + std::to_string(j + 1) + "^p g" +
                            std::to_string(i + 1),
                        lhs, rhs);
      lhs = collect_concat(pres, {{j, 1}}, pres.power_word(i));
      Word right = gj_gi;
      right.push_back({i, p - 1});
      rhs = collect_word(pres, right);
      if (lhs != rhs)
        return mismatch("power overlap g" + std::to_string(j + 1) + " g" +
                            std::to_string(i + 1) + "^p",
                        lhs, rhs);
    }

  for (int i = 0; i < n; ++i) {
    auto lhs = collect_concat(pres, pres.power_word(i), {{i, 1}});
    auto rhs = collect_concat(pres, {{i, 1}}, pres.power_word(i));
    if (lhs != rhs)
      return mismatch("power overlap g" + std::to_string(i + 1) + "^p g" + std::to_string(i + 1),
                      lhs, rhs);
  }
  return {};
}

PcGroup::PcGroup(PcPresentation pres, std::int64_t max_elements) : pres_(std::move(pres)) {
  const int n = pres_.ngens;
  size_ = 1;
  for (int i = 0; i < n; ++i) {
    size_ *= pres_.p;
    if (size_ > max_elements)
      throw CapExceededError("group order p^n exceeds the element cap of " +
                             std::to_string(max_elements));
  }
  ConsistencyReport rep = check_consistency(pres_);
  if (!rep.ok) throw ConsistencyError("inconsistent presentation: " + rep.first_failure);

  radix_.assign(n, 1);
  for (int i = n - 2; i >= 0; --i) radix_[i] = radix_[i + 1] * pres_.p;

  rmul_.assign(static_cast<std::size_t>(size_) * n, 0);
  for (Elt e = 0; e < size_; ++e) {
    Word base = letters_of(exponents(e));
    for (int k = 0; k < n; ++k) {
      Word w = base;
      w.push_back({k, 1});
      rmul_[static_cast<std::size_t>(e) * n + k] = element(collect_word(pres_, std::move(w)));
    }
  }

  // spanning tree over right multiplication, breadth first, generators in order
  wstep_.assign(size_, {-1, -1});
  std::deque<Elt> queue{0};
  std::vector<bool> seen(size_, false);
  seen[0] = true;
  while (!queue.empty()) {
    Elt e = queue.front();
    queue.pop_front();
    for (int k = 0; k < n; ++k) {
      Elt f = right_mul_gen(e, k);
      if (!seen[f]) {
        seen[f] = true;
        wstep_[f] = {e, k};
        queue.push_back(f);
      }
    }
  }
}

PcGroup::Elt PcGroup::generator(int i) const {
  assert(i >= 0 && i < pres_.ngens);
  return static_cast<Elt>(radix_[i]);
}

std::vector<Fp> PcGroup::exponents(Elt a) const {
  std::vector<Fp> e(pres_.ngens);
  std::int64_t rest = a;
  for (int i = 0; i < pres_.ngens; ++i) {
    e[i] = static_cast<Fp>(rest / radix_[i]);
    rest %= radix_[i];
  }
  return e;
}

PcGroup::Elt PcGroup::element(const std::vector<Fp>& exps) const {
  assert(static_cast<int>(exps.size()) == pres_.ngens);
  std::int64_t idx = 0;
  for (int i = 0; i < pres_.ngens; ++i) {
    assert(exps[i] < pres_.p);
    idx += exps[i] * radix_[i];
  }
  return static_cast<Elt>(idx);
}

PcGroup::Elt PcGroup::mul(Elt a, Elt b) const {
  Elt r = a;
  std::int64_t rest = b;
  for (int i = 0; i < pres_.ngens; ++i) {
    int e = static_cast<int>(rest / radix_[i]);
    rest %= radix_[i];
    for (int t = 0; t < e; ++t) r = right_mul_gen(r, i);
  }
  return r;
}

std::int64_t PcGroup::element_order(Elt a) const {
  std::int64_t ord = 1;
  Elt t = a;
  while (t != 0) {
    Elt s = t;
    for (Fp i = 1; i < pres_.p; ++i) s = mul(s, t);  // t^p
    t = s;
    ord *= pres_.p;
  }
  return ord;
}

PcGroup::Elt PcGroup::power(Elt a, std::int64_t m) const {
  if (m < 0) {
    std::int64_t ord = element_order(a);
    m = ord - ((-m) % ord);
  }
  Elt result = 0;
  Elt base = a;
  while (m > 0) {
    if (m & 1) result = mul(result, base);
    base = mul(base, base);
    m >>= 1;
  }
  return result;
}

PcGroup::Elt PcGroup::inverse(Elt a) const { return power(a, element_order(a) - 1); }

PcGroup::Elt PcGroup::commutator(Elt a, Elt b) const {
  return mul(mul(inverse(a), inverse(b)), mul(a, b));
}

PcGroup::Elt PcGroup::conjugate(Elt a, Elt x) const { return mul(mul(inverse(x), a), x); }

PcGroup::Elt PcGroup::left_normed_commutator(Elt a, Elt x, int count) const {
  Elt r = a;
  for (int i = 0; i < count; ++i) r = commutator(r, x);
  return r;
}

std::string PcGroup::element_text(Elt a) const {
  if (a == 0) return "1";
  std::vector<Fp> e = exponents(a);
  std::string s;
  for (int i = 0; i < pres_.ngens; ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += 'g' + std::to_string(i + 1);
    if (e[i] != 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

bool PcGroup::is_abelian() const {
  for (int j = 1; j < pres_.ngens; ++j)
    for (int i = 0; i < j; ++i)
      if (!pres_.comm[j][i].empty()) return false;
  return true;
}

}  // namespace pgroup
