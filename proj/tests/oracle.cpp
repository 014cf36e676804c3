// Copyright 2026 The ttgos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace oracle {

char inv(char c) {
  return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                     : static_cast<char>(std::tolower(c));
}

std::string inv(const std::string& w) {
  std::string r(w.rbegin(), w.rend());
  for (char& c : r) c = inv(c);
  return r;
}

std::string reduce(const std::string& w) {
  std::string s;
  for (char c : w) {
    if (!s.empty() && s.back() == inv(c)) {
      s.pop_back();
    } else {
      s.push_back(c);
    }
  }
  return s;
}

RoseMap::RoseMap(std::map<char, std::string> images) : images_(std::move(images)) {
  for (const auto& [c, _] : images_) {
    letters_.push_back(c);
    letters_.push_back(inv(c));
  }
}

const std::string& RoseMap::letter_power(char c, int p) const {
  auto key = std::make_pair(c, p);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::string w;
  if (p == 0) {
    w = std::string(1, c);
  } else if (std::isupper(static_cast<unsigned char>(c))) {
    w = inv(letter_power(inv(c), p));
  } else {
    for (char x : letter_power(c, p - 1)) w += std::isupper(static_cast<unsigned char>(x)) ? inv(images_.at(inv(x))) : images_.at(x);
  }
  return cache_[key] = w;
}

std::string RoseMap::image(const std::string& w) const { return power(w, 1); }

std::string RoseMap::power(const std::string& w, int p) const {
  std::string out;
  for (char c : w) out += letter_power(c, p);
  return out;
}

bool RoseMap::illegal(char d1, char d2) const {
  if (d1 == d2) return true;
  const int steps = 2 * static_cast<int>(letters_.size() * letters_.size()) + 2;
  for (int t = 0; t < steps; ++t) {
    d1 = letter_power(d1, 1).front();
    d2 = letter_power(d2, 1).front();
    if (d1 == d2) return true;
  }
  return false;
}

bool RoseMap::legal(const std::string& w) const {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (illegal(inv(w[i]), w[i + 1])) return false;
  }
  return true;
}

int RoseMap::expansion_exponent(int max_t) const {
  // Lengths only; |f^t(c)| = sum of |f^(t-1)(x)| over the letters x of f(c).
  std::map<char, std::uint64_t> len;
  for (const auto& [c, _] : images_) len[c] = 1;
  for (int t = 1; t <= max_t; ++t) {
    std::map<char, std::uint64_t> next;
    bool ok = true;
    for (const auto& [c, w] : images_) {
      std::uint64_t n = 0;
      for (char x : w) n = std::min<std::uint64_t>(n + len[static_cast<char>(std::tolower(x))], 1u << 20);
      next[c] = n;
      ok = ok && n >= 2;
    }
    len = next;
    if (ok) return t;
  }
  return 0;
}

std::vector<std::string> RoseMap::legal_words(int n) const {
  std::vector<std::string> out;
  std::function<void(std::string&)> grow = [&](std::string& w) {
    out.push_back(w);
    if (static_cast<int>(w.size()) == n) return;
    for (char c : letters_) {
      if (illegal(inv(w.back()), c)) continue;
      w.push_back(c);
      grow(w);
      w.pop_back();
    }
  };
  for (char c : letters_) {
    std::string w(1, c);
    grow(w);
  }
  return out;
}

std::string normalize_pair(const std::string& g1, const std::string& g2) {
  const std::string a = inv(g1) + "|" + g2;
  const std::string b = inv(g2) + "|" + g1;
  return std::min(a, b);
}

namespace {

std::size_t lcp(const std::string& a, const std::string& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

bool comparable(const std::string& a, const std::string& b) {
  return lcp(a, b) == std::min(a.size(), b.size());
}

}  // namespace

std::set<std::string> RoseMap::v_set(int max_depth) const {
  // gamma_i = alpha_i + last edge; f(alpha_1) and f(alpha_2) must both lie in
  // the common prefix, so they are comparable.
  std::set<std::string> out;
  auto extensions = [&](const std::string& alpha, char first) {
    std::string r;
    if (alpha.empty()) return std::string(1, first);
    for (char c : letters_) {
      if (!illegal(inv(alpha.back()), c)) r.push_back(c);
    }
    return r;
  };
  // States are explored shorter-image side first; once a side is declared
  // complete only the other side grows, and its image must fit inside
  // f(alpha_j e_j).
  std::set<std::string> seen_states;
  // w must be a prefix of f(alpha e) for some last edge e.
  auto fits = [&](const std::string& w, const std::string& alpha, char first) {
    for (char e : extensions(alpha, first)) {
      const std::string fe = image(alpha + e);
      if (w.size() <= fe.size() && fe.compare(0, w.size(), w) == 0) return true;
    }
    return false;
  };
  std::function<void(const std::string&, const std::string&, char, char, bool, bool)> visit =
      [&](const std::string& a1, const std::string& a2, char x, char y, bool done1, bool done2) {
        const std::string key = a1 + "/" + x + "/" + a2 + "/" + y + (done1 ? "1" : "0") + (done2 ? "1" : "0");
        if (!seen_states.insert(key).second) return;
        if (static_cast<int>(a1.size() + a2.size()) > max_depth) throw std::runtime_error("v_set depth cap hit");
        const std::string fa1 = image(a1);
        const std::string fa2 = image(a2);
        for (char e1 : extensions(a1, x)) {
          for (char e2 : extensions(a2, y)) {
            const std::string g1 = a1 + e1;
            const std::string g2 = a2 + e2;
            const std::size_t l = lcp(image(g1), image(g2));
            if (l > fa1.size() && l > fa2.size()) out.insert(normalize_pair(g1, g2));
          }
        }
        const bool grow1 = !done1 && (done2 || fa1.size() <= fa2.size());
        const bool grow2 = !done2 && (done1 || fa2.size() <= fa1.size());
        if (grow1) {
          for (char e : extensions(a1, x)) {
            const std::string n1 = image(a1 + e);
            if (comparable(n1, fa2) && (!done2 || fits(n1, a2, y))) visit(a1 + e, a2, x, y, done1, done2);
          }
        }
        if (grow2) {
          for (char e : extensions(a2, y)) {
            const std::string n2 = image(a2 + e);
            if (comparable(n2, fa1) && (!done1 || fits(n2, a1, x))) visit(a1, a2 + e, x, y, done1, done2);
          }
        }
        if (!done1 && !done2) {
          visit(a1, a2, x, y, true, false);
          visit(a1, a2, x, y, false, true);
        }
      };
  for (char x : letters_) {
    for (char y : letters_) {
      if (x < y && illegal(x, y)) visit("", "", x, y, false, false);
    }
  }
  return out;
}

namespace {

constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(z & kMod) + static_cast<std::uint64_t>(z >> 61);
  if (r >= kMod) r -= kMod;
  return r;
}

std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  if (r >= kMod) r -= kMod;
  return r;
}

struct Hasher {
  std::uint64_t base = 1'000'003;
  std::vector<std::uint64_t> pw{1};
  std::uint64_t power(std::size_t n) {
    while (pw.size() <= n) pw.push_back(mulmod(pw.back(), base));
    return pw[n];
  }
  // hash(a + b) from hash(a), hash(b), |b|
  std::uint64_t cat(std::uint64_t ha, std::uint64_t hb, std::size_t lb) { return addmod(mulmod(ha, power(lb)), hb); }
  std::vector<std::uint64_t> prefixes(const std::string& s) {
    std::vector<std::uint64_t> h(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i) h[i + 1] = addmod(mulmod(h[i], base), static_cast<unsigned char>(s[i]));
    return h;
  }
};

struct Side {
  std::string branch;
  bool vertex = true;
  std::size_t common = 0;
  std::uint64_t hash = 0;
};

}  // namespace

std::vector<RoseMap::Inp> RoseMap::inps(int max_branch, int max_period) const {
  const std::vector<std::string> words = legal_words(max_branch);
  std::map<std::string, Inp> found;
  Hasher h;
  for (int p = 1; p <= max_period; ++p) {
    std::map<char, std::vector<std::uint64_t>> pre;
    for (char c : letters_) pre[c] = h.prefixes(letter_power(c, p));
    // The common word of one branch: a prefix of f^p(alpha) U[0..k).
    std::unordered_map<std::uint64_t, std::vector<Side>> sides;
    for (const std::string& g : words) {
      const std::string alpha = g.substr(0, g.size() - 1);
      const char last = g.back();
      const std::string& u = letter_power(last, p);
      // Concatenation f^p(alpha) as pieces.
      std::vector<std::size_t> offs{0};
      for (char c : alpha) offs.push_back(offs.back() + letter_power(c, p).size());
      const std::size_t fa = offs.back();
      auto at = [&](std::size_t i) -> char {
        if (i >= fa) return u[i - fa];
        const std::size_t j = static_cast<std::size_t>(std::upper_bound(offs.begin(), offs.end(), i) - offs.begin()) - 1;
        return letter_power(alpha[j], p)[i - offs[j]];
      };
      auto prefix_hash = [&](std::size_t len) {
        std::uint64_t acc = 0;
        std::size_t j = 0;
        while (j < alpha.size() && offs[j + 1] <= len) {
          const std::size_t l = offs[j + 1] - offs[j];
          acc = h.cat(acc, pre[alpha[j]][l], l);
          ++j;
        }
        const std::size_t rest = len - offs[j];
        if (rest > 0) acc = h.cat(acc, j < alpha.size() ? pre[alpha[j]][rest] : pre[last][rest], rest);
        return acc;
      };
      // End positions: after occurrence k of `last` in U (k = |U| - 1 is the
      // vertex case), requiring the tail to spell alpha + last.
      for (std::size_t k = 1; k < u.size(); ++k) {
        if (u[k] != last) continue;
        const bool vertex = k + 1 == u.size();
        const std::size_t end = fa + k;  // position of the fixed copy of `last`
        if (end < alpha.size()) continue;
        const std::size_t common = end - alpha.size();
        if (common == 0) continue;
        bool ok = true;
        for (std::size_t i = 0; i < alpha.size() && ok; ++i) ok = at(common + i) == alpha[i];
        if (!ok) continue;
        sides[prefix_hash(common) ^ (common * 0x9E3779B97F4A7C15ULL)].push_back({g, vertex, common, 0});
      }
    }
    for (const auto& [key, list] : sides) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = i + 1; j < list.size(); ++j) {
          const Side& s1 = list[i];
          const Side& s2 = list[j];
          if (s1.common != s2.common || s1.branch[0] == s2.branch[0]) continue;
          if (power(s1.branch, p).compare(0, s1.common, power(s2.branch, p), 0, s2.common) != 0) continue;
          const std::string a = inv(s1.branch) + "|" + s2.branch;
          const std::string b = inv(s2.branch) + "|" + s1.branch;
          Inp rec;
          rec.period = p;
          if (a <= b) {
            rec.path = a;
            rec.head_vertex = s1.vertex;
            rec.tail_vertex = s2.vertex;
          } else {
            rec.path = b;
            rec.head_vertex = s2.vertex;
            rec.tail_vertex = s1.vertex;
          }
          found.emplace(rec.path, rec);  // keeps the least period
        }
      }
    }
  }
  std::vector<Inp> out;
  for (auto& [_, r] : found) out.push_back(r);
  return out;
}

std::map<char, std::string> random_positive_rose(std::mt19937& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::uniform_int_distribution<int> letter(0, rank - 1);
  std::map<char, std::string> m;
  for (int i = 0; i < rank; ++i) {
    std::string w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) w.push_back(static_cast<char>('a' + letter(rng)));
    m[static_cast<char>('a' + i)] = w;
  }
  return m;
}

std::map<char, std::string> random_positive_automorphism(std::mt19937& rng, int rank, int steps,
                                                          std::size_t max_len) {
  std::vector<std::string> img;
  for (int i = 0; i < rank; ++i) img.emplace_back(1, static_cast<char>('a' + i));
  std::uniform_int_distribution<int> pick(0, rank - 1);
  for (int n = 0; n < steps; ++n) {
    const int i = pick(rng);
    int j = pick(rng);
    if (j == i) j = (i + 1) % rank;
    if (img[i].size() + img[j].size() > max_len) continue;
    img[i] = (rng() & 1) ? img[i] + img[j] : img[j] + img[i];
  }
  std::shuffle(img.begin(), img.end(), rng);
  std::map<char, std::string> m;
  for (int i = 0; i < rank; ++i) m[static_cast<char>('a' + i)] = img[i];
  return m;
}

std::string rose_document(const std::map<char, std::string>& images) {
  std::string s = "{\"rose\": {";
  bool first = true;
  for (const auto& [c, w] : images) {
    if (!first) s += ", ";
    first = false;
    s += "\"" + std::string(1, c) + "\": \"" + w + "\"";
  }
  return s + "}}";
}

bool subgroup_contains(const std::vector<std::string>& gens, const std::string& w) {
  struct Arc {
    int from, to;
    char label;  // lowercase; the reverse arc reads the uppercase letter
  };
  std::vector<Arc> arcs;
  int vertices = 1;
  for (const std::string& g : gens) {
    const std::string r = reduce(g);
    int at = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const int next = i + 1 == r.size() ? 0 : vertices++;
      const char c = r[i];
      if (std::islower(static_cast<unsigned char>(c))) {
        arcs.push_back({at, next, c});
      } else {
        arcs.push_back({next, at, inv(c)});
      }
      at = next;
    }
  }
  std::vector<int> parent(vertices);
  for (int i = 0; i < vertices; ++i) parent[i] = i;
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::map<std::pair<int, char>, int> step;
  for (bool folded = true; folded;) {
    folded = false;
    step.clear();
    for (const Arc& a : arcs) {
      const int u = find(a.from), v = find(a.to);
      for (const auto& [key, target] : {std::pair{std::pair{u, a.label}, v}, std::pair{std::pair{v, inv(a.label)}, u}}) {
        const auto [it, fresh] = step.emplace(key, target);
        if (!fresh && find(it->second) != find(target)) {
          parent[find(it->second)] = find(target);
          folded = true;
        }
      }
      if (folded) break;
    }
  }
  int at = find(0);
  for (char c : reduce(w)) {
    const auto it = step.find({at, c});
    if (it == step.end()) return false;
    at = find(it->second);
  }
  return at == find(0);
}

}  // namespace oracle
