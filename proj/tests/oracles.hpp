#pragma once

// Test-only reference procedures. None of these call into the library's
// normal form, recursion solver or rank-one twist evaluation.

#include <cstdint>
#include <deque>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "twistscl/homology.hpp"
#include "twistscl/trace_words.hpp"

namespace oracle {

// Words as byte strings: letter (i, s) -> 2i + (s < 0).
inline std::string encode(const twistscl::Word& w) {
  std::string s;
  for (const auto& g : w.letters()) s.push_back(static_cast<char>(2 * g.index + (g.sign < 0 ? 1 : 0)));
  return s;
}

inline int idx(char c) { return static_cast<unsigned char>(c) / 2; }

// Every word reachable by swapping adjacent letters at index distance >= 2 or
// deleting an adjacent x x^-1 pair.
inline std::unordered_set<std::string> move_closure(const std::string& start) {
  std::unordered_set<std::string> seen{start};
  std::deque<std::string> queue{start};
  while (!queue.empty()) {
    const std::string w = queue.front();
    queue.pop_front();
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      const int a = idx(w[p]), b = idx(w[p + 1]);
      std::string next;
      if (std::abs(a - b) >= 2) {
        next = w;
        std::swap(next[p], next[p + 1]);
      } else if (a == b && w[p] != w[p + 1]) {
        next = w.substr(0, p) + w.substr(p + 2);
      } else {
        continue;
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return seen;
}

// Group equality by brute force: the rewriting system is confluent modulo
// commutation, so equal elements share a word in both move closures.
inline bool bfs_equal(const twistscl::Word& u, const twistscl::Word& v) {
  const auto left = move_closure(encode(u));
  for (const auto& w : move_closure(encode(v)))
    if (left.count(w)) return true;
  return false;
}

inline twistscl::Word random_word(std::mt19937& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), index(1, n), coin(0, 1);
  std::vector<twistscl::Generator> letters;
  const int L = len(rng);
  for (int i = 0; i < L; ++i) letters.emplace_back(index(rng), coin(rng) ? 1 : -1);
  return twistscl::Word(n, letters);
}

// Transvection built column by column from <x, v> = x^T J v with an explicit J.
inline twistscl::SymplecticMatrix<> transvection_by_definition(int g, int i) {
  using namespace twistscl;
  const auto J = intersection_form<BigInt>(g);
  const auto v = chain_classes<BigInt>(g)[static_cast<std::size_t>(i - 1)];
  SymplecticMatrix<> M(2 * g, 2 * g);
  for (int c = 0; c < 2 * g; ++c) {
    HomologyClass<BigInt> e = HomologyClass<BigInt>::Zero(2 * g);
    e(c) = 1;
    const BigInt pairing = (e.transpose() * J * v)(0, 0);
    M.col(c) = e + pairing * v;
  }
  return M;
}

// Plain product of full twist matrices, left to right.
inline twistscl::SymplecticMatrix<> naive_evaluate(const twistscl::Word& w, int g) {
  using namespace twistscl;
  SymplecticMatrix<> M = SymplecticMatrix<>::Identity(2 * g, 2 * g);
  for (const auto& letter : w.letters()) M = (M * twist_matrix(g, letter.index, letter.sign)).eval();
  return M;
}

// Small exact fraction on __int128, independent of Boost.
struct Frac {
  __int128 num = 0, den = 1;
  static __int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t < 0 ? -t : t;
    }
    return a;
  }
  static Frac make(__int128 n, __int128 d) {
    if (d < 0) n = -n, d = -d;
    const __int128 c = gcd(n, d);
    return {n / c, d / c};
  }
  Frac operator+(const Frac& o) const { return make(num * o.den + o.num * den, den * o.den); }
  Frac operator*(const Frac& o) const { return make(num * o.num, den * o.den); }
  Frac operator/(const Frac& o) const { return make(num * o.den, den * o.num); }
  bool operator==(const Frac&) const = default;
};

// Direct transcription of the recursion without memoization; fine for g <= 40.
inline Frac recursion_bound(int g, int h) {
  if (h > g / 2) h = g - h;
  if (h == 0) return {0, 1};
  const int k = g / h, r = g - k * h;
  (void)k;
  const Frac pre = Frac::make(static_cast<__int128>(h) * (2 * h + 1) * (2 * g - 2 * h + 1),
                              static_cast<__int128>(g + 1) * (2 * g + 1) - static_cast<__int128>(2 * g - 2 * h + 1) * r);
  return pre * (recursion_bound(g, r) / Frac::make(2 * r + 1, 1) + Frac::make(1, 1));
}

}  // namespace oracle
