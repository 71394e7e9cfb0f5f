#pragma once

// Words in the free partially commutative group on x_1..x_n in which x_i and
// x_j commute exactly when |i - j| >= 2.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace twistscl {

/// A signed generator x_index^sign. Indices are 1-based.
struct Generator {
  int index = 1;
  int sign = 1;

  Generator() = default;
  Generator(int index, int sign = 1);

  Generator inverse() const { return Generator(index, -sign); }

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordering used by the canonical form: by index, positive power first.
bool generator_less(const Generator& a, const Generator& b);

/// True iff x_i and x_j commute as distinct generators, i.e. |i - j| >= 2.
bool commutes(int i, int j);

class Word {
 public:
  Word() = default;
  explicit Word(int alphabet_size);
  Word(int alphabet_size, std::vector<Generator> letters);

  /// Positive word x_{i1} x_{i2} ... from a list of indices.
  static Word from_indices(int alphabet_size, std::span<const int> indices);
  static Word from_indices(int alphabet_size, std::initializer_list<int> indices);

  int alphabet_size() const { return alphabet_size_; }
  const std::vector<Generator>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word operator*(const Word& rhs) const;

  /// e.g. "x1 x3^-1 x2"; the empty word prints as "1".
  std::string str(std::string_view symbol = "x") const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  int alphabet_size_ = 0;
  std::vector<Generator> letters_;
};

/// Lexicographically least freely-reduced representative of a group element.
class HeapNormalForm {
 public:
  const std::vector<Generator>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }

  friend bool operator==(const HeapNormalForm&, const HeapNormalForm&) = default;

 private:
  friend HeapNormalForm normalize(const Word& w);
  std::vector<Generator> letters_;
};

HeapNormalForm normalize(const Word& w);

/// Group equality. Throws std::invalid_argument on mismatched alphabets.
bool equal(const Word& lhs, const Word& rhs);

/// by * w * by^-1, unreduced.
Word conjugate(const Word& w, const Word& by);

struct Lemma8Endpoints {
  Word interleaved;  // x1 x3 x5 ... * x2 x4 ...
  Word straight;     // x1 x2 ... xn
};

Lemma8Endpoints lemma8_endpoints(int n);

struct ConjugationStep {
  Word conjugator;
  Word before;  // X_{i+1}
  Word after;   // X_i, expected to equal conjugator * before * conjugator^-1
  bool holds = false;
};

/// Chain X_1 (interleaved) ... X_n (straight) with one conjugation per link.
struct ConjugationCertificate {
  int n = 0;
  std::vector<Word> chain;
  std::vector<ConjugationStep> steps;
  Word total_conjugator;  // total * straight * total^-1 == interleaved
  bool endpoints_match = false;
  bool total_holds = false;
  bool valid = false;

  std::size_t valid_steps() const;
  std::string text() const;
  nlohmann::json to_json() const;
};

/// Intermediate word X_j = x_1..x_j * (indices > j with j's parity) * (the rest).
Word lemma8_chain_word(int n, int j);

ConjugationCertificate lemma8_verify(int n);

}  // namespace twistscl
