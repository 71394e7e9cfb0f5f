#include "twistscl/trace_words.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistscl {

Generator::Generator(int index, int sign) : index(index), sign(sign) {
  if (index < 1) throw std::invalid_argument("generator index must be >= 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("generator sign must be +1 or -1");
}

bool generator_less(const Generator& a, const Generator& b) {
  if (a.index != b.index) return a.index < b.index;
  return a.sign > b.sign;
}

bool commutes(int i, int j) { return i > j ? i - j >= 2 : j - i >= 2; }

Word::Word(int alphabet_size) : alphabet_size_(alphabet_size) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
}

Word::Word(int alphabet_size, std::vector<Generator> letters) : Word(alphabet_size) {
  for (const auto& g : letters)
    if (g.index > alphabet_size)
      throw std::invalid_argument("letter x" + std::to_string(g.index) + " outside alphabet of size " +
                                  std::to_string(alphabet_size));
  letters_ = std::move(letters);
}

Word Word::from_indices(int alphabet_size, std::span<const int> indices) {
  std::vector<Generator> letters;
  letters.reserve(indices.size());
  for (int i : indices) letters.emplace_back(i, 1);
  return Word(alphabet_size, std::move(letters));
}

Word Word::from_indices(int alphabet_size, std::initializer_list<int> indices) {
  return from_indices(alphabet_size, std::span<const int>(indices.begin(), indices.size()));
}

Word Word::inverse() const {
  Word out(*this);
  std::reverse(out.letters_.begin(), out.letters_.end());
  for (auto& g : out.letters_) g.sign = -g.sign;
  return out;
}

Word Word::operator*(const Word& rhs) const {
  if (alphabet_size_ != rhs.alphabet_size_) throw std::invalid_argument("alphabet sizes differ");
  Word out(*this);
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return out;
}

std::string Word::str(std::string_view symbol) const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& g : letters_) {
    if (!out.empty()) out += ' ';
    out += symbol;
    out += std::to_string(g.index);
    if (g.sign < 0) out += "^-1";
  }
  return out;
}

HeapNormalForm normalize(const Word& w) {
  // Free reduction modulo commutation: a new letter cancels against the last
  // letter it cannot slide past, if that letter is its inverse.
  std::vector<Generator> reduced;
  reduced.reserve(w.size());
  for (const auto& a : w.letters()) {
    auto p = reduced.rbegin();
    while (p != reduced.rend() && commutes(p->index, a.index)) ++p;
    if (p != reduced.rend() && *p == a.inverse())
      reduced.erase(std::next(p).base());
    else
      reduced.push_back(a);
  }

  // Lexicographically least linearization of the heap: repeatedly take the
  // smallest letter that can slide to the front.
  HeapNormalForm nf;
  nf.letters_.reserve(reduced.size());
  while (!reduced.empty()) {
    std::size_t best = 0;
    for (std::size_t p = 1; p < reduced.size(); ++p) {
      const bool free = std::all_of(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(p),
                                    [&](const Generator& q) { return commutes(q.index, reduced[p].index); });
      if (free && generator_less(reduced[p], reduced[best])) best = p;
    }
    nf.letters_.push_back(reduced[best]);
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return nf;
}

bool equal(const Word& lhs, const Word& rhs) {
  if (lhs.alphabet_size() != rhs.alphabet_size()) throw std::invalid_argument("alphabet sizes differ");
  return normalize(lhs) == normalize(rhs);
}

Word conjugate(const Word& w, const Word& by) { return by * w * by.inverse(); }

Lemma8Endpoints lemma8_endpoints(int n) {
  if (n < 1) throw std::invalid_argument("lemma8_endpoints: n must be >= 1");
  std::vector<int> interleaved, straight;
  for (int i = 1; i <= n; i += 2) interleaved.push_back(i);
  for (int i = 2; i <= n; i += 2) interleaved.push_back(i);
  for (int i = 1; i <= n; ++i) straight.push_back(i);
  return {Word::from_indices(n, interleaved), Word::from_indices(n, straight)};
}

namespace {

// Indices in (from, n] with the given parity, ascending.
void append_parity_tail(std::vector<int>& out, int from, int n, int parity) {
  for (int i = from + 1; i <= n; ++i)
    if (i % 2 == parity) out.push_back(i);
}

// Conjugator carrying X_j to X_{j-1}: the tail of X_j of parity opposite to j.
Word link_conjugator(int n, int j) {
  std::vector<int> idx;
  append_parity_tail(idx, j, n, (j + 1) % 2);
  return Word::from_indices(n, idx);
}

}  // namespace

Word lemma8_chain_word(int n, int j) {
  if (n < 1 || j < 1 || j > n) throw std::invalid_argument("lemma8_chain_word: need 1 <= j <= n");
  std::vector<int> idx;
  for (int i = 1; i <= j; ++i) idx.push_back(i);
  append_parity_tail(idx, j, n, j % 2);
  append_parity_tail(idx, j, n, (j + 1) % 2);
  return Word::from_indices(n, idx);
}

ConjugationCertificate lemma8_verify(int n) {
  if (n < 1) throw std::invalid_argument("lemma8_verify: n must be >= 1");
  ConjugationCertificate cert;
  cert.n = n;
  for (int j = 1; j <= n; ++j) cert.chain.push_back(lemma8_chain_word(n, j));

  cert.total_conjugator = Word(n);
  bool all_steps = true;
  for (int j = 2; j <= n; ++j) {
    ConjugationStep step;
    step.conjugator = link_conjugator(n, j);
    step.before = cert.chain[static_cast<std::size_t>(j - 1)];
    step.after = cert.chain[static_cast<std::size_t>(j - 2)];
    step.holds = equal(conjugate(step.before, step.conjugator), step.after);
    all_steps = all_steps && step.holds;
    cert.total_conjugator = cert.total_conjugator * step.conjugator;
    cert.steps.push_back(std::move(step));
  }

  const auto ends = lemma8_endpoints(n);
  cert.endpoints_match = equal(cert.chain.front(), ends.interleaved) && equal(cert.chain.back(), ends.straight);
  cert.total_holds = equal(conjugate(ends.straight, cert.total_conjugator), ends.interleaved);
  cert.valid = all_steps && cert.endpoints_match && cert.total_holds;
  return cert;
}

std::size_t ConjugationCertificate::valid_steps() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const auto& s) { return s.holds; }));
}

std::string ConjugationCertificate::text() const {
  std::ostringstream os;
  os << "conjugation certificate, n = " << n << "\n";
  for (std::size_t i = 0; i < chain.size(); ++i) os << "  X" << i + 1 << " = " << chain[i].str() << "\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    os << "  step " << i + 1 << ": (" << s.conjugator.str() << ") X" << i + 2 << " (" << s.conjugator.str()
       << ")^-1 = X" << i + 1 << "  " << (s.holds ? "ok" : "FAILED") << "\n";
  }
  os << "  total conjugator: " << total_conjugator.str() << "  " << (total_holds ? "ok" : "FAILED") << "\n";
  os << valid_steps() << "/" << steps.size() << " steps valid, endpoints " << (endpoints_match ? "match" : "MISMATCH")
     << ", certificate " << (valid ? "valid" : "INVALID") << "\n";
  return os.str();
}

nlohmann::json ConjugationCertificate::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["chain"] = nlohmann::json::array();
  for (const auto& w : chain) j["chain"].push_back(w.str());
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps)
    j["steps"].push_back(
        {{"conjugator", s.conjugator.str()}, {"before", s.before.str()}, {"after", s.after.str()}, {"holds", s.holds}});
  j["total_conjugator"] = total_conjugator.str();
  j["endpoints_match"] = endpoints_match;
  j["valid"] = valid;
  return j;
}

}  // namespace twistscl
