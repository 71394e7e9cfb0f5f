#include "twistscl/homology.hpp"

#include "twistscl/proof_replay.hpp"

namespace twistscl {

namespace {

void require_chain_h(int g, int h) {
  require_genus(g);
  if (h < 1 || h > g)
    throw std::out_of_range("chain relation needs 1 <= h <= g, got h = " + std::to_string(h));
}

void require_block_h(int g, int h) {
  if (g < 2 || h < 1 || h > g / 2)
    throw std::out_of_range("need g >= 2 and 1 <= h <= floor(g/2), got (g, h) = (" + std::to_string(g) + ", " +
                            std::to_string(h) + ")");
}

SymplecticMatrix<> identity(int g) { return SymplecticMatrix<>::Identity(2 * g, 2 * g); }

}  // namespace

nlohmann::json HomologyCheck::to_json() const {
  nlohmann::json j{{"name", name}, {"params", params}, {"passed", passed}, {"level", "homology"}};
  if (!passed) j["max_deviation"] = max_deviation;
  return j;
}

HomologyCheck compare_matrices(std::string name, nlohmann::json params, const SymplecticMatrix<>& actual,
                               const SymplecticMatrix<>& expected) {
  HomologyCheck out{std::move(name), std::move(params), actual == expected, "0"};
  if (!out.passed) {
    BigInt worst = 0;
    for (Eigen::Index i = 0; i < actual.rows(); ++i)
      for (Eigen::Index j = 0; j < actual.cols(); ++j) worst = std::max(worst, BigInt(abs(actual(i, j) - expected(i, j))));
    out.max_deviation = worst.str();
  }
  return out;
}

Word twist_run(int g, int first, int last) {
  std::vector<int> idx;
  if (first <= last)
    for (int i = first; i <= last; ++i) idx.push_back(i);
  else
    for (int i = first; i >= last; --i) idx.push_back(i);
  return Word::from_indices(2 * g + 1, idx);
}

Word word_power(const Word& w, int times) {
  Word out(w.alphabet_size());
  for (int i = 0; i < times; ++i) out = out * w;
  return out;
}

HomologyCheck check_chain_relation(int g, int h) { return check_chain_relation(g, h, 4 * h + 2); }

HomologyCheck check_chain_relation(int g, int h, int exponent) {
  require_chain_h(g, h);
  const auto chain = evaluate(twist_run(g, 1, 2 * h), g);
  return compare_matrices("chain_relation", {{"g", g}, {"h", h}, {"exponent", exponent}},
                          matrix_power(chain, static_cast<unsigned>(exponent)), identity(g));
}

HomologyCheck check_hyperelliptic(int g) {
  require_genus(g);
  Word iota = twist_run(g, 1, 2 * g + 1) * twist_run(g, 2 * g + 1, 1);
  const auto rho = evaluate(iota, g);
  auto out = compare_matrices("hyperelliptic", {{"g", g}}, rho, SymplecticMatrix<>(-identity(g)));
  for (int i = 1; i <= 2 * g + 1 && out.passed; ++i) {
    const auto t = twist_matrix(g, i);
    if (SymplecticMatrix<>(rho * t) != SymplecticMatrix<>(t * rho)) {
      out.passed = false;
      out.params["fails_commuting_with"] = i;
    }
  }
  return out;
}

HomologyCheck check_T1_power(int g, int h) { return check_T1_power(g, h, 4 * h); }

HomologyCheck check_T1_power(int g, int h, int exponent) {
  require_block_h(g, h);
  const auto blocks = build_blocks(g, h);
  const auto& first = blocks.front();
  const auto& last = blocks[blocks.size() - 2];  // T_{k+2}; S is at the back
  const auto e = static_cast<unsigned>(exponent);
  const nlohmann::json params{{"g", g}, {"h", h}, {"exponent", exponent}};
  auto out = compare_matrices("T1_power", params, matrix_power(evaluate(first.word, g), e), identity(g));
  if (out.passed) {
    out = compare_matrices("T1_power", params, matrix_power(evaluate(last.word, g), e), identity(g));
    if (!out.passed) out.params["fails_on"] = last.label;
  } else {
    out.params["fails_on"] = first.label;
  }
  return out;
}

HomologyCheck check_eq5(int g, int h) {
  require_block_h(g, h);
  const auto blocks = build_blocks(g, h);
  auto out = check_eq5(g, std::span<const ChainBlock>(blocks));
  out.params["h"] = h;
  return out;
}

HomologyCheck check_eq5(int g, std::span<const ChainBlock> blocks) {
  require_genus(g);
  Word product(2 * g + 1);
  for (const auto& b : blocks)
    if (b.is_T()) product = product * b.word;
  for (const auto& b : blocks)
    if (!b.is_T()) product = product * b.word;
  return compare_matrices("eq5", {{"g", g}}, evaluate(product, g), SymplecticMatrix<>(-identity(g)));
}

HomologyCheck check_braid_relations(int g) {
  require_genus(g);
  HomologyCheck out{"braid_relations", {{"g", g}}, true, "0"};
  for (int i = 1; i <= 2 * g; ++i) {
    const auto lhs = evaluate(Word::from_indices(2 * g + 1, {i, i + 1, i}), g);
    const auto rhs = evaluate(Word::from_indices(2 * g + 1, {i + 1, i, i + 1}), g);
    auto c = compare_matrices("braid_relations", {{"g", g}, {"pair", {i, i + 1}}}, lhs, rhs);
    if (!c.passed) return c;
  }
  return out;
}

HomologyCheck check_commutation_relations(int g) {
  require_genus(g);
  HomologyCheck out{"commutation_relations", {{"g", g}}, true, "0"};
  for (int i = 1; i <= 2 * g + 1; ++i)
    for (int j = i + 2; j <= 2 * g + 1; ++j) {
      const auto lhs = evaluate(Word::from_indices(2 * g + 1, {i, j}), g);
      const auto rhs = evaluate(Word::from_indices(2 * g + 1, {j, i}), g);
      auto c = compare_matrices("commutation_relations", {{"g", g}, {"pair", {i, j}}}, lhs, rhs);
      if (!c.passed) return c;
    }
  return out;
}

HomologyCheck check_twists_symplectic(int g) {
  require_genus(g);
  HomologyCheck out{"twists_symplectic", {{"g", g}}, true, "0"};
  for (int i = 1; i <= 2 * g + 1; ++i) {
    const auto M = twist_matrix(g, i);
    if (!is_symplectic(M) || bareiss_determinant(M) != BigInt(1)) {
      out.passed = false;
      out.params["fails_on"] = i;
      return out;
    }
  }
  return out;
}

}  // namespace twistscl
