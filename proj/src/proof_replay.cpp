#include "twistscl/proof_replay.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "twistscl/homology.hpp"

namespace twistscl {

namespace {

Rational q(long long num, long long den = 1) { return make_rational(num, den); }

Rational abs_value(const Rational& v) { return v < 0 ? Rational(-v) : v; }

void require_replay_range(int g, int h) {
  if (g < 2 || h < 1 || h > g / 2)
    throw std::out_of_range("(g, h) = (" + std::to_string(g) + ", " + std::to_string(h) +
                            "): h out of range, need g >= 2 and 1 <= h <= " + std::to_string(std::max(g / 2, 0)));
}

ChainBlock make_block(int g, std::string label, int position, int first, int last, bool squared_first,
                      Direction dir) {
  ChainBlock b;
  b.label = std::move(label);
  b.position = position;
  b.squared_first = squared_first;
  b.direction = dir;
  if (dir == Direction::ascending) {
    b.range = {first, last};
    b.word = first <= last ? twist_run(g, first, last) : Word(2 * g + 1);
  } else {
    b.range = {last, first};
    b.word = twist_run(g, first, last);
  }
  if (squared_first) b.word = Word::from_indices(2 * g + 1, {first}) * b.word;
  return b;
}

bool blocks_disjoint(const ChainBlock& a, const ChainBlock& b) {
  for (const auto& x : a.word.letters())
    for (const auto& y : b.word.letters())
      if (!commutes(x.index, y.index)) return false;
  return true;
}

// T-blocks are compared by their position in `ts` (1-based), not by label.
bool pattern_over(const std::vector<ChainBlock>& ts, BlockPairs* offenders) {
  bool ok = true;
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t j = i + 2; j < ts.size(); ++j)
      if (!blocks_disjoint(ts[i], ts[j])) {
        ok = false;
        if (offenders) offenders->emplace_back(ts[i].label, ts[j].label);
      }
  return ok;
}

std::string pairs_str(const BlockPairs& pairs) {
  std::string out;
  for (const auto& [a, b] : pairs) out += (out.empty() ? "" : ", ") + a + "/" + b;
  return out;
}

// Replaces block symbol y_i by the twist word of the i-th effective block.
Word substitute(const Word& symbols, const std::vector<ChainBlock>& blocks, int g) {
  Word out(2 * g + 1);
  for (const auto& letter : symbols.letters()) {
    const auto& w = blocks[static_cast<std::size_t>(letter.index - 1)].word;
    out = out * (letter.sign > 0 ? w : w.inverse());
  }
  return out;
}

nlohmann::json rational_json(const Rational& v) {
  return {{"num", numerator_of(v).str()}, {"den", denominator_of(v).str()}};
}

nlohmann::json form_json(const LinearForm& f) { return {{"phi_h", to_string(f.phi_h)}, {"phi_r", to_string(f.phi_r)}}; }

}  // namespace

std::vector<ChainBlock> build_blocks(int g, int h) {
  require_replay_range(g, h);
  const auto [k, r] = decompose(g, h);
  std::vector<ChainBlock> blocks;
  const auto T = [](int i) { return "T" + std::to_string(i); };

  blocks.push_back(make_block(g, T(1), 1, 1, 2 * h, true, Direction::ascending));
  for (int i = 2; i <= k - 1; ++i)
    blocks.push_back(make_block(g, T(i), i, 2 * (i - 1) * h + 1, 2 * i * h, false, Direction::ascending));
  blocks.push_back(make_block(g, T(k), k, 2 * (k - 1) * h + 1, 2 * (g - h), false, Direction::ascending));
  blocks.push_back(make_block(g, T(k + 1), k + 1, 2 * (g - h) + 1, 2 * g, false, Direction::ascending));
  blocks.push_back(make_block(g, T(k + 2), k + 2, 2 * g + 1, 2 * (g - h) + 2, true, Direction::descending));
  blocks.push_back(make_block(g, "S", 0, 2 * (g - h) + 1, 2, false, Direction::descending));
  return blocks;
}

bool check_commutation_pattern(const std::vector<ChainBlock>& blocks, BlockPairs* offenders) {
  std::vector<ChainBlock> ts;
  for (const auto& b : blocks)
    if (b.is_T()) ts.push_back(b);
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
  // Raw labels: a gap in positions still counts as distance.
  bool ok = true;
  for (const auto& a : ts)
    for (const auto& b : ts)
      if (b.position - a.position >= 2 && !blocks_disjoint(a, b)) {
        ok = false;
        if (offenders) offenders->emplace_back(a.label, b.label);
      }
  return ok;
}

std::vector<ChainBlock> effective_blocks(const std::vector<ChainBlock>& blocks) {
  std::vector<ChainBlock> ts;
  for (const auto& b : blocks)
    if (b.is_T() && !b.word.empty()) ts.push_back(b);
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return a.position < b.position; });
  return ts;
}

bool check_effective_commutation_pattern(const std::vector<ChainBlock>& blocks, BlockPairs* offenders) {
  return pattern_over(effective_blocks(blocks), offenders);
}

std::string LinearForm::str() const {
  std::string out;
  auto term = [&](const Rational& c, const char* sym) {
    if (c == 0) return;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    out += "(" + to_string(abs_value(c)) + ")" + sym;
  };
  term(phi_h, "phi_h");
  term(phi_r, "phi_r");
  return out.empty() ? "0" : out;
}

const LinearForm& PhiLedger::entry(const std::string& label) const {
  for (const auto& [l, f] : entries)
    if (l == label) return f;
  throw std::out_of_range("no ledger entry " + label);
}

PhiLedger assemble_ledger(int g, int h) {
  require_replay_range(g, h);
  PhiLedger L;
  L.g = g;
  L.h = h;
  const auto dec = decompose(g, h);
  L.k = dec.k;
  L.r = dec.r;
  const int k = L.k, r = L.r;
  L.phi_r_is_zero = r == 0;

  const LinearForm corner{q(1, 4LL * h), 0};       // T_1, T_{k+2}
  const LinearForm chain{q(1, 4LL * h + 2), 0};    // T_2..T_{k-1}, T_{k+1}
  const LinearForm rest{0, r > 0 ? q(1, 4LL * r + 2) : Rational(0)};  // T_k
  const LinearForm tail{q(1, 4LL * (g - h) + 2), 0};                  // S

  L.entries.emplace_back("T1", corner);
  for (int i = 2; i <= k - 1; ++i) L.entries.emplace_back("T" + std::to_string(i), chain);
  L.entries.emplace_back("T" + std::to_string(k), rest);
  L.entries.emplace_back("T" + std::to_string(k + 1), chain);
  L.entries.emplace_back("T" + std::to_string(k + 2), corner);
  L.entries.emplace_back("S", tail);

  L.product_value = -L.entry("S");
  L.block_sum = LinearForm{0, 0};
  for (const auto& [label, f] : L.entries)
    if (label != "S") L.block_sum = L.block_sum + f;

  const LinearForm gap = L.product_value - L.block_sum;
  L.same_signed = (gap.phi_h < 0 && gap.phi_r <= 0) || (gap.phi_h > 0 && gap.phi_r >= 0);
  L.defect_coeff_h = abs_value(gap.phi_h);
  L.defect_coeff_r = abs_value(gap.phi_r);

  // c_h |phi_h| <= c_r |phi_r| + D  =>  |phi_h|/2D <= (1/2c_h) (2 c_r |phi_r|/2D + 1)
  L.prefactor = Rational(1) / (2 * L.defect_coeff_h);
  L.recursive_weight = 2 * L.defect_coeff_r;
  L.sub_bound = r == 0 ? Rational(0) : assemble_ledger(g, r).derived_bound;
  L.derived_bound = L.prefactor * (L.recursive_weight * L.sub_bound + 1);
  return L;
}

nlohmann::json PhiLedger::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::object();
  for (const auto& [label, f] : entries) j["entries"][label] = form_json(f);
  j["product_value"] = form_json(product_value);
  j["block_sum"] = form_json(block_sum);
  j["defect_coefficients"] = {{"phi_h", to_string(defect_coeff_h)}, {"phi_r", to_string(defect_coeff_r)}, {"D", "1"}};
  j["same_signed"] = same_signed;
  j["phi_r_is_zero"] = phi_r_is_zero;
  j["prefactor"] = to_string(prefactor);
  j["recursive_weight"] = to_string(recursive_weight);
  j["sub_bound"] = to_string(sub_bound);
  j["derived_bound"] = to_string(derived_bound);
  return j;
}

bool ReplayReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.skipped && !c.passed) return false;
  return true;
}

const ReplayCheck* ReplayReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ReplayReport replay_report(int g, int h, const ReplayOptions& options) {
  require_replay_range(g, h);
  ReplayReport rep;
  rep.g = g;
  rep.h = h;
  const auto dec = decompose(g, h);
  rep.k = dec.k;
  rep.r = dec.r;
  rep.blocks = build_blocks(g, h);

  auto add = [&](std::string name, bool passed, std::string detail = {}) {
    rep.checks.push_back({std::move(name), passed, false, std::move(detail)});
  };
  const bool homology = options.homology_genus_limit <= 0 || g <= options.homology_genus_limit;
  auto add_homology = [&](std::string name, auto&& run) {
    if (!homology) {
      rep.checks.push_back({std::move(name), false, true, "homology checks limited to g <= " +
                                                              std::to_string(options.homology_genus_limit)});
      return;
    }
    auto [passed, detail] = run();
    add(std::move(name), passed, std::move(detail));
  };

  BlockPairs raw_offenders, offenders;
  const bool raw = check_commutation_pattern(rep.blocks, &raw_offenders);
  rep.findings.push_back({"raw_label_commutation", raw, false,
                          raw ? "" : "label distance >= 2 but adjacent curves: " + pairs_str(raw_offenders) +
                                         " (empty T" + std::to_string(rep.k) + " is the identity)"});
  add("commutation_pattern", check_effective_commutation_pattern(rep.blocks, &offenders), pairs_str(offenders));

  const auto eff = effective_blocks(rep.blocks);
  const int m = static_cast<int>(eff.size());

  {
    const auto& T1 = rep.blocks.front();
    const auto& Tk2 = rep.blocks[rep.blocks.size() - 2];
    const auto& Tk = *std::find_if(rep.blocks.begin(), rep.blocks.end(), [&](const auto& b) { return b.position == rep.k; });
    const auto& S = rep.blocks.back();
    Word all(2 * g + 1);
    for (const auto& b : rep.blocks) all = all * b.word;
    const Word expected = Word::from_indices(2 * g + 1, {1}) * twist_run(g, 1, 2 * g + 1) *
                          Word::from_indices(2 * g + 1, {2 * g + 1}) * twist_run(g, 2 * g, 2);
    const bool ok = Tk.word.size() == static_cast<std::size_t>(2 * rep.r) &&
                    T1.word.size() == static_cast<std::size_t>(2 * h + 1) &&
                    Tk2.word.size() == static_cast<std::size_t>(2 * h + 1) &&
                    S.word.size() == static_cast<std::size_t>(2 * (g - h)) && all == expected;
    add("word_length_bookkeeping", ok, "total " + std::to_string(all.size()) + " letters");
  }

  const auto cert = lemma8_verify(m);
  add("lemma8_certificate", cert.valid,
      std::to_string(cert.valid_steps()) + "/" + std::to_string(cert.steps.size()) + " steps over " +
          std::to_string(m) + " blocks");

  add_homology("lemma8_rearrangement_homology", [&] {
    const auto ends = lemma8_endpoints(m);
    const Word lhs = substitute(conjugate(ends.straight, cert.total_conjugator), eff, g);
    const Word rhs = substitute(ends.interleaved, eff, g);
    return std::pair(evaluate(lhs, g) == evaluate(rhs, g), std::string{});
  });

  add_homology("block_commutation_homology", [&] {
    for (std::size_t i = 0; i < eff.size(); ++i)
      for (std::size_t j = i + 2; j < eff.size(); ++j) {
        const auto a = evaluate(eff[i].word, g);
        const auto b = evaluate(eff[j].word, g);
        if (SymplecticMatrix<>(a * b) != SymplecticMatrix<>(b * a))
          return std::pair(false, eff[i].label + "/" + eff[j].label);
      }
    return std::pair(true, std::string{});
  });

  add_homology("hyperelliptic", [&] { return std::pair(check_hyperelliptic(g).passed, std::string{}); });
  add_homology("chain_relation", [&] {
    auto c = check_chain_relation(g, h);
    return std::pair(c.passed, c.passed ? std::string{} : "max deviation " + c.max_deviation);
  });
  add_homology("T1_power", [&] {
    auto c = check_T1_power(g, h);
    return std::pair(c.passed, c.passed ? std::string{} : "max deviation " + c.max_deviation);
  });
  add_homology("eq5", [&] {
    auto c = check_eq5(g, h);
    return std::pair(c.passed, c.passed ? std::string{} : "max deviation " + c.max_deviation);
  });
  add_homology("block_powers", [&] {
    // Homology shadows of the power relations behind each ledger entry.
    for (const auto& b : rep.blocks) {
      if (b.word.empty()) continue;
      int e = 0;
      if (b.label == "S")
        e = 4 * (g - h) + 2;
      else if (b.squared_first)
        e = 4 * h;
      else if (b.position == rep.k)
        e = 4 * rep.r + 2;
      else
        e = 4 * h + 2;
      const auto p = matrix_power(evaluate(b.word, g), static_cast<unsigned>(e));
      if (p != SymplecticMatrix<>::Identity(2 * g, 2 * g))
        return std::pair(false, b.label + "^" + std::to_string(e) + " != I");
    }
    return std::pair(true, std::string{});
  });

  rep.ledger = assemble_ledger(g, h);
  add("coefficient_identity",
      coefficient_identity_check(g, h) && rep.ledger.defect_coeff_h == defect_weight_closed_form(g, h),
      "phi_h weight " + to_string(rep.ledger.defect_coeff_h));
  add("same_signed_coefficients", rep.ledger.same_signed);

  rep.bound = rep.ledger.derived_bound;
  BoundSolver solver;
  rep.closed_form_bound = solver.value(g, h);
  add("bound_matches_closed_form", rep.bound == rep.closed_form_bound,
      to_string(rep.bound) + " vs " + to_string(rep.closed_form_bound));
  return rep;
}

nlohmann::json ReplayReport::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["h"] = h;
  j["k"] = k;
  j["r"] = r;
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : blocks)
    j["blocks"].push_back({{"label", b.label},
                           {"word", b.word.str("t")},
                           {"range", b.range.empty() ? nlohmann::json(nullptr) : nlohmann::json{b.range.first, b.range.last}},
                           {"squared_first", b.squared_first},
                           {"direction", b.direction == Direction::ascending ? "ascending" : "descending"}});
  j["checks"] = nlohmann::json::object();
  for (const auto& c : checks) j["checks"][c.name] = c.skipped ? "skipped" : (c.passed ? "pass" : "fail");
  j["findings"] = nlohmann::json::object();
  for (const auto& f : findings) j["findings"][f.name] = {{"holds", f.passed}, {"detail", f.detail}};
  j["ledger"] = ledger.to_json();
  j["bound"] = rational_json(bound);
  j["verification_level"] = "homology-level verification";
  j["all_passed"] = all_passed();
  return j;
}

std::string ReplayReport::text() const {
  std::ostringstream os;
  os << "replay g = " << g << ", h = " << h << "  (k = " << k << ", r = " << r << ")\n";
  os << "blocks:\n";
  for (const auto& b : blocks) {
    os << "  " << b.label << " = " << b.word.str("t");
    if (!b.range.empty()) os << "   [" << b.range.first << ", " << b.range.last << "]";
    os << "\n";
  }
  os << "ledger:\n";
  for (const auto& [label, f] : ledger.entries) os << "  phi(" << label << ") = " << f.str() << "\n";
  os << "  phi(T1...T" << k + 2 << ") = " << ledger.product_value.str() << "\n";
  os << "  defect: (" << to_string(ledger.defect_coeff_h) << ")|phi_h| <= (" << to_string(ledger.defect_coeff_r)
     << ")|phi_r| + D\n";
  os << "checks (homology-level verification):\n";
  for (const auto& c : checks) {
    os << "  " << (c.skipped ? "SKIP" : (c.passed ? "pass" : "FAIL")) << "  " << c.name;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& f : findings) {
    os << "  note  " << f.name << ": " << (f.passed ? "holds" : "does not hold");
    if (!f.detail.empty()) os << "  (" << f.detail << ")";
    os << "\n";
  }
  os << "bound: " << to_string(bound) << "  " << (all_passed() ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace twistscl
