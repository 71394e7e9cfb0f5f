#pragma once

// Replays the quasi-morphism argument behind the separating-twist bound for a
// concrete (g, h): builds the twist blocks T_1..T_{k+2}, S, checks the
// structural facts the argument uses, assembles the linear ledger of phi
// values, and re-derives the bound from the resulting defect inequality.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistscl/bounds.hpp"
#include "twistscl/numeric.hpp"
#include "twistscl/trace_words.hpp"

namespace twistscl {

enum class Direction { ascending, descending };

struct IndexRange {
  int first = 0;
  int last = 0;  // inclusive; last < first encodes the empty range
  bool empty() const { return last < first; }
};

struct ChainBlock {
  std::string label;  // "T1".."T{k+2}" or "S"
  int position = 0;   // i for T_i, 0 for S
  IndexRange range;
  bool squared_first = false;
  Direction direction = Direction::ascending;
  Word word;  // over the 2g+1 chain twists

  bool is_T() const { return position > 0; }
};

/// T_1..T_{k+2} in order, then S. Requires 1 <= h <= floor(g/2).
std::vector<ChainBlock> build_blocks(int g, int h);

/// Pairs (i, j) of T-blocks whose words share a non-commuting letter pair.
using BlockPairs = std::vector<std::pair<std::string, std::string>>;

/// Letter-wise check over raw labels: every pair of T-blocks with
/// |i - j| >= 2 uses pairwise disjoint curves (indices differ by >= 2).
bool check_commutation_pattern(const std::vector<ChainBlock>& blocks, BlockPairs* offenders = nullptr);

/// Nonempty T-blocks in label order; an empty T_k is the identity and drops out.
std::vector<ChainBlock> effective_blocks(const std::vector<ChainBlock>& blocks);

/// The same letter-wise check after dropping empty blocks and renumbering.
bool check_effective_commutation_pattern(const std::vector<ChainBlock>& blocks, BlockPairs* offenders = nullptr);

/// c_h phi(t_{s_h}) + c_r phi(t_{s_r}).
struct LinearForm {
  Rational phi_h;
  Rational phi_r;

  LinearForm operator+(const LinearForm& o) const { return {phi_h + o.phi_h, phi_r + o.phi_r}; }
  LinearForm operator-(const LinearForm& o) const { return {phi_h - o.phi_h, phi_r - o.phi_r}; }
  LinearForm operator-() const { return {-phi_h, -phi_r}; }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;

  std::string str() const;
};

struct PhiLedger {
  int g = 0, h = 0, k = 0, r = 0;
  /// phi(t_{s_0}) = 0, so the phi_r symbol carries nothing when r = 0.
  bool phi_r_is_zero = false;
  std::vector<std::pair<std::string, LinearForm>> entries;  // T1..T{k+2}, S
  LinearForm product_value;                                 // phi(T_1 ... T_{k+2}) = -phi(S)
  LinearForm block_sum;                                     // sum_i phi(T_i)
  /// |product_value - block_sum| <= D(phi): magnitudes of the two coefficients.
  Rational defect_coeff_h;
  Rational defect_coeff_r;
  bool same_signed = false;
  /// |phi_h|/2D <= prefactor * (recursive_weight * |phi_r|/2D + 1).
  Rational prefactor;
  Rational recursive_weight;
  /// Value substituted for |phi_r|/2D: the replayed bound at (g, r), 0 for r = 0.
  Rational sub_bound;
  Rational derived_bound;

  const LinearForm& entry(const std::string& label) const;
  nlohmann::json to_json() const;
};

/// Builds the ledger and replays the recursion for r through its own ledger,
/// independently of BoundSolver.
PhiLedger assemble_ledger(int g, int h);

struct ReplayCheck {
  std::string name;
  bool passed = false;
  bool skipped = false;
  std::string detail;
};

struct ReplayOptions {
  /// Homology checks are skipped above this genus; 0 means no limit.
  int homology_genus_limit = 0;
};

struct ReplayReport {
  int g = 0, h = 0, k = 0, r = 0;
  std::vector<ChainBlock> blocks;
  std::vector<ReplayCheck> checks;
  /// Informational results that do not gate the report.
  std::vector<ReplayCheck> findings;
  PhiLedger ledger;
  Rational bound;              // derived through the ledger
  Rational closed_form_bound;  // BoundSolver's value

  bool all_passed() const;
  const ReplayCheck* check(const std::string& name) const;
  nlohmann::json to_json() const;
  std::string text() const;
};

/// Throws std::out_of_range (with g, h in the message) for invalid input.
ReplayReport replay_report(int g, int h, const ReplayOptions& options = {});

}  // namespace twistscl
