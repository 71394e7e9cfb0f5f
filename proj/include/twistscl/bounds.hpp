#pragma once

// Upper bounds on scl(t_{s_h}) in the genus-g mapping class group, computed
// exactly from the recursion
//
//   B(g, h) = h(2h+1)(2g-2h+1) / ((g+1)(2g+1) - (2g-2h+1) r) * (B(g, r) / (2r+1) + 1)
//
// with g = k h + r, 0 <= r < h, for 1 <= h <= g/2. B(g, 0) = B(g, g) = 0 and
// B(g, h) = B(g, g - h) above g/2 (the two separating twists are conjugate).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twistscl/numeric.hpp"

namespace twistscl {

struct Decomposition {
  int k = 0;
  int r = 0;
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Euclidean division g = k h + r. Requires 1 <= h <= floor(g/2), so k >= 2.
Decomposition decompose(int g, int h);

/// One application of the recursion.
struct BoundStep {
  int g = 0;
  int h = 0;
  int k = 0;
  int r = 0;
  Rational value;
};

struct BoundResult {
  int g = 0;
  int h = 0;
  Rational value;
  /// Decomposition of min(h, g-h); empty when h is 0 or g.
  std::optional<Decomposition> decomposition;
  /// h > floor(g/2): the value is that of g - h.
  bool via_symmetry = false;
  /// Top-down recursion path, ending at the step whose r is 0.
  std::vector<BoundStep> trace;

  nlohmann::json to_json() const;
};

/// Memoizing evaluator. Not synchronized: use one instance per thread.
class BoundSolver {
 public:
  BoundResult bound(int g, int h);
  const Rational& value(int g, int h);

 private:
  std::map<std::pair<int, int>, Rational> cache_;
};

/// Throws std::invalid_argument for g < 2 and std::out_of_range for h outside 0..g.
BoundResult bound(int g, int h);

/// 3(2g-1) / ((g+1)(2g+1)); the h = 1 case.
Rational corollary1(int g);

/// h(2h+1)(2g-2h+1) / ((g+1)(2g+1)); the r = 0 case. Requires h | g, 1 <= h <= g/2.
Rational corollary2(int g, int h);

/// 1/(4(g-h)+2) + 2/(4h) + (k-1)/(4h+2): total weight of phi(t_{s_h}) in the defect inequality.
Rational defect_weight_sum(int g, int h);
/// ((g+1)(2g+1) - (2g-2h+1) r) / (2h(2h+1)(2g-2h+1)).
Rational defect_weight_closed_form(int g, int h);
/// defect_weight_sum == defect_weight_closed_form, exactly.
bool coefficient_identity_check(int g, int h);

/// 1/(18g+6), the known lower bound for any Dehn twist.
Rational reference_lower_bound(int g);
/// g / (4g^2 + 6g + 2) = 1/(4g+6+2/g), the known nonseparating upper bound.
Rational reference_nonsep_upper(int g);

/// Which h values a table covers: every 1 <= h <= g-1, or an explicit list.
struct HSelection {
  bool all = true;
  std::vector<int> values;

  /// Accepts "all", "3", or "1,2,5".
  static HSelection parse(const std::string& text);
};

struct TableRow {
  int g = 0;
  int h = 0;
  std::optional<Decomposition> decomposition;
  bool via_symmetry = false;
  Rational bound;
  Rational lower;
  Rational nonsep;
  std::string decimal;
};

/// Rows sorted by (g, h). Explicit h values outside 0..g are skipped for that g;
/// throws std::invalid_argument when no rows remain. `threads` > 1 splits the
/// genus range across workers, each with its own solver.
std::vector<TableRow> table(int g_min, int g_max, const HSelection& hs, int precision = 8, unsigned threads = 1);

/// Header g,h,k,r,bound_num,bound_den,bound_decimal,lower_num,lower_den,nonsep_num,nonsep_den.
std::string table_csv(const std::vector<TableRow>& rows);
nlohmann::json table_json(const std::vector<TableRow>& rows);
std::string table_text(const std::vector<TableRow>& rows);

}  // namespace twistscl
