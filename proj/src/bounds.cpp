#include "twistscl/bounds.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace twistscl {

namespace {

void require_bound_genus(int g) {
  if (g < 2) throw std::invalid_argument("genus must be >= 2, got " + std::to_string(g));
}

void require_theorem_range(int g, int h) {
  require_bound_genus(g);
  if (h < 1 || h > g / 2)
    throw std::out_of_range("h = " + std::to_string(h) + " outside 1.." + std::to_string(g / 2) + " for g = " +
                            std::to_string(g));
}

Rational q(long long num, long long den = 1) { return make_rational(num, den); }

// h(2h+1)(2g-2h+1) / ((g+1)(2g+1) - (2g-2h+1) r)
Rational prefactor(int g, int h, int r) {
  const BigInt G(g), H(h), R(r);
  const BigInt num = H * (2 * H + 1) * (2 * G - 2 * H + 1);
  const BigInt den = (G + 1) * (2 * G + 1) - (2 * G - 2 * H + 1) * R;
  return Rational(num, den);
}

nlohmann::json rational_json(const Rational& v) {
  return {{"num", numerator_of(v).str()}, {"den", denominator_of(v).str()}};
}

}  // namespace

Decomposition decompose(int g, int h) {
  require_theorem_range(g, h);
  return {g / h, g % h};
}

const Rational& BoundSolver::value(int g, int h) {
  require_bound_genus(g);
  if (h < 0 || h > g)
    throw std::out_of_range("h = " + std::to_string(h) + " outside 0.." + std::to_string(g));
  if (h > g / 2) h = g - h;

  const auto key = std::make_pair(g, h);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  Rational v(0);
  if (h > 0) {
    const auto [k, r] = decompose(g, h);
    // r < h, so the recursion is well founded.
    v = prefactor(g, h, r) * (value(g, r) / Rational(2 * r + 1) + Rational(1));
  }
  return cache_.emplace(key, std::move(v)).first->second;
}

BoundResult BoundSolver::bound(int g, int h) {
  BoundResult out;
  out.g = g;
  out.h = h;
  out.value = value(g, h);
  out.via_symmetry = h > g / 2 && h < g;
  int level = out.via_symmetry ? g - h : h;
  if (level > 0 && level < g) out.decomposition = decompose(g, level);
  while (level > 0 && level < g) {
    const auto [k, r] = decompose(g, level);
    out.trace.push_back({g, level, k, r, value(g, level)});
    level = r;
  }
  return out;
}

BoundResult bound(int g, int h) {
  BoundSolver solver;
  return solver.bound(g, h);
}

nlohmann::json BoundResult::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["h"] = h;
  j["value"] = rational_json(value);
  j["value_str"] = to_string(value);
  if (decomposition)
    j["decomposition"] = {{"k", decomposition->k}, {"r", decomposition->r}};
  else
    j["decomposition"] = nullptr;
  j["via_symmetry"] = via_symmetry;
  j["trace"] = nlohmann::json::array();
  for (const auto& s : trace)
    j["trace"].push_back({{"g", s.g}, {"h", s.h}, {"k", s.k}, {"r", s.r}, {"value", rational_json(s.value)}});
  return j;
}

Rational corollary1(int g) {
  require_bound_genus(g);
  const BigInt G(g);
  return Rational(3 * (2 * G - 1), (G + 1) * (2 * G + 1));
}

Rational corollary2(int g, int h) {
  require_theorem_range(g, h);
  if (g % h != 0) throw std::invalid_argument("h = " + std::to_string(h) + " does not divide g = " + std::to_string(g));
  return prefactor(g, h, 0);
}

Rational defect_weight_sum(int g, int h) {
  const auto [k, r] = decompose(g, h);
  return q(1, 4LL * (g - h) + 2) + q(2, 4LL * h) + q(k - 1, 4LL * h + 2);
}

Rational defect_weight_closed_form(int g, int h) {
  const auto [k, r] = decompose(g, h);
  const BigInt G(g), H(h), R(r);
  return Rational((G + 1) * (2 * G + 1) - (2 * G - 2 * H + 1) * R, 2 * H * (2 * H + 1) * (2 * G - 2 * H + 1));
}

bool coefficient_identity_check(int g, int h) { return defect_weight_sum(g, h) == defect_weight_closed_form(g, h); }

Rational reference_lower_bound(int g) {
  require_bound_genus(g);
  return q(1, 18LL * g + 6);
}

Rational reference_nonsep_upper(int g) {
  if (g < 1) throw std::invalid_argument("genus must be >= 1, got " + std::to_string(g));
  const long long G = g;
  return q(G, 4 * G * G + 6 * G + 2);
}

HSelection HSelection::parse(const std::string& text) {
  if (text == "all") return {};
  HSelection hs;
  hs.all = false;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad h value '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad h value '" + item + "'");
    hs.values.push_back(v);
  }
  if (hs.values.empty()) throw std::invalid_argument("empty h list");
  std::sort(hs.values.begin(), hs.values.end());
  hs.values.erase(std::unique(hs.values.begin(), hs.values.end()), hs.values.end());
  return hs;
}

namespace {

std::vector<TableRow> table_rows_for(int g_lo, int g_hi, const HSelection& hs, int precision) {
  BoundSolver solver;
  std::vector<TableRow> rows;
  for (int g = g_lo; g <= g_hi; ++g) {
    std::vector<int> hs_for_g;
    if (hs.all) {
      for (int h = 1; h <= g - 1; ++h) hs_for_g.push_back(h);
    } else {
      for (int h : hs.values)
        if (h >= 0 && h <= g) hs_for_g.push_back(h);
    }
    for (int h : hs_for_g) {
      auto res = solver.bound(g, h);
      TableRow row;
      row.g = g;
      row.h = h;
      row.decomposition = res.decomposition;
      row.via_symmetry = res.via_symmetry;
      row.bound = res.value;
      row.lower = reference_lower_bound(g);
      row.nonsep = reference_nonsep_upper(g);
      row.decimal = to_decimal(row.bound, precision);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace

std::vector<TableRow> table(int g_min, int g_max, const HSelection& hs, int precision, unsigned threads) {
  require_bound_genus(g_min);
  if (g_max < g_min)
    throw std::invalid_argument("empty genus range " + std::to_string(g_min) + ".." + std::to_string(g_max));
  if (precision < 0) throw std::invalid_argument("negative precision");

  const unsigned span = static_cast<unsigned>(g_max - g_min + 1);
  threads = std::clamp(threads, 1u, span);
  std::vector<std::vector<TableRow>> parts(threads);
  if (threads == 1) {
    parts[0] = table_rows_for(g_min, g_max, hs, precision);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      const int lo = g_min + static_cast<int>(span * t / threads);
      const int hi = g_min + static_cast<int>(span * (t + 1) / threads) - 1;
      workers.emplace_back([&, t, lo, hi] { parts[t] = table_rows_for(lo, hi, hs, precision); });
    }
  }

  std::vector<TableRow> rows;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(rows));
  std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    return std::pair(a.g, a.h) < std::pair(b.g, b.h);
  });
  if (rows.empty()) throw std::invalid_argument("no (g, h) pairs in the requested range");
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "g,h,k,r,bound_num,bound_den,bound_decimal,lower_num,lower_den,nonsep_num,nonsep_den\n";
  for (const auto& row : rows) {
    os << row.g << ',' << row.h << ',';
    if (row.decomposition)
      os << row.decomposition->k << ',' << row.decomposition->r;
    else
      os << ',';
    os << ',' << numerator_of(row.bound) << ',' << denominator_of(row.bound) << ',' << row.decimal << ','
       << numerator_of(row.lower) << ',' << denominator_of(row.lower) << ',' << numerator_of(row.nonsep) << ','
       << denominator_of(row.nonsep) << '\n';
  }
  return os.str();
}

nlohmann::json table_json(const std::vector<TableRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["g"] = row.g;
    j["h"] = row.h;
    if (row.decomposition) {
      j["k"] = row.decomposition->k;
      j["r"] = row.decomposition->r;
    } else {
      j["k"] = nullptr;
      j["r"] = nullptr;
    }
    j["via_symmetry"] = row.via_symmetry;
    j["bound"] = rational_json(row.bound);
    j["bound_decimal"] = row.decimal;
    j["lower"] = rational_json(row.lower);
    j["nonsep"] = rational_json(row.nonsep);
    out.push_back(std::move(j));
  }
  return out;
}

std::string table_text(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(5) << "g" << std::setw(5) << "h" << std::setw(4) << "k" << std::setw(4) << "r"
     << std::setw(24) << "bound" << std::setw(14) << "decimal" << "lower\n";
  for (const auto& row : rows) {
    os << std::setw(5) << row.g << std::setw(5) << row.h;
    if (row.decomposition)
      os << std::setw(4) << row.decomposition->k << std::setw(4) << row.decomposition->r;
    else
      os << std::setw(4) << "-" << std::setw(4) << "-";
    os << std::setw(24) << to_string(row.bound) << std::setw(14) << row.decimal << to_string(row.lower)
       << (row.via_symmetry ? "  (via symmetry)" : "") << '\n';
  }
  return os.str();
}

}  // namespace twistscl
