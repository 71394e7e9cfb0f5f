#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "twistscl/bounds.hpp"

using namespace twistscl;

namespace {

Rational R(const char* text) { return parse_rational(text); }

std::string as_string(const oracle::Frac& f) {
  auto str = [](__int128 v) {
    if (v == 0) return std::string("0");
    std::string s;
    const bool neg = v < 0;
    if (neg) v = -v;
    while (v > 0) s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10))), v /= 10;
    return (neg ? "-" : "") + s;
  };
  return f.den == 1 ? str(f.num) : str(f.num) + "/" + str(f.den);
}

}  // namespace

TEST_CASE("numeric helpers") {
  CHECK(to_string(R("6/4")) == "3/2");
  CHECK(to_string(R("-10/5")) == "-2");
  CHECK(to_decimal(R("90/91"), 8) == "0.98901099");
  CHECK(to_decimal(R("1/8"), 2) == "0.12");   // half to even
  CHECK(to_decimal(R("3/8"), 2) == "0.38");   // half to even
  CHECK(to_decimal(R("5/2"), 0) == "2");
  CHECK(to_decimal(R("7/2"), 0) == "4");
  CHECK(to_decimal(R("-1/3"), 3) == "-0.333");
  CHECK(to_decimal(R("1/1000"), 2) == "0.00");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);

  std::mt19937 rng(1);
  for (int t = 0; t < 200; ++t) {
    const Rational q = make_rational(static_cast<long long>(rng()) - (1LL << 31), 1 + static_cast<long long>(rng() % 100000));
    CHECK(parse_rational(to_string(q)) == q);
  }
}

TEST_CASE("decompose") {
  CHECK(decompose(5, 2) == Decomposition{2, 1});
  CHECK(decompose(6, 2) == Decomposition{3, 0});
  CHECK(decompose(7, 3) == Decomposition{2, 1});
  CHECK_THROWS_AS(decompose(5, 3), std::out_of_range);
  CHECK_THROWS_AS(decompose(5, 0), std::out_of_range);
  for (int g = 2; g <= 60; ++g)
    for (int h = 1; h <= g / 2; ++h) {
      const auto [k, r] = decompose(g, h);
      CHECK(g == k * h + r);
      CHECK(k >= 2);
      CHECK((0 <= r && r < h));
    }
}

TEST_CASE("bound spot values") {
  CHECK(bound(2, 1).value == R("3/5"));
  CHECK(bound(6, 2).value == R("90/91"));
  CHECK(bound(5, 2).value == R("875/649"));
  CHECK(bound(9, 0).value == 0);
  CHECK(bound(9, 9).value == 0);
  // Frozen from an independent fraction computation.
  CHECK(bound(7, 3).value == R("2793/1480"));
  CHECK(bound(11, 4).value == R("160189965/55072787"));
  CHECK(bound(17, 7).value == R("2335769/513942"));
  CHECK(bound(100, 1).value == R("199/6767"));
}

TEST_CASE("bound errors") {
  CHECK_THROWS_AS(bound(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(bound(5, 6), std::out_of_range);
  CHECK_THROWS_AS(bound(5, -1), std::out_of_range);
}

TEST_CASE("bound result structure") {
  const auto b = bound(5, 2);
  REQUIRE(b.decomposition);
  CHECK(*b.decomposition == Decomposition{2, 1});
  CHECK_FALSE(b.via_symmetry);
  REQUIRE(b.trace.size() == 2);
  CHECK(b.trace[0].h == 2);
  CHECK(b.trace[1].h == 1);
  CHECK(b.trace[1].value == R("9/22"));
  CHECK(b.trace[1].r == 0);

  const auto s = bound(5, 3);
  CHECK(s.via_symmetry);
  CHECK(s.value == b.value);
  CHECK(*s.decomposition == Decomposition{2, 1});

  CHECK_FALSE(bound(4, 0).decomposition);
  CHECK(bound(4, 0).trace.empty());

  const auto j = bound(6, 2).to_json();
  CHECK(j["value"]["num"] == "90");
  CHECK(j["value"]["den"] == "91");
  CHECK(j["trace"].size() == 1);
}

TEST_CASE("bound agrees with an independent __int128 recursion, g <= 40") {
  for (int g = 2; g <= 40; ++g)
    for (int h = 0; h <= g; ++h) CHECK_MESSAGE(to_string(bound(g, h).value) == as_string(oracle::recursion_bound(g, h)), "g=" << g << " h=" << h);
}

TEST_CASE("bound invariants") {
  BoundSolver solver;
  for (int g = 2; g <= 120; ++g) {
    CHECK(solver.value(g, 1) == corollary1(g));
    for (int h = 0; h <= g; ++h) {
      const auto& v = solver.value(g, h);
      CHECK(v == solver.value(g, g - h));
      CHECK(v >= 0);
      CHECK((v == 0) == (h == 0 || h == g));
      if (h >= 1 && h <= g / 2 && g % h == 0) CHECK(v == corollary2(g, h));
      if (h >= 1 && h <= g - 1) CHECK(reference_lower_bound(g) <= v);
    }
  }
  // A fresh solver and a warm one agree.
  CHECK(bound(37, 11).value == solver.value(37, 11));
}

TEST_CASE("corollaries") {
  CHECK(corollary1(2) == R("3/5"));
  CHECK(corollary1(3) == R("15/28"));
  CHECK(corollary2(6, 2) == R("90/91"));
  CHECK(corollary2(4, 2) == R("10/9"));
  CHECK_THROWS_AS(corollary2(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(corollary2(6, 4), std::out_of_range);
  for (int g = 4; g <= 40; g += 2) CHECK(corollary2(g, g / 2) == bound(g, g / 2).value);
}

TEST_CASE("coefficient identity") {
  CHECK(defect_weight_sum(5, 2) == R("59/140"));
  CHECK(defect_weight_closed_form(5, 2) == R("59/140"));
  CHECK(defect_weight_sum(6, 3) == R("13/42"));
  CHECK(coefficient_identity_check(6, 3));
  CHECK_THROWS_AS(coefficient_identity_check(6, 4), std::out_of_range);
  for (int g = 2; g <= 300; ++g)
    for (int h = 1; h <= g / 2; ++h) CHECK(coefficient_identity_check(g, h));
}

TEST_CASE("coefficient identity as a polynomial identity") {
  // Clearing denominators, the identity reads
  //   h(2h+1) + (2h+1)(2g-2h+1) + (g-r-h)(2g-2h+1) = (g+1)(2g+1) - (2g-2h+1) r
  // with kh = g - r. Both sides have degree <= 2 in each of g, h, r, so
  // agreement on a 3x3x3 grid of arbitrary integers proves it.
  for (long long g : {-3, 4, 11})
    for (long long h : {-2, 1, 7})
      for (long long r : {-5, 0, 9}) {
        const long long lhs = h * (2 * h + 1) + (2 * h + 1) * (2 * g - 2 * h + 1) + (g - r - h) * (2 * g - 2 * h + 1);
        const long long rhs = (g + 1) * (2 * g + 1) - (2 * g - 2 * h + 1) * r;
        CHECK(lhs == rhs);
      }
}

TEST_CASE("reference constants") {
  CHECK(reference_lower_bound(2) == R("1/42"));
  CHECK(reference_lower_bound(10) == R("1/186"));
  CHECK(reference_nonsep_upper(1) == R("1/12"));
  CHECK(reference_nonsep_upper(2) == R("1/15"));
  CHECK(reference_nonsep_upper(5) == R("5/132"));
  CHECK_THROWS_AS(reference_nonsep_upper(0), std::invalid_argument);
}

TEST_CASE("g * bound(g, 1) increases towards 3") {
  Rational prev = 0;
  for (int g = 2; g <= 1000; ++g) {
    const Rational scaled = Rational(g) * corollary1(g);
    CHECK(scaled > prev);
    CHECK(scaled < 3);
    prev = scaled;
  }
  const Rational at100 = Rational(100) * bound(100, 1).value;
  CHECK(at100 >= R("29/10"));
  CHECK(at100 <= 3);
}

TEST_CASE("table") {
  const auto small = table(2, 2, HSelection::parse("all"));
  REQUIRE(small.size() == 1);
  CHECK(small[0].h == 1);

  const auto rows = table(2, 10, HSelection::parse("all"));
  std::size_t expected = 0;
  for (int g = 2; g <= 10; ++g) expected += static_cast<std::size_t>(g - 1);
  CHECK(rows.size() == expected);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(std::pair(rows[i - 1].g, rows[i - 1].h) < std::pair(rows[i].g, rows[i].h));

  const auto six = table(6, 6, HSelection::parse("2"));
  REQUIRE(six.size() == 1);
  CHECK(six[0].bound == R("90/91"));
  CHECK(six[0].lower == R("1/114"));
  CHECK(six[0].decimal == "0.98901099");

  const auto parallel = table(2, 40, HSelection::parse("all"), 8, 4);
  const auto serial = table(2, 40, HSelection::parse("all"), 8, 1);
  CHECK(table_csv(parallel) == table_csv(serial));

  const auto listed = table(3, 5, HSelection::parse("4,1"));
  CHECK(listed.size() == 5);  // h=1 for g=3..5, h=4 for g=4,5

  CHECK_THROWS_AS(table(5, 4, HSelection{}), std::invalid_argument);
  CHECK_THROWS_AS(table(2, 3, HSelection::parse("9")), std::invalid_argument);
  CHECK_THROWS_AS(HSelection::parse("1,x"), std::invalid_argument);
}

TEST_CASE("table CSV round-trips the exact rationals") {
  const auto rows = table(2, 12, HSelection{});
  const auto csv = table_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "g,h,k,r,bound_num,bound_den,bound_decimal,lower_num,lower_den,nonsep_num,nonsep_den");
  std::size_t i = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    REQUIRE(f.size() == 11);
    CHECK(parse_rational(f[4] + "/" + f[5]) == rows[i].bound);
    CHECK(parse_rational(f[7] + "/" + f[8]) == rows[i].lower);
    CHECK(parse_rational(f[9] + "/" + f[10]) == rows[i].nonsep);
    ++i;
  }
  CHECK(i == rows.size());

  const auto j = table_json(rows);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string num = j[r]["bound"]["num"], den = j[r]["bound"]["den"];
    CHECK(parse_rational(num + "/" + den) == rows[r].bound);
  }
}
