#include <doctest.h>

#include <random>
#include <set>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/lp.hpp"
#include "delaysched/rational.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace delaysched;
using fixtures::column;
using fixtures::columns;

TEST_CASE("bit matrix layout and access") {
  BitMatrix m(3, 2);
  CHECK(m.none());
  m.set(2, 1);
  CHECK(m.get(2, 1));
  CHECK(m.test(1 * 3 + 2));
  CHECK(m.count() == 1);
  CHECK(m.row_count(2) == 1);
  m.set(2, 1, false);
  CHECK(m.none());

  const BitMatrix r = BitMatrix::from_rows({"10", "01", "11"});
  CHECK(r.rows() == 3);
  CHECK(r.cols() == 2);
  CHECK(r.to_rows() == std::vector<std::string>{"10", "01", "11"});
  CHECK(r.row_count(2) == 2);
  CHECK(r.count() == 4);
  CHECK_THROWS(BitMatrix(16, 17));
}

TEST_CASE("bit matrix algebra") {
  const BitMatrix a = columns({"1100", "0011"});
  const BitMatrix b = columns({"1000", "0111"});
  CHECK((a & b) == columns({"1000", "0011"}));
  CHECK((a | b) == columns({"1100", "0111"}));
  CHECK(a.dominates(a & b));
  CHECK_FALSE(a.dominates(b));
  CHECK(a.juxtapose(b) == columns({"1100", "0011", "1000", "0111"}));
  CHECK(a.juxtapose(b).columns(2, 2) == b);
  CHECK(a.juxtapose(b).columns(0, 2) == a);
  std::vector<std::size_t> seen;
  a.for_each_set([&](std::size_t p) { seen.push_back(p); });
  CHECK(seen == std::vector<std::size_t>{0, 1, 6, 7});
}

TEST_CASE("bit matrix order reads columns as numbers with link 0 most significant") {
  std::vector<BitMatrix> v;
  for (std::size_t i = 0; i < 9; ++i) v.push_back(fixtures::v(i));
  std::vector<BitMatrix> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  auto value = [](const BitMatrix& b) { return std::stoi(b.to_rows()[0] + b.to_rows()[1] + b.to_rows()[2] + b.to_rows()[3], nullptr, 2); };
  for (std::size_t i = 1; i < sorted.size(); ++i) CHECK(value(sorted[i - 1]) < value(sorted[i]));
  CHECK(sorted.front() == fixtures::v(0));
  CHECK(columns({"0001", "1111"}) < columns({"0010", "0000"}));
}

TEST_CASE("bit matrix hashing separates shapes") {
  std::set<std::size_t> hashes;
  for (const auto& b : oracle::all_blocks(2, 3)) hashes.insert(b.hash());
  CHECK(hashes.size() > 32);
  CHECK(BitMatrix(2, 3) != BitMatrix(3, 2));
}

TEST_CASE("rational text") {
  CHECK(to_fraction_string(Rational(1, 2)) == "1/2");
  CHECK(to_fraction_string(Rational(4, 2)) == "2/1");
  CHECK(to_fraction_string(Rational(0)) == "0/1");
  CHECK(to_fraction_string(Rational(-3, 9)) == "-1/3");
  CHECK(parse_fraction("6/8") == Rational(3, 4));
  CHECK(parse_fraction("5") == 5);
  CHECK_THROWS(parse_fraction("1/0"));
  CHECK_THROWS(parse_fraction("x"));
  CHECK_THROWS(parse_fraction(""));
}

TEST_CASE("rate vectors") {
  const RateVector a = RateVector::parse("1/2,1/2,0");
  const RateVector b = RateVector::parse("1/2,1/3,0");
  CHECK(a.dominates(b));
  CHECK(a.strictly_dominates(b));
  CHECK(a.dominates(a));
  CHECK_FALSE(a.strictly_dominates(a));
  CHECK_FALSE(b.dominates(a));
  CHECK(a.to_strings() == std::vector<std::string>{"1/2", "1/2", "0/1"});
  CHECK(RateVector::parse(" 1 , 2/4 ") == RateVector(std::vector<Rational>{Rational(1), Rational(1, 2)}));
}

TEST_CASE("simplex on small programs") {
  LinearProgram lp;
  lp.variables = 2;
  lp.objective = {Rational(3), Rational(2)};
  lp.add({Rational(1), Rational(1)}, Relation::LessEqual, 4);
  lp.add({Rational(1), Rational(3)}, Relation::LessEqual, 6);
  lp.add({Rational(1), Rational(0)}, Relation::LessEqual, 3);
  LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.value == 11);
  CHECK(s.x[0] == 3);
  CHECK(s.x[1] == 1);

  LinearProgram infeasible;
  infeasible.variables = 1;
  infeasible.add({Rational(1)}, Relation::GreaterEqual, 2);
  infeasible.add({Rational(1)}, Relation::LessEqual, 1);
  CHECK(solve(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded;
  unbounded.variables = 2;
  unbounded.objective = {Rational(1), Rational(0)};
  unbounded.add({Rational(1), Rational(-1)}, Relation::LessEqual, 1);
  CHECK(solve(unbounded).status == LpStatus::Unbounded);

  LinearProgram equality;
  equality.variables = 3;
  equality.objective = {Rational(1), Rational(1), Rational(1)};
  equality.add({Rational(1), Rational(1), Rational(0)}, Relation::Equal, Rational(1, 3));
  equality.add({Rational(0), Rational(1), Rational(1)}, Relation::Equal, Rational(1, 2));
  equality.add({Rational(1), Rational(2), Rational(1)}, Relation::Equal, Rational(5, 6));
  s = solve(equality);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.value == Rational(5, 6));

  LinearProgram negative;
  negative.variables = 1;
  negative.objective = {Rational(-1)};
  negative.add({Rational(-1)}, Relation::LessEqual, -2);
  s = solve(negative);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.value == -2);
}

TEST_CASE("simplex feasibility agrees with vertex enumeration") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(0, 4);
  std::uniform_int_distribution<int> den(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(trial % 4);
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
    std::vector<RateVector> gens;
    for (std::size_t i = 0; i < m; ++i) {
      RateVector g(d);
      for (std::size_t l = 0; l < d; ++l) {
        g[l] = Rational(num(rng), 4);
        g[l].canonicalize();
      }
      gens.push_back(g);
    }
    RateVector r(d);
    for (std::size_t l = 0; l < d; ++l) {
      r[l] = Rational(num(rng), 4 * den(rng));
      r[l].canonicalize();
    }
    LinearProgram lp;
    lp.variables = m;
    std::vector<Rational> ones(m, Rational(1));
    lp.add(ones, Relation::Equal, 1);
    for (std::size_t l = 0; l < d; ++l) {
      std::vector<Rational> row;
      for (const auto& g : gens) row.push_back(g[l]);
      lp.add(row, Relation::GreaterEqual, r[l]);
    }
    const LpSolution s = solve(lp);
    CHECK((s.status == LpStatus::Optimal) == oracle::dominated_by_hull(gens, r));
    if (s.status == LpStatus::Optimal) {
      Rational total = 0;
      for (std::size_t i = 0; i < m; ++i) {
        CHECK(s.x[i] >= 0);
        total += s.x[i];
      }
      CHECK(total == 1);
    }
  }
}
