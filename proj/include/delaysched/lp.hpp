#pragma once

#include <cstddef>
#include <vector>

#include "delaysched/rational.hpp"

namespace delaysched {

enum class Relation { LessEqual, Equal, GreaterEqual };

/// maximize objective . x  subject to  rows[i] . x (relation[i]) rhs[i],  x >= 0.
struct LinearProgram {
  std::size_t variables = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Relation> relations;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;  ///< empty means pure feasibility

  void add(std::vector<Rational> row, Relation relation, Rational bound);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

/// Two-phase dense tableau simplex over exact rationals with Bland's rule.
LpSolution solve(const LinearProgram& lp);

}  // namespace delaysched
