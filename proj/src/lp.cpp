#include "delaysched/lp.hpp"

#include <optional>
#include <stdexcept>

namespace delaysched {

void LinearProgram::add(std::vector<Rational> row, Relation relation, Rational bound) {
  if (row.size() != variables) throw std::invalid_argument("constraint width differs from variable count");
  rows.push_back(std::move(row));
  relations.push_back(relation);
  rhs.push_back(std::move(bound));
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t columns)
      : cells_(rows, std::vector<Rational>(columns + 1, Rational(0))), basis_(rows, 0), columns_(columns) {}

  Rational& at(std::size_t r, std::size_t c) { return cells_[r][c]; }
  Rational& rhs(std::size_t r) { return cells_[r][columns_]; }
  std::size_t rows() const { return cells_.size(); }
  std::size_t columns() const { return columns_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = cells_[row][col];
    for (auto& v : cells_[row]) v /= p;
    for (std::size_t r = 0; r < rows(); ++r) {
      if (r == row || cells_[r][col] == 0) continue;
      const Rational factor = cells_[r][col];
      for (std::size_t c = 0; c <= columns_; ++c) {
        if (cells_[row][c] != 0) cells_[r][c] -= factor * cells_[row][c];
      }
    }
    basis_[row] = col;
  }

  /// Maximizes cost . x over columns < `usable`. Returns false if unbounded.
  bool maximize(const std::vector<Rational>& cost, std::size_t usable) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t c = 0; c < usable && !entering; ++c) {
        Rational reduced = cost[c];
        for (std::size_t r = 0; r < rows(); ++r) {
          if (cells_[r][c] != 0) reduced -= cost[basis_[r]] * cells_[r][c];
        }
        if (reduced > 0) entering = c;
      }
      if (!entering) return true;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < rows(); ++r) {
        if (cells_[r][*entering] <= 0) continue;
        const Rational ratio = cells_[r][columns_] / cells_[r][*entering];
        if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

 private:
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::size_t columns_;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  const std::size_t m = lp.rows.size();
  const std::size_t n = lp.variables;
  if (lp.relations.size() != m || lp.rhs.size() != m) throw std::invalid_argument("malformed linear program");
  if (!lp.objective.empty() && lp.objective.size() != n) throw std::invalid_argument("objective width mismatch");

  // Column layout: structural | slack/surplus | artificial.
  std::vector<Relation> rel = lp.relations;
  std::vector<int> sign(m, 1);
  std::size_t slacks = 0;
  std::size_t artificials = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0) {
      sign[i] = -1;
      if (rel[i] == Relation::LessEqual) {
        rel[i] = Relation::GreaterEqual;
      } else if (rel[i] == Relation::GreaterEqual) {
        rel[i] = Relation::LessEqual;
      }
    }
    if (rel[i] != Relation::Equal) ++slacks;
    if (rel[i] != Relation::LessEqual) ++artificials;
  }
  const std::size_t first_artificial = n + slacks;
  const std::size_t total = first_artificial + artificials;
  Tableau t(m, total);
  std::size_t next_slack = n;
  std::size_t next_artificial = first_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = lp.rows[i][j] * sign[i];
    t.rhs(i) = lp.rhs[i] * sign[i];
    if (rel[i] == Relation::LessEqual) {
      t.at(i, next_slack) = 1;
      t.basis()[i] = next_slack++;
    } else {
      if (rel[i] == Relation::GreaterEqual) t.at(i, next_slack++) = -1;
      t.at(i, next_artificial) = 1;
      t.basis()[i] = next_artificial++;
    }
  }

  LpSolution out;
  if (artificials > 0) {
    std::vector<Rational> phase1(total, Rational(0));
    for (std::size_t c = first_artificial; c < total; ++c) phase1[c] = -1;
    t.maximize(phase1, total);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      if (t.basis()[r] >= first_artificial && t.rhs(r) != 0) return out;  // infeasible
    }
    // Drive zero-level artificials out of the basis; rows with no other
    // nonzero are redundant.
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basis()[r] < first_artificial) {
        ++r;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t c = 0; c < first_artificial && !col; ++c) {
        if (t.at(r, c) != 0) col = c;
      }
      if (col) {
        t.pivot(r, *col);
        ++r;
      } else {
        t.drop_row(r);
      }
    }
  }

  std::vector<Rational> cost(total, Rational(0));
  for (std::size_t j = 0; j < lp.objective.size(); ++j) cost[j] = lp.objective[j];
  if (!t.maximize(cost, first_artificial)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t r = 0; r < t.rows(); ++r) {
    if (t.basis()[r] < n) out.x[t.basis()[r]] = t.rhs(r);
  }
  out.value = 0;
  for (std::size_t j = 0; j < lp.objective.size(); ++j) out.value += lp.objective[j] * out.x[j];
  return out;
}

}  // namespace delaysched
