#include "specgame/linear_program.hpp"

#include <cmath>
#include <limits>

#include "specgame/error.hpp"

namespace specgame {

namespace {

constexpr double kPivotEps = 1e-10;
constexpr double kCostEps = 1e-10;

class Tableau {
  public:
    Tableau(std::size_t rows, std::size_t cols)
        : a_(rows, std::vector<double>(cols, 0.0)), b_(rows, 0.0), basis_(rows, 0) {}

    std::vector<std::vector<double>>& a() { return a_; }
    std::vector<double>& b() { return b_; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::size_t pivots() const { return pivots_; }

    /// Maximize cost'x over the columns flagged in `allowed`, starting from
    /// the current (feasible) basis.
    LpStatus optimize(const std::vector<double>& cost, const std::vector<bool>& allowed) {
        const std::size_t rows = a_.size();
        const std::size_t cols = cost.size();
        std::vector<bool> in_basis(cols, false);
        for (;;) {
            std::fill(in_basis.begin(), in_basis.end(), false);
            for (std::size_t r : basis_) in_basis[r] = true;

            // Bland: lowest-index column with positive reduced cost enters.
            std::size_t entering = cols;
            for (std::size_t j = 0; j < cols && entering == cols; ++j) {
                if (!allowed[j] || in_basis[j]) continue;
                double reduced = cost[j];
                for (std::size_t i = 0; i < rows; ++i) reduced -= cost[basis_[i]] * a_[i][j];
                if (reduced > kCostEps) entering = j;
            }
            if (entering == cols) return LpStatus::optimal;

            // Ratio test; ties go to the lowest basic variable index.
            std::size_t leaving = rows;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows; ++i) {
                if (a_[i][entering] <= kPivotEps) continue;
                const double ratio = b_[i] / a_[i][entering];
                if (ratio < best_ratio - 1e-14 ||
                    (ratio <= best_ratio + 1e-14 && leaving < rows && basis_[i] < basis_[leaving])) {
                    best_ratio = ratio;
                    leaving = i;
                }
            }
            if (leaving == rows) return LpStatus::unbounded;
            pivot(leaving, entering);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const double p = a_[row][col];
        for (double& v : a_[row]) v /= p;
        b_[row] /= p;
        a_[row][col] = 1.0;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i == row) continue;
            const double f = a_[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < a_[i].size(); ++j) a_[i][j] -= f * a_[row][j];
            a_[i][col] = 0.0;
            b_[i] -= f * b_[row];
            if (std::abs(b_[i]) < 1e-15) b_[i] = 0.0;
        }
        basis_[row] = col;
        ++pivots_;
    }

  private:
    std::vector<std::vector<double>> a_;
    std::vector<double> b_;
    std::vector<std::size_t> basis_;
    std::size_t pivots_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    const std::size_t le = lp.le_rows.size();
    const std::size_t eq = lp.eq_rows.size();
    require(n >= 1, "linear program needs at least one variable");
    require(lp.le_rhs.size() == le && lp.eq_rhs.size() == eq, "constraint right-hand side size mismatch");

    // Columns: original | slack per <= row | artificial per = row.
    const std::size_t cols = n + le + eq;
    Tableau t(le + eq, cols);
    for (std::size_t i = 0; i < le; ++i) {
        require(lp.le_rows[i].size() == n, "constraint row has wrong length");
        require(lp.le_rhs[i] >= 0.0, "inequality right-hand sides must be nonnegative");
        for (std::size_t j = 0; j < n; ++j) t.a()[i][j] = lp.le_rows[i][j];
        t.a()[i][n + i] = 1.0;
        t.b()[i] = lp.le_rhs[i];
        t.basis()[i] = n + i;
    }
    for (std::size_t e = 0; e < eq; ++e) {
        require(lp.eq_rows[e].size() == n, "constraint row has wrong length");
        const std::size_t i = le + e;
        const double sign = lp.eq_rhs[e] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t.a()[i][j] = sign * lp.eq_rows[e][j];
        t.a()[i][n + le + e] = 1.0;
        t.b()[i] = sign * lp.eq_rhs[e];
        t.basis()[i] = n + le + e;
    }

    LpSolution out;
    std::vector<bool> allowed(cols, true);
    if (eq > 0) {
        std::vector<double> phase1(cols, 0.0);
        for (std::size_t e = 0; e < eq; ++e) phase1[n + le + e] = -1.0;
        t.optimize(phase1, allowed);
        double infeasibility = 0.0;
        for (std::size_t i = 0; i < t.basis().size(); ++i) {
            if (t.basis()[i] >= n + le) infeasibility += t.b()[i];
        }
        if (infeasibility > 1e-9) {
            out.status = LpStatus::infeasible;
            out.pivots = t.pivots();
            return out;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < t.basis().size(); ++i) {
            if (t.basis()[i] < n + le) continue;
            for (std::size_t j = 0; j < n + le; ++j) {
                if (std::abs(t.a()[i][j]) > kPivotEps) {
                    t.pivot(i, j);
                    break;
                }
            }
        }
        for (std::size_t e = 0; e < eq; ++e) allowed[n + le + e] = false;
    }

    std::vector<double> cost(cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
    out.status = t.optimize(cost, allowed);
    out.pivots = t.pivots();
    out.x.assign(n, 0.0);
    for (std::size_t i = 0; i < t.basis().size(); ++i) {
        if (t.basis()[i] < n) out.x[t.basis()[i]] = t.b()[i];
    }
    for (std::size_t j = 0; j < n; ++j) out.value += lp.objective[j] * out.x[j];
    return out;
}

}  // namespace specgame
