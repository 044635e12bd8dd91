#pragma once

// Small dense linear programs solved with a two-phase tableau simplex and
// Bland's anti-cycling rule. Meant for a few dozen variables.

#include <cstddef>
#include <vector>

namespace specgame {

/// maximize c'x  subject to  A_le x <= b_le,  A_eq x = b_eq,  x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> le_rows;
    std::vector<double> le_rhs;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double value = 0.0;
    std::size_t pivots = 0;
};

/// Requires b_le >= 0 (the slack basis must start feasible); equality rows
/// with negative right-hand sides are negated internally.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace specgame
