#pragma once

#include <cstddef>
#include <vector>

namespace hardy {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    std::vector<double> x;     ///< primal solution
    std::vector<double> dual;  ///< y with A^T y <= c, one entry per original row
    std::size_t iterations = 0;
    std::vector<std::size_t> dropped_rows;  ///< rows found linearly dependent
};

struct LpOptions {
    std::size_t max_iterations = 200000;
    double tol = 1e-10;
    /// consecutive degenerate pivots before switching to Bland's rule
    std::size_t degenerate_streak = 50;
};

/**
 * min c^T x  s.t.  A x = b, x >= 0. Dense two-phase tableau simplex.
 * A is row-major, rows x cols.
 */
LpResult solve_standard_lp(const std::vector<double>& A, std::size_t rows, std::size_t cols,
                           const std::vector<double>& b, const std::vector<double>& c, const LpOptions& opts = {});

}  // namespace hardy
