#include "hardy/simplex.hpp"

#include <algorithm>
#include <cmath>

#include "hardy/grid.hpp"

namespace hardy {

const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

namespace {

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : m(rows), w(cols + 1), t(rows * (cols + 1), 0.0), z(cols + 1, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return t[i * w + j]; }
    double rhs(std::size_t i) const { return t[i * w + w - 1]; }

    void pivot(std::size_t r, std::size_t col) {
        double* pr = &t[r * w];
        const double inv = 1.0 / pr[col];
        for (std::size_t j = 0; j < w; ++j) pr[j] *= inv;
        pr[col] = 1.0;
        nz.clear();
        for (std::size_t j = 0; j < w; ++j)
            if (pr[j] != 0.0) nz.push_back(j);
        auto eliminate = [&](double* row) {
            const double f = row[col];
            if (f == 0.0) return;
            for (auto j : nz) row[j] -= f * pr[j];
            row[col] = 0.0;
        };
        for (std::size_t i = 0; i < m; ++i)
            if (i != r) eliminate(&t[i * w]);
        eliminate(z.data());
    }

    std::size_t m, w;
    std::vector<double> t;
    std::vector<double> z;  // reduced costs; z[w-1] = -objective
    std::vector<std::size_t> nz;
};

struct Runner {
    Tableau& tab;
    std::vector<std::size_t>& basis;
    std::size_t enter_limit;  // columns >= this may not enter
    const LpOptions& opts;
    std::size_t iterations = 0;

    // Returns Optimal, Unbounded or IterationLimit.
    LpStatus run() {
        std::size_t streak = 0;
        while (true) {
            if (iterations >= opts.max_iterations) return LpStatus::IterationLimit;
            const bool bland = streak >= opts.degenerate_streak;
            std::size_t col = enter_limit;
            double best = -opts.tol;
            for (std::size_t j = 0; j < enter_limit; ++j) {
                const double d = tab.z[j];
                if (d < best) {
                    col = j;
                    if (bland) break;
                    best = d;
                }
            }
            if (col == enter_limit) return LpStatus::Optimal;

            std::size_t row = tab.m;
            double ratio = kInfinity;
            for (std::size_t i = 0; i < tab.m; ++i) {
                const double a = tab.at(i, col);
                if (a <= opts.tol) continue;
                const double r = std::max(tab.rhs(i), 0.0) / a;
                if (r < ratio - 1e-14 || (r <= ratio + 1e-14 && row < tab.m && basis[i] < basis[row])) {
                    ratio = std::min(ratio, r);
                    row = i;
                }
            }
            if (row == tab.m) return LpStatus::Unbounded;
            streak = ratio <= 1e-14 ? streak + 1 : 0;
            tab.pivot(row, col);
            basis[row] = col;
            ++iterations;
        }
    }
};

}  // namespace

LpResult solve_standard_lp(const std::vector<double>& A, std::size_t rows, std::size_t cols,
                           const std::vector<double>& b, const std::vector<double>& c, const LpOptions& opts) {
    if (A.size() != rows * cols || b.size() != rows || c.size() != cols) throw Error("lp: dimension mismatch");
    LpResult res;
    const std::size_t total = cols + rows;
    Tableau tab(rows, total);
    std::vector<double> sign(rows, 1.0);
    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        sign[i] = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < cols; ++j) tab.at(i, j) = sign[i] * A[i * cols + j];
        tab.at(i, cols + i) = 1.0;
        tab.at(i, total) = sign[i] * b[i];
        basis[i] = cols + i;
    }

    // Phase 1: minimize the sum of artificials.
    for (std::size_t j = 0; j <= total; ++j) {
        double s = 0.0;
        if (j < cols || j == total)
            for (std::size_t i = 0; i < rows; ++i) s += tab.at(i, j);
        tab.z[j] = -s;
    }
    Runner p1{tab, basis, cols, opts};
    auto st = p1.run();
    res.iterations = p1.iterations;
    if (st == LpStatus::IterationLimit) {
        res.status = st;
        return res;
    }
    double bscale = 1.0;
    for (double v : b) bscale = std::max(bscale, std::abs(v));
    if (-tab.z[total] > 1e-9 * bscale) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    // Drive zero-level artificials out; rows that cannot be cleared are redundant.
    for (std::size_t i = 0; i < rows; ++i) {
        if (basis[i] < cols) continue;
        std::size_t best = cols;
        double mag = 1e-9;
        for (std::size_t j = 0; j < cols; ++j)
            if (std::abs(tab.at(i, j)) > mag) {
                mag = std::abs(tab.at(i, j));
                best = j;
            }
        if (best == cols) {
            res.dropped_rows.push_back(i);
            for (std::size_t j = 0; j < cols; ++j) tab.at(i, j) = 0.0;
        } else {
            tab.pivot(i, best);
            basis[i] = best;
        }
    }

    // Phase 2.
    for (std::size_t j = 0; j <= total; ++j) {
        double s = j < cols ? c[j] : 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            const double cb = basis[i] < cols ? c[basis[i]] : 0.0;
            if (cb != 0.0) s -= cb * tab.at(i, j);
        }
        tab.z[j] = s;
    }
    Runner p2{tab, basis, cols, opts};
    st = p2.run();
    res.iterations += p2.iterations;
    res.status = st;
    res.objective = -tab.z[total];

    res.x.assign(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols) res.x[basis[i]] = std::max(tab.rhs(i), 0.0);
    res.dual.assign(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) res.dual[i] = -tab.z[cols + i] * sign[i];
    if (st == LpStatus::Optimal) {
        double obj = 0.0;
        for (std::size_t j = 0; j < cols; ++j) obj += c[j] * res.x[j];
        res.objective = obj;
    }
    return res;
}

}  // namespace hardy
