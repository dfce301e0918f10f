#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "gsmsim/errors.hpp"
#include "gsmsim/lifetime_lp.hpp"

namespace gsmsim {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;

struct Tableau {
    std::size_t rows = 0;
    std::size_t cols = 0; // structural + slack/surplus + artificial
    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    std::vector<std::size_t> basis; // variable index basic in each row
    std::vector<double> obj;        // reduced-cost row
    double obj_rhs = 0.0;

    void pivot(std::size_t r, std::size_t c) {
        const double p = a[r][c];
        if (std::abs(p) < kPivotTol)
            throw SolverError("simplex pivot below tolerance");
        const double inv = 1.0 / p;
        for (std::size_t j = 0; j < cols; ++j) a[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const double f = a[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            rhs[i] -= f * rhs[r];
            a[i][c] = 0.0;
        }
        const double f = obj[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * a[r][j];
            obj_rhs -= f * rhs[r];
            obj[c] = 0.0;
        }
        basis[r] = c;
    }

    // Maximizing simplex with Bland's rule; returns false on unboundedness.
    bool iterate() {
        const std::size_t limit = 50000 + 200 * (rows + cols);
        for (std::size_t iter = 0; iter < limit; ++iter) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols; ++j) {
                if (obj[j] > kCostTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols) return true; // optimal

            std::size_t leave = rows;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows; ++i) {
                if (a[i][enter] > kPivotTol) {
                    const double ratio = rhs[i] / a[i][enter];
                    if (ratio < best_ratio - kPivotTol ||
                        (ratio < best_ratio + kPivotTol &&
                         (leave == rows || basis[i] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == rows) return false; // unbounded direction
            pivot(leave, enter);
        }
        throw SolverError("simplex iteration limit exceeded");
    }
};

struct DenseRow {
    std::vector<double> a;
    LpRelation rel = LpRelation::Le;
    double rhs = 0.0;
};

} // namespace

LpSolution solve_lp(const LpInstance& instance) {
    const std::size_t n = instance.variables.size();
    LpSolution solution;
    if (n == 0) {
        solution.status = LpStatus::Optimal;
        solution.objective_value = 0.0;
        return solution;
    }
    if (instance.objective.size() != n)
        throw SolverError("objective size does not match variable count");

    // Gather rows; variable bounds beyond the native x >= 0 become rows too.
    std::vector<DenseRow> rows;
    for (const LpConstraint& c : instance.constraints) {
        DenseRow row;
        row.a.assign(n, 0.0);
        for (const LpTerm& t : c.terms) {
            if (t.var >= n) throw SolverError("constraint references unknown variable");
            row.a[t.var] += t.coeff;
        }
        row.rel = c.rel;
        row.rhs = c.rhs;
        rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const LpVariable& v = instance.variables[j];
        if (v.lower < 0.0) throw SolverError("negative lower bounds are not supported");
        if (v.lower > 0.0) {
            DenseRow row;
            row.a.assign(n, 0.0);
            row.a[j] = 1.0;
            row.rel = LpRelation::Ge;
            row.rhs = v.lower;
            rows.push_back(std::move(row));
        }
        if (v.upper != std::numeric_limits<double>::infinity()) {
            DenseRow row;
            row.a.assign(n, 0.0);
            row.a[j] = 1.0;
            row.rel = LpRelation::Le;
            row.rhs = v.upper;
            rows.push_back(std::move(row));
        }
    }

    for (DenseRow& row : rows) {
        if (row.rhs < 0.0) {
            for (double& v : row.a) v = -v;
            row.rhs = -row.rhs;
            if (row.rel == LpRelation::Le)
                row.rel = LpRelation::Ge;
            else if (row.rel == LpRelation::Ge)
                row.rel = LpRelation::Le;
        }
    }

    const std::size_t m = rows.size();
    std::size_t n_slack = 0, n_art = 0;
    for (const DenseRow& row : rows) {
        if (row.rel != LpRelation::Eq) ++n_slack;
        if (row.rel != LpRelation::Le) ++n_art;
    }

    Tableau t;
    t.rows = m;
    t.cols = n + n_slack + n_art;
    t.a.assign(m, std::vector<double>(t.cols, 0.0));
    t.rhs.assign(m, 0.0);
    t.basis.assign(m, 0);
    t.obj.assign(t.cols, 0.0);

    const std::size_t slack_base = n;
    const std::size_t art_base = n + n_slack;
    std::size_t next_slack = 0, next_art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const DenseRow& row = rows[i];
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = row.a[j];
        t.rhs[i] = row.rhs;
        if (row.rel == LpRelation::Le) {
            const std::size_t s = slack_base + next_slack++;
            t.a[i][s] = 1.0;
            t.basis[i] = s;
        } else if (row.rel == LpRelation::Ge) {
            const std::size_t s = slack_base + next_slack++;
            t.a[i][s] = -1.0;
            const std::size_t art = art_base + next_art++;
            t.a[i][art] = 1.0;
            t.basis[i] = art;
        } else {
            const std::size_t art = art_base + next_art++;
            t.a[i][art] = 1.0;
            t.basis[i] = art;
        }
    }

    if (n_art > 0) {
        // Phase 1: maximize minus the artificial sum. Reduced costs for the
        // basic artificials fold their rows into the objective row.
        for (std::size_t j = art_base; j < t.cols; ++j) t.obj[j] = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] >= art_base) {
                for (std::size_t j = 0; j < t.cols; ++j) t.obj[j] += t.a[i][j];
                t.obj_rhs += t.rhs[i];
            }
        }
        for (std::size_t j = art_base; j < t.cols; ++j) t.obj[j] = 0.0;
        if (!t.iterate()) throw SolverError("phase one reported unbounded");
        if (t.obj_rhs > kFeasTol) {
            solution.status = LpStatus::Infeasible;
            return solution;
        }
        // Kick lingering zero-value artificials out of the basis, then strip
        // the artificial columns so they can never re-enter. Rows whose
        // artificial cannot be replaced are redundant and get dropped.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < art_base) continue;
            std::size_t pivot_col = t.cols;
            for (std::size_t j = 0; j < art_base; ++j) {
                if (std::abs(t.a[i][j]) > kPivotTol) {
                    pivot_col = j;
                    break;
                }
            }
            if (pivot_col < t.cols) t.pivot(i, pivot_col);
        }
        std::size_t keep = 0;
        for (std::size_t i = 0; i < t.rows; ++i) {
            if (t.basis[i] >= art_base) {
                if (std::abs(t.rhs[i]) > kFeasTol)
                    throw SolverError("redundant row holds a nonzero artificial");
                continue;
            }
            if (keep != i) {
                t.a[keep] = std::move(t.a[i]);
                t.rhs[keep] = t.rhs[i];
                t.basis[keep] = t.basis[i];
            }
            ++keep;
        }
        t.rows = keep;
        t.a.resize(keep);
        t.rhs.resize(keep);
        t.basis.resize(keep);
        for (auto& row : t.a) row.resize(art_base);
        t.cols = art_base;
        t.obj.resize(art_base);
    }

    // Phase 2 objective priced over the current basis.
    for (double& v : t.obj) v = 0.0;
    t.obj_rhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.obj[j] = instance.objective[j];
    for (std::size_t i = 0; i < t.rows; ++i) {
        const std::size_t b = t.basis[i];
        const double cb = b < n ? instance.objective[b] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < t.cols; ++j) t.obj[j] -= cb * t.a[i][j];
        t.obj_rhs -= cb * t.rhs[i];
        t.obj[b] = 0.0;
    }

    if (!t.iterate()) {
        solution.status = LpStatus::Unbounded;
        solution.objective_value = std::numeric_limits<double>::infinity();
        return solution;
    }

    solution.values.assign(n, 0.0);
    for (std::size_t i = 0; i < t.rows; ++i)
        if (t.basis[i] < n) solution.values[t.basis[i]] = t.rhs[i];
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j) obj += instance.objective[j] * solution.values[j];
    solution.objective_value = obj;
    solution.status = LpStatus::Optimal;
    return solution;
}

} // namespace gsmsim
