#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ldpc/errors.hpp"

namespace ldpc {

// Small dense two-phase simplex, sized for degree-distribution feasibility
// problems (tens of variables, a few hundred constraints). Bland's rule, so
// it cannot cycle.

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
    int num_vars = 0;
    std::vector<std::vector<double>> eq_a; // eq_a[i] . x == eq_b[i]
    std::vector<double> eq_b;
    std::vector<std::vector<double>> ub_a; // ub_a[i] . x <= ub_b[i]
    std::vector<double> ub_b;
    std::vector<double> objective; // maximize objective . x, x >= 0
};

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    int infeasible_row = -1; // index into [eq rows..., ub rows...] with largest phase-1 residual
};

namespace detail {

class SimplexTableau {
public:
    SimplexTableau(const LpProblem& p) : nv_(p.num_vars) {
        const int rows = static_cast<int>(p.eq_a.size() + p.ub_a.size());
        const int slacks = static_cast<int>(p.ub_a.size());
        ncols_ = nv_ + slacks; // artificials appended later
        rows_.assign(rows, {});
        rhs_.assign(rows, 0.0);
        int ri = 0;
        for (std::size_t i = 0; i < p.eq_a.size(); ++i, ++ri) {
            rows_[ri].assign(ncols_, 0.0);
            for (int j = 0; j < nv_; ++j) rows_[ri][j] = p.eq_a[i][j];
            rhs_[ri] = p.eq_b[i];
        }
        for (std::size_t i = 0; i < p.ub_a.size(); ++i, ++ri) {
            rows_[ri].assign(ncols_, 0.0);
            for (int j = 0; j < nv_; ++j) rows_[ri][j] = p.ub_a[i][j];
            rows_[ri][nv_ + static_cast<int>(i)] = 1.0;
            rhs_[ri] = p.ub_b[i];
        }
        // nonnegative right-hand sides
        for (int i = 0; i < rows; ++i)
            if (rhs_[i] < 0.0) {
                for (auto& v : rows_[i]) v = -v;
                rhs_[i] = -rhs_[i];
            }
        // initial basis: slack where it has +1 and rhs >= 0, else artificial
        basis_.assign(rows, -1);
        art_begin_ = ncols_;
        for (int i = 0; i < rows; ++i) {
            int slack_col = -1;
            if (i >= static_cast<int>(p.eq_a.size())) {
                slack_col = nv_ + (i - static_cast<int>(p.eq_a.size()));
                if (rows_[i][slack_col] < 0.0) slack_col = -1; // row was negated
            }
            if (slack_col >= 0) {
                basis_[i] = slack_col;
            } else {
                for (auto& row : rows_) row.push_back(0.0);
                rows_[i][ncols_] = 1.0;
                basis_[i] = ncols_;
                ++ncols_;
            }
        }
    }

    LpStatus run_phase1(int& worst_row) {
        if (ncols_ == art_begin_) return LpStatus::Optimal; // no artificials needed
        std::vector<double> cost(ncols_, 0.0);
        for (int a = art_begin_; a < ncols_; ++a) cost[a] = -1.0;
        optimize(cost, /*forbid_artificials=*/false); // bounded below by -sum(b), never unbounded
        double infeas = 0.0;
        worst_row = -1;
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (is_artificial(basis_[i]) && rhs_[i] > 1e-9) {
                if (rhs_[i] > infeas) {
                    infeas = rhs_[i];
                    worst_row = static_cast<int>(i);
                }
            }
        }
        if (infeas > 1e-9) return LpStatus::Infeasible;
        // Degenerate artificials still in the basis: pivot them out, or drop
        // the row entirely when it has become 0 = 0. Leaving one basic would
        // let later pivots push it positive again.
        for (std::size_t i = 0; i < basis_.size();) {
            if (!is_artificial(basis_[i])) { ++i; continue; }
            int col = -1;
            for (int j = 0; j < art_begin_; ++j)
                if (std::abs(rows_[i][j]) > 1e-9) { col = j; break; }
            if (col >= 0) {
                pivot(static_cast<int>(i), col);
                ++i;
            } else {
                rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
                rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
        return LpStatus::Optimal;
    }

    LpStatus run_phase2(const std::vector<double>& obj_vars) {
        std::vector<double> cost(ncols_, 0.0);
        for (int j = 0; j < nv_ && j < static_cast<int>(obj_vars.size()); ++j) cost[j] = obj_vars[j];
        return optimize(cost, /*forbid_artificials=*/true);
    }

    std::vector<double> solution() const {
        std::vector<double> x(nv_, 0.0);
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < nv_) x[basis_[i]] = rhs_[i];
        return x;
    }

private:
    bool is_artificial(int col) const { return col >= art_begin_; }

    void pivot(int row, int col) {
        double pv = rows_[row][col];
        for (auto& v : rows_[row]) v /= pv;
        rhs_[row] /= pv;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (static_cast<int>(i) == row) continue;
            double f = rows_[i][col];
            if (f == 0.0) continue;
            for (int j = 0; j < ncols_; ++j) rows_[i][j] -= f * rows_[row][j];
            rows_[i][col] = 0.0;
            rhs_[i] -= f * rhs_[row];
        }
        basis_[row] = col;
    }

    // maximize cost . (all columns); Bland's rule on both choices
    LpStatus optimize(const std::vector<double>& cost, bool forbid_artificials) {
        const double tol = 1e-9;
        for (;;) {
            // reduced costs from scratch: z_j - c_j
            int enter = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (forbid_artificials && is_artificial(j)) continue;
                double zj = 0.0;
                for (std::size_t i = 0; i < rows_.size(); ++i) zj += cost[basis_[i]] * rows_[i][j];
                if (zj - cost[j] < -tol) { enter = j; break; }
            }
            if (enter < 0) return LpStatus::Optimal;
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][enter] > tol) {
                    double ratio = rhs_[i] / rows_[i][enter];
                    if (ratio < best_ratio - 1e-12 ||
                        (ratio < best_ratio + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = static_cast<int>(i);
                    }
                }
            }
            if (leave < 0) return LpStatus::Unbounded;
            pivot(leave, enter);
        }
    }

    int nv_;
    int ncols_;
    int art_begin_ = 0;
    std::vector<std::vector<double>> rows_;
    std::vector<double> rhs_;
    std::vector<int> basis_;
};

} // namespace detail

inline LpResult solve_lp(const LpProblem& p) {
    for (const auto& r : p.eq_a)
        if (static_cast<int>(r.size()) != p.num_vars) throw Error("LP equality row size mismatch");
    for (const auto& r : p.ub_a)
        if (static_cast<int>(r.size()) != p.num_vars) throw Error("LP inequality row size mismatch");

    detail::SimplexTableau t(p);
    LpResult res;
    int worst = -1;
    if (t.run_phase1(worst) == LpStatus::Infeasible) {
        res.status = LpStatus::Infeasible;
        res.infeasible_row = worst;
        return res;
    }
    LpStatus st = t.run_phase2(p.objective);
    res.status = st;
    if (st == LpStatus::Optimal) {
        res.x = t.solution();
        res.objective = 0.0;
        for (int j = 0; j < p.num_vars && j < static_cast<int>(p.objective.size()); ++j)
            res.objective += p.objective[j] * res.x[j];
    }
    return res;
}

} // namespace ldpc
