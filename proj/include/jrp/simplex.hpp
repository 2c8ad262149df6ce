#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace jrp {

enum class RowSense { LessEq, GreaterEq, Equal };

enum class LpStatus { NotSolved, Optimal, Infeasible, Unbounded };

/// Dense-tableau two-phase primal simplex for minimization problems.
///
/// Variables are non-negative; rows carry a sense and a right-hand side.
/// Columns may be appended after a solve (the initial identity block stays in
/// the tableau, so B^-1 is always at hand), which is what the
/// column-generation masters rely on.  Anti-cycling falls back to Bland's
/// rule after 5*(rows+cols) pivots.
class DenseSimplex {
public:
    static constexpr double kPivotTol = 1e-9;
    static constexpr double kFeasTol = 1e-7;

    DenseSimplex(std::vector<RowSense> sense, std::vector<double> rhs)
        : sense_(std::move(sense)), rhs_(std::move(rhs)) {
        if (sense_.size() != rhs_.size())
            throw std::invalid_argument("simplex: sense/rhs size mismatch");
        flip_.assign(rhs_.size(), 1.0);
        for (std::size_t i = 0; i < rhs_.size(); ++i) {
            if (rhs_[i] < 0.0) {
                flip_[i] = -1.0;
                rhs_[i] = -rhs_[i];
                if (sense_[i] == RowSense::LessEq) sense_[i] = RowSense::GreaterEq;
                else if (sense_[i] == RowSense::GreaterEq) sense_[i] = RowSense::LessEq;
            }
        }
    }

    int num_rows() const { return static_cast<int>(rhs_.size()); }
    int num_variables() const { return static_cast<int>(cost_.size()); }

    /// Register a structural variable; coeffs are (row, value) pairs in the
    /// original (unflipped) row convention.  Returns the variable index.
    int add_variable(double cost, const std::vector<std::pair<int, double>>& coeffs) {
        cost_.push_back(cost);
        std::vector<int> rows(coeffs.size());
        std::vector<double> vals(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            rows[k] = coeffs[k].first;
            vals[k] = coeffs[k].second * flip_[coeffs[k].first];
        }
        int var = num_variables() - 1;
        if (status_ == LpStatus::NotSolved) {
            pending_rows_.push_back(std::move(rows));
            pending_vals_.push_back(std::move(vals));
        } else {
            append_column(var, rows, vals);
        }
        return var;
    }

    LpStatus solve() {
        build_tableau();
        if (num_rows() == 0) { status_ = LpStatus::Optimal; return status_; }
        if (!phase_one()) {
            status_ = LpStatus::Infeasible;
            return status_;
        }
        load_phase_two_costs();
        status_ = run_simplex() ? LpStatus::Optimal : LpStatus::Unbounded;
        return status_;
    }

    /// Resume primal iterations after columns were appended post-solve.
    LpStatus reoptimize() {
        if (status_ == LpStatus::NotSolved) return solve();
        if (num_rows() == 0) return status_;
        status_ = run_simplex() ? LpStatus::Optimal : LpStatus::Unbounded;
        return status_;
    }

    LpStatus status() const { return status_; }

    double objective() const {
        double obj = 0.0;
        for (int i = 0; i < num_rows(); ++i) {
            int v = var_of_col_[basis_[i]];
            if (v >= 0) obj += cost_[v] * b_[i];
        }
        return obj;
    }

    double primal(int var) const {
        int row = basis_row_[col_of_var_[var]];
        return row >= 0 ? b_[row] : 0.0;
    }

    /// Dual value of an original row (min convention: the reduced cost of a
    /// structural column equals cost - y^T a).
    double dual(int row) const {
        double y = -red_[identity_col_[row]];
        return flip_[row] * y;
    }

    double reduced_cost(int var) const { return red_[col_of_var_[var]]; }

    long long pivots() const { return pivots_; }

private:
    // problem data
    std::vector<RowSense> sense_;
    std::vector<double> rhs_;
    std::vector<double> flip_;
    std::vector<double> cost_;
    std::vector<std::vector<int>> pending_rows_;
    std::vector<std::vector<double>> pending_vals_;

    // tableau state
    std::vector<std::vector<double>> tab_;   // one vector per row
    std::vector<double> b_;
    std::vector<double> red_;                // reduced costs per column
    std::vector<int> basis_;                 // row -> column
    std::vector<int> basis_row_;             // column -> row (-1 if nonbasic)
    std::vector<int> identity_col_;          // row -> its slack/artificial column
    std::vector<bool> artificial_;           // per column
    std::vector<bool> dead_row_;             // redundant rows found in phase 1
    std::vector<int> col_of_var_;
    std::vector<int> var_of_col_;            // -1 for slack/surplus/artificial
    int ncols_ = 0;
    bool in_phase_one_ = false;
    long long pivots_ = 0;
    LpStatus status_ = LpStatus::NotSolved;

    void build_tableau() {
        int m = num_rows();
        int n = num_variables();
        int nslack = 0, nartif = 0;
        for (auto s : sense_) {
            if (s != RowSense::Equal) ++nslack;
            if (s != RowSense::LessEq) ++nartif;
        }
        ncols_ = n + nslack + nartif;
        tab_.assign(m, std::vector<double>(ncols_, 0.0));
        b_ = rhs_;
        basis_.assign(m, -1);
        basis_row_.assign(ncols_, -1);
        identity_col_.assign(m, -1);
        artificial_.assign(ncols_, false);
        dead_row_.assign(m, false);
        col_of_var_.resize(n);
        var_of_col_.assign(ncols_, -1);

        for (int v = 0; v < n; ++v) {
            col_of_var_[v] = v;
            var_of_col_[v] = v;
            for (std::size_t k = 0; k < pending_rows_[v].size(); ++k)
                tab_[pending_rows_[v][k]][v] = pending_vals_[v][k];
        }
        pending_rows_.clear();
        pending_vals_.clear();

        int col = n;
        for (int i = 0; i < m; ++i) {
            if (sense_[i] == RowSense::LessEq) {
                tab_[i][col] = 1.0;
                basis_[i] = col;
                basis_row_[col] = i;
                identity_col_[i] = col;
                ++col;
            } else if (sense_[i] == RowSense::GreaterEq) {
                tab_[i][col] = -1.0; // surplus
                ++col;
            }
        }
        for (int i = 0; i < m; ++i) {
            if (sense_[i] != RowSense::LessEq) {
                tab_[i][col] = 1.0; // artificial
                artificial_[col] = true;
                basis_[i] = col;
                basis_row_[col] = i;
                identity_col_[i] = col;
                ++col;
            }
        }
    }

    bool phase_one() {
        in_phase_one_ = true;
        // Phase-1 reduced costs: artificials cost 1, everything else 0; all
        // artificials start basic, so red_j = -sum of their rows.
        red_.assign(ncols_, 0.0);
        for (int i = 0; i < num_rows(); ++i) {
            if (artificial_[basis_[i]])
                for (int j = 0; j < ncols_; ++j) red_[j] -= tab_[i][j];
        }
        for (int i = 0; i < num_rows(); ++i) red_[basis_[i]] = 0.0;

        if (!run_simplex())
            throw std::runtime_error("simplex: phase 1 unbounded");
        double infeas = 0.0;
        for (int i = 0; i < num_rows(); ++i)
            if (artificial_[basis_[i]]) infeas += b_[i];
        in_phase_one_ = false;
        if (infeas > kFeasTol) return false;
        drive_out_artificials();
        return true;
    }

    void drive_out_artificials() {
        for (int i = 0; i < num_rows(); ++i) {
            if (!artificial_[basis_[i]]) continue;
            int enter = -1;
            for (int j = 0; j < ncols_; ++j) {
                if (artificial_[j]) continue;
                if (std::abs(tab_[i][j]) > kPivotTol) { enter = j; break; }
            }
            if (enter >= 0) {
                pivot(i, enter);
            } else {
                // Redundant row: zero over all real columns, b == 0.
                dead_row_[i] = true;
            }
        }
    }

    void load_phase_two_costs() {
        red_.assign(ncols_, 0.0);
        for (int v = 0; v < num_variables(); ++v) red_[col_of_var_[v]] = cost_[v];
        for (int i = 0; i < num_rows(); ++i) {
            int v = var_of_col_[basis_[i]];
            if (v >= 0 && cost_[v] != 0.0)
                for (int j = 0; j < ncols_; ++j) red_[j] -= cost_[v] * tab_[i][j];
        }
        for (int i = 0; i < num_rows(); ++i) red_[basis_[i]] = 0.0;
    }

    bool run_simplex() {
        long long bland_after = 5LL * (num_rows() + ncols_);
        long long start = pivots_;
        const long long hard_cap = 2000000;
        while (true) {
            bool bland = (pivots_ - start) > bland_after;
            int enter = -1;
            double best = -kPivotTol;
            for (int j = 0; j < ncols_; ++j) {
                if (artificial_[j] || basis_row_[j] >= 0) continue;
                if (red_[j] < best) {
                    enter = j;
                    if (bland) break;
                    best = red_[j];
                }
            }
            if (enter < 0) return true;

            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < num_rows(); ++i) {
                if (dead_row_[i]) continue;
                double a = tab_[i][enter];
                if (a > kPivotTol) {
                    double ratio = b_[i] / a;
                    if (ratio < best_ratio - kPivotTol ||
                        (ratio < best_ratio + kPivotTol &&
                         (leave < 0 || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return false; // unbounded
            pivot(leave, enter);
            if (pivots_ - start > hard_cap)
                throw std::runtime_error("simplex: pivot limit exceeded");
        }
    }

    void pivot(int prow, int pcol) {
        ++pivots_;
        std::vector<double>& rp = tab_[prow];
        double inv = 1.0 / rp[pcol];
        for (int j = 0; j < ncols_; ++j) rp[j] *= inv;
        rp[pcol] = 1.0;
        b_[prow] *= inv;
        for (int i = 0; i < num_rows(); ++i) {
            if (i == prow) continue;
            double f = tab_[i][pcol];
            if (std::abs(f) < 1e-14) continue;
            std::vector<double>& ri = tab_[i];
            for (int j = 0; j < ncols_; ++j) ri[j] -= f * rp[j];
            ri[pcol] = 0.0;
            b_[i] -= f * b_[prow];
            if (b_[i] < 0.0 && b_[i] > -kPivotTol) b_[i] = 0.0;
        }
        double fr = red_[pcol];
        if (fr != 0.0) {
            for (int j = 0; j < ncols_; ++j) red_[j] -= fr * rp[j];
        }
        red_[pcol] = 0.0;
        basis_row_[basis_[prow]] = -1;
        basis_[prow] = pcol;
        basis_row_[pcol] = prow;
    }

    void append_column(int var, const std::vector<int>& rows,
                       const std::vector<double>& vals) {
        // Transformed column B^-1 a via the identity block; reduced cost via
        // the duals read off the same block.
        int m = num_rows();
        std::vector<double> col(m, 0.0);
        double rc = cost_[var];
        for (std::size_t k = 0; k < rows.size(); ++k) {
            int r = rows[k];
            double a = vals[k];
            int id = identity_col_[r];
            for (int i = 0; i < m; ++i) col[i] += a * tab_[i][id];
            rc += a * red_[id]; // red_[id] == -y_r
        }
        for (int i = 0; i < m; ++i) tab_[i].push_back(col[i]);
        red_.push_back(rc);
        basis_row_.push_back(-1);
        artificial_.push_back(false);
        var_of_col_.push_back(var);
        col_of_var_.push_back(ncols_);
        ++ncols_;
    }
};

} // namespace jrp
