#pragma once

#include "zecap/rational.hpp"
#include "zecap/sqrt2.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace zecap {

enum class Rel { Le, Eq, Ge };
enum class Sense { Max, Min };
enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LinearProgram {
    Sense sense = Sense::Max;
    std::vector<std::string> var_names;
    std::vector<S> objective;
    std::vector<bool> nonneg;

    struct Row {
        std::vector<S> coeff;
        Rel rel = Rel::Le;
        S rhs{0};
        std::string name;
    };
    std::vector<Row> rows;

    int add_var(std::string name, S obj = S(0), bool nn = true) {
        var_names.push_back(std::move(name));
        objective.push_back(std::move(obj));
        nonneg.push_back(nn);
        return static_cast<int>(var_names.size()) - 1;
    }

    // sparse row: (var index, coefficient) pairs
    void add_row(const std::vector<std::pair<int, S>>& terms, Rel rel, S rhs,
                 std::string name = {}) {
        Row r;
        r.coeff.assign(var_names.size(), S(0));
        for (const auto& [j, c] : terms) r.coeff[j] += c;
        r.rel = rel;
        r.rhs = std::move(rhs);
        r.name = std::move(name);
        rows.push_back(std::move(r));
    }

    void validate() const {
        for (const auto& r : rows)
            if (r.coeff.size() != var_names.size())
                throw Error("LP row '" + r.name + "' has wrong length");
    }
};

// status == Optimal:   primal/dual are certificates of optimality.
// status == Infeasible: dual holds a Farkas certificate over the rows.
// status == Unbounded:  primal is a feasible point, ray an improving direction.
template <class S>
struct LpResult {
    LpStatus status = LpStatus::Optimal;
    S value{0};
    std::vector<S> primal;
    std::vector<S> dual;
    std::vector<S> ray;

    bool verify(const LinearProgram<S>& lp) const;
};

namespace detail {

// Dense two-phase primal simplex over an exactly ordered field. Entering
// rule: largest reduced cost with lowest-index ties; after a run of
// degenerate pivots it falls back to Bland's rule, which cannot cycle, and
// returns to the faster rule once the objective moves again.
template <class S>
class Simplex {
public:
    explicit Simplex(const LinearProgram<S>& lp) : lp_(lp) { build(); }

    LpResult<S> solve() {
        LpResult<S> res;
        if (!phase1()) {
            res.status = LpStatus::Infeasible;
            res.dual = extract_farkas();
            return res;
        }
        int ph2 = phase2();
        if (ph2 < 0) {
            res.status = LpStatus::Unbounded;
            res.primal = extract_primal();
            res.ray = extract_ray(-ph2 - 1);
            return res;
        }
        res.status = LpStatus::Optimal;
        res.primal = extract_primal();
        res.dual = extract_duals();
        res.value = S(0);
        for (size_t j = 0; j < lp_.objective.size(); ++j)
            res.value += lp_.objective[j] * res.primal[j];
        return res;
    }

    // phase 1 only
    std::pair<bool, std::vector<S>> check_feasible() {
        if (!phase1()) return {false, extract_farkas()};
        return {true, extract_primal()};
    }

private:
    const LinearProgram<S>& lp_;

    // standardised data: max obj_ subject to T rows (all equalities with
    // slack/artificial identity columns), x >= 0
    int m_ = 0;                    // rows after dedup
    int ncols_ = 0;                // structural + slack + artificial
    int nstruct_ = 0;              // structural columns (after free splits)
    std::vector<std::vector<S>> tab_;   // m_ x (ncols_+1), last col = rhs
    std::vector<S> cost_;               // phase-2 cost per column (standardised max)
    std::vector<int> basis_;            // basic column per row
    std::vector<bool> artificial_;      // per column
    std::vector<int> identity_col_;     // per row: its slack or artificial column
    std::vector<int> row_origin_;       // standardised row -> original row index
    std::vector<bool> row_negated_;     // original row multiplied by -1
    std::vector<int> col_var_;          // structural column -> original var
    std::vector<int> col_sign_;         // +1 for x+, -1 for x- of split frees
    std::vector<S> obj_row_;            // reduced costs, ncols_
    S obj_val_{0};
    bool maximise_ = true;

    void build() {
        lp_.validate();
        maximise_ = lp_.sense == Sense::Max;
        const int nv = static_cast<int>(lp_.var_names.size());

        // split free variables into x+ - x-
        for (int j = 0; j < nv; ++j) {
            col_var_.push_back(j);
            col_sign_.push_back(1);
        }
        for (int j = 0; j < nv; ++j) {
            if (!lp_.nonneg[j]) {
                col_var_.push_back(j);
                col_sign_.push_back(-1);
            }
        }
        nstruct_ = static_cast<int>(col_var_.size());

        // deduplicate identical rows, keep first occurrences
        std::vector<int> kept;
        {
            std::map<std::pair<int, std::vector<S>>, int> seen;
            for (size_t i = 0; i < lp_.rows.size(); ++i) {
                const auto& r = lp_.rows[i];
                std::vector<S> key = r.coeff;
                key.push_back(r.rhs);
                auto k = std::make_pair(static_cast<int>(r.rel), std::move(key));
                if (seen.emplace(std::move(k), static_cast<int>(i)).second)
                    kept.push_back(static_cast<int>(i));
            }
        }
        m_ = static_cast<int>(kept.size());

        // count slacks and artificials
        int nslack = 0, nart = 0;
        for (int idx : kept) {
            Rel rel = lp_.rows[idx].rel;
            bool neg = lp_.rows[idx].rhs < S(0);
            Rel eff = rel;
            if (neg) eff = rel == Rel::Le ? Rel::Ge : (rel == Rel::Ge ? Rel::Le : Rel::Eq);
            if (eff != Rel::Eq) ++nslack;
            if (eff != Rel::Le) ++nart;
        }
        ncols_ = nstruct_ + nslack + nart;
        tab_.assign(m_, std::vector<S>(ncols_ + 1, S(0)));
        cost_.assign(ncols_, S(0));
        artificial_.assign(ncols_, false);
        basis_.assign(m_, -1);
        identity_col_.assign(m_, -1);
        row_origin_.resize(m_);
        row_negated_.assign(m_, false);

        for (int c = 0; c < nstruct_; ++c) {
            S obj = lp_.objective[col_var_[c]] * S(col_sign_[c]);
            cost_[c] = maximise_ ? obj : -obj;
        }

        int slack_at = nstruct_, art_at = nstruct_ + nslack;
        for (int i = 0; i < m_; ++i) {
            const auto& r = lp_.rows[kept[i]];
            row_origin_[i] = kept[i];
            bool neg = r.rhs < S(0);
            row_negated_[i] = neg;
            Rel eff = r.rel;
            if (neg) eff = r.rel == Rel::Le ? Rel::Ge : (r.rel == Rel::Ge ? Rel::Le : Rel::Eq);
            for (int c = 0; c < nstruct_; ++c) {
                S v = r.coeff[col_var_[c]] * S(col_sign_[c]);
                tab_[i][c] = neg ? -v : v;
            }
            tab_[i][ncols_] = neg ? -r.rhs : r.rhs;
            if (eff == Rel::Le) {
                tab_[i][slack_at] = S(1);
                basis_[i] = slack_at;
                identity_col_[i] = slack_at;
                ++slack_at;
            } else {
                if (eff == Rel::Ge) {
                    tab_[i][slack_at] = S(-1);
                    ++slack_at;
                }
                tab_[i][art_at] = S(1);
                artificial_[art_at] = true;
                basis_[i] = art_at;
                identity_col_[i] = art_at;
                ++art_at;
            }
        }
    }

    void pivot(int r, int c) {
        S inv = tab_[r][c];
        for (int j = 0; j <= ncols_; ++j) tab_[r][j] /= inv;
        tab_[r][c] = S(1);
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            S f = tab_[i][c];
            if (f == S(0)) continue;
            for (int j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[r][j];
            tab_[i][c] = S(0);
        }
        S f = obj_row_[c];
        if (f != S(0)) {
            for (int j = 0; j < ncols_; ++j) obj_row_[j] -= f * tab_[r][j];
            obj_val_ += f * tab_[r][ncols_];
            obj_row_[c] = S(0);
        }
        basis_[r] = c;
    }

    // ratio test; Bland-compatible tie break (lowest basis variable index)
    int leaving(int c) const {
        int r = -1;
        for (int i = 0; i < m_; ++i) {
            if (tab_[i][c].sign() <= 0) continue;
            if (r < 0) { r = i; continue; }
            S lhs = tab_[i][ncols_] * tab_[r][c];
            S rhs = tab_[r][ncols_] * tab_[i][c];
            if (lhs < rhs || (lhs == rhs && basis_[i] < basis_[r])) r = i;
        }
        return r;
    }

    // returns 0 on optimal, -(c+1) when column c proves unboundedness
    int iterate(const std::vector<bool>& allowed) {
        long stall = 0;
        bool bland = false;
        const long stall_limit = 2L * (m_ + ncols_) + 16;
        for (;;) {
            int c = -1;
            if (!bland) {
                for (int j = 0; j < ncols_; ++j)
                    if (allowed[j] && obj_row_[j].sign() > 0 &&
                        (c < 0 || obj_row_[j] > obj_row_[c]))
                        c = j;
            } else {
                for (int j = 0; j < ncols_; ++j)
                    if (allowed[j] && obj_row_[j].sign() > 0) { c = j; break; }
            }
            if (c < 0) return 0;
            int r = leaving(c);
            if (r < 0) return -(c + 1);
            S before = obj_val_;
            pivot(r, c);
            if (obj_val_ == before) {
                if (++stall > stall_limit) bland = true;
            } else {
                stall = 0;
                bland = false;
            }
        }
    }

    void price_out(const std::vector<S>& cost) {
        obj_row_.assign(ncols_, S(0));
        obj_val_ = S(0);
        for (int j = 0; j < ncols_; ++j) obj_row_[j] = cost[j];
        for (int i = 0; i < m_; ++i) {
            S cb = cost[basis_[i]];
            if (cb == S(0)) continue;
            for (int j = 0; j < ncols_; ++j) obj_row_[j] -= cb * tab_[i][j];
            obj_val_ += cb * tab_[i][ncols_];
        }
    }

    bool phase1() {
        bool any_art = false;
        for (int j = 0; j < ncols_; ++j) any_art = any_art || artificial_[j];
        if (!any_art) {
            price_out(cost_);
            return true;
        }
        std::vector<S> p1cost(ncols_, S(0));
        for (int j = 0; j < ncols_; ++j)
            if (artificial_[j]) p1cost[j] = S(-1);
        price_out(p1cost);
        std::vector<bool> allowed(ncols_, true);
        iterate(allowed);
        if (obj_val_.sign() < 0) return false;
        // drive surviving artificials out of the basis
        for (int i = 0; i < m_; ++i) {
            if (!artificial_[basis_[i]]) continue;
            int c = -1;
            for (int j = 0; j < ncols_ && c < 0; ++j)
                if (!artificial_[j] && tab_[i][j] != S(0)) c = j;
            if (c >= 0) pivot(i, c);
            // else: redundant row, harmless to keep with a zero artificial
        }
        price_out(cost_);
        return true;
    }

    int phase2() {
        std::vector<bool> allowed(ncols_, true);
        for (int j = 0; j < ncols_; ++j)
            if (artificial_[j]) allowed[j] = false;
        return iterate(allowed);
    }

    std::vector<S> extract_primal() const {
        std::vector<S> x(lp_.var_names.size(), S(0));
        for (int i = 0; i < m_; ++i) {
            int c = basis_[i];
            if (c < nstruct_) x[col_var_[c]] += S(col_sign_[c]) * tab_[i][ncols_];
        }
        return x;
    }

    // duals in original row order and original sense; y_i read off the
    // reduced cost of row i's identity column
    std::vector<S> extract_duals() const {
        std::vector<S> y(lp_.rows.size(), S(0));
        for (int i = 0; i < m_; ++i) {
            int c = identity_col_[i];
            S yi = cost_[c] - obj_row_[c];
            if (row_negated_[i]) yi = -yi;
            if (!maximise_) yi = -yi;
            y[row_origin_[i]] = yi;
        }
        return y;
    }

    // Farkas certificate from the phase-1 optimum (obj_row_ still holds
    // phase-1 reduced costs when this is called)
    std::vector<S> extract_farkas() const {
        std::vector<S> y(lp_.rows.size(), S(0));
        for (int i = 0; i < m_; ++i) {
            int c = identity_col_[i];
            S p1c = artificial_[c] ? S(-1) : S(0);
            S yi = p1c - obj_row_[c];
            if (row_negated_[i]) yi = -yi;
            y[row_origin_[i]] = yi;
        }
        return y;
    }

    std::vector<S> extract_ray(int c) const {
        std::vector<S> d(lp_.var_names.size(), S(0));
        if (c < nstruct_) d[col_var_[c]] += S(col_sign_[c]);
        for (int i = 0; i < m_; ++i) {
            int bc = basis_[i];
            if (bc < nstruct_) d[col_var_[bc]] -= S(col_sign_[bc]) * tab_[i][c];
        }
        return d;
    }
};

} // namespace detail

template <class S>
LpResult<S> solve(const LinearProgram<S>& lp) {
    detail::Simplex<S> s(lp);
    return s.solve();
}

// Feasibility question only (simplex phase 1). `point` is a feasible point
// when feasible, `farkas` an infeasibility certificate otherwise.
template <class S>
struct FeasibilityResult {
    bool is_feasible = false;
    std::vector<S> point;
    std::vector<S> farkas;

    bool verify(const LinearProgram<S>& lp) const {
        if (is_feasible) {
            if (point.size() != lp.var_names.size()) return false;
            for (size_t j = 0; j < point.size(); ++j)
                if (lp.nonneg[j] && point[j].sign() < 0) return false;
            for (const auto& r : lp.rows) {
                S lhs(0);
                for (size_t j = 0; j < point.size(); ++j) lhs += r.coeff[j] * point[j];
                if (r.rel == Rel::Le && lhs > r.rhs) return false;
                if (r.rel == Rel::Ge && lhs < r.rhs) return false;
                if (r.rel == Rel::Eq && lhs != r.rhs) return false;
            }
            return true;
        }
        LpResult<S> stub;
        stub.status = LpStatus::Infeasible;
        stub.dual = farkas;
        return stub.verify(lp);
    }
};

template <class S>
FeasibilityResult<S> feasible(const LinearProgram<S>& lp) {
    detail::Simplex<S> s(lp);
    auto [ok, vec] = s.check_feasible();
    FeasibilityResult<S> res;
    res.is_feasible = ok;
    if (ok)
        res.point = std::move(vec);
    else
        res.farkas = std::move(vec);
    return res;
}

template <class S>
bool LpResult<S>::verify(const LinearProgram<S>& lp) const {
    const size_t nv = lp.var_names.size();
    const size_t nr = lp.rows.size();
    auto primal_feasible = [&](const std::vector<S>& x) {
        if (x.size() != nv) return false;
        for (size_t j = 0; j < nv; ++j)
            if (lp.nonneg[j] && x[j].sign() < 0) return false;
        for (const auto& r : lp.rows) {
            S lhs(0);
            for (size_t j = 0; j < nv; ++j) lhs += r.coeff[j] * x[j];
            if (r.rel == Rel::Le && lhs > r.rhs) return false;
            if (r.rel == Rel::Ge && lhs < r.rhs) return false;
            if (r.rel == Rel::Eq && lhs != r.rhs) return false;
        }
        return true;
    };

    if (status == LpStatus::Optimal) {
        if (!primal_feasible(primal)) return false;
        if (dual.size() != nr) return false;
        // dual sign conditions (stated for Max; Min flips them)
        const int flip = lp.sense == Sense::Max ? 1 : -1;
        for (size_t i = 0; i < nr; ++i) {
            int s = dual[i].sign() * flip;
            if (lp.rows[i].rel == Rel::Le && s < 0) return false;
            if (lp.rows[i].rel == Rel::Ge && s > 0) return false;
        }
        // dual feasibility and complementary slackness
        for (size_t j = 0; j < nv; ++j) {
            S red = lp.objective[j];
            for (size_t i = 0; i < nr; ++i) red -= dual[i] * lp.rows[i].coeff[j];
            // reduced cost: <= 0 for Max on nonneg vars, = 0 on free vars
            int s = red.sign() * flip;
            if (!lp.nonneg[j]) {
                if (red != S(0)) return false;
            } else if (s > 0) {
                return false;
            }
            if (primal[j] != S(0) && red != S(0)) return false;
        }
        for (size_t i = 0; i < nr; ++i) {
            if (dual[i] == S(0)) continue;
            S lhs(0);
            for (size_t j = 0; j < nv; ++j) lhs += lp.rows[i].coeff[j] * primal[j];
            if (lhs != lp.rows[i].rhs) return false;
        }
        // strong duality
        S pv(0), dv(0);
        for (size_t j = 0; j < nv; ++j) pv += lp.objective[j] * primal[j];
        for (size_t i = 0; i < nr; ++i) dv += dual[i] * lp.rows[i].rhs;
        return pv == value && dv == value;
    }

    if (status == LpStatus::Infeasible) {
        if (dual.size() != nr) return false;
        // y with sign pattern (y_i >= 0 on Le, <= 0 on Ge), y'A >= 0 on
        // nonneg vars, y'A = 0 on free vars, and y'b < 0
        S yb(0);
        for (size_t i = 0; i < nr; ++i) {
            if (lp.rows[i].rel == Rel::Le && dual[i].sign() < 0) return false;
            if (lp.rows[i].rel == Rel::Ge && dual[i].sign() > 0) return false;
            yb += dual[i] * lp.rows[i].rhs;
        }
        if (yb.sign() >= 0) return false;
        for (size_t j = 0; j < nv; ++j) {
            S ya(0);
            for (size_t i = 0; i < nr; ++i) ya += dual[i] * lp.rows[i].coeff[j];
            if (!lp.nonneg[j]) {
                if (ya != S(0)) return false;
            } else if (ya.sign() < 0) {
                return false;
            }
        }
        return true;
    }

    // Unbounded: feasible point plus improving recession direction
    if (!primal_feasible(primal)) return false;
    if (ray.size() != nv) return false;
    for (size_t j = 0; j < nv; ++j)
        if (lp.nonneg[j] && ray[j].sign() < 0) return false;
    for (const auto& r : lp.rows) {
        S lhs(0);
        for (size_t j = 0; j < nv; ++j) lhs += r.coeff[j] * ray[j];
        if (r.rel == Rel::Le && lhs.sign() > 0) return false;
        if (r.rel == Rel::Ge && lhs.sign() < 0) return false;
        if (r.rel == Rel::Eq && lhs != S(0)) return false;
    }
    S cd(0);
    for (size_t j = 0; j < nv; ++j) cd += lp.objective[j] * ray[j];
    return lp.sense == Sense::Max ? cd.sign() > 0 : cd.sign() < 0;
}

} // namespace zecap
