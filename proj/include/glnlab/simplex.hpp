#pragma once

// Dense two-phase tableau simplex for  min c.x  s.t.  A x = b, x >= 0.
// Works over exact rationals (zero tolerance) or floating types.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "rational.hpp"

namespace glnlab {

template <class T>
struct LpTolerance {
    static T eps() { return T(1e-11L); }
};

template <>
struct LpTolerance<ExactProb> {
    static ExactProb eps() { return ExactProb(0); }
};

template <class T>
inline constexpr bool kExactScalar = std::is_same_v<T, ExactProb>;

template <class T>
struct LpProblem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> a;  // row-major rows x cols
    std::vector<T> b;
    std::vector<T> c;

    LpProblem(std::size_t r, std::size_t n) : rows(r), cols(n), a(r * n, T(0)), b(r, T(0)), c(n, T(0)) {}

    T& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const T& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

inline const char* status_name(LpStatus s) {
    switch (s) {
        case LpStatus::optimal: return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded: return "unbounded";
        case LpStatus::iteration_limit: return "iteration_limit";
    }
    return "?";
}

template <class T>
struct LpSolution {
    LpStatus status = LpStatus::iteration_limit;
    T objective = T(0);
    T dual_objective = T(0);
    std::vector<T> x;  // primal
    std::vector<T> y;  // duals of the equality rows
    double duality_gap = 0;       // |c.x - b.y|
    double dual_infeasibility = 0;  // max(0, -(c_j - A_j.y))
    std::size_t iterations = 0;
};

namespace detail {

template <class T>
double as_double(const T& v) {
    if constexpr (kExactScalar<T>) {
        return v.get_d();
    } else {
        return static_cast<double>(v);
    }
}

template <class T>
T abs_of(const T& v) {
    return v < T(0) ? T(-v) : v;
}

template <class T>
class Tableau {
public:
    Tableau(const LpProblem<T>& lp) : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows) {
        t_.assign(m_ * width_, T(0));
        rhs_.assign(m_, T(0));
        sign_.assign(m_, 1);
        for (std::size_t i = 0; i < m_; ++i) {
            sign_[i] = lp.b[i] < T(0) ? -1 : 1;
            for (std::size_t j = 0; j < n_; ++j) {
                const T& v = lp.at(i, j);
                cell(i, j) = sign_[i] < 0 ? T(-v) : v;
            }
            cell(i, n_ + i) = T(1);
            rhs_[i] = sign_[i] < 0 ? T(-lp.b[i]) : lp.b[i];
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + i;
        d_.assign(width_, T(0));
    }

    LpSolution<T> solve(const LpProblem<T>& lp, std::size_t max_iterations) {
        LpSolution<T> out;
        const T eps = LpTolerance<T>::eps();

        // phase 1: minimize the sum of artificials
        for (std::size_t j = 0; j < width_; ++j) d_[j] = T(0);
        z_ = T(0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) d_[j] -= cell(i, j);
            z_ -= rhs_[i];
        }
        LpStatus st = run(n_, max_iterations, out.iterations);
        if (st == LpStatus::iteration_limit) {
            out.status = st;
            return out;
        }
        if (-z_ > feasibility_tol(eps)) {
            out.status = LpStatus::infeasible;
            return out;
        }
        drive_out_artificials(eps);

        // phase 2: artificials stay at zero and never enter
        for (std::size_t j = 0; j < width_; ++j) d_[j] = j < n_ ? lp.c[j] : T(0);
        z_ = T(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const std::size_t bj = basis_[i];
            const T cb = bj < n_ ? lp.c[bj] : T(0);
            if (cb == T(0)) continue;
            for (std::size_t j = 0; j < width_; ++j) d_[j] -= cb * cell(i, j);
            z_ -= cb * rhs_[i];
        }
        st = run(n_, max_iterations, out.iterations);
        out.status = st;
        if (st != LpStatus::optimal) return out;

        out.x.assign(n_, T(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) out.x[basis_[i]] = rhs_[i];
        }
        out.objective = T(0);
        for (std::size_t j = 0; j < n_; ++j) out.objective += lp.c[j] * out.x[j];

        // reduced cost of artificial i is -y_i in the sign-adjusted system
        out.y.assign(m_, T(0));
        out.dual_objective = T(0);
        for (std::size_t i = 0; i < m_; ++i) {
            const T yi = -d_[n_ + i];
            out.y[i] = sign_[i] < 0 ? T(-yi) : yi;
            out.dual_objective += lp.b[i] * out.y[i];
        }
        out.duality_gap = std::abs(as_double(T(out.objective - out.dual_objective)));
        double worst = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            T reduced = lp.c[j];
            for (std::size_t i = 0; i < m_; ++i) {
                if (lp.at(i, j) != T(0)) reduced -= lp.at(i, j) * out.y[i];
            }
            if (reduced < T(0)) worst = std::max(worst, -as_double(reduced));
        }
        out.dual_infeasibility = worst;
        return out;
    }

private:
    T& cell(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }

    T feasibility_tol(const T& eps) const {
        if constexpr (kExactScalar<T>) {
            return eps;
        } else {
            return eps * T(static_cast<long double>(m_ + 1));
        }
    }

    // Dantzig pricing, switching to Bland's rule while pivots stay degenerate.
    LpStatus run(std::size_t enter_limit, std::size_t max_iterations, std::size_t& iterations) {
        const T eps = LpTolerance<T>::eps();
        std::size_t degenerate_streak = 0;
        constexpr std::size_t kBlandAfter = 20;
        for (;;) {
            if (iterations >= max_iterations) return LpStatus::iteration_limit;
            const bool bland = degenerate_streak >= kBlandAfter;
            std::size_t enter = width_;
            T best(0);
            for (std::size_t j = 0; j < enter_limit; ++j) {
                if (d_[j] < -eps) {
                    if (bland) {
                        enter = j;
                        break;
                    }
                    if (enter == width_ || d_[j] < best) {
                        enter = j;
                        best = d_[j];
                    }
                }
            }
            if (enter == width_) return LpStatus::optimal;

            std::size_t leave = m_;
            T ratio(0);
            for (std::size_t i = 0; i < m_; ++i) {
                const T& aij = cell(i, enter);
                if (aij > eps) {
                    const T r = rhs_[i] / aij;
                    if (leave == m_ || r < ratio || (r == ratio && basis_[i] < basis_[leave])) {
                        leave = i;
                        ratio = r;
                    }
                }
            }
            if (leave == m_) return LpStatus::unbounded;
            degenerate_streak = ratio > eps ? 0 : degenerate_streak + 1;
            pivot(leave, enter);
            ++iterations;
        }
    }

    void pivot(std::size_t r, std::size_t j) {
        const T inv = T(1) / cell(r, j);
        T* row = &t_[r * width_];
        for (std::size_t k = 0; k < width_; ++k) {
            if (row[k] != T(0)) row[k] *= inv;
        }
        rhs_[r] *= inv;
        row[j] = T(1);
        std::vector<std::size_t> nz;
        for (std::size_t k = 0; k < width_; ++k) {
            if (row[k] != T(0)) nz.push_back(k);
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            T* other = &t_[i * width_];
            if (other[j] == T(0)) continue;
            const T f = other[j];
            for (std::size_t k : nz) other[k] -= f * row[k];
            other[j] = T(0);
            rhs_[i] -= f * rhs_[r];
            if constexpr (!kExactScalar<T>) {
                if (rhs_[i] < T(0) && rhs_[i] > -LpTolerance<T>::eps()) rhs_[i] = T(0);
            }
        }
        if (d_[j] != T(0)) {
            const T f = d_[j];
            for (std::size_t k : nz) d_[k] -= f * row[k];
            d_[j] = T(0);
            z_ -= f * rhs_[r];
        }
        basis_[r] = j;
    }

    // Pivot basic artificials out where a structural column allows it; rows
    // with no such column are redundant and keep their artificial at zero.
    void drive_out_artificials(const T& eps) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t pick = n_;
            T largest = eps;
            for (std::size_t j = 0; j < n_; ++j) {
                const T v = abs_of(cell(i, j));
                if (v > largest) {
                    pick = j;
                    largest = v;
                    if constexpr (kExactScalar<T>) break;
                }
            }
            if (pick < n_) pivot(i, pick);
        }
    }

    std::size_t m_, n_, width_;
    std::vector<T> t_;
    std::vector<T> rhs_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
    std::vector<T> d_;
    T z_ = T(0);
};

}  // namespace detail

template <class T>
LpSolution<T> solve_lp(const LpProblem<T>& lp, std::size_t max_iterations = 200000) {
    detail::Tableau<T> tableau(lp);
    return tableau.solve(lp, max_iterations);
}

}  // namespace glnlab
