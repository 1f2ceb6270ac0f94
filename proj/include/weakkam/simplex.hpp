#pragma once

/**
 * Dense two-phase primal simplex with Bland's rule.
 *
 * Solves  min c'x  s.t.  Ax = b, x >= 0.  Instantiated with exact rationals
 * the result is exact and termination is guaranteed; with doubles a small
 * pivot tolerance is used.  Sized for the Mather LP (n^2 variables, n+1
 * equality rows), not for general-purpose use.
 */

#include <stdexcept>
#include <vector>

#include "weakkam/scalar.hpp"

namespace weakkam {

template <class S>
struct LpSolution {
    S value;
    std::vector<S> x;
};

template <class S>
LpSolution<S> simplex_solve_min(std::vector<std::vector<S>> A, std::vector<S> b,
                                const std::vector<S>& cost) {
    const S eps = scalar_traits<S>::exact ? S(0) : S(1e-9);
    const int m0 = static_cast<int>(A.size());
    const int nv = static_cast<int>(cost.size());
    for (int i = 0; i < m0; ++i)
        if (b[i] < S(0)) {
            b[i] = -b[i];
            for (auto& v : A[i]) v = -v;
        }

    // tableau rows: [ structural | artificial | rhs ]
    int m = m0;
    const int ncols = nv + m0;
    std::vector<std::vector<S>> T(m, std::vector<S>(ncols + 1, S(0)));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) T[i][j] = A[i][j];
        T[i][nv + i] = S(1);
        T[i][ncols] = b[i];
        basis[i] = nv + i;
    }

    auto pivot = [&](int row, int col) {
        S p = T[row][col];
        for (auto& v : T[row]) v /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row) continue;
            S f = T[i][col];
            if (f == S(0)) continue;
            for (int j = 0; j <= ncols; ++j) T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
    };

    auto run_phase = [&](const std::vector<S>& obj_cost, int active_cols) {
        for (;;) {
            // reduced costs from scratch; O(m * cols) per iteration is fine here
            int enter = -1;
            for (int j = 0; j < active_cols && enter < 0; ++j) {
                S r = obj_cost[j];
                for (int i = 0; i < m; ++i)
                    if (obj_cost[basis[i]] != S(0)) r -= obj_cost[basis[i]] * T[i][j];
                if (r < -eps) enter = j;  // Bland: first improving index
            }
            if (enter < 0) return;
            int leave = -1;
            S best(0);
            for (int i = 0; i < m; ++i) {
                if (!(T[i][enter] > eps)) continue;
                S ratio = T[i][ncols] / T[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave]))
                    { best = ratio; leave = i; }
            }
            if (leave < 0) throw std::runtime_error("simplex: unbounded objective");
            pivot(leave, enter);
        }
    };

    // phase 1: minimize the artificial mass
    std::vector<S> phase1(ncols + 1, S(0));
    for (int j = nv; j < ncols; ++j) phase1[j] = S(1);
    run_phase(phase1, ncols);
    S infeas(0);
    for (int i = 0; i < m; ++i)
        if (basis[i] >= nv) infeas += T[i][ncols];
    if (infeas > eps) throw std::runtime_error("simplex: infeasible program");

    // drive leftover artificials out; all-zero rows are redundant constraints
    for (int i = 0; i < m;) {
        if (basis[i] < nv) { ++i; continue; }
        int col = -1;
        for (int j = 0; j < nv && col < 0; ++j)
            if (abs_val<S>(T[i][j]) > eps) col = j;
        if (col >= 0) {
            pivot(i, col);
            ++i;
        } else {
            T.erase(T.begin() + i);
            basis.erase(basis.begin() + i);
            --m;
        }
    }

    std::vector<S> phase2(ncols + 1, S(0));
    for (int j = 0; j < nv; ++j) phase2[j] = cost[j];
    run_phase(phase2, nv);

    LpSolution<S> out;
    out.x.assign(nv, S(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < nv) out.x[basis[i]] = T[i][ncols];
    out.value = S(0);
    for (int j = 0; j < nv; ++j) out.value += cost[j] * out.x[j];
    return out;
}

}  // namespace weakkam
