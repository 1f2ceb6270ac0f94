#pragma once

/**
 * The selected solution u_0 and the convergence experiment.
 *
 * u_0(x) = min over projected extreme Mather measures mu of
 *          sum_y mu(y) h(y,x),
 * which is also the pointwise supremum of the family F_- of critical
 * subsolutions with nonpositive integral against every projected Mather
 * measure.  convergence_sweep witnesses u_lambda^alpha -> u_0 as
 * lambda -> 1^-.
 */

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakkam/critical.hpp"
#include "weakkam/lax_oleinik.hpp"
#include "weakkam/mather.hpp"
#include "weakkam/space.hpp"

namespace weakkam {

/// h_mu(x) = sum_y mu(y) h(y,x): mu-average of the barrier rows.
template <class S>
std::vector<S> h_mu(const Space<S>& sp, const BarrierData<S>& barrier,
                    const NodeMeasure<S>& mu) {
    std::vector<S> out(sp.n, S(0));
    for (int y = 0; y < sp.n; ++y) {
        if (mu[y] == S(0)) continue;
        for (int x = 0; x < sp.n; ++x) out[x] += mu[y] * barrier.h_at(y, x, sp.n);
    }
    return out;
}

template <class S>
struct SelectionResult {
    std::vector<S> u0;
    std::vector<CycleMeasure<S>> measures;
    std::vector<std::vector<S>> h_mu_values;  // aligned with measures
    std::vector<int> argmin_measure;          // minimizing measure index per point
};

template <class S>
SelectionResult<S> compute_u0(const Space<S>& sp, const BarrierData<S>& barrier,
                              const std::vector<CycleMeasure<S>>& extremes) {
    if (extremes.empty()) throw std::invalid_argument("compute_u0: no extreme measures");
    SelectionResult<S> res;
    res.measures = extremes;
    for (const auto& cm : extremes)
        res.h_mu_values.push_back(h_mu(sp, barrier, project(cm.measure, 1)));
    res.u0.resize(sp.n);
    res.argmin_measure.resize(sp.n);
    for (int x = 0; x < sp.n; ++x) {
        S best = res.h_mu_values[0][x];
        int arg = 0;
        for (std::size_t m = 1; m < res.h_mu_values.size(); ++m)
            if (res.h_mu_values[m][x] < best) { best = res.h_mu_values[m][x]; arg = static_cast<int>(m); }
        res.u0[x] = best;
        res.argmin_measure[x] = arg;
    }
    return res;
}

template <class S>
struct MembershipReport {
    bool member = true;
    std::string failed_condition;  // empty when member
    S worst = S(0);
    int worst_index = -1;  // point (subsolution failure) or measure index
};

/// u in F_-  iff  u <= T(u) + alpha  and  int u dmu <= 0 for every projected
/// extreme Mather measure (linearity reduces the polytope to its extremes).
template <class S>
MembershipReport<S> f_minus_member(const Space<S>& sp, const S& alpha,
                                   const std::vector<S>& u,
                                   const std::vector<CycleMeasure<S>>& extremes,
                                   const S& tol = S(0)) {
    auto sub = check_subsolution(sp, u, std::optional<S>{}, alpha, tol);
    if (!sub.ok) return {false, "not a critical subsolution", sub.worst, sub.point};
    for (std::size_t m = 0; m < extremes.size(); ++m) {
        S integral = integrate_node(u, project(extremes[m].measure, 1));
        if (integral > tol)
            return {false, "positive integral against a projected Mather measure", integral,
                    static_cast<int>(m)};
    }
    return {};
}

/// u_limit >= w - max_mu int w dmu for a critical subsolution w.
template <class S>
bool key_inequality_check(const Space<S>& sp, const S& alpha,
                          const std::vector<S>& u_limit, const std::vector<S>& w,
                          const std::vector<CycleMeasure<S>>& extremes,
                          const S& tol = S(0)) {
    if (!check_subsolution(sp, w, std::optional<S>{}, alpha, tol).ok)
        throw std::invalid_argument("key_inequality_check: w is not a critical subsolution");
    bool first = true;
    S max_integral(0);
    for (const auto& cm : extremes) {
        S v = integrate_node(w, project(cm.measure, 1));
        if (first || v > max_integral) { max_integral = v; first = false; }
    }
    for (int x = 0; x < sp.n; ++x)
        if (u_limit[x] < w[x] - max_integral - tol) return false;
    return true;
}

/// Subsolution v, supersolution w, v <= w on the Aubry set  =>  v <= w on M.
/// Precondition failures throw; a false return signals a solver bug.
template <class S>
bool max_principle_check(const Space<S>& sp, const S& alpha, const BarrierData<S>& barrier,
                         const std::vector<S>& v, const std::vector<S>& w,
                         const S& tol = S(0)) {
    if (!check_subsolution(sp, v, std::optional<S>{}, alpha, tol).ok)
        throw std::invalid_argument("max_principle_check: v is not a subsolution");
    if (!check_supersolution(sp, w, std::optional<S>{}, alpha, tol).ok)
        throw std::invalid_argument("max_principle_check: w is not a supersolution");
    for (int z : barrier.aubry)
        if (v[z] > w[z] + tol)
            throw std::invalid_argument("max_principle_check: v > w on Aubry set");
    for (int x = 0; x < sp.n; ++x)
        if (v[x] > w[x] + tol) return false;
    return true;
}

template <class S>
struct SweepRow {
    S lambda;
    bool failed = false;
    std::string error;
    S sup_error = S(0);  // ||u_lambda^alpha - u_0||
    S residual = S(0);
    int iterations = 0;
    S alpha_hat = S(0);
    S occupation_defect = S(0);
    // extra diagnostics kept for the occupation-measure bounds
    S cost_integral = S(0);
    S discounted_value_x0 = S(0);  // u_lambda^alpha(x0), x0 = point 0
    int horizon = 0;
};

template <class S>
struct SweepReport {
    S alpha;
    std::vector<S> u0;
    std::vector<SweepRow<S>> rows;
};

/// Default schedule lambda_k = 1 - 2^{-k}, k = 1..20.
template <class S>
std::vector<S> default_schedule(int k_max = 20) {
    std::vector<S> out;
    S pw(1);
    for (int k = 1; k <= k_max; ++k) {
        pw /= S(2);
        out.push_back(S(1) - pw);
    }
    return out;
}

template <class S>
int occupation_horizon(const S& lambda, int space_n) {
    if constexpr (scalar_traits<S>::exact) {
        return 128 + 4 * space_n;
    } else {
        double l = scalar_traits<S>::to_double(lambda);
        double h = std::log(1e-12) / std::log(l);
        if (!(h > 1)) return 1;
        return h > 1e6 ? 1000000 : static_cast<int>(h) + 1;
    }
}

/// Solve u = T_lambda(u) + alpha along the schedule and compare with u_0.
template <class S>
SweepReport<S> convergence_sweep(const Space<S>& sp, const SolverConfig<S>& cfg,
                                 const std::vector<S>& schedule, int horizon = 0) {
    auto barrier = compute_barrier(sp, cfg);
    auto extremes = extreme_mather_measures(sp, barrier);
    auto sel = compute_u0(sp, barrier, extremes);

    SweepReport<S> rep;
    rep.alpha = barrier.alpha;
    rep.u0 = sel.u0;
    for (const S& lambda : schedule) {
        SweepRow<S> row;
        row.lambda = lambda;
        try {
            auto sol = solve_discounted(sp, lambda, barrier.alpha, cfg);
            row.residual = sol.residual;
            row.iterations = sol.iterations;
            for (int x = 0; x < sp.n; ++x) {
                S d = abs_val<S>(sol.u[x] - sel.u0[x]);
                if (d > row.sup_error) row.sup_error = d;
            }
            auto sol0 = solve_discounted(sp, lambda, S(0), cfg);
            row.alpha_hat = -(S(1) - lambda) * sol0.u[0];
            row.horizon = horizon > 0 ? horizon : occupation_horizon<S>(lambda, sp.n);
            auto occ = discounted_occupation(sp, lambda, sol, 0, row.horizon);
            row.occupation_defect = occ.closedness_defect;
            row.cost_integral = occ.cost_integral;
            row.discounted_value_x0 = sol.u[0];
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace weakkam
