#pragma once

/**
 * The Lax-Oleinik operator T, its discounted version T_lambda, the
 * discounted fixed-point solver and the comparison machinery.
 *
 *   T(u)(x)        = min_y u(y) + c(y,x)
 *   T_lambda(u)(x) = min_y lambda*u(y) + c(y,x)
 *
 * The discounted equation u = T_lambda(u) + beta has a unique solution;
 * T_lambda is a lambda-contraction in the sup norm.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakkam/space.hpp"
#include "weakkam/util.hpp"

namespace weakkam {

template <class S>
struct OperatorResult {
    std::vector<S> values;
    std::vector<int> argmin;  // minimizing y per x, lowest index on ties
};

template <class S>
void require_discount(const S& lambda) {
    if (!(lambda > S(0)) || !(lambda < S(1)))
        throw std::invalid_argument("discount factor must lie in (0,1)");
}

template <class S>
OperatorResult<S> apply_T(const Space<S>& sp, const std::vector<S>& u) {
    OperatorResult<S> out;
    out.values.resize(sp.n);
    out.argmin.resize(sp.n);
    parallel_for(sp.n, [&](int x) {
        S best = u[0] + sp.c(0, x);
        int arg = 0;
        for (int y = 1; y < sp.n; ++y) {
            S cand = u[y] + sp.c(y, x);
            if (cand < best) { best = cand; arg = y; }
        }
        out.values[x] = best;
        out.argmin[x] = arg;
    });
    return out;
}

template <class S>
OperatorResult<S> apply_T_discounted(const Space<S>& sp, const std::vector<S>& u,
                                     const S& lambda) {
    require_discount(lambda);
    OperatorResult<S> out;
    out.values.resize(sp.n);
    out.argmin.resize(sp.n);
    parallel_for(sp.n, [&](int x) {
        S best = lambda * u[0] + sp.c(0, x);
        int arg = 0;
        for (int y = 1; y < sp.n; ++y) {
            S cand = lambda * u[y] + sp.c(y, x);
            if (cand < best) { best = cand; arg = y; }
        }
        out.values[x] = best;
        out.argmin[x] = arg;
    });
    return out;
}

template <class S>
struct DiscountedSolution {
    std::vector<S> u;
    int iterations = 0;
    S residual = S(0);          // sup |u - T_lambda(u) - beta|
    std::vector<int> argmin_map;
};

template <class S>
struct SolverError : std::runtime_error {
    std::vector<S> last_iterate;
    S residual;
    SolverError(const std::string& msg, std::vector<S> u, S r)
        : std::runtime_error(msg), last_iterate(std::move(u)), residual(std::move(r)) {}
};

namespace detail {

/// Exact evaluation of a predecessor policy: solves u(x) = lambda*u(sigma(x))
/// + c(sigma(x),x) + beta along the functional graph of sigma (1-unknown
/// equation on each sigma-cycle, then back-substitution).
template <class S>
std::vector<S> evaluate_policy(const Space<S>& sp, const std::vector<int>& sigma,
                               const S& lambda, const S& beta) {
    const int n = sp.n;
    std::vector<S> u(n, S(0));
    std::vector<char> state(n, 0);  // 0 unknown, 1 on walk, 2 done
    std::vector<int> pos(n, -1);
    auto step_cost = [&](int x) { return sp.c(sigma[x], x) + beta; };

    for (int start = 0; start < n; ++start) {
        if (state[start] == 2) continue;
        std::vector<int> walk;
        int v = start;
        while (state[v] == 0) {
            state[v] = 1;
            pos[v] = static_cast<int>(walk.size());
            walk.push_back(v);
            v = sigma[v];
        }
        if (state[v] == 1) {
            // closed a cycle walk[pos[v]..end]
            int j = pos[v];
            S num(0), pw(1);
            for (std::size_t i = j; i < walk.size(); ++i) {
                num += pw * step_cost(walk[i]);
                pw *= lambda;
            }
            u[v] = num / (S(1) - pw);
            state[v] = 2;
        }
        // back-substitute the remaining walk, tail first
        for (int i = static_cast<int>(walk.size()) - 1; i >= 0; --i) {
            int x = walk[i];
            if (state[x] == 2) continue;
            u[x] = lambda * u[sigma[x]] + step_cost(x);
            state[x] = 2;
        }
    }
    return u;
}

template <class S>
S residual_of(const Space<S>& sp, const std::vector<S>& u, const S& lambda,
              const S& beta) {
    auto t = apply_T_discounted(sp, u, lambda);
    S worst(0);
    for (int x = 0; x < sp.n; ++x) {
        S d = abs_val<S>(u[x] - t.values[x] - beta);
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace detail

/// Solve u = T_lambda(u) + beta.
///
/// Rational mode: policy iteration on the minimizing-predecessor map; each
/// round evaluates the policy exactly, so the returned residual is 0.
/// Float mode: value iteration from 0 with the contraction stopping rule
/// ||u_{k+1}-u_k|| <= tol*(1-lambda)/lambda, with an exact policy solve as
/// soon as the argmin map stabilizes.
template <class S>
DiscountedSolution<S> solve_discounted(const Space<S>& sp, const S& lambda,
                                       const S& beta, const SolverConfig<S>& cfg) {
    require_discount(lambda);
    DiscountedSolution<S> sol;

    if constexpr (scalar_traits<S>::exact) {
        std::vector<S> zero(sp.n, S(0));
        std::vector<int> sigma = apply_T_discounted(sp, zero, lambda).argmin;
        for (int round = 1;; ++round) {
            std::vector<S> u = detail::evaluate_policy(sp, sigma, lambda, beta);
            auto t = apply_T_discounted(sp, u, lambda);
            bool changed = false;
            for (int x = 0; x < sp.n; ++x) {
                // keep the incumbent when it still attains the minimum
                if (lambda * u[sigma[x]] + sp.c(sigma[x], x) > t.values[x]) {
                    sigma[x] = t.argmin[x];
                    changed = true;
                }
            }
            if (!changed) {
                sol.u = std::move(u);
                sol.iterations = round;
                sol.argmin_map = t.argmin;
                sol.residual = S(0);
                return sol;
            }
            if (round >= cfg.max_iterations) {
                S r = detail::residual_of(sp, u, lambda, beta);
                throw SolverError<S>("policy iteration exceeded max_iterations",
                                     std::move(u), std::move(r));
            }
        }
    } else {
        const S stop = S(cfg.tol) * (S(1) - lambda) / lambda;
        // residual acceptance is relative to the iterate's magnitude:
        // near lambda = 1 with beta far from -alpha, ||u|| ~ ||c||/(1-lambda)
        // and an absolute tol is below double rounding
        auto accept = [&](const std::vector<S>& v, const S& r) {
            S scale(1);
            for (const S& x : v) {
                S a = abs_val<S>(x);
                if (a > scale) scale = a;
            }
            return r <= S(cfg.tol) * scale;
        };
        std::vector<S> u(sp.n, S(0));
        std::vector<int> prev_sigma;
        for (int it = 1; it <= cfg.max_iterations; ++it) {
            auto t = apply_T_discounted(sp, u, lambda);
            for (auto& v : t.values) v += beta;
            S delta(0);
            for (int x = 0; x < sp.n; ++x) {
                S d = abs_val<S>(t.values[x] - u[x]);
                if (d > delta) delta = d;
            }
            bool sigma_stable = (t.argmin == prev_sigma);
            prev_sigma = t.argmin;
            u = std::move(t.values);
            if (sigma_stable) {
                // finish exactly on the stabilized policy
                std::vector<S> exact = detail::evaluate_policy(sp, prev_sigma, lambda, beta);
                S r = detail::residual_of(sp, exact, lambda, beta);
                if (accept(exact, r)) {
                    sol.u = std::move(exact);
                    sol.iterations = it;
                    sol.residual = r;
                    sol.argmin_map = apply_T_discounted(sp, sol.u, lambda).argmin;
                    return sol;
                }
            }
            if (delta <= stop) {
                S r = detail::residual_of(sp, u, lambda, beta);
                if (accept(u, r)) {
                    sol.u = std::move(u);
                    sol.iterations = it;
                    sol.residual = r;
                    sol.argmin_map = apply_T_discounted(sp, sol.u, lambda).argmin;
                    return sol;
                }
            }
        }
        throw SolverError<S>("value iteration exceeded max_iterations", u,
                             detail::residual_of(sp, u, lambda, beta));
    }
}

template <class S>
struct SeriesValue {
    S value;
    S tail_bound;  // lambda^horizon * ||c+beta|| / (1-lambda)
};

/// Horizon-truncated representation formula
///   u_lambda(x0) = min over backward sequences of sum lambda^n (c + beta),
/// computed by backward dynamic programming.
template <class S>
SeriesValue<S> discounted_series_value(const Space<S>& sp, const S& lambda,
                                       const S& beta, int x, int horizon) {
    require_discount(lambda);
    check_point(sp, x, "point");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    std::vector<S> v(sp.n, S(0));
    S pw(1);
    for (int k = 0; k < horizon; ++k) {
        auto t = apply_T_discounted(sp, v, lambda);
        for (auto& val : t.values) val += beta;
        v = std::move(t.values);
        pw *= lambda;
    }
    return {v[x], pw * sp.sup_norm(beta) / (S(1) - lambda)};
}

template <class S>
struct ViolationReport {
    bool ok = true;
    S worst = S(0);  // max positive violation
    int point = -1;
};

/// u <= T(u) + beta (or T_lambda when a discount is supplied).
template <class S>
ViolationReport<S> check_subsolution(const Space<S>& sp, const std::vector<S>& u,
                                     const std::optional<S>& lambda, const S& beta,
                                     const S& tol = S(0)) {
    auto t = lambda ? apply_T_discounted(sp, u, *lambda) : apply_T(sp, u);
    ViolationReport<S> rep;
    for (int x = 0; x < sp.n; ++x) {
        S v = u[x] - t.values[x] - beta;
        if (v > rep.worst) { rep.worst = v; rep.point = x; }
    }
    rep.ok = !(rep.worst > tol);
    return rep;
}

/// u >= T(u) + beta (or T_lambda when a discount is supplied).
template <class S>
ViolationReport<S> check_supersolution(const Space<S>& sp, const std::vector<S>& u,
                                       const std::optional<S>& lambda, const S& beta,
                                       const S& tol = S(0)) {
    auto t = lambda ? apply_T_discounted(sp, u, *lambda) : apply_T(sp, u);
    ViolationReport<S> rep;
    for (int x = 0; x < sp.n; ++x) {
        S v = t.values[x] + beta - u[x];
        if (v > rep.worst) { rep.worst = v; rep.point = x; }
    }
    rep.ok = !(rep.worst > tol);
    return rep;
}

/// v <= u_lambda^beta <= w for a subsolution v and supersolution w.
template <class S>
bool comparison_sandwich(const Space<S>& sp, const S& lambda, const S& beta,
                         const std::vector<S>& v, const std::vector<S>& w,
                         const SolverConfig<S>& cfg) {
    const S tol = scalar_traits<S>::exact ? S(0) : S(cfg.tol);
    if (!check_subsolution(sp, v, std::optional<S>(lambda), beta, tol).ok)
        throw std::invalid_argument("comparison_sandwich: v is not a subsolution");
    if (!check_supersolution(sp, w, std::optional<S>(lambda), beta, tol).ok)
        throw std::invalid_argument("comparison_sandwich: w is not a supersolution");
    auto sol = solve_discounted(sp, lambda, beta, cfg);
    for (int x = 0; x < sp.n; ++x)
        if (v[x] > sol.u[x] + tol || sol.u[x] > w[x] + tol) return false;
    return true;
}

/// Sup norm of (u^{b1} - u^{b2}) - (b1-b2)/(1-lambda); identically 0 since the
/// two solutions differ by that constant.
template <class S>
S beta_shift_identity(const Space<S>& sp, const S& lambda, const S& beta1,
                      const S& beta2, const SolverConfig<S>& cfg) {
    auto u1 = solve_discounted(sp, lambda, beta1, cfg);
    auto u2 = solve_discounted(sp, lambda, beta2, cfg);
    const S shift = (beta1 - beta2) / (S(1) - lambda);
    S worst(0);
    for (int x = 0; x < sp.n; ++x) {
        S d = abs_val<S>(u1.u[x] - u2.u[x] - shift);
        if (d > worst) worst = d;
    }
    return worst;
}

}  // namespace weakkam
