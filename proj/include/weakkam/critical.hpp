#pragma once

/**
 * Critical value, Mane potential, Peierls barrier, Aubry set and the
 * critical graph.
 *
 *   alpha    = -(minimum cycle mean), via Karp's dynamic program
 *   Phi(x,y) = inf_{k>=1} c_k(x,y) + k*alpha   (Bellman-Ford on c+alpha)
 *   A        = { z : Phi(z,z) = 0 }
 *   h(x,y)   = min_{z in A} Phi(x,z) + Phi(z,y)
 *
 * The liminf definition of h survives as a test oracle (peierls_liminf_oracle).
 */

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "weakkam/lax_oleinik.hpp"
#include "weakkam/space.hpp"
#include "weakkam/util.hpp"

namespace weakkam {

namespace detail {

/// One min-plus step: out(x,y) = min_z a(x,z) + c(z,y).
template <class S>
std::vector<S> min_plus_step(const Space<S>& sp, const std::vector<S>& a) {
    const int n = sp.n;
    std::vector<S> out(static_cast<std::size_t>(n) * n);
    parallel_for(n, [&](int x) {
        for (int y = 0; y < n; ++y) {
            S best = a[static_cast<std::size_t>(x) * n] + sp.c(0, y);
            for (int z = 1; z < n; ++z) {
                S cand = a[static_cast<std::size_t>(x) * n + z] + sp.c(z, y);
                if (cand < best) best = cand;
            }
            out[static_cast<std::size_t>(x) * n + y] = best;
        }
    });
    return out;
}

}  // namespace detail

/// c_n(x,y): minimal cost over walks x -> y with exactly n_steps steps.
template <class S>
std::vector<S> min_plus_power(const Space<S>& sp, int n_steps) {
    if (n_steps < 1) throw std::invalid_argument("min_plus_power requires n_steps >= 1");
    std::vector<S> a = sp.cost;
    for (int k = 1; k < n_steps; ++k) a = detail::min_plus_step(sp, a);
    return a;
}

/// Karp's minimum-mean-cycle DP from root 0:
/// mean* = min_v max_k (D_n(v) - D_k(v)) / (n-k);  alpha = -mean*.
template <class S>
S critical_value_karp(const Space<S>& sp) {
    const int n = sp.n;
    const int root = 0;
    // D[k][v] = minimal k-step walk cost root -> v; -1 marks unreachable
    std::vector<std::vector<S>> D(n + 1, std::vector<S>(n, S(0)));
    std::vector<std::vector<char>> def(n + 1, std::vector<char>(n, 0));
    def[0][root] = 1;
    for (int k = 1; k <= n; ++k) {
        for (int v = 0; v < n; ++v) {
            bool found = false;
            S best(0);
            for (int y = 0; y < n; ++y) {
                if (!def[k - 1][y]) continue;
                S cand = D[k - 1][y] + sp.c(y, v);
                if (!found || cand < best) { best = cand; found = true; }
            }
            if (found) { D[k][v] = best; def[k][v] = 1; }
        }
    }
    bool have = false;
    S mean(0);
    for (int v = 0; v < n; ++v) {
        if (!def[n][v]) continue;
        bool inner = false;
        S worst(0);
        for (int k = 0; k < n; ++k) {
            if (!def[k][v]) continue;
            S cand = (D[n][v] - D[k][v]) / S(n - k);
            if (!inner || cand > worst) { worst = cand; inner = true; }
        }
        if (inner && (!have || worst < mean)) { mean = worst; have = true; }
    }
    if (!have) throw std::logic_error("karp: no cycle found");  // cannot happen, c is total
    return -mean;
}

/// alpha_hat = -(1-lambda) * u_lambda^0(x0), x0 = point 0, together with the
/// a-posteriori bound (1-lambda) * ||u_lambda^alpha||.
template <class S>
std::pair<S, S> critical_value_discounted_estimate(const Space<S>& sp, const S& lambda,
                                                   const SolverConfig<S>& cfg) {
    auto u0 = solve_discounted(sp, lambda, S(0), cfg);
    S alpha_hat = -(S(1) - lambda) * u0.u[0];
    S alpha = critical_value_karp(sp);
    auto ua = solve_discounted(sp, lambda, alpha, cfg);
    S norm(0);
    for (const S& v : ua.u) {
        S a = abs_val<S>(v);
        if (a > norm) norm = a;
    }
    return {alpha_hat, (S(1) - lambda) * norm};
}

/// Phi(x,y) = min over 1 <= k <= n of (c+alpha)-cost of k-step walks x -> y.
/// Walks longer than n are dominated once nonnegative cycles are stripped.
template <class S>
std::vector<S> mane_potential(const Space<S>& sp, const S& alpha, const S& eps = S(0)) {
    const int n = sp.n;
    Space<S> shifted = sp;
    for (auto& v : shifted.cost) v += alpha;
    std::vector<S> phi = shifted.cost;
    std::vector<S> walk = shifted.cost;
    for (int k = 2; k <= n; ++k) {
        walk = detail::min_plus_step(shifted, walk);
        for (std::size_t i = 0; i < phi.size(); ++i)
            if (walk[i] < phi[i]) phi[i] = walk[i];
    }
    for (int z = 0; z < n; ++z)
        if (phi[static_cast<std::size_t>(z) * n + z] < -eps)
            throw std::invalid_argument(
                "negative cycle under c+alpha: supplied alpha is not the critical value");
    return phi;
}

/// A = { z : Phi(z,z) = 0 } (|Phi(z,z)| <= eps in float mode).
template <class S>
std::vector<int> aubry_set(const Space<S>& sp, const std::vector<S>& phi, const S& eps = S(0)) {
    std::vector<int> out;
    for (int z = 0; z < sp.n; ++z)
        if (!(abs_val<S>(phi[static_cast<std::size_t>(z) * sp.n + z]) > eps)) out.push_back(z);
    if (out.empty() && scalar_traits<S>::exact)
        throw std::logic_error("empty Aubry set: minimum mean cycle not attained, alpha is wrong");
    return out;
}

/// h(x,y) = min_{z in A} Phi(x,z) + Phi(z,y).
template <class S>
std::vector<S> peierls_barrier(const Space<S>& sp, const std::vector<S>& phi,
                               const std::vector<int>& aubry) {
    const int n = sp.n;
    if (aubry.empty()) throw std::invalid_argument("peierls_barrier: empty Aubry set");
    std::vector<S> h(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            bool first = true;
            S best(0);
            for (int z : aubry) {
                S cand = phi[static_cast<std::size_t>(x) * n + z] +
                         phi[static_cast<std::size_t>(z) * n + y];
                if (first || cand < best) { best = cand; first = false; }
            }
            h[static_cast<std::size_t>(x) * n + y] = best;
        }
    }
    return h;
}

/// Brute liminf approximation: entrywise min of h_k = c_k + k*alpha over
/// k in [horizon-window, horizon].  Test oracle only.
template <class S>
std::vector<S> peierls_liminf_oracle(const Space<S>& sp, const S& alpha, int horizon,
                                     int window) {
    if (window < sp.n || horizon < window)
        throw std::invalid_argument("peierls_liminf_oracle requires horizon >= window >= n");
    const int lo = horizon - window;
    Space<S> shifted = sp;
    for (auto& v : shifted.cost) v += alpha;  // h_k = (c+alpha)-power directly
    std::vector<S> walk = shifted.cost;
    std::vector<S> acc;
    for (int k = 1; k <= horizon; ++k) {
        if (k > 1) walk = detail::min_plus_step(shifted, walk);
        if (k >= std::max(lo, 1)) {
            if (acc.empty()) acc = walk;
            else
                for (std::size_t i = 0; i < acc.size(); ++i)
                    if (walk[i] < acc[i]) acc[i] = walk[i];
        }
    }
    return acc;
}

/// Edges (y,x) with c(y,x) + alpha + Phi(x,y) = 0: the edges on zero-mean
/// cycles of c+alpha.
template <class S>
std::vector<std::pair<int, int>> critical_graph(const Space<S>& sp, const S& alpha,
                                                const std::vector<S>& phi,
                                                const S& eps = S(0)) {
    std::vector<std::pair<int, int>> edges;
    for (int y = 0; y < sp.n; ++y)
        for (int x = 0; x < sp.n; ++x)
            if (!(abs_val<S>(sp.c(y, x) + alpha + phi[static_cast<std::size_t>(x) * sp.n + y]) >
                  eps))
                edges.emplace_back(y, x);
    return edges;
}

template <class S>
struct BarrierData {
    S alpha;
    std::vector<S> phi;  // n x n, row-major
    std::vector<S> h;    // n x n, row-major
    std::vector<int> aubry;
    std::vector<std::pair<int, int>> critical_edges;

    const S& phi_at(int x, int y, int n) const { return phi[static_cast<std::size_t>(x) * n + y]; }
    const S& h_at(int x, int y, int n) const { return h[static_cast<std::size_t>(x) * n + y]; }
    bool in_aubry(int z) const {
        return std::find(aubry.begin(), aubry.end(), z) != aubry.end();
    }
};

template <class S>
BarrierData<S> compute_barrier(const Space<S>& sp, const SolverConfig<S>& cfg) {
    BarrierData<S> b;
    b.alpha = critical_value_karp(sp);
    b.phi = mane_potential(sp, b.alpha, cfg.aubry_eps);
    b.aubry = aubry_set(sp, b.phi, cfg.aubry_eps);
    b.h = peierls_barrier(sp, b.phi, b.aubry);
    b.critical_edges = critical_graph(sp, b.alpha, b.phi, cfg.aubry_eps);
    return b;
}

/// h(y, .) for y in the Aubry set solves u = T(u) + alpha.
template <class S>
std::vector<S> weak_kam_solution(const Space<S>& sp, const BarrierData<S>& barrier, int y) {
    check_point(sp, y, "base point");
    if (!barrier.in_aubry(y))
        throw std::invalid_argument("weak_kam_solution: base point is not in the Aubry set");
    std::vector<S> u(sp.n);
    for (int x = 0; x < sp.n; ++x) u[x] = barrier.h_at(y, x, sp.n);
    return u;
}

}  // namespace weakkam
