#pragma once

/**
 * Closed measures on M x M, the minimizing LP (whose value is -alpha),
 * Mather measures and their extreme points, and the discounted occupation
 * measures carrying geometric mass along a minimizing backward sequence.
 */

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weakkam/brute.hpp"
#include "weakkam/critical.hpp"
#include "weakkam/lax_oleinik.hpp"
#include "weakkam/simplex.hpp"
#include "weakkam/space.hpp"

namespace weakkam {

template <class S>
struct EdgeMeasure {
    int n = 0;
    std::vector<S> weights;  // row-major, weights[y*n + x] on the step y -> x

    const S& at(int y, int x) const { return weights[static_cast<std::size_t>(y) * n + x]; }
    S& at(int y, int x) { return weights[static_cast<std::size_t>(y) * n + x]; }

    S total_mass() const {
        S m(0);
        for (const S& w : weights) m += w;
        return m;
    }
};

template <class S>
using NodeMeasure = std::vector<S>;

/// factor 1 -> first-coordinate marginal (row sums), factor 2 -> second.
template <class S>
NodeMeasure<S> project(const EdgeMeasure<S>& mu, int factor) {
    if (factor != 1 && factor != 2) throw std::invalid_argument("projection factor must be 1 or 2");
    NodeMeasure<S> out(mu.n, S(0));
    for (int y = 0; y < mu.n; ++y)
        for (int x = 0; x < mu.n; ++x)
            out[factor == 1 ? y : x] += mu.at(y, x);
    return out;
}

template <class S>
struct ClosednessReport {
    bool closed;
    S defect;  // max per-node |rowsum - colsum|
};

template <class S>
ClosednessReport<S> check_closed(const EdgeMeasure<S>& mu, const S& tol = S(0)) {
    auto rows = project(mu, 1);
    auto cols = project(mu, 2);
    S worst(0);
    for (int z = 0; z < mu.n; ++z) {
        S d = abs_val<S>(rows[z] - cols[z]);
        if (d > worst) worst = d;
    }
    return {!(worst > tol), worst};
}

template <class S>
S integrate_node(const std::vector<S>& f, const NodeMeasure<S>& mu) {
    if (f.size() != mu.size()) throw std::invalid_argument("integrate_node: size mismatch");
    S out(0);
    for (std::size_t i = 0; i < f.size(); ++i) out += f[i] * mu[i];
    return out;
}

template <class S>
S integrate_cost(const Space<S>& sp, const EdgeMeasure<S>& mu) {
    S out(0);
    for (std::size_t i = 0; i < mu.weights.size(); ++i) out += sp.cost[i] * mu.weights[i];
    return out;
}

template <class S>
struct CycleMeasure {
    Path cycle;  // closed path (s, ..., s)
    EdgeMeasure<S> measure;
};

template <class S>
CycleMeasure<S> cycle_measure(int n, const Path& cycle) {
    if (cycle.size() < 2 || cycle.front() != cycle.back())
        throw std::invalid_argument("cycle_measure requires a closed path");
    CycleMeasure<S> cm;
    cm.cycle = cycle;
    cm.measure.n = n;
    cm.measure.weights.assign(static_cast<std::size_t>(n) * n, S(0));
    const S share = S(1) / S(static_cast<int>(cycle.size()) - 1);
    for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
        cm.measure.at(cycle[i], cycle[i + 1]) += share;
    return cm;
}

inline constexpr int kSimplexSizeCap = 32;

namespace detail {

/// Some zero-weight cycle of the critical graph, found by walking critical
/// out-edges from an Aubry point until a vertex repeats.
template <class S>
Path critical_cycle(const Space<S>& sp, const BarrierData<S>& barrier) {
    const int n = sp.n;
    std::vector<std::vector<char>> crit(n, std::vector<char>(n, 0));
    for (auto [y, x] : barrier.critical_edges) crit[y][x] = 1;
    std::vector<int> pos(n, -1);
    Path walk{barrier.aubry.front()};
    pos[walk[0]] = 0;
    for (;;) {
        int v = walk.back(), next = -1;
        for (int x = 0; x < n && next < 0; ++x)
            if (crit[v][x]) next = x;
        if (next < 0) throw std::logic_error("critical graph has a sink");  // cannot happen
        if (pos[next] >= 0) {
            Path cycle(walk.begin() + pos[next], walk.end());
            cycle.push_back(next);
            return cycle;
        }
        pos[next] = static_cast<int>(walk.size());
        walk.push_back(next);
    }
}

}  // namespace detail

template <class S>
struct MatherLp {
    S value;  // equals -alpha
    EdgeMeasure<S> mu;
};

/// min  sum c(y,x) mu(y,x)  over closed probability measures.
/// Exact simplex up to n = 32; beyond that the Karp-optimal cycle measure is
/// returned (optimal by the extreme-point structure of the polytope).
template <class S>
MatherLp<S> minimize_cost_lp(const Space<S>& sp) {
    const int n = sp.n;
    if (n > kSimplexSizeCap) {
        SolverConfig<S> cfg;
        auto barrier = compute_barrier(sp, cfg);
        auto cm = cycle_measure<S>(n, detail::critical_cycle(sp, barrier));
        return {-barrier.alpha, std::move(cm.measure)};
    }
    const int nv = n * n;
    std::vector<std::vector<S>> A;
    std::vector<S> b;
    A.emplace_back(nv, S(1));  // total mass
    b.push_back(S(1));
    for (int z = 0; z < n; ++z) {  // node balance: rowsum(z) - colsum(z) = 0
        std::vector<S> row(nv, S(0));
        for (int x = 0; x < n; ++x) row[z * n + x] += S(1);
        for (int y = 0; y < n; ++y) row[y * n + z] -= S(1);
        A.push_back(std::move(row));
        b.push_back(S(0));
    }
    auto lp = simplex_solve_min<S>(std::move(A), std::move(b), sp.cost);
    MatherLp<S> out;
    out.value = lp.value;
    out.mu.n = n;
    out.mu.weights = std::move(lp.x);
    return out;
}

inline constexpr long kCircuitCap = 100000;

/// Extreme points of the Mather set: uniform measures on the elementary
/// circuits of the critical graph.
template <class S>
std::vector<CycleMeasure<S>> extreme_mather_measures(const Space<S>& sp,
                                                     const BarrierData<S>& barrier,
                                                     long cap = kCircuitCap) {
    const int n = sp.n;
    std::vector<std::vector<char>> crit(n, std::vector<char>(n, 0));
    for (auto [y, x] : barrier.critical_edges) crit[y][x] = 1;
    std::vector<CycleMeasure<S>> out;
    bool done = enumerate_elementary_cycles(
        n, [&](int y, int x) { return crit[y][x] != 0; },
        [&](const Path& cycle) { out.push_back(cycle_measure<S>(n, cycle)); }, cap);
    if (!done)
        throw std::runtime_error("circuit count exceeds cap (" + std::to_string(cap) +
                                 "); use a sampling mode instead");
    if (out.empty()) throw std::logic_error("critical graph carries no circuit");
    return out;
}

/// Prop-style support check: mu must first be a Mather measure (closed with
/// cost integral -alpha), then every charged edge must join Aubry points.
template <class S>
bool support_in_aubry(const Space<S>& sp, const EdgeMeasure<S>& mu,
                      const BarrierData<S>& barrier, const S& tol = S(0)) {
    if (!check_closed(mu, tol).closed)
        throw std::invalid_argument("not a Mather measure: measure is not closed");
    if (abs_val<S>(integrate_cost(sp, mu) + barrier.alpha) > tol)
        throw std::invalid_argument("not a Mather measure: cost integral differs from -alpha");
    for (int y = 0; y < mu.n; ++y)
        for (int x = 0; x < mu.n; ++x)
            if (mu.at(y, x) > S(0) && (!barrier.in_aubry(y) || !barrier.in_aubry(x)))
                return false;
    return true;
}

template <class S>
struct Occupation {
    EdgeMeasure<S> mu;
    S closedness_defect;
    S cost_integral;
};

/// Occupation measure of the minimizing backward sequence selected by the
/// solution's argmin map: mass (1-lambda) lambda^n on the n-th backward step,
/// truncated at `horizon` with the tail mass lambda^horizon deposited on the
/// next argmin edge (total mass stays exactly 1).
template <class S>
Occupation<S> discounted_occupation(const Space<S>& sp, const S& lambda,
                                    const DiscountedSolution<S>& solution, int x,
                                    int horizon) {
    require_discount(lambda);
    check_point(sp, x, "start point");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    Occupation<S> occ;
    occ.mu.n = sp.n;
    occ.mu.weights.assign(static_cast<std::size_t>(sp.n) * sp.n, S(0));
    int cur = x;
    S pw(1);
    const S a_lambda = S(1) - lambda;
    for (int k = 0; k < horizon; ++k) {
        int prev = solution.argmin_map[cur];
        occ.mu.at(prev, cur) += a_lambda * pw;
        pw *= lambda;
        cur = prev;
    }
    occ.mu.at(solution.argmin_map[cur], cur) += pw;  // tail mass lambda^horizon
    occ.closedness_defect = check_closed(occ.mu).defect;
    occ.cost_integral = integrate_cost(sp, occ.mu);
    return occ;
}

}  // namespace weakkam
