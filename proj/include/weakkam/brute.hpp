#pragma once

/**
 * Exhaustive oracles for tiny instances: fixed-length minimal path costs by
 * full enumeration and the minimum mean cycle by elementary-cycle search.
 * Every other module is validated against these on small spaces.
 */

#include <functional>
#include <stdexcept>
#include <vector>

#include "weakkam/space.hpp"

namespace weakkam {

inline constexpr int kBruteStepCap = 12;
inline constexpr int kBruteSpaceCap = 6;
inline constexpr int kBruteCycleCap = 8;

/// Enumerate all elementary cycles, each reported once as a closed path
/// (s, ..., s) whose smallest vertex is s.  `edge(y, x)` gates y -> x.
/// Returns false if `cap` cycles were emitted before finishing.
inline bool enumerate_elementary_cycles(int n,
                                        const std::function<bool(int, int)>& edge,
                                        const std::function<void(const Path&)>& emit,
                                        long cap = -1) {
    long count = 0;
    Path stack;
    std::vector<char> on_stack(n, 0);
    bool ok = true;

    std::function<void(int, int)> dfs = [&](int s, int v) {
        if (!ok) return;
        for (int w = s; w < n; ++w) {
            if (!edge(v, w)) continue;
            if (w == s) {
                if (cap >= 0 && count >= cap) { ok = false; return; }
                ++count;
                Path cycle = stack;
                cycle.push_back(s);
                emit(cycle);
            } else if (!on_stack[w]) {
                stack.push_back(w);
                on_stack[w] = 1;
                dfs(s, w);
                on_stack[w] = 0;
                stack.pop_back();
            }
        }
    };

    for (int s = 0; s < n && ok; ++s) {
        stack.assign(1, s);
        on_stack.assign(n, 0);
        on_stack[s] = 1;
        dfs(s, s);
    }
    return ok;
}

/// c_n(x,y): exact minimum of path_cost over all n_steps-step paths x -> y.
template <class S>
S brute_cn(const Space<S>& sp, int x, int y, int n_steps) {
    check_point(sp, x, "source");
    check_point(sp, y, "target");
    if (n_steps < 1) throw std::invalid_argument("brute_cn requires n_steps >= 1");
    if (n_steps > kBruteStepCap || sp.n > kBruteSpaceCap)
        throw std::invalid_argument(
            "brute_cn cap exceeded (n_steps <= 12, n <= 6); use min_plus_power instead");

    bool found = false;
    S best(0);
    Path p(static_cast<std::size_t>(n_steps) + 1);
    p.front() = x;
    p.back() = y;
    std::function<void(int, S)> rec = [&](int pos, S acc) {
        if (pos == n_steps) {
            acc += sp.c(p[pos - 1], y);
            if (!found || acc < best) { best = acc; found = true; }
            return;
        }
        for (int z = 0; z < sp.n; ++z) {
            p[pos] = z;
            rec(pos + 1, acc + sp.c(p[pos - 1], z));
        }
    };
    rec(1, S(0));
    return best;
}

template <class S>
struct MeanCycle {
    S mean;
    Path cycle;  // closed path (s, ..., s)
};

/// Minimum mean over all elementary cycles; ties broken by shortest length,
/// then lexicographic node order.
template <class S>
MeanCycle<S> brute_min_mean_cycle(const Space<S>& sp) {
    if (sp.n > kBruteCycleCap)
        throw std::invalid_argument("brute_min_mean_cycle is capped at n <= 8");

    bool found = false;
    MeanCycle<S> best{S(0), {}};
    auto consider = [&](const Path& cyc) {
        const int len = static_cast<int>(cyc.size()) - 1;
        S mean = path_cost(sp, cyc) / S(len);
        if (!found || mean < best.mean ||
            (mean == best.mean &&
             (cyc.size() < best.cycle.size() ||
              (cyc.size() == best.cycle.size() && cyc < best.cycle)))) {
            best = {mean, cyc};
            found = true;
        }
    };
    enumerate_elementary_cycles(
        sp.n, [](int, int) { return true; }, consider);
    // complete cost matrix: every loop exists, so some cycle was seen
    return best;
}

}  // namespace weakkam
