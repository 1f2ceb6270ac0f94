#pragma once

/**
 * Finite cost space (point set + n x n cost matrix) and value functions.
 *
 * Cost orientation: cost(y, x) = c(y,x) is the cost of the step y -> x,
 * matching T(u)(x) = min_y u(y) + c(y,x).  Beware: the barrier h(x,y)
 * reads "from x to y" in the same orientation.
 */

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakkam/scalar.hpp"

namespace weakkam {

template <class S>
struct Space {
    using Scalar = S;

    int n = 0;
    std::vector<std::string> labels;
    std::vector<S> cost;  // row-major, cost[y*n + x] = c(y,x)

    const S& c(int y, int x) const { return cost[static_cast<std::size_t>(y) * n + x]; }
    S& c(int y, int x) { return cost[static_cast<std::size_t>(y) * n + x]; }

    /// max_{y,x} |c(y,x) + shift|
    S sup_norm(const S& shift = S(0)) const {
        S best(0);
        for (const S& v : cost) {
            S a = abs_val<S>(v + shift);
            if (a > best) best = a;
        }
        return best;
    }
};

/// Backward sequence of point indices (x_{-k}, ..., x_0); length >= 1.
using Path = std::vector<int>;

template <class S>
struct SolverConfig {
    double tol = 1e-12;        // float mode stopping tolerance
    int max_iterations = 1000000;
    S aubry_eps = S(0);        // must stay 0 in rational mode
    std::uint64_t seed = 0;
};

/// Validate raw input into a Space.  Each violation gets its own diagnostic.
template <class S>
Space<S> validate_space(const std::vector<std::string>& labels,
                        const std::vector<std::vector<S>>& rows) {
    if (labels.empty())
        throw std::invalid_argument("cost space must contain at least one point");
    const int n = static_cast<int>(labels.size());
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("non-square cost matrix: " + std::to_string(rows.size()) +
                                    " rows for " + std::to_string(n) + " labels");
    std::set<std::string> seen;
    for (const auto& l : labels)
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate label: '" + l + "'");

    Space<S> sp;
    sp.n = n;
    sp.labels = labels;
    sp.cost.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("non-square cost matrix: row of length " +
                                        std::to_string(row.size()) + ", expected " +
                                        std::to_string(n));
        for (const S& v : row) {
            if (!scalar_traits<S>::finite(v))
                throw std::invalid_argument("non-finite cost entry");
            sp.cost.push_back(v);
        }
    }
    return sp;
}

template <class S>
void check_point(const Space<S>& sp, int x, const char* what) {
    if (x < 0 || x >= sp.n)
        throw std::invalid_argument(std::string(what) + " index out of range");
}

/// Total cost of a backward sequence: sum of c(x_{-i}, x_{-i+1}).
template <class S>
S path_cost(const Space<S>& sp, const Path& p) {
    if (p.size() < 2)
        throw std::invalid_argument("path_cost requires at least one step");
    for (int v : p) check_point(sp, v, "path point");
    S total(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) total += sp.c(p[i], p[i + 1]);
    return total;
}

}  // namespace weakkam
