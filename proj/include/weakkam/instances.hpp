#pragma once

/**
 * Seed-deterministic instance generators: random cost matrices and the
 * circular-grid family c(y,x) = d(y,x)^2/2 + V(x) on equispaced points of a
 * circle of circumference 1 (V's minimum set becomes the Aubry set).
 */

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "weakkam/space.hpp"

namespace weakkam {

inline std::vector<std::string> default_labels(int n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    return labels;
}

/// Uniform rational costs: denominator in [1, denominator_bound], value in
/// [lo, hi].  Same seed, same instance, bit for bit.
inline Space<Rat> gen_random_rational(int n, std::uint64_t seed, const Rat& lo, const Rat& hi,
                                      long denominator_bound = 8) {
    if (n < 1) throw std::invalid_argument("generator requires n >= 1");
    if (lo > hi) throw std::invalid_argument("invalid cost range: lo > hi");
    if (denominator_bound < 1) throw std::invalid_argument("denominator bound must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> den_dist(1, denominator_bound);
    std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n));
    for (auto& row : rows)
        for (auto& v : row) {
            long q = den_dist(rng);
            Rat lo_q = lo * q, hi_q = hi * q;
            mpz_class a, b;
            mpz_cdiv_q(a.get_mpz_t(), lo_q.get_num_mpz_t(), lo_q.get_den_mpz_t());
            mpz_fdiv_q(b.get_mpz_t(), hi_q.get_num_mpz_t(), hi_q.get_den_mpz_t());
            if (a > b) { v = lo; continue; }  // no representable numerator for this q
            std::uniform_int_distribution<long> num_dist(a.get_si(), b.get_si());
            v = rat_from(num_dist(rng), q);
        }
    return validate_space(default_labels(n), rows);
}

inline Space<double> gen_random_float(int n, std::uint64_t seed, double lo, double hi) {
    if (n < 1) throw std::invalid_argument("generator requires n >= 1");
    if (lo > hi) throw std::invalid_argument("invalid cost range: lo > hi");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows)
        for (auto& v : row) v = dist(rng);
    return validate_space(default_labels(n), rows);
}

/// Circular grid of `grid_size` points, shortest circular distance d, and a
/// per-point potential V: c(y,x) = d(y,x)^2/2 + V(x).
inline Space<Rat> gen_torus(int grid_size, const std::vector<Rat>& potential) {
    if (grid_size < 2) throw std::invalid_argument("torus generator requires grid_size >= 2");
    if (static_cast<int>(potential.size()) != grid_size)
        throw std::invalid_argument("potential length must equal grid_size");
    const int n = grid_size;
    std::vector<std::vector<Rat>> rows(n, std::vector<Rat>(n));
    for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x) {
            long k = std::min(std::abs(x - y), n - std::abs(x - y));
            rows[y][x] = rat_from(k * k, 2L * n * n) + potential[x];
        }
    return validate_space(default_labels(n), rows);
}

}  // namespace weakkam
