#pragma once

/**
 * Scalar modes for the solver.
 *
 * All real quantities are carried either as exact rationals (GMP mpq,
 * default for small instances) or as binary64 with explicit tolerances.
 * Set-valued outputs (Aubry set, critical graph) are equality-defined,
 * so the rational mode is the reference arithmetic.
 */

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace weakkam {

using Rat = mpq_class;

enum class Mode { rational, float64 };

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr Mode mode = Mode::float64;
    static bool finite(double v) { return std::isfinite(v); }
    static double to_double(double v) { return v; }
    static std::string str(double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    }
};

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static constexpr Mode mode = Mode::rational;
    static bool finite(const Rat&) { return true; }
    static double to_double(const Rat& v) { return v.get_d(); }
    static std::string str(const Rat& v) { return v.get_str(); }
};

template <class S>
inline S abs_val(const S& v) {
    return v < S(0) ? S(-v) : v;
}

/// num/den in the scalar type of the active mode.
template <class S>
S from_ratio(long num, long den);

template <>
inline double from_ratio<double>(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
}

/// Parse "p/q", "p", or a plain integer literal into an exact rational.
inline Rat rat_parse(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("invalid rational literal: '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
    r.canonicalize();
    return r;
}

inline Rat rat_from(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

template <>
inline Rat from_ratio<Rat>(long num, long den) {
    return rat_from(num, den);
}

/// Exact decimal expansion when the denominator is of the form 2^a 5^b,
/// otherwise empty (caller falls back to "p/q").
inline std::string rat_decimal(const Rat& v) {
    mpz_class den = v.get_den();
    unsigned twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return {};
    unsigned digits = std::max(twos, fives);
    mpz_class scale = 1;
    for (unsigned i = 0; i < digits; ++i) scale *= 10;
    mpz_class scaled = v.get_num() * scale / v.get_den();
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.get_str();
    if (digits == 0) return (neg ? "-" : "") + s;
    while (s.size() <= digits) s.insert(s.begin(), '0');
    s.insert(s.size() - digits, ".");
    return (neg ? "-" : "") + s;
}

}  // namespace weakkam
