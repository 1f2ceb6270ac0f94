#pragma once

/**
 * Property battery behind the `check` CLI command.  Runs every module-level
 * identity against one instance and reports one line per property.  The
 * acceptance tests reuse the same helpers on the canonical and seeded
 * instances.
 */

#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "weakkam/brute.hpp"
#include "weakkam/critical.hpp"
#include "weakkam/lax_oleinik.hpp"
#include "weakkam/mather.hpp"
#include "weakkam/selection.hpp"
#include "weakkam/space.hpp"

namespace weakkam {

struct CheckItem {
    std::string name;
    bool pass;
    std::string detail;
};

namespace checks {

template <class S>
S tol_of(const SolverConfig<S>& cfg) {
    return scalar_traits<S>::exact ? S(0) : S(cfg.tol);
}

/// Uniform rational in [0,1] with denominator 64, or uniform double.
template <class S>
S unit_random(std::mt19937_64& rng) {
    if constexpr (scalar_traits<S>::exact) {
        return rat_from(static_cast<long>(rng() % 65), 64);
    } else {
        return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
}

template <class S>
std::vector<S> random_values(int n, std::mt19937_64& rng, const S& scale) {
    std::vector<S> out(n);
    for (auto& v : out) v = (unit_random<S>(rng) * S(2) - S(1)) * scale;
    return out;
}

template <class S>
S sup_dist(const std::vector<S>& a, const std::vector<S>& b) {
    S worst(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        S d = abs_val<S>(a[i] - b[i]);
        if (d > worst) worst = d;
    }
    return worst;
}

template <class S>
S sup_norm_vec(const std::vector<S>& a) {
    S worst(0);
    for (const auto& v : a) {
        S d = abs_val<S>(v);
        if (d > worst) worst = d;
    }
    return worst;
}

/// Members of F_-: rows -h(.,y) + const, convex combinations and pointwise
/// minima, each shifted so every Mather integral is nonpositive.
template <class S>
std::vector<S> sample_f_minus(const Space<S>& sp, const BarrierData<S>& barrier,
                              const std::vector<CycleMeasure<S>>& extremes,
                              std::mt19937_64& rng) {
    auto base_row = [&](int y) {
        std::vector<S> w(sp.n);
        for (int x = 0; x < sp.n; ++x) w[x] = -barrier.h_at(x, y, sp.n);
        return w;
    };
    int y1 = static_cast<int>(rng() % sp.n), y2 = static_cast<int>(rng() % sp.n);
    std::vector<S> w = base_row(y1);
    switch (rng() % 3) {
        case 0: break;
        case 1: {  // convex combination
            S t = unit_random<S>(rng);
            auto w2 = base_row(y2);
            for (int x = 0; x < sp.n; ++x) w[x] = t * w[x] + (S(1) - t) * w2[x];
            break;
        }
        default: {  // pointwise minimum
            S shift = unit_random<S>(rng);
            auto w2 = base_row(y2);
            for (int x = 0; x < sp.n; ++x)
                if (w2[x] + shift < w[x]) w[x] = w2[x] + shift;
            break;
        }
    }
    S offset = unit_random<S>(rng);
    for (auto& v : w) v += offset;
    // normalize the Mather integrals to <= 0
    bool first = true;
    S max_integral(0);
    for (const auto& cm : extremes) {
        S v = integrate_node(w, project(cm.measure, 1));
        if (first || v > max_integral) { max_integral = v; first = false; }
    }
    if (max_integral > S(0))
        for (auto& v : w) v -= max_integral;
    return w;
}

/// Supersolutions: pointwise minima of weak KAM solutions h(y,.) + const.
template <class S>
std::vector<S> sample_supersolution(const Space<S>& sp, const BarrierData<S>& barrier,
                                    std::mt19937_64& rng) {
    std::vector<S> w(sp.n);
    int y = barrier.aubry[rng() % barrier.aubry.size()];
    S c = unit_random<S>(rng);
    for (int x = 0; x < sp.n; ++x) w[x] = barrier.h_at(y, x, sp.n) + c;
    if (barrier.aubry.size() > 1 && rng() % 2) {
        int y2 = barrier.aubry[rng() % barrier.aubry.size()];
        S c2 = unit_random<S>(rng);
        for (int x = 0; x < sp.n; ++x)
            if (barrier.h_at(y2, x, sp.n) + c2 < w[x]) w[x] = barrier.h_at(y2, x, sp.n) + c2;
    }
    return w;
}

}  // namespace checks

template <class S>
std::vector<CheckItem> run_check_suite(const Space<S>& sp, const SolverConfig<S>& cfg) {
    using namespace checks;
    std::vector<CheckItem> items;
    std::mt19937_64 rng(cfg.seed ? cfg.seed : 0x7ea15eedull);
    const S tol = tol_of(cfg);
    const S tol2 = tol * S(2);
    auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        items.push_back({name, pass, detail});
    };
    auto str = [](const S& v) { return scalar_traits<S>::str(v); };

    const int n = sp.n;
    const S alpha = critical_value_karp(sp);
    const auto barrier = compute_barrier(sp, cfg);
    const auto extremes = extreme_mather_measures(sp, barrier);
    const auto sel = compute_u0(sp, barrier, extremes);
    const S lambda = from_ratio<S>(3, 4);

    // core: path cost additivity on a random split
    {
        Path p;
        for (int i = 0; i < 5; ++i) p.push_back(static_cast<int>(rng() % n));
        S whole = path_cost(sp, p);
        Path left(p.begin(), p.begin() + 3), right(p.begin() + 2, p.end());
        add("core.path_cost_additive",
            !(abs_val<S>(whole - path_cost(sp, left) - path_cost(sp, right)) > tol));
    }
    // core/critical: brute oracles vs min-plus powers
    if (n <= kBruteSpaceCap) {
        bool ok = true;
        for (int steps = 1; steps <= 3 && ok; ++steps) {
            auto power = min_plus_power(sp, steps);
            for (int x = 0; x < n && ok; ++x)
                for (int y = 0; y < n && ok; ++y)
                    ok = brute_cn(sp, x, y, steps) == power[static_cast<std::size_t>(x) * n + y];
        }
        add("critical.min_plus_power_vs_brute", ok);
        bool sub = true;
        auto c1 = min_plus_power(sp, 1);
        auto c2 = min_plus_power(sp, 2);
        auto c3 = min_plus_power(sp, 3);
        auto at = [n](const std::vector<S>& m, int a, int b) {
            return m[static_cast<std::size_t>(a) * n + b];
        };
        for (int x = 0; x < n && sub; ++x)
            for (int y = 0; y < n && sub; ++y)
                for (int z = 0; z < n && sub; ++z)
                    sub = !(at(c3, x, z) > at(c1, x, y) + at(c2, y, z) + tol);
        add("core.brute_cn_subadditive", sub);
    }
    // three-route critical value
    if (n <= kBruteCycleCap)
        add("critical.alpha_vs_brute_cycle",
            !(abs_val<S>(alpha + brute_min_mean_cycle(sp).mean) > tol));
    if (n <= kSimplexSizeCap) {
        auto lp = minimize_cost_lp(sp);
        add("mather.lp_value_equals_minus_alpha", !(abs_val<S>(lp.value + alpha) > tol),
            "lp=" + str(lp.value) + " alpha=" + str(alpha));
        add("mather.lp_measure_closed", check_closed(lp.mu, tol).closed);
        add("mather.lp_support_in_aubry", support_in_aubry(sp, lp.mu, barrier, tol2));
    }
    // discounted estimate within its a-posteriori bound
    {
        auto [alpha_hat, bound] = critical_value_discounted_estimate(sp, lambda, cfg);
        add("critical.discounted_estimate_bound",
            !(abs_val<S>(alpha_hat - alpha) > bound + tol2),
            "alpha_hat=" + str(alpha_hat) + " bound=" + str(bound));
    }
    // operator laws on random pairs
    {
        bool mono = true, contract = true, commute = true;
        for (int trial = 0; trial < 5; ++trial) {
            auto f = random_values<S>(n, rng, S(2));
            auto g = random_values<S>(n, rng, S(2));
            auto fg = f;
            for (int i = 0; i < n; ++i)
                if (g[i] > fg[i]) fg[i] = g[i];  // fg >= f pointwise
            auto tf = apply_T(sp, f).values, tfg = apply_T(sp, fg).values;
            for (int i = 0; i < n; ++i)
                if (tf[i] > tfg[i] + tol) mono = false;
            S lhs = sup_dist(apply_T_discounted(sp, f, lambda).values,
                             apply_T_discounted(sp, g, lambda).values);
            if (lhs > lambda * sup_dist(f, g) + tol) contract = false;
            S k = unit_random<S>(rng);
            auto shifted = f;
            for (auto& v : shifted) v += k;
            auto a = apply_T(sp, shifted).values;
            auto b = apply_T(sp, f).values;
            for (auto& v : b) v += k;
            if (sup_dist(a, b) > tol) commute = false;
            auto al = apply_T_discounted(sp, shifted, lambda).values;
            auto bl = apply_T_discounted(sp, f, lambda).values;
            for (auto& v : bl) v += lambda * k;
            if (sup_dist(al, bl) > tol) commute = false;
        }
        add("lax_oleinik.monotone", mono);
        add("lax_oleinik.contraction", contract);
        add("lax_oleinik.constant_commutation", commute);
    }
    // discounted solve vs representation series
    {
        auto sol = solve_discounted(sp, lambda, S(0), cfg);
        bool ok = true;
        S worst(0);
        for (int x = 0; x < n; ++x) {
            auto sv = discounted_series_value(sp, lambda, S(0), x, 40);
            S d = abs_val<S>(sv.value - sol.u[x]);
            if (d > worst) worst = d;
            if (d > sv.tail_bound + tol) ok = false;
        }
        add("lax_oleinik.series_within_tail_bound", ok, "worst=" + str(worst));
        add("lax_oleinik.solution_is_subsolution",
            check_subsolution(sp, sol.u, std::optional<S>(lambda), S(0), tol).ok);
        add("lax_oleinik.solution_is_supersolution",
            check_supersolution(sp, sol.u, std::optional<S>(lambda), S(0), tol).ok);
        add("lax_oleinik.sandwich_at_equality",
            comparison_sandwich(sp, lambda, S(0), sol.u, sol.u, cfg));
    }
    // beta shift identity on random triples
    {
        bool ok = true;
        S worst(0);
        for (int trial = 0; trial < 3; ++trial) {
            S l = unit_random<S>(rng) / S(2) + from_ratio<S>(1, 4);
            S b1 = random_values<S>(1, rng, S(2))[0], b2 = random_values<S>(1, rng, S(2))[0];
            S dev = beta_shift_identity(sp, l, b1, b2, cfg);
            if (dev > worst) worst = dev;
        }
        ok = !(worst > tol2);
        add("lax_oleinik.beta_shift_identity", ok, "worst=" + str(worst));
    }
    // barrier invariants
    {
        auto at = [n](const std::vector<S>& m, int a, int b) {
            return m[static_cast<std::size_t>(a) * n + b];
        };
        bool phi_diag = true, h_diag = true, tri = true, h_ge_phi = true, factor = true;
        for (int z = 0; z < n; ++z) {
            if (at(barrier.phi, z, z) < -cfg.aubry_eps) phi_diag = false;
            if (at(barrier.h, z, z) < -cfg.aubry_eps) h_diag = false;
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (at(barrier.h, x, y) < at(barrier.phi, x, y) - tol) h_ge_phi = false;
                if ((barrier.in_aubry(x) || barrier.in_aubry(y)) &&
                    abs_val<S>(at(barrier.h, x, y) - at(barrier.phi, x, y)) > cfg.aubry_eps + tol)
                    factor = false;
                for (int z = 0; z < n; ++z)
                    if (at(barrier.h, x, z) > at(barrier.h, x, y) + at(barrier.h, y, z) + tol)
                        tri = false;
            }
        add("critical.phi_diag_nonnegative", phi_diag);
        add("critical.h_diag_nonnegative", h_diag);
        add("critical.h_triangle_inequality", tri);
        add("critical.h_dominates_phi", h_ge_phi);
        add("critical.h_equals_phi_through_aubry", factor);
        add("critical.aubry_nonempty", !barrier.aubry.empty());
        bool aubry_def = true;
        for (int z = 0; z < n; ++z) {
            bool zero = !(abs_val<S>(at(barrier.h, z, z)) > cfg.aubry_eps);
            if (zero != barrier.in_aubry(z)) aubry_def = false;
        }
        add("critical.aubry_is_h_diag_zero", aubry_def);
        bool edges_ok = true;
        for (auto [y, x] : barrier.critical_edges) {
            if (abs_val<S>(sp.c(y, x) + alpha + at(barrier.phi, x, y)) > cfg.aubry_eps)
                edges_ok = false;
            if (!barrier.in_aubry(y) || !barrier.in_aubry(x)) edges_ok = false;
        }
        add("critical.critical_edges_identity", edges_ok);
    }
    // Peierls liminf oracle
    if (n <= kBruteSpaceCap) {
        long window = 1;
        for (int i = 2; i <= n; ++i) window *= i;  // n! covers every cycle period
        int w = static_cast<int>(std::max<long>(window, n));
        auto oracle = peierls_liminf_oracle(sp, alpha, std::max(200, w + n * n), w);
        add("critical.peierls_liminf_oracle",
            sup_dist(oracle, barrier.h) <= tol2 + cfg.aubry_eps,
            "dist=" + str(sup_dist(oracle, barrier.h)));
    }
    // weak KAM solutions from barrier rows
    {
        bool ok = true;
        for (int y : barrier.aubry) {
            auto u = weak_kam_solution(sp, barrier, y);
            if (!check_subsolution(sp, u, std::optional<S>{}, alpha, tol).ok) ok = false;
            if (!check_supersolution(sp, u, std::optional<S>{}, alpha, tol).ok) ok = false;
        }
        add("critical.weak_kam_rows_solve", ok);
    }
    // subsolution families (convex combination, min, max) and the h bound
    {
        bool families = true, h_bound = true, rows_sub = true;
        S row_norm(0);
        for (int y = 0; y < n; ++y) {
            std::vector<S> neg_col(n);
            for (int x = 0; x < n; ++x) neg_col[x] = -barrier.h_at(x, y, n);
            if (!check_subsolution(sp, neg_col, std::optional<S>{}, alpha, tol).ok) rows_sub = false;
            S m = sup_norm_vec(neg_col);
            if (m > row_norm) row_norm = m;
        }
        for (int trial = 0; trial < 5; ++trial) {
            auto w1 = sample_f_minus(sp, barrier, extremes, rng);
            auto w2 = sample_f_minus(sp, barrier, extremes, rng);
            S t = unit_random<S>(rng);
            std::vector<S> comb(n), mn(n), mx(n);
            for (int x = 0; x < n; ++x) {
                comb[x] = t * w1[x] + (S(1) - t) * w2[x];
                mn[x] = w1[x] < w2[x] ? w1[x] : w2[x];
                mx[x] = w1[x] > w2[x] ? w1[x] : w2[x];
            }
            if (!check_subsolution(sp, comb, std::optional<S>{}, alpha, tol2).ok) families = false;
            if (!check_subsolution(sp, mn, std::optional<S>{}, alpha, tol2).ok) families = false;
            if (!check_subsolution(sp, mx, std::optional<S>{}, alpha, tol2).ok) families = false;
            for (int x = 0; x < n && h_bound; ++x)
                for (int y = 0; y < n; ++y)
                    if (w1[x] - w1[y] > barrier.h_at(y, x, n) + tol2) { h_bound = false; break; }
        }
        add("lax_oleinik.subsolution_families", families);
        add("critical.subsolution_h_bound", h_bound);
        add("critical.neg_h_columns_are_subsolutions", rows_sub,
            "equibounded max=" + str(row_norm));
    }
    // T(w)+alpha dominates w with equality on the Aubry set
    {
        bool ok = true;
        for (int trial = 0; trial < 3; ++trial) {
            auto w = sample_f_minus(sp, barrier, extremes, rng);
            auto tw = apply_T(sp, w).values;
            for (auto& v : tw) v += alpha;
            if (!check_subsolution(sp, tw, std::optional<S>{}, alpha, tol2).ok) ok = false;
            for (int x = 0; x < n; ++x)
                if (tw[x] < w[x] - tol2) ok = false;
            for (int z : barrier.aubry)
                if (abs_val<S>(tw[z] - w[z]) > tol2 + cfg.aubry_eps) ok = false;
        }
        add("lax_oleinik.T_fixes_subsolutions_on_aubry", ok);
    }
    // extreme Mather measures
    {
        bool ok = true;
        for (const auto& cm : extremes) {
            if (!check_closed(cm.measure, tol).closed) ok = false;
            if (abs_val<S>(integrate_cost(sp, cm.measure) + alpha) > tol2) ok = false;
            if (!support_in_aubry(sp, cm.measure, barrier, tol2)) ok = false;
            auto p1 = project(cm.measure, 1), p2 = project(cm.measure, 2);
            if (sup_dist(p1, p2) > tol) ok = false;
        }
        add("mather.extreme_measures_valid", ok,
            "count=" + std::to_string(extremes.size()));
        bool integ = true;
        for (int trial = 0; trial < 3; ++trial) {
            auto u = sample_f_minus(sp, barrier, extremes, rng);
            auto tu = apply_T(sp, u).values;
            for (auto& v : tu) v += alpha;
            for (const auto& cm : extremes) {
                auto mu = project(cm.measure, 1);
                if (abs_val<S>(integrate_node(tu, mu) - integrate_node(u, mu)) > tol2)
                    integ = false;
            }
        }
        add("mather.subsolution_integrals_T_invariant", integ);
    }
    // u0: fixed point, membership, characterization 1, Aubry saturation
    {
        auto t = apply_T(sp, sel.u0).values;
        S resid(0);
        for (int x = 0; x < n; ++x) {
            S d = abs_val<S>(sel.u0[x] - t[x] - alpha);
            if (d > resid) resid = d;
        }
        add("selection.u0_solves_critical_equation", !(resid > tol2), "residual=" + str(resid));
        add("selection.u0_in_f_minus",
            f_minus_member(sp, alpha, sel.u0, extremes, tol2).member);
        bool dominated = true;
        for (int trial = 0; trial < 10; ++trial) {
            auto w = sample_f_minus(sp, barrier, extremes, rng);
            for (int x = 0; x < n; ++x)
                if (w[x] > sel.u0[x] + tol2) dominated = false;
        }
        add("selection.f_minus_below_u0", dominated);
        bool saturated = true;
        for (int y : barrier.aubry) {
            std::vector<S> w(n);
            for (int x = 0; x < n; ++x) w[x] = -barrier.h_at(x, y, n) + sel.u0[y];
            auto rep = f_minus_member(sp, alpha, w, extremes, tol2);
            if (!rep.member) saturated = false;
            for (int x = 0; x < n; ++x)
                if (w[x] > sel.u0[x] + tol2) saturated = false;
            if (abs_val<S>(w[y] - sel.u0[y]) > tol2) saturated = false;
        }
        add("selection.aubry_saturation", saturated);
        bool mono_mu = true;
        for (std::size_t m = 0; m < extremes.size(); ++m)
            for (int x = 0; x < n; ++x)
                if (sel.u0[x] > sel.h_mu_values[m][x] + tol) mono_mu = false;
        add("selection.u0_below_each_h_mu", mono_mu);
    }
    // key inequality and maximum principle on sampled configurations
    {
        bool key = true, maxp = true;
        for (int trial = 0; trial < 5; ++trial) {
            auto w = sample_f_minus(sp, barrier, extremes, rng);
            if (!key_inequality_check(sp, alpha, sel.u0, w, extremes, tol2)) key = false;
            auto super = sample_supersolution(sp, barrier, rng);
            auto v = w;
            bool first = true;
            S shift(0);
            for (int z : barrier.aubry) {
                S d = v[z] - super[z];
                if (first || d > shift) { shift = d; first = false; }
            }
            if (shift > S(0))
                for (auto& vv : v) vv -= shift;
            if (!max_principle_check(sp, alpha, barrier, v, super, tol2)) maxp = false;
        }
        add("selection.key_inequality", key);
        add("selection.maximum_principle", maxp);
    }
    // convergence sweep: residual contract, occupation bounds, final error
    {
        auto schedule = default_schedule<S>(20);
        auto rep = convergence_sweep(sp, cfg, schedule);
        bool residuals = true, defects = true, costs = true, rows_ok = true;
        for (const auto& row : rep.rows) {
            if (row.failed) { rows_ok = false; continue; }
            if (row.residual > tol) residuals = false;
            S pw(1);
            for (int i = 0; i < row.horizon; ++i) pw *= row.lambda;
            if (row.occupation_defect > S(2) * (S(1) - row.lambda) + pw + tol) defects = false;
            S expected = (S(1) - row.lambda) * row.discounted_value_x0 - alpha;
            if (abs_val<S>(row.cost_integral - expected) > pw * sp.sup_norm(alpha) + tol2)
                costs = false;
        }
        add("selection.sweep_rows_succeed", rows_ok);
        add("selection.sweep_residual_contract", residuals);
        add("mather.occupation_defect_bound", defects);
        add("mather.occupation_cost_identity", costs);
        const auto& last = rep.rows.back();
        add("selection.sweep_final_error",
            !last.failed && !(last.sup_error > from_ratio<S>(1, 1000000) + tol),
            last.failed ? "row failed" : "final=" + str(last.sup_error));
        bool tail_monotone = true;
        for (std::size_t i = rep.rows.size() >= 5 ? rep.rows.size() - 5 : 0;
             i + 1 < rep.rows.size(); ++i)
            if (rep.rows[i + 1].sup_error > rep.rows[i].sup_error + tol) tail_monotone = false;
        add("selection.sweep_error_eventually_nonincreasing", tail_monotone);
    }
    return items;
}

}  // namespace weakkam
