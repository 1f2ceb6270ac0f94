// Python bindings.  Instances travel as JSON strings in the same schema the
// CLI uses; the weakkam package wraps these into dict-returning helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weakkam/check_suite.hpp"
#include "weakkam/instances.hpp"
#include "weakkam/json_io.hpp"

namespace py = pybind11;
using namespace weakkam;

namespace {

Instance parse_instance(const std::string& text) {
    return instance_from_json(json::parse(text));
}

template <class F>
std::string on_instance(const std::string& text, F&& f) {
    return std::visit([&](const auto& sp) { return f(sp); }, parse_instance(text));
}

template <class S>
SolverConfig<S> default_config() {
    SolverConfig<S> cfg;
    if constexpr (!scalar_traits<S>::exact) cfg.aubry_eps = 1e-9;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "discrete weak KAM solver core";

    m.def("gen_random_rational",
          [](int n, std::uint64_t seed, const std::string& lo, const std::string& hi,
             long denominator_bound) {
              return instance_json(gen_random_rational(n, seed, rat_parse_flexible(lo),
                                                       rat_parse_flexible(hi),
                                                       denominator_bound))
                  .dump();
          },
          py::arg("n"), py::arg("seed"), py::arg("lo") = "0", py::arg("hi") = "1",
          py::arg("denominator_bound") = 8);

    m.def("gen_random_float",
          [](int n, std::uint64_t seed, double lo, double hi) {
              return instance_json(gen_random_float(n, seed, lo, hi)).dump();
          },
          py::arg("n"), py::arg("seed"), py::arg("lo") = 0.0, py::arg("hi") = 1.0);

    m.def("gen_torus",
          [](int grid_size, const std::vector<std::string>& potential) {
              std::vector<Rat> v;
              for (const auto& p : potential) v.push_back(rat_parse_flexible(p));
              return instance_json(gen_torus(grid_size, v)).dump();
          },
          py::arg("grid_size"), py::arg("potential"));

    m.def("solve",
          [](const std::string& inst, const std::string& lambda, const std::string& beta) {
              return on_instance(inst, [&](const auto& sp) {
                  using S = typename std::decay_t<decltype(sp)>::Scalar;
                  auto sol = solve_discounted(sp, scalar_parse<S>(lambda),
                                              scalar_parse<S>(beta), default_config<S>());
                  return solution_json(sol).dump();
              });
          },
          py::arg("instance"), py::arg("lambda"), py::arg("beta") = "0");

    m.def("critical", [](const std::string& inst) {
        return on_instance(inst, [&](const auto& sp) {
            using S = typename std::decay_t<decltype(sp)>::Scalar;
            S alpha = critical_value_karp(sp);
            auto lp = minimize_cost_lp(sp);
            auto [estimate, bound] = critical_value_discounted_estimate(
                sp, from_ratio<S>(3, 4), default_config<S>());
            json j = {{"alpha_karp", scalar_json(alpha)},
                      {"alpha_lp", scalar_json(-lp.value)},
                      {"alpha_discounted_estimate", scalar_json(estimate)},
                      {"estimate_bound", scalar_json(bound)}};
            return j.dump();
        });
    });

    m.def("barrier", [](const std::string& inst) {
        return on_instance(inst, [&](const auto& sp) {
            using S = typename std::decay_t<decltype(sp)>::Scalar;
            return barrier_json(compute_barrier(sp, default_config<S>()), sp.n).dump();
        });
    });

    m.def("mather", [](const std::string& inst) {
        return on_instance(inst, [&](const auto& sp) {
            using S = typename std::decay_t<decltype(sp)>::Scalar;
            auto b = compute_barrier(sp, default_config<S>());
            json arr = json::array();
            for (const auto& cm : extreme_mather_measures(sp, b))
                arr.push_back(cycle_measure_json(cm));
            json j = {{"alpha", scalar_json(b.alpha)}, {"measures", std::move(arr)}};
            return j.dump();
        });
    });

    m.def("u0", [](const std::string& inst) {
        return on_instance(inst, [&](const auto& sp) {
            using S = typename std::decay_t<decltype(sp)>::Scalar;
            auto b = compute_barrier(sp, default_config<S>());
            auto sel = compute_u0(sp, b, extreme_mather_measures(sp, b));
            return selection_json(sel).dump();
        });
    });

    m.def("sweep",
          [](const std::string& inst, const std::vector<std::string>& schedule,
             const std::string& style) {
              return on_instance(inst, [&](const auto& sp) {
                  using S = typename std::decay_t<decltype(sp)>::Scalar;
                  std::vector<S> lams;
                  for (const auto& l : schedule) lams.push_back(scalar_parse<S>(l));
                  if (lams.empty()) lams = default_schedule<S>();
                  auto rep = convergence_sweep(sp, default_config<S>(), lams);
                  return sweep_csv(rep, style == "fraction" ? CsvRational::fraction
                                                            : CsvRational::decimal);
              });
          },
          py::arg("instance"), py::arg("schedule") = std::vector<std::string>{},
          py::arg("style") = "decimal");

    m.def("check", [](const std::string& inst) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        std::visit(
            [&](const auto& sp) {
                using S = typename std::decay_t<decltype(sp)>::Scalar;
                for (auto& item : run_check_suite(sp, default_config<S>()))
                    out.emplace_back(item.name, item.pass, item.detail);
            },
            parse_instance(inst));
        return out;
    });
}
