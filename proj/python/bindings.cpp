#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pbsgame/cli.hpp"
#include "pbsgame/closed_form.hpp"
#include "pbsgame/deterministic_game.hpp"
#include "pbsgame/distribution.hpp"
#include "pbsgame/logit.hpp"
#include "pbsgame/monte_carlo.hpp"
#include "pbsgame/quadrature.hpp"
#include "pbsgame/stochastic_game.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace pbsgame;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Solvers and simulators for the two-stage order-flow / block auction game";

    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);

    py::enum_<Builder>(m, "Builder").value("A", Builder::A).value("B", Builder::B);

    py::enum_<Scenario>(m, "Scenario")
        .value("mempool", Scenario::mempool)
        .value("ofa", Scenario::ofa);

    py::class_<ValueDistribution>(m, "ValueDistribution")
        .def("cdf", &ValueDistribution::cdf, py::arg("v"))
        .def("pdf", &ValueDistribution::pdf, py::arg("v"))
        .def("quantile", &ValueDistribution::quantile, py::arg("q"))
        .def("sample_from_uniform", &ValueDistribution::sample_from_uniform, py::arg("u"))
        .def_property_readonly("support_hint", &ValueDistribution::support_hint)
        .def_property_readonly("rate", &ValueDistribution::rate)
        .def("__repr__", [](const ValueDistribution& d) { return distribution_to_json(d); });

    m.def("make_exponential", &make_exponential, py::arg("rate"),
          "Exponential value distribution with the given rate");
    m.def("fosd_dominates", &fosd_dominates, py::arg("f"), py::arg("g"),
          py::arg("grid_points") = 10000,
          "Weak first-order stochastic dominance of f over g on a grid");
    m.def("distribution_from_json", &distribution_from_json, py::arg("text"));
    m.def("distribution_to_json", &distribution_to_json, py::arg("dist"));

    m.def(
        "integrate",
        [](const std::function<double(double)>& fn, double lo, double hi, double abs_tol,
           double rel_tol) {
            const auto r = integrate(fn, lo, hi, abs_tol, rel_tol);
            return std::pair{r.value, r.error};
        },
        py::arg("fn"), py::arg("lo"), py::arg("hi"), py::arg("abs_tol") = kQuadAbsTol,
        py::arg("rel_tol") = kQuadRelTol, "Adaptive quadrature; returns (value, error_estimate)");

    py::class_<DeterministicGame>(m, "DeterministicGame")
        .def(py::init([](double v_a, double v_b, double v_t) {
                 DeterministicGame g{v_a, v_b, v_t};
                 g.validate();
                 return g;
             }),
             py::arg("v_a"), py::arg("v_b"), py::arg("v_t"))
        .def_readonly("v_a", &DeterministicGame::v_a)
        .def_readonly("v_b", &DeterministicGame::v_b)
        .def_readonly("v_t", &DeterministicGame::v_t);

    py::class_<GameOutcome>(m, "GameOutcome")
        .def_readonly("block_winner", &GameOutcome::block_winner)
        .def_readonly("ofa_winner", &GameOutcome::ofa_winner)
        .def_readonly("ofa_price", &GameOutcome::ofa_price)
        .def_readonly("pbs_price", &GameOutcome::pbs_price)
        .def_readonly("total_price", &GameOutcome::total_price)
        .def_readonly("surplus_a", &GameOutcome::surplus_a)
        .def_readonly("surplus_b", &GameOutcome::surplus_b)
        .def_readonly("proposer_revenue", &GameOutcome::proposer_revenue)
        .def_readonly("ofa_revenue", &GameOutcome::ofa_revenue);

    m.def("solve_scenario1", &solve_scenario1, py::arg("game"));
    m.def("solve_scenario2", &solve_scenario2, py::arg("game"));
    m.def(
        "clock_auction",
        [](const std::vector<double>& values, double tick) {
            const auto r = clock_auction(values, tick);
            return std::pair{r.winner, r.price};
        },
        py::arg("values"), py::arg("tick"),
        "Ascending clock auction; returns (winner_index, price)");

    py::class_<StochasticGame>(m, "StochasticGame")
        .def(py::init([](ValueDistribution a, ValueDistribution b, double v_t) {
                 StochasticGame g{std::move(a), std::move(b), v_t};
                 g.validate();
                 return g;
             }),
             py::arg("dist_a"), py::arg("dist_b"), py::arg("v_t"))
        .def_readonly("dist_a", &StochasticGame::dist_a)
        .def_readonly("dist_b", &StochasticGame::dist_b)
        .def_readonly("v_t", &StochasticGame::v_t);

    py::class_<OfaValuation>(m, "OfaValuation")
        .def_readonly("value", &OfaValuation::value)
        .def_readonly("error", &OfaValuation::error);

    py::class_<OfaValuationReport>(m, "OfaValuationReport")
        .def_readonly("v_ta", &OfaValuationReport::v_ta)
        .def_readonly("v_tb", &OfaValuationReport::v_tb)
        .def_readonly("err_ta", &OfaValuationReport::err_ta)
        .def_readonly("err_tb", &OfaValuationReport::err_tb);

    py::class_<ScenarioComparison>(m, "ScenarioComparison")
        .def_readonly("win_prob_s1", &ScenarioComparison::win_prob_s1)
        .def_readonly("win_prob_s2", &ScenarioComparison::win_prob_s2)
        .def_readonly("profit_a_s1", &ScenarioComparison::profit_a_s1)
        .def_readonly("profit_a_s2", &ScenarioComparison::profit_a_s2)
        .def_readonly("v_ta", &ScenarioComparison::v_ta)
        .def_readonly("v_tb", &ScenarioComparison::v_tb);

    m.def("interim_win_prob", &interim_win_prob, py::arg("opponent"), py::arg("v"), py::arg("v_t"),
          py::arg("won_ofa"));
    m.def("ofa_valuation", &ofa_valuation, py::arg("game"), py::arg("builder"));
    m.def("ofa_valuation_report", &ofa_valuation_report, py::arg("game"));
    m.def("taylor_ofa_valuation", &taylor_ofa_valuation, py::arg("game"), py::arg("builder"));
    m.def("win_probability", &win_probability, py::arg("game"), py::arg("scenario"));
    m.def("expected_profit", &expected_profit, py::arg("game"), py::arg("scenario"));
    m.def("compare_scenarios", &compare_scenarios, py::arg("game"));

    py::class_<ExpGameParams>(m, "ExpGameParams")
        .def(py::init([](double la, double lb, double v_t) {
                 ExpGameParams p{la, lb, v_t};
                 p.validate();
                 return p;
             }),
             py::arg("lambda_a"), py::arg("lambda_b"), py::arg("v_t"))
        .def_readonly("lambda_a", &ExpGameParams::lambda_a)
        .def_readonly("lambda_b", &ExpGameParams::lambda_b)
        .def_readonly("v_t", &ExpGameParams::v_t);

    py::class_<ClosedFormReport>(m, "ClosedFormReport")
        .def_readonly("v_ta", &ClosedFormReport::v_ta)
        .def_readonly("v_tb", &ClosedFormReport::v_tb)
        .def_readonly("win_s1", &ClosedFormReport::win_s1)
        .def_readonly("win_s2", &ClosedFormReport::win_s2)
        .def_readonly("profit_s1", &ClosedFormReport::profit_s1)
        .def_readonly("profit_s2", &ClosedFormReport::profit_s2)
        .def_readonly("profit_gap", &ClosedFormReport::profit_gap);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("ratio", &SweepRow::ratio)
        .def_readonly("report", &SweepRow::report)
        .def_readonly("boundary", &SweepRow::boundary);

    m.def("exp_closed_forms", &exp_closed_forms, py::arg("params"));
    m.def(
        "sweep_comparative_statics",
        [](double v_t, double rate_sum, const std::vector<double>& ratios) {
            return sweep_comparative_statics(v_t, rate_sum, ratios);
        },
        py::arg("v_t"), py::arg("rate_sum"), py::arg("ratios"));
    m.def(
        "sweep_to_csv",
        [](const std::vector<SweepRow>& rows) { return sweep_to_csv(rows); }, py::arg("rows"));

    py::class_<MCConfig>(m, "MCConfig")
        .def(py::init([](std::uint64_t n_samples, std::uint64_t seed, std::uint64_t chunk_size) {
                 MCConfig cfg{n_samples, seed, chunk_size};
                 cfg.validate();
                 return cfg;
             }),
             py::arg("n_samples"), py::arg("seed"), py::arg("chunk_size") = 1u << 16)
        .def_readonly("n_samples", &MCConfig::n_samples)
        .def_readonly("seed", &MCConfig::seed)
        .def_readonly("chunk_size", &MCConfig::chunk_size);

    py::class_<MCEstimate>(m, "MCEstimate")
        .def_readonly("mean", &MCEstimate::mean)
        .def_readonly("std_error", &MCEstimate::std_error)
        .def_readonly("n", &MCEstimate::n);

    py::class_<Scenario1Estimates>(m, "Scenario1Estimates")
        .def_readonly("win_prob_a", &Scenario1Estimates::win_prob_a)
        .def_readonly("profit_a", &Scenario1Estimates::profit_a)
        .def_readonly("proposer_revenue", &Scenario1Estimates::proposer_revenue);

    py::class_<Scenario2Estimates>(m, "Scenario2Estimates")
        .def_readonly("win_prob_a", &Scenario2Estimates::win_prob_a)
        .def_readonly("pbs_surplus_a", &Scenario2Estimates::pbs_surplus_a)
        .def_readonly("total_profit_a", &Scenario2Estimates::total_profit_a)
        .def_readonly("ofa_price", &Scenario2Estimates::ofa_price);

    m.def("simulate_scenario1", &simulate_scenario1, py::arg("game"), py::arg("config"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("simulate_scenario2", &simulate_scenario2, py::arg("game"), py::arg("config"),
          py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
    m.def("direct_ofa_valuation", &direct_ofa_valuation, py::arg("game"), py::arg("builder"),
          py::arg("config"), py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());

    py::class_<LogitModel>(m, "LogitModel")
        .def(py::init([](double beta0, double beta1) { return LogitModel{beta0, beta1}; }),
             py::arg("beta0"), py::arg("beta1"))
        .def_readonly("beta0", &LogitModel::beta0)
        .def_readonly("beta1", &LogitModel::beta1);

    py::class_<MNLClassCoef>(m, "MNLClassCoef")
        .def(py::init([](std::string label, double beta0, double beta1) {
                 return MNLClassCoef{std::move(label), beta0, beta1};
             }),
             py::arg("label"), py::arg("beta0"), py::arg("beta1"))
        .def_readonly("label", &MNLClassCoef::label)
        .def_readonly("beta0", &MNLClassCoef::beta0)
        .def_readonly("beta1", &MNLClassCoef::beta1);

    py::class_<MNLModel>(m, "MNLModel")
        .def(py::init([](std::vector<MNLClassCoef> classes) {
                 return MNLModel{std::move(classes)};
             }),
             py::arg("classes"))
        .def_readonly("classes", &MNLModel::classes);

    py::class_<Observation>(m, "Observation")
        .def(py::init([](double x, int y) { return Observation{x, y}; }), py::arg("x"),
             py::arg("y"))
        .def_readonly("x", &Observation::x)
        .def_readonly("y", &Observation::y);

    py::class_<LogitFitResult>(m, "LogitFitResult")
        .def_property_readonly("model", [](const LogitFitResult& r) { return r.model; })
        .def_readonly("se_beta0", &LogitFitResult::se_beta0)
        .def_readonly("se_beta1", &LogitFitResult::se_beta1)
        .def_readonly("iterations", &LogitFitResult::iterations);

    m.def("logit_predict", &logit_predict, py::arg("model"), py::arg("x"));
    m.def(
        "logit_fit",
        [](const std::vector<Observation>& data, double tol, int max_iter) {
            return logit_fit(data, tol, max_iter);
        },
        py::arg("data"), py::arg("tol") = 1e-10, py::arg("max_iter") = 100);
    m.def(
        "softmax", [](const std::vector<double>& logits) { return softmax(logits); },
        py::arg("logits"));
    m.def("mnl_predict", &mnl_predict, py::arg("model"), py::arg("x"),
          "Probabilities over model classes plus the implicit reference class (last)");

    py::class_<SyntheticParams>(m, "SyntheticParams")
        .def(py::init([](double kappa_a, double kappa_b, double v_t, ValueDistribution vol,
                         std::uint64_t n, std::uint64_t seed) {
                 return SyntheticParams{kappa_a, kappa_b, v_t, std::move(vol), n, seed};
             }),
             py::arg("kappa_a"), py::arg("kappa_b"), py::arg("v_t"), py::arg("volatility_dist"),
             py::arg("n"), py::arg("seed"))
        .def_readonly("kappa_a", &SyntheticParams::kappa_a)
        .def_readonly("kappa_b", &SyntheticParams::kappa_b)
        .def_readonly("v_t", &SyntheticParams::v_t)
        .def_readonly("n", &SyntheticParams::n)
        .def_readonly("seed", &SyntheticParams::seed);

    m.def("generate_synthetic", &generate_synthetic, py::arg("params"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return std::tuple{code, out.str(), err.str()};
        },
        py::arg("args"), "Run a CLI subcommand; returns (exit_code, stdout, stderr)");

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
