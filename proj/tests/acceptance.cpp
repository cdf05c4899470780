// Acceptance suite: end-to-end checks of every component against its
// independent oracle, one test case per criterion, each printing a
// [PASS]/[FAIL] line.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pbsgame/closed_form.hpp"
#include "pbsgame/deterministic_game.hpp"
#include "pbsgame/logit.hpp"
#include "pbsgame/monte_carlo.hpp"
#include "pbsgame/quadrature.hpp"
#include "pbsgame/rng.hpp"
#include "pbsgame/stochastic_game.hpp"

using namespace pbsgame;

namespace {

struct Criterion {
    std::string name;
    bool ok = true;

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void check(bool condition, const std::string& detail) {
        ok = ok && condition;
        CHECK_MESSAGE(condition, name << ": " << detail);
    }

    ~Criterion() {
        if (std::uncaught_exceptions() > 0) ok = false;
        std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    }
};

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

bool close_rel(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::max(std::abs(want), 1e-300);
}

StochasticGame exp_game(double rate_a, double rate_b, double v_t) {
    return {make_exponential(rate_a), make_exponential(rate_b), v_t};
}

constexpr double kGridRateA[] = {0.5, 1.0, 2.0};
constexpr double kGridMult[] = {1.5, 2.0, 4.0};
constexpr double kGridVt[] = {0.1, 1.0, 2.0};

using testing::chained_clock_oracle;
using testing::logistic_data;
using testing::random_grid_game;

}  // namespace

TEST_CASE("criterion 1: closed forms match quadrature to 1e-6 across the rate grid") {
    Criterion c("criterion 1: closed forms match quadrature to 1e-6 across the rate grid");
    Timer timer;
    for (double rate_a : kGridRateA) {
        for (double mult : kGridMult) {
            for (double v_t : kGridVt) {
                const ExpGameParams p{rate_a, mult * rate_a, v_t};
                const auto closed = exp_closed_forms(p);
                const auto game = exp_game(p.lambda_a, p.lambda_b, p.v_t);
                const auto cmp = compare_scenarios(game);
                const std::string tag = " at (" + std::to_string(rate_a) + ", " +
                                        std::to_string(mult * rate_a) + ", " + std::to_string(v_t) +
                                        ")";
                c.check(close_rel(cmp.v_ta, closed.v_ta, 1e-6), "v_ta" + tag);
                c.check(close_rel(cmp.v_tb, closed.v_tb, 1e-6), "v_tb" + tag);
                c.check(close_rel(cmp.win_prob_s1, closed.win_s1, 1e-6), "win_s1" + tag);
                c.check(close_rel(cmp.win_prob_s2, closed.win_s2, 1e-6), "win_s2" + tag);
                c.check(close_rel(cmp.profit_a_s1, closed.profit_s1, 1e-6), "profit_s1" + tag);
                c.check(close_rel(cmp.profit_a_s2, closed.profit_s2, 1e-6), "profit_s2" + tag);
                c.check(close_rel(cmp.profit_a_s2 - cmp.profit_a_s1, closed.profit_gap, 1e-6),
                        "profit_gap" + tag);
            }
        }
    }
    c.check(timer.seconds() < 60.0, "runtime under 60 seconds");
}

TEST_CASE("criterion 2: monte carlo matches closed forms within 4 standard errors") {
    Criterion c("criterion 2: monte carlo matches closed forms within 4 standard errors");
    Timer timer;
    const auto game = exp_game(1.0, 2.0, 1.0);
    const MCConfig cfg{1'000'000, 20230401};

    const auto s1 = simulate_scenario1(game, cfg);
    c.check(std::abs(s1.win_prob_a.mean - 0.6666666666666666) <= 4.0 * s1.win_prob_a.std_error,
            "scenario 1 win probability vs 2/3");
    c.check(std::abs(s1.profit_a.mean - 0.6666666666666666) <= 4.0 * s1.profit_a.std_error,
            "scenario 1 profit vs 2/3");

    const auto s2 = simulate_scenario2(game, cfg);
    c.check(std::abs(s2.win_prob_a.mean - 0.9548882389211291) <= 4.0 * s2.win_prob_a.std_error,
            "scenario 2 win probability vs closed form");

    // pbs-surplus oracle: the interim-formula surplus integral plus the
    // constant integral_0^{v_t} F_b(u) du that realized draws also collect.
    const auto surplus_integral = integrate(
        [&](double v_own) {
            return integrate([&](double v) { return game.dist_b.cdf(v + game.v_t); }, 0.0, v_own,
                             1e-10, 1e-9)
                       .value *
                   game.dist_a.pdf(v_own);
        },
        0.0, game.dist_a.support_hint());
    const auto offset = integrate([&](double u) { return game.dist_b.cdf(u); }, 0.0, game.v_t);
    const double surplus_target = surplus_integral.value + offset.value;
    c.check(close_rel(surplus_target, 1.5225558805394355, 1e-8), "surplus oracle self-check");
    c.check(std::abs(s2.pbs_surplus_a.mean - surplus_target) <= 4.0 * s2.pbs_surplus_a.std_error,
            "scenario 2 pbs surplus vs quadrature oracle");
    c.check(timer.seconds() < 30.0, "runtime under 30 seconds");
}

TEST_CASE("criterion 3: direct minus interim ofa valuation equals the tail integral") {
    Criterion c("criterion 3: direct minus interim ofa valuation equals the tail integral");
    const auto game = exp_game(1.0, 2.0, 1.0);
    const MCConfig cfg{1'000'000, 777};

    const struct {
        Builder builder;
        double opp_rate;
        double expected_offset;
    } cases[] = {{Builder::A, 2.0, 0.5676676416183064}, {Builder::B, 1.0, 0.36787944117144233}};

    for (const auto& cs : cases) {
        const auto direct = direct_ofa_valuation(game, cs.builder, cfg);
        const auto interim = ofa_valuation(game, cs.builder);
        const double antiderivative =
            game.v_t - (-std::expm1(-cs.opp_rate * game.v_t)) / cs.opp_rate;
        c.check(close_rel(antiderivative, cs.expected_offset, 1e-12),
                std::string("offset antiderivative for builder ") + to_string(cs.builder));
        c.check(std::abs(direct.mean - interim.value - antiderivative) <= 4.0 * direct.std_error,
                std::string("offset identity for builder ") + to_string(cs.builder));
    }
}

TEST_CASE("criterion 4: scenario solvers match the chained clock oracle on 1000 games") {
    Criterion c("criterion 4: scenario solvers match the chained clock oracle on 1000 games");
    const double tick = 1e-6;
    SplitMix64 rng(20230501);
    bool winners_exact = true, prices_close = true, s1_ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto g = random_grid_game(rng);

        const auto s1 = solve_scenario1(g);
        const auto clock1 = clock_auction(std::array{g.v_t + g.v_a, g.v_t + g.v_b}, tick);
        s1_ok = s1_ok && s1.block_winner == (clock1.winner == 0 ? Builder::A : Builder::B) &&
                std::abs(s1.pbs_price - clock1.price) <= 2 * tick;

        const auto s2 = solve_scenario2(g);
        const auto oracle = chained_clock_oracle(g, tick);
        winners_exact = winners_exact && s2.block_winner == oracle.block_winner;
        const double s2_surplus = s2.block_winner == Builder::A ? s2.surplus_a : s2.surplus_b;
        prices_close = prices_close && std::abs(s2.total_price - oracle.total_price) <= 2 * tick &&
                       std::abs(s2_surplus - oracle.winner_surplus) <= 2 * tick;
    }
    c.check(s1_ok, "scenario 1 vs single clock auction");
    c.check(winners_exact, "scenario 2 winner identity");
    c.check(prices_close, "scenario 2 prices within two ticks");
}

TEST_CASE("criterion 5: scenario 2 collapses to scenario 1 at v_t = 0") {
    Criterion c("criterion 5: scenario 2 collapses to scenario 1 at v_t = 0");

    SplitMix64 rng(42);
    bool det_ok = true;
    for (int trial = 0; trial < 200; ++trial) {
        auto g = random_grid_game(rng);
        g.v_t = 0.0;
        const auto s1 = solve_scenario1(g);
        const auto s2 = solve_scenario2(g);
        det_ok = det_ok && s1.block_winner == s2.block_winner &&
                 std::abs(s1.pbs_price - s2.pbs_price) <= 1e-8 &&
                 std::abs(s1.surplus_a - s2.surplus_a) <= 1e-8 &&
                 std::abs(s1.total_price - s2.total_price) <= 1e-8;
    }
    c.check(det_ok, "deterministic outputs equal within 1e-8");

    const auto game = exp_game(1.0, 2.0, 0.0);
    c.check(std::abs(win_probability(game, Scenario::ofa) -
                     win_probability(game, Scenario::mempool)) <= 1e-8,
            "quadrature win probabilities equal within 1e-8");
    c.check(std::abs(expected_profit(game, Scenario::ofa) -
                     expected_profit(game, Scenario::mempool)) <= 1e-8,
            "quadrature profits equal within 1e-8");

    // distinct seeds so the comparison is statistical, not draw-for-draw
    const auto mc1 = simulate_scenario1(game, {200'000, 6060});
    const auto mc2 = simulate_scenario2(game, {200'000, 6061});
    const double win_se =
        std::hypot(mc1.win_prob_a.std_error, mc2.win_prob_a.std_error);
    c.check(std::abs(mc1.win_prob_a.mean - mc2.win_prob_a.mean) <= 4.0 * win_se,
            "monte carlo win probabilities within 4 combined standard errors");
    const double profit_se = std::hypot(mc1.profit_a.std_error, mc2.total_profit_a.std_error);
    c.check(std::abs(mc1.profit_a.mean - mc2.total_profit_a.mean) <= 4.0 * profit_se,
            "monte carlo profits within 4 combined standard errors");
}

TEST_CASE("criterion 6: published logit coefficients reproduce the reported probabilities") {
    Criterion c("criterion 6: published logit coefficients reproduce the reported probabilities");
    const LogitModel published{-0.821, 2055.151};
    const struct {
        double x;
        double reported;
    } points[] = {{0.0, 0.306}, {0.001, 0.775}, {0.002, 0.964}};
    for (const auto& pt : points) {
        const double p = logit_predict(published, pt.x);
        c.check(std::round(p * 1000.0) / 1000.0 == pt.reported,
                "probability at x = " + std::to_string(pt.x) + " rounds to " +
                    std::to_string(pt.reported));
    }
}

TEST_CASE("criterion 7: logistic fits recover generating and synthetic-model coefficients") {
    Criterion c("criterion 7: logistic fits recover generating and synthetic-model coefficients");

    const LogitModel truth{-0.8, 2000.0};
    int recovered = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto fit = logit_fit(logistic_data(truth, 10'000, 0.003, seed));
        const bool ok = std::abs(fit.model.beta0 - truth.beta0) <= 3.0 * fit.se_beta0 &&
                        std::abs(fit.model.beta1 - truth.beta1) <= 3.0 * fit.se_beta1;
        recovered += ok ? 1 : 0;
    }
    c.check(recovered >= 95, "coefficient recovery in " + std::to_string(recovered) +
                                 "/100 replications (needs >= 95)");

    SyntheticParams params;
    params.kappa_a = 2.0;
    params.kappa_b = 1.0;
    params.v_t = 1.0;
    params.volatility_dist = make_exponential(1.0);
    params.n = 100'000;
    params.seed = 20230601;
    const auto fit = logit_fit(generate_synthetic(params));
    const double z = fit.model.beta1 / fit.se_beta1;
    c.check(fit.model.beta1 > 0.0 && z > 3.0,
            "synthetic-model slope positive with z > 3 (got beta1 = " +
                std::to_string(fit.model.beta1) + ", z = " + std::to_string(z) + ")");
}

TEST_CASE("criterion 8: the sweep reproduces the comparative statics ordering") {
    Criterion c("criterion 8: the sweep reproduces the comparative statics ordering");
    std::vector<double> ratios;
    for (int i = 1; i <= 10; ++i) ratios.push_back(0.05 * i);
    const auto rows = sweep_comparative_statics(1.0, 2.0, ratios);
    c.check(rows.size() == ratios.size(), "one row per grid point");

    bool ordered = true;
    for (const auto& row : rows) {
        ordered = ordered && row.report.win_s2 >= row.report.win_s1 &&
                  row.report.profit_s2 >= row.report.profit_s1;
    }
    c.check(ordered, "win_s2 >= win_s1 and profit_s2 >= profit_s1 at every ratio");

    const auto& symmetric = rows.back();
    c.check(symmetric.boundary, "the 0.5 endpoint is flagged as the boundary row");
    c.check(std::abs(symmetric.report.win_s1 - 0.5) <= 1e-6, "win_s1 = 0.5 at equal rates");
    c.check(std::abs(symmetric.report.win_s2 - 0.8160602794142788) <= 1e-6,
            "win_s2 jumps to 1 - exp(-1)/2 at equal rates");
}

TEST_CASE("criterion 9: the taylor approximation holds at v_t = 1e-4 across the grid") {
    Criterion c("criterion 9: the taylor approximation holds at v_t = 1e-4 across the grid");
    for (double rate_a : kGridRateA) {
        for (double mult : kGridMult) {
            const auto game = exp_game(rate_a, mult * rate_a, 1e-4);
            const double v_ta = ofa_valuation(game, Builder::A).value;
            const double v_tb = ofa_valuation(game, Builder::B).value;
            const double taylor = taylor_ofa_valuation(game, Builder::A);
            const std::string tag =
                " at rates (" + std::to_string(rate_a) + ", " + std::to_string(mult * rate_a) + ")";
            c.check(std::abs(v_ta - taylor) <= 0.01 * taylor, "taylor agreement" + tag);
            c.check(v_ta >= v_tb, "v_ta >= v_tb" + tag);
        }
    }
}
