#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pbsgame/closed_form.hpp"
#include "pbsgame/stochastic_game.hpp"

using namespace pbsgame;

TEST_CASE("closed forms at the reference parameters") {
    const auto r = exp_closed_forms({1.0, 2.0, 1.0});
    CHECK(r.v_ta == doctest::Approx(0.7096352781401675).epsilon(1e-12));
    CHECK(r.v_tb == doctest::Approx(0.35481763907008377).epsilon(1e-12));
    CHECK(r.win_s1 == doctest::Approx(0.6666666666666666).epsilon(1e-12));
    CHECK(r.win_s2 == doctest::Approx(0.9548882389211291).epsilon(1e-12));
    CHECK(r.profit_s1 == doctest::Approx(0.6666666666666666).epsilon(1e-12));
    CHECK(r.profit_s2 == doctest::Approx(1.3097058779912128).epsilon(1e-12));
    CHECK(r.profit_gap == doctest::Approx(0.6430392113245462).epsilon(1e-12));
    CHECK(r.profit_gap == doctest::Approx(r.profit_s2 - r.profit_s1).epsilon(1e-12));
}

TEST_CASE("closed forms collapse without a block-body transaction") {
    const auto r = exp_closed_forms({1.0, 2.0, 0.0});
    CHECK(r.v_ta == 0.0);
    CHECK(r.v_tb == 0.0);
    CHECK(r.win_s2 == doctest::Approx(r.win_s1).epsilon(1e-15));
    CHECK(r.profit_gap == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("small transactions approach the taylor ratio of rates") {
    const auto r = exp_closed_forms({1.0, 2.0, 1e-4});
    CHECK(r.v_ta / r.v_tb == doctest::Approx(2.0).epsilon(1e-2));
}

TEST_CASE("closed forms reject an unordered or invalid instance") {
    CHECK_THROWS_WITH_AS(exp_closed_forms({2.0, 1.0, 1.0}), doctest::Contains("lambda_a < lambda_b"),
                         std::invalid_argument);
    CHECK_THROWS_AS(exp_closed_forms({1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exp_closed_forms({0.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(exp_closed_forms({1.0, 2.0, -1.0}), std::invalid_argument);
}

TEST_CASE("closed forms match nested quadrature across the rate grid") {
    for (double rate_a : {0.5, 1.0, 2.0}) {
        for (double mult : {1.5, 2.0, 4.0}) {
            for (double v_t : {0.1, 1.0, 2.0}) {
                const ExpGameParams p{rate_a, mult * rate_a, v_t};
                const auto closed = exp_closed_forms(p);
                const StochasticGame game{make_exponential(p.lambda_a),
                                          make_exponential(p.lambda_b), p.v_t};
                CHECK(ofa_valuation(game, Builder::A).value ==
                      doctest::Approx(closed.v_ta).epsilon(1e-6));
                CHECK(win_probability(game, Scenario::ofa) ==
                      doctest::Approx(closed.win_s2).epsilon(1e-6));
                CHECK(expected_profit(game, Scenario::ofa) ==
                      doctest::Approx(closed.profit_s2).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("profit gap splits into two nonnegative printed terms") {
    for (double rate_a : {0.5, 1.0, 2.0}) {
        for (double v_t : {0.1, 1.0, 2.0}) {
            const ExpGameParams p{rate_a, 2.5 * rate_a, v_t};
            const auto r = exp_closed_forms(p);
            const double ofa_margin = r.v_ta - r.v_tb;
            const double block_term = -std::expm1(-v_t * p.lambda_b) / (p.lambda_a + p.lambda_b);
            CHECK(ofa_margin >= 0.0);
            CHECK(block_term >= 0.0);
            CHECK(r.profit_gap == doctest::Approx(ofa_margin + block_term).epsilon(1e-12));
            CHECK(r.v_ta > r.v_tb);  // strict whenever lambda_a < lambda_b and v_t > 0
        }
    }
}

TEST_CASE("sweep covers the grid in order and flags the symmetric boundary") {
    const std::vector<double> ratios{0.1, 0.2, 0.3, 0.4, 0.5};
    const auto rows = sweep_comparative_statics(1.0, 2.0, ratios);
    REQUIRE(rows.size() == ratios.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].ratio == ratios[i]);
        CHECK(rows[i].boundary == (ratios[i] == 0.5));
        CHECK(rows[i].report.win_s2 >= rows[i].report.win_s1);
        if (i > 0) CHECK(rows[i].report.win_s1 < rows[i - 1].report.win_s1);
        if (rows[i].ratio < 0.5) CHECK(rows[i].report.win_s2 > rows[i].report.win_s1);
    }
    CHECK(rows.back().report.win_s1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rows.back().report.win_s2 == doctest::Approx(0.8160602794142788).epsilon(1e-12));
}

TEST_CASE("sweep rejects ratios outside the half-open unit interval") {
    const std::vector<double> zero{0.0};
    const std::vector<double> above{0.6};
    CHECK_THROWS_AS(sweep_comparative_statics(1.0, 2.0, zero), std::invalid_argument);
    CHECK_THROWS_AS(sweep_comparative_statics(1.0, 2.0, above), std::invalid_argument);
    CHECK_THROWS_AS(sweep_comparative_statics(1.0, 0.0, std::vector<double>{0.25}),
                    std::invalid_argument);
}

TEST_CASE("sweep csv uses the pinned header and full-precision rows") {
    const auto rows = sweep_comparative_statics(1.0, 2.0, std::vector<double>{0.1, 0.25});
    const std::string csv = sweep_to_csv(rows);
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "ratio,win_s1,win_s2,profit_s1,profit_s2,v_ta,v_tb");

    std::size_t n_rows = 0;
    while (std::getline(lines, line)) {
        ++n_rows;
        std::istringstream fields(line);
        std::string field;
        std::vector<double> parsed;
        while (std::getline(fields, field, ',')) parsed.push_back(std::strtod(field.c_str(), nullptr));
        REQUIRE(parsed.size() == 7);
    }
    CHECK(n_rows == rows.size());

    // full precision round trips exactly
    const auto first_row_start = csv.find('\n') + 1;
    const auto first_field = csv.substr(first_row_start, csv.find(',', first_row_start) - first_row_start);
    CHECK(std::strtod(first_field.c_str(), nullptr) == 0.1);
}
