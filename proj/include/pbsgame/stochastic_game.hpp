#pragma once

#include "pbsgame/distribution.hpp"
#include "pbsgame/types.hpp"

namespace pbsgame {

// Incomplete-information game: builders learn their top-of-block value only
// after the OFA, so OFA bids price the distributions. Draws are independent.
struct StochasticGame {
    ValueDistribution dist_a;
    ValueDistribution dist_b;
    double v_t = 0.0;

    void validate() const;
};

struct OfaValuation {
    double value = 0.0;
    double error = 0.0;  // quadrature error bound
};

struct OfaValuationReport {
    double v_ta = 0.0;
    double v_tb = 0.0;
    double err_ta = 0.0;
    double err_tb = 0.0;
};

struct ScenarioComparison {
    double win_prob_s1 = 0.0;
    double win_prob_s2 = 0.0;
    double profit_a_s1 = 0.0;
    double profit_a_s2 = 0.0;
    double v_ta = 0.0;
    double v_tb = 0.0;
};

// Probability that a builder with realized value v wins the block auction,
// given the OFA outcome: opponent.cdf(v + v_t) after winning the OFA,
// opponent.cdf(v - v_t) after losing it (zero below the support).
double interim_win_prob(const ValueDistribution& opponent, double v, double v_t, bool won_ofa);

// A builder's value for the transaction in the OFA: the gap between its
// ex-ante block-auction surplus with and without the transaction,
//   integral over own values of integral_0^{v_own} [F_opp(v+v_t) - F_opp(v-v_t)] dv.
// Nested adaptive quadrature, inner pass 10x tighter than the outer.
OfaValuation ofa_valuation(const StochasticGame& game, Builder builder);
OfaValuationReport ofa_valuation_report(const StochasticGame& game);

// Small-v_t approximation 2*v_t * integral of F_opp * f_own.
double taylor_ofa_valuation(const StochasticGame& game, Builder builder);

// Probability that builder A wins the block. Scenario 2 presumes A wins the
// OFA, so it requires the FOSD ordering of dist_a over dist_b.
double win_probability(const StochasticGame& game, Scenario scenario);

// Builder A's total expected profit. Scenario 2 adds the OFA margin
// (v_ta - v_tb) to the shifted block-auction surplus.
double expected_profit(const StochasticGame& game, Scenario scenario);

ScenarioComparison compare_scenarios(const StochasticGame& game);

// Throws std::invalid_argument unless dist_a weakly FOSD-dominates dist_b.
void require_fosd_ordering(const StochasticGame& game);

}  // namespace pbsgame
