#include "pbsgame/deterministic_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pbsgame {

void DeterministicGame::validate() const {
    for (double v : {v_a, v_b, v_t}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("game values must be finite and nonnegative");
        }
    }
}

GameOutcome solve_scenario1(const DeterministicGame& game) {
    game.validate();
    const bool a_wins = game.v_a >= game.v_b;  // tie to A
    GameOutcome out;
    out.block_winner = a_wins ? Builder::A : Builder::B;
    out.pbs_price = game.v_t + std::min(game.v_a, game.v_b);
    out.total_price = out.pbs_price;
    (a_wins ? out.surplus_a : out.surplus_b) = std::abs(game.v_a - game.v_b);
    out.proposer_revenue = out.pbs_price;
    return out;
}

GameOutcome solve_scenario2(const DeterministicGame& game) {
    game.validate();
    const bool a_wins = game.v_a >= game.v_b;  // tie to A
    const double hi = a_wins ? game.v_a : game.v_b;
    const double lo = a_wins ? game.v_b : game.v_a;

    GameOutcome out;
    out.block_winner = a_wins ? Builder::A : Builder::B;
    out.ofa_winner = out.block_winner;
    out.pbs_price = lo;
    // The loser's OFA bid is its downstream block-auction surplus from holding
    // the transaction: zero when it loses the block regardless.
    out.ofa_price = hi > lo + game.v_t ? 0.0 : lo + game.v_t - hi;
    out.total_price = out.ofa_price + out.pbs_price;
    (a_wins ? out.surplus_a : out.surplus_b) = hi + game.v_t - out.total_price;
    out.proposer_revenue = out.pbs_price;
    out.ofa_revenue = out.ofa_price;
    return out;
}

ClockResult clock_auction(std::span<const double> values, double tick) {
    if (values.size() < 2) throw std::invalid_argument("clock auction needs at least 2 bidders");
    if (!std::isfinite(tick) || tick <= 0.0) throw std::invalid_argument("tick must be finite and > 0");
    for (double v : values) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("bidder values must be finite and nonnegative");
        }
    }

    // A bidder with value v accepts prices up to floor(v / tick) * tick and
    // exits on the next step. The order of exits is the order of these steps;
    // simultaneous exits resolve in favor of the lowest index.
    std::vector<double> last_accepted_step(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        last_accepted_step[i] = std::floor(values[i] / tick);
    }

    std::size_t winner = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (last_accepted_step[i] > last_accepted_step[winner]) winner = i;
    }
    double runner_up_step = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != winner) runner_up_step = std::max(runner_up_step, last_accepted_step[i]);
    }
    return {winner, runner_up_step * tick};
}

}  // namespace pbsgame
