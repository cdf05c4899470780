#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "pbsgame/types.hpp"

namespace pbsgame {

// Complete-information instance: realized top-of-block values for both
// builders plus the block-body transaction value (the searcher tip).
struct DeterministicGame {
    double v_a = 0.0;
    double v_b = 0.0;
    double v_t = 0.0;

    void validate() const;
};

struct GameOutcome {
    Builder block_winner = Builder::A;
    std::optional<Builder> ofa_winner;  // empty when no OFA ran (scenario 1)
    double ofa_price = 0.0;
    double pbs_price = 0.0;
    double total_price = 0.0;  // ofa_price + pbs_price
    double surplus_a = 0.0;
    double surplus_b = 0.0;
    double proposer_revenue = 0.0;
    double ofa_revenue = 0.0;
};

// Scenario 1: both builders hold the body transaction; a single second-price
// block auction over v_T + v_x. Ties go to A.
GameOutcome solve_scenario1(const DeterministicGame& game);

// Scenario 2: OFA for the body transaction, then the block auction. The
// higher-value builder wins both; the OFA clears at the loser's downstream
// surplus (zero when the loser cannot use the transaction to win anyway).
GameOutcome solve_scenario2(const DeterministicGame& game);

struct ClockResult {
    std::size_t winner = 0;
    double price = 0.0;
};

// Ascending clock over the grid {0, tick, 2*tick, ...}: a bidder stays while
// the clock is at most their value and exits on the first price above it.
// Returns the last bidder standing (ties to the lowest index) and the final
// price the last exiting rival accepted, which is within one tick of the
// second-highest value. Event-driven, so large value/tick ratios stay cheap.
ClockResult clock_auction(std::span<const double> values, double tick);

}  // namespace pbsgame
