#pragma once

#include <cstdint>

#include "pbsgame/stochastic_game.hpp"
#include "pbsgame/types.hpp"

namespace pbsgame {

// Identity of the pseudo-random scheme, echoed in serialized results.
inline constexpr const char* kRngScheme = "splitmix64";

struct MCConfig {
    std::uint64_t n_samples = 1;
    std::uint64_t seed = 0;
    std::uint64_t chunk_size = 1u << 16;  // samples per generator stream

    void validate() const;
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample standard deviation / sqrt(n)
    std::uint64_t n = 0;
};

struct Scenario1Estimates {
    MCEstimate win_prob_a;
    MCEstimate profit_a;
    MCEstimate proposer_revenue;
};

struct Scenario2Estimates {
    MCEstimate win_prob_a;
    MCEstimate pbs_surplus_a;   // mean of (v_a + v_t - v_b)^+
    MCEstimate total_profit_a;  // pbs_surplus_a minus the OFA price paid
    double ofa_price = 0.0;     // ex-ante v_tb, paid once by A in every draw
};

// Sample-level replay of each scenario. Chunk c of samples always comes from
// stream (seed, c) and partial results merge in chunk order, so estimates are
// bit-identical for a fixed config regardless of `threads` (0 = hardware).
Scenario1Estimates simulate_scenario1(const StochasticGame& game, const MCConfig& cfg,
                                      unsigned threads = 0);

// Builder A holds the transaction in every draw (it wins the OFA at the
// ex-ante price v_tb) and wins the block iff v_a + v_t > v_b, paying v_b.
Scenario2Estimates simulate_scenario2(const StochasticGame& game, const MCConfig& cfg,
                                      unsigned threads = 0);

// Direct-expectation OFA valuation: mean of
// (v_own + v_t - v_opp)^+ - (v_own - v_t - v_opp)^+ over realized draws.
// Exceeds the interim formula by the constant integral_0^{v_t} F_opp(u) du.
MCEstimate direct_ofa_valuation(const StochasticGame& game, Builder builder, const MCConfig& cfg,
                                unsigned threads = 0);

}  // namespace pbsgame
