#include "pbsgame/monte_carlo.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "pbsgame/deterministic_game.hpp"
#include "pbsgame/rng.hpp"

namespace pbsgame {

namespace {

// Merging is an associative sum of (count, sum, sum of squares), so partials
// can be produced on any thread and folded in chunk order.
struct Accumulator {
    std::uint64_t count = 0;
    double sum = 0.0;
    double sumsq = 0.0;

    void add(double x) {
        ++count;
        sum += x;
        sumsq += x * x;
    }

    void merge(const Accumulator& other) {
        count += other.count;
        sum += other.sum;
        sumsq += other.sumsq;
    }

    MCEstimate estimate() const {
        MCEstimate e;
        e.n = count;
        if (count == 0) return e;
        e.mean = sum / static_cast<double>(count);
        if (count > 1) {
            const double nf = static_cast<double>(count);
            const double var = std::max(0.0, (sumsq - nf * e.mean * e.mean) / (nf - 1.0));
            e.std_error = std::sqrt(var / nf);
        }
        return e;
    }
};

unsigned resolve_threads(unsigned requested, std::uint64_t n_chunks) {
    unsigned t = requested != 0 ? requested : std::thread::hardware_concurrency();
    if (t == 0) t = 1;
    return static_cast<unsigned>(std::min<std::uint64_t>(t, n_chunks));
}

// draw(rng) -> array<double, K> of per-sample metric values.
template <std::size_t K, class DrawFn>
std::array<Accumulator, K> run_chunked(const MCConfig& cfg, unsigned threads, DrawFn&& draw) {
    const std::uint64_t n_chunks = (cfg.n_samples + cfg.chunk_size - 1) / cfg.chunk_size;
    std::vector<std::array<Accumulator, K>> partials(n_chunks);

    auto run_chunk = [&](std::uint64_t c) {
        SplitMix64 rng(cfg.seed, c);
        const std::uint64_t lo = c * cfg.chunk_size;
        const std::uint64_t hi = std::min(cfg.n_samples, lo + cfg.chunk_size);
        auto& acc = partials[c];
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::array<double, K> vals = draw(rng);
            for (std::size_t k = 0; k < K; ++k) acc[k].add(vals[k]);
        }
    };

    const unsigned n_threads = resolve_threads(threads, n_chunks);
    if (n_threads <= 1) {
        for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
                    run_chunk(c);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    std::array<Accumulator, K> total;
    for (const auto& p : partials) {
        for (std::size_t k = 0; k < K; ++k) total[k].merge(p[k]);
    }
    return total;
}

}  // namespace

void MCConfig::validate() const {
    if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
    if (chunk_size < 1) throw std::invalid_argument("chunk_size must be at least 1");
}

Scenario1Estimates simulate_scenario1(const StochasticGame& game, const MCConfig& cfg,
                                      unsigned threads) {
    game.validate();
    cfg.validate();
    const auto acc = run_chunked<3>(cfg, threads, [&](SplitMix64& rng) {
        const double v_a = game.dist_a.sample_from_uniform(rng.next_uniform());
        const double v_b = game.dist_b.sample_from_uniform(rng.next_uniform());
        const GameOutcome out = solve_scenario1({v_a, v_b, game.v_t});
        return std::array<double, 3>{out.block_winner == Builder::A ? 1.0 : 0.0, out.surplus_a,
                                     out.pbs_price};
    });
    return {acc[0].estimate(), acc[1].estimate(), acc[2].estimate()};
}

Scenario2Estimates simulate_scenario2(const StochasticGame& game, const MCConfig& cfg,
                                      unsigned threads) {
    game.validate();
    cfg.validate();
    require_fosd_ordering(game);
    // Builders bid in the OFA before observing values, so the price A pays is
    // the ex-ante valuation of B, a single number across draws.
    const double ofa_price = ofa_valuation(game, Builder::B).value;

    const auto acc = run_chunked<2>(cfg, threads, [&](SplitMix64& rng) {
        const double v_a = game.dist_a.sample_from_uniform(rng.next_uniform());
        const double v_b = game.dist_b.sample_from_uniform(rng.next_uniform());
        const double win = v_a + game.v_t > v_b ? 1.0 : 0.0;
        const double surplus = std::max(v_a + game.v_t - v_b, 0.0);
        return std::array<double, 2>{win, surplus};
    });

    Scenario2Estimates est;
    est.win_prob_a = acc[0].estimate();
    est.pbs_surplus_a = acc[1].estimate();
    est.total_profit_a = est.pbs_surplus_a;
    est.total_profit_a.mean -= ofa_price;  // constant shift leaves the SE alone
    est.ofa_price = ofa_price;
    return est;
}

MCEstimate direct_ofa_valuation(const StochasticGame& game, Builder builder, const MCConfig& cfg,
                                unsigned threads) {
    game.validate();
    cfg.validate();
    const ValueDistribution& own = builder == Builder::A ? game.dist_a : game.dist_b;
    const ValueDistribution& opp = builder == Builder::A ? game.dist_b : game.dist_a;

    const auto acc = run_chunked<1>(cfg, threads, [&](SplitMix64& rng) {
        const double v_own = own.sample_from_uniform(rng.next_uniform());
        const double v_opp = opp.sample_from_uniform(rng.next_uniform());
        const double with_tx = std::max(v_own + game.v_t - v_opp, 0.0);
        const double without_tx = std::max(v_own - game.v_t - v_opp, 0.0);
        return std::array<double, 1>{with_tx - without_tx};
    });
    return acc[0].estimate();
}

}  // namespace pbsgame
