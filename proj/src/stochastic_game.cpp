#include "pbsgame/stochastic_game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbsgame/quadrature.hpp"

namespace pbsgame {

namespace {

constexpr double kInnerAbsTol = kQuadAbsTol / 10.0;
constexpr double kInnerRelTol = kQuadRelTol / 10.0;

const ValueDistribution& own_dist(const StochasticGame& g, Builder b) {
    return b == Builder::A ? g.dist_a : g.dist_b;
}
const ValueDistribution& opp_dist(const StochasticGame& g, Builder b) {
    return b == Builder::A ? g.dist_b : g.dist_a;
}

// integral over own values of [ integral_0^{v_own} F_opp(v + shift) dv ],
// the ex-ante block-auction surplus of the transaction holder (shift = v_t)
// or of either builder in scenario 1 (shift = 0).
IntegralResult expected_pbs_surplus(const ValueDistribution& own, const ValueDistribution& opp,
                                    double shift) {
    auto outer = [&](double v_own) {
        const auto inner = integrate([&](double v) { return opp.cdf(v + shift); }, 0.0, v_own,
                                     kInnerAbsTol, kInnerRelTol);
        return inner.value * own.pdf(v_own);
    };
    return integrate(outer, 0.0, own.support_hint(), kQuadAbsTol, kQuadRelTol);
}

}  // namespace

void StochasticGame::validate() const {
    if (!std::isfinite(v_t) || v_t < 0.0) {
        throw std::invalid_argument("v_t must be finite and nonnegative");
    }
}

void require_fosd_ordering(const StochasticGame& game) {
    if (!fosd_dominates(game.dist_a, game.dist_b)) {
        throw std::invalid_argument(
            "scenario 2 requires dist_a to first-order stochastically dominate dist_b "
            "(the advantaged builder must win the OFA)");
    }
}

double interim_win_prob(const ValueDistribution& opponent, double v, double v_t, bool won_ofa) {
    if (!std::isfinite(v) || v < 0.0 || !std::isfinite(v_t) || v_t < 0.0) {
        throw std::invalid_argument("interim_win_prob requires v >= 0 and v_t >= 0");
    }
    return opponent.cdf(won_ofa ? v + v_t : v - v_t);
}

OfaValuation ofa_valuation(const StochasticGame& game, Builder builder) {
    game.validate();
    if (game.v_t == 0.0) return {0.0, 0.0};

    const ValueDistribution& own = own_dist(game, builder);
    const ValueDistribution& opp = opp_dist(game, builder);
    const double v_t = game.v_t;

    double worst_inner_err = 0.0;
    // CDF window mass over [0, v_own], split at v = v_t where F_opp(v - v_t)
    // leaves the flat region below the support.
    auto window_mass = [&](double v_own) {
        auto g = [&](double v) { return opp.cdf(v + v_t) - opp.cdf(v - v_t); };
        const double split = std::min(v_t, v_own);
        auto low = integrate(g, 0.0, split, kInnerAbsTol, kInnerRelTol);
        double total = low.value;
        double err = low.error;
        if (split < v_own) {
            auto high = integrate(g, split, v_own, kInnerAbsTol, kInnerRelTol);
            total += high.value;
            err += high.error;
        }
        worst_inner_err = std::max(worst_inner_err, err);
        return total;
    };

    const auto outer = integrate([&](double v) { return window_mass(v) * own.pdf(v); }, 0.0,
                                 own.support_hint(), kQuadAbsTol, kQuadRelTol);
    // The integrand is nonnegative; negative results are quadrature noise.
    return {std::max(outer.value, 0.0), outer.error + worst_inner_err};
}

OfaValuationReport ofa_valuation_report(const StochasticGame& game) {
    const auto a = ofa_valuation(game, Builder::A);
    const auto b = ofa_valuation(game, Builder::B);
    return {a.value, b.value, a.error, b.error};
}

double taylor_ofa_valuation(const StochasticGame& game, Builder builder) {
    game.validate();
    if (game.v_t == 0.0) return 0.0;
    const ValueDistribution& own = own_dist(game, builder);
    const ValueDistribution& opp = opp_dist(game, builder);
    const auto r = integrate([&](double v) { return opp.cdf(v) * own.pdf(v); }, 0.0,
                             own.support_hint(), kQuadAbsTol, kQuadRelTol);
    return 2.0 * game.v_t * r.value;
}

double win_probability(const StochasticGame& game, Scenario scenario) {
    game.validate();
    const double shift = scenario == Scenario::ofa ? game.v_t : 0.0;
    if (scenario == Scenario::ofa) require_fosd_ordering(game);
    const auto r = integrate([&](double v) { return game.dist_b.cdf(v + shift) * game.dist_a.pdf(v); },
                             0.0, game.dist_a.support_hint(), kQuadAbsTol, kQuadRelTol);
    return std::clamp(r.value, 0.0, 1.0);
}

double expected_profit(const StochasticGame& game, Scenario scenario) {
    game.validate();
    if (scenario == Scenario::mempool) {
        return expected_pbs_surplus(game.dist_a, game.dist_b, 0.0).value;
    }
    require_fosd_ordering(game);
    const auto report = ofa_valuation_report(game);
    const auto surplus = expected_pbs_surplus(game.dist_a, game.dist_b, game.v_t);
    return (report.v_ta - report.v_tb) + surplus.value;
}

ScenarioComparison compare_scenarios(const StochasticGame& game) {
    game.validate();
    require_fosd_ordering(game);
    const auto report = ofa_valuation_report(game);

    ScenarioComparison cmp;
    cmp.v_ta = report.v_ta;
    cmp.v_tb = report.v_tb;
    cmp.win_prob_s1 = win_probability(game, Scenario::mempool);
    cmp.win_prob_s2 = win_probability(game, Scenario::ofa);
    cmp.profit_a_s1 = expected_pbs_surplus(game.dist_a, game.dist_b, 0.0).value;
    cmp.profit_a_s2 =
        (report.v_ta - report.v_tb) + expected_pbs_surplus(game.dist_a, game.dist_b, game.v_t).value;
    return cmp;
}

}  // namespace pbsgame
