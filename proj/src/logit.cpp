#include "pbsgame/logit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pbsgame/deterministic_game.hpp"
#include "pbsgame/rng.hpp"
#include "pbsgame/types.hpp"

namespace pbsgame {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void validate_observations(std::span<const Observation> data) {
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i].x) || data[i].x < 0.0) {
            throw std::invalid_argument("observation " + std::to_string(i) +
                                        ": x must be finite and nonnegative");
        }
        if (data[i].y != 0 && data[i].y != 1) {
            throw std::invalid_argument("observation " + std::to_string(i) + ": y must be 0 or 1");
        }
    }
}

}  // namespace

double logit_predict(const LogitModel& model, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("predictor must be finite");
    if (!std::isfinite(model.beta0) || !std::isfinite(model.beta1)) {
        throw std::invalid_argument("model coefficients must be finite");
    }
    return sigmoid(model.beta0 + model.beta1 * x);
}

LogitFitResult logit_fit(std::span<const Observation> data, double tol, int max_iter) {
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    validate_observations(data);

    std::size_t ones = 0;
    for (const auto& obs : data) ones += obs.y;
    if (ones == 0 || ones == data.size()) {
        throw std::invalid_argument(
            "degenerate data: both outcome classes are required (constant y leaves the "
            "likelihood unbounded)");
    }

    double b0 = 0.0, b1 = 0.0;
    // Weighted normal equations of the 2-parameter IRLS step; with the
    // canonical link this is exactly Newton on the log-likelihood.
    double s_w = 0.0, s_wx = 0.0, s_wxx = 0.0;
    auto information = [&] {
        s_w = s_wx = s_wxx = 0.0;
        double g0 = 0.0, g1 = 0.0;
        for (const auto& obs : data) {
            const double mu = sigmoid(b0 + b1 * obs.x);
            const double w = mu * (1.0 - mu);
            s_w += w;
            s_wx += w * obs.x;
            s_wxx += w * obs.x * obs.x;
            g0 += obs.y - mu;
            g1 += (obs.y - mu) * obs.x;
        }
        return std::pair{g0, g1};
    };

    for (int iter = 1; iter <= max_iter; ++iter) {
        const auto [g0, g1] = information();
        const double det = s_w * s_wxx - s_wx * s_wx;
        if (!(det > 0.0) || !std::isfinite(det)) {
            throw convergence_error("information matrix is singular (degenerate predictor)");
        }
        const double d0 = (s_wxx * g0 - s_wx * g1) / det;
        const double d1 = (s_w * g1 - s_wx * g0) / det;
        b0 += d0;
        b1 += d1;
        if (std::abs(b0) > 1e6 || std::abs(b1) > 1e6) {
            throw convergence_error(
                "perfect separation suspected: coefficient magnitude exceeded 1e6 at iteration " +
                std::to_string(iter));
        }
        if (std::max(std::abs(d0), std::abs(d1)) < tol) {
            information();  // refresh the information matrix at the final coefficients
            const double det_final = s_w * s_wxx - s_wx * s_wx;
            LogitFitResult result;
            result.model = {b0, b1};
            result.se_beta0 = std::sqrt(s_wxx / det_final);
            result.se_beta1 = std::sqrt(s_w / det_final);
            result.iterations = iter;
            return result;
        }
    }
    throw convergence_error("IRLS did not converge in " + std::to_string(max_iter) + " iterations");
}

std::vector<double> softmax(std::span<const double> logits) {
    double top = 0.0;
    for (double l : logits) {
        if (!std::isfinite(l)) throw std::invalid_argument("logits must be finite");
        top = std::max(top, l);
    }
    std::vector<double> probs(logits.size());
    double total = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - top);
        total += probs[i];
    }
    for (double& p : probs) p /= total;
    return probs;
}

std::vector<double> mnl_predict(const MNLModel& model, double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("predictor must be finite");
    std::set<std::string> seen;
    std::vector<double> logits;
    logits.reserve(model.classes.size() + 1);
    for (const auto& cls : model.classes) {
        if (!seen.insert(cls.label).second) {
            throw std::invalid_argument("duplicate class label: " + cls.label);
        }
        logits.push_back(cls.beta0 + cls.beta1 * x);
    }
    logits.push_back(0.0);  // reference class
    return softmax(logits);
}

std::vector<Observation> generate_synthetic(const SyntheticParams& params) {
    if (!std::isfinite(params.kappa_a) || params.kappa_a <= 0.0 || !std::isfinite(params.kappa_b) ||
        params.kappa_b <= 0.0) {
        throw std::invalid_argument("kappa scale factors must be finite and > 0");
    }
    if (!std::isfinite(params.v_t) || params.v_t < 0.0) {
        throw std::invalid_argument("v_t must be finite and nonnegative");
    }

    SplitMix64 rng(params.seed);
    std::vector<Observation> data;
    data.reserve(params.n);
    for (std::uint64_t i = 0; i < params.n; ++i) {
        const double sigma = params.volatility_dist.sample_from_uniform(rng.next_uniform());
        const double u_a = rng.next_uniform();
        const double u_b = rng.next_uniform();
        double v_a = 0.0, v_b = 0.0;
        if (sigma > 0.0) {
            // Exponential with rate 1 / (kappa * sigma): mean scales with sigma.
            v_a = -std::log1p(-u_a) * params.kappa_a * sigma;
            v_b = -std::log1p(-u_b) * params.kappa_b * sigma;
        }
        const GameOutcome out = solve_scenario1({v_a, v_b, params.v_t});
        data.push_back({sigma, out.block_winner == Builder::A ? 1 : 0});
    }
    return data;
}

}  // namespace pbsgame
