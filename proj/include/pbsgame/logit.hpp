#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pbsgame/distribution.hpp"

namespace pbsgame {

// Binary logistic model over a single predictor: the absolute log10 price
// change in the 12 seconds before the block.
struct LogitModel {
    double beta0 = 0.0;  // intercept, log-odds units
    double beta1 = 0.0;  // slope per unit of predictor
};

struct MNLClassCoef {
    std::string label;
    double beta0 = 0.0;
    double beta1 = 0.0;
};

// Multinomial logit with an implicit reference class whose logit is fixed at 0.
struct MNLModel {
    std::vector<MNLClassCoef> classes;
};

struct Observation {
    double x = 0.0;  // absolute log10 price change, >= 0
    int y = 0;       // 1 iff the advantaged (HFT) builder won the block
};

double logit_predict(const LogitModel& model, double x);

struct LogitFitResult {
    LogitModel model;
    double se_beta0 = 0.0;
    double se_beta1 = 0.0;
    int iterations = 0;
};

// Maximum likelihood via iteratively reweighted least squares. Requires both
// outcome classes in the data; throws convergence_error when the iteration
// budget runs out or a coefficient passes 1e6 (perfect separation).
LogitFitResult logit_fit(std::span<const Observation> data, double tol = 1e-10,
                         int max_iter = 100);

// Max-shifted, so large logits stay finite. Output sums to 1.
std::vector<double> softmax(std::span<const double> logits);

// Probabilities over model.classes in order, with the reference class last.
std::vector<double> mnl_predict(const MNLModel& model, double x);

struct SyntheticParams {
    double kappa_a = 1.0;  // builder A's value per unit of volatility
    double kappa_b = 1.0;
    double v_t = 0.0;
    ValueDistribution volatility_dist;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
};

// Draws per-block volatility, gives each builder an exponential top-of-block
// value with mean kappa * sigma, and labels who wins the scenario-1 block
// auction. x = sigma. Deterministic per seed. A zero-volatility draw
// degenerates both values to 0 and the tie rule hands the block to A.
std::vector<Observation> generate_synthetic(const SyntheticParams& params);

}  // namespace pbsgame
