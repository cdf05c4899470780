#include "pbsgame/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace pbsgame {

namespace {
constexpr double kTailMass = 1e-10;
}

ValueDistribution::ValueDistribution() { support_hint_ = quantile(1.0 - kTailMass); }

ValueDistribution make_exponential(double rate) {
    if (!std::isfinite(rate) || rate <= 0.0) {
        throw std::invalid_argument("exponential rate must be finite and > 0");
    }
    ValueDistribution d;
    d.family_ = DistFamily::exponential;
    d.rate_ = rate;
    d.support_hint_ = d.quantile(1.0 - kTailMass);
    return d;
}

double ValueDistribution::cdf(double v) const {
    if (v < 0.0) return 0.0;
    return -std::expm1(-rate_ * v);
}

double ValueDistribution::pdf(double v) const {
    if (v < 0.0) return 0.0;
    return rate_ * std::exp(-rate_ * v);
}

double ValueDistribution::quantile(double q) const {
    if (!(q >= 0.0 && q < 1.0)) {
        throw std::invalid_argument("quantile requires q in [0, 1)");
    }
    return -std::log1p(-q) / rate_;
}

double ValueDistribution::sample_from_uniform(double u) const {
    if (!(u >= 0.0 && u < 1.0)) {
        throw std::invalid_argument("uniform draw must lie in [0, 1)");
    }
    return quantile(u);
}

bool fosd_dominates(const ValueDistribution& f, const ValueDistribution& g, int grid_points) {
    if (grid_points < 2) throw std::invalid_argument("fosd_dominates needs at least 2 grid points");
    const double hi = std::max(f.support_hint(), g.support_hint());
    for (int i = 0; i < grid_points; ++i) {
        const double v = hi * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        if (f.cdf(v) > g.cdf(v) + 1e-12) return false;
    }
    return true;
}

ValueDistribution distribution_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("bad distribution config: ") + e.what());
    }
    if (!j.is_object() || !j.contains("family")) {
        throw std::invalid_argument("distribution config needs a \"family\" field");
    }
    const std::string family = j.at("family").get<std::string>();
    if (family == "exponential") {
        if (!j.contains("rate") || !j.at("rate").is_number()) {
            throw std::invalid_argument("exponential config needs a numeric \"rate\"");
        }
        return make_exponential(j.at("rate").get<double>());
    }
    throw std::invalid_argument("unknown distribution family: " + family);
}

std::string distribution_to_json(const ValueDistribution& dist) {
    nlohmann::json j;
    j["family"] = "exponential";
    j["rate"] = dist.rate();
    return j.dump();
}

}  // namespace pbsgame
