#pragma once

#include <limits>
#include <random>
#include <string>

namespace pbsgame {

enum class DistFamily { exponential };

// Distribution of a builder's top-of-block arbitrage value. Support is the
// nonnegative reals: cdf(v) = 0 for every v < 0 regardless of family.
// Default-constructs as Exponential(1).
class ValueDistribution {
public:
    ValueDistribution();

    double cdf(double v) const;
    double pdf(double v) const;

    // Inverse CDF, defined for q in [0, 1).
    double quantile(double q) const;

    // Point beyond which the upper tail mass is at most 1e-10. Integrals over
    // the full support are truncated here.
    double support_hint() const { return support_hint_; }

    DistFamily family() const { return family_; }
    double rate() const { return rate_; }

    // Inverse-CDF draw from a caller-owned uniform in [0, 1).
    double sample_from_uniform(double u) const;

    // Inverse-CDF draw from a caller-owned generator.
    template <class Urbg>
    double sample(Urbg& gen) const {
        return sample_from_uniform(std::generate_canonical<double, 53>(gen));
    }

private:
    friend ValueDistribution make_exponential(double rate);

    DistFamily family_ = DistFamily::exponential;
    double rate_ = 1.0;
    double support_hint_ = 0.0;
};

ValueDistribution make_exponential(double rate);

// Weak first-order stochastic dominance of f over g, checked on a uniform
// grid over [0, max of the support hints]: f.cdf <= g.cdf + 1e-12 everywhere.
bool fosd_dominates(const ValueDistribution& f, const ValueDistribution& g,
                    int grid_points = 10000);

// Config form: {"family": "exponential", "rate": <number>}.
ValueDistribution distribution_from_json(const std::string& text);
std::string distribution_to_json(const ValueDistribution& dist);

}  // namespace pbsgame
