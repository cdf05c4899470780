#pragma once

#include <span>
#include <string>
#include <vector>

namespace pbsgame {

// Exponential-rates instance of the stochastic game. The FOSD ordering of
// builder A over builder B is equivalent to lambda_a < lambda_b.
struct ExpGameParams {
    double lambda_a = 0.0;
    double lambda_b = 0.0;
    double v_t = 0.0;

    void validate() const;          // positivity / finiteness only
    void validate_ordering() const;  // additionally lambda_a < lambda_b
};

struct ClosedFormReport {
    double v_ta = 0.0;
    double v_tb = 0.0;
    double win_s1 = 0.0;
    double win_s2 = 0.0;
    double profit_s1 = 0.0;
    double profit_s2 = 0.0;
    double profit_gap = 0.0;  // profit_s2 - profit_s1
};

// Exact closed forms for the exponential case. Rejects lambda_a >= lambda_b.
ClosedFormReport exp_closed_forms(const ExpGameParams& params);

struct SweepRow {
    double ratio = 0.0;  // lambda_a / (lambda_a + lambda_b)
    ClosedFormReport report;
    bool boundary = false;  // ratio == 0.5: symmetric rates, evaluated as the limit
};

// Comparative statics over the builder-advantage ratio, holding the rate sum
// fixed: lambda_a = ratio * rate_sum, lambda_b = (1 - ratio) * rate_sum.
// Ratios must lie in (0, 0.5]; the 0.5 endpoint is evaluated as the limit row
// and flagged. Output rows follow grid order.
std::vector<SweepRow> sweep_comparative_statics(double v_t, double rate_sum,
                                                std::span<const double> ratios);

// CSV with header ratio,win_s1,win_s2,profit_s1,profit_s2,v_ta,v_tb and one
// full-precision row per grid point.
std::string sweep_to_csv(std::span<const SweepRow> rows);

}  // namespace pbsgame
