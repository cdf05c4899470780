#include "pbsgame/closed_form.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace pbsgame {

namespace {

// Valid at lambda_a == lambda_b too; every expression below is continuous
// there, which is what the sweep's boundary row relies on.
ClosedFormReport evaluate(const ExpGameParams& p) {
    const double la = p.lambda_a;
    const double lb = p.lambda_b;
    const double ea = -std::expm1(-p.v_t * la);  // 1 - exp(-v_t * lambda_a)
    const double eb = -std::expm1(-p.v_t * lb);
    const double numer = la * eb + lb * ea;
    const double sum = la + lb;

    ClosedFormReport r;
    r.v_ta = numer / (la * sum);
    r.v_tb = numer / (lb * sum);
    r.win_s1 = lb / sum;
    r.win_s2 = 1.0 - (1.0 - eb) * la / sum;
    r.profit_s1 = lb / (la * sum);
    r.profit_s2 = (lb - la) * numer / (la * lb * sum) + (lb + la * eb) / (la * sum);
    r.profit_gap = (lb - la) * numer / (la * lb * sum) + eb / sum;
    return r;
}

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void ExpGameParams::validate() const {
    if (!std::isfinite(lambda_a) || lambda_a <= 0.0 || !std::isfinite(lambda_b) || lambda_b <= 0.0) {
        throw std::invalid_argument("rates must be finite and > 0");
    }
    if (!std::isfinite(v_t) || v_t < 0.0) {
        throw std::invalid_argument("v_t must be finite and nonnegative");
    }
}

void ExpGameParams::validate_ordering() const {
    validate();
    if (lambda_a >= lambda_b) {
        throw std::invalid_argument(
            "builder A must be advantaged: lambda_a < lambda_b is required");
    }
}

ClosedFormReport exp_closed_forms(const ExpGameParams& params) {
    params.validate_ordering();
    return evaluate(params);
}

std::vector<SweepRow> sweep_comparative_statics(double v_t, double rate_sum,
                                                std::span<const double> ratios) {
    if (!std::isfinite(v_t) || v_t < 0.0) throw std::invalid_argument("v_t must be finite and >= 0");
    if (!std::isfinite(rate_sum) || rate_sum <= 0.0) {
        throw std::invalid_argument("rate_sum must be finite and > 0");
    }

    std::vector<SweepRow> rows;
    rows.reserve(ratios.size());
    for (double ratio : ratios) {
        if (!std::isfinite(ratio) || ratio <= 0.0 || ratio > 0.5) {
            throw std::invalid_argument("sweep ratios must lie in (0, 0.5]");
        }
        SweepRow row;
        row.ratio = ratio;
        row.boundary = ratio == 0.5;
        const ExpGameParams p{ratio * rate_sum, (1.0 - ratio) * rate_sum, v_t};
        p.validate();
        row.report = evaluate(p);
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
    std::string csv = "ratio,win_s1,win_s2,profit_s1,profit_s2,v_ta,v_tb\n";
    for (const SweepRow& row : rows) {
        const ClosedFormReport& r = row.report;
        csv += full_precision(row.ratio);
        for (double v : {r.win_s1, r.win_s2, r.profit_s1, r.profit_s2, r.v_ta, r.v_tb}) {
            csv += ',';
            csv += full_precision(v);
        }
        csv += '\n';
    }
    return csv;
}

}  // namespace pbsgame
