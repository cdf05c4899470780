#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pbsgame/closed_form.hpp"
#include "pbsgame/deterministic_game.hpp"
#include "pbsgame/logit.hpp"
#include "pbsgame/monte_carlo.hpp"
#include "pbsgame/stochastic_game.hpp"
#include "pbsgame/types.hpp"

namespace pbsgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

// Dispatches one subcommand; `args` excludes the program name. Results go to
// `out` (or the --out path), diagnostics to `err`. The CLI layer only parses
// and serializes; all arithmetic lives in the modules it calls.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Observation CSV with header block_number,builder,log10_price_change_abs,is_hft.
// Schema violations name the offending column; bad cells name the row.
std::vector<Observation> ingest_csv(const std::string& path);
std::string observations_to_csv(std::span<const Observation> observations);

// "%.15g"
std::string format_number(double v);

std::string to_json(const GameOutcome& outcome, Scenario scenario);
std::string to_json(const OfaValuationReport& report);
std::string to_json(const ScenarioComparison& comparison);
std::string to_json(const MCEstimate& estimate, const std::string& metric, std::uint64_t seed);
std::string to_json(const Scenario1Estimates& estimates, std::uint64_t seed);
std::string to_json(const Scenario2Estimates& estimates, std::uint64_t seed);
std::string direct_ofa_to_json(const MCEstimate& estimate, Builder builder, std::uint64_t seed);
std::string to_json(const LogitFitResult& fit, std::size_t n_observations);
std::string probability_to_json(double probability);
std::string mnl_prediction_to_json(const MNLModel& model, double x,
                                   std::span<const double> probabilities);

}  // namespace pbsgame::cli
