#include "pbsgame/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace pbsgame::cli {

namespace {

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double_field(const std::string& text, const std::string& what, std::size_t row) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw std::invalid_argument("row " + std::to_string(row) + ": " + what +
                                    " is not a number, got '" + text + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

// Writes the payload to `path` when given, otherwise to `fallback`.
void emit(const std::string& payload, const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
        fallback << payload;
        if (payload.empty() || payload.back() != '\n') fallback << '\n';
        return;
    }
    std::ofstream file(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    file << payload;
    if (payload.empty() || payload.back() != '\n') file << '\n';
}

std::vector<double> parse_ratio_grid(const std::string& text) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    std::stringstream ss(text);
    std::string part;
    std::vector<double> parts;
    while (std::getline(ss, part, ':')) parts.push_back(std::stod(part));
    if (parts.size() == 1) return {parts[0]};
    if (parts.size() != 3) {
        throw std::invalid_argument("ratio grid must be lo:hi:step (inclusive), got '" + text + "'");
    }
    lo = parts[0];
    hi = parts[1];
    step = parts[2];
    if (!(step > 0.0) || hi < lo) {
        throw std::invalid_argument("ratio grid needs step > 0 and hi >= lo");
    }
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double r = lo + k * step;
        if (r > hi + step * 1e-9) break;
        grid.push_back(std::min(r, hi));
    }
    return grid;
}

MNLModel parse_mnl_model(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("bad MNL model JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("classes") || !j.at("classes").is_array()) {
        throw std::invalid_argument("MNL model JSON needs a \"classes\" array");
    }
    MNLModel model;
    for (const auto& cls : j.at("classes")) {
        if (!cls.contains("label") || !cls.contains("beta0") || !cls.contains("beta1")) {
            throw std::invalid_argument("each MNL class needs label, beta0, beta1");
        }
        model.classes.push_back({cls.at("label").get<std::string>(), cls.at("beta0").get<double>(),
                                 cls.at("beta1").get<double>()});
    }
    return model;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string to_json(const GameOutcome& o, Scenario scenario) {
    std::string j = "{";
    j += "\"scenario\":" + std::to_string(static_cast<int>(scenario));
    j += ",\"block_winner\":\"" + std::string(to_string(o.block_winner)) + "\"";
    j += ",\"ofa_winner\":";
    j += o.ofa_winner ? "\"" + std::string(to_string(*o.ofa_winner)) + "\"" : "null";
    j += ",\"ofa_price\":" + format_number(o.ofa_price);
    j += ",\"pbs_price\":" + format_number(o.pbs_price);
    j += ",\"total_price\":" + format_number(o.total_price);
    j += ",\"surplus_a\":" + format_number(o.surplus_a);
    j += ",\"surplus_b\":" + format_number(o.surplus_b);
    j += ",\"proposer_revenue\":" + format_number(o.proposer_revenue);
    j += ",\"ofa_revenue\":" + format_number(o.ofa_revenue);
    j += "}";
    return j;
}

std::string to_json(const OfaValuationReport& r) {
    return "{\"v_ta\":" + format_number(r.v_ta) + ",\"v_tb\":" + format_number(r.v_tb) +
           ",\"err_ta\":" + format_number(r.err_ta) + ",\"err_tb\":" + format_number(r.err_tb) + "}";
}

std::string to_json(const ScenarioComparison& c) {
    return "{\"win_prob_s1\":" + format_number(c.win_prob_s1) +
           ",\"win_prob_s2\":" + format_number(c.win_prob_s2) +
           ",\"profit_a_s1\":" + format_number(c.profit_a_s1) +
           ",\"profit_a_s2\":" + format_number(c.profit_a_s2) +
           ",\"v_ta\":" + format_number(c.v_ta) + ",\"v_tb\":" + format_number(c.v_tb) + "}";
}

std::string to_json(const MCEstimate& e, const std::string& metric, std::uint64_t seed) {
    return "{\"metric\":" + quote(metric) + ",\"mean\":" + format_number(e.mean) +
           ",\"std_error\":" + format_number(e.std_error) + ",\"n\":" + std::to_string(e.n) +
           ",\"seed\":" + std::to_string(seed) + "}";
}

std::string to_json(const Scenario1Estimates& e, std::uint64_t seed) {
    return std::string("{\"rng\":\"") + kRngScheme + "\",\"scenario\":1,\"results\":[" +
           to_json(e.win_prob_a, "win_prob_a", seed) + "," + to_json(e.profit_a, "profit_a", seed) +
           "," + to_json(e.proposer_revenue, "proposer_revenue", seed) + "]}";
}

std::string to_json(const Scenario2Estimates& e, std::uint64_t seed) {
    return std::string("{\"rng\":\"") + kRngScheme +
           "\",\"scenario\":2,\"ofa_price\":" + format_number(e.ofa_price) + ",\"results\":[" +
           to_json(e.win_prob_a, "win_prob_a", seed) + "," +
           to_json(e.pbs_surplus_a, "pbs_surplus_a", seed) + "," +
           to_json(e.total_profit_a, "total_profit_a", seed) + "]}";
}

std::string direct_ofa_to_json(const MCEstimate& e, Builder builder, std::uint64_t seed) {
    return std::string("{\"rng\":\"") + kRngScheme + "\",\"builder\":\"" + to_string(builder) +
           "\",\"results\":[" + to_json(e, "direct_ofa_valuation", seed) + "]}";
}

std::string to_json(const LogitFitResult& fit, std::size_t n_observations) {
    return "{\"beta0\":" + format_number(fit.model.beta0) +
           ",\"beta1\":" + format_number(fit.model.beta1) +
           ",\"se_beta0\":" + format_number(fit.se_beta0) +
           ",\"se_beta1\":" + format_number(fit.se_beta1) +
           ",\"iterations\":" + std::to_string(fit.iterations) +
           ",\"n_observations\":" + std::to_string(n_observations) + "}";
}

std::string probability_to_json(double probability) {
    return "{\"probability\":" + format_number(probability) + "}";
}

std::string mnl_prediction_to_json(const MNLModel& model, double x,
                                   std::span<const double> probabilities) {
    std::string j = "{\"x\":" + format_number(x) + ",\"probabilities\":[";
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        const std::string label =
            i < model.classes.size() ? model.classes[i].label : std::string("reference");
        if (i > 0) j += ",";
        j += "{\"class\":" + quote(label) + ",\"probability\":" + format_number(probabilities[i]) +
             "}";
    }
    j += "]}";
    return j;
}

std::vector<Observation> ingest_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open data file: " + path);

    static const std::vector<std::string> kSchema = {"block_number", "builder",
                                                     "log10_price_change_abs", "is_hft"};
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("schema mismatch: missing header row");
    const auto header = split_csv_line(line);
    if (header.size() != kSchema.size()) {
        throw std::invalid_argument("schema mismatch: expected " + std::to_string(kSchema.size()) +
                                    " columns, got " + std::to_string(header.size()));
    }
    for (std::size_t i = 0; i < kSchema.size(); ++i) {
        if (header[i] != kSchema[i]) {
            throw std::invalid_argument("schema mismatch: expected column '" + kSchema[i] +
                                        "' at position " + std::to_string(i + 1) + ", got '" +
                                        header[i] + "'");
        }
    }

    std::vector<Observation> observations;
    for (std::size_t row = 2; std::getline(in, line); ++row) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != kSchema.size()) {
            throw std::invalid_argument("row " + std::to_string(row) + ": expected " +
                                        std::to_string(kSchema.size()) + " fields, got " +
                                        std::to_string(fields.size()));
        }
        parse_double_field(fields[0], "block_number", row);
        const double x = parse_double_field(fields[2], "log10_price_change_abs", row);
        if (!std::isfinite(x)) {
            throw std::invalid_argument("row " + std::to_string(row) +
                                        ": log10_price_change_abs must be finite, got '" +
                                        fields[2] + "'");
        }
        if (x < 0.0) {
            throw std::invalid_argument("row " + std::to_string(row) +
                                        ": log10_price_change_abs must be nonnegative");
        }
        if (fields[3] != "0" && fields[3] != "1") {
            throw std::invalid_argument("row " + std::to_string(row) + ": is_hft must be 0 or 1, got '" +
                                        fields[3] + "'");
        }
        observations.push_back({x, fields[3] == "1" ? 1 : 0});
    }
    return observations;
}

std::string observations_to_csv(std::span<const Observation> observations) {
    std::string csv = "block_number,builder,log10_price_change_abs,is_hft\n";
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const Observation& obs = observations[i];
        csv += std::to_string(i + 1);
        csv += obs.y == 1 ? ",A," : ",B,";
        csv += format_full(obs.x);
        csv += obs.y == 1 ? ",1\n" : ",0\n";
    }
    return csv;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solvers and simulators for the two-stage order-flow / block auction game"};
    app.name("pbsgame");
    app.require_subcommand(1);

    // solve-det
    auto* solve = app.add_subcommand("solve-det", "Solve a known-values instance");
    int solve_scenario = 1;
    DeterministicGame det_game;
    std::string solve_out;
    solve->add_option("--scenario", solve_scenario, "1 (shared mempool) or 2 (OFA)")->required();
    solve->add_option("--va", det_game.v_a, "builder A top-of-block value")->required();
    solve->add_option("--vb", det_game.v_b, "builder B top-of-block value")->required();
    solve->add_option("--vt", det_game.v_t, "block-body transaction value")->required();
    solve->add_option("--out", solve_out, "write JSON here instead of stdout");

    // value-ofa
    auto* value = app.add_subcommand("value-ofa", "OFA valuations of both builders");
    std::string value_dist_a, value_dist_b, value_out;
    double value_vt = 0.0;
    value->add_option("--dist-a", value_dist_a, "builder A value distribution (JSON)")->required();
    value->add_option("--dist-b", value_dist_b, "builder B value distribution (JSON)")->required();
    value->add_option("--vt", value_vt, "block-body transaction value")->required();
    value->add_option("--out", value_out, "write JSON here instead of stdout");

    // compare
    auto* compare = app.add_subcommand("compare", "Win probabilities and profits across scenarios");
    std::string cmp_dist_a, cmp_dist_b, cmp_out;
    double cmp_vt = 0.0;
    compare->add_option("--dist-a", cmp_dist_a, "builder A value distribution (JSON)")->required();
    compare->add_option("--dist-b", cmp_dist_b, "builder B value distribution (JSON)")->required();
    compare->add_option("--vt", cmp_vt, "block-body transaction value")->required();
    compare->add_option("--out", cmp_out, "write JSON here instead of stdout");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Comparative statics over the advantage ratio (CSV)");
    double sweep_vt = 1.0, sweep_rate_sum = 2.0;
    std::string sweep_ratios, sweep_out;
    sweep->add_option("--vt", sweep_vt, "block-body transaction value")->required();
    sweep->add_option("--rate-sum", sweep_rate_sum, "lambda_a + lambda_b, held fixed (default 2)");
    sweep->add_option("--ratios", sweep_ratios, "grid lo:hi:step over lambda_a/(lambda_a+lambda_b)")
        ->required();
    sweep->add_option("--out", sweep_out, "write CSV here instead of stdout");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo replay of a scenario");
    int sim_scenario = 1;
    std::string sim_dist_a, sim_dist_b, sim_out;
    double sim_vt = 0.0;
    MCConfig sim_cfg;
    unsigned sim_threads = 0;
    simulate->add_option("--scenario", sim_scenario, "1 or 2")->required();
    simulate->add_option("--dist-a", sim_dist_a, "builder A value distribution (JSON)")->required();
    simulate->add_option("--dist-b", sim_dist_b, "builder B value distribution (JSON)")->required();
    simulate->add_option("--vt", sim_vt, "block-body transaction value")->required();
    simulate->add_option("--n", sim_cfg.n_samples, "number of draws")->required();
    simulate->add_option("--seed", sim_cfg.seed, "generator seed")->required();
    simulate->add_option("--chunk-size", sim_cfg.chunk_size, "samples per generator stream");
    simulate->add_option("--threads", sim_threads, "worker threads (0 = hardware)");
    simulate->add_option("--out", sim_out, "write JSON here instead of stdout");

    // direct-ofa
    auto* direct = app.add_subcommand("direct-ofa", "Direct-expectation OFA valuation (Monte Carlo)");
    std::string dir_dist_a, dir_dist_b, dir_builder = "A", dir_out;
    double dir_vt = 0.0;
    MCConfig dir_cfg;
    unsigned dir_threads = 0;
    direct->add_option("--dist-a", dir_dist_a, "builder A value distribution (JSON)")->required();
    direct->add_option("--dist-b", dir_dist_b, "builder B value distribution (JSON)")->required();
    direct->add_option("--vt", dir_vt, "block-body transaction value")->required();
    direct->add_option("--builder", dir_builder, "A or B")->required();
    direct->add_option("--n", dir_cfg.n_samples, "number of draws")->required();
    direct->add_option("--seed", dir_cfg.seed, "generator seed")->required();
    direct->add_option("--chunk-size", dir_cfg.chunk_size, "samples per generator stream");
    direct->add_option("--threads", dir_threads, "worker threads (0 = hardware)");
    direct->add_option("--out", dir_out, "write JSON here instead of stdout");

    // fit-logit
    auto* fit = app.add_subcommand("fit-logit", "Fit a binary logistic model from observation CSV");
    std::string fit_data, fit_out;
    double fit_tol = 1e-10;
    int fit_max_iter = 100;
    fit->add_option("--data", fit_data, "observation CSV path")->required();
    fit->add_option("--tol", fit_tol, "coefficient-change stopping tolerance");
    fit->add_option("--max-iter", fit_max_iter, "iteration budget");
    fit->add_option("--out", fit_out, "write JSON here instead of stdout");

    // predict-logit
    auto* plogit = app.add_subcommand("predict-logit", "Evaluate a binary logistic model");
    LogitModel plogit_model;
    double plogit_x = 0.0;
    std::string plogit_out;
    plogit->add_option("--b0", plogit_model.beta0, "intercept")->required();
    plogit->add_option("--b1", plogit_model.beta1, "slope")->required();
    plogit->add_option("--x", plogit_x, "absolute log10 price change")->required();
    plogit->add_option("--out", plogit_out, "write JSON here instead of stdout");

    // predict-mnl
    auto* pmnl = app.add_subcommand("predict-mnl", "Evaluate a multinomial logit model");
    std::string pmnl_model_text, pmnl_model_file, pmnl_out;
    double pmnl_x = 0.0;
    pmnl->add_option("--model", pmnl_model_text, "model JSON: {\"classes\":[{label,beta0,beta1}...]}");
    pmnl->add_option("--model-file", pmnl_model_file, "path to model JSON");
    pmnl->add_option("--x", pmnl_x, "absolute log10 price change")->required();
    pmnl->add_option("--out", pmnl_out, "write JSON here instead of stdout");

    // gen-synthetic
    auto* gen = app.add_subcommand("gen-synthetic", "Generate an observation CSV from the game model");
    SyntheticParams gen_params;
    std::string gen_vol_dist, gen_out;
    gen->add_option("--kappa-a", gen_params.kappa_a, "builder A value per unit volatility")->required();
    gen->add_option("--kappa-b", gen_params.kappa_b, "builder B value per unit volatility")->required();
    gen->add_option("--vt", gen_params.v_t, "block-body transaction value")->required();
    gen->add_option("--volatility-dist", gen_vol_dist, "volatility distribution (JSON)")->required();
    gen->add_option("--n", gen_params.n, "number of records")->required();
    gen->add_option("--seed", gen_params.seed, "generator seed")->required();
    gen->add_option("--out", gen_out, "write CSV here (metadata JSON goes to stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);

        if (*solve) {
            const Scenario scenario = scenario_from_int(solve_scenario);
            const GameOutcome outcome =
                scenario == Scenario::mempool ? solve_scenario1(det_game) : solve_scenario2(det_game);
            emit(to_json(outcome, scenario), solve_out, out);
        } else if (*value) {
            const StochasticGame game{distribution_from_json(value_dist_a),
                                      distribution_from_json(value_dist_b), value_vt};
            emit(to_json(ofa_valuation_report(game)), value_out, out);
        } else if (*compare) {
            const StochasticGame game{distribution_from_json(cmp_dist_a),
                                      distribution_from_json(cmp_dist_b), cmp_vt};
            emit(to_json(compare_scenarios(game)), cmp_out, out);
        } else if (*sweep) {
            const auto grid = parse_ratio_grid(sweep_ratios);
            const auto rows = sweep_comparative_statics(sweep_vt, sweep_rate_sum, grid);
            for (const auto& row : rows) {
                if (row.boundary) {
                    err << "note: ratio 0.5 is the symmetric-rates boundary, evaluated as the limit\n";
                }
            }
            emit(sweep_to_csv(rows), sweep_out, out);
        } else if (*simulate) {
            const Scenario scenario = scenario_from_int(sim_scenario);
            const StochasticGame game{distribution_from_json(sim_dist_a),
                                      distribution_from_json(sim_dist_b), sim_vt};
            const std::string payload =
                scenario == Scenario::mempool
                    ? to_json(simulate_scenario1(game, sim_cfg, sim_threads), sim_cfg.seed)
                    : to_json(simulate_scenario2(game, sim_cfg, sim_threads), sim_cfg.seed);
            emit(payload, sim_out, out);
        } else if (*direct) {
            if (dir_builder != "A" && dir_builder != "B") {
                throw std::invalid_argument("--builder must be A or B");
            }
            const Builder builder = dir_builder == "A" ? Builder::A : Builder::B;
            const StochasticGame game{distribution_from_json(dir_dist_a),
                                      distribution_from_json(dir_dist_b), dir_vt};
            const MCEstimate estimate = direct_ofa_valuation(game, builder, dir_cfg, dir_threads);
            emit(direct_ofa_to_json(estimate, builder, dir_cfg.seed), dir_out, out);
        } else if (*fit) {
            const auto observations = ingest_csv(fit_data);
            const auto result = logit_fit(observations, fit_tol, fit_max_iter);
            emit(to_json(result, observations.size()), fit_out, out);
        } else if (*plogit) {
            emit(probability_to_json(logit_predict(plogit_model, plogit_x)), plogit_out, out);
        } else if (*pmnl) {
            if (pmnl_model_text.empty() == pmnl_model_file.empty()) {
                throw std::invalid_argument("provide exactly one of --model and --model-file");
            }
            const MNLModel model =
                parse_mnl_model(pmnl_model_text.empty() ? read_file(pmnl_model_file) : pmnl_model_text);
            const auto probabilities = mnl_predict(model, pmnl_x);
            emit(mnl_prediction_to_json(model, pmnl_x, probabilities), pmnl_out, out);
        } else if (*gen) {
            gen_params.volatility_dist = distribution_from_json(gen_vol_dist);
            const auto observations = generate_synthetic(gen_params);
            const std::string csv = observations_to_csv(observations);
            std::string meta = std::string("{\"rng\":\"") + kRngScheme +
                               "\",\"seed\":" + std::to_string(gen_params.seed) +
                               ",\"rows\":" + std::to_string(observations.size()) + ",\"out\":" +
                               (gen_out.empty() ? "null" : quote(gen_out)) + "}";
            if (gen_out.empty()) {
                out << csv;
                err << meta << '\n';
            } else {
                emit(csv, gen_out, out);
                out << meta << '\n';
            }
        }
        return kExitOk;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitValidation;
    } catch (const convergence_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

}  // namespace pbsgame::cli
