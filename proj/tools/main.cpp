// Command line front end: synthetic data generation, experiment runs, the
// training-length sweep, SLP grid tables, and standalone verification.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aremos/csv.hpp"
#include "aremos/dates.hpp"
#include "aremos/errors.hpp"
#include "aremos/experiment.hpp"
#include "aremos/report.hpp"
#include "aremos/synthetic.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// Key-value override files: one `key=value` per line, '#' comments. Values
// from the file take precedence over command line flags.
using ConfigSetters =
    std::map<std::string, std::function<void(const std::string&)>>;

void apply_config_file(const std::string& path, const ConfigSetters& setters) {
    std::ifstream input(path);
    if (!input) {
        throw aremos::IoError("cannot open config file: " + path);
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw aremos::ValidationError("config file line " +
                                          std::to_string(line_no) +
                                          ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw aremos::ValidationError("config file line " +
                                          std::to_string(line_no) +
                                          ": unknown key '" + key + "'");
        }
        try {
            it->second(value);
        } catch (const aremos::Error&) {
            throw;
        } catch (const std::exception&) {
            throw aremos::ValidationError("config file line " +
                                          std::to_string(line_no) +
                                          ": bad value for '" + key + "'");
        }
    }
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        values.push_back(std::stod(token));
    }
    return values;
}

struct VerifyRow {
    std::string station_id;
    std::string method;
    double observation;
    aremos::GaussianPredictive dist;
};

// `verify` scores precomputed Gaussian forecasts from a CSV with columns
// station_id,date,obs,method,mean,variance.
void run_verify(const std::string& forecasts_path, const std::string& out_path) {
    std::ifstream input(forecasts_path);
    if (!input) {
        throw aremos::IoError("cannot open forecasts file: " + forecasts_path);
    }
    std::string line;
    if (!std::getline(input, line) ||
        line.rfind("station_id,date,obs,method,mean,variance", 0) != 0) {
        throw aremos::ValidationError(
            "verify: expected header station_id,date,obs,method,mean,variance");
    }
    std::map<std::string, std::vector<VerifyRow>> by_method;
    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::stringstream row(line);
        std::string station, date, obs, method, mean, variance;
        if (!std::getline(row, station, ',') || !std::getline(row, date, ',') ||
            !std::getline(row, obs, ',') || !std::getline(row, method, ',') ||
            !std::getline(row, mean, ',') || !std::getline(row, variance, ',')) {
            throw aremos::ValidationError("verify: malformed row at line " +
                                          std::to_string(line_no));
        }
        VerifyRow parsed;
        parsed.station_id = station;
        parsed.method = method;
        try {
            parsed.observation = std::stod(obs);
            parsed.dist.mean = std::stod(mean);
            parsed.dist.variance = std::stod(variance);
        } catch (const std::exception&) {
            throw aremos::IoError("verify: bad number at line " +
                                  std::to_string(line_no));
        }
        by_method[method].push_back(parsed);
    }
    if (by_method.empty()) {
        throw aremos::ValidationError("verify: no forecast rows");
    }

    std::ofstream out(out_path);
    if (!out) {
        throw aremos::IoError("cannot write file: " + out_path);
    }
    out << "method,cases,mae,crps,dss,pit_variance,rmv\n";
    for (const auto& [method, rows] : by_method) {
        double mae_acc = 0.0, crps_acc = 0.0, dss_acc = 0.0;
        std::vector<double> pits, variances;
        for (const auto& row : rows) {
            mae_acc += std::abs(row.observation - row.dist.mean);
            crps_acc += aremos::gaussian_crps(row.dist, row.observation);
            const aremos::SlpMixture single{
                {{1.0, row.dist.mean, std::sqrt(row.dist.variance)}}, 1.0};
            dss_acc += aremos::dss(single, row.observation);
            pits.push_back(aremos::gaussian_cdf(row.dist, row.observation));
            variances.push_back(row.dist.variance);
        }
        const double n = static_cast<double>(rows.size());
        out << method << ',' << rows.size() << ','
            << aremos::format_double(mae_acc / n) << ','
            << aremos::format_double(crps_acc / n) << ','
            << aremos::format_double(dss_acc / n) << ','
            << aremos::format_double(aremos::pit_variance(pits)) << ','
            << aremos::format_double(aremos::rmv(variances)) << "\n";
    }
    if (!out) {
        throw aremos::IoError("write failure on file: " + out_path);
    }
}

int dispatch(int argc, char** argv) {
    CLI::App app{"AR-EMOS ensemble postprocessing"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset CSV");
    std::string synth_out = "synthetic.csv";
    aremos::SyntheticSpec spec;
    std::uint64_t synth_seed = 0;
    std::string ar_coefs = "0.8";
    std::string start_date = "2010-02-01";
    synth->add_option("--out", synth_out, "output CSV path");
    synth->add_option("--stations", spec.station_count, "number of stations");
    synth->add_option("--days", spec.days, "days per station");
    synth->add_option("--members", spec.member_count, "ensemble members");
    synth->add_option("--start-date", start_date, "first date (ISO-8601)");
    synth->add_option("--base-level", spec.base_level, "seasonal signal level");
    synth->add_option("--base-amplitude", spec.base_amplitude, "seasonal amplitude");
    synth->add_option("--base-period", spec.base_period, "seasonal period in days");
    synth->add_option("--ar-coefs", ar_coefs, "error AR coefficients, comma separated");
    synth->add_option("--innovation-var", spec.innovation_variance,
                      "error innovation variance");
    synth->add_option("--bias", spec.bias, "additive member bias");
    synth->add_option("--noise-scale", spec.member_noise_scale,
                      "member noise scale relative to the error sd");
    synth->add_option("--dispersion", spec.dispersion_factor,
                      "dispersion factor (< 1 under-disperses the ensemble)");
    synth->add_option("--seed", synth_seed, "RNG seed")->required();
    std::string synth_config;
    synth->add_option("--config", synth_config,
                      "key-value file overriding flags");

    // run
    auto* run = app.add_subcommand("run", "run the full experiment");
    std::string run_data, run_out = "report";
    aremos::RunConfig config;
    double fixed_w1 = -1.0, fixed_spread = -1.0;
    std::string run_objective = "crps";
    std::string run_station;
    run->add_option("--data", run_data, "dataset CSV")->required();
    run->add_option("--out", run_out, "output directory");
    run->add_option("--t1", config.ar_training_length, "AR training length (days)");
    run->add_option("--emos-length", config.emos_training_length,
                    "EMOS training length (days)");
    run->add_option("--max-order", config.max_ar_order, "AIC search ceiling");
    run->add_option("--psi-count", config.psi_count, "psi-weight truncation");
    run->add_option("--w1", fixed_w1, "fix the SLP weight of the EMOS component");
    run->add_option("--spread", fixed_spread, "fix the SLP spread parameter");
    run->add_option("--objective", run_objective, "grid objective: crps or dss");
    run->add_option("--station", run_station, "restrict to one station");
    run->add_option("--seed", config.seed, "RNG seed (rank-histogram ties)")
        ->required();
    std::string run_config_file;
    run->add_option("--config", run_config_file,
                    "key-value file overriding flags");

    // sweep-t1
    auto* sweep = app.add_subcommand("sweep-t1", "AR training-length study");
    std::string sweep_data, sweep_out = "sweep.csv", t1_list = "30,60,90,120,150,180,210";
    int sweep_max_order = 15;
    sweep->add_option("--data", sweep_data, "dataset CSV")->required();
    sweep->add_option("--out", sweep_out, "output CSV path");
    sweep->add_option("--t1-list", t1_list, "candidate T1 values, comma separated");
    sweep->add_option("--max-order", sweep_max_order, "AIC search ceiling");
    std::string sweep_config;
    sweep->add_option("--config", sweep_config,
                      "key-value file overriding flags");

    // gridtable
    auto* gridtable =
        app.add_subcommand("gridtable", "emit the SLP weight/spread score table");
    std::string grid_data, grid_out = "gridtable.csv";
    std::string grid_objective = "crps";
    std::uint64_t grid_seed = 0;
    aremos::RunConfig grid_config;
    gridtable->add_option("--data", grid_data, "dataset CSV")->required();
    gridtable->add_option("--out", grid_out, "output CSV path");
    gridtable->add_option("--t1", grid_config.ar_training_length,
                          "AR training length (days)");
    gridtable->add_option("--emos-length", grid_config.emos_training_length,
                          "EMOS training length (days)");
    gridtable->add_option("--objective", grid_objective, "grid objective: crps or dss");
    gridtable->add_option("--seed", grid_seed, "RNG seed")->required();
    std::string grid_config_file;
    gridtable->add_option("--config", grid_config_file,
                          "key-value file overriding flags");

    // verify
    auto* verify =
        app.add_subcommand("verify", "score precomputed Gaussian forecasts");
    std::string verify_forecasts, verify_out = "verify.csv";
    verify->add_option("--forecasts", verify_forecasts, "forecasts CSV")->required();
    verify->add_option("--out", verify_out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (synth->parsed()) {
        if (!synth_config.empty()) {
            apply_config_file(
                synth_config,
                {{"out", [&](const std::string& v) { synth_out = v; }},
                 {"stations",
                  [&](const std::string& v) { spec.station_count = std::stoul(v); }},
                 {"days", [&](const std::string& v) { spec.days = std::stoul(v); }},
                 {"members",
                  [&](const std::string& v) { spec.member_count = std::stoul(v); }},
                 {"start-date", [&](const std::string& v) { start_date = v; }},
                 {"base-level",
                  [&](const std::string& v) { spec.base_level = std::stod(v); }},
                 {"base-amplitude",
                  [&](const std::string& v) { spec.base_amplitude = std::stod(v); }},
                 {"base-period",
                  [&](const std::string& v) { spec.base_period = std::stod(v); }},
                 {"ar-coefs", [&](const std::string& v) { ar_coefs = v; }},
                 {"innovation-var",
                  [&](const std::string& v) {
                      spec.innovation_variance = std::stod(v);
                  }},
                 {"bias", [&](const std::string& v) { spec.bias = std::stod(v); }},
                 {"noise-scale",
                  [&](const std::string& v) {
                      spec.member_noise_scale = std::stod(v);
                  }},
                 {"dispersion",
                  [&](const std::string& v) {
                      spec.dispersion_factor = std::stod(v);
                  }},
                 {"seed",
                  [&](const std::string& v) { synth_seed = std::stoull(v); }}});
        }
        spec.ar_coefficients = parse_double_list(ar_coefs);
        spec.start_date = aremos::parse_iso_date(start_date);
        const auto stations = aremos::generate_synthetic(spec, synth_seed);
        aremos::write_dataset_csv(synth_out, stations);
        std::cout << "wrote " << synth_out << " (" << stations.size() << " stations, "
                  << spec.days << " days, " << spec.member_count << " members)\n";
    } else if (run->parsed()) {
        if (!run_config_file.empty()) {
            apply_config_file(
                run_config_file,
                {{"data", [&](const std::string& v) { run_data = v; }},
                 {"out", [&](const std::string& v) { run_out = v; }},
                 {"t1",
                  [&](const std::string& v) {
                      config.ar_training_length = std::stoul(v);
                  }},
                 {"emos-length",
                  [&](const std::string& v) {
                      config.emos_training_length = std::stoul(v);
                  }},
                 {"max-order",
                  [&](const std::string& v) { config.max_ar_order = std::stoi(v); }},
                 {"psi-count",
                  [&](const std::string& v) { config.psi_count = std::stoi(v); }},
                 {"w1", [&](const std::string& v) { fixed_w1 = std::stod(v); }},
                 {"spread",
                  [&](const std::string& v) { fixed_spread = std::stod(v); }},
                 {"objective", [&](const std::string& v) { run_objective = v; }},
                 {"station", [&](const std::string& v) { run_station = v; }},
                 {"seed",
                  [&](const std::string& v) { config.seed = std::stoull(v); }}});
        }
        if (fixed_w1 >= 0.0) {
            config.slp_weight = fixed_w1;
        }
        if (fixed_spread >= 0.0) {
            config.slp_spread = fixed_spread;
        }
        if (!run_station.empty()) {
            config.station_filter = run_station;
        }
        config.slp_grid.objective = run_objective == "dss"
                                        ? aremos::SlpSearchGrid::Objective::Dss
                                        : aremos::SlpSearchGrid::Objective::Crps;
        auto ingest = aremos::ingest_csv(run_data);
        for (const auto& rejection : ingest.rejected) {
            std::cerr << "rejected station " << rejection.station_id << ": "
                      << rejection.reason << "\n";
        }
        const auto report = aremos::run_experiment(ingest.stations, config);
        aremos::emit_report(report, run_out);
        std::cout << "verification days: " << report.verification_days
                  << ", stations: " << report.station_tests.size() << "\n"
                  << "SLP (w1=" << report.slp_weight << ", c=" << report.slp_spread
                  << ")  mean CRPS: EMOS " << report.emos.crps << ", AR-EMOS "
                  << report.ar_emos.crps << ", SLP " << report.slp.crps << "\n"
                  << "report written to " << run_out << "\n";
    } else if (sweep->parsed()) {
        if (!sweep_config.empty()) {
            apply_config_file(
                sweep_config,
                {{"data", [&](const std::string& v) { sweep_data = v; }},
                 {"out", [&](const std::string& v) { sweep_out = v; }},
                 {"t1-list", [&](const std::string& v) { t1_list = v; }},
                 {"max-order",
                  [&](const std::string& v) { sweep_max_order = std::stoi(v); }}});
        }
        auto ingest = aremos::ingest_csv(sweep_data);
        std::vector<std::size_t> t1_values;
        for (double v : parse_double_list(t1_list)) {
            t1_values.push_back(static_cast<std::size_t>(v));
        }
        const auto entries = aremos::sweep_training_length(
            ingest.stations, t1_values, sweep_max_order);
        aremos::write_sweep(entries, sweep_out);
        std::cout << "wrote " << sweep_out << "\n";
    } else if (gridtable->parsed()) {
        if (!grid_config_file.empty()) {
            apply_config_file(
                grid_config_file,
                {{"data", [&](const std::string& v) { grid_data = v; }},
                 {"out", [&](const std::string& v) { grid_out = v; }},
                 {"t1",
                  [&](const std::string& v) {
                      grid_config.ar_training_length = std::stoul(v);
                  }},
                 {"emos-length",
                  [&](const std::string& v) {
                      grid_config.emos_training_length = std::stoul(v);
                  }},
                 {"objective", [&](const std::string& v) { grid_objective = v; }},
                 {"seed",
                  [&](const std::string& v) { grid_seed = std::stoull(v); }}});
        }
        grid_config.seed = grid_seed;
        grid_config.slp_grid.objective =
            grid_objective == "dss" ? aremos::SlpSearchGrid::Objective::Dss
                                    : aremos::SlpSearchGrid::Objective::Crps;
        auto ingest = aremos::ingest_csv(grid_data);
        const auto report = aremos::run_experiment(ingest.stations, grid_config);
        aremos::write_grid_table(report, grid_out);
        std::cout << "best cell: w1=" << report.slp_weight
                  << ", c=" << report.slp_spread << "; wrote " << grid_out << "\n";
    } else if (verify->parsed()) {
        run_verify(verify_forecasts, verify_out);
        std::cout << "wrote " << verify_out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const aremos::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const aremos::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const aremos::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
