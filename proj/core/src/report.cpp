#include "aremos/report.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "aremos/csv.hpp"
#include "aremos/dates.hpp"
#include "aremos/errors.hpp"

namespace aremos {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write file: " + path.string());
    }
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write failure on file: " + path.string());
    }
}

json histogram_json(const HistogramSpec& spec) {
    return json{{"bins", spec.bin_count}, {"counts", spec.counts}};
}

// Doubles go through the 17-significant-digit text form so the JSON files
// match the CSV round-trip guarantee.
json number(double value) { return json::parse(format_double(value)); }

void write_scores_csv(const VerificationReport& report, const fs::path& path) {
    auto out = open_out(path);
    out << "station_id,date,obs,method,mean,variance,abs_error,crps,dss,pit\n";
    static const char* method_names[] = {"EMOS", "AR-EMOS", "SLP"};
    for (const auto& record : report.cases) {
        const MethodScore* scores[] = {&record.emos, &record.ar_emos, &record.slp};
        for (int k = 0; k < 3; ++k) {
            out << record.station_id << ',' << to_iso_date(record.date) << ','
                << format_double(record.observation) << ',' << method_names[k] << ','
                << format_double(scores[k]->mean) << ','
                << format_double(scores[k]->variance) << ','
                << format_double(scores[k]->abs_error) << ','
                << format_double(scores[k]->crps) << ','
                << format_double(scores[k]->dss) << ','
                << format_double(scores[k]->pit) << "\n";
        }
    }
    finish(out, path);
}

void write_summary_csv(const VerificationReport& report, const fs::path& path) {
    auto out = open_out(path);
    out << "section,name,mae,crps,dss,pit_variance,rmv\n";
    if (report.cases.empty()) {
        out << "empty,none,,,,,\n";
        finish(out, path);
        return;
    }
    auto forecast_row = [&](const char* name, double value) {
        out << "forecast," << name << ',' << format_double(value) << ",,,,\n";
    };
    forecast_row("raw_mean", report.mae_raw_mean);
    forecast_row("ar_modified_mean", report.mae_ar_modified_mean);
    forecast_row("mean_of_modified", report.mae_mean_of_modified);
    forecast_row("raw_median", report.mae_raw_median);
    forecast_row("ar_modified_median", report.mae_ar_modified_median);
    forecast_row("median_of_modified", report.mae_median_of_modified);

    auto method_row = [&](const char* name, const MethodSummary& s) {
        out << "method," << name << ',' << format_double(s.mae) << ','
            << format_double(s.crps) << ',' << format_double(s.dss) << ','
            << format_double(s.pit_var) << ',' << format_double(s.rmv) << "\n";
    };
    method_row("EMOS", report.emos);
    method_row("AR-EMOS", report.ar_emos);
    method_row("SLP", report.slp);
    finish(out, path);
}

void write_histograms_json(const VerificationReport& report, const fs::path& path) {
    json doc;
    if (report.cases.empty()) {
        doc["empty"] = true;
    } else {
        doc["rank"] = histogram_json(report.rank_histogram_raw);
        doc["pit"]["EMOS"] = histogram_json(report.pit_histogram_emos);
        doc["pit"]["AR-EMOS"] = histogram_json(report.pit_histogram_ar_emos);
        doc["pit"]["SLP"] = histogram_json(report.pit_histogram_slp);
        json orders = json::object();
        for (const auto& [order, count] : report.order_table.counts) {
            orders[std::to_string(order)] = count;
        }
        orders["5_plus"] = report.order_table.grouped_high_orders();
        doc["ar_order_frequencies"] = orders;
    }
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
    finish(out, path);
}

void write_tests_json(const VerificationReport& report, const fs::path& path) {
    json doc;
    if (report.cases.empty()) {
        doc["empty"] = true;
    } else {
        json lb = json::array();
        for (const auto& test : report.station_tests) {
            json entry{{"station_id", test.station_id}};
            if (test.ljung_box) {
                entry["statistic"] = number(test.ljung_box->statistic);
                entry["p_value"] = number(test.ljung_box->p_value);
            } else {
                entry["degenerate"] = true;
            }
            lb.push_back(entry);
        }
        doc["ljung_box"] = lb;
        json dm;
        dm["comparison"] = "EMOS vs SLP";
        dm["h"] = 1;
        if (report.dm_emos_vs_slp) {
            dm["statistic"] = number(report.dm_emos_vs_slp->statistic);
            dm["p_value"] = number(report.dm_emos_vs_slp->p_value);
        } else {
            dm["degenerate"] = true;
        }
        doc["diebold_mariano"] = dm;
    }
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
    finish(out, path);
}

void write_config_json(const VerificationReport& report, const fs::path& path) {
    const RunConfig& config = report.config;
    json doc;
    doc["ar_training_length"] = config.ar_training_length;
    doc["emos_training_length"] = config.emos_training_length;
    doc["max_ar_order"] = config.max_ar_order;
    doc["psi_count"] = config.psi_count;
    doc["seed"] = config.seed;
    doc["objective"] =
        config.slp_grid.objective == SlpSearchGrid::Objective::Crps ? "crps" : "dss";
    if (config.station_filter) {
        doc["station_filter"] = *config.station_filter;
    }
    doc["verification_days"] = report.verification_days;
    doc["slp_weight"] = number(report.slp_weight);
    doc["slp_spread"] = number(report.slp_spread);
    doc["slp_weight_fixed"] = config.slp_weight.has_value();
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
    finish(out, path);
}

}  // namespace

void emit_report(const VerificationReport& report, const std::string& out_dir) {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory: " + out_dir);
    }
    write_scores_csv(report, dir / "scores.csv");
    write_summary_csv(report, dir / "summary.csv");
    write_histograms_json(report, dir / "histograms.json");
    write_tests_json(report, dir / "tests.json");
    write_config_json(report, dir / "config.json");
}

void write_grid_table(const VerificationReport& report, const std::string& path) {
    auto out = open_out(path);
    out << "weight,spread,score\n";
    for (const auto& cell : report.grid_table) {
        out << format_double(cell.weight) << ',' << format_double(cell.spread) << ','
            << format_double(cell.score) << "\n";
    }
    finish(out, path);
}

void write_sweep(const std::vector<SweepEntry>& entries, const std::string& path) {
    auto out = open_out(path);
    out << "t1,mae\n";
    for (const auto& entry : entries) {
        out << entry.t1 << ',' << format_double(entry.mae) << "\n";
    }
    finish(out, path);
}

}  // namespace aremos
