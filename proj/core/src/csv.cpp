#include "aremos/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "aremos/dates.hpp"
#include "aremos/errors.hpp"

namespace aremos {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double value = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(value)) {
            throw std::invalid_argument(text);
        }
        return value;
    } catch (const std::exception&) {
        throw IoError("parse error at line " + std::to_string(line_no) +
                      ": bad number '" + text + "'");
    }
}

struct RawRow {
    long date;
    double observation;
    std::vector<double> members;
};

}  // namespace

IngestResult ingest_csv(const std::string& path) {
    std::ifstream input(path);
    if (!input) {
        throw IoError("cannot open dataset file: " + path);
    }

    std::string line;
    if (!std::getline(input, line)) {
        throw IoError("empty dataset file: " + path);
    }
    const auto header = split_csv_line(line);
    if (header.size() < 5 || header[0] != "station_id" || header[1] != "date" ||
        header[2] != "obs") {
        throw ValidationError(
            "schema mismatch: expected header station_id,date,obs,m1..m_m in " + path);
    }
    const std::size_t member_count = header.size() - 3;
    for (std::size_t i = 0; i < member_count; ++i) {
        if (header[3 + i] != "m" + std::to_string(i + 1)) {
            throw ValidationError("schema mismatch: member column " +
                                  std::to_string(i + 1) + " misnamed in header");
        }
    }

    std::map<std::string, std::vector<RawRow>> rows;
    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ValidationError("schema mismatch at line " + std::to_string(line_no) +
                                  ": expected " + std::to_string(header.size()) +
                                  " fields, got " + std::to_string(fields.size()));
        }
        RawRow row;
        try {
            row.date = parse_iso_date(fields[1]);
        } catch (const ValidationError& e) {
            throw IoError("parse error at line " + std::to_string(line_no) + ": " +
                          e.what());
        }
        row.observation = parse_number(fields[2], line_no);
        row.members.reserve(member_count);
        for (std::size_t i = 0; i < member_count; ++i) {
            row.members.push_back(parse_number(fields[3 + i], line_no));
        }
        rows[fields[0]].push_back(std::move(row));
    }

    IngestResult result;
    for (auto& [station_id, station_rows] : rows) {
        std::stable_sort(station_rows.begin(), station_rows.end(),
                         [](const RawRow& a, const RawRow& b) { return a.date < b.date; });
        bool ok = true;
        for (std::size_t i = 1; i < station_rows.size(); ++i) {
            const long delta = station_rows[i].date - station_rows[i - 1].date;
            if (delta == 0) {
                result.rejected.push_back(
                    {station_id, "duplicate date " + to_iso_date(station_rows[i].date)});
                ok = false;
                break;
            }
            if (delta != 1) {
                result.rejected.push_back(
                    {station_id, "gap after " + to_iso_date(station_rows[i - 1].date)});
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        StationSeries series;
        series.station_id = station_id;
        for (auto& row : station_rows) {
            series.dates.push_back(row.date);
            series.observations.push_back(row.observation);
            EnsembleForecast forecast;
            forecast.station_id = station_id;
            forecast.date = row.date;
            forecast.members = std::move(row.members);
            series.forecasts.push_back(std::move(forecast));
        }
        result.stations.push_back(std::move(series));
    }
    return result;
}

void write_dataset_csv(const std::string& path,
                       const std::vector<StationSeries>& stations) {
    std::ofstream output(path);
    if (!output) {
        throw IoError("cannot write dataset file: " + path);
    }
    const std::size_t member_count =
        stations.empty() ? 0 : stations.front().forecasts.front().members.size();
    output << "station_id,date,obs";
    for (std::size_t i = 1; i <= member_count; ++i) {
        output << ",m" << i;
    }
    output << "\n";
    for (const auto& station : stations) {
        for (std::size_t t = 0; t < station.length(); ++t) {
            output << station.station_id << ',' << to_iso_date(station.dates[t]) << ','
                   << format_double(station.observations[t]);
            for (double x : station.forecasts[t].members) {
                output << ',' << format_double(x);
            }
            output << "\n";
        }
    }
    if (!output) {
        throw IoError("write failure on dataset file: " + path);
    }
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

}  // namespace aremos
