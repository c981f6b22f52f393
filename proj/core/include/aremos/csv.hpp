#pragma once

#include <string>
#include <vector>

#include "aremos/ensemble.hpp"

namespace aremos {

/// One rejected station with the reason it was dropped.
struct IngestRejection {
    std::string station_id;
    std::string reason;
};

struct IngestResult {
    std::vector<StationSeries> stations;  // sorted by station id
    std::vector<IngestRejection> rejected;
};

/// Read a dataset CSV (header: station_id,date,obs,m1..m_m; one row per
/// station-day). Rows must parse and carry a constant member count, else an
/// error naming the offending line is thrown. Stations with date gaps or
/// duplicates are rejected individually and itemized in the result.
IngestResult ingest_csv(const std::string& path);

/// Write a dataset in the same CSV schema, deterministically.
void write_dataset_csv(const std::string& path,
                       const std::vector<StationSeries>& stations);

/// Format a double with 17 significant digits (round-trip safe).
std::string format_double(double value);

}  // namespace aremos
