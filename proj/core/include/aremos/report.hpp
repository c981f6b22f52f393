#pragma once

#include <string>

#include "aremos/experiment.hpp"

namespace aremos {

/// Write the report files into out_dir:
///   scores.csv      per-day, per-station, per-method scores
///   summary.csv     point-forecast MAEs and per-method aggregates
///   histograms.json rank/PIT bin counts and AR order frequencies
///   tests.json      Ljung-Box and Diebold-Mariano results
///   config.json     echo of the effective configuration
/// Content is a pure function of the report; re-emission is byte-identical.
void emit_report(const VerificationReport& report, const std::string& out_dir);

/// Write the full SLP grid score table as CSV (weight,spread,score).
void write_grid_table(const VerificationReport& report, const std::string& path);

/// Write the training-length sweep as CSV (t1,mae).
void write_sweep(const std::vector<SweepEntry>& entries, const std::string& path);

}  // namespace aremos
