#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sotm {

// The four map measures, aggregate and per time slice. Aggregates equal the
// arithmetic mean of their per-t sequence; structural change runs over
// consecutive pairs only (sc_t[k] is between times[k] and times[k+1]).
struct QualityReport {
    std::vector<std::string> times; // length T
    std::vector<double> qe_t;       // quantization error, length T
    std::vector<double> dm_t;       // distortion, length T
    std::vector<double> te_t;       // topographic error, length T, each in [0,1]
    std::vector<double> sc_t;       // structural change, length T-1 (empty when T == 1)
    double qe_total = 0.0;
    double dm_total = 0.0;
    double te_total = 0.0;
    double sc_total = 0.0; // 0 when T == 1
};

// Plain table for external plotting: t,qe,dm,te,sc with sc blank on the
// first row.
void write_quality_csv(const QualityReport& report, const std::filesystem::path& path);
void write_quality_json(const QualityReport& report, const std::filesystem::path& path);
std::string quality_to_json(const QualityReport& report);

} // namespace sotm
