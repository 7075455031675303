#include "sotm/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "sotm/errors.hpp"

namespace sotm {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace

void write_quality_csv(const QualityReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write quality CSV: " + path.string());
    out << "t,qe,dm,te,sc\n";
    for (std::size_t t = 0; t < report.times.size(); ++t) {
        out << report.times[t] << ',' << fmt(report.qe_t[t]) << ',' << fmt(report.dm_t[t]) << ','
            << fmt(report.te_t[t]) << ',';
        if (t > 0) out << fmt(report.sc_t[t - 1]);
        out << '\n';
    }
    if (!out) throw IoError("failed while writing quality CSV: " + path.string());
}

std::string quality_to_json(const QualityReport& report) {
    nlohmann::json doc;
    doc["times"] = report.times;
    doc["per_t"] = {
        {"qe", report.qe_t},
        {"dm", report.dm_t},
        {"te", report.te_t},
        {"sc", report.sc_t},
    };
    doc["totals"] = {
        {"qe", report.qe_total},
        {"dm", report.dm_total},
        {"te", report.te_total},
        {"sc", report.sc_total},
    };
    return doc.dump(2);
}

void write_quality_json(const QualityReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write quality JSON: " + path.string());
    out << quality_to_json(report) << '\n';
    if (!out) throw IoError("failed while writing quality JSON: " + path.string());
}

} // namespace sotm
