#include "sotm/panel.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <unordered_map>

#include "sotm/errors.hpp"

namespace sotm {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end;
}

enum class TimeKind { Integer, IsoDate };

bool classify_time(const std::string& label, TimeKind& kind, long long& key) {
    if (label.size() == 10 && label[4] == '-' && label[7] == '-') {
        for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
            if (!std::isdigit(static_cast<unsigned char>(label[i]))) return false;
        }
        const long long y = std::stoll(label.substr(0, 4));
        const long long m = std::stoll(label.substr(5, 2));
        const long long d = std::stoll(label.substr(8, 2));
        if (m < 1 || m > 12 || d < 1 || d > 31) return false;
        kind = TimeKind::IsoDate;
        key = y * 10000 + m * 100 + d;
        return true;
    }
    long long v = 0;
    const char* begin = label.data();
    const char* end = begin + label.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) return false;
    kind = TimeKind::Integer;
    key = v;
    return true;
}

} // namespace

long long parse_time_key(const std::string& label) {
    TimeKind kind;
    long long key;
    if (!classify_time(label, kind, key)) {
        throw DataError("time label is neither an integer nor an ISO date: '" + label + "'");
    }
    return key;
}

PanelDataset PanelDataset::create(std::vector<std::string> entities,
                                  std::vector<std::string> times,
                                  std::vector<std::string> variables,
                                  std::vector<std::vector<PanelRow>> slices) {
    if (times.empty()) throw DataError("panel has no time slices");
    if (variables.empty()) throw DataError("panel has no variables");
    if (slices.size() != times.size()) throw DataError("slice count does not match time labels");
    if (std::set<std::string>(times.begin(), times.end()).size() != times.size()) {
        throw DataError("duplicate time labels");
    }
    const std::size_t d = variables.size();
    for (std::size_t t = 0; t < slices.size(); ++t) {
        if (slices[t].empty()) throw EmptySlice(times[t]);
        for (const PanelRow& row : slices[t]) {
            if (row.entity >= entities.size()) throw DataError("row references unknown entity");
            if (row.values.size() != d) {
                throw DimensionMismatch("row at time " + times[t] + " has " +
                                        std::to_string(row.values.size()) + " values, expected " +
                                        std::to_string(d));
            }
            for (double v : row.values) {
                if (!std::isfinite(v)) throw DataError("non-finite value at time " + times[t]);
            }
        }
    }
    PanelDataset p;
    p.entities_ = std::move(entities);
    p.times_ = std::move(times);
    p.variables_ = std::move(variables);
    p.slices_ = std::move(slices);
    return p;
}

std::size_t PanelDataset::total_rows() const {
    std::size_t n = 0;
    for (const auto& s : slices_) n += s.size();
    return n;
}

std::vector<std::span<const double>> PanelDataset::slice_values(std::size_t t) const {
    std::vector<std::span<const double>> rows;
    rows.reserve(slices_[t].size());
    for (const PanelRow& row : slices_[t]) rows.emplace_back(row.values);
    return rows;
}

std::vector<std::span<const double>> PanelDataset::pooled_values() const {
    std::vector<std::span<const double>> rows;
    rows.reserve(total_rows());
    for (const auto& slice : slices_) {
        for (const PanelRow& row : slice) rows.emplace_back(row.values);
    }
    return rows;
}

std::optional<std::size_t> PanelDataset::entity_index(const std::string& id) const {
    auto it = std::find(entities_.begin(), entities_.end(), id);
    if (it == entities_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - entities_.begin());
}

const PanelRow* PanelDataset::find_row(std::size_t entity, std::size_t t) const {
    for (const PanelRow& row : slices_[t]) {
        if (row.entity == entity) return &row;
    }
    return nullptr;
}

PanelDataset load_panel_csv(const std::filesystem::path& path, MissingPolicy policy) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open panel CSV: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("panel CSV is empty: " + path.string());
    const auto header = split_csv_line(line);
    if (header.size() < 3 || trim(header[0]) != "entity" || trim(header[1]) != "time") {
        throw DataError("panel CSV header must be 'entity,time,<var1>,...': " + path.string());
    }
    std::vector<std::string> variables;
    for (std::size_t k = 2; k < header.size(); ++k) {
        const std::string name = trim(header[k]);
        if (name.empty()) throw DataError("empty variable name in panel CSV header");
        variables.push_back(name);
    }
    if (std::set<std::string>(variables.begin(), variables.end()).size() != variables.size()) {
        throw DataError("duplicate variable names in panel CSV header");
    }
    const std::size_t d = variables.size();

    constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
    struct RawRow {
        std::string entity;
        std::string time;
        long long time_key;
        std::vector<double> values; // NaN marks a missing cell
    };
    std::vector<RawRow> raw;
    std::optional<TimeKind> time_kind;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != d + 2) {
            throw DataError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(d + 2) + " fields, got " + std::to_string(fields.size()));
        }
        RawRow row;
        row.entity = trim(fields[0]);
        row.time = trim(fields[1]);
        if (row.entity.empty()) throw DataError("line " + std::to_string(line_no) + ": empty entity id");
        TimeKind kind;
        if (!classify_time(row.time, kind, row.time_key)) {
            throw DataError("line " + std::to_string(line_no) + ": bad time label '" + row.time + "'");
        }
        if (time_kind && *time_kind != kind) {
            throw DataError("line " + std::to_string(line_no) +
                            ": time labels mix integers and dates");
        }
        time_kind = kind;
        row.values.reserve(d);
        for (std::size_t k = 0; k < d; ++k) {
            const std::string cell = trim(fields[k + 2]);
            if (cell.empty()) {
                row.values.push_back(kMissing);
                continue;
            }
            double v;
            if (!parse_double(cell, v) || !std::isfinite(v)) {
                throw DataError("line " + std::to_string(line_no) + ": bad value '" + cell +
                                "' for variable " + variables[k]);
            }
            row.values.push_back(v);
        }
        raw.push_back(std::move(row));
    }
    if (raw.empty()) throw DataError("panel CSV has no data rows: " + path.string());

    // Missing cells: reject, or fill with the pooled mean of present cells.
    std::vector<double> sums(d, 0.0);
    std::vector<std::size_t> counts(d, 0);
    for (const RawRow& row : raw) {
        for (std::size_t k = 0; k < d; ++k) {
            if (!std::isnan(row.values[k])) {
                sums[k] += row.values[k];
                ++counts[k];
            }
        }
    }
    for (RawRow& row : raw) {
        for (std::size_t k = 0; k < d; ++k) {
            if (!std::isnan(row.values[k])) continue;
            if (policy == MissingPolicy::Reject) {
                throw DataError("missing value for entity " + row.entity + " at time " + row.time +
                                ", variable " + variables[k] +
                                " (re-run with mean imputation to fill)");
            }
            if (counts[k] == 0) {
                throw DataError("variable " + variables[k] + " has no present values to impute from");
            }
            row.values[k] = sums[k] / static_cast<double>(counts[k]);
        }
    }

    std::vector<std::pair<long long, std::string>> time_order;
    {
        std::set<std::pair<long long, std::string>> seen;
        for (const RawRow& row : raw) seen.insert({row.time_key, row.time});
        time_order.assign(seen.begin(), seen.end());
        std::set<long long> keys;
        for (const auto& [key, label] : time_order) {
            if (!keys.insert(key).second) {
                throw DataError("two distinct time labels share the sort key " + std::to_string(key));
            }
        }
    }
    std::unordered_map<std::string, std::size_t> time_index;
    std::vector<std::string> times;
    for (const auto& [key, label] : time_order) {
        time_index[label] = times.size();
        times.push_back(label);
    }

    std::vector<std::string> entities;
    std::unordered_map<std::string, std::size_t> entity_index;
    for (const RawRow& row : raw) {
        if (entity_index.emplace(row.entity, entities.size()).second) {
            entities.push_back(row.entity);
        }
    }

    std::vector<std::vector<PanelRow>> slices(times.size());
    std::set<std::pair<std::size_t, std::size_t>> seen_cells;
    for (RawRow& row : raw) {
        const std::size_t e = entity_index[row.entity];
        const std::size_t t = time_index[row.time];
        if (!seen_cells.insert({e, t}).second) {
            throw DataError("duplicate row for entity " + row.entity + " at time " + row.time);
        }
        slices[t].push_back(PanelRow{e, std::move(row.values)});
    }

    return PanelDataset::create(std::move(entities), std::move(times), std::move(variables),
                                std::move(slices));
}

void write_panel_csv(const PanelDataset& panel, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write panel CSV: " + path.string());
    out << "entity,time";
    for (const std::string& v : panel.variables()) out << ',' << v;
    out << '\n';
    char buf[64];
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        for (const PanelRow& row : panel.slice(t)) {
            out << panel.entities()[row.entity] << ',' << panel.times()[t];
            for (double v : row.values) {
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out << ',' << buf;
            }
            out << '\n';
        }
    }
    if (!out) throw IoError("failed while writing panel CSV: " + path.string());
}

std::map<std::string, std::string> load_groups_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open groups CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError("groups CSV is empty: " + path.string());
    const auto header = split_csv_line(line);
    if (header.size() != 2 || trim(header[0]) != "entity" || trim(header[1]) != "group") {
        throw DataError("groups CSV header must be 'entity,group': " + path.string());
    }
    std::map<std::string, std::string> groups;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw DataError("groups CSV line " + std::to_string(line_no) + ": expected 2 fields");
        }
        groups[trim(fields[0])] = trim(fields[1]);
    }
    return groups;
}

void write_groups_csv(const std::vector<std::string>& entities,
                      const std::vector<std::string>& groups,
                      const std::filesystem::path& path) {
    if (entities.size() != groups.size()) {
        throw DimensionMismatch("entity and group lists differ in length");
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot write groups CSV: " + path.string());
    out << "entity,group\n";
    for (std::size_t i = 0; i < entities.size(); ++i) {
        out << entities[i] << ',' << groups[i] << '\n';
    }
    if (!out) throw IoError("failed while writing groups CSV: " + path.string());
}

} // namespace sotm
