#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sotm {

// One observation: the values of an entity at one point in time.
struct PanelRow {
    std::size_t entity = 0;      // index into PanelDataset::entities()
    std::vector<double> values;  // exactly D finite components
};

// Entities x time x variables cube, stored as per-time slices. Entities may
// miss whole time slices; every stored row is complete and finite.
class PanelDataset {
public:
    // `times` must be unique and already sorted ascending by their time key;
    // every slice must be nonempty and every row complete. Throws DataError.
    static PanelDataset create(std::vector<std::string> entities,
                               std::vector<std::string> times,
                               std::vector<std::string> variables,
                               std::vector<std::vector<PanelRow>> slices);

    std::size_t dim() const { return variables_.size(); }
    std::size_t periods() const { return times_.size(); }
    std::size_t entity_count() const { return entities_.size(); }
    std::size_t rows_at(std::size_t t) const { return slices_[t].size(); }
    std::size_t total_rows() const;

    const std::vector<std::string>& entities() const { return entities_; }
    const std::vector<std::string>& times() const { return times_; }
    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<PanelRow>& slice(std::size_t t) const { return slices_[t]; }

    // Row value views of one slice, in stored order.
    std::vector<std::span<const double>> slice_values(std::size_t t) const;
    // Row value views of the whole panel, slices concatenated in time order.
    std::vector<std::span<const double>> pooled_values() const;

    std::optional<std::size_t> entity_index(const std::string& id) const;
    // Row of `entity` at slice t, if present.
    const PanelRow* find_row(std::size_t entity, std::size_t t) const;

private:
    std::vector<std::string> entities_;
    std::vector<std::string> times_;
    std::vector<std::string> variables_;
    std::vector<std::vector<PanelRow>> slices_;
};

// How ingestion treats empty cells.
enum class MissingPolicy {
    Reject,     // any empty cell is an error
    ImputeMean, // fill with the pooled per-variable mean of present cells
};

// Sort key for a time label: integer literal or ISO date (YYYY-MM-DD).
// All labels of one panel must parse as the same kind.
long long parse_time_key(const std::string& label);

// Reads the panel CSV: header `entity,time,<var1>,...,<varD>`, one row per
// (entity,time). Cells must be finite numbers; empty cells follow `policy`.
PanelDataset load_panel_csv(const std::filesystem::path& path,
                            MissingPolicy policy = MissingPolicy::Reject);

void write_panel_csv(const PanelDataset& panel, const std::filesystem::path& path);

// Sidecar `entity,group` used for trajectory coloring.
std::map<std::string, std::string> load_groups_csv(const std::filesystem::path& path);
void write_groups_csv(const std::vector<std::string>& entities,
                      const std::vector<std::string>& groups,
                      const std::filesystem::path& path);

} // namespace sotm
