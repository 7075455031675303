#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sotm/color.hpp"
#include "sotm/model.hpp"
#include "sotm/panel.hpp"
#include "sotm/sammon.hpp"

namespace sotm {

// All per-unit grids below are indexed t * M + i, matching SammonResult.

// Per-variable view of the grid in original units, with a per-plane
// sequential blue scale spanning that plane's min..max over all t.
struct FeaturePlanes {
    std::vector<std::vector<double>> values; // [variable][t*M+i]
    std::vector<std::vector<Rgb>> colors;    // same shape
};
FeaturePlanes feature_planes(const SotmModel& model);

// Data counts per unit; a unit attracting nothing at its slice is idle.
struct FrequencyPlane {
    std::vector<std::uint64_t> counts; // [t*M+i], columns sum to N(t)
    std::vector<std::uint8_t> idle;    // [t*M+i], 1 iff count == 0
};
FrequencyPlane frequency_plane(const SotmModel& model, const PanelDataset& panel);

// An entity's BMU per period, restricted to that period's array; periods the
// entity misses are simply absent (no interpolation).
struct TrajectoryPoint {
    std::size_t t;
    std::size_t unit;
};
struct Trajectory {
    std::string entity;
    std::vector<TrajectoryPoint> points;
};
std::vector<Trajectory> trajectories(const SotmModel& model, const PanelDataset& panel,
                                     std::span<const std::string> entity_ids);

// Units involved in a first/second-BMU non-adjacency event, for highlighting;
// event_count_t[t] equals N(t) times the topographic error at t.
struct TopographicMarks {
    std::vector<std::size_t> event_count_t; // [T]
    std::vector<std::uint8_t> flagged;      // [t*M+i]
};
TopographicMarks topographic_marks(const SotmModel& model, const PanelDataset& panel);

struct VizBundle {
    SammonResult sammon;
    std::vector<Rgb> unit_colors;            // [t*M+i]
    FeaturePlanes planes;
    FrequencyPlane frequency;
    TopographicMarks marks;
    std::vector<Trajectory> trajectories;    // possibly empty
    std::map<std::string, std::string> groups; // optional entity -> group, for coloring
    std::optional<std::size_t> underlay;     // feature plane drawn behind trajectories
};

// Computes every layer for the given model/panel pair. `trajectory_entities`
// selects the trajectories (empty selection means none).
VizBundle build_bundle(const SotmModel& model, const PanelDataset& panel,
                       std::span<const std::string> trajectory_entities,
                       std::map<std::string, std::string> groups = {},
                       std::optional<std::size_t> underlay = std::nullopt);

std::string bundle_to_json(const SotmModel& model, const VizBundle& bundle);

// Writes the report files into `out_dir` (created if needed): sotm-grid.svg,
// sammon-net.svg, one plane-<var>.svg per variable, frequency.svg,
// quality.svg, trajectories.svg (when the bundle holds any) and bundle.json.
// Rendering is deterministic: identical inputs give byte-identical files.
void render_report(const SotmModel& model, const PanelDataset& panel, const VizBundle& bundle,
                   const std::filesystem::path& out_dir);

} // namespace sotm
