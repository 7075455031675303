#include "sotm/viz.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sotm/errors.hpp"
#include "sotm/metrics.hpp"
#include "sotm/trainer.hpp"
#include "svg.hpp"

namespace sotm {

namespace {

void check_match(const SotmModel& model, const PanelDataset& panel) {
    if (model.dim() != panel.dim() || model.periods() != panel.periods() ||
        model.times != panel.times()) {
        throw MismatchedPanel("panel shape or time labels do not match the model");
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("failed while writing " + path.string());
}

std::string sanitize_filename(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? "_" : out;
}

// Shared layout for the grid-shaped charts.
struct GridLayout {
    double cell = 26.0;
    double left = 46.0;
    double top = 30.0;
    double right = 18.0;
    double bottom = 36.0;
    std::size_t units;
    std::size_t periods;

    double width() const { return left + cell * static_cast<double>(periods) + right; }
    double height() const { return top + cell * static_cast<double>(units) + bottom; }
    double x(std::size_t t) const { return left + cell * static_cast<double>(t); }
    double y(std::size_t i) const { return top + cell * static_cast<double>(i); }
    double cx(std::size_t t) const { return x(t) + cell / 2.0; }
    double cy(std::size_t i) const { return y(i) + cell / 2.0; }
};

void draw_axes(svg::Document& doc, const GridLayout& g, const SotmModel& model,
               const std::string& title) {
    doc.text(g.left, 19.0, title, 13.0);
    for (std::size_t i = 0; i < g.units; ++i) {
        doc.text(g.left - 8.0, g.cy(i) + 4.0, std::to_string(i), 10.0, "end");
    }
    const std::size_t step = std::max<std::size_t>(1, (g.periods + 11) / 12);
    for (std::size_t t = 0; t < g.periods; t += step) {
        doc.text(g.cx(t), g.top + g.cell * static_cast<double>(g.units) + 16.0, model.times[t],
                 10.0, "middle");
    }
}

std::string grid_svg(const SotmModel& model, const std::vector<Rgb>& colors,
                     const std::string& title,
                     const std::vector<std::string>* cell_titles = nullptr) {
    GridLayout g{.units = model.units(), .periods = model.periods()};
    svg::Document doc(g.width(), g.height());
    draw_axes(doc, g, model, title);
    for (std::size_t t = 0; t < g.periods; ++t) {
        for (std::size_t i = 0; i < g.units; ++i) {
            const std::size_t idx = t * g.units + i;
            doc.rect(g.x(t), g.y(i), g.cell - 1.0, g.cell - 1.0, to_hex(colors[idx]),
                     cell_titles ? (*cell_titles)[idx] : "");
        }
    }
    return doc.str();
}

std::string format_value(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

FeaturePlanes feature_planes(const SotmModel& model) {
    model.validate();
    const std::size_t m = model.units();
    const std::size_t t_count = model.periods();
    const std::size_t d = model.dim();
    FeaturePlanes planes;
    planes.values.assign(d, std::vector<double>(m * t_count, 0.0));
    planes.colors.assign(d, std::vector<Rgb>(m * t_count));

    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            const auto original = model.scaler.destandardize(model.arrays[t].row_span(i));
            for (std::size_t v = 0; v < d; ++v) planes.values[v][t * m + i] = original[v];
        }
    }
    for (std::size_t v = 0; v < d; ++v) {
        const auto [lo_it, hi_it] =
            std::minmax_element(planes.values[v].begin(), planes.values[v].end());
        const double lo = *lo_it, range = *hi_it - *lo_it;
        for (std::size_t idx = 0; idx < planes.values[v].size(); ++idx) {
            const double u = range > 0.0 ? (planes.values[v][idx] - lo) / range : 0.5;
            planes.colors[v][idx] = blues_ramp(u);
        }
    }
    return planes;
}

FrequencyPlane frequency_plane(const SotmModel& model, const PanelDataset& panel) {
    check_match(model, panel);
    const std::size_t m = model.units();
    FrequencyPlane plane;
    plane.counts.assign(m * model.periods(), 0);
    for (std::size_t t = 0; t < model.periods(); ++t) {
        for (const PanelRow& row : panel.slice(t)) {
            ++plane.counts[t * m + find_bmu(row.values, model.arrays[t]).first];
        }
    }
    plane.idle.resize(plane.counts.size());
    for (std::size_t idx = 0; idx < plane.counts.size(); ++idx) {
        plane.idle[idx] = plane.counts[idx] == 0 ? 1 : 0;
    }
    return plane;
}

std::vector<Trajectory> trajectories(const SotmModel& model, const PanelDataset& panel,
                                     std::span<const std::string> entity_ids) {
    check_match(model, panel);
    std::vector<Trajectory> out;
    out.reserve(entity_ids.size());
    for (const std::string& id : entity_ids) {
        const auto e = panel.entity_index(id);
        if (!e) throw UnknownEntity(id);
        Trajectory traj{id, {}};
        for (std::size_t t = 0; t < panel.periods(); ++t) {
            if (const PanelRow* row = panel.find_row(*e, t)) {
                traj.points.push_back({t, find_bmu(row->values, model.arrays[t]).first});
            }
        }
        out.push_back(std::move(traj));
    }
    return out;
}

TopographicMarks topographic_marks(const SotmModel& model, const PanelDataset& panel) {
    check_match(model, panel);
    const std::size_t m = model.units();
    TopographicMarks marks;
    marks.event_count_t.assign(model.periods(), 0);
    marks.flagged.assign(m * model.periods(), 0);
    for (std::size_t t = 0; t < model.periods(); ++t) {
        for (const PanelRow& row : panel.slice(t)) {
            const auto [first, second] = find_two_bmus(row.values, model.arrays[t]);
            const std::size_t gap = first > second ? first - second : second - first;
            if (gap > 1) {
                ++marks.event_count_t[t];
                marks.flagged[t * m + first] = 1;
                marks.flagged[t * m + second] = 1;
            }
        }
    }
    return marks;
}

VizBundle build_bundle(const SotmModel& model, const PanelDataset& panel,
                       std::span<const std::string> trajectory_entities,
                       std::map<std::string, std::string> groups,
                       std::optional<std::size_t> underlay) {
    if (underlay && *underlay >= model.dim()) {
        throw DataError("underlay variable index out of range");
    }
    VizBundle bundle;
    bundle.sammon = sammon_1d(model);
    bundle.unit_colors = cielab_unit_colors(bundle.sammon.coords);
    bundle.planes = feature_planes(model);
    bundle.frequency = frequency_plane(model, panel);
    bundle.marks = topographic_marks(model, panel);
    bundle.trajectories = trajectories(model, panel, trajectory_entities);
    bundle.groups = std::move(groups);
    bundle.underlay = underlay;
    return bundle;
}

std::string bundle_to_json(const SotmModel& model, const VizBundle& bundle) {
    const std::size_t m = model.units();
    const std::size_t t_count = model.periods();

    auto nest = [&](const auto& flat, auto convert) {
        nlohmann::json outer = nlohmann::json::array();
        for (std::size_t t = 0; t < t_count; ++t) {
            nlohmann::json inner = nlohmann::json::array();
            for (std::size_t i = 0; i < m; ++i) inner.push_back(convert(flat[t * m + i]));
            outer.push_back(std::move(inner));
        }
        return outer;
    };
    auto identity = [](double v) { return v; };
    auto hex = [](Rgb c) { return to_hex(c); };
    auto flag = [](std::uint8_t b) { return b != 0; };

    nlohmann::json doc;
    doc["schema"] = "sotm-bundle";
    doc["schema_version"] = 1;
    doc["units"] = m;
    doc["periods"] = t_count;
    doc["times"] = model.times;
    doc["variables"] = model.variables;
    doc["sammon"] = {
        {"coords", nest(bundle.sammon.coords, identity)},
        {"stress", bundle.sammon.stress},
        {"iterations", bundle.sammon.iterations},
        {"stress_trace", bundle.sammon.stress_trace},
    };
    doc["unit_colors"] = nest(bundle.unit_colors, hex);
    nlohmann::json planes = nlohmann::json::array();
    nlohmann::json plane_colors = nlohmann::json::array();
    for (std::size_t v = 0; v < model.dim(); ++v) {
        planes.push_back(nest(bundle.planes.values[v], identity));
        plane_colors.push_back(nest(bundle.planes.colors[v], hex));
    }
    doc["feature_planes"] = std::move(planes);
    doc["feature_plane_colors"] = std::move(plane_colors);
    doc["frequency"] = nest(bundle.frequency.counts, [](std::uint64_t c) { return c; });
    doc["idle"] = nest(bundle.frequency.idle, flag);
    doc["topographic"] = {
        {"event_counts", bundle.marks.event_count_t},
        {"flagged", nest(bundle.marks.flagged, flag)},
    };
    nlohmann::json trajs = nlohmann::json::array();
    for (const Trajectory& traj : bundle.trajectories) {
        nlohmann::json points = nlohmann::json::array();
        for (const TrajectoryPoint& p : traj.points) {
            points.push_back(nlohmann::json::array({p.t, p.unit}));
        }
        nlohmann::json entry = {{"entity", traj.entity}, {"points", std::move(points)}};
        if (auto it = bundle.groups.find(traj.entity); it != bundle.groups.end()) {
            entry["group"] = it->second;
        }
        trajs.push_back(std::move(entry));
    }
    doc["trajectories"] = std::move(trajs);
    if (bundle.underlay) doc["underlay_variable"] = model.variables[*bundle.underlay];
    return doc.dump(2);
}

namespace {

std::string sammon_net_svg(const SotmModel& model, const VizBundle& bundle) {
    const std::size_t m = model.units();
    const std::size_t t_count = model.periods();
    GridLayout g{.units = m, .periods = t_count};
    const double plot_height = 280.0;
    const double top = 30.0, bottom = 36.0;
    svg::Document doc(g.width(), top + plot_height + bottom);

    const auto [lo_it, hi_it] =
        std::minmax_element(bundle.sammon.coords.begin(), bundle.sammon.coords.end());
    const double lo = *lo_it;
    const double range = *hi_it - *lo_it;
    auto ypos = [&](double coord) {
        const double u = range > 0.0 ? (coord - lo) / range : 0.5;
        return top + (1.0 - u) * plot_height;
    };
    auto at = [&](std::size_t i, std::size_t t) { return bundle.sammon.coords[t * m + i]; };

    doc.text(g.left, 19.0, "unit coordinates over time (solid: data topology, dashed: time topology)",
             13.0);
    // Time topology first so data-topology lines draw on top.
    for (std::size_t t = 0; t + 1 < t_count; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            doc.line(g.cx(t), ypos(at(i, t)), g.cx(t + 1), ypos(at(i, t + 1)), "#999999", 1.0,
                     true);
        }
    }
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i + 1 < m; ++i) {
            doc.line(g.cx(t), ypos(at(i, t)), g.cx(t), ypos(at(i + 1, t)), "#555555", 1.2);
        }
    }
    for (std::size_t t = 0; t < t_count; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t idx = t * m + i;
            const bool flagged = bundle.marks.flagged[idx] != 0;
            doc.circle(g.cx(t), ypos(at(i, t)), 4.0, to_hex(bundle.unit_colors[idx]),
                       flagged ? "#d62728" : "#444444", flagged ? 2.0 : 0.6);
        }
    }
    const std::size_t step = std::max<std::size_t>(1, (t_count + 11) / 12);
    for (std::size_t t = 0; t < t_count; t += step) {
        doc.text(g.cx(t), top + plot_height + 16.0, model.times[t], 10.0, "middle");
    }
    return doc.str();
}

std::string quality_svg(const QualityReport& report) {
    const double width = 620.0, height = 320.0;
    const double left = 52.0, right = 140.0, top = 30.0, bottom = 40.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    svg::Document doc(width, height);
    doc.text(left, 19.0, "property measures over time", 13.0);

    const std::size_t t_count = report.times.size();
    double peak = 0.0;
    for (double v : report.qe_t) peak = std::max(peak, v);
    for (double v : report.dm_t) peak = std::max(peak, v);
    for (double v : report.te_t) peak = std::max(peak, v);
    for (double v : report.sc_t) peak = std::max(peak, v);
    if (peak <= 0.0) peak = 1.0;

    auto xpos = [&](std::size_t t) {
        return t_count > 1
                   ? left + plot_w * static_cast<double>(t) / static_cast<double>(t_count - 1)
                   : left + plot_w / 2.0;
    };
    auto ypos = [&](double v) { return top + plot_h * (1.0 - v / peak); };

    doc.line(left, top + plot_h, left + plot_w, top + plot_h, "#888888", 1.0);
    doc.line(left, top, left, top + plot_h, "#888888", 1.0);
    doc.text(left - 6.0, top + 4.0, format_value(peak), 10.0, "end");
    doc.text(left - 6.0, top + plot_h + 4.0, "0", 10.0, "end");

    struct Series {
        const char* name;
        const char* color;
        const std::vector<double>* data;
        std::size_t t_offset;
    };
    const Series series[] = {
        {"qe", "#1f77b4", &report.qe_t, 0},
        {"dm", "#ff7f0e", &report.dm_t, 0},
        {"te", "#2ca02c", &report.te_t, 0},
        {"sc", "#d62728", &report.sc_t, 1},
    };
    double legend_y = top + 12.0;
    for (const Series& s : series) {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t k = 0; k < s.data->size(); ++k) {
            pts.emplace_back(xpos(k + s.t_offset), ypos((*s.data)[k]));
        }
        if (pts.size() > 1) {
            doc.polyline(pts, s.color, 1.6);
        }
        for (const auto& [px, py] : pts) doc.circle(px, py, 2.2, s.color);
        doc.rect(left + plot_w + 16.0, legend_y - 8.0, 10.0, 10.0, s.color);
        doc.text(left + plot_w + 31.0, legend_y + 1.0, s.name, 11.0);
        legend_y += 17.0;
    }
    const std::size_t step = std::max<std::size_t>(1, (t_count + 11) / 12);
    for (std::size_t t = 0; t < t_count; t += step) {
        doc.text(xpos(t), top + plot_h + 16.0, report.times[t], 10.0, "middle");
    }
    return doc.str();
}

std::string trajectories_svg(const SotmModel& model, const VizBundle& bundle) {
    const std::size_t m = model.units();
    GridLayout g{.units = m, .periods = model.periods()};
    svg::Document doc(g.width(), g.height());

    const std::vector<Rgb>& underlay_colors =
        bundle.underlay ? bundle.planes.colors[*bundle.underlay] : bundle.unit_colors;
    const std::string title = bundle.underlay
                                  ? "trajectories over " + model.variables[*bundle.underlay]
                                  : "trajectories";
    draw_axes(doc, g, model, title);
    for (std::size_t t = 0; t < g.periods; ++t) {
        for (std::size_t i = 0; i < m; ++i) {
            doc.rect(g.x(t), g.y(i), g.cell - 1.0, g.cell - 1.0,
                     to_hex(underlay_colors[t * m + i]));
        }
    }

    // Stable group -> color assignment by sorted group name.
    std::map<std::string, std::size_t> group_index;
    for (const auto& [entity, group] : bundle.groups) {
        group_index.emplace(group, 0);
    }
    {
        std::size_t k = 0;
        for (auto& [group, idx] : group_index) idx = k++;
    }

    for (std::size_t e = 0; e < bundle.trajectories.size(); ++e) {
        const Trajectory& traj = bundle.trajectories[e];
        std::string stroke = "#333333";
        if (auto it = bundle.groups.find(traj.entity); it != bundle.groups.end()) {
            stroke = to_hex(category_color(group_index[it->second]));
        }
        // Small deterministic vertical offset to reduce overplotting.
        const double jitter =
            (static_cast<double>(e % 7) - 3.0) * 2.0 + (static_cast<double>(e % 3) - 1.0);
        std::vector<std::pair<double, double>> pts;
        for (const TrajectoryPoint& p : traj.points) {
            pts.emplace_back(g.cx(p.t), g.cy(p.unit) + jitter);
        }
        if (pts.size() > 1) doc.polyline(pts, stroke, 1.2, 0.7);
        for (const auto& [px, py] : pts) doc.circle(px, py, 1.8, stroke);
    }
    return doc.str();
}

} // namespace

void render_report(const SotmModel& model, const PanelDataset& panel, const VizBundle& bundle,
                   const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create report directory: " + out_dir.string());

    write_text_file(out_dir / "sotm-grid.svg",
                    grid_svg(model, bundle.unit_colors, "unit distances (blue to yellow)"));
    write_text_file(out_dir / "sammon-net.svg", sammon_net_svg(model, bundle));

    std::vector<std::string> used_names;
    for (std::size_t v = 0; v < model.dim(); ++v) {
        std::string base = sanitize_filename(model.variables[v]);
        std::string name = "plane-" + base + ".svg";
        std::size_t suffix = 2;
        while (std::find(used_names.begin(), used_names.end(), name) != used_names.end()) {
            name = "plane-" + base + "-" + std::to_string(suffix++) + ".svg";
        }
        used_names.push_back(name);

        const auto [lo_it, hi_it] =
            std::minmax_element(bundle.planes.values[v].begin(), bundle.planes.values[v].end());
        std::vector<std::string> titles(bundle.planes.values[v].size());
        for (std::size_t idx = 0; idx < titles.size(); ++idx) {
            titles[idx] = format_value(bundle.planes.values[v][idx]);
        }
        const std::string title = model.variables[v] + "  (min " + format_value(*lo_it) +
                                  ", max " + format_value(*hi_it) + ")";
        write_text_file(out_dir / name,
                        grid_svg(model, bundle.planes.colors[v], title, &titles));
    }

    {
        // Frequency plane: counts on the blue ramp, idle units grey.
        std::uint64_t peak = 0;
        for (std::uint64_t c : bundle.frequency.counts) peak = std::max(peak, c);
        std::vector<Rgb> colors(bundle.frequency.counts.size());
        std::vector<std::string> titles(colors.size());
        for (std::size_t idx = 0; idx < colors.size(); ++idx) {
            const std::uint64_t c = bundle.frequency.counts[idx];
            colors[idx] = c == 0 ? Rgb{0x80, 0x80, 0x80}
                                 : blues_ramp(peak > 0 ? static_cast<double>(c) /
                                                             static_cast<double>(peak)
                                                       : 0.0);
            titles[idx] = std::to_string(c);
        }
        write_text_file(out_dir / "frequency.svg",
                        grid_svg(model, colors, "data frequency (grey: idle unit)", &titles));
    }

    write_text_file(out_dir / "quality.svg", quality_svg(quality(model, panel)));
    if (!bundle.trajectories.empty()) {
        write_text_file(out_dir / "trajectories.svg", trajectories_svg(model, bundle));
    }
    write_text_file(out_dir / "bundle.json", bundle_to_json(model, bundle) + "\n");
}

} // namespace sotm
