#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sotm/errors.hpp"
#include "sotm/kernels.hpp"
#include "sotm/metrics.hpp"
#include "sotm/model.hpp"
#include "sotm/panel.hpp"
#include "sotm/report.hpp"
#include "sotm/scaler.hpp"
#include "sotm/toygen.hpp"
#include "sotm/trainer.hpp"
#include "sotm/viz.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

// "a:b:step" inclusive of both ends, or a comma list, or a single value.
std::vector<double> parse_sigma_list(const std::string& spec) {
    std::vector<double> sigmas;
    if (spec.find(':') != std::string::npos) {
        double start, stop, step;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 || step <= 0.0) {
            throw sotm::DataError("bad sigma range '" + spec + "', expected start:stop:step");
        }
        for (double s = start; s <= stop + 1e-9; s += step) sigmas.push_back(s);
    } else {
        std::string token;
        std::stringstream stream(spec);
        while (std::getline(stream, token, ',')) {
            try {
                sigmas.push_back(std::stod(token));
            } catch (const std::exception&) {
                throw sotm::DataError("bad sigma value '" + token + "'");
            }
        }
    }
    if (sigmas.empty()) throw sotm::DataError("empty sigma list");
    for (double s : sigmas) {
        if (s <= 0.0) throw sotm::DataError("sigma values must be positive");
    }
    return sigmas;
}

std::vector<std::string> parse_entity_list(const std::string& spec) {
    std::vector<std::string> ids;
    std::string token;
    std::stringstream stream(spec);
    while (std::getline(stream, token, ',')) {
        if (!token.empty()) ids.push_back(token);
    }
    return ids;
}

std::filesystem::path default_out_dir(const std::string& flag_value, const char* fallback) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SOTM_OUT_DIR")) return env;
    return fallback;
}

struct TrainFlags {
    std::string input;
    std::size_t units = 5;
    double sigma = 1.6;
    std::size_t first_slice_max_cycles = 100;
    double first_slice_tol = 1e-6;
    std::size_t cycles_per_slice = 10;
    bool impute = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("-i,--input", input, "panel CSV (entity,time,<vars...>)")->required();
        cmd->add_option("-u,--units", units, "vertical unit count M");
        cmd->add_option("--first-slice-max-cycles", first_slice_max_cycles,
                        "cycle cap for the first array");
        cmd->add_option("--first-slice-tol", first_slice_tol,
                        "convergence tolerance (max per-component displacement)");
        cmd->add_option("--cycles-per-slice", cycles_per_slice,
                        "batch cycles for each later array");
        cmd->add_flag("--impute-mean", impute, "fill missing cells with the pooled variable mean");
    }

    sotm::PanelDataset load() const {
        return sotm::load_panel_csv(
            input, impute ? sotm::MissingPolicy::ImputeMean : sotm::MissingPolicy::Reject);
    }

    sotm::TrainConfig config() const {
        sotm::TrainConfig cfg;
        cfg.units = units;
        cfg.sigma = sigma;
        cfg.first_slice_max_cycles = first_slice_max_cycles;
        cfg.first_slice_tol = first_slice_tol;
        cfg.cycles_per_slice = cycles_per_slice;
        return cfg;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Self-organizing time map: per-time-slice batch SOM training, "
                 "quality measures and report rendering"};
    app.require_subcommand(1);

    // toygen
    auto* toygen_cmd = app.add_subcommand("toygen", "generate the synthetic demo panel");
    std::string toy_out = "toy-panel.csv";
    std::string toy_groups_out = "toy-groups.csv";
    sotm::ToyWeights preset = sotm::default_preset();
    toygen_cmd->add_option("-o,--out", toy_out, "panel CSV to write");
    toygen_cmd->add_option("--groups-out", toy_groups_out, "entity,group sidecar CSV to write");
    toygen_cmd->add_option("--seed", preset.seed, "RNG seed");
    toygen_cmd->add_option("--groups", preset.groups, "number of entity groups");
    toygen_cmd->add_option("--entities-per-group", preset.entities_per_group,
                           "entities in each group");
    toygen_cmd->add_option("--periods", preset.periods, "number of time periods");

    // train
    auto* train_cmd = app.add_subcommand("train", "train a map from a panel CSV");
    TrainFlags train_flags;
    train_flags.attach(train_cmd);
    train_cmd->add_option("-s,--sigma", train_flags.sigma, "neighborhood radius");
    std::string train_model_out = "model.json";
    std::string train_quality_out;
    std::uint64_t train_seed = 0;
    train_cmd->add_option("-m,--model", train_model_out, "model JSON to write");
    train_cmd->add_option("--quality-out", train_quality_out,
                          "quality table CSV (default: <model>-quality.csv)");
    train_cmd->add_option("--seed", train_seed, "provenance seed recorded in the model");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "train one map per sigma and tabulate measures");
    TrainFlags sweep_flags;
    sweep_flags.attach(sweep_cmd);
    std::string sweep_sigmas = "0.4:8:0.4";
    std::string sweep_out = "sweep.csv";
    sweep_cmd->add_option("--sigmas", sweep_sigmas, "sigma list: start:stop:step or a,b,c");
    sweep_cmd->add_option("-o,--out", sweep_out, "sweep table CSV to write");

    // quality
    auto* quality_cmd = app.add_subcommand("quality", "measure a saved model against a panel");
    std::string q_model, q_input, q_csv, q_json;
    bool q_impute = false;
    quality_cmd->add_option("-m,--model", q_model, "model JSON")->required();
    quality_cmd->add_option("-i,--input", q_input, "panel CSV")->required();
    quality_cmd->add_option("--out-csv", q_csv, "quality table CSV to write");
    quality_cmd->add_option("--out-json", q_json, "quality JSON to write");
    quality_cmd->add_flag("--impute-mean", q_impute, "fill missing cells with the pooled mean");

    // render
    auto* render_cmd = app.add_subcommand("render", "write the SVG/JSON report for a saved model");
    std::string r_model, r_input, r_dir, r_groups, r_entities = "all", r_underlay;
    bool r_impute = false;
    render_cmd->add_option("-m,--model", r_model, "model JSON")->required();
    render_cmd->add_option("-i,--input", r_input, "panel CSV")->required();
    render_cmd->add_option("-o,--out-dir", r_dir,
                           "report directory (default: $SOTM_OUT_DIR or ./sotm-report)");
    render_cmd->add_option("--groups", r_groups, "entity,group sidecar CSV for coloring");
    render_cmd->add_option("--entities", r_entities,
                           "trajectory selection: 'all', 'none' or id,id,...");
    render_cmd->add_option("--underlay", r_underlay,
                           "variable name drawn behind the trajectories");
    render_cmd->add_flag("--impute-mean", r_impute, "fill missing cells with the pooled mean");

    // baseline
    auto* base_cmd = app.add_subcommand("baseline", "train the time-blind pooled map");
    TrainFlags base_flags;
    base_flags.attach(base_cmd);
    base_cmd->add_option("-s,--sigma", base_flags.sigma, "neighborhood radius");
    std::string base_model_out = "baseline.json";
    std::string base_units_out;
    base_cmd->add_option("-m,--model", base_model_out, "baseline model JSON to write");
    base_cmd->add_option("--units-out", base_units_out,
                         "per-unit CSV (count + de-standardized values) to write");

    // project
    auto* project_cmd = app.add_subcommand("project", "trajectory CSV for selected entities");
    std::string p_model, p_input, p_entities = "all", p_out = "trajectories.csv";
    bool p_impute = false;
    project_cmd->add_option("-m,--model", p_model, "model JSON")->required();
    project_cmd->add_option("-i,--input", p_input, "panel CSV")->required();
    project_cmd->add_option("--entities", p_entities, "selection: 'all' or id,id,...");
    project_cmd->add_option("-o,--out", p_out, "trajectory CSV to write");
    project_cmd->add_flag("--impute-mean", p_impute, "fill missing cells with the pooled mean");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (toygen_cmd->parsed()) {
            // Shape flags may change the group count; w4/w5 are per
            // (variable, group), so replicate each variable's weight across
            // the requested groups.
            const sotm::ToyWeights defaults = sotm::default_preset();
            preset.w4.assign(preset.variables * preset.groups, 0.0);
            preset.w5.assign(preset.variables * preset.groups, 0.0);
            for (std::size_t r = 0; r < preset.variables; ++r) {
                for (std::size_t g = 0; g < preset.groups; ++g) {
                    preset.w4[r * preset.groups + g] = defaults.w4[r * defaults.groups];
                    preset.w5[r * preset.groups + g] = defaults.w5[r * defaults.groups];
                }
            }
            const sotm::ToyPanel toy = sotm::generate_toy(preset);
            sotm::write_panel_csv(toy.panel, toy_out);
            sotm::write_groups_csv(toy.panel.entities(), toy.groups, toy_groups_out);
            std::cout << "wrote " << toy_out << " (" << toy.panel.total_rows() << " rows) and "
                      << toy_groups_out << '\n';
        } else if (train_cmd->parsed()) {
            const sotm::PanelDataset raw = train_flags.load();
            auto [panel, scaler] = sotm::standardize(raw);
            sotm::TrainConfig cfg = train_flags.config();
            cfg.seed = train_seed;
            const sotm::SotmModel model = sotm::train_sotm(panel, cfg, scaler);
            sotm::save_model(model, train_model_out);
            std::cout << "wrote " << train_model_out << " (" << model.units() << "x"
                      << model.periods() << " units)\n";
            if (train_quality_out.empty()) {
                std::filesystem::path derived(train_model_out);
                derived.replace_extension();
                train_quality_out = derived.string() + "-quality.csv";
            }
            sotm::write_quality_csv(sotm::quality(model, panel), train_quality_out);
            std::cout << "wrote " << train_quality_out << '\n';
        } else if (sweep_cmd->parsed()) {
            const std::vector<double> sigmas = parse_sigma_list(sweep_sigmas);
            const sotm::PanelDataset raw = sweep_flags.load();
            auto [panel, scaler] = sotm::standardize(raw);
            const auto rows = sotm::sigma_sweep(panel, sweep_flags.config(), sigmas);
            std::ofstream out(sweep_out);
            if (!out) throw sotm::IoError("cannot write sweep CSV: " + sweep_out);
            out << "sigma,qe,dm,te,sc\n";
            char buf[128];
            for (const sotm::SweepRow& row : rows) {
                std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g", row.sigma,
                              row.report.qe_total, row.report.dm_total, row.report.te_total,
                              row.report.sc_total);
                out << buf << '\n';
            }
            if (!out) throw sotm::IoError("failed while writing sweep CSV: " + sweep_out);
            std::cout << "wrote " << sweep_out << " (" << rows.size() << " rows)\n";
        } else if (quality_cmd->parsed()) {
            const sotm::SotmModel model = sotm::load_model(q_model);
            const sotm::PanelDataset raw = sotm::load_panel_csv(
                q_input, q_impute ? sotm::MissingPolicy::ImputeMean : sotm::MissingPolicy::Reject);
            const sotm::PanelDataset panel = sotm::apply_scaler(raw, model.scaler);
            const sotm::QualityReport report = sotm::quality(model, panel);
            if (q_csv.empty() && q_json.empty()) {
                std::cout << sotm::quality_to_json(report) << '\n';
            }
            if (!q_csv.empty()) {
                sotm::write_quality_csv(report, q_csv);
                std::cout << "wrote " << q_csv << '\n';
            }
            if (!q_json.empty()) {
                sotm::write_quality_json(report, q_json);
                std::cout << "wrote " << q_json << '\n';
            }
        } else if (render_cmd->parsed()) {
            const sotm::SotmModel model = sotm::load_model(r_model);
            const sotm::PanelDataset raw = sotm::load_panel_csv(
                r_input, r_impute ? sotm::MissingPolicy::ImputeMean : sotm::MissingPolicy::Reject);
            const sotm::PanelDataset panel = sotm::apply_scaler(raw, model.scaler);
            std::vector<std::string> ids;
            if (r_entities == "all") {
                ids = panel.entities();
            } else if (r_entities != "none") {
                ids = parse_entity_list(r_entities);
            }
            std::map<std::string, std::string> groups;
            if (!r_groups.empty()) groups = sotm::load_groups_csv(r_groups);
            std::optional<std::size_t> underlay;
            if (!r_underlay.empty()) {
                const auto& vars = model.variables;
                const auto it = std::find(vars.begin(), vars.end(), r_underlay);
                if (it == vars.end()) {
                    throw sotm::DataError("underlay variable not in model: " + r_underlay);
                }
                underlay = static_cast<std::size_t>(it - vars.begin());
            }
            const std::filesystem::path dir = default_out_dir(r_dir, "sotm-report");
            const sotm::VizBundle bundle =
                sotm::build_bundle(model, panel, ids, std::move(groups), underlay);
            sotm::render_report(model, panel, bundle, dir);
            std::cout << "wrote report to " << dir.string() << '\n';
        } else if (base_cmd->parsed()) {
            const sotm::PanelDataset raw = base_flags.load();
            auto [panel, scaler] = sotm::standardize(raw);
            const sotm::UnitArray array = sotm::train_pooled_baseline(
                panel, base_flags.units, base_flags.sigma, base_flags.first_slice_max_cycles,
                base_flags.first_slice_tol);

            sotm::SotmModel model;
            model.arrays = {array};
            model.config = base_flags.config();
            model.scaler = scaler;
            model.times = {"pooled"};
            model.variables = panel.variables();
            sotm::save_model(model, base_model_out);
            std::cout << "wrote " << base_model_out << '\n';

            if (!base_units_out.empty()) {
                // Counts over the pooled data plus de-standardized unit values.
                std::vector<std::size_t> counts(array.units(), 0);
                for (const auto& row : panel.pooled_values()) {
                    ++counts[sotm::find_bmu(row, array).first];
                }
                std::ofstream out(base_units_out);
                if (!out) throw sotm::IoError("cannot write units CSV: " + base_units_out);
                out << "unit,count";
                for (const std::string& v : panel.variables()) out << ',' << v;
                out << '\n';
                char buf[64];
                for (std::size_t i = 0; i < array.units(); ++i) {
                    out << i << ',' << counts[i];
                    const auto original = scaler.destandardize(array.row_span(i));
                    for (double v : original) {
                        std::snprintf(buf, sizeof buf, "%.12g", v);
                        out << ',' << buf;
                    }
                    out << '\n';
                }
                if (!out) throw sotm::IoError("failed while writing units CSV: " + base_units_out);
                std::cout << "wrote " << base_units_out << '\n';
            }
        } else if (project_cmd->parsed()) {
            const sotm::SotmModel model = sotm::load_model(p_model);
            const sotm::PanelDataset raw = sotm::load_panel_csv(
                p_input, p_impute ? sotm::MissingPolicy::ImputeMean : sotm::MissingPolicy::Reject);
            const sotm::PanelDataset panel = sotm::apply_scaler(raw, model.scaler);
            const std::vector<std::string> ids =
                p_entities == "all" ? panel.entities() : parse_entity_list(p_entities);
            const auto trajs = sotm::trajectories(model, panel, ids);
            std::ofstream out(p_out);
            if (!out) throw sotm::IoError("cannot write trajectory CSV: " + p_out);
            out << "entity,time,unit\n";
            for (const sotm::Trajectory& traj : trajs) {
                for (const sotm::TrajectoryPoint& point : traj.points) {
                    out << traj.entity << ',' << panel.times()[point.t] << ',' << point.unit
                        << '\n';
                }
            }
            if (!out) throw sotm::IoError("failed while writing trajectory CSV: " + p_out);
            std::cout << "wrote " << p_out << '\n';
        }
    } catch (const sotm::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const sotm::Error& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
