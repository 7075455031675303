#include "sotm/model.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "sotm/errors.hpp"

namespace sotm {

namespace {

constexpr int kSchemaVersion = 1;

} // namespace

void TrainConfig::validate() const {
    if (units < 2) throw DataError("unit count must be at least 2");
    if (!std::isfinite(sigma) || sigma <= 0.0) throw DataError("sigma must be finite and positive");
    if (first_slice_max_cycles < 1) throw DataError("first_slice_max_cycles must be at least 1");
    if (!(first_slice_tol > 0.0)) throw DataError("first_slice_tol must be positive");
    if (cycles_per_slice < 1) throw DataError("cycles_per_slice must be at least 1");
}

void SotmModel::validate() const {
    config.validate();
    if (arrays.empty()) throw DataError("model has no arrays (T >= 1 required)");
    if (times.size() != arrays.size()) throw DataError("time labels do not match array count");
    if (std::set<std::string>(times.begin(), times.end()).size() != times.size()) {
        throw DataError("duplicate time labels in model");
    }
    const std::size_t m = arrays.front().units();
    const std::size_t d = arrays.front().dim();
    if (m < 2) throw DataError("model needs at least two units per array");
    if (m != config.units) throw DataError("array unit count disagrees with config");
    if (variables.size() != d) throw DataError("variable names do not match vector dimension");
    if (scaler.dim() != d) throw DataError("scaler dimension does not match vector dimension");
    for (double s : scaler.stds) {
        if (!std::isfinite(s) || s <= 0.0) throw DataError("scaler stds must be finite and positive");
    }
    for (double v : scaler.means) {
        if (!std::isfinite(v)) throw DataError("scaler means must be finite");
    }
    for (const UnitArray& a : arrays) {
        if (a.units() != m || a.dim() != d) throw DataError("arrays differ in shape");
        if (!a.all_finite()) throw DataError("model holds non-finite reference vectors");
    }
}

void save_model(const SotmModel& model, const std::filesystem::path& path) {
    model.validate();

    nlohmann::json doc;
    doc["schema"] = "sotm-model";
    doc["schema_version"] = kSchemaVersion;
    doc["config"] = {
        {"units", model.config.units},
        {"sigma", model.config.sigma},
        {"first_slice_max_cycles", model.config.first_slice_max_cycles},
        {"first_slice_tol", model.config.first_slice_tol},
        {"cycles_per_slice", model.config.cycles_per_slice},
        {"seed", model.config.seed},
    };
    doc["variables"] = model.variables;
    doc["times"] = model.times;
    doc["scaler"] = {{"means", model.scaler.means}, {"stds", model.scaler.stds}};

    nlohmann::json arrays = nlohmann::json::array();
    for (const UnitArray& a : model.arrays) {
        nlohmann::json units = nlohmann::json::array();
        for (std::size_t i = 0; i < a.units(); ++i) {
            units.push_back(std::vector<double>(a.row(i), a.row(i) + a.dim()));
        }
        arrays.push_back(std::move(units));
    }
    doc["arrays"] = std::move(arrays);

    std::ofstream out(path);
    if (!out) throw IoError("cannot write model file: " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed while writing model file: " + path.string());
}

SotmModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path.string());

    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptFile("model file is not valid JSON: " + path.string() + " (" + e.what() + ")");
    }

    try {
        if (doc.value("schema", "") != "sotm-model") {
            throw CorruptFile("not a model file: " + path.string());
        }
        const int version = doc.at("schema_version").get<int>();
        if (version != kSchemaVersion) {
            throw SchemaVersionMismatch("model schema version " + std::to_string(version) +
                                        " is not supported (expected " +
                                        std::to_string(kSchemaVersion) + ")");
        }

        SotmModel model;
        const auto& cfg = doc.at("config");
        model.config.units = cfg.at("units").get<std::size_t>();
        model.config.sigma = cfg.at("sigma").get<double>();
        model.config.first_slice_max_cycles = cfg.at("first_slice_max_cycles").get<std::size_t>();
        model.config.first_slice_tol = cfg.at("first_slice_tol").get<double>();
        model.config.cycles_per_slice = cfg.at("cycles_per_slice").get<std::size_t>();
        model.config.seed = cfg.at("seed").get<std::uint64_t>();
        model.variables = doc.at("variables").get<std::vector<std::string>>();
        model.times = doc.at("times").get<std::vector<std::string>>();
        model.scaler.means = doc.at("scaler").at("means").get<std::vector<double>>();
        model.scaler.stds = doc.at("scaler").at("stds").get<std::vector<double>>();

        const auto& arrays = doc.at("arrays");
        if (!arrays.is_array() || arrays.empty()) throw CorruptFile("model arrays missing or empty");
        const std::size_t d = model.variables.size();
        for (const auto& units : arrays) {
            UnitArray a(units.size(), d);
            for (std::size_t i = 0; i < a.units(); ++i) {
                const auto vec = units.at(i).get<std::vector<double>>();
                if (vec.size() != d) throw CorruptFile("reference vector has wrong dimension");
                std::copy(vec.begin(), vec.end(), a.row(i));
            }
            model.arrays.push_back(std::move(a));
        }

        try {
            model.validate();
        } catch (const DataError& e) {
            throw CorruptFile("model file violates invariants: " + std::string(e.what()));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw CorruptFile("model file has unexpected structure: " + path.string() + " (" +
                          e.what() + ")");
    }
}

} // namespace sotm
