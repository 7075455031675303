#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sotm/scaler.hpp"
#include "sotm/unit_array.hpp"

namespace sotm {

struct TrainConfig {
    std::size_t units = 5;                    // M, vertical unit count (>= 2)
    double sigma = 1.6;                       // Gaussian neighborhood radius, constant over time
    std::size_t first_slice_max_cycles = 100; // first array trains until convergence or this cap
    double first_slice_tol = 1e-6;            // max per-component displacement counting as converged
    std::size_t cycles_per_slice = 10;        // batch cycles for every later array
    std::uint64_t seed = 0;                   // recorded provenance; training itself is seed-free

    // Throws DataError on out-of-range values.
    void validate() const;
};

// Trained map: one reference-vector array per time slice, ascending in time,
// all in standardized space, plus the scaler that defines that space.
// Immutable after training; safe to share across threads.
struct SotmModel {
    std::vector<UnitArray> arrays;      // length T
    TrainConfig config;
    Scaler scaler;
    std::vector<std::string> times;     // length T, copied from the panel
    std::vector<std::string> variables; // length D

    std::size_t units() const { return arrays.empty() ? 0 : arrays.front().units(); }
    std::size_t dim() const { return arrays.empty() ? 0 : arrays.front().dim(); }
    std::size_t periods() const { return arrays.size(); }

    // Enforces the structural invariants (T >= 1, M >= 2, consistent shapes,
    // finite vectors, positive stds). Throws DataError.
    void validate() const;
};

// Single JSON document, schema version 1, floats written with round-trip-safe
// precision. load(save(m)) reproduces every reference vector bit-exactly.
void save_model(const SotmModel& model, const std::filesystem::path& path);
SotmModel load_model(const std::filesystem::path& path);

} // namespace sotm
