#pragma once

#include <cstddef>
#include <vector>

#include "sotm/model.hpp"

namespace sotm {

struct SammonOptions {
    std::size_t max_iterations = 500;
    double initial_step = 0.3;  // scale of the pseudo-Newton step, halved on stress increase
    double relative_tolerance = 1e-9;
};

// One-dimensional embedding of all M*T units. Coordinates are indexed
// t * M + i (time-major, matching every other per-unit grid in this library).
struct SammonResult {
    std::vector<double> coords;
    double stress = 0.0;
    std::size_t iterations = 0;
    std::vector<double> stress_trace; // stress after every accepted step, front = initialization
};

// Minimizes the distance-weighted stress between the units' pairwise
// Euclidean distances in data space and 1-D coordinate differences.
// Initialized from the units' first-principal-component scores; each
// iteration takes a pseudo-Newton step, halving it until the stress does not
// increase, so the trace is non-increasing. Zero input distances are clamped
// to 1e-12. Throws AllUnitsIdentical when no two units differ.
SammonResult sammon_1d(const SotmModel& model, const SammonOptions& options = {});

} // namespace sotm
