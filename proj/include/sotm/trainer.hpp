#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sotm/model.hpp"
#include "sotm/panel.hpp"
#include "sotm/report.hpp"

namespace sotm {

// Row views of one time slice (or of the pooled dataset).
using SliceData = std::vector<std::span<const double>>;

// Lays M units along the first principal component of the slice: unit i sits
// at mean + s_i * pc with scores s_i linearly spaced from -2*lambda to
// +2*lambda, lambda being the (population) std of the slice projections onto
// the component. The component's largest-magnitude loading is made positive
// so the orientation is deterministic. Throws DegenerateSlice when the slice
// carries no variance.
UnitArray pca_init(const SliceData& slice, std::size_t units);

// Best-matching unit: index of the nearest reference vector (Euclidean) and
// that distance. Ties break to the lowest index.
std::pair<std::size_t, double> find_bmu(std::span<const double> x, const UnitArray& array);

// First and second BMU (the second excludes the first; both tie-break to the
// lowest index). Requires at least two units.
std::pair<std::size_t, std::size_t> find_two_bmus(std::span<const double> x,
                                                  const UnitArray& array);

// Gaussian coupling between array positions i and c: exp(-(i-c)^2 / (2 sigma^2)).
double neighborhood_weight(std::size_t i, std::size_t c, double sigma);

// One batch update: every BMU is computed against the input array, then each
// unit moves to the neighborhood-weighted mean of the whole slice. A unit
// whose accumulated weight underflows to zero keeps its vector.
UnitArray batch_cycle(const UnitArray& array, const SliceData& slice, double sigma);

// Runs batch cycles until the max per-component displacement drops below
// `tol` or `cycles` updates have been applied. cycles == 0 returns the
// initialization unchanged.
UnitArray train_slice(UnitArray init, const SliceData& slice, double sigma, std::size_t cycles,
                      double tol);

// The full training loop: A(1) from PCA, trained to convergence; each later
// A(t) starts as a copy of the trained A(t-1) and adjusts for a fixed number
// of cycles; sigma stays constant across t. `panel` must already be
// standardized; `scaler` is recorded in the model.
SotmModel train_sotm(const PanelDataset& panel, const TrainConfig& config, Scaler scaler);

// Time-blind baseline: one array trained to convergence on the pooled data.
UnitArray train_pooled_baseline(const PanelDataset& panel, std::size_t units, double sigma,
                                std::size_t max_cycles = 100, double tol = 1e-6);

struct SweepRow {
    double sigma;
    QualityReport report;
};

// Trains one map per sigma (everything else identical) and reports the four
// measures for each.
std::vector<SweepRow> sigma_sweep(const PanelDataset& panel, const TrainConfig& base,
                                  std::span<const double> sigmas);

} // namespace sotm
