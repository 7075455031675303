#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sotm/panel.hpp"

namespace sotm {

// Per-variable affine transform between original units and the pooled
// zero-mean/unit-std space the map is trained in.
struct Scaler {
    std::vector<double> means;
    std::vector<double> stds; // each > 0

    std::size_t dim() const { return means.size(); }

    std::vector<double> standardize(std::span<const double> v) const;
    std::vector<double> destandardize(std::span<const double> v) const;

    static Scaler identity(std::size_t dim);
};

// Pooled per-variable standardization: sample mean and sample standard
// deviation (denominator N-1) over all rows of all slices. Throws
// ZeroVarianceVariable when a pooled std is zero.
std::pair<PanelDataset, Scaler> standardize(const PanelDataset& panel);

// Applies an existing scaler to every row (used when measuring a saved
// model against new data in the model's own space).
PanelDataset apply_scaler(const PanelDataset& panel, const Scaler& scaler);

} // namespace sotm
