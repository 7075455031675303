#pragma once

#include <utility>
#include <vector>

#include "sotm/model.hpp"
#include "sotm/panel.hpp"
#include "sotm/report.hpp"

namespace sotm {

// All measures take the panel in the model's standardized space and require
// matching variables and time labels (MismatchedPanel otherwise). Every
// aggregate is the arithmetic mean of its per-t sequence.

// Mean distance from each data point to its BMU, per slice.
std::pair<double, std::vector<double>> quantization_error(const SotmModel& model,
                                                          const PanelDataset& panel);

// Neighborhood-weighted squared-distance fit, per slice, using the model's
// sigma (or an explicit override).
std::pair<double, std::vector<double>> distortion(const SotmModel& model,
                                                  const PanelDataset& panel);
std::pair<double, std::vector<double>> distortion(const SotmModel& model,
                                                  const PanelDataset& panel, double sigma);

// Share of data points whose two nearest units are non-adjacent, per slice.
std::pair<double, std::vector<double>> topographic_error(const SotmModel& model,
                                                         const PanelDataset& panel);

// Mean distance between same-index units of consecutive arrays; a pure model
// property. The per-t sequence covers consecutive pairs (length T-1); the
// aggregate is their mean, and 0 when T == 1.
std::pair<double, std::vector<double>> structural_change(const SotmModel& model);

// Bundles the four measures into one report.
QualityReport quality(const SotmModel& model, const PanelDataset& panel);

} // namespace sotm
