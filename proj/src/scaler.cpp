#include "sotm/scaler.hpp"

#include <cmath>

#include "sotm/errors.hpp"

namespace sotm {

namespace {

void check_dim(const Scaler& s, std::size_t n) {
    if (s.dim() != n) {
        throw DimensionMismatch("scaler dimension " + std::to_string(s.dim()) +
                                " does not match vector dimension " + std::to_string(n));
    }
}

PanelDataset transform_rows(const PanelDataset& panel, const Scaler& scaler, bool forward) {
    std::vector<std::vector<PanelRow>> slices(panel.periods());
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        slices[t].reserve(panel.rows_at(t));
        for (const PanelRow& row : panel.slice(t)) {
            slices[t].push_back(PanelRow{
                row.entity,
                forward ? scaler.standardize(row.values) : scaler.destandardize(row.values)});
        }
    }
    return PanelDataset::create(panel.entities(), panel.times(), panel.variables(),
                                std::move(slices));
}

} // namespace

std::vector<double> Scaler::standardize(std::span<const double> v) const {
    check_dim(*this, v.size());
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = (v[k] - means[k]) / stds[k];
    return out;
}

std::vector<double> Scaler::destandardize(std::span<const double> v) const {
    check_dim(*this, v.size());
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k] * stds[k] + means[k];
    return out;
}

Scaler Scaler::identity(std::size_t dim) {
    return Scaler{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

std::pair<PanelDataset, Scaler> standardize(const PanelDataset& panel) {
    const std::size_t d = panel.dim();
    const std::size_t n = panel.total_rows();
    if (n < 2) throw DataError("standardization needs at least two rows");

    const auto rows = panel.pooled_values();
    Scaler scaler;
    scaler.means.assign(d, 0.0);
    scaler.stds.assign(d, 0.0);
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < d; ++k) scaler.means[k] += row[k];
    }
    for (std::size_t k = 0; k < d; ++k) scaler.means[k] /= static_cast<double>(n);
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < d; ++k) {
            const double dev = row[k] - scaler.means[k];
            scaler.stds[k] += dev * dev;
        }
    }
    for (std::size_t k = 0; k < d; ++k) {
        scaler.stds[k] = std::sqrt(scaler.stds[k] / static_cast<double>(n - 1));
        if (scaler.stds[k] <= 0.0) throw ZeroVarianceVariable(panel.variables()[k]);
    }
    return {transform_rows(panel, scaler, true), scaler};
}

PanelDataset apply_scaler(const PanelDataset& panel, const Scaler& scaler) {
    check_dim(scaler, panel.dim());
    return transform_rows(panel, scaler, true);
}

} // namespace sotm
