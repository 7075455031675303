#include "sotm/metrics.hpp"

#include <cmath>

#include "sotm/errors.hpp"
#include "sotm/kernels.hpp"
#include "sotm/trainer.hpp"

namespace sotm {

namespace {

void check_match(const SotmModel& model, const PanelDataset& panel) {
    if (model.dim() != panel.dim()) {
        throw MismatchedPanel("panel dimension " + std::to_string(panel.dim()) +
                              " does not match model dimension " + std::to_string(model.dim()));
    }
    if (model.periods() != panel.periods() || model.times != panel.times()) {
        throw MismatchedPanel("panel time labels do not match the model");
    }
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

} // namespace

std::pair<double, std::vector<double>> quantization_error(const SotmModel& model,
                                                          const PanelDataset& panel) {
    check_match(model, panel);
    std::vector<double> per_t(model.periods(), 0.0);
    for (std::size_t t = 0; t < model.periods(); ++t) {
        const UnitArray& array = model.arrays[t];
        double sum = 0.0;
        for (const PanelRow& row : panel.slice(t)) {
            sum += find_bmu(row.values, array).second;
        }
        per_t[t] = sum / static_cast<double>(panel.rows_at(t));
    }
    return {mean(per_t), std::move(per_t)};
}

std::pair<double, std::vector<double>> distortion(const SotmModel& model,
                                                  const PanelDataset& panel) {
    return distortion(model, panel, model.config.sigma);
}

std::pair<double, std::vector<double>> distortion(const SotmModel& model,
                                                  const PanelDataset& panel, double sigma) {
    check_match(model, panel);
    const std::size_t m = model.units();
    const std::size_t d = model.dim();
    std::vector<double> per_t(model.periods(), 0.0);
    for (std::size_t t = 0; t < model.periods(); ++t) {
        const UnitArray& array = model.arrays[t];
        double sum = 0.0;
        for (const PanelRow& row : panel.slice(t)) {
            const std::size_t c = find_bmu(row.values, array).first;
            for (std::size_t i = 0; i < m; ++i) {
                const double d2 = kernels::squared_distance(row.values.data(), array.row(i), d);
                sum += neighborhood_weight(i, c, sigma) * d2;
            }
        }
        per_t[t] = sum / (static_cast<double>(panel.rows_at(t)) * static_cast<double>(m));
    }
    return {mean(per_t), std::move(per_t)};
}

std::pair<double, std::vector<double>> topographic_error(const SotmModel& model,
                                                         const PanelDataset& panel) {
    check_match(model, panel);
    std::vector<double> per_t(model.periods(), 0.0);
    for (std::size_t t = 0; t < model.periods(); ++t) {
        const UnitArray& array = model.arrays[t];
        std::size_t errors = 0;
        for (const PanelRow& row : panel.slice(t)) {
            const auto [first, second] = find_two_bmus(row.values, array);
            const std::size_t gap = first > second ? first - second : second - first;
            if (gap > 1) ++errors;
        }
        per_t[t] = static_cast<double>(errors) / static_cast<double>(panel.rows_at(t));
    }
    return {mean(per_t), std::move(per_t)};
}

std::pair<double, std::vector<double>> structural_change(const SotmModel& model) {
    const std::size_t m = model.units();
    const std::size_t d = model.dim();
    if (model.periods() < 2) return {0.0, {}};
    std::vector<double> per_t;
    per_t.reserve(model.periods() - 1);
    for (std::size_t t = 1; t < model.periods(); ++t) {
        const UnitArray& prev = model.arrays[t - 1];
        const UnitArray& curr = model.arrays[t];
        double sum = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            sum += std::sqrt(kernels::squared_distance(prev.row(i), curr.row(i), d));
        }
        per_t.push_back(sum / static_cast<double>(m));
    }
    return {mean(per_t), std::move(per_t)};
}

QualityReport quality(const SotmModel& model, const PanelDataset& panel) {
    QualityReport report;
    report.times = model.times;
    std::tie(report.qe_total, report.qe_t) = quantization_error(model, panel);
    std::tie(report.dm_total, report.dm_t) = distortion(model, panel);
    std::tie(report.te_total, report.te_t) = topographic_error(model, panel);
    std::tie(report.sc_total, report.sc_t) = structural_change(model);
    return report;
}

} // namespace sotm
