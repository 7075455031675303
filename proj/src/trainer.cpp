#include "sotm/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "sotm/errors.hpp"
#include "sotm/kernels.hpp"
#include "sotm/metrics.hpp"

namespace sotm {

namespace {

void check_dims(const SliceData& slice, const UnitArray& array) {
    for (const auto& row : slice) {
        if (row.size() != array.dim()) {
            throw DimensionMismatch("data dimension " + std::to_string(row.size()) +
                                    " does not match array dimension " +
                                    std::to_string(array.dim()));
        }
    }
}

// exp(-d^2 / (2 sigma^2)) for every vertical offset d = 0..m-1.
std::vector<double> weight_table(std::size_t m, double sigma) {
    std::vector<double> h(m);
    const double denom = 2.0 * sigma * sigma;
    for (std::size_t d = 0; d < m; ++d) {
        h[d] = std::exp(-(static_cast<double>(d) * static_cast<double>(d)) / denom);
    }
    return h;
}

} // namespace

UnitArray pca_init(const SliceData& slice, std::size_t units) {
    if (units < 2) throw DataError("unit count must be at least 2");
    if (slice.empty()) throw DegenerateSlice("cannot initialize from an empty slice");
    const std::size_t d = slice.front().size();
    const std::size_t n = slice.size();

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (const auto& row : slice) {
        if (row.size() != d) throw DimensionMismatch("ragged slice rows");
        mean += Eigen::Map<const Eigen::VectorXd>(row.data(), d);
    }
    mean /= static_cast<double>(n);

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (const auto& row : slice) {
        const Eigen::VectorXd dev = Eigen::Map<const Eigen::VectorXd>(row.data(), d) - mean;
        cov.noalias() += dev * dev.transpose();
    }
    cov /= static_cast<double>(n);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw DataError("covariance eigendecomposition failed");
    const double top = solver.eigenvalues()(d - 1);
    if (!(top > 1e-30)) {
        throw DegenerateSlice("slice carries no variance (all points identical)");
    }
    Eigen::VectorXd pc = solver.eigenvectors().col(d - 1);

    // Deterministic orientation: largest-magnitude loading positive.
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < d; ++k) {
        if (std::abs(pc(k)) > std::abs(pc(pivot))) pivot = k;
    }
    if (pc(pivot) < 0.0) pc = -pc;

    const double lambda = std::sqrt(top);
    UnitArray array(units, d);
    for (std::size_t i = 0; i < units; ++i) {
        const double score =
            -2.0 * lambda + 4.0 * lambda * static_cast<double>(i) / static_cast<double>(units - 1);
        Eigen::Map<Eigen::VectorXd>(array.row(i), d) = mean + score * pc;
    }
    return array;
}

std::pair<std::size_t, double> find_bmu(std::span<const double> x, const UnitArray& array) {
    if (x.size() != array.dim()) {
        throw DimensionMismatch("data dimension does not match array dimension");
    }
    std::size_t best = 0;
    double best_d2 = kernels::squared_distance(x.data(), array.row(0), array.dim());
    for (std::size_t i = 1; i < array.units(); ++i) {
        const double d2 = kernels::squared_distance(x.data(), array.row(i), array.dim());
        if (d2 < best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return {best, std::sqrt(best_d2)};
}

std::pair<std::size_t, std::size_t> find_two_bmus(std::span<const double> x,
                                                  const UnitArray& array) {
    if (x.size() != array.dim()) {
        throw DimensionMismatch("data dimension does not match array dimension");
    }
    if (array.units() < 2) throw DataError("second BMU needs at least two units");
    std::size_t first = 0, second = 0;
    double first_d2 = kernels::squared_distance(x.data(), array.row(0), array.dim());
    double second_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < array.units(); ++i) {
        const double d2 = kernels::squared_distance(x.data(), array.row(i), array.dim());
        if (d2 < first_d2) {
            second = first;
            second_d2 = first_d2;
            first = i;
            first_d2 = d2;
        } else if (d2 < second_d2) {
            second = i;
            second_d2 = d2;
        }
    }
    return {first, second};
}

double neighborhood_weight(std::size_t i, std::size_t c, double sigma) {
    const double d = static_cast<double>(i) - static_cast<double>(c);
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

UnitArray batch_cycle(const UnitArray& array, const SliceData& slice, double sigma) {
    if (slice.empty()) throw EmptySlice("(direct slice)");
    check_dims(slice, array);
    const std::size_t m = array.units();
    const std::size_t d = array.dim();

    // All assignments against the input array, accumulated per BMU in slice
    // order, then smoothed across units with the Gaussian table.
    std::vector<double> cluster_sum(m * d, 0.0);
    std::vector<double> cluster_count(m, 0.0);
    for (const auto& row : slice) {
        const std::size_t c = find_bmu(row, array).first;
        kernels::weighted_accumulate(cluster_sum.data() + c * d, row.data(), 1.0, d);
        cluster_count[c] += 1.0;
    }

    const std::vector<double> h = weight_table(m, sigma);
    UnitArray updated(m, d);
    std::vector<double> numerator(d);
    for (std::size_t i = 0; i < m; ++i) {
        std::fill(numerator.begin(), numerator.end(), 0.0);
        double denominator = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            if (cluster_count[c] == 0.0) continue;
            const double w = h[i > c ? i - c : c - i];
            kernels::weighted_accumulate(numerator.data(), cluster_sum.data() + c * d, w, d);
            denominator += w * cluster_count[c];
        }
        if (denominator > 0.0) {
            for (std::size_t k = 0; k < d; ++k) updated.at(i, k) = numerator[k] / denominator;
        } else {
            // Gaussian underflowed for every populated cluster; the unit
            // keeps its vector (idle in the extreme-sigma sense).
            std::copy(array.row(i), array.row(i) + d, updated.row(i));
        }
    }
    return updated;
}

UnitArray train_slice(UnitArray init, const SliceData& slice, double sigma, std::size_t cycles,
                      double tol) {
    for (std::size_t cycle = 0; cycle < cycles; ++cycle) {
        UnitArray next = batch_cycle(init, slice, sigma);
        double displacement = 0.0;
        for (std::size_t idx = 0; idx < next.data().size(); ++idx) {
            displacement = std::max(displacement, std::abs(next.data()[idx] - init.data()[idx]));
        }
        init = std::move(next);
        if (displacement < tol) break;
    }
    return init;
}

SotmModel train_sotm(const PanelDataset& panel, const TrainConfig& config, Scaler scaler) {
    config.validate();
    if (scaler.dim() != panel.dim()) {
        throw DimensionMismatch("scaler dimension does not match panel dimension");
    }
    for (std::size_t t = 0; t < panel.periods(); ++t) {
        if (panel.rows_at(t) == 0) throw EmptySlice(panel.times()[t]);
    }

    SotmModel model;
    model.config = config;
    model.scaler = std::move(scaler);
    model.times = panel.times();
    model.variables = panel.variables();
    model.arrays.reserve(panel.periods());

    const SliceData first = panel.slice_values(0);
    UnitArray array = pca_init(first, config.units);
    array = train_slice(std::move(array), first, config.sigma, config.first_slice_max_cycles,
                        config.first_slice_tol);
    model.arrays.push_back(array);

    for (std::size_t t = 1; t < panel.periods(); ++t) {
        // Short-term memory: start from the trained predecessor.
        array = train_slice(array, panel.slice_values(t), config.sigma, config.cycles_per_slice,
                            config.first_slice_tol);
        model.arrays.push_back(array);
    }
    return model;
}

UnitArray train_pooled_baseline(const PanelDataset& panel, std::size_t units, double sigma,
                                std::size_t max_cycles, double tol) {
    const SliceData pooled = panel.pooled_values();
    if (pooled.empty()) throw EmptySlice("(pooled)");
    UnitArray array = pca_init(pooled, units);
    return train_slice(std::move(array), pooled, sigma, max_cycles, tol);
}

std::vector<SweepRow> sigma_sweep(const PanelDataset& panel, const TrainConfig& base,
                                  std::span<const double> sigmas) {
    std::vector<SweepRow> rows;
    rows.reserve(sigmas.size());
    for (double sigma : sigmas) {
        TrainConfig config = base;
        config.sigma = sigma;
        const SotmModel model = train_sotm(panel, config, Scaler::identity(panel.dim()));
        rows.push_back(SweepRow{sigma, quality(model, panel)});
    }
    return rows;
}

} // namespace sotm
