#include "sotm/sammon.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "sotm/errors.hpp"
#include "sotm/kernels.hpp"

namespace sotm {

namespace {

constexpr double kMinDistance = 1e-12;

std::size_t pair_index(std::size_t p, std::size_t q, std::size_t n) {
    // Condensed upper-triangle index for p < q.
    return p * n - p * (p + 1) / 2 + (q - p - 1);
}

double stress_of(const std::vector<double>& y, const std::vector<double>& target,
                 double target_sum, std::size_t n) {
    double sum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const double dstar = target[pair_index(p, q, n)];
            const double diff = dstar - std::abs(y[p] - y[q]);
            sum += diff * diff / dstar;
        }
    }
    return sum / target_sum;
}

} // namespace

SammonResult sammon_1d(const SotmModel& model, const SammonOptions& options) {
    model.validate();
    const std::size_t m = model.units();
    const std::size_t d = model.dim();
    const std::size_t n = m * model.periods();

    // Flatten all units, index t*M + i.
    std::vector<const double*> points;
    points.reserve(n);
    for (const UnitArray& array : model.arrays) {
        for (std::size_t i = 0; i < m; ++i) points.push_back(array.row(i));
    }

    std::vector<double> target(n * (n - 1) / 2);
    double max_target = 0.0;
    double target_sum = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            double dist = std::sqrt(kernels::squared_distance(points[p], points[q], d));
            max_target = std::max(max_target, dist);
            dist = std::max(dist, kMinDistance);
            target[pair_index(p, q, n)] = dist;
            target_sum += dist;
        }
    }
    if (max_target <= 0.0) {
        throw AllUnitsIdentical("all reference vectors coincide; nothing to embed");
    }

    // First-principal-component scores as the starting layout.
    std::vector<double> y(n);
    {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
        for (const double* p : points) mean += Eigen::Map<const Eigen::VectorXd>(p, d);
        mean /= static_cast<double>(n);
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
        for (const double* p : points) {
            const Eigen::VectorXd dev = Eigen::Map<const Eigen::VectorXd>(p, d) - mean;
            cov.noalias() += dev * dev.transpose();
        }
        cov /= static_cast<double>(n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        if (solver.info() != Eigen::Success) throw DataError("eigendecomposition failed");
        Eigen::VectorXd pc = solver.eigenvectors().col(d - 1);
        std::size_t pivot = 0;
        for (std::size_t k = 1; k < d; ++k) {
            if (std::abs(pc(k)) > std::abs(pc(pivot))) pivot = k;
        }
        if (pc(pivot) < 0.0) pc = -pc;
        for (std::size_t p = 0; p < n; ++p) {
            y[p] = (Eigen::Map<const Eigen::VectorXd>(points[p], d) - mean).dot(pc);
        }
    }

    SammonResult result;
    double stress = stress_of(y, target, target_sum, n);
    result.stress_trace.push_back(stress);

    std::vector<double> gradient(n), curvature(n), candidate(n);
    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        std::fill(gradient.begin(), gradient.end(), 0.0);
        std::fill(curvature.begin(), curvature.end(), 0.0);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double dstar = target[pair_index(p, q, n)];
                const double delta = y[p] - y[q];
                const double dist = std::max(std::abs(delta), kMinDistance);
                const double err = dstar - dist;
                const double g = (err / (dstar * dist)) * delta;
                gradient[p] += g;
                gradient[q] -= g;
                const double c =
                    (1.0 / (dstar * dist)) *
                    (err - (delta * delta / dist) * (1.0 + err / dist));
                curvature[p] += c;
                curvature[q] += c;
            }
        }

        // Pseudo-Newton direction with step-halving keeps stress non-increasing.
        double accepted_stress = stress;
        bool accepted = false;
        double step = options.initial_step;
        for (int attempt = 0; attempt < 30; ++attempt) {
            for (std::size_t p = 0; p < n; ++p) {
                const double curv = std::max(std::abs(curvature[p]), kMinDistance);
                candidate[p] = y[p] + step * gradient[p] / curv;
            }
            const double s = stress_of(candidate, target, target_sum, n);
            if (s <= stress) {
                accepted_stress = s;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;

        y.swap(candidate);
        result.iterations = iter + 1;
        result.stress_trace.push_back(accepted_stress);
        const double drop = stress - accepted_stress;
        stress = accepted_stress;
        if (drop <= options.relative_tolerance * std::max(stress, kMinDistance)) break;
    }

    result.coords = std::move(y);
    result.stress = stress;
    return result;
}

} // namespace sotm
