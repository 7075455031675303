#include "sotm/toygen.hpp"

#include <cmath>
#include <random>

#include "sotm/errors.hpp"

namespace sotm {

namespace {

void require_size(const std::vector<double>& w, std::size_t n, const char* name) {
    if (w.size() != n) {
        throw DataError(std::string("weight vector ") + name + " must have " + std::to_string(n) +
                        " entries, got " + std::to_string(w.size()));
    }
}

void require_nonnegative(const std::vector<double>& w, const char* name) {
    for (double v : w) {
        if (!std::isfinite(v) || v < 0.0) {
            throw DataError(std::string("weight vector ") + name +
                            " must hold finite nonnegative values");
        }
    }
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

} // namespace

void ToyWeights::validate() const {
    if (groups < 1 || entities_per_group < 1 || periods < 1 || variables < 1) {
        throw DataError("toy panel shape parameters must all be at least 1");
    }
    require_size(w1, variables, "w1");
    require_size(w2, variables, "w2");
    require_size(w3, variables, "w3");
    require_size(w4, variables * groups, "w4");
    require_size(w5, variables * groups, "w5");
    require_nonnegative(w1, "w1");
    require_nonnegative(w3, "w3");
    require_nonnegative(w4, "w4");
    require_nonnegative(w5, "w5");
    for (double v : w2) {
        if (!std::isfinite(v)) throw DataError("weight vector w2 must hold finite values");
    }
}

ToyPanel generate_toy(const ToyWeights& weights) {
    weights.validate();
    const std::size_t G = weights.groups;
    const std::size_t J = weights.groups * weights.entities_per_group; // total entities
    const std::size_t T = weights.periods;
    const std::size_t R = weights.variables;

    // One sequential stream; each shock block is drawn in a fixed order so
    // the panel is reproducible from the seed alone.
    std::mt19937_64 rng(weights.seed);
    std::vector<double> e1(G), e2(G), e3(G * T), e4(R * T), e5(R * J * T);
    {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (double& v : e1) v = normal(rng);
    }
    {
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        for (double& v : e2) v = uniform(rng);
    }
    {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (double& v : e3) v = normal(rng);
        for (double& v : e4) v = normal(rng);
        for (double& v : e5) v = normal(rng);
    }

    std::vector<std::string> entities(J), groups(J);
    const int id_width = static_cast<int>(std::to_string(J).size());
    for (std::size_t j = 0; j < J; ++j) {
        std::string id = std::to_string(j + 1);
        entities[j] = "e" + std::string(id_width - static_cast<int>(id.size()), '0') + id;
        groups[j] = "g" + std::to_string(j / weights.entities_per_group + 1);
    }
    std::vector<std::string> times(T);
    for (std::size_t t = 0; t < T; ++t) times[t] = std::to_string(t + 1);
    std::vector<std::string> variables(R);
    for (std::size_t r = 0; r < R; ++r) variables[r] = "x" + std::to_string(r + 1);

    std::vector<std::vector<PanelRow>> slices(T);
    for (std::size_t t = 0; t < T; ++t) {
        slices[t].reserve(J);
        const double time = static_cast<double>(t + 1); // slope term runs t = 1..T
        for (std::size_t j = 0; j < J; ++j) {
            const std::size_t g = j / weights.entities_per_group;
            std::vector<double> values(R);
            for (std::size_t r = 0; r < R; ++r) {
                const double trend = weights.w1[r] * e1[g] + weights.w2[r] * e2[g] * time +
                                     weights.w3[r] * e3[g * T + t];
                const double shocks = weights.w4_at(r, g) * e4[r * T + t] +
                                      weights.w5_at(r, g) * e5[(r * J + j) * T + t];
                values[r] = logistic(trend + shocks);
            }
            slices[t].push_back(PanelRow{j, std::move(values)});
        }
    }

    ToyPanel out{PanelDataset::create(std::move(entities), std::move(times), std::move(variables),
                                      std::move(slices)),
                 std::move(groups)};
    return out;
}

ToyWeights default_preset() {
    ToyWeights w;
    w.groups = 5;
    w.entities_per_group = 20;
    w.periods = 10;
    w.variables = 4;
    w.seed = 280;
    //        x1     x2    x3    x4
    w.w1 = {0.30, 1.50, 1.50, 1.50};
    w.w2 = {0.35, -0.45, 0.00, 0.00};
    w.w3 = {0.05, 0.05, 0.01, 0.05};
    const double w4_per_var[] = {0.05, 0.05, 0.01, 1.00};
    const double w5_per_var[] = {0.125, 0.125, 0.0625, 0.125};
    w.w4.resize(w.variables * w.groups);
    w.w5.resize(w.variables * w.groups);
    for (std::size_t r = 0; r < w.variables; ++r) {
        for (std::size_t g = 0; g < w.groups; ++g) {
            w.w4[r * w.groups + g] = w4_per_var[r];
            w.w5[r * w.groups + g] = w5_per_var[r];
        }
    }
    return w;
}

} // namespace sotm
