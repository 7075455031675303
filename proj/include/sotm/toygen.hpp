#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sotm/panel.hpp"

namespace sotm {

// Weights steering the synthetic panel: per-variable intercept spread (w1),
// signed time slope (w2) and group-shock size (w3), and per-(variable,group)
// sizes of the time-common shock (w4) and the per-entity shock (w5).
struct ToyWeights {
    std::size_t groups = 5;
    std::size_t entities_per_group = 20;
    std::size_t periods = 10;
    std::size_t variables = 4;
    std::uint64_t seed = 42;

    std::vector<double> w1; // [variables], >= 0
    std::vector<double> w2; // [variables], signed slope weight
    std::vector<double> w3; // [variables], >= 0
    std::vector<double> w4; // [variables * groups], row-major (r, g), >= 0
    std::vector<double> w5; // [variables * groups], row-major (r, g), >= 0

    double w4_at(std::size_t r, std::size_t g) const { return w4[r * groups + g]; }
    double w5_at(std::size_t r, std::size_t g) const { return w5[r * groups + g]; }

    void validate() const; // throws DataError
};

struct ToyPanel {
    PanelDataset panel;                  // values strictly in (0,1), original units
    std::vector<std::string> groups;     // group label per entity, aligned with panel.entities()
};

// Squashed group trends plus shocks: x = logistic(E + w4*e4 + w5*e5) with
// E = w1*e1(g) + w2*e2(g)*t + w3*e3(g,t); e2 ~ U(0,1), the rest N(0,1).
// e1/e2/e3 are shared by all entities of a group, e4 by all entities at one
// (variable, time), e5 is per entity. The seed fixes the whole panel.
ToyPanel generate_toy(const ToyWeights& weights);

// Four variables with the stock characteristics: x1 small intercept spread
// and a positive slope, x2 wide intercepts and a negative slope, x3 wide
// intercepts and a flat trend with minor shocks, x4 wide intercepts with
// large time-common shocks. The numeric values are this implementation's
// tuning, chosen so those qualitative properties hold for the default seed.
ToyWeights default_preset();

} // namespace sotm
