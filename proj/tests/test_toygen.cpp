#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "oracle_support.hpp"
#include "sotm/errors.hpp"
#include "sotm/toygen.hpp"

using namespace sotm;

namespace {

// Least-squares slope of y over x = 1..n.
double regression_slope(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        const double x = static_cast<double>(k + 1);
        sx += x;
        sy += y[k];
        sxx += x * x;
        sxy += x * y[k];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        cov += (a[k] - ma) * (b[k] - mb);
        va += (a[k] - ma) * (a[k] - ma);
        vb += (b[k] - mb) * (b[k] - mb);
    }
    return cov / std::sqrt(va * vb);
}

// Mean over entities of one group's variable at one period.
double group_mean(const ToyPanel& toy, std::size_t var, const std::string& group, std::size_t t) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const PanelRow& row : toy.panel.slice(t)) {
        if (toy.groups[row.entity] == group) {
            sum += row.values[var];
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

} // namespace

TEST_CASE("all-zero weights squash everything to exactly 0.5") {
    ToyWeights w = default_preset();
    std::fill(w.w1.begin(), w.w1.end(), 0.0);
    std::fill(w.w2.begin(), w.w2.end(), 0.0);
    std::fill(w.w3.begin(), w.w3.end(), 0.0);
    std::fill(w.w4.begin(), w.w4.end(), 0.0);
    std::fill(w.w5.begin(), w.w5.end(), 0.0);
    const ToyPanel toy = generate_toy(w);
    for (std::size_t t = 0; t < toy.panel.periods(); ++t) {
        for (const PanelRow& row : toy.panel.slice(t)) {
            for (double v : row.values) CHECK(v == 0.5);
        }
    }
}

TEST_CASE("slope-only weights give group-shared monotone trends") {
    ToyWeights w = default_preset();
    std::fill(w.w1.begin(), w.w1.end(), 0.0);
    std::fill(w.w3.begin(), w.w3.end(), 0.0);
    std::fill(w.w4.begin(), w.w4.end(), 0.0);
    std::fill(w.w5.begin(), w.w5.end(), 0.0);
    w.w2 = {0.4, 0.4, 0.4, 0.4};
    const ToyPanel toy = generate_toy(w);

    // Without per-entity shocks, all entities of a group coincide.
    for (std::size_t t = 0; t < toy.panel.periods(); ++t) {
        std::map<std::string, std::vector<double>> per_group;
        for (const PanelRow& row : toy.panel.slice(t)) {
            auto [it, inserted] = per_group.emplace(toy.groups[row.entity], row.values);
            if (!inserted) CHECK(it->second == row.values);
        }
    }
    // e2 >= 0, so logistic(w2*e2*t) never decreases in t.
    const PanelRow& first = toy.panel.slice(0)[0];
    for (std::size_t t = 1; t < toy.panel.periods(); ++t) {
        const PanelRow* row = toy.panel.find_row(first.entity, t);
        REQUIRE(row != nullptr);
        const PanelRow* prev = toy.panel.find_row(first.entity, t - 1);
        for (std::size_t r = 0; r < 4; ++r) {
            CHECK(row->values[r] >= prev->values[r]);
        }
    }
}

TEST_CASE("default preset matches the experimental shape") {
    const ToyPanel toy = generate_toy(default_preset());
    CHECK(toy.panel.entity_count() == 100);
    CHECK(toy.panel.periods() == 10);
    CHECK(toy.panel.dim() == 4);
    CHECK(toy.panel.total_rows() == 1000);
    std::map<std::string, int> group_sizes;
    for (const std::string& g : toy.groups) ++group_sizes[g];
    CHECK(group_sizes.size() == 5);
    for (const auto& [g, size] : group_sizes) CHECK(size == 20);
}

TEST_CASE("same seed reproduces the panel bit-identically, another seed does not") {
    const ToyWeights w = default_preset();
    const ToyPanel a = generate_toy(w);
    const ToyPanel b = generate_toy(w);
    for (std::size_t t = 0; t < a.panel.periods(); ++t) {
        for (std::size_t r = 0; r < a.panel.rows_at(t); ++r) {
            CHECK(a.panel.slice(t)[r].values == b.panel.slice(t)[r].values);
        }
    }
    ToyWeights other = w;
    other.seed = w.seed + 1;
    const ToyPanel c = generate_toy(other);
    CHECK(a.panel.slice(0)[0].values != c.panel.slice(0)[0].values);
}

TEST_CASE("all generated values lie strictly inside (0,1)") {
    const ToyPanel toy = generate_toy(default_preset());
    for (std::size_t t = 0; t < toy.panel.periods(); ++t) {
        for (const PanelRow& row : toy.panel.slice(t)) {
            for (double v : row.values) {
                CHECK(v > 0.0);
                CHECK(v < 1.0);
            }
        }
    }
}

TEST_CASE("shock sharing follows the index signatures") {
    SUBCASE("group-level shocks only: entities within a group coincide") {
        ToyWeights w = default_preset();
        std::fill(w.w4.begin(), w.w4.end(), 0.0);
        std::fill(w.w5.begin(), w.w5.end(), 0.0);
        const ToyPanel toy = generate_toy(w);
        for (std::size_t t = 0; t < toy.panel.periods(); ++t) {
            std::map<std::string, std::vector<double>> seen;
            for (const PanelRow& row : toy.panel.slice(t)) {
                auto [it, inserted] = seen.emplace(toy.groups[row.entity], row.values);
                if (!inserted) CHECK(it->second == row.values);
            }
        }
    }
    SUBCASE("time-common shock only: all entities coincide at each (variable, t)") {
        ToyWeights w = default_preset();
        std::fill(w.w1.begin(), w.w1.end(), 0.0);
        std::fill(w.w2.begin(), w.w2.end(), 0.0);
        std::fill(w.w3.begin(), w.w3.end(), 0.0);
        std::fill(w.w4.begin(), w.w4.end(), 1.0);
        std::fill(w.w5.begin(), w.w5.end(), 0.0);
        const ToyPanel toy = generate_toy(w);
        for (std::size_t t = 0; t < toy.panel.periods(); ++t) {
            const auto& reference = toy.panel.slice(t)[0].values;
            for (const PanelRow& row : toy.panel.slice(t)) CHECK(row.values == reference);
        }
    }
}

TEST_CASE("preset oracles: trends, flat x3, common x4 shocks") {
    const ToyPanel toy = generate_toy(default_preset());
    const std::vector<std::string> groups{"g1", "g2", "g3", "g4", "g5"};
    const std::size_t t_count = toy.panel.periods();

    SUBCASE("x1 pooled mean rises from t=1 to t=10") {
        double first = 0.0, last = 0.0;
        for (const PanelRow& row : toy.panel.slice(0)) first += row.values[0];
        for (const PanelRow& row : toy.panel.slice(t_count - 1)) last += row.values[0];
        CHECK(last / 100.0 > first / 100.0);
    }
    SUBCASE("x2 pooled mean falls from t=1 to t=10") {
        double first = 0.0, last = 0.0;
        for (const PanelRow& row : toy.panel.slice(0)) first += row.values[1];
        for (const PanelRow& row : toy.panel.slice(t_count - 1)) last += row.values[1];
        CHECK(last / 100.0 < first / 100.0);
    }
    SUBCASE("x3 per-group time slopes are tiny") {
        for (const std::string& g : groups) {
            std::vector<double> series;
            for (std::size_t t = 0; t < t_count; ++t) series.push_back(group_mean(toy, 2, g, t));
            CHECK(std::abs(regression_slope(series)) < 0.01);
        }
    }
    SUBCASE("x4 group means co-move through the shared time shock") {
        std::map<std::string, std::vector<double>> demeaned;
        for (const std::string& g : groups) {
            std::vector<double> series;
            double mean = 0.0;
            for (std::size_t t = 0; t < t_count; ++t) {
                series.push_back(group_mean(toy, 3, g, t));
                mean += series.back();
            }
            mean /= static_cast<double>(t_count);
            for (double& v : series) v -= mean;
            demeaned[g] = series;
        }
        double corr_sum = 0.0;
        int pairs = 0;
        for (std::size_t a = 0; a < groups.size(); ++a) {
            for (std::size_t b = a + 1; b < groups.size(); ++b) {
                corr_sum += pearson(demeaned[groups[a]], demeaned[groups[b]]);
                ++pairs;
            }
        }
        CHECK(corr_sum / pairs > 0.8);
    }
}

TEST_CASE("weight validation rejects bad shapes and negatives") {
    ToyWeights w = default_preset();
    w.w1.pop_back();
    CHECK_THROWS_AS(generate_toy(w), DataError);

    w = default_preset();
    w.w3[0] = -0.1;
    CHECK_THROWS_AS(generate_toy(w), DataError);

    // w2 may carry a sign.
    w = default_preset();
    w.w2[0] = -0.5;
    CHECK_NOTHROW(w.validate());

    w = default_preset();
    w.periods = 0;
    CHECK_THROWS_AS(generate_toy(w), DataError);
}
