#pragma once

// Brute-force reference implementations and helpers shared by the test
// binaries. Everything here evaluates the defining formulas directly with
// plain loops and must stay independent of the library's computation paths.

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sotm/model.hpp"
#include "sotm/panel.hpp"
#include "sotm/unit_array.hpp"

namespace oracle {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return sum;
}

inline double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

inline double gaussian(std::size_t i, std::size_t c, double sigma) {
    const double d = static_cast<double>(i) - static_cast<double>(c);
    return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

// Exhaustive linear scan, lowest index on ties.
inline std::size_t bmu(std::span<const double> x, const sotm::UnitArray& array) {
    std::size_t best = 0;
    double best_d2 = squared_distance(x, array.row_span(0));
    for (std::size_t i = 1; i < array.units(); ++i) {
        const double d2 = squared_distance(x, array.row_span(i));
        if (d2 < best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

// First and second nearest, second excluding the first, ties to lowest index.
inline std::pair<std::size_t, std::size_t> two_bmus(std::span<const double> x,
                                                    const sotm::UnitArray& array) {
    const std::size_t first = bmu(x, array);
    std::size_t second = first == 0 ? 1 : 0;
    double second_d2 = squared_distance(x, array.row_span(second));
    for (std::size_t i = 0; i < array.units(); ++i) {
        if (i == first) continue;
        const double d2 = squared_distance(x, array.row_span(i));
        if (d2 < second_d2 || (d2 == second_d2 && i < second)) {
            second = i;
            second_d2 = d2;
        }
    }
    return {first, second};
}

// Direct evaluation of the batch quotient, one data point at a time.
inline sotm::UnitArray batch_cycle(const sotm::UnitArray& array,
                                   const std::vector<std::vector<double>>& slice, double sigma) {
    const std::size_t m = array.units();
    const std::size_t d = array.dim();
    sotm::UnitArray out(m, d);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> num(d, 0.0);
        double den = 0.0;
        for (const auto& x : slice) {
            const double h = gaussian(i, bmu(x, array), sigma);
            for (std::size_t k = 0; k < d; ++k) num[k] += h * x[k];
            den += h;
        }
        for (std::size_t k = 0; k < d; ++k) {
            out.at(i, k) = den > 0.0 ? num[k] / den : array.at(i, k);
        }
    }
    return out;
}

inline double qe_slice(const sotm::UnitArray& array,
                       const std::vector<std::vector<double>>& slice) {
    double sum = 0.0;
    for (const auto& x : slice) sum += distance(x, array.row_span(bmu(x, array)));
    return sum / static_cast<double>(slice.size());
}

inline double dm_slice(const sotm::UnitArray& array, const std::vector<std::vector<double>>& slice,
                       double sigma) {
    double sum = 0.0;
    for (const auto& x : slice) {
        const std::size_t c = bmu(x, array);
        for (std::size_t i = 0; i < array.units(); ++i) {
            sum += gaussian(i, c, sigma) * squared_distance(x, array.row_span(i));
        }
    }
    return sum / (static_cast<double>(slice.size()) * static_cast<double>(array.units()));
}

inline double te_slice(const sotm::UnitArray& array,
                       const std::vector<std::vector<double>>& slice) {
    std::size_t errors = 0;
    for (const auto& x : slice) {
        const auto [c1, c2] = two_bmus(x, array);
        const std::size_t gap = c1 > c2 ? c1 - c2 : c2 - c1;
        if (gap > 1) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(slice.size());
}

inline double sc_pair(const sotm::UnitArray& prev, const sotm::UnitArray& curr) {
    double sum = 0.0;
    for (std::size_t i = 0; i < prev.units(); ++i) {
        sum += distance(prev.row_span(i), curr.row_span(i));
    }
    return sum / static_cast<double>(prev.units());
}

// Top eigenvector of the population covariance by power iteration; the
// largest-magnitude loading is made positive. Assumes a clear spectral gap.
inline std::vector<double> power_iteration_pc(const std::vector<std::vector<double>>& slice) {
    const std::size_t d = slice.front().size();
    const std::size_t n = slice.size();
    std::vector<double> mean(d, 0.0);
    for (const auto& x : slice) {
        for (std::size_t k = 0; k < d; ++k) mean[k] += x[k];
    }
    for (double& v : mean) v /= static_cast<double>(n);
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (const auto& x : slice) {
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                cov[a][b] += (x[a] - mean[a]) * (x[b] - mean[b]);
            }
        }
    }
    for (auto& row : cov) {
        for (double& v : row) v /= static_cast<double>(n);
    }
    std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<double> next(d, 0.0);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) next[a] += cov[a][b] * v[b];
        }
        double norm = 0.0;
        for (double x : next) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) break;
        for (double& x : next) x /= norm;
        v = next;
    }
    std::size_t pivot = 0;
    for (std::size_t k = 1; k < d; ++k) {
        if (std::abs(v[k]) > std::abs(v[pivot])) pivot = k;
    }
    if (v[pivot] < 0.0) {
        for (double& x : v) x = -x;
    }
    return v;
}

// Slice rows as spans, for calling the library on raw vectors.
inline std::vector<std::span<const double>> views(const std::vector<std::vector<double>>& rows) {
    std::vector<std::span<const double>> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.emplace_back(r);
    return out;
}

inline std::vector<std::vector<double>> random_rows(std::mt19937_64& rng, std::size_t n,
                                                    std::size_t d, double lo = -2.0,
                                                    double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& row : rows) {
        for (double& v : row) v = dist(rng);
    }
    return rows;
}

inline sotm::UnitArray random_array(std::mt19937_64& rng, std::size_t m, std::size_t d,
                                    double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    sotm::UnitArray array(m, d);
    for (double& v : array.data()) v = dist(rng);
    return array;
}

// Builds a panel with one slice per entry of `slices`; entities are synthetic
// and complete rows are assumed.
inline sotm::PanelDataset make_panel(const std::vector<std::vector<std::vector<double>>>& slices) {
    std::size_t max_rows = 0;
    for (const auto& s : slices) max_rows = std::max(max_rows, s.size());
    std::vector<std::string> entities(max_rows);
    for (std::size_t e = 0; e < max_rows; ++e) entities[e] = "e" + std::to_string(e);
    std::vector<std::string> times(slices.size());
    for (std::size_t t = 0; t < slices.size(); ++t) times[t] = std::to_string(t + 1);
    const std::size_t d = slices.front().front().size();
    std::vector<std::string> variables(d);
    for (std::size_t k = 0; k < d; ++k) variables[k] = "v" + std::to_string(k + 1);
    std::vector<std::vector<sotm::PanelRow>> rows(slices.size());
    for (std::size_t t = 0; t < slices.size(); ++t) {
        for (std::size_t e = 0; e < slices[t].size(); ++e) {
            rows[t].push_back(sotm::PanelRow{e, slices[t][e]});
        }
    }
    return sotm::PanelDataset::create(entities, times, variables, rows);
}

// Wraps per-slice arrays as a model (identity scaler, synthetic labels).
inline sotm::SotmModel make_model(std::vector<sotm::UnitArray> arrays, double sigma) {
    sotm::SotmModel model;
    model.config.units = arrays.front().units();
    model.config.sigma = sigma;
    const std::size_t d = arrays.front().dim();
    model.scaler = sotm::Scaler::identity(d);
    model.times.resize(arrays.size());
    for (std::size_t t = 0; t < arrays.size(); ++t) model.times[t] = std::to_string(t + 1);
    model.variables.resize(d);
    for (std::size_t k = 0; k < d; ++k) model.variables[k] = "v" + std::to_string(k + 1);
    model.arrays = std::move(arrays);
    return model;
}

// Minimal XML well-formedness check: prolog, matched tags, quoted attributes,
// no stray '<' or unescaped '&' in text.
inline bool xml_well_formed(const std::string& doc, std::string* error = nullptr) {
    auto fail = [&](const std::string& message) {
        if (error) *error = message;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t pos = 0;
    const std::size_t size = doc.size();
    bool seen_element = false;
    while (pos < size) {
        if (doc[pos] != '<') {
            if (doc[pos] == '&') {
                const std::size_t semi = doc.find(';', pos);
                if (semi == std::string::npos || semi - pos > 8) return fail("bad entity");
                const std::string entity = doc.substr(pos + 1, semi - pos - 1);
                if (entity != "amp" && entity != "lt" && entity != "gt" && entity != "quot" &&
                    entity != "apos") {
                    return fail("unknown entity &" + entity + ";");
                }
                pos = semi + 1;
                continue;
            }
            if (doc[pos] == '>') return fail("stray '>'");
            ++pos;
            continue;
        }
        if (doc.compare(pos, 5, "<?xml") == 0) {
            const std::size_t end = doc.find("?>", pos);
            if (end == std::string::npos) return fail("unterminated prolog");
            pos = end + 2;
            continue;
        }
        if (doc.compare(pos, 4, "<!--") == 0) {
            const std::size_t end = doc.find("-->", pos);
            if (end == std::string::npos) return fail("unterminated comment");
            pos = end + 3;
            continue;
        }
        const std::size_t end = doc.find('>', pos);
        if (end == std::string::npos) return fail("unterminated tag");
        std::string tag = doc.substr(pos + 1, end - pos - 1);
        if (tag.empty()) return fail("empty tag");
        const bool closing = tag.front() == '/';
        const bool self_closing = tag.back() == '/';
        if (closing) {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
            stack.pop_back();
        } else {
            std::size_t name_end = 0;
            while (name_end < tag.size() && tag[name_end] != ' ' && tag[name_end] != '/') {
                ++name_end;
            }
            const std::string name = tag.substr(0, name_end);
            if (name.empty()) return fail("nameless tag");
            // Attribute values must be double-quoted and balanced.
            std::size_t quotes = 0;
            for (char c : tag) {
                if (c == '"') ++quotes;
            }
            if (quotes % 2 != 0) return fail("unbalanced quotes in <" + name + ">");
            seen_element = true;
            if (!self_closing) stack.push_back(name);
        }
        pos = end + 1;
    }
    if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
    if (!seen_element) return fail("no elements");
    return true;
}

} // namespace oracle
