#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace sotm {

// One time slice of the map: M reference vectors of dimension D, stored
// row-major and contiguous so the kernels can run over raw rows.
class UnitArray {
public:
    UnitArray() = default;
    UnitArray(std::size_t units, std::size_t dim)
        : units_(units), dim_(dim), data_(units * dim, 0.0) {}

    std::size_t units() const { return units_; }
    std::size_t dim() const { return dim_; }

    double* row(std::size_t i) { return data_.data() + i * dim_; }
    const double* row(std::size_t i) const { return data_.data() + i * dim_; }

    std::span<double> row_span(std::size_t i) { return {row(i), dim_}; }
    std::span<const double> row_span(std::size_t i) const { return {row(i), dim_}; }

    double& at(std::size_t i, std::size_t k) { return data_[i * dim_ + k]; }
    double at(std::size_t i, std::size_t k) const { return data_[i * dim_ + k]; }

    std::vector<double>& data() { return data_; }
    const std::vector<double>& data() const { return data_; }

    bool all_finite() const {
        for (double v : data_) {
            if (!std::isfinite(v)) return false;
        }
        return true;
    }

    bool operator==(const UnitArray&) const = default;

private:
    std::size_t units_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

} // namespace sotm
