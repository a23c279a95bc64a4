#pragma once

#include <cstddef>
#include <vector>

namespace dwelltour {

/// Dense row-major square matrix of doubles.
struct Matrix {
    int n = 0;
    std::vector<double> a;

    Matrix() = default;
    explicit Matrix(int size, double fill = 0.0)
        : n(size), a(static_cast<size_t>(size) * static_cast<size_t>(size), fill) {}

    double& operator()(int i, int j) {
        return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    }
    double operator()(int i, int j) const {
        return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    }
};

}  // namespace dwelltour
