#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kbeam {

/// Uniform grid over [0,1] with an odd number of nodes, so that composite
/// Simpson applies to the full interval.
class Grid {
public:
    static constexpr std::size_t kMinNodes = 33;
    static constexpr std::size_t kDefaultNodes = 257;

    Grid() : Grid(kDefaultNodes) {}
    explicit Grid(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    double node(std::size_t i) const noexcept;
    std::vector<double> nodes() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t n_;
    double h_;
};

/// Values of a function sampled at the nodes of a Grid.
class GridFunction {
public:
    explicit GridFunction(Grid grid);
    GridFunction(Grid grid, std::vector<double> values);

    /// Samples `f` at every node.
    static GridFunction sample(Grid grid, const std::function<double(double)>& f);
    static GridFunction constant(Grid grid, double value);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return values_.size(); }

    double operator[](std::size_t i) const noexcept { return values_[i]; }
    double& operator[](std::size_t i) noexcept { return values_[i]; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    const std::vector<double>& data() const noexcept { return values_; }

    bool all_finite() const noexcept;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double s) noexcept;

    friend GridFunction operator+(GridFunction lhs, const GridFunction& rhs) { return lhs += rhs; }
    friend GridFunction operator-(GridFunction lhs, const GridFunction& rhs) { return lhs -= rhs; }
    friend GridFunction operator*(double s, GridFunction f) { return f *= s; }
    friend GridFunction operator-(GridFunction f) { return f *= -1.0; }

    /// Pointwise product.
    friend GridFunction operator*(const GridFunction& lhs, const GridFunction& rhs);

private:
    Grid grid_;
    std::vector<double> values_;
};

/// Composite Simpson weights for `n` equally spaced nodes with spacing `h`.
/// Throws ConfigError when `n` is even or smaller than 3.
std::vector<double> simpson_weights(std::size_t n, double h);

/// Composite Simpson approximation of the integral of the sampled values.
/// Throws ConfigError when the number of samples is even.
double integrate(std::span<const double> values, double h);
double integrate(const GridFunction& f);

/// Central second difference at interior nodes. The endpoint values are set
/// to zero, the hinged-end conditions u''(0) = u''(1) = 0.
GridFunction second_difference(const GridFunction& u);

double sup_norm(std::span<const double> values) noexcept;
double sup_norm(const GridFunction& u) noexcept;

}  // namespace kbeam
