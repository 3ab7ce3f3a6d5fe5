#include "kbeam/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kbeam/errors.hpp"

namespace kbeam {

namespace {

void require_same_grid(const GridFunction& lhs, const GridFunction& rhs) {
    if (!(lhs.grid() == rhs.grid())) {
        throw ConfigError("grid functions live on different grids");
    }
}

}  // namespace

Grid::Grid(std::size_t n) : n_(n), h_(0.0) {
    if (n % 2 == 0) {
        throw ConfigError("grid node count must be odd, got " + std::to_string(n));
    }
    if (n < kMinNodes) {
        throw ConfigError("grid needs at least " + std::to_string(kMinNodes) + " nodes, got " +
                          std::to_string(n));
    }
    h_ = 1.0 / static_cast<double>(n - 1);
}

double Grid::node(std::size_t i) const noexcept {
    // Exact endpoints; i*h would give 1 - ulp for some n.
    if (i + 1 == n_) return 1.0;
    return static_cast<double>(i) * h_;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) x[i] = node(i);
    return x;
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw ConfigError("grid function has " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(grid_.size()) + " nodes");
    }
}

GridFunction GridFunction::sample(Grid grid, const std::function<double(double)>& f) {
    GridFunction out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values_[i] = f(grid.node(i));
    return out;
}

GridFunction GridFunction::constant(Grid grid, double value) {
    return GridFunction(grid, std::vector<double>(grid.size(), value));
}

bool GridFunction::all_finite() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double s) noexcept {
    for (double& v : values_) v *= s;
    return *this;
}

GridFunction operator*(const GridFunction& lhs, const GridFunction& rhs) {
    require_same_grid(lhs, rhs);
    GridFunction out(lhs.grid());
    for (std::size_t i = 0; i < lhs.size(); ++i) out[i] = lhs[i] * rhs[i];
    return out;
}

std::vector<double> simpson_weights(std::size_t n, double h) {
    if (n < 3 || n % 2 == 0) {
        throw ConfigError("composite Simpson needs an odd node count >= 3, got " +
                          std::to_string(n));
    }
    std::vector<double> w(n, 0.0);
    for (std::size_t p = 0; p + 2 < n; p += 2) {
        w[p] += h / 3.0;
        w[p + 1] += 4.0 * h / 3.0;
        w[p + 2] += h / 3.0;
    }
    return w;
}

double integrate(std::span<const double> values, double h) {
    const std::size_t n = values.size();
    if (n < 3 || n % 2 == 0) {
        throw ConfigError("composite Simpson needs an odd node count >= 3, got " +
                          std::to_string(n));
    }
    // Grouped as ends + 4*odd + 2*even so constants integrate exactly.
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) odd += values[i];
    for (std::size_t i = 2; i + 1 < n; i += 2) even += values[i];
    return h / 3.0 * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even);
}

double integrate(const GridFunction& f) { return integrate(f.values(), f.grid().spacing()); }

GridFunction second_difference(const GridFunction& u) {
    const std::size_t n = u.size();
    const double inv_h2 = 1.0 / (u.grid().spacing() * u.grid().spacing());
    GridFunction out(u.grid());
    for (std::size_t i = 1; i + 1 < n; ++i) {
        out[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2;
    }
    return out;
}

double sup_norm(std::span<const double> values) noexcept {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm(const GridFunction& u) noexcept { return sup_norm(u.values()); }

}  // namespace kbeam
