#include "kbeam/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kbeam/errors.hpp"

namespace kbeam {

namespace {

// Both Green's functions are smooth on each side of the diagonal but have a
// derivative jump at t = x. Row i is therefore integrated as two separate
// pieces, [0, x_i] and [x_i, 1], each with its own branch of the kernel.
//
// Each piece uses the trapezoid rule plus fourth-order end corrections that
// cancel the h^2 term of the Euler-Maclaurin expansion. At the boundary end
// the correction uses nodes inside the piece (the Gregory weights 3/8, 7/6,
// 23/24); at the diagonal end it uses the two nodes just past x_i, where the
// branch is evaluated on its analytic continuation. The same construction
// applies to every row and to pieces of any length, so the quadrature error
// is a smooth function of x_i. The fourth-difference residual check relies
// on that: a rule that changes with the row (Simpson on even pieces, a 3/8
// panel on odd ones) leaves an O(h^5) row-to-row oscillation that the
// stencil amplifies to O(h).
//
// For very stiff G2 (r h above kMaxExtendedRootTimesSpacing) the continued
// branch grows too fast for the negative exterior weight, so the diagonal
// end falls back to interior corrections and short pieces to closed
// Newton-Cotes rules.
enum class Branch { kLeft, kRight };

struct Tap {
    std::size_t j;
    double weight;
    Branch branch;
};

using RowRule = std::vector<Tap>;

// Positions are counted in steps from the boundary node `outer` towards the
// diagonal node; m > k lies past the diagonal.
class Side {
public:
    Side(RowRule& rule, std::size_t n, std::size_t outer, std::size_t diag, double h, Branch b)
        : rule_(rule), n_(n), outer_(outer), up_(diag > outer), k_(up_ ? diag - outer : outer - diag), h_(h), b_(b) {}

    std::size_t intervals() const { return k_; }

    bool exists(std::size_t m) const { return up_ ? outer_ + m < n_ : m <= outer_; }

    void put(std::size_t m, double w) { rule_.push_back({up_ ? outer_ + m : outer_ - m, w * h_, b_}); }

private:
    RowRule& rule_;
    std::size_t n_;
    std::size_t outer_;
    bool up_;
    std::size_t k_;
    double h_;
    Branch b_;
};

void add_trapezoid(Side& side) {
    const std::size_t k = side.intervals();
    for (std::size_t m = 0; m <= k; ++m) side.put(m, m == 0 || m == k ? 0.5 : 1.0);
}

void add_corrected(Side& side) {
    const std::size_t k = side.intervals();
    add_trapezoid(side);
    side.put(0, -1.0 / 8.0);
    side.put(1, 1.0 / 6.0);
    side.put(2, -1.0 / 24.0);
    if (side.exists(k + 2)) {
        side.put(k, 1.0 / 8.0);
        side.put(k + 1, -1.0 / 6.0);
        side.put(k + 2, 1.0 / 24.0);
    } else {
        // Next to the far boundary the second node past x_i does not exist.
        // Use the interior Gregory end there; that piece has n - 2 intervals.
        side.put(k, -1.0 / 8.0);
        side.put(k - 1, 1.0 / 6.0);
        side.put(k - 2, -1.0 / 24.0);
    }
}

// Rules that never leave the piece.
void add_interior(Side& side) {
    const std::size_t k = side.intervals();
    if (k < 5) {
        static constexpr double kClosed[5][5] = {
            {0.0, 0.0, 0.0, 0.0, 0.0},
            {1.0 / 2, 1.0 / 2, 0.0, 0.0, 0.0},
            {1.0 / 3, 4.0 / 3, 1.0 / 3, 0.0, 0.0},
            {3.0 / 8, 9.0 / 8, 9.0 / 8, 3.0 / 8, 0.0},
            {1.0 / 3, 4.0 / 3, 2.0 / 3, 4.0 / 3, 1.0 / 3},
        };
        for (std::size_t m = 0; m <= k; ++m) side.put(m, kClosed[k][m]);
        return;
    }
    static constexpr double kGregory[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
    for (std::size_t m = 0; m <= k; ++m) {
        double w = 1.0;
        if (m < 3) w = kGregory[m];
        if (k - m < 3) w = kGregory[k - m];
        side.put(m, w);
    }
}

std::vector<RowRule> row_rules(const Grid& grid, bool extend) {
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    std::vector<RowRule> rules(n);
    // Rows 0 and n-1 stay empty: both kernels vanish there.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        Side left(rules[i], n, 0, i, h, Branch::kLeft);
        Side right(rules[i], n, n - 1, i, h, Branch::kRight);
        if (extend) {
            add_corrected(left);
            add_corrected(right);
        } else {
            add_interior(left);
            add_interior(right);
        }
    }
    return rules;
}

template <class BranchFn>
KernelMatrix assemble_rows(const Grid& grid, const std::vector<RowRule>& rules, BranchFn&& branch) {
    KernelMatrix k(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (const Tap& tap : rules[i]) {
            k(i, tap.j) += tap.weight * branch(i, tap.j, tap.branch);
        }
    }
    return k;
}

// 1 - exp(-x) without cancellation for small x.
double one_minus_exp_neg(double x) { return -std::expm1(-x); }

// The exterior taps multiply the continued branch by as much as -5h/24 next
// to the boundary. That branch grows like 2 cosh(r h) exp(r h) relative to
// the true kernel, so past r h ~ 0.7 the entry could turn negative.
constexpr double kMaxExtendedRootTimesSpacing = 0.5;

}  // namespace

StiffnessParam::StiffnessParam(double m) : m_(m), root_(0.0) {
    if (!std::isfinite(m) || m <= 0.0) {
        throw DomainError("stiffness must be finite and positive, got " + std::to_string(m));
    }
    root_ = std::sqrt(m);
}

double g1(double x, double t) {
    if (!(x >= 0.0 && x <= 1.0 && t >= 0.0 && t <= 1.0)) {
        throw DomainError("g1 arguments must lie in [0,1]");
    }
    return t <= x ? t * (1.0 - x) : x * (1.0 - t);
}

double g2(double t, double s, StiffnessParam m) {
    if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0)) {
        throw DomainError("g2 arguments must lie in [0,1]");
    }
    const double r = m.root();
    const double lo = std::min(t, s);
    const double hi = std::max(t, s);
    // sinh(r lo) sinh(r (1-hi)) / (r sinh r)
    //   = e^{-r (hi-lo)} (1-e^{-2 r lo}) (1-e^{-2 r (1-hi)}) / (2 r (1-e^{-2r}))
    return std::exp(-r * (hi - lo)) * one_minus_exp_neg(2.0 * r * lo) *
           one_minus_exp_neg(2.0 * r * (1.0 - hi)) / (2.0 * r * one_minus_exp_neg(2.0 * r));
}

KernelMatrix::KernelMatrix(Grid grid) : grid_(grid), entries_(grid.size() * grid.size(), 0.0) {}

GridFunction KernelMatrix::apply(const GridFunction& g) const {
    if (!(g.grid() == grid_)) throw ConfigError("kernel and grid function grids differ");
    GridFunction out(grid_);
    apply(g.values(), out.values());
    return out;
}

void KernelMatrix::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = entries_.data() + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * in[j];
        out[i] = acc;
    }
}

KernelMatrix KernelMatrix::compose(const KernelMatrix& rhs) const {
    if (!(rhs.grid_ == grid_)) throw ConfigError("cannot compose kernels on different grids");
    const std::size_t n = size();
    KernelMatrix out(grid_);
    for (std::size_t i = 0; i < n; ++i) {
        double* dst = out.entries_.data() + i * n;
        for (std::size_t k = 0; k < n; ++k) {
            const double a = entries_[i * n + k];
            if (a == 0.0) continue;
            const double* src = rhs.entries_.data() + k * n;
            for (std::size_t j = 0; j < n; ++j) dst[j] += a * src[j];
        }
    }
    return out;
}

KernelMatrix assemble_g1(const Grid& grid) {
    const std::vector<double> x = grid.nodes();
    return assemble_rows(grid, row_rules(grid, true), [&](std::size_t i, std::size_t j, Branch b) {
        return b == Branch::kLeft ? x[j] * (1.0 - x[i]) : x[i] * (1.0 - x[j]);
    });
}

KernelMatrix assemble_g2(StiffnessParam m, const Grid& grid) {
    const std::size_t n = grid.size();
    const std::vector<double> x = grid.nodes();
    const double r = m.root();
    std::vector<double> from_left(n);
    std::vector<double> from_right(n);
    for (std::size_t k = 0; k < n; ++k) {
        from_left[k] = one_minus_exp_neg(2.0 * r * x[k]);
        from_right[k] = one_minus_exp_neg(2.0 * r * (1.0 - x[k]));
    }
    const double denom = 2.0 * r * one_minus_exp_neg(2.0 * r);
    const bool extend = r * grid.spacing() <= kMaxExtendedRootTimesSpacing;
    return assemble_rows(grid, row_rules(grid, extend), [&](std::size_t i, std::size_t j, Branch b) {
        // Left branch: sinh(r t) sinh(r (1-x)); right: sinh(r x) sinh(r (1-t)).
        if (b == Branch::kLeft) return std::exp(r * (x[j] - x[i])) * from_left[j] * from_right[i] / denom;
        return std::exp(r * (x[i] - x[j])) * from_left[i] * from_right[j] / denom;
    });
}

KernelPair assemble(StiffnessParam m, const Grid& grid) {
    KernelMatrix k2 = assemble_g2(m, grid);
    KernelMatrix k12 = assemble_g1(grid).compose(k2);
    return {std::move(k2), std::move(k12)};
}

FactoredKernels::FactoredKernels(StiffnessParam m, const Grid& grid)
    : FactoredKernels(m, assemble_g1(grid)) {}

FactoredKernels::FactoredKernels(StiffnessParam m, KernelMatrix weighted_g1)
    : m_(m), g1w_(std::move(weighted_g1)), k2_(assemble_g2(m, g1w_.grid())) {}

}  // namespace kbeam
