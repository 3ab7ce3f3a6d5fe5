#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kbeam/numerics.hpp"

namespace kbeam {

/// The stiffness m = a + bR of the second-order factor -w'' + m w = g.
class StiffnessParam {
public:
    /// Throws DomainError unless m is finite and positive.
    explicit StiffnessParam(double m);

    double value() const noexcept { return m_; }
    double root() const noexcept { return root_; }

private:
    double m_;
    double root_;
};

/// Green's function of -u'' = g, u(0) = u(1) = 0.
double g1(double x, double t);

/// Green's function of -w'' + m w = g, w(0) = w(1) = 0:
///   sinh(r min(t,s)) sinh(r (1 - max(t,s))) / (r sinh r),  r = sqrt(m).
/// Evaluated through decaying exponentials so it stays finite for any m.
double g2(double t, double s, StiffnessParam m);

/// Dense n x n matrix acting on grid functions. Entry (i,j) is the kernel
/// value at (x_i, x_j) times the quadrature weight of node j in row i.
class KernelMatrix {
public:
    explicit KernelMatrix(Grid grid);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_.size(); }

    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * size() + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * size() + j]; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {entries_.data() + i * size(), size()};
    }
    std::span<const double> entries() const noexcept { return entries_; }

    GridFunction apply(const GridFunction& g) const;
    void apply(std::span<const double> in, std::span<double> out) const;

    /// Matrix product (*this) * rhs.
    KernelMatrix compose(const KernelMatrix& rhs) const;

private:
    Grid grid_;
    std::vector<double> entries_;
};

/// Discrete operators for a fixed stiffness:
///   k2  : g -> w = -u''  (one application of G2)
///   k12 : g -> u         (G1 applied after G2)
struct KernelPair {
    KernelMatrix k2;
    KernelMatrix k12;
};

/// Weighted G1 matrix. Does not depend on the stiffness.
KernelMatrix assemble_g1(const Grid& grid);

/// Weighted G2 matrix for stiffness m.
KernelMatrix assemble_g2(StiffnessParam m, const Grid& grid);

/// Both operators, with k12 formed as the product assemble_g1 * k2.
KernelPair assemble(StiffnessParam m, const Grid& grid);

/// Factored form of KernelPair: holds the weighted G1 and G2 matrices and
/// applies k12 as two matrix-vector products instead of forming the O(n^3)
/// product. This is what the solvers use.
class FactoredKernels {
public:
    FactoredKernels(StiffnessParam m, const Grid& grid);
    FactoredKernels(StiffnessParam m, KernelMatrix weighted_g1);

    StiffnessParam stiffness() const noexcept { return m_; }
    const Grid& grid() const noexcept { return g1w_.grid(); }
    const KernelMatrix& weighted_g1() const noexcept { return g1w_; }
    const KernelMatrix& k2() const noexcept { return k2_; }

    GridFunction apply_k2(const GridFunction& g) const { return k2_.apply(g); }
    GridFunction apply_g1(const GridFunction& w) const { return g1w_.apply(w); }
    GridFunction apply_k12(const GridFunction& g) const { return g1w_.apply(k2_.apply(g)); }

private:
    StiffnessParam m_;
    KernelMatrix g1w_;
    KernelMatrix k2_;
};

}  // namespace kbeam
