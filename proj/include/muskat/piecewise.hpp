#pragma once

#include <span>
#include <vector>

namespace muskat {

struct Interval {
    double l;
    double r;
    double length() const noexcept { return r - l; }
};

// Value c0 + c2 x^2 on [l, r].
struct QuadraticPiece {
    double l;
    double r;
    double c0;
    double c2;

    double value(double x) const noexcept { return c0 + c2 * x * x; }
    double slope(double x) const noexcept { return 2.0 * c2 * x; }
};

// A function that is an even-power quadratic on each of finitely many
// disjoint closed intervals and zero elsewhere. Pieces of zero length are
// dropped on construction.
class PiecewiseQuadratic {
public:
    PiecewiseQuadratic() = default;
    explicit PiecewiseQuadratic(std::vector<QuadraticPiece> pieces);

    std::span<const QuadraticPiece> pieces() const noexcept { return pieces_; }
    bool empty() const noexcept { return pieces_.empty(); }

    double operator()(double x) const noexcept;
    double derivative(double x) const noexcept;
    // Index of the piece containing x, or -1.
    int locate(double x) const noexcept;

    double left_end() const;
    double right_end() const;

    // Maximal open intervals on which the function is positive.
    std::vector<Interval> support(double zero_tol = 1e-12) const;

    // Largest jump between adjacent pieces, including the jumps to zero at
    // the outer ends of each support component.
    double continuity_defect() const noexcept;
    double min_value() const noexcept;
    double max_value() const noexcept;

    PiecewiseQuadratic reflected() const;
    // x -> amplitude * q(scale * x)
    PiecewiseQuadratic rescaled(double amplitude, double scale) const;

private:
    std::vector<QuadraticPiece> pieces_;
};

// Exact integral of x^k q(x) over the real line.
double integrate_moments(const PiecewiseQuadratic& q, int k);

// Exact integral of x^k a(x) b(x) over the real line.
double integrate_product(const PiecewiseQuadratic& a, const PiecewiseQuadratic& b, int k = 0);

// Exact average of q over [lo, hi].
double cell_average(const PiecewiseQuadratic& q, double lo, double hi);

// Largest |a(x) - b(x)| over all breakpoints and piece midpoints of both.
double max_difference(const PiecewiseQuadratic& a, const PiecewiseQuadratic& b);

}  // namespace muskat
