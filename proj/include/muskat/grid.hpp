#pragma once

#include <cstddef>
#include <vector>

namespace muskat {

// Uniform cell-centred mesh on [x_left, x_right].
class Grid {
public:
    Grid(double x_left = -5.0, double x_right = 5.0, int n_cells = 400);

    double x_left() const noexcept { return x_left_; }
    double x_right() const noexcept { return x_right_; }
    int n_cells() const noexcept { return n_; }
    double h() const noexcept { return h_; }

    // Measured from the midpoint so that mirrored cells are exact negatives.
    double center(int i) const noexcept { return mid() + (i + 0.5 - 0.5 * n_) * h_; }
    // Face i sits at x_left + i h, i = 0..n_cells.
    double face(int i) const noexcept { return mid() + (i - 0.5 * n_) * h_; }
    std::vector<double> centers() const;

    // Same number of cells on [s x_left, s x_right].
    Grid scaled(double s) const;

    double mid() const noexcept { return 0.5 * (x_left_ + x_right_); }

private:
    double x_left_;
    double x_right_;
    int n_;
    double h_;
};

}  // namespace muskat
