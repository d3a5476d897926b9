#include "muskat/grid.hpp"

#include "muskat/errors.hpp"

#include <cmath>

namespace muskat {

Grid::Grid(double x_left, double x_right, int n_cells) : x_left_(x_left), x_right_(x_right), n_(n_cells) {
    if (!std::isfinite(x_left) || !std::isfinite(x_right) || !(x_right > x_left))
        throw InvalidArgument("Grid: need finite x_left < x_right");
    if (n_cells < 3) throw InvalidArgument("Grid: need at least 3 cells");
    h_ = (x_right - x_left) / n_cells;
}

std::vector<double> Grid::centers() const {
    std::vector<double> xs(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) xs[static_cast<std::size_t>(i)] = center(i);
    return xs;
}

Grid Grid::scaled(double s) const {
    if (!(s > 0.0)) throw InvalidArgument("Grid::scaled: factor must be positive");
    return Grid(s * x_left_, s * x_right_, n_);
}

}  // namespace muskat
