#include "muskat/piecewise.hpp"

#include "muskat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace muskat {

PiecewiseQuadratic::PiecewiseQuadratic(std::vector<QuadraticPiece> pieces) {
    for (const auto& p : pieces) {
        if (!std::isfinite(p.l) || !std::isfinite(p.r) || !std::isfinite(p.c0) || !std::isfinite(p.c2))
            throw InvalidArgument("PiecewiseQuadratic: non-finite piece");
        if (p.r < p.l) throw InvalidArgument("PiecewiseQuadratic: piece with r < l");
        if (p.r > p.l) pieces_.push_back(p);
    }
    std::sort(pieces_.begin(), pieces_.end(),
              [](const QuadraticPiece& a, const QuadraticPiece& b) { return a.l < b.l; });
    for (std::size_t i = 1; i < pieces_.size(); ++i) {
        const double overlap = pieces_[i - 1].r - pieces_[i].l;
        if (overlap > 1e-12 * std::max(1.0, std::abs(pieces_[i].l)))
            throw InvalidArgument("PiecewiseQuadratic: overlapping pieces");
    }
}

int PiecewiseQuadratic::locate(double x) const noexcept {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const QuadraticPiece& p) { return v < p.l; });
    if (it == pieces_.begin()) return -1;
    --it;
    if (x > it->r) return -1;
    return static_cast<int>(it - pieces_.begin());
}

double PiecewiseQuadratic::operator()(double x) const noexcept {
    const int i = locate(x);
    return i < 0 ? 0.0 : pieces_[i].value(x);
}

double PiecewiseQuadratic::derivative(double x) const noexcept {
    const int i = locate(x);
    return i < 0 ? 0.0 : pieces_[i].slope(x);
}

double PiecewiseQuadratic::left_end() const {
    if (pieces_.empty()) throw InvalidArgument("PiecewiseQuadratic: empty function has no support");
    return pieces_.front().l;
}

double PiecewiseQuadratic::right_end() const {
    if (pieces_.empty()) throw InvalidArgument("PiecewiseQuadratic: empty function has no support");
    return pieces_.back().r;
}

namespace {

bool touching(const QuadraticPiece& a, const QuadraticPiece& b) {
    return std::abs(b.l - a.r) <= 1e-12 * std::max(1.0, std::abs(a.r));
}

}  // namespace

std::vector<Interval> PiecewiseQuadratic::support(double zero_tol) const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        const bool joins_previous = i > 0 && touching(pieces_[i - 1], p) && p.value(p.l) > zero_tol &&
                                    pieces_[i - 1].value(pieces_[i - 1].r) > zero_tol;
        if (joins_previous && !out.empty())
            out.back().r = p.r;
        else
            out.push_back({p.l, p.r});
    }
    return out;
}

double PiecewiseQuadratic::continuity_defect() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        const bool left_joined = i > 0 && touching(pieces_[i - 1], p);
        const bool right_joined = i + 1 < pieces_.size() && touching(p, pieces_[i + 1]);
        if (left_joined)
            worst = std::max(worst, std::abs(p.value(p.l) - pieces_[i - 1].value(pieces_[i - 1].r)));
        else
            worst = std::max(worst, std::abs(p.value(p.l)));
        if (!right_joined) worst = std::max(worst, std::abs(p.value(p.r)));
    }
    return worst;
}

double PiecewiseQuadratic::min_value() const noexcept {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : pieces_) {
        m = std::min({m, p.value(p.l), p.value(p.r)});
        if (p.l < 0.0 && p.r > 0.0) m = std::min(m, p.c0);
    }
    return pieces_.empty() ? 0.0 : m;
}

double PiecewiseQuadratic::max_value() const noexcept {
    double m = 0.0;
    for (const auto& p : pieces_) {
        m = std::max({m, p.value(p.l), p.value(p.r)});
        if (p.l < 0.0 && p.r > 0.0) m = std::max(m, p.c0);
    }
    return m;
}

PiecewiseQuadratic PiecewiseQuadratic::reflected() const {
    std::vector<QuadraticPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back({-p.r, -p.l, p.c0, p.c2});
    return PiecewiseQuadratic(std::move(out));
}

PiecewiseQuadratic PiecewiseQuadratic::rescaled(double amplitude, double scale) const {
    if (!(scale > 0.0)) throw InvalidArgument("PiecewiseQuadratic::rescaled: scale must be positive");
    std::vector<QuadraticPiece> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_)
        out.push_back({p.l / scale, p.r / scale, amplitude * p.c0, amplitude * p.c2 * scale * scale});
    return PiecewiseQuadratic(std::move(out));
}

namespace {

// Integral of x^n over [l, r].
double power_integral(double l, double r, int n) {
    return (std::pow(r, n + 1) - std::pow(l, n + 1)) / (n + 1);
}

}  // namespace

double integrate_moments(const PiecewiseQuadratic& q, int k) {
    if (k < 0) throw InvalidArgument("integrate_moments: k must be non-negative");
    double total = 0.0;
    for (const auto& p : q.pieces())
        total += p.c0 * power_integral(p.l, p.r, k) + p.c2 * power_integral(p.l, p.r, k + 2);
    return total;
}

double integrate_product(const PiecewiseQuadratic& a, const PiecewiseQuadratic& b, int k) {
    if (k < 0) throw InvalidArgument("integrate_product: k must be non-negative");
    double total = 0.0;
    const auto pa = a.pieces();
    const auto pb = b.pieces();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pa.size() && j < pb.size()) {
        const double lo = std::max(pa[i].l, pb[j].l);
        const double hi = std::min(pa[i].r, pb[j].r);
        if (hi > lo) {
            const double d0 = pa[i].c0 * pb[j].c0;
            const double d2 = pa[i].c0 * pb[j].c2 + pa[i].c2 * pb[j].c0;
            const double d4 = pa[i].c2 * pb[j].c2;
            total += d0 * power_integral(lo, hi, k) + d2 * power_integral(lo, hi, k + 2) +
                     d4 * power_integral(lo, hi, k + 4);
        }
        if (pa[i].r < pb[j].r)
            ++i;
        else
            ++j;
    }
    return total;
}

double cell_average(const PiecewiseQuadratic& q, double lo, double hi) {
    if (!(hi > lo)) throw InvalidArgument("cell_average: empty cell");
    double total = 0.0;
    for (const auto& p : q.pieces()) {
        const double a = std::max(lo, p.l);
        const double b = std::min(hi, p.r);
        if (b > a) total += p.c0 * (b - a) + p.c2 * (b * b * b - a * a * a) / 3.0;
    }
    return total / (hi - lo);
}

double max_difference(const PiecewiseQuadratic& a, const PiecewiseQuadratic& b) {
    std::vector<double> xs;
    for (const auto* q : {&a, &b})
        for (const auto& p : q->pieces()) {
            xs.push_back(p.l);
            xs.push_back(p.r);
            xs.push_back(0.5 * (p.l + p.r));
        }
    std::sort(xs.begin(), xs.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        worst = std::max(worst, std::abs(a(xs[i]) - b(xs[i])));
        if (i + 1 < xs.size()) {
            const double mid = 0.5 * (xs[i] + xs[i + 1]);
            worst = std::max(worst, std::abs(a(mid) - b(mid)));
        }
    }
    return worst;
}

}  // namespace muskat
