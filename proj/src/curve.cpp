#include "muskat/curve.hpp"

#include "muskat/errors.hpp"

#include <cmath>
#include <sstream>

namespace muskat {

std::string to_string(EndpointKind k) {
    return k == EndpointKind::ConnectedSupport ? "connected-support" : "alpha-zero";
}

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;

Vec5 unknowns(const Zeta& z) {
    Vec5 v;
    v << z.gamma1, z.beta1, z.alpha, z.beta, z.gamma;
    return v;
}

Zeta with_unknowns(double alpha1, const Eigen::VectorXd& v) { return {v(0), v(1), alpha1, v(2), v(3), v(4)}; }

// Derivative of the residuals with respect to alpha1.
Vec5 parameter_derivative(const FluidParams& p, double alpha1) {
    const double R = p.R();
    const double k = p.R_mu() - R - 1.0;
    Vec5 d;
    d << 2.0 * k * alpha1, 0.0, 0.0, 3.0 * R * k * alpha1 * alpha1 / (1.0 + R), -3.0 * k * alpha1 * alpha1;
    return d;
}

std::array<double, 6> gaps(const Zeta& z) {
    return {z.beta1 - z.gamma1, z.alpha1 - z.beta1, -z.alpha1, z.alpha, z.beta - z.alpha, z.gamma - z.beta};
}

double min_gap(const Zeta& z) {
    const auto g = gaps(z);
    return *std::min_element(g.begin(), g.end());
}

struct Marched {
    double alpha1;
    Zeta zeta;
};

// Tangent d(unknowns)/d(alpha1) along the curve.
Vec5 tangent(const FluidParams& p, const Zeta& z) {
    return curve_jacobian(p, z).partialPivLu().solve(-parameter_derivative(p, z.alpha1));
}

Zeta predict(const FluidParams& p, const Zeta& from, double alpha1) {
    const Vec5 t = tangent(p, from);
    const Vec5 v = unknowns(from) + (alpha1 - from.alpha1) * t;
    return with_unknowns(alpha1, v);
}

// Marches alpha1 from the symmetric seed in direction `dir` until the
// ordering degenerates; returns every accepted point, seed first.
std::vector<Marched> march(const FluidParams& p, const Zeta& seed, double dir, double scale, int& steps) {
    std::vector<Marched> out{{seed.alpha1, seed}};
    const double gap_tol = 1e-8 * scale;
    double step = 1e-2 * std::max(std::abs(seed.alpha), 1e-3 * scale);
    const double max_step = 0.05 * scale;
    constexpr double floor_step = 1e-10;
    while (step >= floor_step) {
        const Zeta& cur = out.back().zeta;
        double target = cur.alpha1 + dir * step;
        if (target > 0.0) target = 0.0;
        if (target == cur.alpha1) break;
        bool accepted = false;
        try {
            const Zeta z = solve_curve_point(p, target, predict(p, cur, target));
            if (min_gap(z) >= 0.0) {
                out.push_back({target, z});
                ++steps;
                accepted = true;
                if (min_gap(z) < gap_tol) break;
            }
        } catch (const NumericalError&) {
        }
        if (accepted)
            step = std::min(1.5 * step, max_step);
        else
            step *= 0.5;
    }
    return out;
}

const Marched& nearest(const std::vector<Marched>& pts, double alpha1) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (std::abs(pts[i].alpha1 - alpha1) < std::abs(pts[best].alpha1 - alpha1)) best = i;
    return pts[best];
}

// Curve for the large-R_mu layout.
Curve trace_large(const FluidParams& p, int n_points) {
    const RegimeThresholds thr = thresholds(p);
    const bool connected_ends = p.R_mu() >= thr.r_M || on_threshold(p.R_mu(), thr.r_M);
    const Zeta seed = even_zeta(p);
    const double alpha_star = seed.alpha;
    const double scale = seed.gamma;

    Curve curve{};
    curve.marched_steps = 0;
    const auto down = march(p, seed, -1.0, scale, curve.marched_steps);
    const auto up = march(p, seed, +1.0, scale, curve.marched_steps);

    const Zeta lower_exact = connected_ends ? connected_zeta(p) : solve_boundary_disconnected(p);
    const Zeta upper_exact = lower_exact.reflected();
    const EndpointKind kind = connected_ends ? EndpointKind::ConnectedSupport : EndpointKind::ZeroAlpha;

    const double lower_dist = max_abs_difference(down.back().zeta, lower_exact);
    const double upper_dist = max_abs_difference(up.back().zeta, upper_exact);
    const double approach_tol = 1e-2 * scale;
    if (!(lower_dist < approach_tol) || !(upper_dist < approach_tol)) {
        std::ostringstream os;
        os << "continue_curve: marching stalled away from the boundary solutions (distances " << lower_dist << ", "
           << upper_dist << ") for " << p.describe();
        throw ContinuationStall(os.str());
    }
    curve.lower = {alpha_star + lower_exact.alpha1, lower_exact, kind, lower_dist, min_gap(down.back().zeta)};
    curve.upper = {alpha_star + upper_exact.alpha1, upper_exact, kind, upper_dist, min_gap(up.back().zeta)};

    const int n = std::max(n_points, 3);
    const int n_lower = (n - 1) / 2;
    const int n_upper = n - 1 - n_lower;
    auto point_at = [&](double alpha1, const std::vector<Marched>& pts) {
        const Marched& m = nearest(pts, alpha1);
        return solve_curve_point(p, alpha1, predict(p, m.zeta, alpha1));
    };
    auto push = [&](const Zeta& z) { curve.points.push_back({alpha_star + z.alpha1, z, profile_from_zeta(p, z)}); };

    push(lower_exact);
    for (int i = 1; i < n_lower; ++i) {
        const double a1 = lower_exact.alpha1 + (seed.alpha1 - lower_exact.alpha1) * i / n_lower;
        push(point_at(a1, down));
    }
    curve.even_index = curve.points.size();
    push(seed);
    for (int i = 1; i < n_upper; ++i) {
        const double a1 = seed.alpha1 + (upper_exact.alpha1 - seed.alpha1) * i / n_upper;
        push(point_at(a1, up));
    }
    push(upper_exact);
    return curve;
}

}  // namespace

Eigen::Matrix<double, 5, 5> curve_jacobian(const FluidParams& p, const Zeta& z) {
    const double R = p.R(), Rmu = p.R_mu();
    const double k = Rmu - R - 1.0;
    const double d = Rmu - R;
    Eigen::Matrix<double, 5, 5> J = Eigen::Matrix<double, 5, 5>::Zero();
    // columns: gamma1, beta1, alpha, beta, gamma
    J(0, 0) = 2.0 * z.gamma1;
    J(0, 1) = -2.0 * d * z.beta1;
    J(1, 2) = 2.0 * k * z.alpha;
    J(1, 3) = -2.0 * d * z.beta;
    J(1, 4) = 2.0 * z.gamma;
    J(2, 0) = 2.0 * R * z.gamma1;
    J(2, 1) = 2.0 * d * z.beta1;
    J(2, 3) = -2.0 * d * z.beta;
    J(2, 4) = -2.0 * R * z.gamma;
    J(3, 1) = -3.0 * d * z.beta1 * z.beta1;
    J(3, 2) = -3.0 * R * k * z.alpha * z.alpha / (1.0 + R);
    J(3, 3) = 3.0 * d * z.beta * z.beta;
    J(4, 0) = -3.0 * z.gamma1 * z.gamma1;
    J(4, 1) = 3.0 * d * z.beta1 * z.beta1;
    J(4, 2) = 3.0 * k * z.alpha * z.alpha;
    J(4, 3) = -3.0 * d * z.beta * z.beta;
    J(4, 4) = 3.0 * z.gamma * z.gamma;
    return J;
}

double curve_jacobian_determinant_formula(const FluidParams& p, const Zeta& z) {
    const double R = p.R(), Rmu = p.R_mu();
    const double d = Rmu - R;
    return 72.0 * (Rmu - R - 1.0) * d * d * z.alpha * z.beta * z.beta1 * z.gamma * z.gamma1 *
           ((z.beta - z.beta1) * (z.gamma - z.alpha) + R * (z.gamma - z.gamma1) * (z.beta - z.alpha));
}

Zeta solve_curve_point(const FluidParams& p, double alpha1, const Zeta& guess, const NewtonConfig& cfg) {
    auto F = [&](const Eigen::VectorXd& v) {
        const auto r = curve_large_residuals(p, with_unknowns(alpha1, v));
        return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(r.data(), 5));
    };
    auto J = [&](const Eigen::VectorXd& v) {
        return Eigen::MatrixXd(curve_jacobian(p, with_unknowns(alpha1, v)));
    };
    const NewtonResult res = newton_solve(F, J, Eigen::VectorXd(unknowns(guess)), cfg);
    return with_unknowns(alpha1, res.x);
}

Curve continue_curve(const FluidParams& p, int n_points) {
    const RegimeThresholds thr = thresholds(p);
    const Regime reg = classify_regime(p, thr);
    if (reg.continuum == Continuum::UniqueEven) {
        std::ostringstream os;
        os << "continue_curve: only the even steady state exists for R_mu in [r_minus, r_plus] = [" << thr.r_minus
           << ", " << thr.r_plus << "], got " << p.describe();
        throw RegimeError(os.str());
    }
    if (p.R_mu() > p.R()) return trace_large(p, n_points);

    const DualParams d = dual_params(p);
    const Curve dual = trace_large(d.params, n_points);
    const double s = d.scale;
    Curve out{};
    out.even_index = dual.even_index;
    out.marched_steps = dual.marched_steps;
    for (const auto& pt : dual.points) {
        const Zeta z = pt.zeta.scaled(s);
        out.points.push_back({s * pt.ell, z, profile_from_zeta(p, z)});
    }
    auto map_end = [s](const CurveEndpoint& e) {
        return CurveEndpoint{s * e.ell, e.zeta.scaled(s), e.kind, s * e.approach_distance, s * e.approach_gap};
    };
    out.lower = map_end(dual.lower);
    out.upper = map_end(dual.upper);
    return out;
}

}  // namespace muskat
