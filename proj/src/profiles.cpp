#include "muskat/profiles.hpp"

#include "muskat/errors.hpp"
#include "muskat/numerics.hpp"

#include <cmath>
#include <sstream>

namespace muskat {

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

Side side_from_string(const std::string& s) {
    if (s == "left") return Side::Left;
    if (s == "right") return Side::Right;
    throw InvalidArgument("side must be 'left' or 'right', got '" + s + "'");
}

double max_abs_difference(const Zeta& a, const Zeta& b) {
    const auto x = a.as_array();
    const auto y = b.as_array();
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

ProfilePair::ProfilePair(PiecewiseQuadratic F, PiecewiseQuadratic G, FluidParams params, std::string label,
                         std::optional<Zeta> zeta)
    : F_(std::move(F)), G_(std::move(G)), params_(params), label_(std::move(label)), zeta_(zeta) {
    const double mF = integrate_moments(F_, 0);
    const double mG = integrate_moments(G_, 0);
    if (std::abs(mF - 1.0) > kMassTol || std::abs(mG - 1.0) > kMassTol) {
        std::ostringstream os;
        os.precision(17);
        os << "ProfilePair '" << label_ << "': masses must be 1, got F=" << mF << " G=" << mG;
        throw InvalidArgument(os.str());
    }
    const double scale = std::max(F_.max_value(), G_.max_value());
    if (F_.min_value() < -1e-10 * scale || G_.min_value() < -1e-10 * scale)
        throw InvalidArgument("ProfilePair '" + label_ + "': negative values");
    if (F_.continuity_defect() > 1e-10 || G_.continuity_defect() > 1e-10)
        throw InvalidArgument("ProfilePair '" + label_ + "': discontinuous at a breakpoint");
}

namespace {

double cube(double v) { return v * v * v; }
double sq(double v) { return v * v; }

// Exactly zero on the degenerate lines R_mu = R and R_mu = R + 1.
double snapped(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

// Piece on a <= |x| <= b, i.e. [a, b] and its mirror image.
void add_even(std::vector<QuadraticPiece>& out, double a, double b, double c0, double c2) {
    out.push_back({a, b, c0, c2});
    out.push_back({-b, -a, c0, c2});
}

// Piece on |x| <= b.
void add_centered(std::vector<QuadraticPiece>& out, double b, double c0, double c2) {
    out.push_back({-b, b, c0, c2});
}

void require_steady(const ProfilePair& pp) {
    const double res = steady_residual(pp);
    if (!(res < kSteadyTol)) {
        std::ostringstream os;
        os << "profile '" << pp.label() << "' has steady residual " << res;
        throw NumericalError(os.str());
    }
}

template <std::size_t N>
void require_residuals(const std::array<double, N>& r, double tol, const std::string& what) {
    if (!(max_abs(r) < tol)) {
        std::ostringstream os;
        os << what << ": residual " << max_abs(r) << " exceeds " << tol;
        throw NumericalError(os.str());
    }
}

std::string window(double lo, double hi) {
    std::ostringstream os;
    os.precision(10);
    os << "[" << lo << ", " << hi << "]";
    return os.str();
}

}  // namespace

// ---- even profiles ---------------------------------------------------------

double even_disconnected_function(const FluidParams& p, double y) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double a1 = 4.5 * Rmu * (1.0 + e2);
    const double b1 = (Rmu - R - 1.0) / (R + 1.0);
    const double s = std::sqrt(Rmu - R);
    const double a2 = 4.5 * Rmu * e2 * s;
    const double b2 = R * (Rmu - R - 1.0) * s / (R + 1.0);
    return sq(std::cbrt(a1 * y - b1)) - sq(std::cbrt(a2 * y + b2)) + Rmu - R - 1.0;
}

double even_disconnected_lower_bound(const FluidParams& p) { return 2.0 / (9.0 * p.eta2() * (1.0 + p.R())); }

std::array<double, 3> even_case3_residuals(const FluidParams& p, const EvenBreakpoints& b) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double a3 = cube(b.alpha), b3 = cube(b.beta), g3 = cube(b.gamma);
    return {(Rmu - R) * b3 - R * (Rmu - R - 1.0) * a3 / (1.0 + R) - 4.5 * e2 * Rmu,
            g3 - (Rmu - R) * b3 + (Rmu - R - 1.0) * a3 - 4.5 * Rmu,
            sq(b.gamma) - (Rmu - R) * sq(b.beta) + (Rmu - R - 1.0) * sq(b.alpha)};
}

std::array<double, 3> even_case4_residuals(const FluidParams& p, const EvenBreakpoints& b) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double a3 = cube(b.alpha), b3 = cube(b.beta), g3 = cube(b.gamma);
    return {(1.0 + R - Rmu) * b3 - (R - Rmu) * a3 - 4.5 * Rmu,
            Rmu * g3 - R * (1.0 + R - Rmu) * b3 + (1.0 + R) * (R - Rmu) * a3 - 4.5 * Rmu * (1.0 + R) * e2,
            Rmu * sq(b.gamma) - R * (1.0 + R - Rmu) * sq(b.beta) + (1.0 + R) * (R - Rmu) * sq(b.alpha)};
}

EvenBreakpoints solve_even_case3(const FluidParams& p) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double r_plus = r_plus_of(R, p.eta());
    const bool at_threshold = on_threshold(Rmu, r_plus);
    if (Rmu < r_plus && !at_threshold)
        throw RegimeError("even profile with disconnected G requires R_mu >= r_plus = " +
                          window(r_plus, INFINITY) + ", got " + p.describe());

    double alpha3 = 0.0;
    if (!at_threshold) {
        auto xi = [&p](double y) { return even_disconnected_function(p, y); };
        const double lo = even_disconnected_lower_bound(p);
        const double hi = expand_bracket(xi, lo, 2.0 * lo);
        const double Y = find_root_bracketed(xi, lo, hi);
        alpha3 = 1.0 / Y;
    }
    EvenBreakpoints b{};
    b.alpha = std::cbrt(alpha3);
    b.beta = std::cbrt(R * (Rmu - R - 1.0) * alpha3 / ((R + 1.0) * (Rmu - R)) + 4.5 * Rmu * e2 / (Rmu - R));
    b.gamma = std::cbrt(-(Rmu - R - 1.0) * alpha3 / (R + 1.0) + 4.5 * Rmu * (1.0 + e2));

    if (!(b.alpha >= 0.0 && b.alpha < b.beta && b.beta < b.gamma))
        throw NumericalError("solve_even_case3: breakpoints are not ordered");
    if (!(alpha3 < 4.5 * (1.0 + R) * e2)) throw NumericalError("solve_even_case3: alpha exceeds its bound");
    require_residuals(even_case3_residuals(p, b), kSystemTol, "solve_even_case3");
    return b;
}

EvenBreakpoints solve_even_case4(const FluidParams& p) {
    const double r_minus = r_minus_of(p.R(), p.eta());
    if (p.R_mu() > r_minus && !on_threshold(p.R_mu(), r_minus))
        throw RegimeError("even profile with disconnected F requires R_mu <= r_minus = " + window(0, r_minus) +
                          ", got " + p.describe());
    const DualParams d = dual_params(p);
    const EvenBreakpoints db = solve_even_case3(d.params);
    const EvenBreakpoints b{d.scale * db.alpha, d.scale * db.beta, d.scale * db.gamma};
    if (!(b.alpha >= 0.0 && b.alpha < b.beta && b.beta < b.gamma))
        throw NumericalError("solve_even_case4: breakpoints are not ordered");
    require_residuals(even_case4_residuals(p, b), kSystemTol, "solve_even_case4");
    return b;
}

ProfilePair even_profile(const FluidParams& p) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const Regime reg = classify_regime(p);
    std::vector<QuadraticPiece> F;
    std::vector<QuadraticPiece> G;
    std::string label;

    switch (reg.even) {
        case EvenCase::Case1:
        case EvenCase::Case2: {
            const double beta = std::cbrt(4.5 * e2 * Rmu / (Rmu - R));
            const double gamma = reg.even == EvenCase::Case1 ? beta : std::cbrt(4.5 * Rmu * (1.0 + e2));
            const double upper_gap = snapped(1.0 + R - Rmu);
            add_centered(F, beta, (Rmu - R) * sq(beta) / (6.0 * Rmu * e2), -(Rmu - R) / (6.0 * Rmu * e2));
            add_centered(G, beta, (sq(gamma) + (R - Rmu) * sq(beta)) / (6.0 * Rmu), -upper_gap / (6.0 * Rmu));
            add_even(G, beta, gamma, sq(gamma) / (6.0 * Rmu), -1.0 / (6.0 * Rmu));
            label = reg.even == EvenCase::Case1 ? "even case (i)" : "even case (ii)";
            break;
        }
        case EvenCase::Case3: {
            const auto [alpha, beta, gamma] = solve_even_case3(p);
            add_centered(F, alpha,
                     ((Rmu - R) * sq(beta) / (6.0 * Rmu) + R * (1.0 + R - Rmu) * sq(alpha) / (6.0 * Rmu * (1.0 + R))) /
                         e2,
                     -1.0 / (6.0 * (1.0 + R) * e2));
            add_even(F, alpha, beta, (Rmu - R) * sq(beta) / (6.0 * Rmu * e2), -(Rmu - R) / (6.0 * Rmu * e2));
            add_even(G, alpha, beta, (1.0 + R - Rmu) * sq(alpha) / (6.0 * Rmu), -(1.0 + R - Rmu) / (6.0 * Rmu));
            add_even(G, beta, gamma, sq(gamma) / (6.0 * Rmu), -1.0 / (6.0 * Rmu));
            label = "even case (iii)";
            break;
        }
        case EvenCase::Case4: {
            const auto [alpha, beta, gamma] = solve_even_case4(p);
            add_even(F, alpha, beta, (Rmu - R) * sq(alpha) / (6.0 * Rmu * e2), -(Rmu - R) / (6.0 * Rmu * e2));
            add_even(F, beta, gamma, sq(gamma) / (6.0 * (1.0 + R) * e2), -1.0 / (6.0 * (1.0 + R) * e2));
            add_centered(G, alpha, ((Rmu - R) * sq(alpha) + (1.0 + R - Rmu) * sq(beta)) / (6.0 * Rmu),
                     -1.0 / (6.0 * Rmu));
            add_even(G, alpha, beta, (1.0 + R - Rmu) * sq(beta) / (6.0 * Rmu), -(1.0 + R - Rmu) / (6.0 * Rmu));
            label = "even case (iv)";
            break;
        }
        case EvenCase::Case5: {
            const double beta = std::cbrt(4.5 * Rmu / (1.0 + R - Rmu));
            const double gamma = std::cbrt(4.5 * ((1.0 + R) * e2 + R));
            const double lower_gap = snapped(Rmu - R);
            add_centered(F, beta,
                     (sq(gamma) / (6.0 * (1.0 + R)) - R * (1.0 + R - Rmu) * sq(beta) / (6.0 * (1.0 + R) * Rmu)) / e2,
                     -lower_gap / (6.0 * Rmu * e2));
            add_even(F, beta, gamma, sq(gamma) / (6.0 * (1.0 + R) * e2), -1.0 / (6.0 * (1.0 + R) * e2));
            add_centered(G, beta, (1.0 + R - Rmu) * sq(beta) / (6.0 * Rmu), -(1.0 + R - Rmu) / (6.0 * Rmu));
            label = "even case (v)";
            break;
        }
    }
    ProfilePair pp(PiecewiseQuadratic(std::move(F)), PiecewiseQuadratic(std::move(G)), p, label);
    require_steady(pp);
    return pp;
}

// ---- connected non-symmetric profiles ---------------------------------------

double connected_function(const FluidParams& p, double z) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double k = Rmu - R - 1.0;
    const double lower = (1.0 + R) * (Rmu - R) - R * k * z * z;
    const double upper = Rmu - R - k * z * z;
    return -(1.0 + e2) * (1.0 + R) * (Rmu - R) - std::pow(lower, 1.5) / std::sqrt(Rmu) +
           e2 * (1.0 + R) * std::pow(upper, 1.5) + k * (R + e2 * (1.0 + R)) * cube(z);
}

std::array<double, 4> connected_large_residuals(const FluidParams& p, const ConnectedBreakpoints& b) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double k = Rmu - R - 1.0;
    return {Rmu * cube(b.beta1) - (1.0 + R) * (Rmu - R) * cube(b.beta) + R * k * cube(b.alpha) +
                9.0 * e2 * Rmu * (1.0 + R),
            cube(b.gamma) - (Rmu - R) * cube(b.beta) + k * cube(b.alpha) - 9.0 * Rmu,
            sq(b.gamma) - (Rmu - R) * sq(b.beta) + k * sq(b.alpha),
            Rmu * sq(b.beta1) - (1.0 + R) * (Rmu - R) * sq(b.beta) + R * k * sq(b.alpha)};
}

std::array<double, 4> connected_small_residuals(const FluidParams& p, const ConnectedBreakpoints& b) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    return {Rmu * cube(b.gamma) + (1.0 + R) * (R - Rmu) * cube(b.alpha) - R * (1.0 + R - Rmu) * cube(b.beta) -
                9.0 * e2 * Rmu * (1.0 + R),
            -cube(b.beta1) - (R - Rmu) * cube(b.alpha) + (1.0 + R - Rmu) * cube(b.beta) - 9.0 * Rmu,
            Rmu * sq(b.gamma) + (1.0 + R) * (R - Rmu) * sq(b.alpha) - R * (1.0 + R - Rmu) * sq(b.beta),
            sq(b.beta1) + (R - Rmu) * sq(b.alpha) - (1.0 + R - Rmu) * sq(b.beta)};
}

ConnectedBreakpoints solve_connected(const FluidParams& p) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const RegimeThresholds thr = thresholds(p);
    const bool at_threshold = on_threshold(Rmu, thr.r_M);
    if (Rmu < thr.r_M && !at_threshold)
        throw RegimeError("connected non-symmetric profile requires R_mu >= r_M or R_mu <= r_m; admissible "
                          "windows (0, " + std::to_string(thr.r_m) + "] and [" + std::to_string(thr.r_M) +
                          ", inf), got " + p.describe());
    double z = 0.0;
    if (!at_threshold) {
        auto f = [&p](double s) { return connected_function(p, s); };
        if (f(0.0) > 0.0) z = find_root_bracketed(f, 0.0, 1.0);
    }
    const double k = Rmu - R - 1.0;
    const double x = std::sqrt(Rmu - R - k * z * z);
    const double y = -std::sqrt(((1.0 + R) * (Rmu - R) - R * k * z * z) / Rmu);
    const double beta = std::cbrt(9.0 * e2 * Rmu * (1.0 + R) / (R * k * z * z * (1.0 - z) + Rmu * y * y * (1.0 - y)));
    ConnectedBreakpoints b{y * beta, z * beta, beta, x * beta};
    if (!(-b.beta1 > b.alpha && b.alpha >= 0.0 && b.alpha < b.beta && b.beta < b.gamma))
        throw NumericalError("solve_connected: breakpoints are not ordered");
    require_residuals(connected_large_residuals(p, b), kSystemTol, "solve_connected");
    return b;
}

ConnectedBreakpoints connected_breakpoints(const FluidParams& p) {
    const RegimeThresholds thr = thresholds(p);
    if (p.R_mu() <= thr.r_m || on_threshold(p.R_mu(), thr.r_m)) {
        const DualParams d = dual_params(p);
        const ConnectedBreakpoints db = solve_connected(d.params);
        const double s = d.scale;
        const ConnectedBreakpoints b{s * db.beta1, s * db.alpha, s * db.beta, s * db.gamma};
        require_residuals(connected_small_residuals(p, b), kSystemTol, "connected_breakpoints");
        return b;
    }
    return solve_connected(p);
}

ProfilePair connected_profile(const FluidParams& p, Side side) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const ConnectedBreakpoints b = connected_breakpoints(p);
    std::vector<QuadraticPiece> F;
    std::vector<QuadraticPiece> G;
    std::string label;
    if (Rmu > R + 1.0) {
        F.push_back({b.beta1, b.alpha, sq(b.beta1) / (6.0 * (1.0 + R) * e2), -1.0 / (6.0 * (1.0 + R) * e2)});
        F.push_back({b.alpha, b.beta, (Rmu - R) * sq(b.beta) / (6.0 * Rmu * e2), -(Rmu - R) / (6.0 * Rmu * e2)});
        G.push_back({b.alpha, b.beta, (1.0 + R - Rmu) * sq(b.alpha) / (6.0 * Rmu), -(1.0 + R - Rmu) / (6.0 * Rmu)});
        G.push_back({b.beta, b.gamma, sq(b.gamma) / (6.0 * Rmu), -1.0 / (6.0 * Rmu)});
        label = "connected (large R_mu)";
    } else {
        F.push_back({b.alpha, b.beta, (Rmu - R) * sq(b.alpha) / (6.0 * Rmu * e2), -(Rmu - R) / (6.0 * Rmu * e2)});
        F.push_back({b.beta, b.gamma, sq(b.gamma) / (6.0 * (1.0 + R) * e2), -1.0 / (6.0 * (1.0 + R) * e2)});
        G.push_back({b.beta1, b.alpha, sq(b.beta1) / (6.0 * Rmu), -1.0 / (6.0 * Rmu)});
        G.push_back({b.alpha, b.beta, (1.0 + R - Rmu) * sq(b.beta) / (6.0 * Rmu), -(1.0 + R - Rmu) / (6.0 * Rmu)});
        label = "connected (small R_mu)";
    }
    const Zeta zeta{b.beta1, b.beta1, b.beta1, b.alpha, b.beta, b.gamma};
    ProfilePair pp(PiecewiseQuadratic(std::move(F)), PiecewiseQuadratic(std::move(G)), p, label, zeta);
    require_steady(pp);
    return side == Side::Right ? pp : reflect(pp);
}

Zeta connected_zeta(const FluidParams& p) {
    const ConnectedBreakpoints b = connected_breakpoints(p);
    return {b.beta1, b.beta1, b.beta1, b.alpha, b.beta, b.gamma};
}

Zeta even_zeta(const FluidParams& p) {
    const Regime reg = classify_regime(p);
    EvenBreakpoints b{};
    if (reg.even == EvenCase::Case3)
        b = solve_even_case3(p);
    else if (reg.even == EvenCase::Case4)
        b = solve_even_case4(p);
    else
        throw RegimeError("even_zeta: the even profile has connected supports for " + p.describe());
    return {-b.gamma, -b.beta, -b.alpha, b.alpha, b.beta, b.gamma};
}

// ---- disconnected non-symmetric profiles ------------------------------------

double boundary_lower_end(const FluidParams& p) {
    const double R = p.R(), Rmu = p.R_mu();
    return -std::sqrt((1.0 + R) * (Rmu - R) / Rmu);
}

double boundary_function(const FluidParams& p, double y) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double d = Rmu - R;
    const double q = std::pow(d / R, 1.5);
    const double y2 = y * y;
    return (1.0 + e2) * d * cube(y) + e2 * q * std::pow(std::max(0.0, 1.0 + R - y2), 1.5) +
           (R + e2 * (1.0 + R)) * q * std::sqrt((1.0 + R) / (d - 1.0)) * std::pow(std::max(0.0, y2 - 1.0), 1.5) +
           e2 * std::pow(d, 1.5) - (1.0 + e2) * d;
}

Zeta solve_boundary_disconnected(const FluidParams& p) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const RegimeThresholds thr = thresholds(p);
    if (!(Rmu > thr.r_plus && Rmu < thr.r_M) || on_threshold(Rmu, thr.r_plus) || on_threshold(Rmu, thr.r_M))
        throw RegimeError("disconnected endpoint profile requires r_plus < R_mu < r_M, window (" +
                          std::to_string(thr.r_plus) + ", " + std::to_string(thr.r_M) + "), got " + p.describe());
    const double d = Rmu - R;
    auto f = [&p](double y) { return boundary_function(p, y); };
    const double y = find_root_bracketed(f, boundary_lower_end(p), -1.0);
    const double t = std::sqrt(d);
    const double x = -std::sqrt(d / R) * std::sqrt(1.0 + R - y * y);
    const double z = -std::sqrt((1.0 + R) * d / (R * (d - 1.0))) * std::sqrt(y * y - 1.0);
    const double B = d * (1.0 - cube(y)) -
                     std::pow(d, 1.5) * std::sqrt((1.0 + R) / (R * (d - 1.0))) * std::pow(y * y - 1.0, 1.5);
    const double beta = std::cbrt(9.0 * e2 * Rmu / B);
    const Zeta zeta{x * beta, y * beta, z * beta, 0.0, beta, t * beta};
    if (!(zeta.gamma1 < zeta.beta1 && zeta.beta1 < zeta.alpha1 && zeta.alpha1 < 0.0 && zeta.beta < zeta.gamma))
        throw NumericalError("solve_boundary_disconnected: breakpoints are not ordered");
    require_residuals(curve_large_residuals(p, zeta), kSystemTol, "solve_boundary_disconnected");
    return zeta;
}

std::array<double, 5> curve_large_residuals(const FluidParams& p, const Zeta& z) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double k = Rmu - R - 1.0;
    const double d = Rmu - R;
    const double db3 = cube(z.beta) - cube(z.beta1);
    const double da3 = cube(z.alpha) - cube(z.alpha1);
    return {sq(z.gamma1) - d * sq(z.beta1) + k * sq(z.alpha1), sq(z.gamma) - d * sq(z.beta) + k * sq(z.alpha),
            R * (sq(z.gamma1) - sq(z.gamma)) + d * (sq(z.beta1) - sq(z.beta)),
            d * db3 - R * k * da3 / (1.0 + R) - 9.0 * e2 * Rmu,
            (cube(z.gamma) - cube(z.gamma1)) - d * db3 + k * da3 - 9.0 * Rmu};
}

std::array<double, 5> curve_small_residuals(const FluidParams& p, const Zeta& z) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const double u = 1.0 + R - Rmu;
    const double w = R - Rmu;
    const double db3 = cube(z.beta) - cube(z.beta1);
    const double da3 = cube(z.alpha) - cube(z.alpha1);
    return {Rmu * sq(z.gamma1) - R * u * sq(z.beta1) + (1.0 + R) * w * sq(z.alpha1),
            Rmu * sq(z.gamma) - R * u * sq(z.beta) + (1.0 + R) * w * sq(z.alpha),
            Rmu * (sq(z.gamma) - sq(z.gamma1)) + w * (sq(z.alpha) - sq(z.alpha1)),
            Rmu * (cube(z.gamma) - cube(z.gamma1)) - R * u * db3 + (1.0 + R) * w * da3 - 9.0 * e2 * Rmu * (1.0 + R),
            u * db3 - w * da3 - 9.0 * Rmu};
}

std::array<double, 5> curve_residuals(const FluidParams& p, const Zeta& z) {
    if (p.R_mu() > p.R() + 1.0) return curve_large_residuals(p, z);
    if (p.R_mu() < p.R()) return curve_small_residuals(p, z);
    throw RegimeError("no non-symmetric steady states for R <= R_mu <= R + 1, got " + p.describe());
}

ProfilePair profile_from_zeta(const FluidParams& p, const Zeta& z) {
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    const bool large = Rmu > R + 1.0;
    if (!large && !(Rmu < R))
        throw InvalidZeta("profile_from_zeta: no non-symmetric steady states for " + p.describe());

    const auto a = z.as_array();
    const double scale = std::max(std::abs(z.gamma1), std::abs(z.gamma));
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] > a[i + 1] + 1e-12 * scale) throw InvalidZeta("profile_from_zeta: sextuplet is not ordered");
    if (z.alpha1 > 1e-12 * scale || z.alpha < -1e-12 * scale)
        throw InvalidZeta("profile_from_zeta: alpha1 <= 0 <= alpha violated");
    const double res = max_abs(curve_residuals(p, z));
    const double res_scale = std::max({1.0, 9.0 * Rmu, 9.0 * e2 * Rmu * (1.0 + R)});
    if (!(res < 1e-9 * res_scale))
        throw InvalidZeta("profile_from_zeta: residual " + std::to_string(res) + " too large");

    std::vector<QuadraticPiece> F;
    std::vector<QuadraticPiece> G;
    const double u = 1.0 + R - Rmu;
    const double d = Rmu - R;
    if (large) {
        F.push_back({z.beta1, z.alpha1, d * sq(z.beta1) / (6.0 * Rmu * e2), -d / (6.0 * Rmu * e2)});
        F.push_back({z.alpha1, z.alpha, (R * sq(z.gamma1) + d * sq(z.beta1)) / (6.0 * (1.0 + R) * Rmu * e2),
                     -1.0 / (6.0 * (1.0 + R) * e2)});
        F.push_back({z.alpha, z.beta, d * sq(z.beta) / (6.0 * Rmu * e2), -d / (6.0 * Rmu * e2)});
        G.push_back({z.gamma1, z.beta1, sq(z.gamma1) / (6.0 * Rmu), -1.0 / (6.0 * Rmu)});
        G.push_back({z.beta1, z.alpha1, u * sq(z.alpha1) / (6.0 * Rmu), -u / (6.0 * Rmu)});
        G.push_back({z.alpha, z.beta, u * sq(z.alpha) / (6.0 * Rmu), -u / (6.0 * Rmu)});
        G.push_back({z.beta, z.gamma, sq(z.gamma) / (6.0 * Rmu), -1.0 / (6.0 * Rmu)});
    } else {
        F.push_back({z.gamma1, z.beta1, sq(z.gamma1) / (6.0 * (1.0 + R) * e2), -1.0 / (6.0 * (1.0 + R) * e2)});
        F.push_back({z.beta1, z.alpha1, d * sq(z.alpha1) / (6.0 * Rmu * e2), -d / (6.0 * Rmu * e2)});
        F.push_back({z.alpha, z.beta, d * sq(z.alpha) / (6.0 * Rmu * e2), -d / (6.0 * Rmu * e2)});
        F.push_back({z.beta, z.gamma, sq(z.gamma) / (6.0 * (1.0 + R) * e2), -1.0 / (6.0 * (1.0 + R) * e2)});
        G.push_back({z.beta1, z.alpha1, u * sq(z.beta1) / (6.0 * Rmu), -u / (6.0 * Rmu)});
        G.push_back({z.alpha1, z.alpha, (d * sq(z.alpha1) + u * sq(z.beta1)) / (6.0 * Rmu), -1.0 / (6.0 * Rmu)});
        G.push_back({z.alpha, z.beta, u * sq(z.beta) / (6.0 * Rmu), -u / (6.0 * Rmu)});
    }
    ProfilePair pp(PiecewiseQuadratic(std::move(F)), PiecewiseQuadratic(std::move(G)), p,
                   large ? "curve point (large R_mu)" : "curve point (small R_mu)", z);
    require_steady(pp);
    return pp;
}

CurvePoint boundary_disconnected_profile(const FluidParams& p, Side side) {
    const RegimeThresholds thr = thresholds(p);
    Zeta z{};
    if (p.R_mu() < p.R()) {
        if (!(p.R_mu() > thr.r_m && p.R_mu() < thr.r_minus) || on_threshold(p.R_mu(), thr.r_m) ||
            on_threshold(p.R_mu(), thr.r_minus))
            throw RegimeError("disconnected endpoint profile requires r_m < R_mu < r_minus, window (" +
                              std::to_string(thr.r_m) + ", " + std::to_string(thr.r_minus) + "), got " +
                              p.describe());
        const DualParams d = dual_params(p);
        z = solve_boundary_disconnected(d.params).scaled(d.scale);
    } else {
        z = solve_boundary_disconnected(p);
    }
    if (side == Side::Left) z = z.reflected();
    const double alpha_even = even_zeta(p).alpha;
    return {alpha_even + z.alpha1, z, profile_from_zeta(p, z)};
}

// ---- transforms and checks ---------------------------------------------------

ProfilePair reflect(const ProfilePair& pp) {
    std::optional<Zeta> z;
    if (pp.zeta()) z = pp.zeta()->reflected();
    return ProfilePair(pp.F().reflected(), pp.G().reflected(), pp.params(), pp.label(), z);
}

ProfilePair dual_transform(const ProfilePair& pp) {
    const DualParams d = dual_params(pp.params());
    const double lambda = d.scale;
    std::optional<Zeta> z;
    if (pp.zeta()) z = pp.zeta()->scaled(1.0 / lambda);
    return ProfilePair(pp.G().rescaled(lambda, lambda), pp.F().rescaled(lambda, lambda), d.params,
                       "dual of " + pp.label(), z);
}

double steady_residual(const PiecewiseQuadratic& F, const PiecewiseQuadratic& G, const FluidParams& p,
                       int samples) {
    if (F.empty() && G.empty()) return 0.0;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto* q : {&F, &G})
        if (!q->empty()) {
            lo = std::min(lo, q->left_end());
            hi = std::max(hi, q->right_end());
        }
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double x = lo + (k + 0.5) * (hi - lo) / samples;
        const double dF = F.derivative(x);
        const double dG = G.derivative(x);
        const double r1 = F(x) * (e2 * (1.0 + R) * dF + R * dG + x / 3.0);
        const double r2 = G(x) * (Rmu * e2 * dF + Rmu * dG + x / 3.0);
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    return worst;
}

double steady_residual(const ProfilePair& pp, int samples) {
    return steady_residual(pp.F(), pp.G(), pp.params(), samples);
}

double max_difference(const ProfilePair& a, const ProfilePair& b) {
    return std::max(max_difference(a.F(), b.F()), max_difference(a.G(), b.G()));
}

}  // namespace muskat
