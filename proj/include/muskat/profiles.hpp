#pragma once

#include "muskat/params.hpp"
#include "muskat/piecewise.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace muskat {

enum class Side { Left, Right };
std::string to_string(Side s);
Side side_from_string(const std::string& s);

// Breakpoints (gamma1, beta1, alpha1, alpha, beta, gamma) of a non-symmetric
// steady state, ordered gamma1 <= beta1 <= alpha1 <= 0 <= alpha <= beta <= gamma.
struct Zeta {
    double gamma1;
    double beta1;
    double alpha1;
    double alpha;
    double beta;
    double gamma;

    std::array<double, 6> as_array() const { return {gamma1, beta1, alpha1, alpha, beta, gamma}; }
    static Zeta from_array(const std::array<double, 6>& a) { return {a[0], a[1], a[2], a[3], a[4], a[5]}; }
    // Mirror image: -reverse(zeta).
    Zeta reflected() const { return {-gamma, -beta, -alpha, -alpha1, -beta1, -gamma1}; }
    Zeta scaled(double s) const { return {s * gamma1, s * beta1, s * alpha1, s * alpha, s * beta, s * gamma}; }
};

double max_abs_difference(const Zeta& a, const Zeta& b);

// A steady pair (F, G) with unit masses. Construction checks masses,
// non-negativity and continuity.
class ProfilePair {
public:
    ProfilePair(PiecewiseQuadratic F, PiecewiseQuadratic G, FluidParams params, std::string label,
                std::optional<Zeta> zeta = std::nullopt);

    const PiecewiseQuadratic& F() const noexcept { return F_; }
    const PiecewiseQuadratic& G() const noexcept { return G_; }
    const FluidParams& params() const noexcept { return params_; }
    const std::string& label() const noexcept { return label_; }
    const std::optional<Zeta>& zeta() const noexcept { return zeta_; }

    std::vector<Interval> support_F() const { return F_.support(); }
    std::vector<Interval> support_G() const { return G_.support(); }

private:
    PiecewiseQuadratic F_;
    PiecewiseQuadratic G_;
    FluidParams params_;
    std::string label_;
    std::optional<Zeta> zeta_;
};

inline constexpr double kMassTol = 1e-10;
inline constexpr double kSteadyTol = 1e-9;
inline constexpr double kSystemTol = 1e-10;

// ---- even profiles ---------------------------------------------------------

struct EvenBreakpoints {
    double alpha;
    double beta;
    double gamma;
};

// Scalar reduction for the even case with disconnected G; zero at alpha^-3.
double even_disconnected_function(const FluidParams& p, double y);
double even_disconnected_lower_bound(const FluidParams& p);

EvenBreakpoints solve_even_case3(const FluidParams& p);
EvenBreakpoints solve_even_case4(const FluidParams& p);

std::array<double, 3> even_case3_residuals(const FluidParams& p, const EvenBreakpoints& b);
std::array<double, 3> even_case4_residuals(const FluidParams& p, const EvenBreakpoints& b);

ProfilePair even_profile(const FluidParams& p);

// ---- connected non-symmetric profiles ---------------------------------------

struct ConnectedBreakpoints {
    double beta1;
    double alpha;
    double beta;
    double gamma;
};

// Scalar reduction in z = alpha / beta on [0, 1].
double connected_function(const FluidParams& p, double z);

// Valid for R_mu >= r_M; layout F on (beta1, beta), G on (alpha, gamma).
ConnectedBreakpoints solve_connected(const FluidParams& p);

// Residuals of the four-equation systems for the large and small R_mu layouts.
std::array<double, 4> connected_large_residuals(const FluidParams& p, const ConnectedBreakpoints& b);
std::array<double, 4> connected_small_residuals(const FluidParams& p, const ConnectedBreakpoints& b);

// Breakpoints of connected_profile(p, Side::Right) in the layout matching
// the regime (large or small R_mu).
ConnectedBreakpoints connected_breakpoints(const FluidParams& p);

ProfilePair connected_profile(const FluidParams& p, Side side = Side::Right);

// ---- disconnected non-symmetric profiles and the curve ----------------------

// Scalar reduction for the curve endpoint with alpha = 0; y in (y0, -1).
double boundary_function(const FluidParams& p, double y);
double boundary_lower_end(const FluidParams& p);  // y0

// Sextuplet with alpha = 0 for r_plus < R_mu < r_M.
Zeta solve_boundary_disconnected(const FluidParams& p);

// Residuals of the five-equation system; the layout follows R_mu > R + 1
// (large) or R_mu < R (small).
std::array<double, 5> curve_large_residuals(const FluidParams& p, const Zeta& z);
std::array<double, 5> curve_small_residuals(const FluidParams& p, const Zeta& z);
std::array<double, 5> curve_residuals(const FluidParams& p, const Zeta& z);

ProfilePair profile_from_zeta(const FluidParams& p, const Zeta& zeta);

struct CurvePoint {
    double ell;
    Zeta zeta;
    ProfilePair profile;
};

CurvePoint boundary_disconnected_profile(const FluidParams& p, Side side = Side::Right);

// Embeddings of the symmetric and the connected solutions as sextuplets.
Zeta even_zeta(const FluidParams& p);
Zeta connected_zeta(const FluidParams& p);

// ---- transforms and checks ---------------------------------------------------

ProfilePair reflect(const ProfilePair& pp);
ProfilePair dual_transform(const ProfilePair& pp);

double steady_residual(const PiecewiseQuadratic& F, const PiecewiseQuadratic& G, const FluidParams& p,
                       int samples = 10000);
double steady_residual(const ProfilePair& pp, int samples = 10000);

double max_difference(const ProfilePair& a, const ProfilePair& b);

template <std::size_t N>
double max_abs(const std::array<double, N>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v < 0 ? -v : v);
    return m;
}

}  // namespace muskat
