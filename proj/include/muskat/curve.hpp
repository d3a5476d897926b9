#pragma once

#include "muskat/numerics.hpp"
#include "muskat/profiles.hpp"

#include <vector>

namespace muskat {

enum class EndpointKind { ConnectedSupport, ZeroAlpha };
std::string to_string(EndpointKind k);

struct CurveEndpoint {
    double ell;
    Zeta zeta;
    EndpointKind kind;
    // Distance between the last marched point and the exact boundary
    // solution that replaced it.
    double approach_distance;
    double approach_gap;
};

struct Curve {
    std::vector<CurvePoint> points;  // ordered by increasing ell
    std::size_t even_index;
    CurveEndpoint lower;
    CurveEndpoint upper;
    int marched_steps;
};

// Jacobian of the five-equation large-R_mu system with respect to
// (gamma1, beta1, alpha, beta, gamma), alpha1 held fixed.
Eigen::Matrix<double, 5, 5> curve_jacobian(const FluidParams& p, const Zeta& z);

// Closed-form determinant of curve_jacobian (up to sign).
double curve_jacobian_determinant_formula(const FluidParams& p, const Zeta& z);

// Solves the large-R_mu system at fixed alpha1 by Newton from `guess`.
Zeta solve_curve_point(const FluidParams& p, double alpha1, const Zeta& guess, const NewtonConfig& cfg = {});

// Traces the whole family of non-symmetric steady states between its two
// endpoints; valid for R_mu > r_plus or R_mu < r_minus.
Curve continue_curve(const FluidParams& p, int n_points);

}  // namespace muskat
