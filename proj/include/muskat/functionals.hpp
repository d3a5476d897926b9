#pragma once

#include "muskat/grid.hpp"
#include "muskat/profiles.hpp"

#include <optional>
#include <span>
#include <vector>

namespace muskat {

struct FunctionalReport {
    double mass_f;
    double mass_g;
    double energy;           // E
    double rescaled_energy;  // E_* = E + M2 / 6
    double m1;
    double m2;
    double entropy;                     // H
    std::optional<double> dissipation;  // I, grid states only
};

FunctionalReport evaluate(const PiecewiseQuadratic& u, const PiecewiseQuadratic& v, const FluidParams& p);
FunctionalReport evaluate(const ProfilePair& pp);
// Cell averages are used as midpoint values.
FunctionalReport evaluate(const Grid& grid, std::span<const double> f, std::span<const double> g,
                          const FluidParams& p);

// I(f, g) on a grid state; central differences in the interior, one-sided
// in the two boundary cells.
double dissipation(const Grid& grid, std::span<const double> f, std::span<const double> g, const FluidParams& p);

// E_* of the steady state with breakpoints zeta, from fifth powers of the
// breakpoints. Handles both the large and the small R_mu layouts.
double closed_form_curve_energy(const FluidParams& p, const Zeta& z);

struct EnergySample {
    double ell;
    double quadrature;
    double closed_form;
};

// Throws MismatchError when the two evaluations differ by more than `tol`.
std::vector<EnergySample> energy_along_curve(std::span<const CurvePoint> curve, double tol = 1e-9);

struct UnimodalityCheck {
    bool unimodal;
    std::size_t argmin;
    int sign_changes;
};

// Signs of consecutive differences, ignoring those with |dE| <= tol.
UnimodalityCheck check_unimodal(std::span<const EnergySample> samples, double tol = 1e-12);

}  // namespace muskat
