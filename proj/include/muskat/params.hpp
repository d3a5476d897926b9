#pragma once

#include <string>

namespace muskat {

// Dimensionless parameters of the rescaled two-layer system.
//   density_ratio    R
//   viscosity_ratio  R_mu
//   mass_ratio       eta (square root of the ratio of the layer masses)
class FluidParams {
public:
    FluidParams(double density_ratio, double viscosity_ratio, double mass_ratio);

    double R() const noexcept { return R_; }
    double R_mu() const noexcept { return R_mu_; }
    double eta() const noexcept { return eta_; }
    double eta2() const noexcept { return eta_ * eta_; }

    // Weight of the lower layer in the moments and the entropy.
    double theta() const noexcept { return R_ / (eta2() * R_mu_); }

    std::string describe() const;

private:
    double R_;
    double R_mu_;
    double eta_;
};

struct PhysicalFluids {
    double rho_minus;
    double rho_plus;
    double mu_minus;
    double mu_plus;
    double f0_mass;
    double g0_mass;
};

FluidParams from_physical(const PhysicalFluids& phys);

// Inequality satisfied by real fluid pairs (heavier fluid more viscous enough);
// equivalent to R_mu < r_minus(R, eta) once mapped through from_physical.
bool physical_regime_inequality(const PhysicalFluids& phys);

struct RegimeThresholds {
    double r_minus;
    double r0;
    double r_plus;
    double r_M;
    double r_m;
    // Residuals of the defining scalar equations, kept for reporting.
    double r_M_residual;
    double r_m_residual;
    // Root bracket [lo, hi] of t_M = r_M - R after expansion.
    double t_M_bracket_lo;
    double t_M_bracket_hi;
};

double r0_of(double R, double eta);
double r_plus_of(double R, double eta);
double r_minus_of(double R, double eta);

// Scalar function whose unique zero on (1, inf) is r_M - R.
double connected_threshold_function(double R, double eta, double t);

// Left-hand side minus right-hand side of the equations characterising
// r_M and r_m. Zero at the exact thresholds.
double r_M_equation_residual(double R, double eta, double r_M);
double r_m_equation_residual(double R, double eta, double r_m);

RegimeThresholds thresholds(double R, double eta);
inline RegimeThresholds thresholds(const FluidParams& p) { return thresholds(p.R(), p.eta()); }

enum class EvenCase { Case1, Case2, Case3, Case4, Case5 };
enum class Continuum { UniqueEven, ConnectedEndpoints, DisconnectedEndpoints };

struct Regime {
    EvenCase even;
    Continuum continuum;
};

// Relative tolerance under which R_mu is treated as sitting on a threshold.
inline constexpr double kThresholdTol = 1e-12;
bool on_threshold(double value, double threshold);

Regime classify_regime(const FluidParams& p);
Regime classify_regime(const FluidParams& p, const RegimeThresholds& thr);

std::string to_string(EvenCase c);
std::string to_string(Continuum c);

struct DualParams {
    FluidParams params;
    double scale;  // lambda = (eta^2 R_mu / R)^(1/3) of the input parameters
};

// Swaps the roles of the two layers: (R, R_mu, eta) -> (R, R(1+R)/R_mu, eta1).
DualParams dual_params(const FluidParams& p);

}  // namespace muskat
