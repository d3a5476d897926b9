#include "muskat/params.hpp"

#include "muskat/errors.hpp"
#include "muskat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace muskat {

FluidParams::FluidParams(double density_ratio, double viscosity_ratio, double mass_ratio)
    : R_(density_ratio), R_mu_(viscosity_ratio), eta_(mass_ratio) {
    if (!(R_ > 0.0) || !std::isfinite(R_)) throw InvalidArgument("FluidParams: R must be positive and finite");
    if (!(R_mu_ > 0.0) || !std::isfinite(R_mu_))
        throw InvalidArgument("FluidParams: R_mu must be positive and finite");
    if (!(eta_ > 0.0) || !std::isfinite(eta_))
        throw InvalidArgument("FluidParams: eta must be positive and finite");
    if (!std::isfinite(theta())) throw InvalidArgument("FluidParams: theta is not finite");
}

std::string FluidParams::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "(R=" << R_ << ", R_mu=" << R_mu_ << ", eta=" << eta_ << ")";
    return os.str();
}

FluidParams from_physical(const PhysicalFluids& phys) {
    if (!(phys.rho_plus > 0.0)) throw InvalidArgument("from_physical: rho_plus must be positive");
    if (!(phys.rho_minus > phys.rho_plus))
        throw InvalidArgument("from_physical: the lower fluid must be denser (rho_minus > rho_plus)");
    if (!(phys.mu_minus > 0.0) || !(phys.mu_plus > 0.0))
        throw InvalidArgument("from_physical: viscosities must be positive");
    if (!(phys.f0_mass > 0.0) || !(phys.g0_mass > 0.0))
        throw InvalidArgument("from_physical: layer masses must be positive");
    const double R = phys.rho_plus / (phys.rho_minus - phys.rho_plus);
    const double mu = phys.mu_minus / phys.mu_plus;
    const double eta = std::sqrt(phys.f0_mass / phys.g0_mass);
    return FluidParams(R, mu * R, eta);
}

bool physical_regime_inequality(const PhysicalFluids& phys) {
    const double eta2 = phys.f0_mass / phys.g0_mass;
    const double rm = phys.rho_minus;
    const double rp = phys.rho_plus;
    const double mix = eta2 * rm + rp;
    const double bound = rm * rp * rp / (rp * rp * rp + mix * mix * (rm - rp));
    return phys.mu_minus / phys.mu_plus < bound;
}

double r0_of(double R, double eta) {
    const double e2 = eta * eta;
    return R + e2 / (1.0 + e2);
}

double r_plus_of(double R, double eta) {
    const double e2 = eta * eta;
    const double q = (1.0 + e2) / e2;
    return R + q * q;
}

double r_minus_of(double R, double eta) {
    const double e2 = eta * eta;
    const double R3 = R * R * R;
    const double s = e2 * (1.0 + R) + R;
    return R3 * (1.0 + R) / (R3 + s * s);
}

double connected_threshold_function(double R, double eta, double t) {
    const double e2 = eta * eta;
    return std::sqrt(t) * (e2 - std::sqrt((1.0 + R) / (t + R))) - 1.0 - e2;
}

double r_M_equation_residual(double R, double eta, double r_M) {
    const double e2 = eta * eta;
    return std::sqrt(r_M - R) * (e2 - std::sqrt((1.0 + R) / r_M)) - (1.0 + e2);
}

double r_m_equation_residual(double R, double eta, double r_m) {
    const double e2 = eta * eta;
    const double k = e2 * (1.0 + R) / R;
    return std::sqrt(1.0 + R - r_m) * (std::sqrt(R / r_m) - k) - (1.0 + k);
}

namespace {

struct ConnectedRoot {
    double t;
    double lo;
    double hi;
};

ConnectedRoot solve_connected_threshold(double R, double eta) {
    auto f = [R, eta](double t) { return connected_threshold_function(R, eta, t); };
    const double t2 = std::pow(R, 2.0 / 3.0) * std::cbrt(1.0 + R) / std::pow(eta, 4.0 / 3.0) - R;
    const double lo = 1.0 + 1e-9;
    const double hi = expand_bracket(f, lo, std::max(2.0, t2) + 1.0);
    return {find_root_bracketed(f, lo, hi), lo, hi};
}

}  // namespace

RegimeThresholds thresholds(double R, double eta) {
    FluidParams validate(R, 1.0, eta);
    (void)validate;

    RegimeThresholds thr{};
    thr.r0 = r0_of(R, eta);
    thr.r_plus = r_plus_of(R, eta);
    thr.r_minus = r_minus_of(R, eta);

    const ConnectedRoot direct = solve_connected_threshold(R, eta);
    thr.r_M = R + direct.t;
    thr.t_M_bracket_lo = direct.lo;
    thr.t_M_bracket_hi = direct.hi;
    thr.r_M_residual = r_M_equation_residual(R, eta, thr.r_M);

    const double eta_dual = std::sqrt(R / (1.0 + R)) / eta;
    const ConnectedRoot dual = solve_connected_threshold(R, eta_dual);
    thr.r_m = R * (1.0 + R) / (R + dual.t);
    thr.r_m_residual = r_m_equation_residual(R, eta, thr.r_m);
    return thr;
}

bool on_threshold(double value, double threshold) {
    return std::abs(value - threshold) <= kThresholdTol * std::max(1.0, std::abs(threshold));
}

Regime classify_regime(const FluidParams& p) { return classify_regime(p, thresholds(p)); }

Regime classify_regime(const FluidParams& p, const RegimeThresholds& thr) {
    const double Rmu = p.R_mu();
    Regime out{};
    if (on_threshold(Rmu, thr.r0))
        out.even = EvenCase::Case1;
    else if (Rmu >= thr.r_plus || on_threshold(Rmu, thr.r_plus))
        out.even = EvenCase::Case3;
    else if (Rmu <= thr.r_minus || on_threshold(Rmu, thr.r_minus))
        out.even = EvenCase::Case4;
    else if (Rmu > thr.r0)
        out.even = EvenCase::Case2;
    else
        out.even = EvenCase::Case5;

    const bool below_minus = Rmu < thr.r_minus && !on_threshold(Rmu, thr.r_minus);
    const bool above_plus = Rmu > thr.r_plus && !on_threshold(Rmu, thr.r_plus);
    const bool at_or_above_M = Rmu >= thr.r_M || on_threshold(Rmu, thr.r_M);
    const bool at_or_below_m = Rmu <= thr.r_m || on_threshold(Rmu, thr.r_m);
    if (!below_minus && !above_plus)
        out.continuum = Continuum::UniqueEven;
    else if (at_or_above_M || at_or_below_m)
        out.continuum = Continuum::ConnectedEndpoints;
    else
        out.continuum = Continuum::DisconnectedEndpoints;
    return out;
}

std::string to_string(EvenCase c) {
    switch (c) {
        case EvenCase::Case1: return "EvenCase1";
        case EvenCase::Case2: return "EvenCase2";
        case EvenCase::Case3: return "EvenCase3";
        case EvenCase::Case4: return "EvenCase4";
        case EvenCase::Case5: return "EvenCase5";
    }
    return "?";
}

std::string to_string(Continuum c) {
    switch (c) {
        case Continuum::UniqueEven: return "UniqueEven";
        case Continuum::ConnectedEndpoints: return "ContinuumConnectedEndpoints";
        case Continuum::DisconnectedEndpoints: return "ContinuumDisconnectedEndpoints";
    }
    return "?";
}

DualParams dual_params(const FluidParams& p) {
    const double R = p.R();
    const double Rmu1 = R * (1.0 + R) / p.R_mu();
    const double eta1 = std::sqrt(R / (1.0 + R)) / p.eta();
    const double scale = std::cbrt(p.eta2() * p.R_mu() / R);
    return {FluidParams(R, Rmu1, eta1), scale};
}

}  // namespace muskat
