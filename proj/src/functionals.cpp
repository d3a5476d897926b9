#include "muskat/functionals.hpp"

#include "muskat/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace muskat {

namespace {

double xlogx(double v) { return v > 1e-300 ? v * std::log(v) : 0.0; }

double entropy_of(const PiecewiseQuadratic& q) {
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    double total = 0.0;
    for (const auto& piece : q.pieces()) {
        auto integrand = [&piece](double x) { return xlogx(piece.value(x)); };
        total += integrator.integrate(integrand, piece.l, piece.r);
    }
    return total;
}

void require_non_negative(std::span<const double> v, const char* name) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (double x : v)
        if (x < -1e-12 * std::max(peak, 1e-300))
            throw NegativeInput(std::string("evaluate: negative entry in ") + name);
}

}  // namespace

FunctionalReport evaluate(const PiecewiseQuadratic& u, const PiecewiseQuadratic& v, const FluidParams& p) {
    if (u.min_value() < -1e-12 || v.min_value() < -1e-12) throw NegativeInput("evaluate: negative profile");
    const double e2 = p.eta2();
    const double theta = p.theta();
    FunctionalReport r{};
    r.mass_f = integrate_moments(u, 0);
    r.mass_g = integrate_moments(v, 0);
    const double uu = integrate_product(u, u);
    const double uv = integrate_product(u, v);
    const double vv = integrate_product(v, v);
    r.energy = 0.5 * e2 * uu + 0.5 * p.R() * (e2 * uu + 2.0 * uv + vv / e2);
    r.m1 = integrate_moments(u, 1) + theta * integrate_moments(v, 1);
    r.m2 = integrate_moments(u, 2) + theta * integrate_moments(v, 2);
    r.rescaled_energy = r.energy + r.m2 / 6.0;
    r.entropy = entropy_of(u) + theta * entropy_of(v);
    return r;
}

FunctionalReport evaluate(const ProfilePair& pp) { return evaluate(pp.F(), pp.G(), pp.params()); }

FunctionalReport evaluate(const Grid& grid, std::span<const double> f, std::span<const double> g,
                          const FluidParams& p) {
    const auto n = static_cast<std::size_t>(grid.n_cells());
    if (f.size() != n || g.size() != n) throw InvalidArgument("evaluate: field length does not match the grid");
    require_non_negative(f, "f");
    require_non_negative(g, "g");
    const double h = grid.h();
    const double e = p.eta();
    const double theta = p.theta();
    FunctionalReport r{};
    double ff = 0.0, mix = 0.0, hf = 0.0, hg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(static_cast<int>(i));
        const double w = f[i] + theta * g[i];
        r.mass_f += h * f[i];
        r.mass_g += h * g[i];
        ff += h * f[i] * f[i];
        const double s = e * f[i] + g[i] / e;
        mix += h * s * s;
        r.m1 += h * w * x;
        r.m2 += h * w * x * x;
        hf += h * xlogx(f[i]);
        hg += h * xlogx(g[i]);
    }
    r.energy = 0.5 * p.eta2() * ff + 0.5 * p.R() * mix;
    r.rescaled_energy = r.energy + r.m2 / 6.0;
    r.entropy = hf + theta * hg;
    r.dissipation = dissipation(grid, f, g, p);
    return r;
}

double dissipation(const Grid& grid, std::span<const double> f, std::span<const double> g, const FluidParams& p) {
    const int n = grid.n_cells();
    if (static_cast<int>(f.size()) != n || static_cast<int>(g.size()) != n)
        throw InvalidArgument("dissipation: field length does not match the grid");
    const double h = grid.h();
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2(), theta = p.theta();
    auto diff = [h, n](std::span<const double> v, int i) {
        if (i == 0) return (v[1] - v[0]) / h;
        if (i == n - 1) return (v[n - 1] - v[n - 2]) / h;
        return (v[i + 1] - v[i - 1]) / (2.0 * h);
    };
    double twice = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = grid.center(i);
        const double df = diff(f, i);
        const double dg = diff(g, i);
        const double vf = e2 * (1.0 + R) * df + R * dg + x / 3.0;
        const double vg = e2 * Rmu * df + Rmu * dg + x / 3.0;
        twice += h * (std::max(f[i], 0.0) * vf * vf + theta * std::max(g[i], 0.0) * vg * vg);
    }
    return 0.5 * twice;
}

double closed_form_curve_energy(const FluidParams& p, const Zeta& z) {
    const double R = p.R(), Rmu = p.R_mu();
    if (Rmu < R) {
        const DualParams d = dual_params(p);
        return closed_form_curve_energy(d.params, z.scaled(1.0 / d.scale)) / d.scale;
    }
    if (!(Rmu > R + 1.0)) throw RegimeError("closed_form_curve_energy: no curve for " + p.describe());
    auto p5 = [](double v) { return v * v * v * v * v; };
    const double d = Rmu - R;
    const double k = Rmu - R - 1.0;
    const double num = R * (p5(z.gamma) - p5(z.gamma1)) + d * d * (p5(z.beta) - p5(z.beta1)) -
                       R * k * k * (p5(z.alpha) - p5(z.alpha1)) / (1.0 + R);
    return num / (90.0 * p.eta2() * Rmu * Rmu);
}

std::vector<EnergySample> energy_along_curve(std::span<const CurvePoint> curve, double tol) {
    std::vector<EnergySample> out;
    out.reserve(curve.size());
    for (const auto& pt : curve) {
        const double quad = evaluate(pt.profile).rescaled_energy;
        const double closed = closed_form_curve_energy(pt.profile.params(), pt.zeta);
        if (!(std::abs(quad - closed) <= tol)) {
            std::ostringstream os;
            os.precision(17);
            os << "energy_along_curve: quadrature " << quad << " and closed form " << closed << " disagree at ell "
               << pt.ell;
            throw MismatchError(os.str());
        }
        out.push_back({pt.ell, quad, closed});
    }
    std::sort(out.begin(), out.end(), [](const EnergySample& a, const EnergySample& b) { return a.ell < b.ell; });
    return out;
}

UnimodalityCheck check_unimodal(std::span<const EnergySample> samples, double tol) {
    UnimodalityCheck c{false, 0, 0};
    if (samples.empty()) return c;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].quadrature < samples[c.argmin].quadrature) c.argmin = i;
    int prev = 0;
    bool starts_down = true;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double dE = samples[i].quadrature - samples[i - 1].quadrature;
        if (std::abs(dE) <= tol) continue;
        const int s = dE > 0 ? 1 : -1;
        if (prev == 0 && s > 0) starts_down = false;
        if (prev != 0 && s != prev) ++c.sign_changes;
        prev = s;
    }
    c.unimodal = c.sign_changes == 1 && starts_down;
    return c;
}

}  // namespace muskat
