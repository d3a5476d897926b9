// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "muskat/curve.hpp"
#include "muskat/errors.hpp"
#include "muskat/functionals.hpp"
#include "muskat/fvm.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace muskat;

namespace {

FluidParams unit(double R_mu) { return FluidParams(1.0, R_mu, 1.0); }

// Accumulates failed sub-checks of one criterion together with a short summary.
class Checks {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string& s) { notes_ << (notes_.tellp() > 0 ? "; " : "") << s; }
    bool ok() const { return failures_.empty(); }
    std::string detail() const {
        std::ostringstream os;
        os << notes_.str();
        for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) os << (i ? ", " : " | failed: ") << failures_[i];
        if (failures_.size() > 5) os << " (+" << failures_.size() - 5 << " more)";
        return os.str();
    }

private:
    std::vector<std::string> failures_;
    std::ostringstream notes_;
};

std::string fmt(double v, int digits = 3) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<void(Checks&)> body;
};

double identity_defect(const FunctionalReport& r) {
    return std::max({std::abs(r.m2 - 2.0 * r.rescaled_energy), std::abs(r.rescaled_energy - 1.5 * r.energy)});
}

double mass_defect(const ProfilePair& pp) {
    const auto r = evaluate(pp);
    return std::max(std::abs(r.mass_f - 1.0), std::abs(r.mass_g - 1.0));
}

// Residual of the large-regime curve system, or of its dual image when R_mu < R.
double oracle_curve_residual(const FluidParams& p, const Zeta& z) {
    if (p.R_mu() > p.R()) return max_abs(oracle::curve_system(p, z));
    const auto d = dual_params(p);
    return max_abs(oracle::curve_system(d.params, z.scaled(1.0 / d.scale)));
}

void thresholds_criterion(Checks& c) {
    const auto thr = thresholds(1.0, 1.0);
    c.require(std::abs(thr.r_minus - 0.2) <= 1e-15, "r_minus");
    c.require(std::abs(thr.r0 - 1.5) <= 1e-15, "r0");
    c.require(std::abs(thr.r_plus - 5.0) <= 1e-15, "r_plus");
    c.require(std::abs(thr.r_M - 12.258) < 1e-3, "r_M");
    c.require(std::abs(thr.r_m - 0.058) < 1e-3, "r_m");
    c.require(std::abs(thr.r_M - oracle::r_M(1.0, 1.0)) < 1e-12, "r_M vs bisection");
    c.require(std::abs(thr.r_m - oracle::r_m(1.0, 1.0)) < 1e-12, "r_m vs bisection");
    c.note("r_-=" + fmt(thr.r_minus, 17) + " r0=" + fmt(thr.r0, 17) + " r_+=" + fmt(thr.r_plus, 17) +
           " r_M=" + fmt(thr.r_M, 8) + " r_m=" + fmt(thr.r_m, 8));
}

enum class Topology { DisconnectedF, DisconnectedG, Coincident, ConnectedDistinct };

Topology topology_of(const ProfilePair& pp) {
    const auto sf = pp.support_F(), sg = pp.support_G();
    if (sf.size() > 1) return Topology::DisconnectedF;
    if (sg.size() > 1) return Topology::DisconnectedG;
    if (std::abs(sf[0].l - sg[0].l) < 1e-12 && std::abs(sf[0].r - sg[0].r) < 1e-12) return Topology::Coincident;
    return Topology::ConnectedDistinct;
}

void atlas_criterion(Checks& c) {
    struct Entry {
        double R_mu;
        Topology expected;
    };
    const std::vector<Entry> atlas{
        {0.1, Topology::DisconnectedF},     {0.2, Topology::DisconnectedF},     {1.0 / 3.0, Topology::ConnectedDistinct},
        {1.0, Topology::ConnectedDistinct}, {1.25, Topology::ConnectedDistinct}, {1.5, Topology::Coincident},
        {5.0 / 3.0, Topology::ConnectedDistinct}, {2.0, Topology::ConnectedDistinct}, {3.0, Topology::ConnectedDistinct},
        {5.0, Topology::DisconnectedG},     {10.0, Topology::DisconnectedG}};
    double worst_mass = 0.0, worst_steady = 0.0, worst_system = 0.0;
    for (const auto& e : atlas) {
        const auto p = unit(e.R_mu);
        const auto pp = even_profile(p);
        const std::string tag = "R_mu=" + fmt(e.R_mu);
        c.require(topology_of(pp) == e.expected, tag + " topology");
        worst_mass = std::max(worst_mass, mass_defect(pp));
        worst_steady = std::max({worst_steady, steady_residual(pp), oracle::fd_steady_residual(pp)});
        const auto reg = classify_regime(p);
        if (reg.even == EvenCase::Case3) {
            const auto b = solve_even_case3(p);
            worst_system = std::max(worst_system, max_abs(oracle::case3_system(p, b.alpha, b.beta, b.gamma)));
            if (e.R_mu == 5.0) c.require(b.alpha == 0.0, "alpha = 0 at R_mu = 5");
            else c.require(b.alpha > 0.0, tag + " alpha > 0");
        } else if (reg.even == EvenCase::Case4) {
            const auto b = solve_even_case4(p);
            worst_system = std::max(worst_system, max_abs(oracle::case4_system(p, b.alpha, b.beta, b.gamma)));
        }
    }
    c.require(worst_mass < 1e-10, "masses");
    c.require(worst_steady < 1e-9, "steady residual");
    c.require(worst_system < 1e-10, "system residual");
    c.note("max mass defect " + fmt(worst_mass) + ", max steady residual " + fmt(worst_steady) +
           ", max system residual " + fmt(worst_system));
}

void connected_criterion(Checks& c) {
    const auto thr = thresholds(1.0, 1.0);
    struct Entry {
        double R_mu;
        bool at_threshold;
    };
    double worst = 0.0;
    for (const Entry& e : {Entry{thr.r_M, true}, Entry{21.0, false}, Entry{thr.r_m, true}, Entry{0.01, false}}) {
        const auto p = unit(e.R_mu);
        const std::string tag = "R_mu=" + fmt(e.R_mu, 6);
        const auto b = connected_breakpoints(p);
        c.require(-b.beta1 > b.alpha, tag + " -beta1 > alpha");
        if (e.at_threshold) c.require(std::abs(b.alpha) < 1e-8, tag + " alpha = 0");
        else c.require(b.alpha > 1e-3, tag + " alpha > 0");
        const double sys = oracle_curve_residual(p, connected_zeta(p));
        worst = std::max(worst, sys);
        if (p.R_mu() > p.R()) worst = std::max(worst, max_abs(oracle::connected_system(p, b.beta1, b.alpha, b.beta, b.gamma)));
        for (Side s : {Side::Left, Side::Right}) {
            const auto pp = connected_profile(p, s);
            c.require(mass_defect(pp) < 1e-10, tag + " mass");
            c.require(steady_residual(pp) < 1e-9, tag + " steady");
        }
        c.note(tag + ": alpha=" + fmt(b.alpha));
    }
    c.require(worst < 1e-10, "residuals");
    c.note("max residual " + fmt(worst));
}

void curve_check(Checks& c, double R_mu, bool connected_ends) {
    const auto p = unit(R_mu);
    const std::string tag = "R_mu=" + fmt(R_mu);
    const auto t0 = std::chrono::steady_clock::now();
    const Curve curve = continue_curve(p, 51);
    c.require(curve.points.size() >= 51, tag + " point count");
    const auto& mid = curve.points.at(curve.even_index);
    c.require(mid.ell == 0.0, tag + " even point at ell = 0");
    c.require(max_difference(mid.profile, even_profile(p)) < 1e-10, tag + " even point profile");
    c.require(max_abs_difference(curve.lower.zeta, curve.upper.zeta.reflected()) < 1e-9, tag + " endpoint reflection");

    const auto energies = energy_along_curve(curve.points);
    double worst_gap = 0.0;
    for (const auto& e : energies) worst_gap = std::max(worst_gap, std::abs(e.quadrature - e.closed_form));
    c.require(worst_gap < 1e-9, tag + " closed form vs quadrature");
    const auto uni = check_unimodal(energies);
    c.require(uni.unimodal && uni.argmin == curve.even_index, tag + " unimodal energy");
    std::vector<EnergySample> closed(energies);
    for (auto& e : closed) e.quadrature = e.closed_form;
    const auto uni_closed = check_unimodal(closed);
    c.require(uni_closed.unimodal && uni_closed.argmin == curve.even_index, tag + " unimodal closed-form energy");

    double worst_res = 0.0;
    for (const auto& pt : curve.points) worst_res = std::max(worst_res, oracle_curve_residual(p, pt.zeta));
    c.require(worst_res < 1e-10, tag + " curve residuals");

    std::vector<Zeta> expected;
    if (connected_ends) {
        expected = {connected_zeta(p), connected_zeta(p).reflected()};
    } else {
        expected = {boundary_disconnected_profile(p, Side::Left).zeta, boundary_disconnected_profile(p, Side::Right).zeta};
    }
    double worst_end = 0.0;
    for (const auto* end : {&curve.lower, &curve.upper}) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& z : expected) best = std::min(best, max_abs_difference(end->zeta, z));
        worst_end = std::max(worst_end, best);
        c.require(end->kind == (connected_ends ? EndpointKind::ConnectedSupport : EndpointKind::ZeroAlpha),
                  tag + " endpoint kind");
    }
    c.require(worst_end < 1e-9, tag + " endpoints");
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 30.0, tag + " runtime");
    c.note(tag + ": ell in [" + fmt(curve.lower.ell, 6) + ", " + fmt(curve.upper.ell, 6) + "], endpoint err " +
           fmt(worst_end) + ", energy gap " + fmt(worst_gap) + ", " + fmt(secs, 2) + " s");
}

void curve_criterion(Checks& c) {
    curve_check(c, 10.0, false);
    curve_check(c, 0.1, false);
    curve_check(c, 21.0, true);
}

// Number of direction changes of sampled values, ignoring moves smaller than
// `rel_tol` times the magnitude so that rounding noise on flat stretches is not counted.
int turning_points(const std::vector<double>& v, double rel_tol = 1e-13) {
    int turns = 0, dir = 0;
    double ref = v.front();
    for (double x : v) {
        if (std::abs(x - ref) <= rel_tol * std::max(std::abs(x), 1.0)) continue;
        const int d = x > ref ? 1 : -1;
        if (dir != 0 && d != dir) ++turns;
        dir = d;
        ref = x;
    }
    return turns;
}

void nonexistence_criterion(Checks& c) {
    const int samples = 10000;
    for (double R_mu : {2.0, 3.0, 4.0, 5.0}) {
        const auto p = unit(R_mu);
        const double y0 = boundary_lower_end(p);
        std::vector<double> v;
        int changes = 0;
        for (int k = 1; k < samples; ++k) {
            const double y = y0 + (-1.0 - y0) * k / samples;
            v.push_back(boundary_function(p, y));
            if (v.size() > 1 && v[v.size() - 2] * v.back() < 0.0) ++changes;
        }
        const std::string tag = "xi3 at R_mu=" + fmt(R_mu);
        c.require(changes == 0, tag + " sign change");
        c.note(tag + ": sign changes " + std::to_string(changes) + ", turning points " + std::to_string(turning_points(v)));
    }
    const double r_M = thresholds(1.0, 1.0).r_M;
    for (double R_mu : {2.0 + 1e-9, 3.0, 5.0, 8.0, 11.0, 12.0, r_M * (1.0 - 1e-6)}) {
        const auto p = unit(R_mu);
        std::vector<double> v;
        for (int k = 0; k < samples; ++k) v.push_back(connected_function(p, static_cast<double>(k) / samples));
        const double worst = *std::max_element(v.begin(), v.end());
        const std::string tag = "xi0 at R_mu=" + fmt(R_mu, 6);
        c.require(worst < 0.0, tag + " has a zero");
        c.require(turning_points(v) <= 1, tag + " monotonicity structure");
    }
}

void identities_criterion(Checks& c) {
    std::vector<ProfilePair> all;
    for (double m : {0.01, 0.05, 0.1, 0.2, 1.0 / 3.0, 1.0, 1.25, 1.5, 5.0 / 3.0, 2.0, 3.0, 5.0, 10.0, 21.0})
        all.push_back(even_profile(unit(m)));
    for (double m : {0.01, 21.0})
        for (Side s : {Side::Left, Side::Right}) all.push_back(connected_profile(unit(m), s));
    for (double m : {0.1, 10.0}) {
        for (Side s : {Side::Left, Side::Right}) all.push_back(boundary_disconnected_profile(unit(m), s).profile);
        for (const auto& pt : continue_curve(unit(m), 21).points) all.push_back(pt.profile);
    }
    double worst_id = 0.0, worst_m1 = 0.0;
    for (const auto& pp : all) {
        const auto r = evaluate(pp);
        worst_id = std::max(worst_id, identity_defect(r));
        worst_m1 = std::max(worst_m1, std::abs(r.m1));
    }
    c.require(worst_id < 1e-9, "M2 = 2 E_* and E_* = 3/2 E");
    c.require(worst_m1 < 1e-10, "M1 = 0");
    c.note(std::to_string(all.size()) + " profiles, max identity defect " + fmt(worst_id) + ", max |M1| " +
           fmt(worst_m1));
}

void simulator_criterion(Checks& c) {
    const Grid grid(-5.0, 5.0, 400);
    const auto init = init_state(cosine_bump(1.0, 2.0), cosine_bump(-0.5, 2.5), grid, true).state;
    const SimConfig cfg{grid, unit(2.0), 2e-5, 3.0, true, 500};
    double prev = std::numeric_limits<double>::infinity(), worst_rise = 0.0;
    const auto rep = run(cfg, init, nullptr, [&](const SimState&, const TrajectoryRecord& r) {
        worst_rise = std::max(worst_rise, r.rescaled_energy - prev);
        prev = r.rescaled_energy;
    });
    const auto& first = rep.records.front();
    double worst_mass = 0.0;
    std::vector<double> ts, logs;
    for (const auto& r : rep.records) {
        worst_mass = std::max({worst_mass, std::abs(r.mass_f - first.mass_f) / first.mass_f,
                               std::abs(r.mass_g - first.mass_g) / first.mass_g});
        ts.push_back(r.t);
        logs.push_back(std::log(std::abs(r.m1)));
    }
    const double n = static_cast<double>(ts.size());
    const double mt = std::accumulate(ts.begin(), ts.end(), 0.0) / n;
    const double ml = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        sxy += (ts[i] - mt) * (logs[i] - ml);
        sxx += (ts[i] - mt) * (ts[i] - mt);
    }
    const double rate = sxy / sxx;
    c.require(rep.final_state.step_count >= 100000, "step count");
    c.require(worst_mass < 1e-12, "mass conservation");
    c.require(rate >= -0.35 && rate <= -0.32, "M1 decay rate");
    c.require(worst_rise <= 1e-10, "E_* non-increasing");
    c.note(std::to_string(rep.final_state.step_count) + " steps, mass drift " + fmt(worst_mass) + ", M1 rate " +
           fmt(rate, 5) + ", max E_* rise " + fmt(worst_rise));
}

double drift_over_unit_time(const ProfilePair& pp, int n_cells) {
    const Grid grid(-5.0, 5.0, n_cells);
    const SimConfig cfg{grid, pp.params(), 2e-5, 1.0, true, 500};
    const auto rep = run(cfg, init_state(pp, grid), &pp);
    double worst = 0.0;
    for (const auto& r : rep.records) worst = std::max(worst, r.l2_dist);
    return worst;
}

void convergence_criterion(Checks& c) {
    const auto p = unit(0.05);
    const auto even = even_profile(p);
    const double d200 = drift_over_unit_time(even, 200);
    const double d400 = drift_over_unit_time(even, 400);
    const double d800 = drift_over_unit_time(even, 800);
    const double order = 0.5 * std::log2(d200 / d800);
    c.require(d200 > d400 && d400 > d800, "drift decreases under refinement");
    c.require(order >= 0.8, "observed order");
    c.note("drift " + fmt(d200) + " / " + fmt(d400) + " / " + fmt(d800) + ", pairwise orders " +
           fmt(std::log2(d200 / d400)) + ", " + fmt(std::log2(d400 / d800)) + ", overall " + fmt(order));

    const Grid grid(-5.0, 5.0, 400);
    const auto init = init_state(cosine_bump(0.0, 2.5), cosine_bump(0.0, 0.5), grid, true).state;
    const SimConfig cfg{grid, p, 2e-5, 3.0, true, 500};
    const auto rep = run(cfg, init, &even);
    double l2_early = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : rep.records)
        if (std::abs(r.t - 0.3) < 1e-9) l2_early = r.l2_dist;
    const double l2_late = rep.records.back().l2_dist;
    c.require(rep.records.front().components_f == 1, "f initially connected");
    c.require(rep.records.back().components_f == 2, "f splits into two components");
    c.require(rep.rupture_time_f.has_value(), "rupture event recorded");
    c.require(std::isfinite(l2_early) && l2_late < l2_early, "distance to the even profile decreases");
    c.note("rupture at t=" + (rep.rupture_time_f ? fmt(*rep.rupture_time_f, 4) : std::string("none")) +
           ", L2 at t=0.3 " + fmt(l2_early) + ", at t=3 " + fmt(l2_late));
}

void duality_criterion(Checks& c) {
    double worst_inv = 0.0;
    std::vector<ProfilePair> all;
    for (double m : {0.01, 0.1, 0.2, 1.0, 1.5, 2.0, 5.0, 10.0, 21.0}) all.push_back(even_profile(unit(m)));
    all.push_back(connected_profile(unit(21.0)));
    all.push_back(connected_profile(unit(0.01), Side::Left));
    for (const auto& pt : continue_curve(unit(10.0), 11).points) all.push_back(pt.profile);
    for (const auto& pp : all) worst_inv = std::max(worst_inv, max_difference(dual_transform(dual_transform(pp)), pp));
    c.require(worst_inv < 1e-12, "dual involution");

    double worst_b = 0.0, worst_f = 0.0;
    for (double m : {0.01, 0.05, 0.1, 0.15, 0.19}) {
        const auto p = unit(m);
        const auto lib = solve_even_case4(p);
        const auto ref = oracle::case4_direct(p);
        worst_b = std::max({worst_b, std::abs(lib.alpha - ref.alpha), std::abs(lib.beta - ref.beta),
                            std::abs(lib.gamma - ref.gamma)});
        const auto pp = even_profile(p);
        for (int k = 0; k <= 400; ++k) {
            const double x = -1.2 * ref.gamma + 2.4 * ref.gamma * k / 400;
            worst_f = std::max({worst_f, std::abs(pp.F()(x) - oracle::case4_F(p, ref, x)),
                                std::abs(pp.G()(x) - oracle::case4_G(p, ref, x))});
        }
    }
    c.require(worst_b < 1e-10, "case (iv) breakpoints");
    c.require(worst_f < 1e-10, "case (iv) profile values");
    c.note("involution " + fmt(worst_inv) + ", breakpoints " + fmt(worst_b) + ", values " + fmt(worst_f));
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "thresholds", 1.0, thresholds_criterion},
        {2, "even-profile regime atlas", 5.0, atlas_criterion},
        {3, "connected non-symmetric profiles", 5.0, connected_criterion},
        {4, "continuation curves", 90.0, curve_criterion},
        {5, "non-existence scans", 5.0, nonexistence_criterion},
        {6, "steady-state identities", 30.0, identities_criterion},
        {7, "simulator conservation and decay", 120.0, simulator_criterion},
        {8, "convergence to profiles", 300.0, convergence_criterion},
        {9, "duality involution and cross-construction", 10.0, duality_criterion},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Checks checks;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.body(checks);
        } catch (const std::exception& e) {
            checks.require(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        checks.require(secs < cr.budget_s, "runtime budget " + fmt(cr.budget_s) + " s");
        const bool ok = checks.ok();
        failed += ok ? 0 : 1;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << " (" << cr.title << ") [" << std::fixed
                  << std::setprecision(2) << secs << " s] " << std::defaultfloat << checks.detail() << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
