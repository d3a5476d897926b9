#include "muskat/fvm.hpp"

#include "muskat/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace muskat {

AnalyticSource cosine_bump(double center, double half_width) {
    if (!(half_width > 0.0)) throw InvalidArgument("cosine_bump: half_width must be positive");
    auto density = [center, half_width](double x) {
        const double s = (x - center) / half_width;
        if (std::abs(s) >= 1.0) return 0.0;
        return (1.0 + std::cos(std::numbers::pi * s)) / (2.0 * half_width);
    };
    return {density, center - half_width, center + half_width};
}

namespace {

void require_inside(const Grid& grid, double lo, double hi) {
    if (lo < grid.x_left() || hi > grid.x_right()) {
        std::ostringstream os;
        os << "source support [" << lo << ", " << hi << "] leaves the domain [" << grid.x_left() << ", "
           << grid.x_right() << "]";
        throw SupportOutsideDomain(os.str());
    }
}

std::vector<double> averages(const PiecewiseQuadratic& q, const Grid& grid) {
    if (!q.empty()) require_inside(grid, q.left_end(), q.right_end());
    std::vector<double> out(static_cast<std::size_t>(grid.n_cells()));
    for (int i = 0; i < grid.n_cells(); ++i) out[i] = cell_average(q, grid.face(i), grid.face(i + 1));
    return out;
}

std::vector<double> averages(const AnalyticSource& src, const Grid& grid) {
    require_inside(grid, src.lo, src.hi);
    using Quad = boost::math::quadrature::gauss<double, 5>;
    std::vector<double> out(static_cast<std::size_t>(grid.n_cells()));
    for (int i = 0; i < grid.n_cells(); ++i) {
        const double a = grid.face(i);
        const double b = grid.face(i + 1);
        out[i] = Quad::integrate(src.density, a, b) / (b - a);
        if (out[i] < 0.0) throw NegativeInput("init_state: source is negative");
    }
    return out;
}

double discrete_mass(const std::vector<double>& v, double h) {
    double m = 0.0;
    for (double x : v) m += h * x;
    return m;
}

void require_positive_mass(const std::vector<double>& v, double h, const char* name) {
    if (!(discrete_mass(v, h) > 0.0)) throw InvalidArgument(std::string("init_state: ") + name + " has zero mass");
}

double positive_part(double a) { return a > 0.0 ? a : 0.0; }
double negative_part(double a) { return a < 0.0 ? -a : 0.0; }

struct Workspace {
    FaceVelocities vel;
    std::vector<double> flux_f;
    std::vector<double> flux_g;
};

void compute_velocities(const Grid& grid, const SimState& s, const FluidParams& p, FaceVelocities& out) {
    const int n = grid.n_cells();
    const double h = grid.h();
    const double R = p.R(), Rmu = p.R_mu(), e2 = p.eta2();
    out.A.resize(static_cast<std::size_t>(n - 1));
    out.B.resize(static_cast<std::size_t>(n - 1));
    for (int i = 0; i + 1 < n; ++i) {
        const double drift = -(grid.center(i + 1) + grid.center(i)) / 6.0;
        const double df = (s.f[i + 1] - s.f[i]) / h;
        const double dg = (s.g[i + 1] - s.g[i]) / h;
        out.A[i] = drift - (1.0 + R) * e2 * df - R * dg;
        out.B[i] = drift - e2 * Rmu * df - Rmu * dg;
    }
}

void advance(SimState& s, const SimConfig& cfg, Workspace& ws) {
    const Grid& grid = cfg.grid;
    const int n = grid.n_cells();
    const double h = grid.h();
    compute_velocities(grid, s, cfg.params, ws.vel);
    if (cfg.cfl_check) {
        double vmax = 0.0;
        for (int i = 0; i + 1 < n; ++i) vmax = std::max({vmax, std::abs(ws.vel.A[i]), std::abs(ws.vel.B[i])});
        if (cfg.dt * vmax / h > 1.0) {
            std::ostringstream os;
            os << "CFL number " << cfg.dt * vmax / h << " exceeds 1 at t=" << s.t << "; reduce dt";
            throw CflViolation(os.str());
        }
    }
    ws.flux_f.assign(static_cast<std::size_t>(n + 1), 0.0);
    ws.flux_g.assign(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const double a = ws.vel.A[i];
        const double b = ws.vel.B[i];
        ws.flux_f[i + 1] = positive_part(a) * s.f[i] - negative_part(a) * s.f[i + 1];
        ws.flux_g[i + 1] = positive_part(b) * s.g[i] - negative_part(b) * s.g[i + 1];
    }
    const double ratio = cfg.dt / h;
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
        s.f[i] -= ratio * (ws.flux_f[i + 1] - ws.flux_f[i]);
        s.g[i] -= ratio * (ws.flux_g[i + 1] - ws.flux_g[i]);
        peak = std::max({peak, s.f[i], s.g[i]});
    }
    if (cfg.cfl_check)
        for (int i = 0; i < n; ++i)
            if (s.f[i] < -1e-14 * peak || s.g[i] < -1e-14 * peak) {
                std::ostringstream os;
                os << "negative cell " << i << " at t=" << s.t << "; reduce dt";
                throw NegativeCell(os.str());
            }
    ++s.step_count;
}

}  // namespace

SimState init_state(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g, const Grid& grid) {
    SimState s;
    s.f = averages(f, grid);
    s.g = averages(g, grid);
    require_positive_mass(s.f, grid.h(), "f");
    require_positive_mass(s.g, grid.h(), "g");
    return s;
}

SimState init_state(const ProfilePair& pp, const Grid& grid) { return init_state(pp.F(), pp.G(), grid); }

InitReport init_state(const AnalyticSource& f, const AnalyticSource& g, const Grid& grid, bool renormalize) {
    InitReport r;
    r.state.f = averages(f, grid);
    r.state.g = averages(g, grid);
    require_positive_mass(r.state.f, grid.h(), "f");
    require_positive_mass(r.state.g, grid.h(), "g");
    if (renormalize) {
        const double mf = discrete_mass(r.state.f, grid.h());
        const double mg = discrete_mass(r.state.g, grid.h());
        for (double& v : r.state.f) v /= mf;
        for (double& v : r.state.g) v /= mg;
        r.renormalized = true;
    }
    return r;
}

FaceVelocities face_velocities(const Grid& grid, const SimState& s, const FluidParams& p) {
    if (static_cast<int>(s.f.size()) != grid.n_cells() || static_cast<int>(s.g.size()) != grid.n_cells())
        throw InvalidArgument("face_velocities: state does not match the grid");
    FaceVelocities v;
    compute_velocities(grid, s, p, v);
    return v;
}

SimState step(const SimState& s, const SimConfig& cfg) {
    if (static_cast<int>(s.f.size()) != cfg.grid.n_cells() || static_cast<int>(s.g.size()) != cfg.grid.n_cells())
        throw InvalidArgument("step: state does not match the grid");
    SimState next = s;
    Workspace ws;
    advance(next, cfg, ws);
    next.t = s.t + cfg.dt;
    return next;
}

int count_components(std::span<const double> v, double rel_threshold) {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, x);
    if (peak <= 0.0) return 0;
    const double cut = rel_threshold * peak;
    int count = 0;
    bool inside = false;
    for (double x : v) {
        const bool above = x > cut;
        if (above && !inside) ++count;
        inside = above;
    }
    return count;
}

double l2_distance(const Grid& grid, const SimState& s, const ProfilePair& reference) {
    const SimState ref = init_state(reference, grid);
    double sum = 0.0;
    for (int i = 0; i < grid.n_cells(); ++i) {
        const double df = s.f[i] - ref.f[i];
        const double dg = s.g[i] - ref.g[i];
        sum += grid.h() * (df * df + dg * dg);
    }
    return std::sqrt(sum);
}

TrajectoryReport run(const SimConfig& cfg, SimState state, const ProfilePair* reference,
                     const RecordCallback& on_record) {
    if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) throw InvalidArgument("run: dt and t_end must be positive");
    if (cfg.record_every < 1) throw InvalidArgument("run: record_every must be at least 1");
    const Grid& grid = cfg.grid;
    if (static_cast<int>(state.f.size()) != grid.n_cells() || static_cast<int>(state.g.size()) != grid.n_cells())
        throw InvalidArgument("run: state does not match the grid");

    std::optional<SimState> ref_avg;
    if (reference) ref_avg = init_state(*reference, grid);

    TrajectoryReport report;
    auto record = [&]() {
        const FunctionalReport fr = evaluate(grid, state.f, state.g, cfg.params);
        TrajectoryRecord rec{};
        rec.t = state.t;
        rec.mass_f = fr.mass_f;
        rec.mass_g = fr.mass_g;
        rec.m1 = fr.m1;
        rec.m2 = fr.m2;
        rec.energy = fr.energy;
        rec.rescaled_energy = fr.rescaled_energy;
        rec.entropy = fr.entropy;
        rec.dissipation = fr.dissipation.value_or(std::numeric_limits<double>::quiet_NaN());
        rec.components_f = count_components(state.f);
        rec.components_g = count_components(state.g);
        rec.l2_dist = std::numeric_limits<double>::quiet_NaN();
        if (ref_avg) {
            double sum = 0.0;
            for (int i = 0; i < grid.n_cells(); ++i) {
                const double df = state.f[i] - ref_avg->f[i];
                const double dg = state.g[i] - ref_avg->g[i];
                sum += grid.h() * (df * df + dg * dg);
            }
            rec.l2_dist = std::sqrt(sum);
        }
        if (!report.records.empty()) {
            const auto& prev = report.records.back();
            if (!report.rupture_time_f && prev.components_f == 1 && rec.components_f >= 2)
                report.rupture_time_f = rec.t;
            if (!report.rupture_time_g && prev.components_g == 1 && rec.components_g >= 2)
                report.rupture_time_g = rec.t;
        }
        report.records.push_back(rec);
        if (on_record) on_record(state, rec);
    };

    const double t0 = state.t;
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    Workspace ws;
    record();
    for (long k = 1; k <= n_steps; ++k) {
        advance(state, cfg, ws);
        state.t = t0 + static_cast<double>(k) * cfg.dt;
        if (k % cfg.record_every == 0 || k == n_steps) record();
    }
    report.final_state = std::move(state);
    return report;
}

GridSnapshot to_self_similar(const GridSnapshot& s) {
    if (!(s.t >= 0.0)) throw NonpositiveTime("to_self_similar: time must be non-negative");
    const double t = std::log1p(s.t);
    const double stretch = std::exp(t / 3.0);
    GridSnapshot out{t, s.grid.scaled(1.0 / stretch), s.f, s.g};
    for (double& v : out.f) v *= stretch;
    for (double& v : out.g) v *= stretch;
    return out;
}

GridSnapshot from_self_similar(const GridSnapshot& s) {
    if (!(s.t >= 0.0)) throw NonpositiveTime("from_self_similar: time must be non-negative");
    const double tau = std::expm1(s.t);
    const double stretch = std::exp(s.t / 3.0);
    GridSnapshot out{tau, s.grid.scaled(stretch), s.f, s.g};
    for (double& v : out.f) v /= stretch;
    for (double& v : out.g) v /= stretch;
    return out;
}

std::vector<GridSnapshot> to_self_similar(std::span<const GridSnapshot> states) {
    std::vector<GridSnapshot> out;
    for (const auto& s : states) out.push_back(to_self_similar(s));
    return out;
}

std::vector<GridSnapshot> from_self_similar(std::span<const GridSnapshot> states) {
    std::vector<GridSnapshot> out;
    for (const auto& s : states) out.push_back(from_self_similar(s));
    return out;
}

std::pair<double, double> evaluate_self_similar(const ProfilePair& pp, double t, double x) {
    if (!(t > 0.0)) throw NonpositiveTime("evaluate_self_similar: t must be positive");
    const double s = std::cbrt(t);
    return {pp.F()(x / s) / s, pp.G()(x / s) / s};
}

}  // namespace muskat
