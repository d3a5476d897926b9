#pragma once

#include "muskat/functionals.hpp"
#include "muskat/grid.hpp"
#include "muskat/params.hpp"
#include "muskat/profiles.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace muskat {

struct SimState {
    std::vector<double> f;
    std::vector<double> g;
    double t = 0.0;
    long step_count = 0;
};

struct SimConfig {
    Grid grid;
    FluidParams params;
    double dt = 1e-5;
    double t_end = 1.0;
    bool cfl_check = true;
    int record_every = 100;
};

// Density given by a callable on a bounded interval, zero outside.
struct AnalyticSource {
    std::function<double(double)> density;
    double lo;
    double hi;
};

// Unit-mass raised-cosine bump on [center - half_width, center + half_width].
AnalyticSource cosine_bump(double center, double half_width);

struct InitReport {
    SimState state;
    bool renormalized = false;
};

// Exact cell averages of piecewise-quadratic sources.
SimState init_state(const ProfilePair& pp, const Grid& grid);
SimState init_state(const PiecewiseQuadratic& f, const PiecewiseQuadratic& g, const Grid& grid);
// Five-point Gauss quadrature per cell; optionally rescaled to unit discrete mass.
InitReport init_state(const AnalyticSource& f, const AnalyticSource& g, const Grid& grid, bool renormalize = false);

struct FaceVelocities {
    std::vector<double> A;  // face i between cells i and i+1
    std::vector<double> B;
};

FaceVelocities face_velocities(const Grid& grid, const SimState& s, const FluidParams& p);

// One explicit upwind step with zero boundary fluxes.
SimState step(const SimState& s, const SimConfig& cfg);

struct TrajectoryRecord {
    double t;
    double mass_f;
    double mass_g;
    double m1;
    double m2;
    double energy;
    double rescaled_energy;
    double entropy;
    double dissipation;
    int components_f;
    int components_g;
    double l2_dist;  // NaN without a reference profile
};

struct TrajectoryReport {
    std::vector<TrajectoryRecord> records;
    SimState final_state;
    // Time of the first record at which the f support splits (1 -> 2 or more).
    std::optional<double> rupture_time_f;
    std::optional<double> rupture_time_g;
};

using RecordCallback = std::function<void(const SimState&, const TrajectoryRecord&)>;

TrajectoryReport run(const SimConfig& cfg, SimState initial, const ProfilePair* reference = nullptr,
                     const RecordCallback& on_record = {});

int count_components(std::span<const double> v, double rel_threshold = 1e-9);

// sqrt(sum h (f - Fbar)^2 + sum h (g - Gbar)^2) with exact cell averages of the reference.
double l2_distance(const Grid& grid, const SimState& s, const ProfilePair& reference);

// ---- change of variables between the unrescaled and the rescaled problem ----

struct GridSnapshot {
    double t;
    Grid grid;
    std::vector<double> f;
    std::vector<double> g;
};

// Unrescaled state at time tau -> rescaled state at t = ln(1 + tau).
GridSnapshot to_self_similar(const GridSnapshot& unrescaled);
// Rescaled state at t -> unrescaled state at tau = e^t - 1.
GridSnapshot from_self_similar(const GridSnapshot& rescaled);
std::vector<GridSnapshot> to_self_similar(std::span<const GridSnapshot> states);
std::vector<GridSnapshot> from_self_similar(std::span<const GridSnapshot> states);

// t^(-1/3) (F, G)(x t^(-1/3)), the self-similar solution generated by pp.
std::pair<double, double> evaluate_self_similar(const ProfilePair& pp, double t, double x);

}  // namespace muskat
