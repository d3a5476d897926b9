#include "cli.hpp"

#include "muskat/curve.hpp"
#include "muskat/errors.hpp"
#include "muskat/functionals.hpp"
#include "muskat/fvm.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#ifndef MUSKAT_VERSION
#define MUSKAT_VERSION "0.0.0"
#endif

namespace muskat::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* kDefaultOutDir = "muskat_out";

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw NumericalError("sha256 digest failed");
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(md[i]);
    return os.str();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) { row_strings(header); }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) body_ << ',';
            body_ << num(v);
            first = false;
        }
        body_ << '\n';
    }

    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
        body_ << '\n';
    }

    std::string str() const { return body_.str(); }

private:
    std::ostringstream body_;
};

// Collects the files written by one command and emits the run manifest.
class OutputSet {
public:
    OutputSet(fs::path dir, std::string command, std::vector<std::string> args)
        : dir_(std::move(dir)), command_(std::move(command)), args_(std::move(args)),
          start_(std::chrono::steady_clock::now()) {
        fs::create_directories(dir_);
    }

    fs::path write(const std::string& name, const std::string& body) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write " + path.string());
        out << body;
        outputs_.push_back(path.string());
        return path;
    }

    fs::path finish(const std::string& stem, json params, json config_hashes) {
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json m;
        m["command"] = command_;
        m["args"] = args_;
        m["params"] = std::move(params);
        m["config_sha256"] = std::move(config_hashes);
        m["outputs"] = outputs_;
        m["tool_version"] = MUSKAT_VERSION;
        m["wall_time_s"] = wall;
        const fs::path path = dir_ / ("manifest_" + stem + ".json");
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidArgument("cannot write " + path.string());
        out << m.dump(2) << '\n';
        return path;
    }

    const std::vector<std::string>& outputs() const { return outputs_; }

private:
    fs::path dir_;
    std::string command_;
    std::vector<std::string> args_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

json params_json(const FluidParams& p) {
    return {{"R", p.R()}, {"R_mu", p.R_mu()}, {"eta", p.eta()}, {"theta", p.theta()}};
}

json intervals_json(const std::vector<Interval>& v) {
    json a = json::array();
    for (const auto& iv : v) a.push_back({iv.l, iv.r});
    return a;
}

json pieces_json(const PiecewiseQuadratic& q) {
    json a = json::array();
    for (const auto& pc : q.pieces()) a.push_back({{"l", pc.l}, {"r", pc.r}, {"c0", pc.c0}, {"c2", pc.c2}});
    return a;
}

json zeta_json(const Zeta& z) {
    return {{"gamma1", z.gamma1}, {"beta1", z.beta1}, {"alpha1", z.alpha1},
            {"alpha", z.alpha},   {"beta", z.beta},   {"gamma", z.gamma}};
}

json report_json(const FunctionalReport& r) {
    json j{{"mass_f", r.mass_f}, {"mass_g", r.mass_g}, {"E", r.energy}, {"E_star", r.rescaled_energy},
           {"M1", r.m1},         {"M2", r.m2},         {"H", r.entropy}};
    if (r.dissipation) j["I"] = *r.dissipation;
    return j;
}

std::string topology(const ProfilePair& pp) {
    const auto sf = pp.support_F().size(), sg = pp.support_G().size();
    if (sf > 1) return "disconnected F";
    if (sg > 1) return "disconnected G";
    return "connected";
}

json profile_json(const ProfilePair& pp) {
    json j;
    j["label"] = pp.label();
    j["params"] = params_json(pp.params());
    j["zeta"] = pp.zeta() ? zeta_json(*pp.zeta()) : json(nullptr);
    j["F"] = pieces_json(pp.F());
    j["G"] = pieces_json(pp.G());
    j["support_F"] = intervals_json(pp.support_F());
    j["support_G"] = intervals_json(pp.support_G());
    j["topology"] = topology(pp);
    return j;
}

std::string profile_csv(const ProfilePair& pp, int samples = 2001) {
    const double lo = std::min(pp.F().left_end(), pp.G().left_end());
    const double hi = std::max(pp.F().right_end(), pp.G().right_end());
    const double e2 = pp.params().eta2();
    CsvWriter csv({"x", "F", "G", "eta2F_plus_G"});
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        const double f = pp.F()(x), g = pp.G()(x);
        csv.row({x, f, g, e2 * f + g});
    }
    return csv.str();
}

std::string regime_window_message(const FluidParams& p, const RegimeThresholds& thr) {
    std::ostringstream os;
    os << "for " << p.describe() << " the only steady state is the even one when R_mu is in [r_minus, r_plus] = ["
       << thr.r_minus << ", " << thr.r_plus << "]";
    return os.str();
}

ProfilePair build_profile(const FluidParams& p, const std::string& kind, Side side) {
    if (kind == "even") {
        const auto pp = even_profile(p);
        return side == Side::Left ? reflect(pp) : pp;
    }
    if (kind == "connected") return connected_profile(p, side);
    if (kind == "curve-endpoint") {
        const auto thr = thresholds(p);
        switch (classify_regime(p, thr).continuum) {
        case Continuum::ConnectedEndpoints:
            return connected_profile(p, side);
        case Continuum::DisconnectedEndpoints:
            return boundary_disconnected_profile(p, side).profile;
        case Continuum::UniqueEven:
            throw RegimeError("curve endpoints do not exist: " + regime_window_message(p, thr));
        }
    }
    throw InvalidArgument("unknown profile kind '" + kind + "'");
}

fs::path resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("MUSKAT_OUT_DIR"); env && *env) return env;
    return kDefaultOutDir;
}

struct Inputs {
    double R = 1.0;
    double R_mu = 1.0;
    double eta = 1.0;
    std::string kind = "even";
    std::string side = "right";
    int n_points = 101;
    std::string config;
    std::string out_dir;
};

// ---- thresholds ------------------------------------------------------------

int cmd_thresholds(const Inputs& in, std::ostream& out) {
    const auto thr = thresholds(in.R, in.eta);
    json j;
    j["R"] = in.R;
    j["eta"] = in.eta;
    j["r_m"] = thr.r_m;
    j["r_minus"] = thr.r_minus;
    j["r0"] = thr.r0;
    j["r_plus"] = thr.r_plus;
    j["r_M"] = thr.r_M;
    j["r_M_residual"] = thr.r_M_residual;
    j["r_m_residual"] = thr.r_m_residual;
    j["r_M_bracket"] = {in.R + thr.t_M_bracket_lo, in.R + thr.t_M_bracket_hi};
    auto band = [](double lo, std::optional<double> hi, const std::string& what) {
        return json{{"R_mu_from", lo}, {"R_mu_to", hi ? json(*hi) : json(nullptr)}, {"regime", what}};
    };
    j["continuum"] = {
        band(0.0, thr.r_m, to_string(Continuum::ConnectedEndpoints)),
        band(thr.r_m, thr.r_minus, to_string(Continuum::DisconnectedEndpoints)),
        band(thr.r_minus, thr.r_plus, to_string(Continuum::UniqueEven)),
        band(thr.r_plus, thr.r_M, to_string(Continuum::DisconnectedEndpoints)),
        band(thr.r_M, std::nullopt, to_string(Continuum::ConnectedEndpoints)),
    };
    j["even_cases"] = {
        band(0.0, thr.r_minus, to_string(EvenCase::Case4)),
        band(thr.r_minus, thr.r0, to_string(EvenCase::Case5)),
        band(thr.r0, thr.r0, to_string(EvenCase::Case1)),
        band(thr.r0, thr.r_plus, to_string(EvenCase::Case2)),
        band(thr.r_plus, std::nullopt, to_string(EvenCase::Case3)),
    };
    out << j.dump(2) << '\n';
    return kExitOk;
}

// ---- profile ---------------------------------------------------------------

int cmd_profile(const Inputs& in, const std::vector<std::string>& args, std::ostream& out) {
    const FluidParams p(in.R, in.R_mu, in.eta);
    const Side side = side_from_string(in.side);
    const auto pp = build_profile(p, in.kind, side);
    const auto rep = evaluate(pp);

    OutputSet files(resolve_out_dir(in.out_dir), "profile", args);
    const std::string stem = "profile_" + in.kind + "_" + in.side;
    files.write(stem + ".json", profile_json(pp).dump(2) + "\n");
    files.write(stem + ".csv", profile_csv(pp));
    const auto manifest = files.finish(stem, params_json(p), json::object());

    json j;
    j["label"] = pp.label();
    j["regime"] = {{"even_case", to_string(classify_regime(p).even)},
                   {"continuum", to_string(classify_regime(p).continuum)}};
    j["topology"] = topology(pp);
    j["support_F"] = intervals_json(pp.support_F());
    j["support_G"] = intervals_json(pp.support_G());
    j["functionals"] = report_json(rep);
    j["steady_residual"] = steady_residual(pp);
    j["outputs"] = files.outputs();
    j["manifest"] = manifest.string();
    out << j.dump(2) << '\n';
    return kExitOk;
}

// ---- curve -----------------------------------------------------------------

std::string point_label(const Curve& c, std::size_t i) {
    if (i == c.even_index) return "even";
    if (i == 0) return "endpoint-lower:" + to_string(c.lower.kind);
    if (i + 1 == c.points.size()) return "endpoint-upper:" + to_string(c.upper.kind);
    return "interior";
}

json endpoint_json(const CurveEndpoint& e) {
    return {{"ell", e.ell},
            {"kind", to_string(e.kind)},
            {"zeta", zeta_json(e.zeta)},
            {"approach_distance", e.approach_distance},
            {"approach_gap", e.approach_gap}};
}

int cmd_curve(const Inputs& in, const std::vector<std::string>& args, std::ostream& out) {
    const FluidParams p(in.R, in.R_mu, in.eta);
    const auto thr = thresholds(p);
    if (classify_regime(p, thr).continuum == Continuum::UniqueEven)
        throw RegimeError("no continuation curve: " + regime_window_message(p, thr));
    const Curve c = continue_curve(p, in.n_points);
    const auto energies = energy_along_curve(c.points);
    const auto uni = check_unimodal(energies);
    if (!uni.unimodal || uni.argmin != c.even_index)
        throw NumericalError("rescaled energy along the curve is not unimodal with minimum at the even point");

    CsvWriter csv({"ell", "gamma1", "beta1", "alpha1", "alpha", "beta", "gamma", "E_star", "E_star_closed_form", "E",
                   "M1", "M2", "H", "label"});
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const auto& pt = c.points[i];
        const auto rep = evaluate(pt.profile);
        const auto& z = pt.zeta;
        std::vector<std::string> cells;
        for (double v : {pt.ell, z.gamma1, z.beta1, z.alpha1, z.alpha, z.beta, z.gamma, energies[i].quadrature,
                         energies[i].closed_form, rep.energy, rep.m1, rep.m2, rep.entropy})
            cells.push_back(num(v));
        cells.push_back(point_label(c, i));
        csv.row_strings(cells);
    }

    json ends;
    ends["params"] = params_json(p);
    ends["n_points"] = c.points.size();
    ends["even_index"] = c.even_index;
    ends["marched_steps"] = c.marched_steps;
    ends["lower"] = endpoint_json(c.lower);
    ends["upper"] = endpoint_json(c.upper);
    ends["energy_minimum_index"] = uni.argmin;

    OutputSet files(resolve_out_dir(in.out_dir), "curve", args);
    files.write("curve.csv", csv.str());
    files.write("curve_endpoints.json", ends.dump(2) + "\n");
    const auto manifest = files.finish("curve", params_json(p), json::object());

    json j;
    j["n_points"] = c.points.size();
    j["ell_lower"] = c.lower.ell;
    j["ell_upper"] = c.upper.ell;
    j["lower_kind"] = to_string(c.lower.kind);
    j["upper_kind"] = to_string(c.upper.kind);
    j["energy_minimum_ell"] = energies[uni.argmin].ell;
    j["outputs"] = files.outputs();
    j["manifest"] = manifest.string();
    out << j.dump(2) << '\n';
    return kExitOk;
}

// ---- simulate --------------------------------------------------------------

template <class T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

ProfilePair profile_from_descriptor(const FluidParams& p, const json& d) {
    return build_profile(p, get_or<std::string>(d, "kind", "even"),
                         side_from_string(get_or<std::string>(d, "side", "right")));
}

AnalyticSource bump_from(const json& d) {
    return cosine_bump(get_or(d, "center", 0.0), get_or(d, "half_width", 1.0));
}

std::string snapshot_name(double t) {
    std::ostringstream os;
    os << "snapshot_t" << std::fixed << std::setprecision(6) << t << ".csv";
    return os.str();
}

std::string snapshot_csv(const Grid& grid, const SimState& s, double eta2) {
    CsvWriter csv({"x_i", "f_i", "g_i", "eta2f_plus_g"});
    for (int i = 0; i < grid.n_cells(); ++i) csv.row({grid.center(i), s.f[i], s.g[i], eta2 * s.f[i] + s.g[i]});
    return csv.str();
}

int cmd_simulate(const Inputs& in, const std::vector<std::string>& args, std::ostream& out) {
    if (in.config.empty()) throw InvalidArgument("simulate requires --config");
    const std::string raw = read_file(in.config);
    json cfg_json;
    try {
        cfg_json = json::parse(raw);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config parse error: ") + e.what());
    }

    std::optional<SimConfig> cfg_holder;
    json init_desc, ref_desc;
    int snapshot_every = 0;
    try {
        const json& pj = cfg_json.at("params");
        const FluidParams p(pj.at("R").get<double>(), pj.at("R_mu").get<double>(), get_or(pj, "eta", 1.0));
        const json gj = get_or(cfg_json, "grid", json::object());
        const Grid grid(get_or(gj, "x_left", -5.0), get_or(gj, "x_right", 5.0), get_or(gj, "n_cells", 400));
        cfg_holder.emplace(SimConfig{grid, p, get_or(cfg_json, "dt", 1e-5), get_or(cfg_json, "t_end", 1.0),
                                     get_or(cfg_json, "cfl_check", true), get_or(cfg_json, "record_every", 100)});
        init_desc = cfg_json.at("initial");
        ref_desc = get_or(cfg_json, "reference", json(nullptr));
        snapshot_every = get_or(cfg_json, "snapshot_every_records", 0);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config error: ") + e.what());
    }
    const SimConfig& cfg = *cfg_holder;
    const FluidParams& p = cfg.params;

    SimState init;
    bool renormalized = false;
    const std::string init_type = get_or<std::string>(init_desc, "type", "");
    if (init_type == "profile") {
        init = init_state(profile_from_descriptor(p, init_desc), cfg.grid);
    } else if (init_type == "cosine_bumps") {
        auto r = init_state(bump_from(init_desc.at("f")), bump_from(init_desc.at("g")), cfg.grid,
                            get_or(init_desc, "renormalize", false));
        init = std::move(r.state);
        renormalized = r.renormalized;
    } else {
        throw InvalidArgument("config error: initial.type must be 'profile' or 'cosine_bumps'");
    }

    std::optional<ProfilePair> reference;
    if (!ref_desc.is_null()) reference = profile_from_descriptor(p, ref_desc);

    OutputSet files(resolve_out_dir(in.out_dir), "simulate", args);
    const double e2 = p.eta2();
    files.write(snapshot_name(0.0), snapshot_csv(cfg.grid, init, e2));
    long n_records = 0;
    auto on_record = [&](const SimState& s, const TrajectoryRecord& rec) {
        ++n_records;
        if (snapshot_every > 0 && n_records % snapshot_every == 0 && rec.t > 0.0)
            files.write(snapshot_name(rec.t), snapshot_csv(cfg.grid, s, e2));
    };
    const auto report = run(cfg, init, reference ? &*reference : nullptr, on_record);
    const std::string final_name = snapshot_name(report.final_state.t);
    if (std::find(files.outputs().begin(), files.outputs().end(), (resolve_out_dir(in.out_dir) / final_name).string()) ==
        files.outputs().end())
        files.write(final_name, snapshot_csv(cfg.grid, report.final_state, e2));

    CsvWriter traj({"t", "mass_f", "mass_g", "M1", "M2", "E", "E_star", "H", "I", "n_components_f", "n_components_g",
                    "l2_dist"});
    for (const auto& r : report.records)
        traj.row({r.t, r.mass_f, r.mass_g, r.m1, r.m2, r.energy, r.rescaled_energy, r.entropy, r.dissipation,
                  static_cast<double>(r.components_f), static_cast<double>(r.components_g), r.l2_dist});
    files.write("trajectory.csv", traj.str());
    const auto manifest = files.finish("simulate", params_json(p), json{{in.config, sha256_hex(raw)}});

    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json j;
    j["steps"] = report.final_state.step_count;
    j["t_final"] = report.final_state.t;
    j["records"] = report.records.size();
    j["renormalized_initial_data"] = renormalized;
    j["rupture_time_f"] = opt(report.rupture_time_f);
    j["rupture_time_g"] = opt(report.rupture_time_g);
    if (!report.records.empty()) {
        const auto& first = report.records.front();
        const auto& last = report.records.back();
        j["mass_drift"] = std::max(std::abs(last.mass_f - first.mass_f), std::abs(last.mass_g - first.mass_g));
        if (reference) j["l2_dist_final"] = last.l2_dist;
    }
    j["outputs"] = files.outputs();
    j["manifest"] = manifest.string();
    out << j.dump(2) << '\n';
    return kExitOk;
}

// ---- verify ----------------------------------------------------------------

class Battery {
public:
    explicit Battery(std::ostream& out) : out_(out) {}

    void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        bool ok = false;
        std::string detail;
        try {
            std::tie(ok, detail) = body();
        } catch (const std::exception& e) {
            detail = std::string("threw: ") + e.what();
        }
        out_ << (ok ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : "  ") << detail << '\n';
        failures_ += ok ? 0 : 1;
    }

    int failures() const { return failures_; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

std::pair<bool, std::string> below(double value, double tol) {
    return {value < tol, "value=" + num(value) + " tol=" + num(tol)};
}

double identity_defect(const FunctionalReport& r) {
    return std::max({std::abs(r.m2 - 2.0 * r.rescaled_energy), std::abs(r.rescaled_energy - 1.5 * r.energy),
                     std::abs(r.m1) * 10.0});
}

double mass_defect(const ProfilePair& pp) {
    const auto r = evaluate(pp);
    return std::max(std::abs(r.mass_f - 1.0), std::abs(r.mass_g - 1.0));
}

void verify_profile(Battery& b, const std::string& tag, const ProfilePair& pp) {
    b.check(tag + " masses", [&] { return below(mass_defect(pp), kMassTol); });
    b.check(tag + " steady residual", [&] { return below(steady_residual(pp), kSteadyTol); });
    b.check(tag + " identities", [&] { return below(identity_defect(evaluate(pp)), 1e-9); });
    b.check(tag + " dual involution", [&] { return below(max_difference(dual_transform(dual_transform(pp)), pp), 1e-12); });
}

int cmd_verify(const Inputs& in, std::ostream& out) {
    const FluidParams p(in.R, in.R_mu, in.eta);
    const auto thr = thresholds(p);
    const auto reg = classify_regime(p, thr);
    out << "verify " << p.describe() << " even=" << to_string(reg.even) << " continuum=" << to_string(reg.continuum)
        << '\n';
    Battery b(out);

    b.check("threshold ordering", [&] {
        const bool ok = thr.r_m < thr.r_minus && thr.r_minus < thr.r0 && thr.r0 < thr.r_plus && thr.r_plus < thr.r_M;
        return std::pair{ok, std::string()};
    });
    b.check("threshold residuals", [&] {
        return below(std::max(std::abs(r_M_equation_residual(p.R(), p.eta(), thr.r_M)),
                              std::abs(r_m_equation_residual(p.R(), p.eta(), thr.r_m))),
                     1e-10);
    });
    b.check("dual parameter involution", [&] {
        const auto d1 = dual_params(p);
        const auto d2 = dual_params(d1.params);
        const double e = std::max({std::abs(d2.params.R_mu() - p.R_mu()), std::abs(d2.params.eta() - p.eta()),
                                   std::abs(d1.scale * d2.scale - 1.0)});
        return below(e, 1e-12);
    });

    std::optional<ProfilePair> even;
    b.check("even profile construction", [&] {
        even.emplace(even_profile(p));
        return std::pair{true, even->label() + ", " + topology(*even)};
    });
    if (even) {
        verify_profile(b, "even", *even);
        b.check("even reflection symmetry", [&] { return below(max_difference(reflect(*even), *even), 1e-12); });
        if (reg.even == EvenCase::Case3 || reg.even == EvenCase::Case4) {
            b.check("even system residuals", [&] {
                const auto r = reg.even == EvenCase::Case3 ? even_case3_residuals(p, solve_even_case3(p))
                                                           : even_case4_residuals(p, solve_even_case4(p));
                return below(max_abs(r), kSystemTol);
            });
        }
    }

    if (reg.continuum == Continuum::ConnectedEndpoints) {
        for (Side s : {Side::Left, Side::Right}) {
            std::optional<ProfilePair> pp;
            const std::string tag = "connected " + to_string(s);
            b.check(tag + " construction", [&] {
                pp.emplace(connected_profile(p, s));
                return std::pair{true, pp->label()};
            });
            if (pp) verify_profile(b, tag, *pp);
        }
    } else if (reg.continuum == Continuum::DisconnectedEndpoints) {
        for (Side s : {Side::Left, Side::Right}) {
            std::optional<CurvePoint> cp;
            const std::string tag = "boundary " + to_string(s);
            b.check(tag + " construction", [&] {
                cp.emplace(boundary_disconnected_profile(p, s));
                return std::pair{true, cp->profile.label()};
            });
            if (cp) {
                verify_profile(b, tag, cp->profile);
                b.check(tag + " system residuals", [&] { return below(max_abs(curve_residuals(p, cp->zeta)), kSystemTol); });
            }
        }
    }

    if (reg.continuum != Continuum::UniqueEven) {
        std::optional<Curve> c;
        b.check("curve continuation", [&] {
            c.emplace(continue_curve(p, std::max(in.n_points, 11)));
            return std::pair{c->points.size() >= 11, std::to_string(c->points.size()) + " points"};
        });
        if (c) {
            b.check("curve system residuals", [&] {
                double worst = 0.0;
                for (const auto& pt : c->points) worst = std::max(worst, max_abs(curve_residuals(p, pt.zeta)));
                return below(worst, kSystemTol);
            });
            b.check("curve identities", [&] {
                double worst = 0.0;
                for (const auto& pt : c->points) worst = std::max(worst, identity_defect(evaluate(pt.profile)));
                return below(worst, 1e-9);
            });
            b.check("curve endpoint reflection", [&] {
                return below(max_abs_difference(c->lower.zeta, c->upper.zeta.reflected()), 1e-9);
            });
            b.check("curve energy unimodal", [&] {
                const auto e = energy_along_curve(c->points);
                const auto u = check_unimodal(e);
                return std::pair{u.unimodal && u.argmin == c->even_index,
                                 "argmin ell=" + num(e[u.argmin].ell)};
            });
        }
    }

    out << (b.failures() == 0 ? "ALL PASS" : std::to_string(b.failures()) + " FAILED") << '\n';
    return b.failures() == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Self-similar profiles and simulations of the thin-film Muskat system", "muskat_cli"};
    app.set_version_flag("--version", std::string(MUSKAT_VERSION));
    app.require_subcommand(1);

    Inputs in;
    auto add_params = [&](CLI::App* sub, bool with_mu) {
        sub->add_option("--R", in.R, "density ratio R > 0")->check(CLI::PositiveNumber);
        if (with_mu) sub->add_option("--R-mu", in.R_mu, "viscosity-density ratio R_mu > 0")->check(CLI::PositiveNumber);
        sub->add_option("--eta", in.eta, "mass ratio eta > 0")->check(CLI::PositiveNumber);
    };
    auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out-dir", in.out_dir, "output directory (default: $MUSKAT_OUT_DIR or ./muskat_out)");
    };

    auto* thr = app.add_subcommand("thresholds", "print regime thresholds as JSON");
    add_params(thr, false);

    auto* prof = app.add_subcommand("profile", "construct a steady profile and write JSON and CSV");
    add_params(prof, true);
    prof->add_option("--kind", in.kind, "even | connected | curve-endpoint")
        ->check(CLI::IsMember({"even", "connected", "curve-endpoint"}));
    prof->add_option("--side", in.side, "left | right")->check(CLI::IsMember({"left", "right"}));
    add_out(prof);

    auto* curve = app.add_subcommand("curve", "trace the one-parameter family of steady states");
    add_params(curve, true);
    curve->add_option("-n", in.n_points, "number of curve points")->check(CLI::Range(3, 100000));
    add_out(curve);

    auto* sim = app.add_subcommand("simulate", "run the finite-volume scheme from a JSON config");
    sim->add_option("--config", in.config, "path to the JSON config")->required();
    add_out(sim);

    auto* ver = app.add_subcommand("verify", "run the invariant battery for one parameter triple");
    add_params(ver, true);
    ver->add_option("-n", in.n_points, "number of curve points")->check(CLI::Range(3, 100000));

    std::vector<std::string> argv_store{"muskat_cli"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*thr) return cmd_thresholds(in, out);
        if (*prof) return cmd_profile(in, args, out);
        if (*curve) return cmd_curve(in, args, out);
        if (*sim) return cmd_simulate(in, args, out);
        if (*ver) return cmd_verify(in, out);
    } catch (const RegimeError& e) {
        err << "regime error: " << e.what() << '\n';
        return kExitRegime;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const fs::filesystem_error& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace muskat::cli
