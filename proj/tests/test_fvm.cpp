#include "muskat/errors.hpp"
#include "muskat/fvm.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace muskat;

namespace {

FluidParams at(double R_mu) { return FluidParams(1.0, R_mu, 1.0); }

double total(const std::vector<double>& v, double h) { return h * std::accumulate(v.begin(), v.end(), 0.0); }

double asymmetry(const std::vector<double>& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i] - v[v.size() - 1 - i]));
    return m;
}

}  // namespace

TEST_CASE("grid geometry") {
    const Grid g(-5.0, 5.0, 400);
    CHECK(g.h() == doctest::Approx(0.025));
    CHECK(g.face(0) == -5.0);
    CHECK(g.face(400) == 5.0);
    for (int i = 0; i < 400; ++i) {
        CHECK(g.center(i) == -g.center(399 - i));
        CHECK(g.face(i) < g.face(i + 1));
    }
    CHECK(g.scaled(2.0).x_right() == 10.0);
    CHECK(Grid(-5.0, 5.0, 3).n_cells() == 3);
    CHECK_THROWS_AS(Grid(-5.0, 5.0, 2), InvalidArgument);
    CHECK_THROWS_AS(Grid(1.0, -1.0, 10), InvalidArgument);
}

TEST_CASE("cell averages of an indicator") {
    const PiecewiseQuadratic box({{-1.0, 1.0, 0.5, 0.0}});
    const Grid aligned(-5.0, 5.0, 10);
    const auto s = init_state(box, box, aligned);
    CHECK(s.f[4] == doctest::Approx(0.5));
    CHECK(s.f[5] == doctest::Approx(0.5));
    CHECK(s.f[3] == 0.0);
    const Grid shifted(-5.5, 4.5, 10);
    const auto t = init_state(box, box, shifted);
    CHECK(t.f[4] == doctest::Approx(0.25));
    CHECK(t.f[5] == doctest::Approx(0.5));
    CHECK(t.f[6] == doctest::Approx(0.25));
    CHECK(total(t.f, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("cell averages of a profile keep unit mass") {
    const Grid g(-5.0, 5.0, 400);
    const auto s = init_state(even_profile(at(2.0)), g);
    CHECK(std::abs(total(s.f, g.h()) - 1.0) < 1e-12);
    CHECK(std::abs(total(s.g, g.h()) - 1.0) < 1e-12);
}

TEST_CASE("initial data must fit the domain and carry mass") {
    CHECK_THROWS_AS(init_state(even_profile(at(50.0)), Grid(-2.0, 2.0, 50)), SupportOutsideDomain);
    const AnalyticSource zero{[](double) { return 0.0; }, -1.0, 1.0};
    CHECK_THROWS_AS(init_state(zero, cosine_bump(0.0, 1.0), Grid()), InvalidArgument);
    CHECK_THROWS_AS(cosine_bump(0.0, 0.0), InvalidArgument);
}

TEST_CASE("analytic sources") {
    const Grid g(-5.0, 5.0, 400);
    const auto exact = init_state(cosine_bump(0.5, 1.2), cosine_bump(-0.3, 2.0), g);
    CHECK_FALSE(exact.renormalized);
    CHECK(std::abs(total(exact.state.f, g.h()) - 1.0) < 1e-10);
    const auto renorm = init_state(cosine_bump(0.5, 1.2), cosine_bump(-0.3, 2.0), g, true);
    CHECK(renorm.renormalized);
    CHECK(std::abs(total(renorm.state.f, g.h()) - 1.0) < 1e-14);
    CHECK(std::abs(total(renorm.state.g, g.h()) - 1.0) < 1e-14);
}

TEST_CASE("face velocities of constant states are pure drift") {
    const Grid g(-5.0, 5.0, 20);
    SimState s{std::vector<double>(20, 0.3), std::vector<double>(20, 0.7)};
    const auto v = face_velocities(g, s, FluidParams(2.0, 3.0, 0.5));
    REQUIRE(v.A.size() == 19);
    for (int i = 0; i < 19; ++i) {
        const double drift = -(g.center(i) + g.center(i + 1)) / 6.0;
        CHECK(v.A[i] == doctest::Approx(drift));
        CHECK(v.B[i] == doctest::Approx(drift));
    }
}

TEST_CASE("face velocities of symmetric states are antisymmetric") {
    const Grid g(-5.0, 5.0, 40);
    const auto s = init_state(cosine_bump(0.0, 2.0), cosine_bump(0.0, 1.0), g).state;
    const auto v = face_velocities(g, s, at(3.0));
    for (std::size_t i = 0; i < v.A.size(); ++i) {
        CHECK(v.A[i] == doctest::Approx(-v.A[v.A.size() - 1 - i]).epsilon(1e-14));
        CHECK(v.B[i] == doctest::Approx(-v.B[v.B.size() - 1 - i]).epsilon(1e-14));
    }
}

TEST_CASE("face velocities around a single loaded cell") {
    const Grid g(-5.0, 5.0, 10);
    const FluidParams p(2.0, 3.0, 1.5);
    SimState s{std::vector<double>(10, 0.0), std::vector<double>(10, 0.0)};
    s.f[4] = 0.8;
    const auto v = face_velocities(g, s, p);
    const double jump = (1.0 + p.R()) * p.eta2() * 0.8 / g.h();
    CHECK(v.A[3] == doctest::Approx(-(g.center(3) + g.center(4)) / 6.0 - jump));
    CHECK(v.A[4] == doctest::Approx(-(g.center(4) + g.center(5)) / 6.0 + jump));
    const double jump_b = p.eta2() * p.R_mu() * 0.8 / g.h();
    CHECK(v.B[3] == doctest::Approx(-(g.center(3) + g.center(4)) / 6.0 - jump_b));
}

TEST_CASE("three-cell hand example") {
    const Grid g(-5.0, 5.0, 3);
    SimState s{{0.0, 0.3, 0.0}, {0.0, 0.0, 0.0}};
    const auto v = face_velocities(g, s, at(1.0));
    CHECK(v.A[0] == doctest::Approx(0.3755555556).epsilon(1e-9));
    CHECK(v.A[1] == doctest::Approx(-0.3755555556).epsilon(1e-9));
    SimConfig cfg{g, at(1.0), 1e-2};
    const auto next = step(s, cfg);
    CHECK(next.f == s.f);
}

TEST_CASE("one step conserves mass exactly") {
    const Grid g(-5.0, 5.0, 200);
    const auto s = init_state(cosine_bump(0.7, 1.5), cosine_bump(-0.2, 2.0), g, true).state;
    SimConfig cfg{g, at(2.0), 1e-4};
    const auto next = step(s, cfg);
    CHECK(std::abs(total(next.f, g.h()) - 1.0) < 1e-14);
    CHECK(std::abs(total(next.g, g.h()) - 1.0) < 1e-14);
    CHECK(next.step_count == s.step_count + 1);
    CHECK(next.t == doctest::Approx(1e-4));
}

TEST_CASE("zero state is a fixed point") {
    const Grid g(-5.0, 5.0, 50);
    SimState s{std::vector<double>(50, 0.0), std::vector<double>(50, 0.0)};
    const auto next = step(s, SimConfig{g, at(1.0), 1e-3});
    CHECK(next.f == s.f);
    CHECK(next.g == s.g);
}

TEST_CASE("time step guards") {
    const Grid g(-5.0, 5.0, 3);
    SimState s{{0.0, 0.3, 0.0}, {0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(step(s, SimConfig{g, at(1.0), 100.0}), CflViolation);
    SimState t{{0.0, 3.0, 0.0}, {0.0, 0.0, 0.0}};
    const auto v = face_velocities(g, t, at(1.0));
    const double dt = 0.9 * g.h() / std::max(std::abs(v.A[0]), std::abs(v.A[1]));
    CHECK_THROWS_AS(step(t, SimConfig{g, at(1.0), dt}), NegativeCell);
}

TEST_CASE("trajectory records") {
    const Grid g(-5.0, 5.0, 200);
    const auto pp = even_profile(at(2.0));
    SimConfig cfg{g, at(2.0), 1e-4, 0.1, true, 100};
    const auto rep = run(cfg, init_state(pp, g), &pp);
    REQUIRE(rep.records.size() == 11);
    CHECK(rep.records.front().t == 0.0);
    CHECK(rep.records.back().t == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(rep.records.front().l2_dist < 1e-15);
    CHECK(rep.final_state.step_count == 1000);
    for (const auto& r : rep.records) {
        CHECK(std::abs(r.mass_f - 1.0) < 1e-12);
        CHECK(r.components_f == 1);
        CHECK(r.components_g == 1);
    }
    const auto norefs = run(cfg, init_state(pp, g));
    CHECK(std::isnan(norefs.records.back().l2_dist));
    int calls = 0;
    run(cfg, init_state(pp, g), nullptr, [&](const SimState&, const TrajectoryRecord&) { ++calls; });
    CHECK(calls == 11);
    CHECK_THROWS_AS(run(SimConfig{g, at(2.0), 0.0}, init_state(pp, g)), InvalidArgument);
}

TEST_CASE("even data stays even and the rescaled energy decays") {
    const Grid g(-5.0, 5.0, 200);
    const auto init = init_state(cosine_bump(0.0, 2.5), cosine_bump(0.0, 1.0), g, true).state;
    SimConfig cfg{g, at(3.0), 1e-4, 1.0, true, 50};
    double worst = 0.0;
    const auto rep = run(cfg, init, nullptr, [&](const SimState& s, const TrajectoryRecord&) {
        worst = std::max({worst, asymmetry(s.f), asymmetry(s.g)});
    });
    CHECK(worst < 1e-12);
    for (std::size_t i = 1; i < rep.records.size(); ++i) {
        CHECK(rep.records[i].rescaled_energy <= rep.records[i - 1].rescaled_energy + 1e-10);
        CHECK(std::abs(rep.records[i].m1) < 1e-12);
    }
}

TEST_CASE("first moment decays at rate one third") {
    const Grid g(-5.0, 5.0, 200);
    const auto init = init_state(cosine_bump(1.0, 1.5), cosine_bump(0.5, 2.0), g, true).state;
    SimConfig cfg{g, at(2.0), 1e-4, 1.5, true, 500};
    const auto rep = run(cfg, init);
    const double rate = std::log(rep.records.back().m1 / rep.records.front().m1) / rep.records.back().t;
    CHECK(rate > -0.35);
    CHECK(rate < -0.32);
}

TEST_CASE("support components") {
    CHECK(count_components(std::vector<double>{0, 1, 1, 0, 0, 2, 0}) == 2);
    CHECK(count_components(std::vector<double>{1, 1e-8, 1}) == 1);
    CHECK(count_components(std::vector<double>{1, 1e-12, 1}) == 2);
    CHECK(count_components(std::vector<double>{0, 0, 0}) == 0);
}

TEST_CASE("distance to a reference profile") {
    const Grid g(-5.0, 5.0, 100);
    const auto pp = even_profile(at(2.0));
    auto s = init_state(pp, g);
    CHECK(l2_distance(g, s, pp) < 1e-15);
    s.f[50] += 1.0;
    s.g[10] += 2.0;
    CHECK(l2_distance(g, s, pp) == doctest::Approx(std::sqrt(g.h() * 5.0)));
}

TEST_CASE("change of variables between unrescaled and rescaled states") {
    const Grid g(-5.0, 5.0, 100);
    const auto pp = even_profile(at(2.0));
    const auto s = init_state(pp, g);
    const GridSnapshot snap{0.0, g, s.f, s.g};

    SUBCASE("identity at the initial time") {
        const auto r = to_self_similar(snap);
        CHECK(r.t == 0.0);
        CHECK(r.f == snap.f);
        CHECK(r.grid.x_left() == g.x_left());
    }
    SUBCASE("round trip") {
        const GridSnapshot later{1.7, g, s.f, s.g};
        const auto back = from_self_similar(to_self_similar(later));
        CHECK(back.t == doctest::Approx(1.7).epsilon(1e-14));
        CHECK(back.grid.x_right() == doctest::Approx(5.0).epsilon(1e-14));
        for (std::size_t i = 0; i < s.f.size(); ++i) CHECK(back.f[i] == doctest::Approx(s.f[i]).epsilon(1e-14));
        const std::vector<GridSnapshot> many{snap, later};
        CHECK(to_self_similar(many).size() == 2);
        CHECK(from_self_similar(to_self_similar(many))[1].t == doctest::Approx(1.7));
    }
    SUBCASE("mass is invariant") {
        const GridSnapshot later{3.0, g, s.f, s.g};
        const auto r = to_self_similar(later);
        CHECK(total(r.f, r.grid.h()) == doctest::Approx(total(s.f, g.h())).epsilon(1e-14));
    }
    SUBCASE("self-similar solution maps onto the static profile") {
        const double tau = 1.0;
        std::vector<double> f(g.n_cells()), gg(g.n_cells());
        for (int i = 0; i < g.n_cells(); ++i) {
            const auto [a, b] = evaluate_self_similar(pp, tau + 1.0, g.center(i));
            f[i] = a;
            gg[i] = b;
        }
        const auto r = to_self_similar(GridSnapshot{tau, g, f, gg});
        CHECK(r.t == doctest::Approx(std::log(2.0)));
        for (int i = 0; i < g.n_cells(); ++i) {
            CHECK(r.f[i] == doctest::Approx(pp.F()(r.grid.center(i))).epsilon(1e-12));
            CHECK(r.g[i] == doctest::Approx(pp.G()(r.grid.center(i))).epsilon(1e-12));
        }
    }
    SUBCASE("self-similar solutions keep unit mass") {
        for (double t : {0.5, 1.0, 8.0}) {
            double m = 0.0;
            const Grid fine(-20.0, 20.0, 40000);
            for (int i = 0; i < fine.n_cells(); ++i) m += fine.h() * evaluate_self_similar(pp, t, fine.center(i)).first;
            CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
        }
        CHECK_THROWS_AS(evaluate_self_similar(pp, 0.0, 1.0), NonpositiveTime);
        CHECK_THROWS_AS(to_self_similar(GridSnapshot{-1.0, g, s.f, s.g}), NonpositiveTime);
    }
}
