#include "muskat/numerics.hpp"

#include "muskat/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <string>

namespace muskat {

double find_root_bracketed(const ScalarFn& f, double a, double b, const RootConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_iter < 1)
        throw InvalidArgument("find_root_bracketed: invalid RootConfig");
    if (a > b) std::swap(a, b);
    const double fa = f(a);
    const double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NoBracket("find_root_bracketed: non-finite value at bracket end");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb))
        throw NoBracket("find_root_bracketed: f(a) and f(b) have the same sign on [" +
                        std::to_string(a) + ", " + std::to_string(b) + "]");

    auto converged = [&](double lo, double hi) {
        return std::abs(hi - lo) <= cfg.rel_tol * std::min(std::abs(lo), std::abs(hi)) + cfg.abs_tol;
    };
    std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.max_iter);
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, converged, iters);
    if (iters >= static_cast<std::uintmax_t>(cfg.max_iter) && !converged(lo, hi))
        throw MaxIterExceeded("find_root_bracketed: no convergence after " +
                              std::to_string(cfg.max_iter) + " iterations");
    const double flo = f(lo);
    const double fhi = f(hi);
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

double expand_bracket(const ScalarFn& f, double lo, double hi, double factor, int max_expansions) {
    const double flo = f(lo);
    double width = hi - lo;
    for (int k = 0; k < max_expansions; ++k) {
        const double fhi = f(hi);
        if (fhi == 0.0 || std::signbit(fhi) != std::signbit(flo)) return hi;
        width *= factor;
        hi = lo + width;
    }
    throw NoBracket("expand_bracket: no sign change found");
}

NewtonResult newton_solve(const VectorFn& F, const JacobianFn& J, const Eigen::VectorXd& x0,
                          const NewtonConfig& cfg) {
    if (!(cfg.damping > 0.0 && cfg.damping < 1.0))
        throw InvalidArgument("newton_solve: damping must lie in (0, 1)");

    NewtonResult out;
    out.x = x0;
    Eigen::VectorXd r = F(out.x);
    double norm = r.lpNorm<Eigen::Infinity>();
    for (int it = 0; it < cfg.max_iter; ++it) {
        if (norm <= cfg.tol) {
            out.iterations = it;
            out.residual = norm;
            return out;
        }
        const Eigen::MatrixXd jac = J(out.x);
        double scale = 1.0;
        for (Eigen::Index i = 0; i < jac.rows(); ++i) scale *= std::max(jac.row(i).norm(), 1e-300);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(jac);
        if (std::abs(lu.determinant()) < 1e-14 * scale)
            throw SingularJacobian("newton_solve: Jacobian is numerically singular");
        const Eigen::VectorXd dx = lu.solve(-r);

        double s = 1.0;
        while (true) {
            const Eigen::VectorXd trial = out.x + s * dx;
            const Eigen::VectorXd rt = F(trial);
            const double nt = rt.lpNorm<Eigen::Infinity>();
            if (std::isfinite(nt) && nt < norm) {
                out.x = trial;
                r = rt;
                norm = nt;
                break;
            }
            s *= cfg.damping;
            if (s < cfg.min_step)
                throw StepTooSmall("newton_solve: line search failed to reduce the residual");
        }
    }
    if (norm <= cfg.tol) {
        out.iterations = cfg.max_iter;
        out.residual = norm;
        return out;
    }
    throw MaxIterExceeded("newton_solve: residual " + std::to_string(norm) + " after " +
                          std::to_string(cfg.max_iter) + " iterations");
}

int count_sign_changes(const ScalarFn& f, double a, double b, int samples) {
    int changes = 0;
    int prev_sign = 0;
    for (int i = 0; i < samples; ++i) {
        const double x = a + (b - a) * static_cast<double>(i) / (samples - 1);
        const double v = f(x);
        const int s = (v > 0.0) - (v < 0.0);
        if (s == 0) continue;
        if (prev_sign != 0 && s != prev_sign) ++changes;
        prev_sign = s;
    }
    return changes;
}

}  // namespace muskat
