#pragma once

#include <Eigen/Dense>

#include <functional>

namespace muskat {

struct RootConfig {
    double rel_tol = 1e-13;
    double abs_tol = 1e-14;
    int max_iter = 200;
};

struct NewtonConfig {
    double tol = 1e-12;
    int max_iter = 50;
    double damping = 0.5;
    double min_step = 1e-12;
};

using ScalarFn = std::function<double(double)>;
using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

// Root of f inside [a, b] given a sign change. Throws NoBracket when
// f(a) f(b) > 0 and MaxIterExceeded when the tolerance is not reached.
double find_root_bracketed(const ScalarFn& f, double a, double b, const RootConfig& cfg = {});

// Moves `hi` away from `lo` by `factor` until f changes sign between them.
// Returns the new upper end or throws NoBracket after `max_expansions`.
double expand_bracket(const ScalarFn& f, double lo, double hi, double factor = 2.0,
                      int max_expansions = 200);

struct NewtonResult {
    Eigen::VectorXd x;
    int iterations = 0;
    double residual = 0.0;
};

NewtonResult newton_solve(const VectorFn& F, const JacobianFn& J, const Eigen::VectorXd& x0,
                          const NewtonConfig& cfg = {});

// Counts strict sign changes of f on `samples` equispaced points of [a, b].
int count_sign_changes(const ScalarFn& f, double a, double b, int samples);

}  // namespace muskat
