#pragma once

#include <functional>
#include <stdexcept>

namespace ut {

struct Bracket {
    double lo;
    double hi;
};

struct SolverReport {
    double argmin_or_root = 0.0;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    double tolerance_used = 0.0;
};

// Thrown by integrate() when the panel budget is exhausted before the
// requested tolerance is met; carries the estimate accumulated so far.
struct quadrature_error : std::runtime_error {
    double best_estimate;
    quadrature_error(const std::string& msg, double est)
        : std::runtime_error(msg), best_estimate(est) {}
};

SolverReport minimize_scalar(const std::function<double(double)>& f, Bracket br,
                             double tol = 1e-10);
SolverReport find_root(const std::function<double(double)>& f, Bracket br,
                       double tol = 1e-12);
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-10);
double second_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace ut
