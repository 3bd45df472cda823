#pragma once

#include <functional>

namespace epl {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool ok = true;
};

// Adaptive quadrature over [0, inf).
QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double tol = 1e-10);

// Adaptive quadrature over [a, inf).
QuadResult integrate_from(const std::function<double(double)>& f, double a,
                          double tol = 1e-10);

// Adaptive quadrature over the finite interval [a, b].
QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, double tol = 1e-10);

}  // namespace epl
