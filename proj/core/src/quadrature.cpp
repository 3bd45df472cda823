#include <epl/quadrature.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace epl {

QuadResult integrate_semi_infinite(const std::function<double(double)>& f,
                                   double tol) {
    QuadResult res;
    try {
        boost::math::quadrature::exp_sinh<double> integrator;
        double err = 0.0, l1 = 0.0;
        res.value = integrator.integrate(f, tol, &err, &l1);
        res.error_estimate = err;
        res.ok = std::isfinite(res.value);
    } catch (const std::exception&) {
        res.ok = false;
        res.value = std::nan("");
    }
    return res;
}

QuadResult integrate_from(const std::function<double(double)>& f, double a,
                          double tol) {
    return integrate_semi_infinite([&f, a](double t) { return f(a + t); }, tol);
}

QuadResult integrate_finite(const std::function<double(double)>& f, double a,
                            double b, double tol) {
    QuadResult res;
    try {
        boost::math::quadrature::tanh_sinh<double> integrator;
        double err = 0.0, l1 = 0.0;
        std::size_t levels = 0;
        res.value = integrator.integrate(f, a, b, tol, &err, &l1, &levels);
        res.error_estimate = err;
        res.ok = std::isfinite(res.value);
    } catch (const std::exception&) {
        res.ok = false;
        res.value = std::nan("");
    }
    return res;
}

}  // namespace epl
