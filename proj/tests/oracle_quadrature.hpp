#pragma once

// Numerical quadrature oracle for the kernel closed forms. tanh-sinh handles
// the endpoint singularity of (t_star - s)^(-gamma) directly, so the oracle
// stays valid when the window abuts t_star. Test code only.

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <functional>

namespace testutil {

inline double integrate(const std::function<double(double)>& f, double a,
                        double b) {
    if (a == b) return 0.0;
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate(f, a, b);
}

} // namespace testutil
