#pragma once

#include "fdm/numerics.hpp"

#include <functional>

namespace fdm {

/// Integrand receiving x together with its distances x - a and b - x, which
/// stay accurate where x itself rounds onto an endpoint.
using EndpointIntegrand = std::function<Real(const Real& x, const Real& from_a, const Real& to_b)>;

struct QuadratureResult {
    Real value;
    Real last_difference;
    int levels = 0;
};

/// Double-exponential (tanh-sinh) quadrature on [a, b], halving the step
/// until successive levels differ by less than `tolerance`. Integrable
/// endpoint singularities are fine. Throws QuadratureError past `max_levels`.
QuadratureResult tanh_sinh(const EndpointIntegrand& f, const Real& a, const Real& b, const Real& tolerance,
                           int max_levels = 12);

} // namespace fdm
