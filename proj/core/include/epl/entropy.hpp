#pragma once

#include <epl/distribution.hpp>
#include <epl/series.hpp>

namespace epl {

// Renyi entropy of order alpha (alpha > 0, alpha != 1), computed from the
// expansion of the integral of pdf^alpha. Terms are assembled in log space
// and accumulated with a streaming log-sum-exp, so the result stays finite
// even when individual gamma factors overflow a double.
SeriesResult renyi_entropy_series(double alpha, const EplParams& p,
                                  const SeriesConfig& cfg = {});

// Same quantity by direct numerical integration of pdf^alpha.
double renyi_entropy_quadrature(double alpha, const EplParams& p);

}  // namespace epl
