#pragma once

#include <epl/data.hpp>
#include <epl/estimation.hpp>

#include <array>
#include <string>

namespace epl {

// The five comparison lifetime families. Every family has two parameters,
// stored as {beta, second} where beta is the rate-like parameter appearing
// first in the density and `second` is the family's shape/mixing parameter:
// eg: p in (0,1); ep: lambda > 0; el: p in (0,1); weibull: alpha > 0;
// gamma: gamma > 0.
enum class Family { eg, ep, el, weibull, gamma };

struct CompetitorModel {
    Family family;
    std::array<double, 2> params;
    void validate() const;
};

double competitor_pdf(double x, const CompetitorModel& m);
double competitor_log_pdf(double x, const CompetitorModel& m);
double competitor_cdf(double x, const CompetitorModel& m);
double competitor_log_likelihood(const DataSet& data,
                                 const CompetitorModel& m);

// Gradient of the log-likelihood in the natural parameters (beta, second).
std::array<double, 2> competitor_score(const DataSet& data,
                                       const CompetitorModel& m);

// MLE via the same transformed-parameter optimizer used for the EPL fit
// (log transforms for positive parameters, logit for the unit-interval
// ones). The fitted pair is carried in FitResult::params as (beta, second).
// Covariance/std errors come from the observed information; they are NaN
// when that matrix is not positive definite at the returned point.
FitResult fit_competitor(const DataSet& data, Family family,
                         const FitConfig& cfg = {});

// Weibull-like expression with a plain exponential tail, f proportional to
// alpha * beta^alpha * x^(alpha-1) * exp(-beta*x). For alpha != 1 this is
// not a normalizable density and its pseudo-likelihood is unbounded above:
// the fit diverges (the returned shape and pseudo-likelihood blow up toward
// overflow) and reports non-convergence. Kept only for side-by-side
// comparison with the standard Weibull.
double weibull_variant_pdf(double x, double beta, double alpha);
FitResult fit_weibull_variant(const DataSet& data, const FitConfig& cfg = {});

Family family_from_string(const std::string& name);
std::string family_name(Family f);

}  // namespace epl
