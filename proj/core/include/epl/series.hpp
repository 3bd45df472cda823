#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace epl {

// Controls truncation of infinite series: stop once a term's relative
// contribution drops below rel_tol, or hard-stop at max_terms.
struct SeriesConfig {
    double rel_tol = 1e-12;
    std::size_t max_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::domain_error("SeriesConfig: rel_tol must be > 0");
        if (max_terms < 1)
            throw std::domain_error("SeriesConfig: max_terms must be >= 1");
    }
};

// Outcome of a truncated series evaluation. `converged` is false when the
// term cap was hit before the tolerance was met; `cancellation_warning` is
// set when intermediate terms exceeded 1e6 times the final result, i.e. the
// sum lost six or more digits to cancellation.
struct SeriesResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    bool converged = true;
    bool cancellation_warning = false;
    double max_term = 0.0;
};

// Neumaier's improved Kahan summation: compensates both small-onto-large
// and large-onto-small additions.
template <typename Real = double>
class NeumaierSum {
  public:
    void add(Real x) {
        Real t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + comp_; }

  private:
    Real sum_ = 0;
    Real comp_ = 0;
};

}  // namespace epl
