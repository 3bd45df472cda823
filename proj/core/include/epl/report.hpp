#pragma once

#include <epl/competitors.hpp>
#include <epl/data.hpp>
#include <epl/estimation.hpp>
#include <epl/gof.hpp>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace epl {

// Rows pair the library's computed numbers with fixed reference values so
// callers can print them side by side with absolute differences.

struct MomentsSummaryRow {
    double theta;
    double mean_value;
    double mean_reference;
    double variance_value;
    double variance_reference;
    double cv_value;
    double cv_reference;
};

// Mean, variance and cv ratio (variance / mean^2) at beta = 1 over
// theta in {0.5, 1, 5, 10}.
std::vector<MomentsSummaryRow> moments_summary_table();

struct OrderStatMomentRow {
    int i;
    int n;
    int r;
    double series_value;
    double series_reference;
    double quadrature_value;
    double quadrature_reference;
    bool series_converged;
    bool cancellation_warning;
};

// Order-statistic moments at beta = 0.1, theta = 0.5, n = 20 for
// i in {1, 10, 20} and r in 1..4, by the capped series (terms j = 0..cap
// inclusive) and by quadrature.
std::vector<OrderStatMomentRow> order_stat_table(std::size_t series_cap = 100);

struct FitComparisonRow {
    std::string family;
    std::array<double, 2> params;
    std::array<double, 2> params_reference;
    double loglik;
    bool converged;
    double ks_statistic;
    double ks_reference;
    double p_value;
    double p_reference;
};

// Fits all six families to the named fixture ("aircon" or "vinyl") and
// pairs the results with the reference estimates.
std::vector<FitComparisonRow> fit_comparison_table(
    const std::string& fixture_name);

struct FitSummary {
    std::string family;
    FitResult fit;
    KsResult ks;
};

// family is "epl" or one of the competitor names.
FitSummary fit_one(const DataSet& data, const std::string& family,
                   const FitConfig& cfg = {});
std::vector<FitSummary> fit_all(const DataSet& data,
                                const FitConfig& cfg = {});

}  // namespace epl
