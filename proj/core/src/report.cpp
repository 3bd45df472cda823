#include <epl/report.hpp>

#include <epl/distribution.hpp>
#include <epl/moments.hpp>

#include <stdexcept>

namespace epl {

namespace {

struct FitReference {
    const char* family;
    std::array<double, 2> params;
    double ks;
    double p;
};

constexpr std::array<FitReference, 6> kAirconReference{{
    {"epl", {0.0101, 0.9193}, 0.1290, 0.6531},
    {"eg", {0.0102, 0.6148}, 0.1262, 0.6793},
    {"ep", {0.0106, 1.7941}, 0.1472, 0.4890},
    {"el", {0.0111, 0.1932}, 0.1288, 0.6555},
    {"weibull", {0.0183, 0.8533}, 0.1531, 0.4394},
    {"gamma", {0.0136, 0.8135}, 0.1694, 0.3187},
}};

constexpr std::array<FitReference, 6> kVinylReference{{
    {"epl", {0.4796, 5.0811}, 0.0882, 0.9331},
    {"eg", {0.4818, 0.1771}, 0.0876, 0.9360},
    {"ep", {0.4767, 0.4276}, 0.0880, 0.9341},
    {"el", {0.4867, 0.7022}, 0.0870, 0.9394},
    {"weibull", {0.5296, 1.0101}, 0.0918, 0.9116},
    {"gamma", {0.5654, 1.0626}, 0.0973, 0.8733},
}};

}  // namespace

std::vector<MomentsSummaryRow> moments_summary_table() {
    struct Ref {
        double theta, mean, variance, cv;
    };
    static constexpr Ref refs[] = {
        {0.5, 0.4315028, 0.3923130, 2.107004},
        {1.0, 0.6158883, 0.5966291, 1.572898},
        {5.0, 0.9001530, 0.8989667, 1.109458},
        {10.0, 0.9494062, 0.9491146, 1.052966},
    };
    std::vector<MomentsSummaryRow> rows;
    for (const Ref& ref : refs) {
        const EplParams p(1.0, ref.theta);
        rows.push_back({ref.theta, mean(p), ref.mean, variance(p),
                        ref.variance, cv_ratio(p), ref.cv});
    }
    return rows;
}

std::vector<OrderStatMomentRow> order_stat_table(std::size_t series_cap) {
    struct Ref {
        int i;
        std::array<double, 4> series;
        std::array<double, 4> quadrature;
    };
    static const Ref refs[] = {
        {1,
         {0.1172126, 0.03121316, 0.01280193, 0.007203924},
         {0.1260696, 0.03281421, 0.01323651, 0.007361332}},
        {10,
         {2.279001, 4.940849, 13.43999, 42.12036},
         {2.056653, 4.899393, 13.42872, 42.11641}},
        {20,
         {22.10733, 621.2616, 21864.98, 944798.2},
         {22.10734, 621.2616, 21864.98, 944798.2}},
    };
    const EplParams p(0.1, 0.5);
    SeriesConfig cfg;
    cfg.max_terms = series_cap;
    std::vector<OrderStatMomentRow> rows;
    for (const Ref& ref : refs) {
        for (int r = 1; r <= 4; ++r) {
            const OrderStatSpec spec{ref.i, 20, r};
            const SeriesResult sr = order_stat_moment(
                spec, p, SeriesTruncation::fixed_cap, cfg);
            const double quad = order_stat_moment_quadrature(spec, p);
            rows.push_back({ref.i, 20, r, sr.value, ref.series[r - 1], quad,
                            ref.quadrature[r - 1], sr.converged,
                            sr.cancellation_warning});
        }
    }
    return rows;
}

FitSummary fit_one(const DataSet& data, const std::string& family,
                   const FitConfig& cfg) {
    if (family == "epl") {
        FitResult fit = fit_mle(data, cfg);
        const EplParams params = fit.params;
        KsResult ks =
            ks_test(data, [params](double x) { return cdf(x, params); });
        return FitSummary{family, std::move(fit), ks};
    }
    const Family f = family_from_string(family);
    FitResult fit = fit_competitor(data, f, cfg);
    const CompetitorModel model{f, {fit.params.beta, fit.params.theta}};
    KsResult ks = ks_test(
        data, [model](double x) { return competitor_cdf(x, model); });
    return FitSummary{family, std::move(fit), ks};
}

std::vector<FitSummary> fit_all(const DataSet& data, const FitConfig& cfg) {
    std::vector<FitSummary> out;
    for (const char* family : {"epl", "eg", "ep", "el", "weibull", "gamma"})
        out.push_back(fit_one(data, family, cfg));
    return out;
}

std::vector<FitComparisonRow> fit_comparison_table(
    const std::string& fixture_name) {
    const DataSet data = fixtures::by_name(fixture_name);
    const auto& refs = fixture_name == "aircon" ? kAirconReference
                                                : kVinylReference;
    std::vector<FitComparisonRow> rows;
    for (const FitReference& ref : refs) {
        const FitSummary s = fit_one(data, ref.family);
        rows.push_back({s.family,
                        {s.fit.params.beta, s.fit.params.theta},
                        ref.params, s.fit.loglik, s.fit.converged,
                        s.ks.statistic, ref.ks, s.ks.p_value, ref.p});
    }
    return rows;
}

}  // namespace epl
