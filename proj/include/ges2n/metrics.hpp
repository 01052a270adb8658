#ifndef GES2N_METRICS_HPP
#define GES2N_METRICS_HPP

// SES quality metrics M1-M4 and the row-normalization transforms used to
// present SES maps.  Degenerate denominators (zero median, zero extraneous
// amplitude, zero variance) become empty optionals, serialized as null.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "ges2n/vs_spectrum.hpp"

namespace ges2n {

struct metrics_report {
    std::optional<double> m1;  // harmonic mean / SES median
    std::optional<double> m2;  // harmonic mean / extraneous amplitude
    std::optional<double> m3;  // harmonic mean / max SES over [0.5, 20 alpha_c]
    std::optional<double> m4;  // 1 / population variance of the harmonic amplitudes
    double alpha_c = 0.0;
    double alpha_extraneous = 0.0;
};

namespace detail {

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty vector");
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
        const double lo = *std::max_element(v.begin(), v.begin() + mid);
        return 0.5 * (lo + hi);
    }
    return hi;
}

// peak within [center - width/2, center + width/2], inclusive
inline double band_peak(std::span<const double> b, const cyclic_grid& grid,
                        double center, double width) {
    double peak = -1.0;
    const double lo = center - 0.5 * width;
    const double hi = center + 0.5 * width;
    for (std::size_t l = 0; l < grid.n_f(); ++l) {
        const double a = grid.alpha[l];
        if (a >= lo && a <= hi) peak = std::max(peak, b[l]);
    }
    if (peak < 0.0)
        throw std::invalid_argument("band_peak: band around " + std::to_string(center) +
                                    " contains no grid point");
    return peak;
}

}  // namespace detail

// Per-harmonic peak within k alpha_c +- band_width/2 (robust to small order
// deviation of the physical component).
inline std::vector<double> harmonic_amplitudes(const ses_result& ses, double alpha_c,
                                               std::size_t n_h, double band_width) {
    if (!(alpha_c > 0.0) || n_h < 1 || !(band_width > 0.0))
        throw std::invalid_argument("harmonic_amplitudes: invalid band parameters");
    std::vector<double> amps(n_h);
    for (std::size_t k = 1; k <= n_h; ++k)
        amps[k - 1] = detail::band_peak(ses.b, ses.grid,
                                        static_cast<double>(k) * alpha_c, band_width);
    return amps;
}

inline metrics_report compute_metrics(const ses_result& ses, double alpha_c,
                                      double alpha_extraneous, std::size_t n_h,
                                      double band_width) {
    if (ses.grid.alpha.back() < 20.0 * alpha_c)
        throw std::invalid_argument("compute_metrics: grid must cover 20 * alpha_c");
    const std::vector<double> amps = harmonic_amplitudes(ses, alpha_c, n_h, band_width);
    double mean = 0.0;
    for (double a : amps) mean += a;
    mean /= static_cast<double>(amps.size());

    metrics_report rep;
    rep.alpha_c = alpha_c;
    rep.alpha_extraneous = alpha_extraneous;

    const double med = detail::median(ses.b);
    if (med > 0.0) rep.m1 = mean / med;

    const double extraneous = detail::band_peak(ses.b, ses.grid, alpha_extraneous, band_width);
    if (extraneous > 0.0) rep.m2 = mean / extraneous;

    double range_max = 0.0;
    for (std::size_t l = 0; l < ses.grid.n_f(); ++l) {
        const double a = ses.grid.alpha[l];
        if (a >= 0.5 && a <= 20.0 * alpha_c) range_max = std::max(range_max, ses.b[l]);
    }
    if (range_max > 0.0) rep.m3 = mean / range_max;

    double var = 0.0;  // population variance
    for (double a : amps) var += (a - mean) * (a - mean);
    var /= static_cast<double>(amps.size());
    if (var > 0.0) rep.m4 = 1.0 / var;

    return rep;
}

// ln(b / median(b)), the presentation transform applied to SES maps.
inline std::vector<double> log_median_normalize(std::span<const double> b) {
    const double med = detail::median({b.begin(), b.end()});
    if (!(med > 0.0))
        throw std::invalid_argument("log_median_normalize: non-positive median");
    std::vector<double> out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = std::log(b[i] / med);
    return out;
}

// Row-wise min-max normalization to [0, 1]; constant rows map to all zeros.
inline std::vector<std::vector<double>> normalize_for_display(
    const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<double>> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].empty())
            throw std::invalid_argument("normalize_for_display: empty row");
        const auto [lo_it, hi_it] = std::minmax_element(rows[r].begin(), rows[r].end());
        const double lo = *lo_it, hi = *hi_it;
        out[r].resize(rows[r].size());
        if (hi > lo)
            for (std::size_t i = 0; i < rows[r].size(); ++i)
                out[r][i] = (rows[r][i] - lo) / (hi - lo);
        // constant row stays all zeros
    }
    return out;
}

}  // namespace ges2n

#endif  // GES2N_METRICS_HPP
