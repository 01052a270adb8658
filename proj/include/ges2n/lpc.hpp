#ifndef GES2N_LPC_HPP
#define GES2N_LPC_HPP

// Linear-prediction (whitening) filter used to seed the optimizer:
// h0 = [1, -a_1, ..., -a_{D-1}] with a solving the Yule-Walker equations of
// order D-1 from the biased autocorrelation, via Levinson-Durbin.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace ges2n {

struct singular_autocorrelation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::vector<double> lpc_init(std::span<const double> x, std::size_t filter_length) {
    const std::size_t len = x.size();
    const std::size_t d = filter_length;
    if (d < 2)
        throw std::invalid_argument("lpc_init: filter length must be >= 2");
    if (len <= 2 * d)
        throw std::invalid_argument("lpc_init: signal too short (need L > 2 D)");
    const std::size_t order = d - 1;

    // biased autocorrelation r[k] = (1/L) sum_n x[n] x[n+k]
    std::vector<double> r(order + 1, 0.0);
    for (std::size_t k = 0; k <= order; ++k) {
        double acc = 0.0;
        for (std::size_t n = 0; n + k < len; ++n) acc += x[n] * x[n + k];
        r[k] = acc / static_cast<double>(len);
    }
    if (!(r[0] > 0.0))
        throw singular_autocorrelation("lpc_init: zero-energy signal");

    // Levinson-Durbin: predictor x[n] ~ sum_i a[i] x[n-i]
    std::vector<double> a(order + 1, 0.0), prev(order + 1, 0.0);
    double err = r[0];
    for (std::size_t m = 1; m <= order; ++m) {
        double acc = r[m];
        for (std::size_t i = 1; i < m; ++i) acc -= a[i] * r[m - i];
        const double k = acc / err;
        prev = a;
        a[m] = k;
        for (std::size_t i = 1; i < m; ++i) a[i] = prev[i] - k * prev[m - i];
        err *= (1.0 - k * k);
        if (!(err > 0.0))
            throw singular_autocorrelation("lpc_init: non-positive prediction-error variance at order " +
                                           std::to_string(m));
    }

    // prediction-error filter e[n] = x[n] - sum_i a[i] x[n-i]
    std::vector<double> h(d);
    h[0] = 1.0;
    for (std::size_t i = 1; i <= order; ++i) h[i] = -a[i];
    return h;
}

}  // namespace ges2n

#endif  // GES2N_LPC_HPP
