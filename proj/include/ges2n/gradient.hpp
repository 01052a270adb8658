#ifndef GES2N_GRADIENT_HPP
#define GES2N_GRADIENT_HPP

// Analytical gradient of ln psi with respect to the filter coefficients,
// assembled matrix-free.  Writing s = V (y⊙y) and r for the per-bin row
// weights (w_s' C_s)/(w_s' C_s b) - (w_n' C_n)/(w_n' C_n b), the chain rule
// through db/dg = 4 Re{ conj(s) ⊙ V (y ⊙ X) } collapses to
//
//   grad_g[k] = 4 sum_n Re{c[n]} y[n] x[n + D - 1 - k],
//   c[n]      = omega[n]/(fs theta_end) * sum_m r[m] conj(s[m]) e^{-i alpha[m] theta[n]},
//
// so one Horner pass over the cyclic orders per sample plus one correlation
// against x produces the full gradient without forming V or X.  In max mode
// C_s^max is held constant during differentiation.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ges2n/objective.hpp"
#include "ges2n/rng.hpp"
#include "ges2n/signal_model.hpp"
#include "ges2n/vs_spectrum.hpp"

namespace ges2n {

// Raised when the cached SES does not correspond to the supplied (x, g).
struct stale_cache : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct gradient_workspace {
    std::vector<std::complex<double>> spectrum;  // V (y⊙y), shared with the SES
    std::vector<double> row_weights;             // dense per-bin weights
    std::vector<double> grad_g;
    std::vector<double> grad_h;
};

namespace detail {

// c[n] for all n: Horner evaluation of sum_m rcs[m] z^m at z = e^{-i dalpha theta[n]},
// parallelized over fixed sample blocks (each c[n] is independent).
inline std::vector<double> phase_contraction_real(std::span<const std::complex<double>> rcs,
                                                  std::span<const double> omega,
                                                  std::span<const double> theta,
                                                  double fs, double dalpha, std::size_t l_y) {
    std::vector<double> out(l_y);
    const double scale = 1.0 / (fs * theta[l_y - 1]);
    const std::size_t m_count = rcs.size();
    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t n = lo; n < hi; ++n) {
            const std::complex<double> z = std::polar(1.0, -dalpha * theta[n]);
            std::complex<double> acc = rcs[m_count - 1];
            for (std::size_t m = m_count - 1; m-- > 0;) acc = acc * z + rcs[m];
            out[n] = scale * omega[n] * acc.real();
        }
    };
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t n_threads = hw > 1 && l_y > 4096 ? hw : 1;
    if (n_threads <= 1) {
        run_range(0, l_y);
    } else {
        std::vector<std::thread> pool;
        const std::size_t block = (l_y + n_threads - 1) / n_threads;
        for (std::size_t t = 0; t < n_threads; ++t) {
            const std::size_t lo = t * block;
            const std::size_t hi = std::min(lo + block, l_y);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace detail

// d ln psi / d g.  `cached` must be the SES of fir_filter(x, g) on the same
// grid; a checksum mismatch raises stale_cache.
inline std::vector<double> grad_log_psi_wrt_g(std::span<const double> x,
                                              std::span<const double> g,
                                              std::span<const double> omega,
                                              std::span<const double> theta,
                                              double fs,
                                              const weighting_spec& ws,
                                              const ses_result& cached,
                                              gradient_workspace* scratch = nullptr) {
    const std::size_t d = g.size();
    const filtered_signal filtered = fir_filter(x, g);
    if (detail::checksum(filtered.y) != cached.y_checksum)
        throw stale_cache("grad_log_psi_wrt_g: cached SES does not match the current g");
    const std::size_t l_y = filtered.y.size();
    const std::size_t n_f = cached.grid.n_f();

    // C_s^max is recomputed from the cached b and then treated as constant.
    std::vector<sparse_row> refreshed;
    const std::vector<sparse_row>* c_s = &ws.c_s;
    if (ws.data_dependent) {
        refreshed = process_numerator(ws.c_s_base, cached.b, numerator_mode::max);
        c_s = &refreshed;
    }

    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < c_s->size(); ++m) num += ws.w_s[m] * (*c_s)[m].dot(cached.b);
    for (std::size_t m = 0; m < ws.c_n.size(); ++m) den += ws.w_n[m] * ws.c_n[m].dot(cached.b);
    if (!(den > 0.0) || !std::isfinite(den))
        throw degenerate_denominator("grad_log_psi_wrt_g: denominator is not positive and finite");
    if (!(num > 0.0) || !std::isfinite(num))
        throw degenerate_denominator("grad_log_psi_wrt_g: numerator is not positive and finite");

    std::vector<double> row_weights(n_f, 0.0);
    for (std::size_t m = 0; m < c_s->size(); ++m)
        for (std::size_t i = 0; i < (*c_s)[m].idx.size(); ++i)
            row_weights[(*c_s)[m].idx[i]] += ws.w_s[m] * (*c_s)[m].val[i] / num;
    for (std::size_t m = 0; m < ws.c_n.size(); ++m)
        for (std::size_t i = 0; i < ws.c_n[m].idx.size(); ++i)
            row_weights[ws.c_n[m].idx[i]] -= ws.w_n[m] * ws.c_n[m].val[i] / den;

    std::vector<std::complex<double>> rcs(n_f);
    for (std::size_t m = 0; m < n_f; ++m)
        rcs[m] = row_weights[m] * std::conj(cached.spectrum[m]);

    const std::vector<double> c = detail::phase_contraction_real(
        rcs, omega, theta, fs, cached.grid.delta_alpha, l_y);

    std::vector<double> u(l_y);
    for (std::size_t n = 0; n < l_y; ++n) u[n] = c[n] * filtered.y[n];

    std::vector<double> grad(d);
    for (std::size_t k = 0; k < d; ++k) {
        double acc = 0.0;
        const double* xk = x.data() + d - 1 - k;
        for (std::size_t n = 0; n < l_y; ++n) acc += u[n] * xk[n];
        grad[k] = 4.0 * acc;
    }

    if (scratch) {
        scratch->spectrum = cached.spectrum;
        scratch->row_weights = std::move(row_weights);
        scratch->grad_g = grad;
    }
    return grad;
}

// Projector dg/dh = (||h||^2 I - h h') / ||h||^3 applied matrix-free:
// grad_h = (grad_g - (h'grad_g / ||h||^2) h) / ||h||, orthogonal to h.
inline std::vector<double> grad_log_psi_wrt_h(std::span<const double> h,
                                              std::span<const double> grad_g) {
    if (h.size() != grad_g.size())
        throw std::invalid_argument("grad_log_psi_wrt_h: size mismatch");
    const double nrm = l2_norm(h);
    if (!(nrm > 0.0))
        throw std::invalid_argument("grad_log_psi_wrt_h: zero h");
    double radial = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) radial += h[i] * grad_g[i];
    radial /= nrm * nrm;
    std::vector<double> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        out[i] = (grad_g[i] - radial * h[i]) / nrm;
    return out;
}

struct objective_eval {
    double value = 0.0;
    std::vector<double> gradient;
};

using objective_evaluator = std::function<objective_eval(std::span<const double>)>;

// Central-difference verification oracle: worst relative error of the
// analytic directional derivative over `directions` random unit directions.
// step <= 0 selects the default 1e-6 * max(1, ||h||).
inline double finite_difference_check(const objective_evaluator& fn,
                                      std::span<const double> h,
                                      std::size_t directions,
                                      double step = 0.0,
                                      std::uint64_t seed = 2024) {
    if (step < 0.0)
        throw std::invalid_argument("finite_difference_check: step must be positive");
    const double s = step > 0.0 ? step : 1e-6 * std::max(1.0, l2_norm(h));
    random_stream rng(seed);
    const objective_eval at_h = fn(h);
    double worst = 0.0;
    std::vector<double> dir(h.size()), probe(h.size());
    for (std::size_t trial = 0; trial < directions; ++trial) {
        for (auto& e : dir) e = rng.gaussian();
        const double nrm = l2_norm(dir);
        for (auto& e : dir) e /= nrm;
        for (std::size_t i = 0; i < h.size(); ++i) probe[i] = h[i] + s * dir[i];
        const double f_plus = fn(probe).value;
        for (std::size_t i = 0; i < h.size(); ++i) probe[i] = h[i] - s * dir[i];
        const double f_minus = fn(probe).value;
        const double fd = (f_plus - f_minus) / (2.0 * s);
        double analytic = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) analytic += at_h.gradient[i] * dir[i];
        const double denom = std::max(std::abs(fd), std::abs(analytic));
        if (denom > 0.0)
            worst = std::max(worst, std::abs(fd - analytic) / denom);
    }
    return worst;
}

}  // namespace ges2n

#endif  // GES2N_GRADIENT_HPP
