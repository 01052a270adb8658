#ifndef GES2N_VS_SPECTRUM_HPP
#define GES2N_VS_SPECTRUM_HPP

// Order-domain squared envelope spectrum under time-varying speed, computed
// with the velocity-synchronous DFT.  The N_f x L_y transform matrix is never
// materialized: rows are streamed with a phase recurrence across cyclic
// orders, re-anchored with a direct exponential every `phase_chunk` rows to
// bound drift.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ges2n/signal_model.hpp"

namespace ges2n {

// Uniform cyclic-order grid alpha[k] = k * delta_alpha [shaft orders].
struct cyclic_grid {
    double delta_alpha = 0.0;
    std::vector<double> alpha;

    std::size_t n_f() const { return alpha.size(); }
};

// Resolution matching one cycle over the revolutions spanned by the filtered
// signal: delta_alpha = 2 pi / theta[l_y - 1].
inline double default_resolution(const angle_profile& profile, std::size_t l_y) {
    if (l_y < 1 || l_y > profile.theta.size())
        throw std::invalid_argument("default_resolution: l_y out of range");
    const double span = profile.theta[l_y - 1];
    if (!(span > 0.0))
        throw std::invalid_argument("default_resolution: theta span must be positive");
    return 2.0 * 3.14159265358979323846 / span;
}

inline cyclic_grid build_grid(double delta_alpha, double alpha_max) {
    if (!(delta_alpha > 0.0))
        throw std::invalid_argument("build_grid: delta_alpha must be positive");
    if (!(alpha_max >= delta_alpha))
        throw std::invalid_argument("build_grid: alpha_max must be >= delta_alpha");
    cyclic_grid grid;
    grid.delta_alpha = delta_alpha;
    const std::size_t n_f = static_cast<std::size_t>(std::floor(alpha_max / delta_alpha)) + 1;
    grid.alpha.resize(n_f);
    for (std::size_t k = 0; k < n_f; ++k)
        grid.alpha[k] = static_cast<double>(k) * delta_alpha;
    return grid;
}

namespace detail {

// Rows per recurrence chunk.  Chunk starts are evaluated with std::exp, so
// results do not depend on how chunks are distributed over threads.
inline constexpr std::size_t phase_chunk = 64;

inline std::size_t vsdft_threads(std::size_t n_chunks) {
    const unsigned hw = std::thread::hardware_concurrency();
    std::size_t n = hw ? hw : 1;
    if (n > n_chunks) n = n_chunks;
    return n;
}

}  // namespace detail

// out[m] = 1/(fs theta[L_y-1]) * sum_n omega[n] signal[n] exp(-i alpha[m] theta[n]).
// omega/theta must provide at least signal.size() aligned samples.
inline std::vector<std::complex<double>> vs_dft(std::span<const double> signal,
                                                std::span<const double> omega,
                                                std::span<const double> theta,
                                                double fs,
                                                const cyclic_grid& grid) {
    const std::size_t l_y = signal.size();
    if (l_y == 0)
        throw std::invalid_argument("vs_dft: empty signal");
    if (omega.size() < l_y || theta.size() < l_y)
        throw std::invalid_argument("vs_dft: omega/theta shorter than signal");
    const double span = theta[l_y - 1];
    if (!(span > 0.0))
        throw std::invalid_argument("vs_dft: theta[L_y-1] must be positive");
    const std::size_t n_f = grid.n_f();
    const double scale = 1.0 / (fs * span);
    const double dalpha = grid.delta_alpha;

    std::vector<std::complex<double>> out(n_f);
    const std::size_t n_chunks = (n_f + detail::phase_chunk - 1) / detail::phase_chunk;

    auto run_chunk = [&](std::size_t chunk) {
        const std::size_t m0 = chunk * detail::phase_chunk;
        const std::size_t m1 = std::min(m0 + detail::phase_chunk, n_f);
        const double a0 = grid.alpha[m0];
        std::vector<std::complex<double>> acc(l_y), step(l_y);
        for (std::size_t n = 0; n < l_y; ++n) {
            const double w = scale * omega[n] * signal[n];
            acc[n] = std::polar(w, -a0 * theta[n]);
            step[n] = std::polar(1.0, -dalpha * theta[n]);
        }
        for (std::size_t m = m0; m < m1; ++m) {
            std::complex<double> sum{0.0, 0.0};
            for (std::size_t n = 0; n < l_y; ++n) sum += acc[n];
            out[m] = sum;
            if (m + 1 < m1)
                for (std::size_t n = 0; n < l_y; ++n) acc[n] *= step[n];
        }
    };

    const std::size_t n_threads = detail::vsdft_threads(n_chunks);
    if (n_threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t c = t; c < n_chunks; c += n_threads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    return out;
}

// Squared envelope spectrum of a filtered signal: b = conj(s) ⊙ s with
// s = V (y ⊙ y).  The complex spectrum is retained for gradient reuse, keyed
// by a checksum of y so a stale cache can be detected.
struct ses_result {
    std::vector<double> b;
    cyclic_grid grid;
    std::vector<std::complex<double>> spectrum;  // V (y⊙y)
    std::uint64_t y_checksum = 0;
};

namespace detail {

inline std::uint64_t fnv1a(const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t checksum(std::span<const double> v) {
    return fnv1a(v.data(), v.size() * sizeof(double));
}

}  // namespace detail

inline ses_result squared_envelope_spectrum(const filtered_signal& filtered,
                                            std::span<const double> omega,
                                            std::span<const double> theta,
                                            double fs,
                                            const cyclic_grid& grid) {
    if (filtered.y.empty())
        throw std::invalid_argument("squared_envelope_spectrum: empty signal");
    std::vector<double> squared(filtered.y.size());
    for (std::size_t n = 0; n < squared.size(); ++n)
        squared[n] = filtered.y[n] * filtered.y[n];
    ses_result res;
    res.grid = grid;
    res.spectrum = vs_dft(squared, omega.subspan(filtered.offset),
                          theta.subspan(filtered.offset), fs, grid);
    res.b.resize(res.spectrum.size());
    for (std::size_t k = 0; k < res.b.size(); ++k)
        res.b[k] = std::norm(res.spectrum[k]);
    res.y_checksum = detail::checksum(filtered.y);
    return res;
}

}  // namespace ges2n

#endif  // GES2N_VS_SPECTRUM_HPP
