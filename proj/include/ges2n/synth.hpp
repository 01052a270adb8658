#ifndef GES2N_SYNTH_HPP
#define GES2N_SYNTH_HPP

// Deterministic synthetic variable-speed gearbox signals with known fault and
// extraneous content.  Components are angle-locked burst trains (windowed
// damped sinusoids at a carrier, positions following theta, not t) over a
// white-noise floor, optionally with random non-angle-locked impulses that
// mimic environmental impacts.  Component levels are scaled against the
// measured noise power, so configured SNRs hold exactly in the emitted
// record.  Everything is a pure function of the seed (see rng.hpp for the
// portability guarantees).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ges2n/rng.hpp"
#include "ges2n/signal_model.hpp"

namespace ges2n {

struct speed_profile {
    enum class kind { constant, ramp, piecewise };
    kind shape = kind::constant;
    double omega_start = 20.0;  // [rad/s]
    double omega_end = 20.0;    // ramp target
    std::vector<std::pair<double, double>> regimes;  // (time [s], omega) breakpoints

    double at(double t, double duration) const {
        switch (shape) {
            case kind::constant:
                return omega_start;
            case kind::ramp:
                return omega_start + (omega_end - omega_start) * (t / duration);
            case kind::piecewise: {
                if (regimes.size() < 2)
                    throw std::invalid_argument("speed_profile: piecewise needs >= 2 breakpoints");
                if (t <= regimes.front().first) return regimes.front().second;
                if (t >= regimes.back().first) return regimes.back().second;
                for (std::size_t i = 1; i < regimes.size(); ++i)
                    if (t <= regimes[i].first) {
                        const auto& [t0, w0] = regimes[i - 1];
                        const auto& [t1, w1] = regimes[i];
                        return w0 + (w1 - w0) * (t - t0) / (t1 - t0);
                    }
                return regimes.back().second;
            }
        }
        return omega_start;
    }
};

struct synth_config {
    double fs = 25600.0;     // [Hz]
    double duration = 5.0;   // [s]
    speed_profile speed;

    double fault_order = 1.0;          // [shaft orders]
    double fault_carrier_hz = 600.0;   // resonance center
    double fault_snr_db = 0.0;         // burst power over white-noise power
    double fault_window_s = 0.002;     // burst window length
    bool fault_enabled = true;

    double extraneous_order = 5.72;
    double extraneous_carrier_hz = 10500.0;
    double extraneous_snr_db = 3.0;
    double extraneous_window_s = 0.002;
    bool extraneous_enabled = true;

    double noise_db = 0.0;             // white floor power in dB; -inf disables
    double impulse_rate_hz = 0.0;      // random impacts per second; 0 disables
    double impulse_snr_db = 0.0;       // impulse power over white-noise power

    std::uint64_t seed = 1;

    void validate() const {
        if (!(fs > 0.0) || !(duration > 0.0))
            throw std::invalid_argument("synth_config: fs and duration must be positive");
        if (fault_enabled && !(fault_carrier_hz < 0.5 * fs))
            throw std::invalid_argument("synth_config: fault carrier above Nyquist");
        if (extraneous_enabled && !(extraneous_carrier_hz < 0.5 * fs))
            throw std::invalid_argument("synth_config: extraneous carrier above Nyquist");
        if ((fault_enabled && !(fault_order > 0.0)) ||
            (extraneous_enabled && !(extraneous_order > 0.0)))
            throw std::invalid_argument("synth_config: orders must be positive");
        if (impulse_rate_hz < 0.0)
            throw std::invalid_argument("synth_config: impulse rate must be >= 0");
    }
};

struct synth_truth {
    double fault_order = 0.0;
    double extraneous_order = 0.0;
};

struct synth_output {
    vibration_record record;
    synth_truth truth;
};

namespace detail {

inline double hann01(double u) { return 0.5 - 0.5 * std::cos(2.0 * 3.14159265358979323846 * u); }

// Burst train locked to shaft angle: one event each time theta crosses
// e * 2 pi / order; event times are found by linear interpolation so bursts
// stay angle-locked to sub-sample accuracy.
inline std::vector<double> burst_train(const std::vector<double>& theta, double fs,
                                       double order, double carrier_hz, double window_s) {
    const std::size_t n = theta.size();
    std::vector<double> out(n, 0.0);
    const double dtheta = 2.0 * 3.14159265358979323846 / order;
    const double tau = 0.25 * window_s;
    const std::size_t window_samples = static_cast<std::size_t>(window_s * fs) + 2;
    std::size_t cursor = 0;
    const double two_pi_fc = 2.0 * 3.14159265358979323846 * carrier_hz;
    for (std::size_t e = 0;; ++e) {
        const double theta_e = static_cast<double>(e) * dtheta;
        if (theta_e > theta.back()) break;
        double t_event;
        std::size_t start;
        if (theta_e <= theta.front()) {
            t_event = 0.0;
            start = 0;
        } else {
            while (cursor + 1 < n && theta[cursor + 1] < theta_e) ++cursor;
            // theta[cursor] < theta_e <= theta[cursor + 1]
            const double frac = (theta_e - theta[cursor]) / (theta[cursor + 1] - theta[cursor]);
            t_event = (static_cast<double>(cursor) + frac) / fs;
            start = cursor;
        }
        for (std::size_t k = 0; k < window_samples; ++k) {
            const std::size_t idx = start + k;
            if (idx >= n) break;
            const double dt = static_cast<double>(idx) / fs - t_event;
            if (dt < 0.0) continue;
            if (dt > window_s) break;
            out[idx] += std::sin(two_pi_fc * dt) * std::exp(-dt / tau) * hann01(dt / window_s);
        }
    }
    return out;
}

inline double mean_power(const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return acc / static_cast<double>(v.size());
}

inline void add_scaled(std::vector<double>& x, const std::vector<double>& comp,
                       double target_power) {
    const double p = mean_power(comp);
    if (!(p > 0.0))
        throw std::invalid_argument("synth: component has zero energy; check orders vs duration");
    const double gain = std::sqrt(target_power / p);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += gain * comp[i];
}

}  // namespace detail

inline synth_output generate(const synth_config& cfg) {
    cfg.validate();
    const std::size_t n = static_cast<std::size_t>(std::llround(cfg.fs * cfg.duration));
    if (n < 4)
        throw std::invalid_argument("synth: record too short");

    synth_output out;
    out.record.fs = cfg.fs;
    out.record.omega.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = cfg.speed.at(static_cast<double>(i) / cfg.fs, cfg.duration);
        if (!(w > 0.0))
            throw std::invalid_argument("synth: speed profile must stay positive");
        out.record.omega[i] = w;
    }
    out.record.x.assign(n, 0.0);
    const angle_profile profile = integrate_angle(
        {std::vector<double>(n, 0.0), cfg.fs, out.record.omega});

    random_stream rng(cfg.seed);

    const bool has_noise = std::isfinite(cfg.noise_db);
    const double noise_power = has_noise ? std::pow(10.0, cfg.noise_db / 10.0) : 0.0;
    // reference power for SNR scaling; unit when the noise floor is disabled
    const double ref_power = has_noise ? noise_power : 1.0;

    if (has_noise) {
        const double sigma = std::sqrt(noise_power);
        for (std::size_t i = 0; i < n; ++i) out.record.x[i] = sigma * rng.gaussian();
    } else {
        for (std::size_t i = 0; i < n; ++i) rng.gaussian();  // keep stream alignment
    }

    if (cfg.impulse_rate_hz > 0.0) {
        const double prob = cfg.impulse_rate_hz / cfg.fs;
        std::vector<double> imp(n, 0.0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform();
            const double sgn = rng.uniform() < 0.5 ? -1.0 : 1.0;
            if (u < prob) {
                imp[i] = sgn;
                ++count;
            }
        }
        if (count > 0)
            detail::add_scaled(out.record.x, imp,
                               ref_power * std::pow(10.0, cfg.impulse_snr_db / 10.0));
    }

    if (cfg.fault_enabled) {
        const auto comp = detail::burst_train(profile.theta, cfg.fs, cfg.fault_order,
                                              cfg.fault_carrier_hz, cfg.fault_window_s);
        detail::add_scaled(out.record.x, comp,
                           ref_power * std::pow(10.0, cfg.fault_snr_db / 10.0));
    }
    if (cfg.extraneous_enabled) {
        const auto comp = detail::burst_train(profile.theta, cfg.fs, cfg.extraneous_order,
                                              cfg.extraneous_carrier_hz, cfg.extraneous_window_s);
        detail::add_scaled(out.record.x, comp,
                           ref_power * std::pow(10.0, cfg.extraneous_snr_db / 10.0));
    }

    out.truth.fault_order = cfg.fault_enabled ? cfg.fault_order : 0.0;
    out.truth.extraneous_order = cfg.extraneous_enabled ? cfg.extraneous_order : 0.0;
    return out;
}

}  // namespace ges2n

#endif  // GES2N_SYNTH_HPP
