#ifndef GES2N_SIGNAL_MODEL_HPP
#define GES2N_SIGNAL_MODEL_HPP

// Measured-signal data model: vibration record, shaft angle integration,
// FIR filtering and filter normalization.

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ges2n {

// A vibration measurement with its reference-shaft speed channel.
// x and omega are sampled simultaneously at the constant rate fs.
struct vibration_record {
    std::vector<double> x;      // acceleration samples (arbitrary units)
    double fs = 0.0;            // sample rate [Hz]
    std::vector<double> omega;  // instantaneous shaft speed [rad/s], > 0

    std::size_t size() const { return x.size(); }

    void validate() const {
        if (x.size() != omega.size())
            throw std::invalid_argument("vibration_record: x and omega length mismatch");
        if (x.size() < 2)
            throw std::invalid_argument("vibration_record: need at least 2 samples");
        if (!(fs > 0.0))
            throw std::invalid_argument("vibration_record: fs must be positive");
        for (double w : omega) {
            if (!std::isfinite(w))
                throw std::invalid_argument("vibration_record: omega contains non-finite values");
            if (!(w > 0.0))
                throw std::invalid_argument("vibration_record: omega must be positive (forward rotation)");
        }
    }
};

// Instantaneous shaft angle [rad], theta[0] = 0, strictly increasing.
struct angle_profile {
    std::vector<double> theta;
};

// Trapezoidal integration of the speed channel:
//   theta[n] = theta[n-1] + (omega[n] + omega[n-1]) / (2 fs)
inline angle_profile integrate_angle(const vibration_record& rec) {
    rec.validate();
    angle_profile out;
    out.theta.resize(rec.size());
    out.theta[0] = 0.0;
    const double half_dt = 0.5 / rec.fs;
    for (std::size_t n = 1; n < rec.size(); ++n)
        out.theta[n] = out.theta[n - 1] + (rec.omega[n] + rec.omega[n - 1]) * half_dt;
    return out;
}

// Unconstrained FIR coefficients h together with their L2-normalized image g.
struct filter_state {
    std::vector<double> h;
    std::vector<double> g;  // h / ||h||_2

    std::size_t length() const { return h.size(); }
};

inline double l2_norm(std::span<const double> v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
}

inline filter_state normalize_filter(std::vector<double> h) {
    if (h.size() < 2)
        throw std::invalid_argument("normalize_filter: filter length must be >= 2");
    const double nrm = l2_norm(h);
    if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw std::invalid_argument("normalize_filter: zero or non-finite coefficient vector");
    filter_state st;
    st.g.resize(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) st.g[i] = h[i] / nrm;
    st.h = std::move(h);
    return st;
}

// Filtered signal y of length L_y = L - D - 1.  offset maps y[n] onto the
// input time axis: y[n] is aligned with sample n + offset of omega/theta.
struct filtered_signal {
    std::vector<double> y;
    std::size_t offset = 0;
};

// y[n] = sum_k x[n + D - 1 - k] g[k], n = 0 .. L_y - 1, the matrix-vector
// product y = X g evaluated row-wise without forming X.
inline filtered_signal fir_filter(std::span<const double> x, std::span<const double> g) {
    const std::size_t len = x.size();
    const std::size_t d = g.size();
    if (d < 2)
        throw std::invalid_argument("fir_filter: filter length must be >= 2");
    if (len <= d + 1)
        throw std::invalid_argument("fir_filter: signal too short (L must exceed D + 1)");
    const std::size_t l_y = len - d - 1;
    filtered_signal out;
    out.y.resize(l_y);
    out.offset = 0;
    for (std::size_t n = 0; n < l_y; ++n) {
        double acc = 0.0;
        const double* xr = x.data() + n + d - 1;
        for (std::size_t k = 0; k < d; ++k)
            acc += xr[-static_cast<std::ptrdiff_t>(k)] * g[k];
        out.y[n] = acc;
    }
    return out;
}

}  // namespace ges2n

#endif  // GES2N_SIGNAL_MODEL_HPP
