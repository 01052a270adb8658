#ifndef GES2N_TESTS_ORACLES_HPP
#define GES2N_TESTS_ORACLES_HPP

// Dense brute-force reference implementations used only by tests.  Everything
// here materializes the full matrices and evaluates exponentials directly, as
// an independent check on the library's matrix-free paths.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace oracle {

using cvec = std::vector<std::complex<double>>;
using cmat = std::vector<cvec>;  // row-major
using dvec = std::vector<double>;
using dmat = std::vector<dvec>;

// Convolution matrix X with X[n][k] = x[n + D - 1 - k], L_y = L - D - 1 rows.
inline dmat conv_matrix(std::span<const double> x, std::size_t d) {
    const std::size_t l_y = x.size() - d - 1;
    dmat m(l_y, dvec(d));
    for (std::size_t n = 0; n < l_y; ++n)
        for (std::size_t k = 0; k < d; ++k)
            m[n][k] = x[n + d - 1 - k];
    return m;
}

inline dvec mat_vec(const dmat& m, std::span<const double> v) {
    dvec out(m.size(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            out[r] += m[r][c] * v[c];
    return out;
}

// Velocity-synchronous Fourier matrix,
// V[m][n] = omega[n] exp(-i alpha[m] theta[n]) / (fs theta[L_y - 1]).
inline cmat vs_matrix(std::span<const double> omega, std::span<const double> theta,
                      double fs, std::span<const double> alpha, std::size_t l_y) {
    cmat v(alpha.size(), cvec(l_y));
    const double scale = 1.0 / (fs * theta[l_y - 1]);
    for (std::size_t m = 0; m < alpha.size(); ++m)
        for (std::size_t n = 0; n < l_y; ++n)
            v[m][n] = scale * omega[n] *
                      std::exp(std::complex<double>(0.0, -alpha[m] * theta[n]));
    return v;
}

inline cvec cmat_vec(const cmat& m, std::span<const double> v) {
    cvec out(m.size(), {0.0, 0.0});
    for (std::size_t r = 0; r < m.size(); ++r)
        for (std::size_t c = 0; c < m[r].size(); ++c)
            out[r] += m[r][c] * v[c];
    return out;
}

// SES through the dense matrices: b = conj(V (y⊙y)) ⊙ (V (y⊙y)).
inline dvec dense_ses(std::span<const double> y, const cmat& v) {
    dvec sq(y.size());
    for (std::size_t n = 0; n < y.size(); ++n) sq[n] = y[n] * y[n];
    const cvec s = cmat_vec(v, sq);
    dvec b(s.size());
    for (std::size_t m = 0; m < s.size(); ++m) b[m] = std::norm(s[m]);
    return b;
}

// Plain DFT of a real signal at arbitrary normalized angular frequencies:
// out[m] = sum_n sig[n] exp(-i w[m] n).
inline cvec plain_dft(std::span<const double> sig, std::span<const double> w) {
    cvec out(w.size(), {0.0, 0.0});
    for (std::size_t m = 0; m < w.size(); ++m)
        for (std::size_t n = 0; n < sig.size(); ++n)
            out[m] += sig[n] * std::exp(std::complex<double>(0.0, -w[m] * static_cast<double>(n)));
    return out;
}

// Dense gradient of ln psi w.r.t. g: contracts
// db/dg[m][k] = 4 Re{ conj(s[m]) (V (y ⊙ X))[m][k] } against the row weights
// r[m] = (w_s' C_s)[m]/num - (w_n' C_n)[m]/den, with all matrices explicit.
// Also returns the complex-assembled product-rule sum so callers can check
// that its imaginary part vanishes.
struct dense_gradient_result {
    dvec grad;          // real assembly
    cvec complex_sum;   // product-rule sum per coefficient (should be real)
};

inline dense_gradient_result dense_grad_ln_psi_g(std::span<const double> x,
                                                 std::span<const double> g,
                                                 const cmat& v,
                                                 std::span<const double> row_weights) {
    const std::size_t d = g.size();
    const std::size_t l_y = v.empty() ? 0 : v[0].size();
    const dmat xm = conv_matrix(x, d);
    const dvec y = mat_vec(xm, g);
    dvec sq(l_y);
    for (std::size_t n = 0; n < l_y; ++n) sq[n] = y[n] * y[n];
    const cvec s = cmat_vec(v, sq);

    dense_gradient_result res;
    res.grad.assign(d, 0.0);
    res.complex_sum.assign(d, {0.0, 0.0});
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t m = 0; m < v.size(); ++m) {
            std::complex<double> t{0.0, 0.0};  // (V (y ⊙ X))[m][k]
            for (std::size_t n = 0; n < l_y; ++n) t += v[m][n] * y[n] * xm[n][k];
            // db[m]/dg[k] via the product rule: conj(ds) s + conj(s) ds, ds = 2 t
            const std::complex<double> pair =
                std::conj(2.0 * t) * s[m] + std::conj(s[m]) * (2.0 * t);
            res.complex_sum[k] += row_weights[m] * pair;
            res.grad[k] += row_weights[m] * 4.0 * (std::conj(s[m]) * t).real();
        }
    }
    return res;
}

// Dense projector (||h||^2 I - h h') / ||h||^3 applied to a vector.
inline dvec dense_projector_apply(std::span<const double> h, std::span<const double> v) {
    const std::size_t d = h.size();
    double nh2 = 0.0;
    for (double e : h) nh2 += e * e;
    const double nh = std::sqrt(nh2);
    dmat p(d, dvec(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            p[i][j] = ((i == j ? nh2 : 0.0) - h[i] * h[j]) / (nh2 * nh);
    return mat_vec(p, v);
}

}  // namespace oracle

#endif  // GES2N_TESTS_ORACLES_HPP
