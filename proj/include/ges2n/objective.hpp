#ifndef GES2N_OBJECTIVE_HPP
#define GES2N_OBJECTIVE_HPP

// Cyclic-order weighting matrices and the generalised envelope-spectrum
// signal-to-noise objective psi = (w_s' C_s b) / (w_n' C_n b), together with
// the five named variants.  Weighting rows are sparse (index + value pairs);
// base rows are {0,1}-valued before mean/max processing.

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ges2n/vs_spectrum.hpp"

namespace ges2n {

// Raised when the denominator w_n' C_n b is non-positive or non-finite.
struct degenerate_denominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Targeted cyclic-order bands: [k alpha_c - bw/2, k alpha_c + bw/2], k = 1..n_h.
struct band_spec {
    double alpha_c = 1.0;       // target cyclic order [shaft orders]
    std::size_t n_h = 10;       // number of targeted harmonics
    double band_width = 0.1;    // band width [shaft orders]
};

struct sparse_row {
    std::vector<std::size_t> idx;
    std::vector<double> val;

    double dot(std::span<const double> b) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i) acc += val[i] * b[idx[i]];
        return acc;
    }
};

enum class numerator_mode { mean, max };

enum class ges2n_variant { ics2, mean_nf, mean_np, max_nf, max_np };

struct variant_config {
    ges2n_variant kind = ges2n_variant::max_np;
    double alpha_n_min = 0.5;
    double alpha_n_max = 11.0;

    numerator_mode mode() const {
        return (kind == ges2n_variant::mean_nf || kind == ges2n_variant::mean_np)
                   ? numerator_mode::mean
                   : numerator_mode::max;
    }
};

inline variant_config make_variant(ges2n_variant kind, const band_spec& spec) {
    variant_config cfg;
    cfg.kind = kind;
    const double full_max = (static_cast<double>(spec.n_h) + 1.0) * spec.alpha_c;
    switch (kind) {
        case ges2n_variant::ics2:
            cfg.alpha_n_min = 0.0;
            cfg.alpha_n_max = 0.0;
            break;
        case ges2n_variant::mean_nf:
        case ges2n_variant::max_nf:
            cfg.alpha_n_min = 0.0;
            cfg.alpha_n_max = full_max;
            break;
        case ges2n_variant::mean_np:
        case ges2n_variant::max_np:
            cfg.alpha_n_min = 0.5;
            cfg.alpha_n_max = full_max;
            break;
    }
    return cfg;
}

inline const char* variant_name(ges2n_variant v) {
    switch (v) {
        case ges2n_variant::ics2: return "GES2N-ICS2";
        case ges2n_variant::mean_nf: return "GES2N-Mean-Nf";
        case ges2n_variant::mean_np: return "GES2N-Mean-Np";
        case ges2n_variant::max_nf: return "GES2N-Max-Nf";
        case ges2n_variant::max_np: return "GES2N-Max-Np";
    }
    return "?";
}

inline ges2n_variant parse_variant(const std::string& name) {
    for (ges2n_variant v : {ges2n_variant::ics2, ges2n_variant::mean_nf, ges2n_variant::mean_np,
                            ges2n_variant::max_nf, ges2n_variant::max_np})
        if (name == variant_name(v)) return v;
    throw std::invalid_argument(
        "unknown variant '" + name +
        "'; valid names: GES2N-ICS2, GES2N-Mean-Nf, GES2N-Mean-Np, GES2N-Max-Nf, GES2N-Max-Np");
}

// Base numerator matrix, one {0,1} row per targeted harmonic; boundaries
// inclusive on both ends.
inline std::vector<sparse_row> build_numerator_base(const band_spec& spec,
                                                    const cyclic_grid& grid) {
    if (!(spec.alpha_c > 0.0) || spec.n_h < 1 || !(spec.band_width > 0.0))
        throw std::invalid_argument("build_numerator_base: invalid band spec");
    std::vector<sparse_row> rows(spec.n_h);
    for (std::size_t m = 0; m < spec.n_h; ++m) {
        const double center = static_cast<double>(m + 1) * spec.alpha_c;
        const double lo = center - 0.5 * spec.band_width;
        const double hi = center + 0.5 * spec.band_width;
        for (std::size_t l = 0; l < grid.n_f(); ++l) {
            const double a = grid.alpha[l];
            if (a >= lo && a <= hi) {
                rows[m].idx.push_back(l);
                rows[m].val.push_back(1.0);
            }
        }
        if (rows[m].idx.empty())
            throw std::invalid_argument("build_numerator_base: band " + std::to_string(m + 1) +
                                        " (center " + std::to_string(center) +
                                        ") contains no grid point");
        if (hi > grid.alpha.back())
            throw std::invalid_argument("build_numerator_base: band " + std::to_string(m + 1) +
                                        " extends beyond the cyclic grid");
    }
    return rows;
}

// Mean processing: every nonzero entry becomes 1 / (total entry count over
// all bands).  Max processing: per band, a one-hot row at the grid index
// maximizing base[m,l] * b[l]; ties break toward the lowest index.
inline std::vector<sparse_row> process_numerator(const std::vector<sparse_row>& base,
                                                 std::span<const double> b,
                                                 numerator_mode mode) {
    if (base.empty())
        throw std::invalid_argument("process_numerator: empty base matrix");
    std::vector<sparse_row> rows(base.size());
    if (mode == numerator_mode::mean) {
        std::size_t total = 0;
        for (const auto& r : base) total += r.idx.size();
        const double w = 1.0 / static_cast<double>(total);
        for (std::size_t m = 0; m < base.size(); ++m) {
            rows[m].idx = base[m].idx;
            rows[m].val.assign(base[m].idx.size(), w);
        }
    } else {
        for (std::size_t m = 0; m < base.size(); ++m) {
            std::size_t best = base[m].idx.front();
            double best_v = base[m].val.front() * b[best];
            for (std::size_t i = 1; i < base[m].idx.size(); ++i) {
                const double v = base[m].val[i] * b[base[m].idx[i]];
                if (v > best_v) {
                    best_v = v;
                    best = base[m].idx[i];
                }
            }
            rows[m].idx = {best};
            rows[m].val = {1.0};
        }
    }
    return rows;
}

// Single-row denominator: grid points in [alpha_n_min, alpha_n_max] whose
// column is untouched by any numerator base band, then mean-normalized.
inline sparse_row build_denominator(const variant_config& variant,
                                    const std::vector<sparse_row>& numerator_base,
                                    const cyclic_grid& grid) {
    if (!(variant.alpha_n_max >= variant.alpha_n_min))
        throw std::invalid_argument("build_denominator: invalid cyclic order range");
    std::vector<bool> excluded(grid.n_f(), false);
    for (const auto& r : numerator_base)
        for (std::size_t l : r.idx) excluded[l] = true;
    sparse_row row;
    for (std::size_t l = 0; l < grid.n_f(); ++l) {
        const double a = grid.alpha[l];
        if (a >= variant.alpha_n_min && a <= variant.alpha_n_max && !excluded[l])
            row.idx.push_back(l);
    }
    if (row.idx.empty())
        throw std::invalid_argument("build_denominator: empty denominator support");
    row.val.assign(row.idx.size(), 1.0 / static_cast<double>(row.idx.size()));
    return row;
}

// One GES2N variant bound to a grid: numerator base plus processed weights.
struct weighting_spec {
    std::vector<sparse_row> c_s_base;  // {0,1} rows
    std::vector<sparse_row> c_s;       // processed numerator
    std::vector<sparse_row> c_n;       // processed denominator (single row here)
    std::vector<double> w_s;           // band weights, all ones
    std::vector<double> w_n;
    numerator_mode mode = numerator_mode::mean;
    bool data_dependent = false;       // true when c_s must be refreshed from b
};

inline weighting_spec build_weighting(const band_spec& bands, const variant_config& variant,
                                      const cyclic_grid& grid) {
    weighting_spec ws;
    ws.c_s_base = build_numerator_base(bands, grid);
    ws.mode = variant.mode();
    ws.data_dependent = (ws.mode == numerator_mode::max);
    if (ws.mode == numerator_mode::mean) {
        std::vector<double> dummy(grid.n_f(), 0.0);
        ws.c_s = process_numerator(ws.c_s_base, dummy, numerator_mode::mean);
    }
    ws.c_n = {build_denominator(variant, ws.c_s_base, grid)};
    ws.w_s.assign(ws.c_s_base.size(), 1.0);
    ws.w_n.assign(ws.c_n.size(), 1.0);
    return ws;
}

// Max-mode refresh producing a new value; mean-mode specs pass through.
inline weighting_spec refresh_weighting(const weighting_spec& ws, std::span<const double> b) {
    if (!ws.data_dependent) return ws;
    weighting_spec out = ws;
    out.c_s = process_numerator(ws.c_s_base, b, numerator_mode::max);
    return out;
}

struct objective_value {
    double psi = 0.0;
    double log_psi = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
};

// psi = (w_s' C_s b) / (w_n' C_n b); log_psi = ln(num) - ln(den).
// Max-mode weighting is refreshed from the supplied b before evaluation.
inline objective_value evaluate_objective(const ses_result& ses, const weighting_spec& ws) {
    const weighting_spec& spec = ws;
    std::vector<sparse_row> refreshed;
    const std::vector<sparse_row>* c_s = &spec.c_s;
    if (spec.data_dependent) {
        refreshed = process_numerator(spec.c_s_base, ses.b, numerator_mode::max);
        c_s = &refreshed;
    }
    objective_value out;
    for (std::size_t m = 0; m < c_s->size(); ++m)
        out.numerator += spec.w_s[m] * (*c_s)[m].dot(ses.b);
    for (std::size_t m = 0; m < spec.c_n.size(); ++m)
        out.denominator += spec.w_n[m] * spec.c_n[m].dot(ses.b);
    if (!(out.denominator > 0.0) || !std::isfinite(out.denominator))
        throw degenerate_denominator("evaluate_objective: denominator is not positive and finite");
    out.psi = out.numerator / out.denominator;
    out.log_psi = std::log(out.numerator) - std::log(out.denominator);
    return out;
}

}  // namespace ges2n

#endif  // GES2N_OBJECTIVE_HPP
