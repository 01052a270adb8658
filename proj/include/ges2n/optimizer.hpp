#ifndef GES2N_OPTIMIZER_HPP
#define GES2N_OPTIMIZER_HPP

// Polak-Ribiere+ conjugate gradient minimization of -ln psi(h/||h||; x) with
// a backtracking line search.  The first trial step of each search is refined
// by one quadratic interpolation through (f(0), f'(0), f(t0)), which makes
// the search exact on quadratics, then Armijo sufficient decrease is enforced
// by halving.  The solver itself is objective-agnostic; minimize() binds it
// to the GES2N pipeline.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ges2n/gradient.hpp"
#include "ges2n/lpc.hpp"
#include "ges2n/objective.hpp"
#include "ges2n/rng.hpp"
#include "ges2n/signal_model.hpp"
#include "ges2n/vs_spectrum.hpp"

namespace ges2n {

enum class init_strategy { lpc, impulse, random };

struct optimizer_config {
    double tol = 1e-12;
    std::size_t max_iter = 1500;
    std::size_t filter_length = 256;
    init_strategy init = init_strategy::lpc;
    std::uint64_t seed = 0;

    double ls_initial_step = 0.0;        // <= 0: adaptive (1/||grad||_inf, then doubled carry-over)
    double ls_contraction = 0.5;
    double ls_sufficient_decrease = 1e-4;
    double ls_min_step = 1e-18;
    std::size_t restart_every = 0;       // 0: restart every D iterations
};

enum class opt_status { converged, max_iter, degenerate };

inline const char* to_string(opt_status s) {
    switch (s) {
        case opt_status::converged: return "converged";
        case opt_status::max_iter: return "max_iter";
        case opt_status::degenerate: return "degenerate";
    }
    return "?";
}

struct trace_entry {
    std::size_t iteration = 0;
    double objective = 0.0;   // -ln psi
    double grad_norm = 0.0;   // infinity norm
    double step = 0.0;        // accepted line-search step (0 for the initial entry)
};

struct optimization_trace {
    std::vector<trace_entry> iterates;
    filter_state final;
    opt_status status = opt_status::max_iter;
    std::vector<std::size_t> switch_events;  // iterations where C_s^max changed bins
    std::size_t evaluations = 0;
};

namespace detail {

inline double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

}  // namespace detail

// Objective-agnostic CG driver (the test seam: any smooth objective works).
// on_accept fires right after an iterate is accepted, with no objective
// evaluations in between, so callers can inspect state tied to the most
// recent evaluation.
inline optimization_trace cg_minimize(const objective_evaluator& fn,
                                      std::vector<double> h0,
                                      const optimizer_config& cfg,
                                      const std::function<void(std::size_t)>& on_accept = {}) {
    if (!(cfg.tol > 0.0))
        throw std::invalid_argument("cg_minimize: tol must be positive");
    if (h0.size() < 2)
        throw std::invalid_argument("cg_minimize: dimension must be >= 2");
    const std::size_t dim = h0.size();
    const std::size_t restart = cfg.restart_every ? cfg.restart_every : dim;

    optimization_trace trace;
    std::vector<double> h = std::move(h0);

    auto eval = [&](std::span<const double> point) {
        ++trace.evaluations;
        return fn(point);
    };

    objective_eval cur;
    try {
        cur = eval(h);
    } catch (const degenerate_denominator&) {
        trace.status = opt_status::degenerate;
        trace.final = normalize_filter(h);
        return trace;
    }
    trace.iterates.push_back({0, cur.value, detail::inf_norm(cur.gradient), 0.0});
    if (on_accept) on_accept(0);

    std::vector<double> dir(dim);
    for (std::size_t i = 0; i < dim; ++i) dir[i] = -cur.gradient[i];
    double carry_step = 0.0;

    trace.status = opt_status::max_iter;
    std::vector<double> trial(dim);

    for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
        double slope = 0.0;
        for (std::size_t i = 0; i < dim; ++i) slope += cur.gradient[i] * dir[i];
        if (!(slope < 0.0)) {
            // not a descent direction: fall back to steepest descent
            for (std::size_t i = 0; i < dim; ++i) dir[i] = -cur.gradient[i];
            slope = 0.0;
            for (std::size_t i = 0; i < dim; ++i) slope += cur.gradient[i] * dir[i];
            if (!(slope < 0.0)) {
                trace.status = opt_status::converged;  // zero gradient
                break;
            }
        }

        double t0 = carry_step;
        if (!(t0 > 0.0)) {
            const double gmax = detail::inf_norm(cur.gradient);
            t0 = cfg.ls_initial_step > 0.0 ? cfg.ls_initial_step
                                           : std::min(1.0, 1.0 / std::max(gmax, 1e-30));
        }

        auto try_point = [&](double t) -> objective_eval {
            for (std::size_t i = 0; i < dim; ++i) trial[i] = h[i] + t * dir[i];
            return eval(trial);
        };

        bool degenerate_seen = false;
        double f_t0 = std::numeric_limits<double>::infinity();
        try {
            f_t0 = try_point(t0).value;
        } catch (const degenerate_denominator&) {
            degenerate_seen = true;
        }

        // quadratic fit through f(0), f'(0), f(t0); exact for quadratics
        double t = t0;
        if (!degenerate_seen && std::isfinite(f_t0)) {
            const double curvature = (f_t0 - cur.value - slope * t0) / (t0 * t0);
            if (curvature > 0.0) {
                const double t_star = -slope / (2.0 * curvature);
                if (t_star > 0.0 && t_star <= 1e6 * t0) t = t_star;
            } else {
                t = 2.0 * t0;  // curving down, be greedier
            }
        }

        objective_eval cand;
        bool accepted = false;
        while (t >= cfg.ls_min_step) {
            bool ok = true;
            try {
                cand = try_point(t);
            } catch (const degenerate_denominator&) {
                ok = false;
            }
            if (ok && std::isfinite(cand.value) &&
                cand.value <= cur.value + cfg.ls_sufficient_decrease * t * slope) {
                accepted = true;
                break;
            }
            t *= cfg.ls_contraction;
        }
        if (!accepted) {
            trace.status = opt_status::degenerate;
            break;
        }

        for (std::size_t i = 0; i < dim; ++i) trial[i] = h[i] + t * dir[i];
        const double f_prev = cur.value;
        std::vector<double> g_prev = cur.gradient;
        h = trial;
        cur = cand;
        carry_step = 2.0 * t;
        trace.iterates.push_back({it, cur.value, detail::inf_norm(cur.gradient), t});
        if (on_accept) on_accept(it);

        if (detail::inf_norm(cur.gradient) < cfg.tol * std::max(1.0, std::abs(cur.value)) ||
            std::abs(f_prev - cur.value) < cfg.tol * std::max(1.0, std::abs(f_prev))) {
            trace.status = opt_status::converged;
            break;
        }

        // Polak-Ribiere+ with periodic restart
        double gg = 0.0, gy = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            gg += g_prev[i] * g_prev[i];
            gy += cur.gradient[i] * (cur.gradient[i] - g_prev[i]);
        }
        double beta = gg > 0.0 ? std::max(0.0, gy / gg) : 0.0;
        if (it % restart == 0) beta = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dir[i] = -cur.gradient[i] + beta * dir[i];
    }

    trace.final = normalize_filter(h);
    return trace;
}

inline std::vector<double> initial_filter(std::span<const double> x,
                                          const optimizer_config& cfg) {
    std::vector<double> h0(cfg.filter_length, 0.0);
    switch (cfg.init) {
        case init_strategy::lpc:
            return lpc_init(x, cfg.filter_length);
        case init_strategy::impulse:
            h0[0] = 1.0;
            return h0;
        case init_strategy::random: {
            random_stream rng(cfg.seed);
            for (auto& e : h0) e = rng.gaussian();
            return h0;
        }
    }
    throw std::logic_error("initial_filter: unreachable");
}

// GES2N objective bound to a measurement; grid defaults to the order-tracked
// resolution with alpha_max = (n_h + 1) alpha_c when no grid is supplied.
struct bound_objective {
    std::span<const double> x;
    std::span<const double> omega;
    std::span<const double> theta;
    double fs = 0.0;
    cyclic_grid grid;
    weighting_spec weighting;

    // tracks max-mode bin choices so minimize() can record switch events
    mutable std::vector<std::size_t> last_max_bins;

    objective_eval operator()(std::span<const double> h) const {
        const filter_state st = normalize_filter({h.begin(), h.end()});
        const filtered_signal y = fir_filter(x, st.g);
        const ses_result ses = squared_envelope_spectrum(y, omega, theta, fs, grid);
        const objective_value val = evaluate_objective(ses, weighting);
        if (weighting.data_dependent) {
            const auto rows = process_numerator(weighting.c_s_base, ses.b, numerator_mode::max);
            last_max_bins.clear();
            for (const auto& r : rows) last_max_bins.push_back(r.idx.front());
        }
        const std::vector<double> grad_g =
            grad_log_psi_wrt_g(x, st.g, omega, theta, fs, weighting, ses);
        std::vector<double> grad_h = grad_log_psi_wrt_h(st.h, grad_g);
        for (auto& e : grad_h) e = -e;
        return {-val.log_psi, std::move(grad_h)};
    }
};

inline optimization_trace minimize(std::span<const double> x,
                                   std::span<const double> omega,
                                   std::span<const double> theta,
                                   double fs,
                                   const variant_config& variant,
                                   const band_spec& bands,
                                   const optimizer_config& cfg,
                                   const cyclic_grid* grid_override = nullptr) {
    if (x.size() <= cfg.filter_length + 1)
        throw std::invalid_argument("minimize: signal too short for the configured filter length");
    const std::size_t l_y = x.size() - cfg.filter_length - 1;

    bound_objective obj;
    obj.x = x;
    obj.omega = omega;
    obj.theta = theta;
    obj.fs = fs;
    if (grid_override) {
        obj.grid = *grid_override;
    } else {
        const double dalpha = 2.0 * 3.14159265358979323846 / theta[l_y - 1];
        const double alpha_max = (static_cast<double>(bands.n_h) + 1.0) * bands.alpha_c;
        obj.grid = build_grid(dalpha, alpha_max);
    }
    obj.weighting = build_weighting(bands, variant, obj.grid);

    std::vector<double> h0 = initial_filter(x, cfg);

    if (cfg.max_iter == 0) {
        optimization_trace trace;
        trace.status = opt_status::max_iter;
        trace.final = normalize_filter(std::move(h0));
        return trace;
    }

    objective_evaluator wrapped = [&obj](std::span<const double> h) { return obj(h); };

    std::vector<std::size_t> accepted_bins;
    std::vector<std::size_t> switches;
    std::function<void(std::size_t)> on_accept;
    if (obj.weighting.data_dependent) {
        on_accept = [&](std::size_t it) {
            if (!accepted_bins.empty() && obj.last_max_bins != accepted_bins)
                switches.push_back(it);
            accepted_bins = obj.last_max_bins;
        };
    }

    optimization_trace trace = cg_minimize(wrapped, std::move(h0), cfg, on_accept);
    trace.switch_events = std::move(switches);
    return trace;
}

}  // namespace ges2n

#endif  // GES2N_OPTIMIZER_HPP
