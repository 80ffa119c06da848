#include "hcir/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hcir/errors.hpp"

namespace hcir {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr long kPairsPerBatch = 4096;

struct BatchSums {
    double sum = 0.0;
    double sum_sq = 0.0;
    long clamped = 0;
    long sub_steps = 0;
};

// One square-root-process state advanced by Euler under the configured
// positivity scheme. Negative excursions are counted for diagnostics.
struct SqrtState {
    double x;

    double advance(double drift_at, double vol, double dw, double dt, McScheme scheme,
                   long& clamped) {
        if (scheme == McScheme::full_truncation) {
            const double xp = std::max(x, 0.0);
            if (x < 0.0) ++clamped;
            x += drift_at * dt + vol * std::sqrt(xp) * dw;
            return std::max(x, 0.0);
        }
        const double xp = std::abs(x);
        x = x + drift_at * dt + vol * std::sqrt(xp) * dw;
        if (x < 0.0) {
            ++clamped;
            x = -x;
        }
        return x;
    }

    double truncated() const { return std::max(x, 0.0); }
};

struct PriceProblem {
    const ModelParams& p;
    const OptionSpec& option;
    double s0, v0, r0;

    double v_drift(double vp, double rp, McDrift mode) const {
        return mode == McDrift::pde_consistent ? rp * vp : p.k * (p.zeta - vp);
    }
    double r_drift(double rp, McDrift mode) const {
        return mode == McDrift::pde_consistent ? p.alpha * (p.beta - rp)
                                               : p.a * (p.b - rp);
    }

    // One path; z receives the n_steps*3 standard normals (sign = +/-1 picks
    // the antithetic leg).
    double payoff_path(const std::vector<double>& z, double sign, double dt,
                       const McConfig& cfg, long& clamped) const {
        double ln_s = std::log(s0);
        SqrtState v{v0}, r{r0};
        double integral = 0.0;
        const double rho_c = std::sqrt(1.0 - p.rho * p.rho);
        for (int n = 0; n < cfg.n_steps; ++n) {
            const double z1 = sign * z[3 * n];
            const double z2 = sign * z[3 * n + 1];
            const double z3 = sign * z[3 * n + 2];
            const double w1 = z1;
            const double w2 = p.rho * z1 + rho_c * z2;
            const double w3 = z3;

            const double vp = v.truncated();
            const double rp = r.truncated();
            ln_s += (rp - 0.5 * vp) * dt + std::sqrt(vp * dt) * w1;
            v.advance(v_drift(vp, rp, cfg.drift), p.sigma, w2 * std::sqrt(dt), dt,
                      cfg.scheme, clamped);
            const double rp_next = r.advance(r_drift(rp, cfg.drift), p.eta,
                                             w3 * std::sqrt(dt), dt, cfg.scheme, clamped);
            integral += 0.5 * (rp + rp_next) * dt;
        }
        return std::exp(-integral) * std::max(std::exp(ln_s) - option.strike, 0.0);
    }
};

struct BondProblem {
    const ModelParams& p;
    double r0;

    double payoff_path(const std::vector<double>& z, double sign, double dt,
                       const McConfig& cfg, long& clamped) const {
        SqrtState r{r0};
        double integral = 0.0;
        const double drift_speed = cfg.drift == McDrift::pde_consistent ? p.alpha : p.a;
        const double drift_level = cfg.drift == McDrift::pde_consistent ? p.beta : p.b;
        for (int n = 0; n < cfg.n_steps; ++n) {
            const double rp = r.truncated();
            const double rp_next =
                r.advance(drift_speed * (drift_level - rp), p.eta,
                          sign * z[n] * std::sqrt(dt), dt, cfg.scheme, clamped);
            integral += 0.5 * (rp + rp_next) * dt;
        }
        return std::exp(-integral);
    }
};

// Antithetic pair means accumulated batch by batch; per-batch substreams make
// the reduction order fixed regardless of scheduling.
template <typename Problem>
McEstimate run(const Problem& problem, double maturity, const McConfig& cfg,
               int normals_per_step) {
    if (cfg.n_paths < 1 || cfg.n_steps < 1) {
        throw ValidationError("NonPositiveParameter", "n_paths/n_steps",
                              "Monte Carlo needs n_paths >= 1 and n_steps >= 1");
    }
    const long n_pairs = (cfg.n_paths + 1) / 2;
    const long n_batches = (n_pairs + kPairsPerBatch - 1) / kPairsPerBatch;
    const double dt = maturity / cfg.n_steps;

    std::vector<BatchSums> batches(n_batches);
    std::vector<double> z(static_cast<std::size_t>(cfg.n_steps) * normals_per_step);
    for (long b = 0; b < n_batches; ++b) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(b))));
        std::normal_distribution<double> normal;
        BatchSums& acc = batches[b];
        const long pairs = std::min(kPairsPerBatch, n_pairs - b * kPairsPerBatch);
        for (long ppp = 0; ppp < pairs; ++ppp) {
            for (double& x : z) x = normal(rng);
            long clamped = 0;
            const double up = problem.payoff_path(z, 1.0, dt, cfg, clamped);
            const double dn = problem.payoff_path(z, -1.0, dt, cfg, clamped);
            const double pair_mean = 0.5 * (up + dn);
            acc.sum += pair_mean;
            acc.sum_sq += pair_mean * pair_mean;
            acc.clamped += clamped;
            acc.sub_steps += 2L * cfg.n_steps * (normals_per_step == 1 ? 1 : 2);
        }
    }

    double sum = 0.0, sum_sq = 0.0;
    long clamped = 0, sub_steps = 0;
    for (const BatchSums& b : batches) {
        sum += b.sum;
        sum_sq += b.sum_sq;
        clamped += b.clamped;
        sub_steps += b.sub_steps;
    }

    McEstimate est;
    est.n_paths = 2 * n_pairs;
    est.price = sum / n_pairs;
    if (n_pairs > 1) {
        const double var =
            std::max(0.0, (sum_sq - n_pairs * est.price * est.price) / (n_pairs - 1));
        est.std_error = std::sqrt(var / n_pairs);
    } else {
        est.std_error = std::numeric_limits<double>::infinity();
    }
    est.clamp_fraction = sub_steps > 0 ? static_cast<double>(clamped) / sub_steps : 0.0;
    return est;
}

}  // namespace

McEstimate simulate_price(const ModelParams& params, const OptionSpec& option, double s0,
                          double v0, double r0, const McConfig& cfg) {
    validate(params);
    validate(option);
    if (!(s0 > 0.0) || !(v0 >= 0.0) || !(r0 >= 0.0)) {
        throw ValidationError("OutOfRange", "s0/v0/r0",
                              "need s0 > 0, v0 >= 0, r0 >= 0");
    }
    if (option.maturity == 0.0) {
        return {payoff(s0, option), 0.0, 0.0, cfg.n_paths};
    }
    PriceProblem problem{params, option, s0, v0, r0};
    return run(problem, option.maturity, cfg, 3);
}

McEstimate simulate_bond(const ModelParams& params, double r0, double maturity,
                         const McConfig& cfg) {
    validate(params);
    if (!(r0 >= 0.0) || !(maturity >= 0.0)) {
        throw ValidationError("OutOfRange", "r0/maturity",
                              "need r0 >= 0 and maturity >= 0");
    }
    if (maturity == 0.0) {
        return {1.0, 0.0, 0.0, cfg.n_paths};
    }
    BondProblem problem{params, r0};
    return run(problem, maturity, cfg, 1);
}

}  // namespace hcir
