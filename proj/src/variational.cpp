#include "plap/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "plap/errors.hpp"
#include "plap/operators.hpp"

namespace plap {

namespace {

constexpr double kTiny = 1e-14;  // positivity clamp for iterates

/// Running sum of exp(log terms), factored by the running maximum so that
/// p-th powers far beyond double range still combine correctly.
class LogSum {
public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term <= max_) {
            sum_ += std::exp(log_term - max_);
        } else {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        }
    }
    bool empty() const { return sum_ == 0.0; }
    double log() const {
        return empty() ? -std::numeric_limits<double>::infinity()
                       : max_ + std::log(sum_);
    }

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

struct LogParts {
    double log_grad, log_bdy, log_vol;
};

void apply_ops(const std::vector<StencilOp>& ops, const std::vector<double>& w,
               std::vector<std::vector<double>>& g) {
    g.resize(ops.size());
    for (std::size_t a = 0; a < ops.size(); ++a) ops[a].apply(w, g[a]);
}

LogParts log_quotient_parts(double p, const Grid& grid, const std::vector<double>& w,
                            const std::vector<std::vector<double>>& g) {
    LogSum grad, bdy, vol;
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = 0;
        for (const auto& comp : g) m2 += comp[i] * comp[i];
        const double vw = grid.volume_weight(i);
        if (vw > 0 && m2 > 0) grad.add(0.5 * p * std::log(m2) + std::log(vw));
        const double aw = std::abs(w[i]);
        if (vw > 0 && aw > 0) vol.add(p * std::log(aw) + std::log(vw));
        const double bw = grid.boundary_weight(i);
        if (bw > 0 && aw > 0) bdy.add(p * std::log(aw) + std::log(bw));
    }
    return {grad.log(), bdy.log(), vol.log()};
}

double quotient_from_logs(double p, double beta, const LogParts& lp) {
    if (lp.log_vol == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("rayleigh_quotient: zero denominator (w vanishes)");
    const double a = std::exp(lp.log_grad - lp.log_vol);
    const double b = std::exp(p * std::log(beta) + lp.log_bdy - lp.log_vol);
    return a - b;
}

double quotient_impl(double p, double beta, const Grid& grid,
                     const std::vector<double>& w, const std::vector<StencilOp>& ops,
                     std::vector<std::vector<double>>& scratch) {
    apply_ops(ops, w, scratch);
    return quotient_from_logs(p, beta, log_quotient_parts(p, grid, w, scratch));
}

void gradient_impl(double p, double beta, const Grid& grid,
                   const std::vector<double>& w, double eps,
                   const std::vector<StencilOp>& ops,
                   std::vector<std::vector<double>>& g, std::vector<double>& out) {
    apply_ops(ops, w, g);
    const LogParts lp = log_quotient_parts(p, grid, w, g);
    const double R = quotient_from_logs(p, beta, lp);
    const double D = std::exp(lp.log_vol);
    const double bp = std::pow(beta, p);

    const std::size_t n = grid.size();
    out.assign(n, 0.0);
    std::vector<double> mag(n), tmp(n);
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = eps * eps;
        for (const auto& comp : g) m2 += comp[i] * comp[i];
        mag[i] = m2 > 0 ? std::pow(m2, 0.5 * (p - 2.0)) : 0.0;
    }
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = p * grid.volume_weight(i) * mag[i] * g[a][i];
        ops[a].apply_transpose_add(tmp, out);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double uq = std::pow(std::abs(w[i]), p - 2.0) * w[i];
        out[i] -= bp * p * grid.boundary_weight(i) * uq;  // -beta^p dB
        out[i] -= R * p * grid.volume_weight(i) * uq;     // -R dD
        out[i] /= D;
    }
}

void boundary_normalize(double p, const Grid& grid, std::vector<double>& w) {
    LogSum bdy;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double bw = grid.boundary_weight(i);
        if (bw > 0 && w[i] != 0)
            bdy.add(p * std::log(std::abs(w[i])) + std::log(bw));
    }
    if (bdy.empty()) throw std::invalid_argument("field vanishes on the boundary");
    const double log_norm = bdy.log() / p;
    for (double& x : w) x = std::max(x * std::exp(-log_norm), kTiny);
}

double euclid_norm(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

QuotientParts quotient_parts(double p, const Grid& grid, const std::vector<double>& w) {
    const auto g = nodal_gradient(grid, w);
    const LogParts lp = log_quotient_parts(p, grid, w, g);
    auto safe_exp = [](double x) {
        return x == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(x);
    };
    return {safe_exp(lp.log_grad), safe_exp(lp.log_bdy), safe_exp(lp.log_vol)};
}

double rayleigh_quotient(double p, double beta, const Grid& grid,
                         const std::vector<double>& w) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
    if (w.size() != grid.size())
        throw std::invalid_argument("field size does not match grid");
    const auto ops = gradient_ops(grid);
    std::vector<std::vector<double>> g;
    return quotient_impl(p, beta, grid, w, ops, g);
}

std::vector<double> quotient_gradient(double p, double beta, const Grid& grid,
                                      const std::vector<double>& w, double eps) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    if (w.size() != grid.size())
        throw std::invalid_argument("field size does not match grid");
    const auto ops = gradient_ops(grid);
    std::vector<std::vector<double>> g;
    std::vector<double> out;
    gradient_impl(p, beta, grid, w, eps, ops, g, out);
    return out;
}

EigenPair minimize(double p, double beta, const std::shared_ptr<const Grid>& grid,
                   const std::optional<ScalarField>& init, const MinimizeOptions& opts) {
    if (!(p > 1)) throw std::invalid_argument("p must be > 1");
    if (!(beta > 0)) throw std::invalid_argument("beta must be positive");

    std::vector<double> w;
    if (init) {
        if (init->grid.get() != grid.get())
            throw std::invalid_argument("init field is attached to a different grid");
        for (double v : init->values)
            if (!(v > 0)) throw std::invalid_argument("init field must be positive");
        w = init->values;
    } else {
        const ScalarField d = distance_field(grid);
        w.resize(grid->size());
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(-beta * d[i]);
    }
    boundary_normalize(p, *grid, w);

    const auto ops = gradient_ops(*grid);
    std::vector<std::vector<double>> scratch;
    const double eps = 1e-10;
    double R = quotient_impl(p, beta, *grid, w, ops, scratch);
    std::vector<double> hist{R};
    std::vector<double> grad;
    gradient_impl(p, beta, *grid, w, eps, ops, scratch, grad);
    std::vector<double> w_prev, g_prev, cand(w.size());
    double t = 1.0 / std::max(euclid_norm(grad), 1e-30);
    double gnorm = euclid_norm(grad);
    int it = 0;
    bool converged = false;

    for (it = 0; it < opts.max_iters; ++it) {
        gnorm = euclid_norm(grad);
        if (gnorm <= opts.tolerance) {
            converged = true;
            break;
        }
        if (!w_prev.empty()) {
            // Barzilai-Borwein trial step. The quotient is 0-homogeneous and the
            // iterates are renormalized each step, so the secant differences are
            // projected orthogonal to w to strip the rescaling component.
            double ww = 0, dww = 0, dgw = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                ww += w[i] * w[i];
                dww += (w[i] - w_prev[i]) * w[i];
                dgw += (grad[i] - g_prev[i]) * w[i];
            }
            double num = 0, den = 0;
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double dw = (w[i] - w_prev[i]) - dww / ww * w[i];
                const double dg = (grad[i] - g_prev[i]) - dgw / ww * w[i];
                num += dw * dw;
                den += dw * dg;
            }
            if (den > 0 && num > 0) t = num / den;
        }
        bool accepted = false;
        double tt = t;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < w.size(); ++i)
                cand[i] = std::max(w[i] - tt * grad[i], kTiny);
            boundary_normalize(p, *grid, cand);
            const double Rc = quotient_impl(p, beta, *grid, cand, ops, scratch);
            if (Rc < R) {
                w_prev = w;
                g_prev = grad;
                w.swap(cand);
                R = Rc;
                accepted = true;
                break;
            }
            tt *= 0.5;
        }
        hist.push_back(R);
        if (!accepted) {
            converged = true;  // no descent possible at float resolution
            break;
        }
        gradient_impl(p, beta, *grid, w, eps, ops, scratch, grad);
        const int span = opts.plateau_span;
        if (static_cast<int>(hist.size()) > span &&
            std::abs(hist[hist.size() - 1] - hist[hist.size() - 1 - span]) <=
                opts.plateau_rel * std::abs(hist.back())) {
            converged = true;
            break;
        }
    }
    gnorm = euclid_norm(grad);
    if (!converged && opts.throw_on_max_iters) {
        std::ostringstream os;
        os << "minimize did not converge in " << opts.max_iters
           << " iterations (quotient " << R << ", gradient norm " << gnorm << ")";
        throw ConvergenceError(os.str(), R, gnorm);
    }

    EigenPair pair;
    pair.lambda = quotient_impl(p, beta, *grid, w, ops, scratch);
    pair.p = p;
    pair.beta = beta;
    pair.u = ScalarField(grid);
    pair.u.values = std::move(w);
    pair.diagnostics.iterations = it;
    pair.diagnostics.final_gradient_norm = gnorm;
    pair.diagnostics.quotient_history_length = static_cast<int>(hist.size());
    return pair;
}

EigenPair solve_variational(double p, double beta,
                            const std::shared_ptr<const Grid>& grid,
                            const MinimizeOptions& opts) {
    std::vector<double> ladder;
    if (p < 2.0) {
        ladder = {p};
    } else {
        double q = 2.0;
        while (q < p) {
            ladder.push_back(q);
            q *= 1.5;
        }
        ladder.push_back(p);
    }

    std::optional<ScalarField> warm;
    EigenPair pair;
    for (double pk : ladder) {
        pair = minimize(pk, beta, grid, warm, opts);
        warm = pair.u;
    }
    return pair;
}

double euler_lagrange_residual(const EigenPair& pair, const Grid& grid) {
    const std::vector<double>& u = pair.u.values;
    if (u.size() != grid.size())
        throw std::invalid_argument("field size does not match grid");
    const double p = pair.p;
    const double bp = std::pow(pair.beta, p);
    const auto ops = gradient_ops(grid);
    std::vector<std::vector<double>> g;
    apply_ops(ops, u, g);

    const std::size_t n = grid.size();
    std::vector<double> r(n, 0.0), tmp(n);
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            double m2 = 0;
            for (const auto& comp : g) m2 += comp[i] * comp[i];
            const double mag = m2 > 0 ? std::pow(m2, 0.5 * (p - 2.0)) : 0.0;
            tmp[i] = grid.volume_weight(i) * mag * g[a][i];
        }
        ops[a].apply_transpose_add(tmp, r);
    }
    double mass = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double uq = std::pow(std::abs(u[i]), p - 2.0) * u[i];
        r[i] -= pair.lambda * grid.volume_weight(i) * uq;
        r[i] -= bp * grid.boundary_weight(i) * uq;
        mass += grid.volume_weight(i) * std::pow(std::abs(u[i]), p);
    }
    double worst = 0;
    for (double x : r) worst = std::max(worst, std::abs(x));
    return worst / mass;
}

}  // namespace plap
