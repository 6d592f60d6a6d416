#include "ornstein/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "ornstein/error.hpp"
#include "ornstein/rng.hpp"

namespace ornstein {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double exact_power(double t, double p) {
    return p == 1.0 ? std::abs(t) : std::pow(std::abs(t), p);
}

// Smoothed companion of |t|^p: the Huber function for p = 1, otherwise
// (t^2 + mu^2)^{p/2} - mu^p. Both match |t|^p as mu -> 0 and have curvature
// bounded by a multiple of mu^{p-2}.
double smooth_power(double t, double p, double mu) {
    if (p == 1.0) {
        const double a = std::abs(t);
        return a <= mu ? 0.5 * t * t / mu : a - 0.5 * mu;
    }
    return std::pow(t * t + mu * mu, 0.5 * p) - std::pow(mu, p);
}

double smooth_power_deriv(double t, double p, double mu) {
    if (p == 1.0) return std::clamp(t / mu, -1.0, 1.0);
    return p * t * std::pow(t * t + mu * mu, 0.5 * p - 1.0);
}

// Worst-case gap |smooth_power - |t|^p| for one term.
double smoothing_bias(double p, double mu) {
    return p == 1.0 ? 0.5 * mu : std::pow(mu, p);
}

// Both search modes in one record; `ratio` flips the orientation so the
// engine always minimizes.
struct Problem {
    const GradientSpace* space = nullptr;
    std::vector<std::vector<double>> rows; // functional coefficients on cells
    std::vector<double> e;                 // background point of E; empty = 0
    double c = 1.0;                        // weight on functional 0 (Bellman)
    double p = 1.0;
    bool ratio = false;
    int order = 4;
};

struct Evaluation {
    double exact = kInf;  // minimized orientation: Bellman mean or -R
    double smooth = kInf;
    double exact_num = 0.0; // ratio mode: exact numerator and denominator
    double exact_den = 0.0;
    bool degenerate = false;
};

// Holds the per-grid scratch (functional values at every point) so one
// evaluation costs two stencil sweeps per cell and no allocations besides
// the derivative buffers.
class Engine {
public:
    Engine(const Problem& pb, std::vector<int> grid)
        : pb_(pb), grid_(std::move(grid)),
          box_(margin_box(grid_, support_margin(*pb.space, pb.order))) {
        points_ = 1;
        for (int n : grid_) points_ *= static_cast<std::size_t>(n);
        t_.assign(pb_.rows.size(), std::vector<double>(points_, 0.0));
    }

    const SupportBox& box() const { return box_; }
    std::size_t points() const { return points_; }

    Evaluation eval(const ScalarField& x, double mu, ScalarField& grad) {
        functionals_at(x);
        const std::size_t ell = pb_.rows.size();
        std::vector<double> mean_exact(ell, 0.0), mean_smooth(ell, 0.0);
        for (std::size_t j = 0; j < ell; ++j) {
            double se = 0.0, ss = 0.0;
            for (double t : t_[j]) {
                se += exact_power(t, pb_.p);
                ss += smooth_power(t, pb_.p, mu);
            }
            mean_exact[j] = se / static_cast<double>(points_);
            mean_smooth[j] = ss / static_cast<double>(points_);
        }

        Evaluation ev;
        std::vector<double> mult(ell, 0.0); // d(objective)/d(mean of h(t_j))
        if (pb_.ratio) {
            double den_e = 0.0, den_s = 0.0;
            for (std::size_t j = 1; j < ell; ++j) {
                den_e += mean_exact[j];
                den_s += mean_smooth[j];
            }
            if (den_e <= 0.0 || den_s <= 0.0) {
                ev.degenerate = true;
                return ev;
            }
            ev.exact = -mean_exact[0] / den_e;
            ev.smooth = -mean_smooth[0] / den_s;
            ev.exact_num = mean_exact[0];
            ev.exact_den = den_e;
            mult[0] = -1.0 / den_s;
            for (std::size_t j = 1; j < ell; ++j)
                mult[j] = mean_smooth[0] / (den_s * den_s);
        } else {
            double ve = -pb_.c * mean_exact[0], vs = -pb_.c * mean_smooth[0];
            for (std::size_t j = 1; j < ell; ++j) {
                ve += mean_exact[j];
                vs += mean_smooth[j];
            }
            ev.exact = ve;
            ev.smooth = vs;
            mult[0] = -pb_.c;
            for (std::size_t j = 1; j < ell; ++j) mult[j] = 1.0;
        }

        // Chain rule through t_j = sum_a c[j][a] (e_a + (D_a x)): one weight
        // field per cell, pushed back through the adjoint stencil.
        grad.sizes = grid_;
        grad.data.assign(points_, 0.0);
        grad.support = box_;
        ScalarField w;
        w.sizes = grid_;
        const int cells = pb_.space->cell_count();
        for (int a = 0; a < cells; ++a) {
            w.data.assign(points_, 0.0);
            bool touched = false;
            for (std::size_t j = 0; j < ell; ++j) {
                const double f = mult[j] * pb_.rows[j][a] / static_cast<double>(points_);
                if (f == 0.0) continue;
                touched = true;
                const auto& tj = t_[j];
                for (std::size_t i = 0; i < points_; ++i)
                    w.data[i] += f * smooth_power_deriv(tj[i], pb_.p, mu);
            }
            if (!touched) continue;
            const ScalarField adj = derivative_adjoint(w, pb_.space->cells[a], pb_.order);
            for (std::size_t i = 0; i < points_; ++i) grad.data[i] += adj.data[i];
        }
        grad.enforce_support();
        return ev;
    }

    // Median magnitude of the functionals at x; the smoothing scale mu0 and
    // the step lengths derive from it, which keeps the whole schedule
    // covariant under a joint rescaling of (e, x).
    double typical_scale(const ScalarField& x) {
        functionals_at(x);
        std::vector<double> mags;
        mags.reserve(t_.size() * points_);
        for (const auto& tj : t_)
            for (double t : tj) mags.push_back(std::abs(t));
        auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
        std::nth_element(mags.begin(), mid, mags.end());
        if (*mid > 0.0) return *mid;
        return *std::max_element(mags.begin(), mags.end());
    }

private:
    void functionals_at(const ScalarField& x) {
        const EField g = apply_generalized_gradient(*pb_.space, x, pb_.order);
        const int cells = pb_.space->cell_count();
        for (std::size_t j = 0; j < pb_.rows.size(); ++j) {
            auto& tj = t_[j];
            std::fill(tj.begin(), tj.end(), 0.0);
            for (int a = 0; a < cells; ++a) {
                const double cja = pb_.rows[j][a];
                if (cja == 0.0) continue;
                const double base = pb_.e.empty() ? 0.0 : pb_.e[a];
                const auto& ga = g.comps[a];
                for (std::size_t i = 0; i < points_; ++i) tj[i] += cja * (base + ga[i]);
            }
        }
    }

    const Problem& pb_;
    std::vector<int> grid_;
    SupportBox box_;
    std::size_t points_ = 0;
    std::vector<std::vector<double>> t_;
};

// Sup-norm amplification of the functionals by the discrete operators; used
// only to pick the initial step length, so a crude bound is enough.
double operator_gain(const Problem& pb, const std::vector<int>& grid) {
    double worst = 0.0;
    for (const auto& row : pb.rows) {
        double g = 0.0;
        for (int a = 0; a < pb.space->cell_count(); ++a) {
            if (row[a] == 0.0) continue;
            const MultiIndex& alpha = pb.space->cells[a];
            double amp = 1.0;
            for (std::size_t i = 0; i < alpha.size(); ++i) {
                double l1 = 0.0;
                for (double wgt : stencil_weights(alpha[i], pb.order)) l1 += std::abs(wgt);
                amp *= l1 * std::pow(static_cast<double>(grid[i]), alpha[i]);
            }
            g += std::abs(row[a]) * amp;
        }
        worst = std::max(worst, g);
    }
    return worst > 0.0 ? worst : 1.0;
}

// Periodic [1,2,1]/4 blur along every axis; turns white noise into a field
// whose derivatives do not swamp the functional statistics.
void blur_once(ScalarField& x) {
    const int d = x.dim();
    std::vector<double> line;
    for (int axis = 0; axis < d; ++axis) {
        const int n = x.sizes[axis];
        std::size_t stride = 1;
        for (int i = axis + 1; i < d; ++i) stride *= static_cast<std::size_t>(x.sizes[i]);
        const std::size_t block = stride * static_cast<std::size_t>(n);
        line.assign(static_cast<std::size_t>(n), 0.0);
        for (std::size_t base = 0; base < x.data.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (int i = 0; i < n; ++i)
                    line[static_cast<std::size_t>(i)] =
                        x.data[base + off + static_cast<std::size_t>(i) * stride];
                for (int i = 0; i < n; ++i) {
                    const double lft = line[static_cast<std::size_t>((i + n - 1) % n)];
                    const double rgt = line[static_cast<std::size_t>((i + 1) % n)];
                    x.data[base + off + static_cast<std::size_t>(i) * stride] =
                        0.25 * lft + 0.5 * line[static_cast<std::size_t>(i)] + 0.25 * rgt;
                }
            }
        }
    }
}

ScalarField noise_start(const std::vector<int>& grid, const SupportBox& box,
                        SplitMix64 rng, double scale) {
    ScalarField x = ScalarField::zeros(grid);
    for (double& v : x.data) v = scale * rng.next_normal();
    x.support = box;
    x.enforce_support();
    blur_once(x);
    blur_once(x);
    x.enforce_support();
    return x;
}

void renormalize(const Problem& pb, ScalarField& x) {
    x.enforce_support();
    if (!pb.ratio) return;
    const double r = field_rms(x);
    if (r > 0.0) {
        for (double& v : x.data) v /= r;
    }
}

struct RunResult {
    ScalarField best;
    double best_exact = kInf; // engine orientation
    double best_num = 0.0, best_den = 0.0;
    double tail = 0.0;     // improvement over the final stage
    double final_mu = 0.0; // smoothing left at the end
    std::vector<TracePoint> trace;
    int evals = 0;
    bool valid = false;
};

RunResult run_descent(const Problem& pb, Engine& eng, ScalarField x,
                      const OptimizeOptions& opt, SplitMix64 rng) {
    RunResult out;
    x.support = eng.box();
    renormalize(pb, x);

    ScalarField g;
    const double scale0 = eng.typical_scale(x);
    if (scale0 <= 0.0) {
        // Functionals vanish identically at the start; nothing to descend.
        const Evaluation ev = eng.eval(x, 1.0, g);
        out.evals = 1;
        if (!ev.degenerate) {
            out.valid = true;
            out.best = std::move(x);
            out.best_exact = ev.exact;
            out.best_num = ev.exact_num;
            out.best_den = ev.exact_den;
            out.trace.push_back({1, pb.ratio ? -ev.exact : ev.exact});
        }
        return out;
    }

    const double mu0 = opt.mu_factor * scale0;
    const double gain = operator_gain(pb, g.sizes.empty() ? x.sizes : g.sizes);
    const int stages = std::max(1, opt.stages);
    const int per_stage = std::max(1, opt.iterations / stages);
    const double beta = 0.9;

    ScalarField v = ScalarField::zeros(x.sizes);
    auto take = [&](const Evaluation& ev) {
        if (ev.degenerate || !(ev.exact < out.best_exact)) return false;
        out.best_exact = ev.exact;
        out.best_num = ev.exact_num;
        out.best_den = ev.exact_den;
        out.best = x;
        out.valid = true;
        return true;
    };
    auto record = [&](bool improved) {
        if (!out.valid) return;
        if (improved || out.evals % std::max(1, opt.trace_stride) == 0)
            out.trace.push_back({out.evals, pb.ratio ? -out.best_exact : out.best_exact});
    };

    double best_before_last = kInf;
    for (int m = 0; m < stages; ++m) {
        const double mu = mu0 * std::pow(2.0, -m);
        if (m == stages - 1) best_before_last = out.best_exact;
        out.final_mu = mu;

        const double eta0 = 0.5 * mu / gain;
        double eta = eta0;
        std::fill(v.data.begin(), v.data.end(), 0.0);

        Evaluation ev = eng.eval(x, mu, g);
        ++out.evals;
        for (int retry = 0; ev.degenerate && retry < 5; ++retry) {
            x = noise_start(x.sizes, eng.box(), rng.fork(77 + retry), 1.0);
            renormalize(pb, x);
            ev = eng.eval(x, mu, g);
            ++out.evals;
        }
        if (ev.degenerate) return out;
        record(take(ev));

        double prev_smooth = ev.smooth;
        int streak = 0, fails = 0;
        for (int it = 0; it < per_stage; ++it) {
            const double grms = field_rms(g);
            if (grms <= 0.0) break;
            for (std::size_t i = 0; i < x.data.size(); ++i) {
                v.data[i] = beta * v.data[i] - eta * g.data[i] / grms;
                x.data[i] += v.data[i];
            }
            renormalize(pb, x);

            ev = eng.eval(x, mu, g);
            ++out.evals;
            if (ev.degenerate) {
                x = out.valid ? out.best : noise_start(x.sizes, eng.box(), rng.fork(900 + it), 1.0);
                renormalize(pb, x);
                std::fill(v.data.begin(), v.data.end(), 0.0);
                eta *= 0.5;
                ev = eng.eval(x, mu, g);
                ++out.evals;
                if (ev.degenerate) break;
            }
            record(take(ev));

            if (ev.smooth <= prev_smooth + 1e-12 * (1.0 + std::abs(prev_smooth))) {
                fails = 0;
                if (++streak >= 5) {
                    streak = 0;
                    eta = std::min(eta * 1.5, eta0 * 1024.0);
                }
            } else {
                streak = 0;
                if (++fails >= 2) {
                    fails = 0;
                    eta *= 0.5;
                    std::fill(v.data.begin(), v.data.end(), 0.0);
                    if (eta < eta0 * 0x1p-40) break;
                }
            }
            prev_smooth = ev.smooth;
        }
    }
    if (out.valid) {
        out.trace.push_back({out.evals, pb.ratio ? -out.best_exact : out.best_exact});
        out.tail = std::max(0.0, best_before_last - out.best_exact);
    }
    return out;
}

FieldEstimate search(const Problem& pb, const std::vector<int>& grid,
                     const OptimizeOptions& opt, const ScalarField* warm) {
    Engine probe(pb, grid);
    const SupportBox box = probe.box();

    // Covariant noise amplitude: background magnitude over operator gain, so
    // the initial functional perturbations match the background's.
    double noise_scale = 1.0;
    if (!pb.ratio) {
        double s2 = 0.0;
        for (double ei : pb.e) s2 += ei * ei;
        const double erms = std::sqrt(s2 / static_cast<double>(pb.e.size()));
        noise_scale = erms > 0.0 ? erms / operator_gain(pb, grid) : 0.0;
    }

    std::vector<ScalarField> starts;
    if (warm) {
        ScalarField w = warm->sizes == grid ? *warm : resample(*warm, grid);
        w.support = box;
        w.enforce_support();
        starts.push_back(std::move(w));
    } else if (pb.ratio) {
        starts.push_back(noise_start(grid, box, SplitMix64(opt.seed).fork(0), 1.0));
    } else {
        starts.push_back(ScalarField::zeros(grid));
        starts.back().support = box;
    }
    for (int r = 0; r < std::max(0, opt.restarts); ++r) {
        const double s = pb.ratio ? 1.0 : noise_scale;
        if (s <= 0.0) break; // zero background: extra noise starts are moot
        starts.push_back(noise_start(grid, box, SplitMix64(opt.seed).fork(1 + r), s));
    }

    const int nstarts = static_cast<int>(starts.size());
    std::vector<RunResult> runs(static_cast<std::size_t>(nstarts));
    auto work = [&](int i) {
        Engine eng(pb, grid);
        runs[static_cast<std::size_t>(i)] =
            run_descent(pb, eng, std::move(starts[static_cast<std::size_t>(i)]), opt,
                        SplitMix64(opt.seed).fork(0x100 + static_cast<std::uint64_t>(i)));
    };
    const int nthreads = std::min(std::max(1, opt.threads), nstarts);
    if (nthreads <= 1) {
        for (int i = 0; i < nstarts; ++i) work(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < nstarts; i = next.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    }

    int winner = -1, total_evals = 0;
    for (int i = 0; i < nstarts; ++i) {
        total_evals += runs[static_cast<std::size_t>(i)].evals;
        if (!runs[static_cast<std::size_t>(i)].valid) continue;
        if (winner < 0 ||
            runs[static_cast<std::size_t>(i)].best_exact < runs[static_cast<std::size_t>(winner)].best_exact)
            winner = i;
    }
    if (winner < 0) throw NumericError("optimization failed: every start was degenerate");
    RunResult& win = runs[static_cast<std::size_t>(winner)];

    FieldEstimate est;
    est.witness = std::move(win.best);
    est.value = pb.ratio ? -win.best_exact : win.best_exact;
    est.iterations = total_evals;
    est.trace = std::move(win.trace);

    const std::size_t ell = pb.rows.size();
    const double bias = smoothing_bias(pb.p, win.final_mu);
    if (pb.ratio) {
        const double den = win.best_den;
        est.gap = win.tail + (den > 0.0
                                  ? bias * (1.0 + est.value * static_cast<double>(ell - 1)) / den
                                  : 0.0);
    } else {
        est.gap = win.tail + bias * (static_cast<double>(ell - 1) + pb.c);
    }
    return est;
}

} // namespace

FieldEstimate bellman_upper(const VFunction& vf, const std::vector<double>& e,
                            const std::vector<int>& grid, const OptimizeOptions& opt,
                            const ScalarField* warm) {
    if (static_cast<int>(e.size()) != vf.cell_count())
        throw DomainError("background point has the wrong number of coordinates");
    Problem pb;
    pb.space = &vf.space;
    pb.rows = vf.functionals;
    pb.e = e;
    pb.c = vf.c;
    pb.p = vf.p;
    pb.ratio = false;
    pb.order = opt.order;
    return search(pb, grid, opt, warm);
}

FieldEstimate maximize_ratio(const GradientSpace& space, const std::vector<int>& grid,
                             const OptimizeOptions& opt, double p,
                             const ScalarField* warm) {
    if (space.functional_count() < 2)
        throw DomainError("ratio needs at least two functionals");
    if (p < 1.0) throw DomainError("exponent must be at least 1");
    Problem pb;
    pb.space = &space;
    pb.rows = space.functionals_double();
    pb.c = 0.0;
    pb.p = p;
    pb.ratio = true;
    pb.order = opt.order;
    return search(pb, grid, opt, warm);
}

double ratio_value(const GradientSpace& space, const ScalarField& f, double p, int order) {
    if (space.functional_count() < 2)
        throw DomainError("ratio needs at least two functionals");
    const EField g = apply_generalized_gradient(space, f, order);
    const auto rows = space.functionals_double();
    const std::size_t pts = f.point_count();
    double num = 0.0, den = 0.0;
    std::vector<double> t(pts);
    for (std::size_t j = 0; j < rows.size(); ++j) {
        std::fill(t.begin(), t.end(), 0.0);
        for (int a = 0; a < space.cell_count(); ++a) {
            if (rows[j][a] == 0.0) continue;
            for (std::size_t i = 0; i < pts; ++i) t[i] += rows[j][a] * g.comps[a][i];
        }
        double s = 0.0;
        for (double ti : t) s += exact_power(ti, p);
        (j == 0 ? num : den) += s / static_cast<double>(pts);
    }
    if (den <= 0.0) {
        if (num <= 0.0) throw NumericError("ratio undefined: the field is annihilated");
        return kInf;
    }
    return num / den;
}

std::vector<FieldEstimate> ratio_over_grids(const GradientSpace& space,
                                            const std::vector<std::vector<int>>& schedule,
                                            const OptimizeOptions& opt, double p) {
    std::vector<FieldEstimate> out;
    out.reserve(schedule.size());
    for (std::size_t level = 0; level < schedule.size(); ++level) {
        const auto& grid = schedule[level];
        OptimizeOptions fresh = opt;
        fresh.seed = opt.seed + 1000 * level;
        if (level == 0) {
            out.push_back(maximize_ratio(space, grid, fresh, p));
            continue;
        }
        // Warm continuation of the previous witness vs a fresh search; keep
        // whichever lands higher.
        ScalarField lifted = resample(out.back().witness, grid);
        OptimizeOptions cont = fresh;
        cont.restarts = 0;
        FieldEstimate warm_run = maximize_ratio(space, grid, cont, p, &lifted);
        FieldEstimate fresh_run = maximize_ratio(space, grid, fresh, p);
        FieldEstimate& pick = warm_run.value >= fresh_run.value ? warm_run : fresh_run;
        pick.iterations = warm_run.iterations + fresh_run.iterations;
        out.push_back(std::move(pick));
    }
    return out;
}

} // namespace ornstein
