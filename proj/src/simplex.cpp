#include "ornstein/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ornstein/error.hpp"

namespace ornstein {
namespace {

// LU with partial pivoting plus one pass of iterative refinement; returns
// false on a (numerically) singular matrix.
struct LUFactors {
    std::vector<std::vector<double>> lu;
    std::vector<std::size_t> perm;
    bool ok = false;
};

LUFactors lu_factor(const std::vector<std::vector<double>>& M) {
    const std::size_t n = M.size();
    LUFactors f;
    f.lu = M;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(f.lu[k][k]);
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(f.lu[i][k]) > best) {
                best = std::abs(f.lu[i][k]);
                piv = i;
            }
        if (best < 1e-13) return f;
        std::swap(f.lu[k], f.lu[piv]);
        std::swap(f.perm[k], f.perm[piv]);
        const double inv = 1.0 / f.lu[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = f.lu[i][k] * inv;
            f.lu[i][k] = m;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) f.lu[i][j] -= m * f.lu[k][j];
        }
    }
    f.ok = true;
    return f;
}

std::vector<double> lu_solve(const LUFactors& f, const std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu[i][j] * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu[i][j] * x[j];
        x[i] /= f.lu[i][i];
    }
    return x;
}

bool refine_once(const std::vector<std::vector<double>>& M, const LUFactors& f,
                 const std::vector<double>& rhs, std::vector<double>& x) {
    const std::size_t n = rhs.size();
    x = lu_solve(f, rhs);
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = rhs[i];
        for (std::size_t j = 0; j < n; ++j) acc -= M[i][j] * x[j];
        resid[i] = acc;
    }
    const std::vector<double> dx = lu_solve(f, resid);
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    return true;
}

bool lu_refine(const std::vector<std::vector<double>>& M, const std::vector<double>& rhs,
               std::vector<double>& x) {
    const LUFactors f = lu_factor(M);
    if (!f.ok) return false;
    return refine_once(M, f, rhs, x);
}

bool lu_refine_transposed(const std::vector<std::vector<double>>& M,
                          const std::vector<double>& rhs, std::vector<double>& y) {
    const std::size_t n = M.size();
    std::vector<std::vector<double>> T(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) T[i][j] = M[j][i];
    const LUFactors f = lu_factor(T);
    if (!f.ok) return false;
    y.resize(n);
    return refine_once(T, f, rhs, y);
}

} // namespace

SimplexResult simplex_max(const std::vector<std::vector<double>>& A,
                          const std::vector<double>& b, const std::vector<double>& c,
                          const SimplexOptions& opt) {
    const std::size_t rows = A.size();
    const std::size_t n = c.size();
    if (n == 0) throw DomainError("a program needs at least one variable");
    if (b.size() != rows) throw DomainError("right-hand side length does not match rows");
    for (const auto& row : A)
        if (row.size() != n) throw DomainError("constraint row length does not match costs");
    for (double bi : b)
        if (bi < 0.0) throw DomainError("slack start needs a nonnegative right-hand side");

    // Full tableau over structural + slack columns; basis starts at the slacks.
    // bw is the working right-hand side: anti-degeneracy perturbations land
    // here, and the final refactorization against the true b removes them.
    const std::size_t cols = n + rows;
    std::vector<double> bw(b);
    std::vector<std::vector<double>> tab(rows, std::vector<double>(cols + 1, 0.0));
    for (std::size_t r = 0; r < rows; ++r) {
        std::copy(A[r].begin(), A[r].end(), tab[r].begin());
        tab[r][n + r] = 1.0;
        tab[r][cols] = bw[r];
    }
    // d[j] = z_j - c_j; optimal once every entry is >= -tol.
    std::vector<double> d(cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) d[j] = -c[j];
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;

    SimplexResult res;
    double objective = 0.0;
    int stalled = 0;
    bool bland = false;

    // Rebuilds the tableau, reduced costs, and objective from the original
    // data under the current basis. Drift accumulated over many pivots is the
    // usual source of bogus unboundedness and cycling; a reinversion resets
    // it. Returns false only when the basis is numerically singular.
    const auto reinvert = [&]() {
        std::vector<std::vector<double>> B(rows, std::vector<double>(rows, 0.0));
        for (std::size_t r = 0; r < rows; ++r) {
            if (basis[r] < n)
                for (std::size_t i = 0; i < rows; ++i) B[i][r] = A[i][basis[r]];
            else
                B[basis[r] - n][r] = 1.0;
        }
        const LUFactors f = lu_factor(B);
        if (!f.ok) return false;
        std::vector<double> col(rows), sol(rows);
        std::vector<std::vector<double>> binv(rows, std::vector<double>(rows));
        for (std::size_t j = 0; j < rows; ++j) {
            std::fill(col.begin(), col.end(), 0.0);
            col[j] = 1.0;
            sol = lu_solve(f, col);
            for (std::size_t i = 0; i < rows; ++i) binv[i][j] = sol[i];
        }
        for (std::size_t r = 0; r < rows; ++r) {
            auto& row = tab[r];
            const auto& binr = binv[r];
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t i = 0; i < rows; ++i) acc += binr[i] * A[i][j];
                row[j] = acc;
            }
            for (std::size_t j = 0; j < rows; ++j) row[n + j] = binr[j];
            double acc = 0.0;
            for (std::size_t i = 0; i < rows; ++i) acc += binr[i] * bw[i];
            row[cols] = acc;
        }
        std::vector<double> cb(rows, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            if (basis[r] < n) cb[r] = c[basis[r]];
        std::vector<double> y(rows, 0.0);
        for (std::size_t i = 0; i < rows; ++i) {
            double acc = 0.0;
            for (std::size_t r = 0; r < rows; ++r) acc += cb[r] * binv[r][i];
            y[i] = acc;
        }
        for (std::size_t j = 0; j < n; ++j) {
            double z = 0.0;
            for (std::size_t i = 0; i < rows; ++i) z += y[i] * A[i][j];
            d[j] = z - c[j];
        }
        for (std::size_t j = 0; j < rows; ++j) d[n + j] = y[j];
        for (std::size_t r = 0; r < rows; ++r) d[basis[r]] = 0.0;
        objective = 0.0;
        for (std::size_t r = 0; r < rows; ++r) objective += cb[r] * tab[r][cols];
        return true;
    };

    const long long refresh_every = 500;
    long long since_refresh = 0;
    bool fresh = false;
    bool perturbed = false;
    int resumes = 0;
    bool done = false;

    while (!done) {
    while (res.pivots < opt.max_pivots) {
        // Entering column: most negative reduced cost, or Bland when stalled.
        std::size_t enter = cols;
        if (bland) {
            for (std::size_t j = 0; j < cols; ++j)
                if (d[j] < -opt.pivot_tol) {
                    enter = j;
                    break;
                }
        } else {
            double best = -opt.pivot_tol;
            for (std::size_t j = 0; j < cols; ++j)
                if (d[j] < best) {
                    best = d[j];
                    enter = j;
                }
        }
        if (enter == cols) {
            res.status = SimplexStatus::Optimal;
            done = true;
            break;
        }

        // Ratio test. Bland's rule needs the lowest basis index on ties; the
        // default rule prefers the largest pivot element for stability. A
        // column that fails at the working tolerance is retried near machine
        // precision before unboundedness is believed.
        const auto pick_leaving = [&](double floor_tol) {
            std::size_t leave = rows;
            double best_ratio = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                const double a = tab[r][enter];
                if (a <= floor_tol) continue;
                const double ratio = tab[r][cols] / a;
                if (leave == rows) {
                    best_ratio = ratio;
                    leave = r;
                    continue;
                }
                const double tie = 1e-10 * (1.0 + std::abs(best_ratio));
                if (ratio < best_ratio - tie) {
                    best_ratio = ratio;
                    leave = r;
                } else if (ratio <= best_ratio + tie) {
                    const bool better = bland ? basis[r] < basis[leave]
                                              : tab[r][enter] > tab[leave][enter];
                    if (better) {
                        best_ratio = std::min(best_ratio, ratio);
                        leave = r;
                    }
                }
            }
            return leave;
        };
        std::size_t leave = pick_leaving(opt.pivot_tol);
        if (leave == rows) leave = pick_leaving(1e-12);
        if (leave == rows) {
            // Unboundedness is only believed on a freshly reinverted tableau.
            if (!fresh && reinvert()) {
                fresh = true;
                continue;
            }
            res.status = SimplexStatus::Unbounded;
            done = true;
            break;
        }

        const double pivot = tab[leave][enter];
        auto& prow = tab[leave];
        for (double& v : prow) v /= pivot;
        prow[enter] = 1.0;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == leave) continue;
            const double f = tab[r][enter];
            if (f == 0.0) continue;
            auto& row = tab[r];
            for (std::size_t j = 0; j <= cols; ++j) row[j] -= f * prow[j];
            row[enter] = 0.0;
        }
        const double fd = d[enter];
        if (fd != 0.0)
            for (std::size_t j = 0; j < cols; ++j) d[j] -= fd * prow[j];
        d[enter] = 0.0;
        const double gain = -fd * prow[cols];
        objective += gain;
        basis[leave] = enter;
        ++res.pivots;
        fresh = false;
        if (++since_refresh >= refresh_every) {
            since_refresh = 0;
            fresh = reinvert();
        }

        // Degeneracy ladder: first a one-shot tiny rhs perturbation to split
        // the degenerate vertex (undone before the certificate), then the
        // one-way switch to Bland's rule, which is slow but terminates.
        if (gain <= 1e-12 * (1.0 + std::abs(objective))) {
            ++stalled;
            if (stalled == opt.bland_after && !perturbed) {
                for (std::size_t r = 0; r < rows; ++r)
                    bw[r] += 1e-9 * (1.0 + std::abs(bw[r])) *
                             static_cast<double>(r + 1) /
                             static_cast<double>(rows);
                if (reinvert()) fresh = true;
                perturbed = true;
                stalled = 0;
            } else if (stalled >= opt.bland_after) {
                bland = true;
            }
        } else {
            stalled = 0;
        }
    }
    if (res.pivots >= opt.max_pivots) {
        res.status = SimplexStatus::PivotLimit;
        done = true;
    }
    // A perturbed run must be checked against the real right-hand side; a
    // few extra pivots may follow the reinversion.
    if (done && res.status == SimplexStatus::Optimal && perturbed && resumes < 5) {
        perturbed = false;
        ++resumes;
        bw = b;
        if (reinvert()) {
            fresh = true;
            done = false;
        }
    }
    }

    // The tableau drifts over many pivots; refactor the final basis against
    // the original data so the reported point and certificate are honest.
    std::vector<std::vector<double>> B(rows, std::vector<double>(rows, 0.0));
    for (std::size_t r = 0; r < rows; ++r) {
        if (basis[r] < n)
            for (std::size_t i = 0; i < rows; ++i) B[i][r] = A[i][basis[r]];
        else
            B[basis[r] - n][r] = 1.0;
    }
    std::vector<double> xb(b), cb(rows, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        if (basis[r] < n) cb[r] = c[basis[r]];

    if (lu_refine(B, b, xb) && lu_refine_transposed(B, cb, res.dual)) {
        res.x.assign(n, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            if (basis[r] < n) res.x[basis[r]] = xb[r];
        res.objective = 0.0;
        for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
        res.reduced_costs.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double z = 0.0;
            for (std::size_t r = 0; r < rows; ++r) z += res.dual[r] * A[r][j];
            res.reduced_costs[j] = z - c[j];
        }
    } else {
        // Singular refactorization: fall back to the tableau values.
        res.objective = objective;
        res.x.assign(n, 0.0);
        for (std::size_t r = 0; r < rows; ++r)
            if (basis[r] < n) res.x[basis[r]] = tab[r][cols];
        res.dual.assign(rows, 0.0);
        for (std::size_t r = 0; r < rows; ++r) res.dual[r] = d[n + r];
        res.reduced_costs.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n));
    }
    return res;
}

} // namespace ornstein
