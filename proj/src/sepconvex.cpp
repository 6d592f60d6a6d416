#include "ornstein/sepconvex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "ornstein/error.hpp"
#include "ornstein/rational.hpp"
#include "ornstein/simplex.hpp"

namespace ornstein {
namespace {

void validate(const SphereGridSpec& spec) {
    if (spec.dimension < 1) throw DomainError("dimension must be positive");
    if (spec.resolution < 3 || spec.resolution % 2 == 0)
        throw DomainError("resolution must be odd and at least 3");
    if (spec.extra_layers < 0) throw DomainError("layer count must be nonnegative");
    if (spec.scale < 2) throw DomainError("layer scale must be at least 2");
    if (spec.homogeneity < 1.0) throw DomainError("homogeneity order must be at least 1");
}

// All integer points on the sup-norm sphere of radius s, lexicographic.
std::vector<std::vector<int>> sphere_points(int d, int s) {
    std::vector<std::vector<int>> pts;
    std::vector<int> z(static_cast<std::size_t>(d), -s);
    for (;;) {
        int norm = 0;
        for (int v : z) norm = std::max(norm, std::abs(v));
        if (norm == s) pts.push_back(z);
        int j = d - 1;
        while (j >= 0 && z[static_cast<std::size_t>(j)] == s) {
            z[static_cast<std::size_t>(j)] = -s;
            --j;
        }
        if (j < 0) break;
        ++z[static_cast<std::size_t>(j)];
    }
    return pts;
}

std::vector<int> antipode_class(const std::vector<int>& z) {
    std::vector<int> neg(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) neg[i] = -z[i];
    return std::max(z, neg);
}

// scale^{p m}, exact when p m is an integer.
Rational layer_factor(int scale, double p, int m) {
    const double pm = p * m;
    if (pm == std::round(pm)) {
        const long long e = std::llround(pm);
        BigInt powv = 1;
        for (long long i = 0; i < std::abs(e); ++i) powv *= scale;
        return e >= 0 ? Rational(powv) : Rational(1) / Rational(powv);
    }
    return rational_from_double(std::pow(static_cast<double>(scale), pm));
}

long long int_pow(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

struct Node {
    std::vector<int> z; // base-sphere point
    int m;              // layer
    std::vector<long long> w; // z * scale^{M+m}, the common integer lattice
};

struct Triple {
    int a, b, c; // node ids, increasing along the shared axis
};

struct Enumeration {
    int s = 0;
    std::vector<Node> nodes;
    std::vector<Triple> triples;
};

// Nodes of every layer plus all consecutive axis-parallel triples of the
// union, keyed exactly on the integer lattice.
Enumeration enumerate_grid(const SphereGridSpec& spec) {
    Enumeration en;
    en.s = (spec.resolution - 1) / 2;
    const int d = spec.dimension, M = spec.extra_layers;
    const auto base = sphere_points(d, en.s);
    for (int m = -M; m <= M; ++m) {
        const long long f = int_pow(spec.scale, M + m);
        for (const auto& z : base) {
            Node nd;
            nd.z = z;
            nd.m = m;
            nd.w.resize(z.size());
            for (std::size_t j = 0; j < z.size(); ++j) nd.w[j] = z[j] * f;
            en.nodes.push_back(std::move(nd));
        }
    }
    for (int axis = 0; axis < d; ++axis) {
        std::map<std::vector<long long>, std::vector<int>> lines;
        for (std::size_t i = 0; i < en.nodes.size(); ++i) {
            std::vector<long long> key = en.nodes[i].w;
            key.erase(key.begin() + axis);
            lines[std::move(key)].push_back(static_cast<int>(i));
        }
        for (auto& [key, ids] : lines) {
            if (ids.size() < 3) continue;
            std::sort(ids.begin(), ids.end(), [&](int lhs, int rhs) {
                return en.nodes[static_cast<std::size_t>(lhs)].w[static_cast<std::size_t>(axis)] <
                       en.nodes[static_cast<std::size_t>(rhs)].w[static_cast<std::size_t>(axis)];
            });
            for (std::size_t t = 0; t + 2 < ids.size(); ++t) {
                Triple tr;
                tr.a = ids[t];
                tr.b = ids[t + 1];
                tr.c = ids[t + 2];
                // remember the axis through the coordinates themselves
                en.triples.push_back(tr);
            }
        }
    }
    return en;
}

int triple_axis(const Enumeration& en, const Triple& t) {
    const auto& wa = en.nodes[static_cast<std::size_t>(t.a)].w;
    const auto& wb = en.nodes[static_cast<std::size_t>(t.b)].w;
    for (std::size_t j = 0; j < wa.size(); ++j)
        if (wa[j] != wb[j]) return static_cast<int>(j);
    throw NumericError("degenerate axis triple");
}

} // namespace

SepConvexProgram build_sepconvex_program(const SphereGridSpec& spec,
                                         const std::vector<int>& objective_node) {
    validate(spec);
    SepConvexProgram prog;
    prog.spec = spec;

    const Enumeration en = enumerate_grid(spec);
    const int s = en.s;

    // Variables: one per antipode class of the base sphere, lex order.
    std::map<std::vector<int>, int> var_of;
    for (const auto& z : sphere_points(spec.dimension, s)) {
        const auto rep = antipode_class(z);
        if (!var_of.count(rep)) var_of.emplace(rep, 0);
    }
    int next = 0;
    for (auto& [rep, id] : var_of) id = next++;
    prog.base_nodes.resize(var_of.size());
    for (const auto& [rep, id] : var_of) prog.base_nodes[static_cast<std::size_t>(id)] = rep;

    std::vector<int> z0 = objective_node;
    if (z0.empty()) {
        z0.assign(static_cast<std::size_t>(spec.dimension), 0);
        z0[0] = s;
    }
    {
        int norm = 0;
        for (int v : z0) norm = std::max(norm, std::abs(v));
        if (static_cast<int>(z0.size()) != spec.dimension || norm != s)
            throw DomainError("objective node must lie on the base sphere");
    }
    prog.objective_var = var_of.at(antipode_class(z0));

    prog.triples_total = static_cast<long long>(en.triples.size());

    // Assemble rows exactly, eliminate evenness and homogeneity, then
    // normalize each row by its largest coefficient and dedupe.
    std::set<std::vector<std::pair<int, Rational>>> seen;
    std::vector<std::pair<std::vector<std::pair<int, Rational>>, Rational>> rows;
    for (const auto& t : en.triples) {
        const int axis = triple_axis(en, t);
        const Node& A = en.nodes[static_cast<std::size_t>(t.a)];
        const Node& B = en.nodes[static_cast<std::size_t>(t.b)];
        const Node& C = en.nodes[static_cast<std::size_t>(t.c)];
        const long long a = A.w[static_cast<std::size_t>(axis)];
        const long long b = B.w[static_cast<std::size_t>(axis)];
        const long long c = C.w[static_cast<std::size_t>(axis)];

        std::map<int, Rational> acc;
        Rational rhs = 0;
        const auto add = [&](const Node& nd, long long coeff) {
            const Rational v = Rational(coeff) * layer_factor(spec.scale, spec.homogeneity, nd.m);
            acc[var_of.at(antipode_class(nd.z))] += v;
            rhs += v;
        };
        add(A, c - b);
        add(B, -(c - a));
        add(C, b - a);

        std::vector<std::pair<int, Rational>> row;
        Rational maxabs = 0;
        for (const auto& [var, coeff] : acc) {
            if (coeff == 0) continue;
            row.emplace_back(var, coeff);
            if (abs(coeff) > maxabs) maxabs = abs(coeff);
        }
        if (row.empty()) continue;
        for (auto& [var, coeff] : row) coeff /= maxabs;
        rhs /= maxabs;
        if (seen.insert(row).second) rows.emplace_back(std::move(row), rhs);
    }

    prog.convexity.reserve(rows.size());
    for (const auto& [row, rhs] : rows) {
        SparseRow out;
        out.vars.reserve(row.size());
        out.coeffs.reserve(row.size());
        for (const auto& [var, coeff] : row) {
            out.vars.push_back(var);
            out.coeffs.push_back(to_double(coeff));
        }
        out.rhs_one = to_double(rhs);
        if (out.rhs_one < 0)
            throw NumericError("the sup-norm power is not feasible: row residual " +
                               std::to_string(out.rhs_one));
        prog.convexity.push_back(std::move(out));
    }
    return prog;
}

SepConvexSolution min_certificate(const SepConvexProgram& prog) {
    const std::size_t nvars = prog.base_nodes.size();
    const std::size_t nrows = prog.convexity.size();

    // u = 1 - v turns (row . u >= 0, u <= 1) into (row . v <= rhs_one, v >= 0)
    // with v = 0 feasible; minimizing u at the node maximizes v there.
    std::vector<std::vector<double>> A(nrows, std::vector<double>(nvars, 0.0));
    std::vector<double> b(nrows, 0.0);
    for (std::size_t r = 0; r < nrows; ++r) {
        const SparseRow& row = prog.convexity[r];
        for (std::size_t k = 0; k < row.vars.size(); ++k)
            A[r][static_cast<std::size_t>(row.vars[k])] = row.coeffs[k];
        b[r] = row.rhs_one;
    }
    std::vector<double> c(nvars, 0.0);
    c[static_cast<std::size_t>(prog.objective_var)] = 1.0;

    SimplexOptions opt;
    const SimplexResult lp = simplex_max(A, b, c, opt);
    if (lp.status == SimplexStatus::Unbounded)
        throw NumericError("program is not bounded below at the chosen node");
    if (lp.status == SimplexStatus::PivotLimit)
        throw NumericError("simplex hit its pivot limit before optimality");

    SepConvexSolution sol;
    sol.pivots = lp.pivots;
    sol.optimum = 1.0 - lp.objective;
    sol.base_values.resize(nvars);
    for (std::size_t i = 0; i < nvars; ++i) sol.base_values[i] = 1.0 - lp.x[i];

    double worst = 0.0;
    for (std::size_t r = 0; r < nrows; ++r) {
        const SparseRow& row = prog.convexity[r];
        double lhs = 0.0;
        for (std::size_t k = 0; k < row.vars.size(); ++k)
            lhs += row.coeffs[k] * sol.base_values[static_cast<std::size_t>(row.vars[k])];
        worst = std::max(worst, -lhs);
    }
    for (double u : sol.base_values) worst = std::max(worst, u - 1.0);
    sol.primal_residual = worst;

    double dual_bad = 0.0;
    for (double y : lp.dual) dual_bad = std::max(dual_bad, -y);
    for (double rc : lp.reduced_costs) dual_bad = std::max(dual_bad, -rc);
    sol.dual_residual = dual_bad;

    double ydotb = 0.0;
    for (std::size_t r = 0; r < nrows; ++r) ydotb += lp.dual[r] * b[r];
    sol.duality_gap = std::abs(ydotb - lp.objective);
    return sol;
}

double separate_convexity_residual(const std::function<double(const std::vector<double>&)>& f,
                                   const SphereGridSpec& spec) {
    validate(spec);
    if (!f) throw DomainError("missing function to check");
    const Enumeration en = enumerate_grid(spec);
    const double denom =
        static_cast<double>(en.s) * static_cast<double>(int_pow(spec.scale, spec.extra_layers));

    std::vector<double> values(en.nodes.size());
    std::vector<double> x(static_cast<std::size_t>(spec.dimension));
    for (std::size_t i = 0; i < en.nodes.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j)
            x[j] = static_cast<double>(en.nodes[i].w[j]) / denom;
        values[i] = f(x);
    }

    double worst = 0.0;
    for (const auto& t : en.triples) {
        const int axis = triple_axis(en, t);
        const auto coord = [&](int id) {
            return static_cast<double>(
                       en.nodes[static_cast<std::size_t>(id)].w[static_cast<std::size_t>(axis)]) /
                   denom;
        };
        const double a = coord(t.a), b2 = coord(t.b), c2 = coord(t.c);
        const double second = (c2 - b2) * values[static_cast<std::size_t>(t.a)] -
                              (c2 - a) * values[static_cast<std::size_t>(t.b)] +
                              (b2 - a) * values[static_cast<std::size_t>(t.c)];
        worst = std::max(worst, -2.0 * second / (c2 - a));
    }
    return worst;
}

void write_lp_format(const SepConvexProgram& prog, const std::string& path) {
    std::ostringstream out;
    out << "\\ lower bound for a separately convex positively homogeneous function\n";
    out << "Minimize\n obj: x" << prog.objective_var << "\n";
    out << "Subject To\n";
    char buf[64];
    for (std::size_t r = 0; r < prog.convexity.size(); ++r) {
        const SparseRow& row = prog.convexity[r];
        out << " c" << r << ":";
        for (std::size_t k = 0; k < row.vars.size(); ++k) {
            const double v = row.coeffs[k];
            std::snprintf(buf, sizeof buf, "%.17g", std::abs(v));
            out << (v < 0 ? " - " : (k == 0 ? " " : " + ")) << buf << " x" << row.vars[k];
        }
        out << " >= 0\n";
    }
    out << "Bounds\n";
    for (std::size_t i = 0; i < prog.base_nodes.size(); ++i)
        out << " -inf <= x" << i << " <= 1\n";
    out << "End\n";

    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("cannot open " + path + " for writing");
    const std::string text = out.str();
    std::fwrite(text.data(), 1, text.size(), fp);
    std::fclose(fp);
}

} // namespace ornstein
