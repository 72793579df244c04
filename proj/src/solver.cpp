#include "sofa/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sofa/analytic.hpp"
#include "sofa/errors.hpp"

namespace sofa {

namespace {

std::size_t block_size(const ScenarioSpec& s) {
    if (s.kind == Scenario::ConstrainedSym || s.kind == Scenario::AsymA) return 4;
    if (s.kind == Scenario::AsymB) return 3;
    return 2;
}

struct SystemView {
    const SolverConfig* cfg;
    const IntersectionParams* ip;
    const std::vector<std::uint8_t>* active1;
    const std::vector<std::uint8_t>* active2;
    UniformGrid grid;
    std::size_t block;
    std::size_t n;

    std::size_t dim() const { return block * n; }
};

void unpack(const SystemView& sv, const std::vector<double>& x, std::vector<double>& r,
            std::vector<double>& t, MultiplierField& mult) {
    const std::size_t n = sv.n, b = sv.block;
    r.resize(n);
    t.resize(n);
    if (b >= 3) mult.lambda2.resize(n);
    if (b == 4) mult.lambda1.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = x[i * b];
        t[i] = x[i * b + 1];
        if (b == 3) mult.lambda2[i] = x[i * b + 2];
        if (b == 4) {
            mult.lambda1[i] = x[i * b + 2];
            mult.lambda2[i] = x[i * b + 3];
        }
    }
}

std::vector<double> pack(const SystemView& sv, const PathFunctions& rt,
                         const MultiplierField& mult) {
    const std::size_t n = sv.n, b = sv.block;
    std::vector<double> x(sv.dim(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        x[i * b] = rt.r(i);
        x[i * b + 1] = rt.t(i);
        if (b == 3) x[i * b + 2] = mult.lambda2.empty() ? 0.0 : mult.lambda2[i];
        if (b == 4) {
            x[i * b + 2] = mult.lambda1.empty() ? 0.0 : mult.lambda1[i];
            x[i * b + 3] = mult.lambda2.empty() ? 0.0 : mult.lambda2[i];
        }
    }
    return x;
}

double g1_of(double alpha, double r, double t, double r_at0) {
    return std::cos(alpha) * r + std::sin(alpha) * std::tan(alpha / 2) * t - r_at0;
}
double g2_of(double alpha, double r, double t, double r_atpi) {
    const double ch = std::cos(alpha / 2);
    return -r_atpi - std::cos(alpha) * r + 2.0 * ch * ch * t;
}

void residual_into(const SystemView& sv, const std::vector<double>& x, std::vector<double>& f,
                   bool parallel) {
    const std::size_t n = sv.n, b = sv.block;
    const ScenarioSpec spec = sv.cfg->scenario;
    const auto& bv = sv.cfg->boundary_values;
    std::vector<double> r(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = x[i * b];
        t[i] = x[i * b + 1];
    }
    DerivativeStencils st(sv.grid);
    f.assign(sv.dim(), 0.0);

    const double r_at0 = bv.empty() ? r[0] : bv[0];
    const double r_atpi = (bv.size() >= 3) ? bv[2] : r_at0;

    auto node_rows = [&](std::size_t i) {
        const double alpha = sv.grid.alpha(i);
        RTJet j{r[i], t[i], st.d1(r, i), st.d1(t, i), st.d2(r, i), st.d2(t, i)};
        const std::size_t row = i * b;
        if (i == 0) {
            switch (spec.kind) {
                case Scenario::GerverSym:
                    f[row] = -0.5 + 2.0 * r[0] - 2.0 * t[0] - 2.0 * j.r2;
                    f[row + 1] = t[0] - bv[0];
                    break;
                case Scenario::Car:
                    f[row] = 1.0 - 8.0 * j.r1 + 16.0 * j.t1;
                    f[row + 1] = t[0] - bv[0];
                    break;
                case Scenario::ConstrainedSym:
                    f[row] = r[0] - bv[0];
                    f[row + 1] = t[0] - bv[1];
                    break;
                default: // asym scenarios pin all four boundary values
                    f[row] = r[0] - bv[0];
                    f[row + 1] = t[0] - bv[1];
            }
        } else if (i == n - 1) {
            if (spec.symmetric()) {
                f[row] = j.r1;
                f[row + 1] = j.t1;
            } else {
                f[row] = r[i] - bv[2];
                f[row + 1] = t[i] - bv[3];
            }
        } else {
            switch (spec.kind) {
                case Scenario::GerverSym: {
                    const Resid2 res = residual_sym_gerver(alpha, j, *sv.ip);
                    f[row] = res.ode1;
                    f[row + 1] = res.ode2;
                    break;
                }
                case Scenario::Car: {
                    const Resid2 res = residual_car(alpha, j, *sv.ip, false);
                    f[row] = res.ode1;
                    f[row + 1] = res.ode2;
                    break;
                }
                case Scenario::ConstrainedSym: {
                    const Resid4 res = residual_sym_constrained(alpha, j, x[row + 2], x[row + 3],
                                                                r_at0, r_at0);
                    f[row] = res.ode1;
                    f[row + 1] = res.ode2;
                    break;
                }
                case Scenario::AsymA: {
                    const Resid4 res = residual_asym(alpha, j, x[row + 2], x[row + 3], *sv.ip,
                                                     'a', r_at0, r_atpi);
                    f[row] = res.ode1;
                    f[row + 1] = res.ode2;
                    break;
                }
                case Scenario::AsymB: {
                    const Resid4 res = residual_asym(alpha, j, 0.0, x[row + 2], *sv.ip, 'b',
                                                     r_at0, r_atpi);
                    f[row] = res.ode1;
                    f[row + 1] = res.ode2;
                    break;
                }
                case Scenario::AsymC: {
                    const Resid4 res = residual_asym(alpha, j, 0.0, 0.0, *sv.ip, 'c', r_at0,
                                                     r_atpi);
                    f[row] = res.ode1;
                    f[row + 1] = res.ode2;
                    break;
                }
            }
        }
        // complementarity rows via the active sets
        if (b == 4) {
            f[row + 2] = (*sv.active1)[i] ? g1_of(alpha, r[i], t[i], r_at0) : x[row + 2];
            f[row + 3] = (*sv.active2)[i] ? g2_of(alpha, r[i], t[i], r_atpi) : x[row + 3];
        } else if (b == 3) {
            f[row + 2] = (*sv.active2)[i] ? g2_of(alpha, r[i], t[i], r_atpi) : x[row + 2];
        }
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long i = 0; i < long(n); ++i) node_rows(std::size_t(i));
    } else {
        for (std::size_t i = 0; i < n; ++i) node_rows(i);
    }
}

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

BandedMatrix fd_jacobian(const SystemView& sv, const std::vector<double>& x, bool parallel) {
    const std::size_t dim = sv.dim();
    const std::size_t reach = sv.block * 6; // one-sided stencils span 6 nodes
    BandedMatrix jac(dim, reach, reach);
    const std::size_t ncolors = 2 * reach + 1;

    std::vector<double> base;
    residual_into(sv, x, base, parallel);

    std::vector<double> xp = x, xm = x, fp, fm;
    std::vector<double> steps(dim);
    for (std::size_t c = 0; c < ncolors; ++c) {
        for (std::size_t j = c; j < dim; j += ncolors) {
            steps[j] = 1e-7 * std::max(1.0, std::abs(x[j]));
            xp[j] = x[j] + steps[j];
            xm[j] = x[j] - steps[j];
        }
        residual_into(sv, xp, fp, parallel);
        residual_into(sv, xm, fm, parallel);
        for (std::size_t j = c; j < dim; j += ncolors) {
            const std::size_t lo = j > reach ? j - reach : 0;
            const std::size_t hi = std::min(dim - 1, j + reach);
            for (std::size_t i = lo; i <= hi; ++i) {
                const double d = (fp[i] - fm[i]) / (2.0 * steps[j]);
                if (d != 0.0) jac.at(i, j) = d;
            }
            xp[j] = x[j];
            xm[j] = x[j];
        }
    }
    return jac;
}

struct NewtonResult {
    int iterations = 0;
    double final_norm = 0.0;
};

NewtonResult newton_solve(const SystemView& sv, std::vector<double>& x,
                          std::vector<TraceEntry>& trace, int outer) {
    const SolverConfig& cfg = *sv.cfg;
    // max-norm rows carry 1/h^2 stencils, so the attainable floor grows with N
    const double floor_tol = 1e-8;
    std::vector<double> f, ftry, xtry;
    NewtonResult out;
    residual_into(sv, x, f, cfg.parallel);
    double fn = max_norm(f);
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        if (fn < cfg.newton_tol) break;
        BandedMatrix jac = fd_jacobian(sv, x, cfg.parallel);
        jac.lu_factor();
        std::vector<double> dx = f;
        jac.solve_inplace(dx);
        double lam = 1.0;
        bool ok = false;
        int halvings = 0;
        for (; halvings <= cfg.max_halvings; ++halvings) {
            xtry = x;
            for (std::size_t k = 0; k < x.size(); ++k) xtry[k] -= lam * dx[k];
            residual_into(sv, xtry, ftry, cfg.parallel);
            const double fn_try = max_norm(ftry);
            if (fn_try < fn || fn_try < cfg.newton_tol) {
                x.swap(xtry);
                f.swap(ftry);
                fn = fn_try;
                ok = true;
                break;
            }
            lam *= cfg.damping;
        }
        out.iterations = it + 1;
        trace.push_back({outer, it + 1, fn, halvings,
                         sv.ip->a1p.value_or(0.0), sv.ip->a2p.value_or(0.0)});
        if (!ok) {
            if (fn <= floor_tol) break; // stagnation at the round-off floor
            throw NewtonDiverged("Newton: no residual reduction after damping");
        }
    }
    out.final_norm = fn;
    if (fn > floor_tol)
        throw NewtonDiverged("Newton: residual " + std::to_string(fn) + " above tolerance");
    return out;
}

PathFunctions initial_path(const SolverConfig& cfg) {
    const ScenarioSpec spec = cfg.scenario;
    const double L = spec.domain_end();
    const double c = 2.0 / M_PI;
    switch (spec.kind) {
        case Scenario::GerverSym:
        case Scenario::AsymA:
            return PathFunctions::constant(c, c, 0.0, L, cfg.n_points);
        case Scenario::ConstrainedSym:
            return PathFunctions::constant(cfg.boundary_values[0], cfg.boundary_values[1], 0.0,
                                           L, cfg.n_points);
        case Scenario::Car:
            return PathFunctions::constant(0.35, 0.35, 0.0, L, cfg.n_points);
        case Scenario::AsymB:
        case Scenario::AsymC: {
            // seed from the analytic optimum; the boundary rows move it as needed
            static const RomikConstants rc = [] {
                return solve_romik_constants(solve_gerver_constants());
            }();
            return PathFunctions::from_functions(
                [&](double a) { return analytic_rt(a, rc, Problem::Sofa).r; },
                [&](double a) { return analytic_rt(a, rc, Problem::Sofa).t; }, 0.0, L,
                cfg.n_points);
        }
    }
    throw Error("unreachable");
}

IntersectionParams initial_ip(const ScenarioSpec& spec) {
    // seeds respect the branch ordering a1p <= pi - a2p of Eq 15
    IntersectionParams ip;
    switch (spec.kind) {
        case Scenario::GerverSym:
        case Scenario::AsymB:
            ip.a1p = 0.08;
            ip.a2p = 1.78;
            break;
        case Scenario::AsymC:
            ip.a1p = 0.08;
            ip.a2p = 1.78;
            ip.a3p = M_PI - 0.08;
            ip.a4p = M_PI - 1.78;
            break;
        case Scenario::Car:
            ip.a1p = 0.58;
            ip.a2p = 0.58;
            ip.a5p = 0.58;
            break;
        default:
            break;
    }
    return ip;
}

double ip_delta(const IntersectionParams& a, const IntersectionParams& b) {
    double d = 0.0;
    auto upd = [&](const std::optional<double>& x, const std::optional<double>& y) {
        if (x && y) d = std::max(d, std::abs(*x - *y));
        else if (x.has_value() != y.has_value()) d = std::max(d, 1.0);
    };
    upd(a.a1p, b.a1p);
    upd(a.a2p, b.a2p);
    upd(a.a3p, b.a3p);
    upd(a.a4p, b.a4p);
    upd(a.a5p, b.a5p);
    return d;
}

/// Branch selection is node-wise, so only the cells containing the branch
/// thresholds matter to the discrete system.
std::vector<long> threshold_cells(const IntersectionParams& ip, const ScenarioSpec& spec,
                                  const UniformGrid& grid) {
    std::vector<double> thresholds;
    switch (spec.kind) {
        case Scenario::GerverSym:
            if (ip.a1p) thresholds = {*ip.a1p, M_PI - *ip.a2p};
            break;
        case Scenario::AsymB:
            if (ip.a1p) thresholds = {*ip.a1p, *ip.a2p};
            break;
        case Scenario::AsymC:
            if (ip.a1p) thresholds = {*ip.a4p, *ip.a1p, *ip.a2p, *ip.a3p};
            break;
        case Scenario::Car:
            if (ip.a1p) thresholds = {ip.a5p.value_or(*ip.a1p), *ip.a1p, *ip.a2p};
            break;
        default:
            break;
    }
    std::vector<long> cells;
    for (double t : thresholds) cells.push_back(long(std::floor((t - grid.a) / grid.h())));
    return cells;
}

} // namespace

SolverConfig SolverConfig::defaults(Scenario s, std::size_t n) {
    SolverConfig cfg;
    cfg.scenario.kind = s;
    cfg.n_points = n;
    const double c = 2.0 / M_PI;
    switch (s) {
        case Scenario::GerverSym:
            cfg.boundary_values = {0.71};
            cfg.search = {{0.55}, {0.85}, 13, 60};
            break;
        case Scenario::ConstrainedSym:
            cfg.boundary_values = {c, c};
            cfg.search = {{0.6, 0.6}, {0.7, 0.7}, 5, 80};
            break;
        case Scenario::AsymA:
            cfg.boundary_values = {c, c, c, c};
            cfg.search = {{0.6, 0.6, 0.6, 0.6}, {0.7, 0.7, 0.7, 0.7}, 2, 120};
            break;
        case Scenario::AsymB:
        case Scenario::AsymC:
            cfg.boundary_values = {0.614, 0.708, 0.614, 0.708};
            cfg.search = {{0.564, 0.658, 0.564, 0.658}, {0.664, 0.758, 0.664, 0.758}, 1, 120};
            break;
        case Scenario::Car:
            cfg.boundary_values = {0.375};
            cfg.search = {{0.30}, {0.45}, 11, 60};
            break;
    }
    return cfg;
}

std::vector<double> bvp_residual(const SolverConfig& config, const PathFunctions& rt,
                                 const MultiplierField& mult, const IntersectionParams& ip,
                                 const std::vector<std::uint8_t>& active1,
                                 const std::vector<std::uint8_t>& active2, bool parallel) {
    SystemView sv{&config, &ip, &active1, &active2, rt.grid(), block_size(config.scenario),
                  rt.size()};
    const std::vector<double> x = pack(sv, rt, mult);
    std::vector<double> f;
    residual_into(sv, x, f, parallel);
    return f;
}

BandedMatrix jacobian_assemble(const SolverConfig& config, const PathFunctions& rt,
                               const MultiplierField& mult, const IntersectionParams& ip,
                               const std::vector<std::uint8_t>& active1,
                               const std::vector<std::uint8_t>& active2, bool parallel) {
    SystemView sv{&config, &ip, &active1, &active2, rt.grid(), block_size(config.scenario),
                  rt.size()};
    const std::vector<double> x = pack(sv, rt, mult);
    return fd_jacobian(sv, x, parallel);
}

Solution solve_scenario(const SolverConfig& config) {
    const ScenarioSpec spec = config.scenario;
    PathFunctions rt = initial_path(config);
    const std::size_t n = rt.size();
    const std::size_t b = block_size(spec);

    IntersectionParams ip = initial_ip(spec);
    std::vector<std::uint8_t> active1(n, 0), active2(n, 0);
    MultiplierField mult;
    if (b >= 3) mult.lambda2.assign(n, 0.0);
    if (b == 4) mult.lambda1.assign(n, 0.0);

    SystemView sv{&config, &ip, &active1, &active2, rt.grid(), b, n};
    std::vector<double> x = pack(sv, rt, mult);
    std::vector<TraceEntry> trace;

    auto newton_with_active_sets = [&]() {
        for (int as = 0; as < config.active_set_iters; ++as) {
            newton_solve(sv, x, trace, 0);
            if (b == 2) return;
            std::vector<double> rr, tt;
            unpack(sv, x, rr, tt, mult);
            const auto& bvv = config.boundary_values;
            const double r_at0 = bvv[0];
            const double r_atpi = bvv.size() >= 3 ? bvv[2] : bvv[0];
            bool changed = false;
            // boundary nodes keep lambda = 0: their multiplier columns enter no
            // equation (no ODE rows there), so activating them is singular
            for (std::size_t i = 1; i + 1 < n; ++i) {
                const double alpha = rt.grid().alpha(i);
                if (b == 4) {
                    const double l1 = x[i * b + 2];
                    const double g1 = g1_of(alpha, rr[i], tt[i], r_at0);
                    if (active1[i] && l1 > 1e-10) {
                        active1[i] = 0;
                        x[i * b + 2] = 0.0;
                        changed = true;
                    } else if (!active1[i] && g1 > 1e-10) {
                        active1[i] = 1;
                        changed = true;
                    }
                }
                const std::size_t l2_off = b - 1;
                const double l2 = x[i * b + l2_off];
                const double g2 = g2_of(alpha, rr[i], tt[i], r_atpi);
                if (active2[i] && l2 > 1e-10) {
                    active2[i] = 0;
                    x[i * b + l2_off] = 0.0;
                    changed = true;
                } else if (!active2[i] && g2 > 1e-10) {
                    active2[i] = 1;
                    changed = true;
                }
            }
            if (!changed) return;
        }
    };

    // Outer fixed point on the intersection parameters. Branch selection is
    // node-wise, so the discrete system only sees the cells containing the
    // branch thresholds; iterate until that assignment stops changing (the
    // continuous parameters sit on a cusp of the AC envelope and are not
    // well conditioned individually).
    double delta = 1.0;
    int outer = 0;
    std::vector<std::vector<long>> history;
    bool settled = false;
    for (outer = 1; outer <= config.intersection_cap; ++outer) {
        newton_with_active_sets();
        std::vector<double> rr, tt;
        unpack(sv, x, rr, tt, mult);
        rt = PathFunctions(rt.grid(), rr, tt);
        IntersectionParams fresh;
        if (spec.kind != Scenario::ConstrainedSym && spec.kind != Scenario::AsymA)
            fresh = closest_approach(rt, spec);
        delta = ip_delta(ip, fresh);
        const std::vector<long> cells_used = threshold_cells(ip, spec, rt.grid());
        const std::vector<long> cells_new = threshold_cells(fresh, spec, rt.grid());
        if (outer >= config.intersection_iters && cells_new == cells_used) {
            ip = fresh;
            settled = true;
            break;
        }
        // an assignment 2-cycle cannot settle further; keep the current cells
        if (outer >= config.intersection_iters && history.size() >= 2
            && cells_new == history[history.size() - 2]) {
            settled = true;
            break;
        }
        history.push_back(cells_new);
        ip = fresh;
    }
    if (!settled && delta > 1e-8)
        throw IntersectionOscillation("intersection parameters did not settle: delta = "
                                      + std::to_string(delta));

    // final Newton pass at the settled parameters
    newton_with_active_sets();
    std::vector<double> rr, tt;
    unpack(sv, x, rr, tt, mult);
    rt = PathFunctions(rt.grid(), rr, tt);

    Solution sol{std::move(rt), ip, mult, AreaReport{}, std::move(trace),
                 config.boundary_values, outer};
    // canonical parameters of the returned path (what `area` recomputes)
    if (spec.kind != Scenario::ConstrainedSym && spec.kind != Scenario::AsymA)
        sol.ip = closest_approach(sol.rt, spec);
    sol.report = scenario_area(sol.rt, sol.ip, spec);

    // residual norms of the returned solution
    std::vector<double> f;
    residual_into(sv, x, f, config.parallel);
    double interior = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        for (std::size_t k = 0; k < b; ++k)
            interior = std::max(interior, std::abs(f[i * b + k]));
    double boundary = std::max(std::max(std::abs(f[0]), std::abs(f[1])),
                               std::max(std::abs(f[(n - 1) * b]), std::abs(f[(n - 1) * b + 1])));
    sol.report.max_interior_residual = interior;
    sol.report.max_boundary_residual = boundary;
    sol.report.feasible = true;
    return sol;
}

namespace {

struct SearchEval {
    std::vector<double> bv;
    double area = -HUGE_VAL;
    bool ok = false;
};

SearchEval evaluate(const SolverConfig& base, const std::vector<double>& bv) {
    SolverConfig cfg = base;
    cfg.boundary_values = bv;
    SearchEval ev;
    ev.bv = bv;
    try {
        Solution sol = solve_scenario(cfg);
        ev.area = sol.report.area;
        ev.ok = true;
    } catch (const Error&) {
    }
    return ev;
}

} // namespace

std::pair<std::vector<double>, Solution> search_boundary_values(const SolverConfig& config) {
    const auto& box = config.search;
    const std::size_t dim = box.lo.size();
    if (dim == 0) throw Error("search box is empty");

    bool degenerate = true;
    for (std::size_t d = 0; d < dim; ++d)
        if (box.hi[d] - box.lo[d] > 1e-15) degenerate = false;
    if (degenerate) {
        SolverConfig cfg = config;
        cfg.boundary_values = box.lo;
        Solution sol = solve_scenario(cfg);
        return {box.lo, std::move(sol)};
    }

    // coarse scan (a single step evaluates the box centre)
    std::vector<SearchEval> evals;
    const int steps = box.coarse_steps;
    if (steps <= 1) {
        std::vector<double> bv(dim);
        for (std::size_t d = 0; d < dim; ++d) bv[d] = 0.5 * (box.lo[d] + box.hi[d]);
        evals.push_back(evaluate(config, bv));
    } else {
        std::vector<std::size_t> idx(dim, 0);
        while (true) {
            std::vector<double> bv(dim);
            for (std::size_t d = 0; d < dim; ++d)
                bv[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * double(idx[d]) / double(steps - 1);
            evals.push_back(evaluate(config, bv));
            std::size_t d = 0;
            for (; d < dim; ++d) {
                if (++idx[d] < std::size_t(steps)) break;
                idx[d] = 0;
            }
            if (d == dim) break;
        }
    }
    const SearchEval* best = nullptr;
    for (const auto& e : evals)
        if (e.ok && (!best || e.area > best->area)) best = &e;
    if (!best) throw AllSolvesFailed("no boundary-value sample produced a feasible solution");

    std::vector<double> best_bv = best->bv;
    double best_area = best->area;

    if (dim == 1) {
        // golden-section around the best coarse sample
        const double step = (box.hi[0] - box.lo[0]) / double(std::max(2, steps) - 1);
        double a = std::max(box.lo[0], best_bv[0] - step);
        double b2 = std::min(box.hi[0], best_bv[0] + step);
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b2 - gr * (b2 - a), d = a + gr * (b2 - a);
        SearchEval fc = evaluate(config, {c}), fd = evaluate(config, {d});
        for (int it = 0; it < box.refine_iters; ++it) {
            if (fc.area >= fd.area) {
                b2 = d;
                d = c;
                fd = fc;
                c = b2 - gr * (b2 - a);
                fc = evaluate(config, {c});
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + gr * (b2 - a);
                fd = evaluate(config, {d});
            }
            if (b2 - a < 1e-10) break;
        }
        const SearchEval& win = fc.area >= fd.area ? fc : fd;
        if (win.ok && win.area > best_area) {
            best_area = win.area;
            best_bv = win.bv;
        }
    } else {
        // deterministic Nelder-Mead seeded at the best coarse sample
        std::vector<SearchEval> simplex;
        simplex.push_back(evaluate(config, best_bv));
        for (std::size_t d = 0; d < dim; ++d) {
            std::vector<double> v = best_bv;
            const double step = 0.25 * (box.hi[d] - box.lo[d]) / double(steps - 1) * 2.0;
            v[d] = std::min(box.hi[d], v[d] + std::max(1e-3, step));
            simplex.push_back(evaluate(config, v));
        }
        auto worse = [](const SearchEval& x, const SearchEval& y) { return x.area > y.area; };
        for (int it = 0; it < box.refine_iters; ++it) {
            std::sort(simplex.begin(), simplex.end(), worse);
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t k = 0; k + 1 < simplex.size(); ++k)
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[k].bv[d] / double(dim);
            auto point = [&](double coef) {
                std::vector<double> v(dim);
                for (std::size_t d = 0; d < dim; ++d) {
                    v[d] = centroid[d] + coef * (centroid[d] - simplex.back().bv[d]);
                    v[d] = std::min(box.hi[d], std::max(box.lo[d], v[d]));
                }
                return v;
            };
            SearchEval refl = evaluate(config, point(1.0));
            if (refl.area > simplex.front().area) {
                SearchEval exp2 = evaluate(config, point(2.0));
                simplex.back() = exp2.area > refl.area ? exp2 : refl;
            } else if (refl.area > simplex[simplex.size() - 2].area) {
                simplex.back() = refl;
            } else {
                SearchEval contr = evaluate(config, point(-0.5));
                if (contr.area > simplex.back().area) {
                    simplex.back() = contr;
                } else {
                    for (std::size_t k = 1; k < simplex.size(); ++k) {
                        std::vector<double> v(dim);
                        for (std::size_t d = 0; d < dim; ++d)
                            v[d] = 0.5 * (simplex[k].bv[d] + simplex[0].bv[d]);
                        simplex[k] = evaluate(config, v);
                    }
                }
            }
            double spread = 0.0;
            for (std::size_t d = 0; d < dim; ++d)
                spread = std::max(spread,
                                  std::abs(simplex.front().bv[d] - simplex.back().bv[d]));
            if (spread < 1e-9) break;
        }
        std::sort(simplex.begin(), simplex.end(), worse);
        if (simplex.front().ok && simplex.front().area > best_area) {
            best_area = simplex.front().area;
            best_bv = simplex.front().bv;
        }
    }

    SolverConfig cfg = config;
    cfg.boundary_values = best_bv;
    Solution sol = solve_scenario(cfg);
    return {best_bv, std::move(sol)};
}

} // namespace sofa
