#include "sofa/functional.hpp"

#include <algorithm>
#include <cmath>

#include "sofa/errors.hpp"
#include "sofa/quadrature.hpp"

namespace sofa {

namespace {

constexpr double kAssumptionSlack = -1e-9;

Vec2 trajectory_point(double alpha, const RTJet& j) {
    return {j.r * std::cos(alpha), j.t * std::sin(alpha)};
}

struct Polyline {
    std::vector<Vec2> pts;
    std::vector<double> alphas;
};

Polyline sample_curve(const PathFunctions& rt, const std::function<Vec2(double, const RTJet&)>& f,
                      double a, double b, std::size_t n) {
    Polyline p;
    p.pts.reserve(n);
    p.alphas.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double al = a + (b - a) * double(i) / double(n - 1);
        p.pts.push_back(f(al, rt.jet_at(al)));
        p.alphas.push_back(al);
    }
    return p;
}

bool segments_cross(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2, double& s, double& u) {
    const Vec2 d1 = p2 - p1, d2 = q2 - q1;
    const double den = cross(d1, d2);
    if (std::abs(den) < 1e-18) return false;
    const Vec2 w = q1 - p1;
    s = cross(w, d2) / den;
    u = cross(w, d1) / den;
    return s >= -1e-9 && s <= 1.0 + 1e-9 && u >= -1e-9 && u <= 1.0 + 1e-9;
}

struct Crossing {
    double alpha_traj;
    double alpha_env;
};

std::vector<Crossing> polyline_crossings(const Polyline& a, const Polyline& b) {
    std::vector<Crossing> out;
    for (std::size_t i = 0; i + 1 < a.pts.size(); ++i) {
        for (std::size_t j = 0; j + 1 < b.pts.size(); ++j) {
            // quick reject
            if (std::max(a.pts[i].x, a.pts[i + 1].x) < std::min(b.pts[j].x, b.pts[j + 1].x))
                continue;
            if (std::min(a.pts[i].x, a.pts[i + 1].x) > std::max(b.pts[j].x, b.pts[j + 1].x))
                continue;
            if (std::max(a.pts[i].y, a.pts[i + 1].y) < std::min(b.pts[j].y, b.pts[j + 1].y))
                continue;
            if (std::min(a.pts[i].y, a.pts[i + 1].y) > std::max(b.pts[j].y, b.pts[j + 1].y))
                continue;
            double s, u;
            if (segments_cross(a.pts[i], a.pts[i + 1], b.pts[j], b.pts[j + 1], s, u)) {
                out.push_back({a.alphas[i] + s * (a.alphas[i + 1] - a.alphas[i]),
                               b.alphas[j] + u * (b.alphas[j + 1] - b.alphas[j])});
            }
        }
    }
    // merge near-duplicates (shared segment endpoints)
    std::sort(out.begin(), out.end(),
              [](const Crossing& x, const Crossing& y) { return x.alpha_traj < y.alpha_traj; });
    std::vector<Crossing> merged;
    for (const auto& c : out) {
        if (!merged.empty() && std::abs(c.alpha_traj - merged.back().alpha_traj) < 0.02
            && std::abs(c.alpha_env - merged.back().alpha_env) < 0.02)
            continue;
        merged.push_back(c);
    }
    return merged;
}

/// Newton refinement of A(a1) = E(a2) for an envelope evaluator.
Crossing refine_crossing(const PathFunctions& rt, Crossing seed,
                         const std::function<Vec2(double)>& env) {
    auto traj = [&](double al) { return trajectory_point(al, rt.jet_at(al)); };
    double a1 = seed.alpha_traj, a2 = seed.alpha_env;
    const double fd = 1e-6;
    for (int it = 0; it < 60; ++it) {
        const Vec2 f = traj(a1) - env(a2);
        if (std::abs(f.x) + std::abs(f.y) < 1e-13) break;
        const Vec2 dA = (1.0 / (2 * fd)) * (traj(a1 + fd) - traj(a1 - fd));
        const Vec2 dE = (1.0 / (2 * fd)) * (env(a2 + fd) - env(a2 - fd));
        // J = [dA, -dE]
        const double det = dA.x * (-dE.y) - (-dE.x) * dA.y;
        if (std::abs(det) < 1e-14) break;
        const double d1 = (f.x * (-dE.y) - (-dE.x) * f.y) / det;
        const double d2 = (dA.x * f.y - f.x * dA.y) / det;
        a1 -= d1;
        a2 -= d2;
        if (std::abs(d1) + std::abs(d2) < 1e-14) break;
    }
    return {a1, a2};
}

double scalar_root(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (std::abs(fm) < 1e-15 || hi - lo < 1e-15) return mid;
        if ((flo < 0) != (fm < 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

EnvelopeField envelope_field(const PathFunctions& rt) {
    EnvelopeField f;
    f.grid = rt.grid();
    const std::size_t n = rt.size();
    f.ax.resize(n);
    f.ay.resize(n);
    f.abx.resize(n);
    f.aby.resize(n);
    f.acx.resize(n);
    f.acy.resize(n);
    f.apbpx.resize(n);
    f.apbpy.resize(n);
    f.apcpx.resize(n);
    f.apcpy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double al = rt.alpha(i);
        const RTJet j = rt.jet(i);
        const EnvelopeSample e = eval_envelopes(al, j);
        const Vec2 a = trajectory_point(al, j);
        f.ax[i] = a.x;
        f.ay[i] = a.y;
        f.abx[i] = e.e_ab.x;
        f.aby[i] = e.e_ab.y;
        f.acx[i] = e.e_ac.x;
        f.acy[i] = e.e_ac.y;
        f.apbpx[i] = e.e_apbp.x;
        f.apbpy[i] = e.e_apbp.y;
        f.apcpx[i] = e.e_apcp.x;
        f.apcpy[i] = e.e_apcp.y;
    }
    return f;
}

AssumptionFlags check_assumptions(const PathFunctions& rt, bool symmetric_domain) {
    AssumptionFlags a;
    const std::size_t n = rt.size();
    const double rp0 = rt.r1(0);
    const double rppi = symmetric_domain ? -rp0 : rt.r1(n - 1);
    const double rpi = symmetric_domain ? rt.r(0) : rt.r(n - 1);
    const double tpi = symmetric_domain ? rt.t(0) : rt.t(n - 1);
    a.e5_two_rp0 = 2.0 * rp0;
    a.e6_minus_two_rppi = -2.0 * rppi;
    a.e7_apcp_end = -rpi + 2.0 * tpi;
    a.e8_apbp_start = rt.r(0) - 2.0 * rt.t(0);
    a.pass_e5 = a.e5_two_rp0 >= kAssumptionSlack;
    a.pass_e6 = a.e6_minus_two_rppi >= kAssumptionSlack;
    a.pass_e7 = a.e7_apcp_end >= kAssumptionSlack;
    a.pass_e8 = a.e8_apbp_start <= -kAssumptionSlack;
    return a;
}

IntersectionParams find_intersections(const PathFunctions& rt, const ScenarioSpec& spec) {
    IntersectionParams ip;
    const double eps = 1e-4;

    if (spec.kind == Scenario::Car) {
        const double L = rt.grid().b;
        auto line_gap = [&](double al) {
            // signed distance of A ahead of the AC-envelope point along line AC
            const RTJet j = rt.jet_at(al);
            const Vec2 a = trajectory_point(al, j);
            const EnvelopeSample e = eval_envelopes(al, j);
            const CornerPoints pts = eval_points(al, j);
            Vec2 dir = pts.C - a;
            const double nn = norm(dir);
            if (nn < 1e-14) return 0.0;
            return dot(a - e.e_ac, (1.0 / nn) * dir);
        };
        // tangency angle: A(alpha) coincides with the envelope point of its own wall line
        double lo = eps, hi = L - eps;
        double glo = line_gap(lo), ghi = line_gap(hi);
        if ((glo < 0) == (ghi < 0)) {
            // scan for a sign change
            bool found = false;
            double prev = glo, pal = lo;
            for (int k = 1; k <= 400; ++k) {
                double al = lo + (hi - lo) * k / 400.0;
                double g = line_gap(al);
                if ((g < 0) != (prev < 0)) {
                    lo = pal;
                    hi = al;
                    found = true;
                    break;
                }
                prev = g;
                pal = al;
            }
            if (!found) throw NoIntersection("car: trajectory never meets envelope AC");
        }
        const double astar = scalar_root(line_gap, lo, hi);
        ip.a1p = astar;
        ip.a2p = astar;
        // E_ApCp crossing of the half-height ceiling below the junction
        auto apcp_gap = [&](double al) {
            return eval_envelopes(al, rt.jet_at(al)).e_apcp.y - 0.5;
        };
        ip.a5p = *ip.a1p;
        double prev = apcp_gap(eps), pal = eps;
        for (int k = 1; k <= 400; ++k) {
            double al = eps + (*ip.a1p - eps) * k / 400.0;
            double g = apcp_gap(al);
            if ((g < 0) != (prev < 0) && std::max(std::abs(g), std::abs(prev)) > 1e-9) {
                ip.a5p = scalar_root(apcp_gap, pal, al);
                break;
            }
            prev = g;
            pal = al;
        }
        auto apbp_gap = [&](double al) {
            return eval_envelopes(al, rt.jet_at(al)).e_apbp.y - 0.5;
        };
        double g0 = apbp_gap(eps), g1 = apbp_gap(L - eps);
        if ((g0 < 0) != (g1 < 0)) ip.a6p = scalar_root(apbp_gap, eps, L - eps);
        return ip;
    }

    const PathFunctions full = spec.symmetric() ? rt.mirror_extended() : rt;
    auto traj_eval = [&](double al, const RTJet& j) { return trajectory_point(al, j); };
    auto ac_eval = [&](double al, const RTJet& j) { return eval_envelopes(al, j).e_ac; };
    auto ab_eval = [&](double al, const RTJet& j) { return eval_envelopes(al, j).e_ab; };

    const std::size_t ns = std::max<std::size_t>(full.size(), 512);
    const Polyline pa = sample_curve(full, traj_eval, eps, M_PI - eps, ns);
    const Polyline pac = sample_curve(full, ac_eval, eps, M_PI - eps, ns);

    auto ac_env = [&](double al) { return eval_envelopes(al, full.jet_at(al)).e_ac; };
    auto ab_env = [&](double al) { return eval_envelopes(al, full.jet_at(al)).e_ab; };

    std::vector<Crossing> ac_cross;
    for (const auto& c : polyline_crossings(pa, pac))
        if (c.alpha_traj < c.alpha_env) ac_cross.push_back(c);
    if (ac_cross.size() > 1)
        throw MultipleIntersections("trajectory crosses envelope AC more than once");

    if (!ac_cross.empty()) {
        const Crossing c = refine_crossing(full, ac_cross.front(), ac_env);
        ip.a1p = c.alpha_traj;
        ip.a2p = c.alpha_env;
    }

    const bool want_ab = spec.kind == Scenario::AsymC || !spec.symmetric();
    if (want_ab) {
        const Polyline pab = sample_curve(full, ab_eval, eps, M_PI - eps, ns);
        std::vector<Crossing> ab_cross;
        for (const auto& c : polyline_crossings(pa, pab))
            if (c.alpha_traj > c.alpha_env) ab_cross.push_back(c);
        if (ab_cross.size() > 1)
            throw MultipleIntersections("trajectory crosses envelope AB more than once");
        if (!ab_cross.empty()) {
            const Crossing c = refine_crossing(full, ab_cross.front(), ab_env);
            ip.a3p = c.alpha_traj;
            ip.a4p = c.alpha_env;
        }
    }
    if (!ip.a1p && !ip.a3p)
        throw NoIntersection("trajectory does not meet the interior envelopes");
    return ip;
}

IntersectionParams closest_approach(const PathFunctions& rt, const ScenarioSpec& spec) {
    try {
        return find_intersections(rt, spec);
    } catch (const Error&) {
    }
    IntersectionParams ip;
    const double eps = 1e-4;
    if (spec.kind == Scenario::Car) {
        // smallest |gap| of the trajectory along its own wall line
        auto line_gap = [&](double al) {
            const RTJet j = rt.jet_at(al);
            const Vec2 a = trajectory_point(al, j);
            const EnvelopeSample e = eval_envelopes(al, j);
            const CornerPoints pts = eval_points(al, j);
            Vec2 dir = pts.C - a;
            const double nn = norm(dir);
            if (nn < 1e-14) return HUGE_VAL;
            return std::abs(dot(a - e.e_ac, (1.0 / nn) * dir));
        };
        double best = eps, bval = HUGE_VAL;
        for (int k = 0; k <= 600; ++k) {
            const double al = eps + (rt.grid().b - 2 * eps) * k / 600.0;
            const double v = line_gap(al);
            if (v < bval) {
                bval = v;
                best = al;
            }
        }
        ip.a1p = best;
        ip.a2p = best;
        ip.a5p = best;
        return ip;
    }
    const PathFunctions full = spec.symmetric() ? rt.mirror_extended() : rt;
    auto traj = [&](double al) { return trajectory_point(al, full.jet_at(al)); };
    auto nearest_pair = [&](auto env, double t_lo, double t_hi, double e_lo, double e_hi) {
        const int ns = 400;
        std::vector<Vec2> ta(ns + 1), ea(ns + 1);
        for (int k = 0; k <= ns; ++k) {
            ta[k] = traj(t_lo + (t_hi - t_lo) * k / ns);
            ea[k] = env(e_lo + (e_hi - e_lo) * k / ns);
        }
        double best = HUGE_VAL;
        int bi = 0, bj = 0;
        for (int i = 0; i <= ns; ++i)
            for (int j = 0; j <= ns; ++j) {
                const Vec2 d = ta[i] - ea[j];
                const double v = d.x * d.x + d.y * d.y;
                if (v < best) {
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        double a1 = t_lo + (t_hi - t_lo) * bi / ns;
        double a2 = e_lo + (e_hi - e_lo) * bj / ns;
        // alternating parabolic refinement
        auto dist2 = [&](double x1, double x2) {
            const Vec2 d = traj(x1) - env(x2);
            return d.x * d.x + d.y * d.y;
        };
        double h1 = (t_hi - t_lo) / ns, h2 = (e_hi - e_lo) / ns;
        for (int it = 0; it < 24; ++it) {
            {
                const double fm = dist2(a1 - h1, a2), f0 = dist2(a1, a2), fp = dist2(a1 + h1, a2);
                const double den = fm - 2 * f0 + fp;
                if (std::abs(den) > 1e-30) a1 -= h1 * 0.5 * (fp - fm) / den;
                a1 = std::min(t_hi, std::max(t_lo, a1));
            }
            {
                const double fm = dist2(a1, a2 - h2), f0 = dist2(a1, a2), fp = dist2(a1, a2 + h2);
                const double den = fm - 2 * f0 + fp;
                if (std::abs(den) > 1e-30) a2 -= h2 * 0.5 * (fp - fm) / den;
                a2 = std::min(e_hi, std::max(e_lo, a2));
            }
            h1 *= 0.5;
            h2 *= 0.5;
        }
        return std::make_pair(a1, a2);
    };
    auto ac_env = [&](double al) { return eval_envelopes(al, full.jet_at(al)).e_ac; };
    const auto [a1, a2] = nearest_pair(ac_env, eps, M_PI / 2, M_PI / 2, M_PI - eps);
    ip.a1p = a1;
    ip.a2p = a2;
    if (spec.kind == Scenario::AsymC) {
        auto ab_env = [&](double al) { return eval_envelopes(al, full.jet_at(al)).e_ab; };
        const auto [a3, a4] = nearest_pair(ab_env, M_PI / 2, M_PI - eps, eps, M_PI / 2);
        ip.a3p = a3;
        ip.a4p = a4;
    }
    return ip;
}

namespace {

struct GArrays {
    std::vector<double> g_a, g_ab, g_ac, g_apbp, g_apcp, g_apbp_half, g_apcp_half;
    UniformGrid grid;
};

GArrays g_arrays(const PathFunctions& rt, bool with_half) {
    const EnvelopeField f = envelope_field(rt);
    DerivativeStencils st(f.grid);
    const std::size_t n = f.grid.n;
    GArrays g;
    g.grid = f.grid;
    g.g_a.resize(n);
    g.g_ab.resize(n);
    g.g_ac.resize(n);
    g.g_apbp.resize(n);
    g.g_apcp.resize(n);
    if (with_half) {
        g.g_apbp_half.resize(n);
        g.g_apcp_half.resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double dax = st.d1(f.ax, i);
        const double dabx = st.d1(f.abx, i);
        const double dacx = st.d1(f.acx, i);
        const double dapbpx = st.d1(f.apbpx, i);
        const double dapcpx = st.d1(f.apcpx, i);
        g.g_a[i] = f.ay[i] * dax;
        g.g_ab[i] = f.aby[i] * dabx;
        g.g_ac[i] = f.acy[i] * dacx;
        g.g_apbp[i] = f.apbpy[i] * dapbpx;
        g.g_apcp[i] = f.apcpy[i] * dapcpx;
        if (with_half) {
            g.g_apbp_half[i] = (f.apbpy[i] - 0.5) * dapbpx;
            g.g_apcp_half[i] = (f.apcpy[i] - 0.5) * dapcpx;
        }
    }
    return g;
}

void require_assumptions(const AssumptionFlags& a) {
    if (!a.pass_e5) throw AssumptionViolated("Eq 5 fails: 2 r'(0) < 0");
    if (!a.pass_e6) throw AssumptionViolated("Eq 6 fails: -2 r'(pi) < 0");
    if (!a.pass_e7) throw AssumptionViolated("Eq 7 fails: -r(pi) + 2 t(pi) < 0");
    if (!a.pass_e8) throw AssumptionViolated("Eq 8 fails: r(0) - 2 t(0) > 0");
}

} // namespace

AreaReport area_symmetric(const PathFunctions& rt, const IntersectionParams& ip) {
    AreaReport rep;
    rep.assumptions = check_assumptions(rt, /*symmetric_domain=*/true);
    require_assumptions(rep.assumptions);
    const GArrays g = g_arrays(rt, false);
    const double L = rt.grid().b;
    double area = -2.0 * rt.r(0) + 4.0 * rt.t(0);
    area += 2.0 * integrate_samples(g.g_apbp, g.grid, 0.0, L) * -1.0;
    area += 2.0 * integrate_samples(g.g_apcp, g.grid, 0.0, L) * -1.0;
    const double a1p = ip.a1p.value_or(0.0);
    area += 2.0 * integrate_samples(g.g_a, g.grid, a1p, L);
    if (ip.a2p) area -= 2.0 * integrate_samples(g.g_ab, g.grid, 0.0, M_PI - *ip.a2p);
    rep.area = area;
    return rep;
}

AreaReport area_general(const PathFunctions& rt, const IntersectionParams& ip) {
    AreaReport rep;
    rep.assumptions = check_assumptions(rt, /*symmetric_domain=*/false);
    require_assumptions(rep.assumptions);
    const GArrays g = g_arrays(rt, false);
    double area = -rt.r(0) + 2.0 * rt.t(0) - rt.r(rt.size() - 1) + 2.0 * rt.t(rt.size() - 1);
    area -= integrate_samples(g.g_apbp, g.grid, 0.0, M_PI);
    area -= integrate_samples(g.g_apcp, g.grid, 0.0, M_PI);
    if (ip.a1p) {
        area += integrate_samples(g.g_a, g.grid, *ip.a1p, M_PI - *ip.a1p);
        area -= integrate_samples(g.g_ab, g.grid, 0.0, M_PI - *ip.a2p);
        area -= integrate_samples(g.g_ac, g.grid, *ip.a2p, M_PI);
    } else {
        area += integrate_samples(g.g_a, g.grid, 0.0, M_PI);
    }
    rep.area = area;
    return rep;
}

AreaReport area_asym(const PathFunctions& rt, const IntersectionParams& ip, char variant) {
    AreaReport rep;
    rep.assumptions = check_assumptions(rt, /*symmetric_domain=*/false);
    require_assumptions(rep.assumptions);
    if (variant == 'a' && (ip.a1p || ip.a3p))
        throw ScenarioMismatch("variant (a) expects no trajectory/envelope intersections");
    if (variant == 'b' && (!ip.a1p || ip.a3p))
        throw ScenarioMismatch("variant (b) expects an AC-side intersection only");
    if (variant == 'c' && (!ip.a1p || !ip.a3p))
        throw ScenarioMismatch("variant (c) expects intersections on both sides");

    const GArrays g = g_arrays(rt, false);
    double area = -rt.r(0) + 2.0 * rt.t(0) - rt.r(rt.size() - 1) + 2.0 * rt.t(rt.size() - 1);
    area -= integrate_samples(g.g_apbp, g.grid, 0.0, M_PI);
    area -= integrate_samples(g.g_apcp, g.grid, 0.0, M_PI);
    switch (variant) {
        case 'a':
            area += integrate_samples(g.g_a, g.grid, 0.0, M_PI);
            break;
        case 'b':
            area += integrate_samples(g.g_a, g.grid, *ip.a1p, M_PI);
            area -= integrate_samples(g.g_ac, g.grid, *ip.a2p, M_PI);
            break;
        case 'c':
            area += integrate_samples(g.g_a, g.grid, *ip.a1p, *ip.a3p);
            area -= integrate_samples(g.g_ab, g.grid, 0.0, *ip.a4p);
            area -= integrate_samples(g.g_ac, g.grid, *ip.a2p, M_PI);
            break;
        default:
            throw Error("unknown asymmetric variant");
    }
    rep.area = area;
    return rep;
}

AreaReport area_car(const PathFunctions& rt, const IntersectionParams& ip) {
    AreaReport rep;
    rep.assumptions = check_assumptions(rt, /*symmetric_domain=*/true);
    const double L = rt.grid().b;
    const double ay_mid = rt.t(rt.size() - 1); // A_y at alpha = pi/2
    if (ay_mid > 0.5 + 1e-9)
        throw ClosedSofaViolation("A_y(pi/2) exceeds 1/2; no closed ambidextrous sofa");
    const GArrays g = g_arrays(rt, true);
    const double a1p = ip.a1p.value_or(0.0);
    const double a2p = ip.a2p.value_or(L);
    const double a5p = ip.a5p.value_or(a1p);
    double core = 0.0;
    core -= integrate_samples(g.g_ab, g.grid, 0.0, L);
    core -= integrate_samples(g.g_apbp_half, g.grid, 0.0, L);
    core -= integrate_samples(g.g_apcp_half, g.grid, a5p, L);
    core += integrate_samples(g.g_a, g.grid, a1p, L);
    core -= integrate_samples(g.g_ac, g.grid, a2p, L);
    rep.area = -2.0 * rt.r(0) + 4.0 * rt.t(0) + 4.0 * core;
    return rep;
}

AreaReport scenario_area(const PathFunctions& rt, const IntersectionParams& ip,
                         const ScenarioSpec& spec) {
    switch (spec.kind) {
        case Scenario::GerverSym:
        case Scenario::ConstrainedSym:
            return area_symmetric(rt, ip);
        case Scenario::AsymA:
            return area_asym(rt, ip, 'a');
        case Scenario::AsymB:
            return area_asym(rt, ip, 'b');
        case Scenario::AsymC:
            return area_asym(rt, ip, 'c');
        case Scenario::Car:
            return area_car(rt, ip);
    }
    throw Error("unreachable");
}

double area_of_path(const PathFunctions& rt, const ScenarioSpec& spec) {
    IntersectionParams ip;
    try {
        ip = find_intersections(rt, spec);
    } catch (const NoIntersection&) {
    }
    return scenario_area(rt, ip, spec).area;
}

} // namespace sofa
