#include "sofa/el_residuals.hpp"

#include <cmath>

#include "sofa/errors.hpp"
#include "sofa/functional.hpp"

namespace sofa {

namespace {

struct Trig {
    double ca, sa, ch, sh, c2a, s2a, c32, s32;
    explicit Trig(double al)
        : ca(std::cos(al)), sa(std::sin(al)), ch(std::cos(al / 2)), sh(std::sin(al / 2)),
          c2a(std::cos(2 * al)), s2a(std::sin(2 * al)), c32(std::cos(3 * al / 2)),
          s32(std::sin(3 * al / 2)) {}
};

// Eq 15 brackets (ODE1 = -(1/2) cos a * bracket)
double b15_1(const Trig& q, const RTJet& j) {
    return -q.ch - 2 * (-3 * q.ca + q.c2a) * j.r + q.sh + 2 * (-3 * q.ca + q.c2a) * j.t
           + 12 * q.sa * j.r1 - 3 * q.s2a * j.r1 - 6 * q.sa * j.t1 + 3 * q.s2a * j.t1
           + j.r2 - 6 * q.ca * j.r2 + q.c2a * j.r2 + j.t2 - q.c2a * j.t2;
}
double b15_2(const Trig& q, const RTJet& j) {
    return -q.ch - 2 * (-3 * q.ca + q.c2a) * j.r + q.sh + 2 * (-2 * q.ca + q.c2a) * j.t
           + 12 * q.sa * j.r1 - 3 * q.s2a * j.r1 - 4 * q.sa * j.t1 + 3 * q.s2a * j.t1
           + j.r2 - 6 * q.ca * j.r2 + q.c2a * j.r2 + j.t2 - q.c2a * j.t2;
}
double b15_3(const Trig& q, const RTJet& j) {
    return -q.ch + 4 * q.ca * j.r + q.sh - 2 * q.ca * j.t + 8 * q.sa * j.r1 - 2 * q.sa * j.t1
           - 4 * q.ca * j.r2;
}
// Eq 16 brackets (ODE2 = (1/2) sin a * bracket)
double b16_1(const Trig& q, const RTJet& j) {
    return q.ch + q.sh + 2 * j.r * (3 * q.sa + q.s2a) - 2 * (3 * q.sa + q.s2a) * j.t
           + j.r1 - 6 * q.ca * j.r1 - 3 * q.c2a * j.r1 + j.t1 + 12 * q.ca * j.t1
           + 3 * q.c2a * j.t1 - q.s2a * j.r2 + 6 * q.sa * j.t2 + q.s2a * j.t2;
}
double b16_2(const Trig& q, const RTJet& j) {
    return q.ch + q.sh + 4 * (1 + q.ca) * j.r * q.sa - 2 * (3 * q.sa + q.s2a) * j.t
           + j.r1 - 4 * q.ca * j.r1 - 3 * q.c2a * j.r1 + j.t1 + 12 * q.ca * j.t1
           + 3 * q.c2a * j.t1 - q.s2a * j.r2 + 6 * q.sa * j.t2 + q.s2a * j.t2;
}
double b16_3(const Trig& q, const RTJet& j) {
    return q.ch + q.sh + 2 * j.r * q.sa - 4 * q.sa * j.t - 2 * q.ca * j.r1 + 8 * q.ca * j.t1
           + 4 * q.sa * j.t2;
}

// Eq 31 extra brackets for the asymmetric (c) system
double b31_2(const Trig& q, const RTJet& j) { // {ApBp, ApCp} only
    return -q.ch + 4 * q.ca * j.r + q.sh - 4 * q.ca * j.t + 8 * q.sa * j.r1 - 4 * q.sa * j.t1
           - 4 * q.ca * j.r2;
}
double b31_4(const Trig& q, const RTJet& j) { // + trajectory + AC
    return -q.ch + 2 * (3 * q.ca + q.c2a) * j.r + q.sh - 2 * (2 * q.ca + q.c2a) * j.t
           + 12 * q.sa * j.r1 + 3 * q.s2a * j.r1 - 4 * q.sa * j.t1 - 3 * q.s2a * j.t1
           - j.r2 - 6 * q.ca * j.r2 - q.c2a * j.r2 - j.t2 + q.c2a * j.t2;
}
double b31_5(const Trig& q, const RTJet& j) { // + AC only
    return -q.ch + 2 * (3 * q.ca + q.c2a) * j.r + q.sh - 2 * (3 * q.ca + q.c2a) * j.t
           + 12 * q.sa * j.r1 + 3 * q.s2a * j.r1 - 6 * q.sa * j.t1 - 3 * q.s2a * j.t1
           - j.r2 - 6 * q.ca * j.r2 - q.c2a * j.r2 - j.t2 + q.c2a * j.t2;
}
double b32_2(const Trig& q, const RTJet& j) {
    return q.ch + q.sh + 4 * j.r * q.sa - 4 * q.sa * j.t - 4 * q.ca * j.r1 + 8 * q.ca * j.t1
           + 4 * q.sa * j.t2;
}
double b32_4(const Trig& q, const RTJet& j) {
    return q.ch + q.sh + j.r * (4 * q.sa - 2 * q.s2a) + 2 * (-3 * q.sa + q.s2a) * j.t
           - j.r1 - 4 * q.ca * j.r1 + 3 * q.c2a * j.r1 - j.t1 + 12 * q.ca * j.t1
           - 3 * q.c2a * j.t1 + q.s2a * j.r2 + 6 * q.sa * j.t2 - q.s2a * j.t2;
}
double b32_5(const Trig& q, const RTJet& j) {
    return q.ch + q.sh - 2 * j.r * (-3 * q.sa + q.s2a) + 2 * (-3 * q.sa + q.s2a) * j.t
           - j.r1 - 6 * q.ca * j.r1 + 3 * q.c2a * j.r1 - j.t1 + 12 * q.ca * j.t1
           - 3 * q.c2a * j.t1 + q.s2a * j.r2 + 6 * q.sa * j.t2 - q.s2a * j.t2;
}

// car brackets (Eqs 33/34; Eqs 35/36 are branches 1 and 4)
double b33_1(const Trig& q, const RTJet& j) {
    return 1 + 8 * j.r * q.s32 - 8 * q.s32 * j.t + 4 * q.ch * j.r1 - 12 * q.c32 * j.r1
           + 4 * q.ch * j.t1 + 12 * q.c32 * j.t1 + 4 * q.sh * j.r2 - 4 * q.s32 * j.r2
           + 4 * q.sh * j.t2 + 4 * q.s32 * j.t2;
}
double b33_4(const Trig& q, const RTJet& j) {
    return -q.ch + 8 * q.ca * j.r + q.sh - 6 * q.ca * j.t + 16 * q.sa * j.r1 - 6 * q.sa * j.t1
           - 8 * q.ca * j.r2;
}
double b34_1(const Trig& q, const RTJet& j) {
    return q.ch + 4 * j.r * (q.sa + q.s2a) - 4 * (q.sa + q.s2a) * j.t + 2 * j.r1
           - 4 * q.ca * j.r1 - 6 * q.c2a * j.r1 + 2 * j.t1 + 8 * q.ca * j.t1
           + 6 * q.c2a * j.t1 - 2 * q.s2a * j.r2 + 4 * q.sa * j.t2 + 2 * q.s2a * j.t2;
}
double b34_4(const Trig& q, const RTJet& j) {
    return q.ch + q.sh + 6 * j.r * q.sa - 8 * q.sa * j.t - 6 * q.ca * j.r1 + 16 * q.ca * j.t1
           + 8 * q.sa * j.t2;
}

double g1_value(double alpha, const RTJet& j, double r_at0) {
    return std::cos(alpha) * j.r + std::sin(alpha) * std::tan(alpha / 2) * j.t - r_at0;
}
double g2_value(double alpha, const RTJet& j, double r_atpi) {
    const double ch = std::cos(alpha / 2);
    return -r_atpi - std::cos(alpha) * j.r + 2.0 * ch * ch * j.t;
}

} // namespace

Resid2 residual_sym_gerver(double alpha, const RTJet& j, const IntersectionParams& ip) {
    if (!ip.a1p || !ip.a2p)
        throw BranchUndefined("symmetric residuals need intersection parameters a1p, a2p");
    const Trig q(alpha);
    const double a1p = *ip.a1p, brk2 = M_PI - *ip.a2p;
    double b1, b2;
    if (alpha <= a1p) {
        b1 = b15_1(q, j);
        b2 = b16_1(q, j);
    } else if (alpha <= brk2) {
        b1 = b15_2(q, j);
        b2 = b16_2(q, j);
    } else {
        b1 = b15_3(q, j);
        b2 = b16_3(q, j);
    }
    return {-0.5 * q.ca * b1, 0.5 * q.sa * b2};
}

Resid2 residual_sym_gerver(const PathFunctions& rt, const IntersectionParams& ip, double alpha) {
    return residual_sym_gerver(alpha, rt.jet_at(alpha), ip);
}

std::array<double, 3> residual_boundary_sym(const PathFunctions& rt) {
    const std::size_t n = rt.size();
    return {rt.r1(n - 1), rt.t1(n - 1),
            -0.5 + 2.0 * rt.r(0) - 2.0 * rt.t(0) - 2.0 * rt.r2(0)};
}

Resid4 residual_sym_constrained(double alpha, const RTJet& j, double l1, double l2,
                                double r_at0, double r_atpi) {
    const Trig q(alpha);
    Resid4 res;
    res.ode1 = -q.ch + 4 * q.ca * j.r + q.sh - 2 * q.ca * j.t - 2 * l1 + 2 * l2
               + 8 * q.sa * j.r1 - 2 * q.sa * j.t1 - 4 * q.ca * j.r2;
    res.ode2 = q.ch - q.c32 + q.sh + 4 * j.r * q.sa * q.sa + q.s32 - 8 * q.sa * q.sa * j.t
               + 4 * l1 - 4 * q.ca * l1 + 4 * l2 + 4 * q.ca * l2 - 2 * q.s2a * j.r1
               + 8 * q.s2a * j.t1 + 4 * j.t2 - 4 * q.c2a * j.t2;
    res.ode3 = l1 * g1_value(alpha, j, r_at0);
    res.ode4 = l2 * g2_value(alpha, j, r_atpi);
    return res;
}

Resid4 residual_sym_constrained(const PathFunctions& rt, const MultiplierField& mult,
                                double alpha) {
    const double h = rt.h();
    const std::size_t i = std::min<std::size_t>(
        rt.size() - 1, std::size_t(std::lround((alpha - rt.grid().a) / h)));
    return residual_sym_constrained(alpha, rt.jet_at(alpha), mult.lambda1[i], mult.lambda2[i],
                                    rt.r(0), rt.r(0));
}

Resid4 residual_asym(double alpha, const RTJet& j, double l1, double l2,
                     const IntersectionParams& ip, char variant, double r_at0, double r_atpi) {
    const Trig q(alpha);
    Resid4 res;
    res.ode3 = l1 * g1_value(alpha, j, r_at0);
    res.ode4 = l2 * g2_value(alpha, j, r_atpi);
    if (variant == 'a') {
        // Eqs 24-25 carry the -(cos a)/2 and 1/4 prefactors in print
        const double c20 = -q.ch + 4 * q.ca * j.r + q.sh - 2 * q.ca * j.t - 2 * l1 + 2 * l2
                           + 8 * q.sa * j.r1 - 2 * q.sa * j.t1 - 4 * q.ca * j.r2;
        const double c21 = q.ch - q.c32 + q.sh + 4 * j.r * q.sa * q.sa + q.s32
                           - 8 * q.sa * q.sa * j.t + 4 * l1 - 4 * q.ca * l1 + 4 * l2
                           + 4 * q.ca * l2 - 2 * q.s2a * j.r1 + 8 * q.s2a * j.t1 + 4 * j.t2
                           - 4 * q.c2a * j.t2;
        res.ode1 = -0.5 * q.ca * c20;
        res.ode2 = 0.25 * c21;
        return res;
    }
    if (variant == 'b') {
        if (!ip.a1p || !ip.a2p) throw BranchUndefined("variant (b) needs a1p, a2p");
        double b1, b2;
        if (alpha <= *ip.a1p) {
            b1 = b31_2(q, j) + 2 * l2; // no trajectory term yet
            b2 = q.sa * 0.5 * b32_2(q, j) + l2 + q.ca * l2;
        } else if (alpha <= *ip.a2p) {
            b1 = b15_3(q, j) + 2 * l2;
            b2 = q.sa * 0.5 * b16_3(q, j) + l2 + q.ca * l2;
        } else {
            b1 = b31_4(q, j) + 2 * l2;
            b2 = q.sa * 0.5 * b32_4(q, j) + l2 + q.ca * l2;
        }
        res.ode1 = b1;
        res.ode2 = b2;
        return res;
    }
    if (variant == 'c') {
        if (!ip.a1p || !ip.a2p || !ip.a3p || !ip.a4p)
            throw BranchUndefined("variant (c) needs all four intersection parameters");
        // composition-driven branch selection (valid for either breakpoint order)
        const bool ab_on = alpha <= *ip.a4p;
        const bool a_on = alpha > *ip.a1p && alpha <= *ip.a3p;
        const bool ac_on = alpha > *ip.a2p;
        double b1 = b31_2(q, j), b2 = b32_2(q, j);
        if (ab_on) {
            b1 += b15_1(q, j) - b31_2(q, j);
            b2 += b16_1(q, j) - b32_2(q, j);
        }
        if (a_on) {
            b1 += b15_3(q, j) - b31_2(q, j);
            b2 += b16_3(q, j) - b32_2(q, j);
        }
        if (ac_on) {
            b1 += b31_5(q, j) - b31_2(q, j);
            b2 += b32_5(q, j) - b32_2(q, j);
        }
        res.ode1 = -0.5 * q.ca * b1;
        res.ode2 = 0.5 * q.sa * b2;
        return res;
    }
    throw Error("unknown asymmetric variant");
}

Resid4 residual_asym(const PathFunctions& rt, const MultiplierField& mult,
                     const IntersectionParams& ip, double alpha, char variant) {
    const double h = rt.h();
    const std::size_t i = std::min<std::size_t>(
        rt.size() - 1, std::size_t(std::lround((alpha - rt.grid().a) / h)));
    const double l1 = mult.lambda1.empty() ? 0.0 : mult.lambda1[i];
    const double l2 = mult.lambda2.empty() ? 0.0 : mult.lambda2[i];
    return residual_asym(alpha, rt.jet_at(alpha), l1, l2, ip, variant, rt.r(0),
                         rt.r(rt.size() - 1));
}

Resid2 residual_car(double alpha, const RTJet& j, const IntersectionParams& ip, bool simplified) {
    const Trig q(alpha);
    if (simplified) {
        if (!ip.a1p) throw BranchUndefined("simplified car residuals need the breakpoint 2 beta");
        if (alpha <= *ip.a1p) return {b33_1(q, j), b34_1(q, j)};
        return {b33_4(q, j), b34_4(q, j)};
    }
    if (!ip.a1p || !ip.a2p)
        throw BranchUndefined("car residuals need intersection parameters");
    const double a5p = ip.a5p.value_or(*ip.a1p);
    if (alpha <= a5p) return {b33_1(q, j), b34_1(q, j)};
    if (alpha <= *ip.a1p) return {b15_1(q, j), b16_1(q, j)};
    if (alpha <= *ip.a2p) return {b15_2(q, j), b16_2(q, j)};
    return {b33_4(q, j), b34_4(q, j)};
}

Resid2 residual_car(const PathFunctions& rt, const IntersectionParams& ip, double alpha,
                    bool simplified) {
    return residual_car(alpha, rt.jet_at(alpha), ip, simplified);
}

std::vector<double> continuity_residuals(const PathFunctions& rt, const IntersectionParams& ip) {
    std::vector<double> bps;
    for (const auto& v : {ip.a1p, ip.a2p, ip.a3p, ip.a4p, ip.a5p, ip.a6p})
        if (v && *v > rt.grid().a + 6 * rt.h() && *v < rt.grid().b - 6 * rt.h())
            bps.push_back(*v);
    std::vector<double> out;
    const double d = 2.5 * rt.h();
    for (double bp : bps) {
        const RTJet left = rt.jet_at(bp - d);
        const RTJet right = rt.jet_at(bp + d);
        // compare one-sided quadratic extrapolations to bp
        auto extrap = [&](const RTJet& a, double dx) {
            return RTJet{a.r + a.r1 * dx + 0.5 * a.r2 * dx * dx,
                         a.t + a.t1 * dx + 0.5 * a.t2 * dx * dx,
                         a.r1 + a.r2 * dx, a.t1 + a.t2 * dx, a.r2, a.t2};
        };
        const RTJet l = extrap(left, d), r = extrap(right, -d);
        out.push_back(std::abs(l.r - r.r));
        out.push_back(std::abs(l.t - r.t));
        out.push_back(std::abs(l.r1 - r.r1));
        out.push_back(std::abs(l.t1 - r.t1));
    }
    return out;
}

double second_variation(const PathFunctions& rt, const ScenarioSpec& spec,
                        const std::vector<double>& eta, const std::vector<double>& xi,
                        double* first_variation) {
    const std::size_t n = rt.size();
    if (eta.size() != n || xi.size() != n)
        throw PerturbationInadmissible("perturbation size does not match the grid");
    if (spec.symmetric()) {
        // perturbations must respect r'(L) = t'(L) = 0
        PathFunctions p(rt.grid(), eta, xi);
        if (std::abs(p.r1(n - 1)) > 1e-8 || std::abs(p.t1(n - 1)) > 1e-8)
            throw PerturbationInadmissible("perturbation violates the symmetry conditions");
    }
    auto area_eps = [&](double eps) {
        std::vector<double> rv(n), tv(n);
        for (std::size_t i = 0; i < n; ++i) {
            rv[i] = rt.r(i) + eps * eta[i];
            tv[i] = rt.t(i) + eps * xi[i];
        }
        return area_of_path(PathFunctions(rt.grid(), std::move(rv), std::move(tv)), spec);
    };
    auto d2_at = [&](double h) {
        const double f0 = area_eps(0.0);
        const double fp = area_eps(h), fm = area_eps(-h);
        const double fp2 = area_eps(2 * h), fm2 = area_eps(-2 * h);
        if (first_variation)
            *first_variation = (fm2 - 8 * fm + 8 * fp - fp2) / (12 * h);
        return (-fp2 + 16 * fp - 30 * f0 + 16 * fm - fm2) / (12 * h * h);
    };
    const double h = 1e-3;
    const double c1 = d2_at(h), c2 = d2_at(h / 2);
    return c2 + (c2 - c1) / 15.0; // Richardson on the O(h^4) stencil
}

} // namespace sofa
