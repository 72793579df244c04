#include "sofa/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "sofa/el_residuals.hpp"
#include "sofa/errors.hpp"
#include "sofa/toml_lite.hpp"

namespace sofa {

namespace {

/// Second-order dual number: value and two derivatives w.r.t. one variable.
struct Jet2 {
    double v = 0.0, d = 0.0, dd = 0.0;
};

Jet2 operator+(Jet2 a, Jet2 b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
Jet2 operator-(Jet2 a, Jet2 b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
Jet2 operator+(Jet2 a, double c) { return {a.v + c, a.d, a.dd}; }
Jet2 operator+(double c, Jet2 a) { return a + c; }
Jet2 operator-(Jet2 a, double c) { return {a.v - c, a.d, a.dd}; }
Jet2 operator-(double c, Jet2 a) { return {c - a.v, -a.d, -a.dd}; }
Jet2 operator-(Jet2 a) { return {-a.v, -a.d, -a.dd}; }
Jet2 operator*(Jet2 a, Jet2 b) {
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
Jet2 operator*(double c, Jet2 a) { return {c * a.v, c * a.d, c * a.dd}; }
Jet2 operator*(Jet2 a, double c) { return c * a; }
Jet2 operator/(Jet2 a, Jet2 b) {
    const double w = a.v / b.v;
    const double wd = (a.d - w * b.d) / b.v;
    const double wdd = (a.dd - 2.0 * wd * b.d - w * b.dd) / b.v;
    return {w, wd, wdd};
}
Jet2 jsin(Jet2 a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {s, c * a.d, c * a.dd - s * a.d * a.d};
}
Jet2 jcos(Jet2 a) {
    const double s = std::sin(a.v), c = std::cos(a.v);
    return {c, -s * a.d, -s * a.dd - c * a.d * a.d};
}

struct JetPoint {
    Jet2 x, y;
};

/// Romik-frame piece trajectories in the Romik time t (alpha / 2).
JetPoint piece_x1(Jet2 t, double a1, double a2, double k11, double k12) {
    const Jet2 st = jsin(t), ct = jcos(t);
    const Jet2 u = a1 * st - a2 * ct - 0.5;
    const Jet2 w = a2 * st + a1 * ct - 1.0;
    return {k11 - st * u + ct * w, k12 + ct * u + st * w};
}
JetPoint piece_x2(Jet2 t, double b1, double b2, double k21, double k22) {
    const Jet2 st = jsin(t), ct = jcos(t);
    const Jet2 P = b1 * t + b2 - t * t * 0.25;
    const Jet2 Q = -1.0 * b1 + t * 0.5 - 1.0;
    return {k21 + P * ct + Q * (-st), k22 + P * st + Q * ct};
}
JetPoint piece_x3(Jet2 t, double c1, double c2, double k31, double k32) {
    const Jet2 st = jsin(t), ct = jcos(t);
    return {k31 - (c2 + t) * st + (c1 - t) * ct, k32 + (c1 - t) * st + (c2 + t) * ct};
}
JetPoint piece_x4(Jet2 t, double d1, double d2, double k41, double k42) {
    const Jet2 st = jsin(t), ct = jcos(t);
    const Jet2 P = d1 * t + d2 - t * t * 0.25;
    const Jet2 Q = d1 - t * 0.5 - 1.0;
    return {k41 - P * st + Q * ct, k42 + P * ct + Q * st};
}
JetPoint piece_x5(Jet2 t, double e1, double e2, double k51, double k52) {
    const Jet2 st = jsin(t), ct = jcos(t);
    const Jet2 u = e1 * st - e2 * ct - 1.0;
    const Jet2 w = e2 * st + e1 * ct - 0.5;
    return {k51 - st * u + ct * w, k52 + ct * u + st * w};
}
JetPoint piece_x6(Jet2 t, double f1, double f2, double k61, double k62) {
    const Jet2 st = jsin(t), ct = jcos(t);
    const Jet2 s4 = jsin(t * 0.5), c4 = jcos(t * 0.5);
    const Jet2 u = s4 * f1 - c4 * f2 - 1.0;
    const Jet2 w = c4 * f1 + s4 * f2 - 1.0;
    return {k61 - st * u + ct * w, k62 + ct * u + st * w};
}

JetPoint sofa_piece(Jet2 t, const RomikConstants& c) {
    const double tv = t.v;
    if (tv < c.phi()) return piece_x1(t, c.a1, c.a2, c.kappa[0][0], c.kappa[0][1]);
    if (tv < c.theta()) return piece_x2(t, c.b1, c.b2, c.kappa[1][0], c.kappa[1][1]);
    if (tv <= M_PI / 2 - c.theta()) return piece_x3(t, c.c1, c.c2, c.kappa[2][0], c.kappa[2][1]);
    if (tv <= M_PI / 2 - c.phi()) return piece_x4(t, c.d1, c.d2, c.kappa[3][0], c.kappa[3][1]);
    return piece_x5(t, c.e1, c.e2, c.kappa[4][0], c.kappa[4][1]);
}

JetPoint car_piece(Jet2 t, const RomikConstants& c) {
    if (t.v < c.beta) return piece_x1(t, c.car_a1, c.car_a2, c.car_k11, c.car_k12);
    return piece_x6(t, c.f1, c.f2, c.kappa[5][0], c.kappa[5][1]);
}

JetPoint trajectory_jet(double alpha, const RomikConstants& c, Problem problem) {
    const Jet2 t{alpha / 2, 0.5, 0.0};
    JetPoint p = problem == Problem::Sofa ? sofa_piece(t, c) : car_piece(t, c);
    p.x = p.x + (problem == Problem::Sofa ? c.sofa_translate : c.car_translate);
    return p;
}

RTJet rt_jet_regular(double alpha, const RomikConstants& c, Problem problem) {
    const JetPoint p = trajectory_jet(alpha, c, problem);
    const Jet2 a{alpha, 1.0, 0.0};
    const Jet2 rj = p.x / jcos(a);
    const Jet2 tj = p.y / jsin(a);
    return {rj.v, tj.v, rj.d, tj.d, rj.dd, tj.dd};
}

} // namespace

// --- Gerver constants ------------------------------------------------------

std::array<double, 4> GerverConstants::residuals() const {
    const double cph = std::cos(phi), sph = std::sin(phi);
    const double cth = std::cos(theta), sth = std::sin(theta);
    return {
        A * (cth - cph) - 2 * B * sph + (theta - phi - 1) * cth - sth + cph + sph,
        A * (3 * sth + sph) - 2 * B * cph + 3 * (theta - phi - 1) * sth + 3 * cth - sph + cph,
        A * cph - (sph + 0.5 - 0.5 * cph + B * sph),
        (A + M_PI / 2 - phi - theta) - (B - 0.5 * (theta - phi) * (1 + A)
                                        - 0.25 * (theta - phi) * (theta - phi)),
    };
}

namespace {

/// Dense Gaussian elimination with partial pivoting (small systems only).
void dense_solve(std::vector<double>& a, std::vector<double>& b, int n) {
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i * n + k]) > std::abs(a[piv * n + k])) piv = i;
        if (std::abs(a[piv * n + k]) < 1e-300) throw SingularJacobian("dense solve: zero pivot");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double f = a[i * n + k] / a[k * n + k];
            for (int j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * b[j];
        b[i] = s / a[i * n + i];
    }
}

template <typename F>
std::vector<double> newton_dense(F&& fn, std::vector<double> x, double tol, int max_iter,
                                 const char* what) {
    const int n = int(x.size());
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> f = fn(x);
        double fmax = 0.0;
        for (double v : f) fmax = std::max(fmax, std::abs(v));
        if (fmax < tol) return x;
        std::vector<double> jac(n * n);
        for (int jcol = 0; jcol < n; ++jcol) {
            const double step = 1e-7 * std::max(1.0, std::abs(x[jcol]));
            std::vector<double> xp = x, xm = x;
            xp[jcol] += step;
            xm[jcol] -= step;
            const std::vector<double> fp = fn(xp), fm = fn(xm);
            for (int i = 0; i < n; ++i) jac[i * n + jcol] = (fp[i] - fm[i]) / (2 * step);
        }
        std::vector<double> rhs = f;
        dense_solve(jac, rhs, n);
        for (int i = 0; i < n; ++i) x[i] -= rhs[i];
    }
    throw NoConvergence(std::string(what) + ": Newton did not converge");
}

} // namespace

GerverConstants solve_gerver_constants(std::array<double, 4> guess, double tol, int max_iter) {
    auto fn = [](const std::vector<double>& v) {
        GerverConstants g{v[0], v[1], v[2], v[3]};
        const auto r = g.residuals();
        return std::vector<double>(r.begin(), r.end());
    };
    const auto x = newton_dense(fn, {guess[0], guess[1], guess[2], guess[3]}, tol, max_iter,
                                "gerver constants");
    return {x[0], x[1], x[2], x[3]};
}

// --- constants derivation ---------------------------------------------------

namespace {

Vec2 env_ac_point(double alpha, const RTJet& j) {
    return eval_envelopes(alpha, j).e_ac;
}

} // namespace

RomikConstants solve_romik_constants(const GerverConstants& g) {
    RomikConstants c;
    // sofa system: unknowns a1, b1, b2, k21, k22, c2, k32, Tsh, phi, theta
    auto sofa_res = [](const std::vector<double>& v) {
        const double a1 = v[0], b1 = v[1], b2 = v[2], k21 = v[3], k22 = v[4];
        const double c2 = v[5], k32 = v[6], Tsh = v[7], ph = v[8], th = v[9];
        const double a2 = -0.25, k11 = 1.0 - a1, k12 = 0.25;
        const double c1 = c2 + M_PI / 2, k31 = -Tsh;
        std::vector<double> res;
        const Jet2 tph{ph, 1.0, 0.0}, tth{th, 1.0, 0.0};
        const JetPoint p1 = piece_x1(tph, a1, a2, k11, k12);
        const JetPoint p2a = piece_x2(tph, b1, b2, k21, k22);
        res.push_back(p1.x.v - p2a.x.v);
        res.push_back(p1.y.v - p2a.y.v);
        res.push_back(p1.x.d - p2a.x.d);
        res.push_back(p1.y.d - p2a.y.d);
        const JetPoint p2b = piece_x2(tth, b1, b2, k21, k22);
        const JetPoint p3 = piece_x3(tth, c1, c2, k31, k32);
        res.push_back(p2b.x.v - p3.x.v);
        res.push_back(p2b.y.v - p3.y.v);
        res.push_back(p2b.x.d - p3.x.d);
        res.push_back(p2b.y.d - p3.y.d);
        // junction: A(2 phi) from piece 1 equals E_AC(pi - 2 theta) via the
        // mirrored jets of piece 2 at 2 theta
        const Jet2 a2th{2 * th, 1.0, 0.0};
        const JetPoint q = piece_x2(a2th * 0.5, b1, b2, k21, k22);
        const Jet2 rj = (q.x + Tsh) / jcos(a2th);
        const Jet2 tj = q.y / jsin(a2th);
        const RTJet mirrored{rj.v, tj.v, -rj.d, -tj.d, rj.dd, tj.dd};
        const Vec2 e = env_ac_point(M_PI - 2 * th, mirrored);
        res.push_back(p1.x.v + Tsh - e.x);
        res.push_back(p1.y.v - e.y);
        return res;
    };
    std::vector<double> seed{1.21, -0.53, 0.92, -0.92, 0.47, -0.94, 0.89, 0.61, 0.039, 0.68};
    seed[8] = g.phi;
    seed[9] = g.theta;
    const auto s = newton_dense(sofa_res, seed, 1e-14, 60, "romik sofa constants");

    c.a1 = s[0];
    c.a2 = -0.25;
    c.b1 = s[1];
    c.b2 = s[2];
    c.c1 = s[5] + M_PI / 2;
    c.c2 = s[5];
    c.sofa_translate = s[7];
    c.kappa[0][0] = 1.0 - c.a1;
    c.kappa[0][1] = 0.25;
    c.kappa[1][0] = s[3];
    c.kappa[1][1] = s[4];
    c.kappa[2][0] = -c.sofa_translate;
    c.kappa[2][1] = s[6];
    // mirror identities for pieces 4 and 5
    c.d1 = M_PI / 4 - c.b1;
    c.d2 = c.b1 * M_PI / 2 + c.b2 - M_PI * M_PI / 16;
    c.kappa[3][0] = -c.kappa[1][0] - 2 * c.sofa_translate;
    c.kappa[3][1] = c.kappa[1][1];
    c.e1 = c.a1;
    c.e2 = -c.a2;
    c.kappa[4][0] = -2 * c.sofa_translate - c.kappa[0][0];
    c.kappa[4][1] = c.kappa[0][1];
    c.phi_store = s[8];
    c.theta_store = s[9];

    // car system: for a fixed breakpoint beta the matching and symmetry
    // conditions are linear in (a1, a2, f1, f2, k61, k62, Tc); the breakpoint
    // itself is pinned by the trajectory/envelope tangency at 2 beta.
    auto car_linear = [](double beta) {
        const int m = 7;
        auto res = [&](const std::vector<double>& v) {
            const double a1 = v[0], a2 = v[1], f1 = v[2], f2 = v[3];
            const double k61 = v[4], k62 = v[5], Tc = v[6];
            const double k11 = 1.0 - a1, k12 = a2 + 0.5;
            std::vector<double> out;
            const Jet2 tb{beta, 1.0, 0.0};
            const JetPoint p1 = piece_x1(tb, a1, a2, k11, k12);
            const JetPoint p6 = piece_x6(tb, f1, f2, k61, k62);
            out.push_back(p1.x.v - p6.x.v);
            out.push_back(p1.y.v - p6.y.v);
            out.push_back(p1.x.d - p6.x.d);
            out.push_back(p1.y.d - p6.y.d);
            const Jet2 aL{M_PI / 2, 1.0, 0.0};
            const JetPoint q = piece_x6(aL * 0.5, f1, f2, k61, k62);
            const Jet2 rj = (q.x + Tc) / jcos(aL);
            const Jet2 tj = q.y / jsin(aL);
            out.push_back(rj.d);
            out.push_back(tj.d);
            // the outer envelope ApCp starts at the half-height ceiling:
            // E_ApCpy(0) = 2 r'(0) = 2 a2 + 1/2 = 1/2
            out.push_back(2.0 * a2);
            return out;
        };
        const std::vector<double> zero(m, 0.0);
        const std::vector<double> r0 = res(zero);
        std::vector<double> jac(m * m);
        for (int j = 0; j < m; ++j) {
            std::vector<double> e(m, 0.0);
            e[std::size_t(j)] = 1.0;
            const std::vector<double> rj = res(e);
            for (int i = 0; i < m; ++i) jac[i * m + j] = rj[std::size_t(i)] - r0[std::size_t(i)];
        }
        std::vector<double> rhs(m);
        for (int i = 0; i < m; ++i) rhs[std::size_t(i)] = -r0[std::size_t(i)];
        dense_solve(jac, rhs, m);
        return rhs;
    };
    auto car_gap = [&](double beta) {
        const auto v = car_linear(beta);
        const double a1 = v[0], a2 = v[1], Tc = v[6];
        const double k11 = 1.0 - a1, k12 = a2 + 0.5;
        const Jet2 ab{2 * beta, 1.0, 0.0};
        const JetPoint pb = piece_x1(ab * 0.5, a1, a2, k11, k12);
        const Jet2 rbj = (pb.x + Tc) / jcos(ab);
        const Jet2 tbj = pb.y / jsin(ab);
        const RTJet jb{rbj.v, tbj.v, rbj.d, tbj.d, rbj.dd, tbj.dd};
        const Vec2 A{pb.x.v + Tc, pb.y.v};
        const Vec2 eac = env_ac_point(2 * beta, jb);
        const CornerPoints pts = eval_points(2 * beta, jb);
        Vec2 dir = pts.C - A;
        const double nn = norm(dir);
        return dot(A - eac, (1.0 / nn) * dir);
    };
    // secant iteration on beta
    double b0 = 0.28, b1v = 0.30;
    double g0 = car_gap(b0), g1v = car_gap(b1v);
    for (int it = 0; it < 80; ++it) {
        if (std::abs(g1v) < 1e-15 || std::abs(b1v - b0) < 1e-16) break;
        const double bn = b1v - g1v * (b1v - b0) / (g1v - g0);
        b0 = b1v;
        g0 = g1v;
        b1v = bn;
        g1v = car_gap(b1v);
    }
    if (std::abs(g1v) > 1e-10)
        throw NoConvergence("romik car constants: breakpoint iteration did not converge");
    const auto cs = car_linear(b1v);
    c.car_a1 = cs[0];
    c.car_a2 = cs[1];
    c.car_k11 = 1.0 - cs[0];
    c.car_k12 = cs[1] + 0.5;
    c.f1 = cs[2];
    c.f2 = cs[3];
    c.kappa[5][0] = cs[4];
    c.kappa[5][1] = cs[5];
    c.car_translate = cs[6];
    c.beta = b1v;
    return c;
}

// --- TOML I/O ---------------------------------------------------------------

RomikConstants load_romik_constants(const std::string& toml_path) {
    const TomlDoc doc = TomlDoc::parse_file(toml_path);
    RomikConstants c;
    c.a1 = doc.number("sofa", "a1");
    c.a2 = doc.number("sofa", "a2");
    c.b1 = doc.number("sofa", "b1");
    c.b2 = doc.number("sofa", "b2");
    c.c1 = doc.number("sofa", "c1");
    c.c2 = doc.number("sofa", "c2");
    c.d1 = doc.number("sofa", "d1");
    c.d2 = doc.number("sofa", "d2");
    c.e1 = doc.number("sofa", "e1");
    c.e2 = doc.number("sofa", "e2");
    for (int i = 0; i < 6; ++i) {
        c.kappa[i][0] = doc.number("sofa", "k" + std::to_string(i + 1) + "1");
        c.kappa[i][1] = doc.number("sofa", "k" + std::to_string(i + 1) + "2");
    }
    c.sofa_translate = doc.number("sofa", "translate_x");
    c.phi_store = doc.number("sofa", "phi");
    c.theta_store = doc.number("sofa", "theta");
    c.car_a1 = doc.number("car", "a1");
    c.car_a2 = doc.number("car", "a2");
    c.car_k11 = doc.number("car", "k11");
    c.car_k12 = doc.number("car", "k12");
    c.f1 = doc.number("car", "f1");
    c.f2 = doc.number("car", "f2");
    c.kappa[5][0] = doc.number("car", "k61");
    c.kappa[5][1] = doc.number("car", "k62");
    c.beta = doc.number("car", "beta");
    c.car_translate = doc.number("car", "translate_x");
    return c;
}

void save_romik_constants(const RomikConstants& c, const std::string& toml_path) {
    TomlDoc doc;
    doc.set_number("sofa", "a1", c.a1);
    doc.set_number("sofa", "a2", c.a2);
    doc.set_number("sofa", "b1", c.b1);
    doc.set_number("sofa", "b2", c.b2);
    doc.set_number("sofa", "c1", c.c1);
    doc.set_number("sofa", "c2", c.c2);
    doc.set_number("sofa", "d1", c.d1);
    doc.set_number("sofa", "d2", c.d2);
    doc.set_number("sofa", "e1", c.e1);
    doc.set_number("sofa", "e2", c.e2);
    for (int i = 0; i < 6; ++i) {
        doc.set_number("sofa", "k" + std::to_string(i + 1) + "1", c.kappa[i][0]);
        doc.set_number("sofa", "k" + std::to_string(i + 1) + "2", c.kappa[i][1]);
    }
    doc.set_number("sofa", "translate_x", c.sofa_translate);
    doc.set_number("sofa", "phi", c.phi_store);
    doc.set_number("sofa", "theta", c.theta_store);
    doc.set_number("car", "a1", c.car_a1);
    doc.set_number("car", "a2", c.car_a2);
    doc.set_number("car", "k11", c.car_k11);
    doc.set_number("car", "k12", c.car_k12);
    doc.set_number("car", "f1", c.f1);
    doc.set_number("car", "f2", c.f2);
    doc.set_number("car", "k61", c.kappa[5][0]);
    doc.set_number("car", "k62", c.kappa[5][1]);
    doc.set_number("car", "beta", c.beta);
    doc.set_number("car", "translate_x", c.car_translate);
    std::ofstream out(toml_path);
    out << doc.serialize();
}

// --- trajectory / verification ----------------------------------------------

Vec2 romik_trajectory(double alpha, const RomikConstants& c, Problem problem) {
    const JetPoint p = trajectory_jet(alpha, c, problem);
    return {p.x.v, p.y.v};
}

int romik_piece_index(double alpha, const RomikConstants& c, Problem problem) {
    const double t = alpha / 2;
    if (problem == Problem::Car) return t < c.beta ? 1 : 6;
    if (t < c.phi()) return 1;
    if (t < c.theta()) return 2;
    if (t <= M_PI / 2 - c.theta()) return 3;
    if (t <= M_PI / 2 - c.phi()) return 4;
    return 5;
}

std::pair<double, double> rt_from_trajectory(Vec2 point, double alpha) {
    return {point.x / std::cos(alpha), point.y / std::sin(alpha)};
}

RTJet analytic_rt(double alpha, const RomikConstants& c, Problem problem) {
    const double L = problem == Problem::Sofa ? M_PI : M_PI / 2;
    const double singular[] = {0.0, M_PI / 2, M_PI};
    double nearest = 1.0;
    for (double s : singular) nearest = std::min(nearest, std::abs(alpha - s));
    if (nearest > 5e-3) return rt_jet_regular(alpha, c, problem);

    // one-sided Richardson extrapolation from the regular side; samples stay
    // >= 2e-3 away from the singular angle so the quotient jets are accurate
    const double h = 2e-3;
    double dir = (alpha < 0.5 * L) ? 1.0 : -1.0;
    if (problem == Problem::Sofa && std::abs(alpha - M_PI / 2) == nearest)
        dir = (alpha <= M_PI / 2) ? -1.0 : 1.0;
    RTJet s[6];
    for (int k = 0; k < 6; ++k) s[k] = rt_jet_regular(alpha + dir * h * (k + 1), c, problem);
    auto extrap = [&](auto get) {
        // quintic extrapolation to offset 0 from offsets h..6h
        const double w[6] = {6.0, -15.0, 20.0, -15.0, 6.0, -1.0};
        double v = 0.0;
        for (int k = 0; k < 6; ++k) v += w[k] * get(s[k]);
        return v;
    };
    RTJet out;
    out.r = extrap([](const RTJet& j) { return j.r; });
    out.t = extrap([](const RTJet& j) { return j.t; });
    out.r1 = extrap([](const RTJet& j) { return j.r1; });
    out.t1 = extrap([](const RTJet& j) { return j.t1; });
    out.r2 = extrap([](const RTJet& j) { return j.r2; });
    out.t2 = extrap([](const RTJet& j) { return j.t2; });
    return out;
}

double VerificationReport::worst() const {
    double w = translation_residual;
    for (const auto& p : pieces)
        w = std::max({w, p.max_el_residual, p.junction_residual, p.boundary_residual});
    return w;
}

VerificationReport verify_analytic(Problem problem, const RomikConstants& c) {
    VerificationReport rep;
    const double collar = 1e-4;

    struct Branch {
        std::string name;
        double lo, hi;
        int idx;
    };
    std::vector<Branch> branches;
    if (problem == Problem::Sofa) {
        const double ph = c.phi(), th = c.theta();
        branches = {{"x1", 0.0, 2 * ph, 1},
                    {"x2", 2 * ph, 2 * th, 2},
                    {"x3", 2 * th, M_PI - 2 * th, 3},
                    {"x4", M_PI - 2 * th, M_PI - 2 * ph, 4},
                    {"x5", M_PI - 2 * ph, M_PI, 5}};
    } else {
        branches = {{"x1", 0.0, 2 * c.beta, 1}, {"x6", 2 * c.beta, M_PI / 2, 2}};
    }

    IntersectionParams sym_ip;
    sym_ip.a1p = 2 * c.phi();
    sym_ip.a2p = M_PI - 2 * c.theta();
    IntersectionParams car_ip;
    car_ip.a1p = 2 * c.beta;

    for (const auto& b : branches) {
        PieceReport pr;
        pr.name = b.name;
        const int npts = 1000;
        for (int k = 0; k < npts; ++k) {
            const double al = (b.lo + collar)
                              + (b.hi - b.lo - 2 * collar) * double(k) / double(npts - 1);
            double r1 = 0.0, r2 = 0.0;
            if (problem == Problem::Sofa) {
                if (al <= M_PI / 2) {
                    const RTJet j = analytic_rt(al, c, problem);
                    const Resid2 res = residual_sym_gerver(al, j, sym_ip);
                    r1 = res.ode1;
                    r2 = res.ode2;
                } else {
                    // mirror the jet onto [0, pi/2] and evaluate the mirrored branch
                    const RTJet j = analytic_rt(al, c, problem);
                    const RTJet m{j.r, j.t, -j.r1, -j.t1, j.r2, j.t2};
                    const Resid2 res = residual_sym_gerver(M_PI - al, m, sym_ip);
                    r1 = res.ode1;
                    r2 = res.ode2;
                }
            } else {
                const RTJet j = analytic_rt(al, c, problem);
                const Resid2 res = residual_car(al, j, car_ip, /*simplified=*/true);
                r1 = res.ode1;
                r2 = res.ode2;
            }
            pr.max_el_residual = std::max({pr.max_el_residual, std::abs(r1), std::abs(r2)});
        }
        // junction continuity at the left breakpoint (2e-12 apart so the two
        // sides select the adjacent pieces; a C1 pair agrees to ~1e-12)
        if (b.lo > 0.0) {
            const double d = 1e-12;
            const JetPoint l = trajectory_jet(b.lo - d, c, problem);
            const JetPoint r = trajectory_jet(b.lo + d, c, problem);
            pr.junction_residual =
                std::max({std::abs(l.x.v - r.x.v), std::abs(l.y.v - r.y.v),
                          std::abs(l.x.d - r.x.d), std::abs(l.y.d - r.y.d)});
        } else {
            // boundary structure at alpha = 0
            const JetPoint p0 = trajectory_jet(0.0, c, problem);
            const RTJet j0 = analytic_rt(0.0, c, problem);
            double bres = std::abs(p0.y.v); // trajectory starts on the floor
            if (problem == Problem::Sofa)
                bres = std::max(bres, std::abs(j0.r1)); // wall degeneracy r'(0) = 0
            else
                bres = std::max(bres, std::abs(2 * j0.r1 - 0.5)); // E_ApCpy(0) = 1/2
            pr.boundary_residual = bres;
        }
        rep.pieces.push_back(pr);
    }

    const double lhs = (1.0 - c.e1 + c.kappa[4][0]) / 2.0;
    rep.translation_residual = std::abs(lhs + c.sofa_translate);
    rep.pass = true;
    for (const auto& p : rep.pieces)
        if (std::max({p.max_el_residual, p.junction_residual, p.boundary_residual}) > 1e-8)
            rep.pass = false;
    if (rep.translation_residual > 1e-8) rep.pass = false;
    return rep;
}

} // namespace sofa
