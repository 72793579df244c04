#include "sofa/shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sofa/errors.hpp"

namespace sofa {

namespace {

constexpr double kDegenerate = 1e-9;

Vec2 traj_point(double alpha, const RTJet& j) {
    return {j.r * std::cos(alpha), j.t * std::sin(alpha)};
}

} // namespace

std::string piece_label(PieceKind k) {
    switch (k) {
        case PieceKind::TrajA: return "traj-A";
        case PieceKind::EnvAB: return "env-AB";
        case PieceKind::EnvAC: return "env-AC";
        case PieceKind::EnvApBp: return "env-ApBp";
        case PieceKind::EnvApCp: return "env-ApCp";
        case PieceKind::Floor: return "floor";
        case PieceKind::Ceiling: return "ceiling";
        case PieceKind::WallLeft: return "wall-left";
        case PieceKind::WallRight: return "wall-right";
        case PieceKind::CarOutline: return "car-outline";
    }
    return "?";
}

double BoundaryPiece::length() const {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += norm(pts[i + 1] - pts[i]);
    return s;
}

std::size_t SofaBoundary::curve_count() const {
    std::size_t c = 0;
    for (const auto& p : pieces) c += p.is_curve ? 1 : 0;
    return c;
}

std::size_t SofaBoundary::segment_count() const {
    std::size_t c = 0;
    for (const auto& p : pieces) c += p.is_curve ? 0 : 1;
    return c;
}

std::vector<Vec2> SofaBoundary::vertices() const {
    std::vector<Vec2> out;
    for (const auto& p : pieces)
        for (std::size_t i = 0; i + 1 < p.pts.size(); ++i) out.push_back(p.pts[i]);
    return out;
}

double SofaBoundary::polygon_area() const {
    const std::vector<Vec2> v = vertices();
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % v.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

void SofaBoundary::bounding_box(Vec2& lo, Vec2& hi) const {
    lo = {HUGE_VAL, HUGE_VAL};
    hi = {-HUGE_VAL, -HUGE_VAL};
    for (const auto& p : pieces)
        for (const Vec2& q : p.pts) {
            lo.x = std::min(lo.x, q.x);
            lo.y = std::min(lo.y, q.y);
            hi.x = std::max(hi.x, q.x);
            hi.y = std::max(hi.y, q.y);
        }
}

namespace {

BoundaryPiece curve_piece(PieceKind kind, const PathFunctions& full, double a, double b,
                          bool envelope_curve) {
    BoundaryPiece p;
    p.kind = kind;
    p.is_curve = true;
    p.alpha_begin = a;
    p.alpha_end = b;
    const double h = full.h();
    const std::size_t npts = std::max<std::size_t>(2, std::size_t(std::ceil(std::abs(b - a) / h)) + 1);
    p.pts.reserve(npts);
    for (std::size_t k = 0; k < npts; ++k) {
        const double al = a + (b - a) * double(k) / double(npts - 1);
        const RTJet j = full.jet_at(al);
        Vec2 q;
        if (!envelope_curve) {
            q = traj_point(al, j);
        } else {
            const EnvelopeSample e = eval_envelopes(al, j);
            switch (kind) {
                case PieceKind::EnvAB: q = e.e_ab; break;
                case PieceKind::EnvAC: q = e.e_ac; break;
                case PieceKind::EnvApBp: q = e.e_apbp; break;
                case PieceKind::EnvApCp: q = e.e_apcp; break;
                default: q = traj_point(al, j);
            }
        }
        p.pts.push_back(q);
    }
    return p;
}

BoundaryPiece segment_piece(PieceKind kind, Vec2 a, Vec2 b) {
    BoundaryPiece p;
    p.kind = kind;
    p.is_curve = false;
    p.pts = {a, b};
    return p;
}

void check_convexity(const BoundaryPiece& p) {
    if (!p.is_curve || p.pts.size() < 5) return;
    int sign = 0;
    for (std::size_t i = 0; i + 2 < p.pts.size(); ++i) {
        const Vec2 e1 = p.pts[i + 1] - p.pts[i];
        const Vec2 e2 = p.pts[i + 2] - p.pts[i + 1];
        const double n1 = norm(e1), n2 = norm(e2);
        if (n1 < 1e-14 || n2 < 1e-14) continue;
        const double c = cross(e1, e2) / (n1 * n2);
        if (std::abs(c) <= 1e-8) continue;
        const int s = c > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign)
            throw NonConvexEnvelope("curvature sign flip on " + piece_label(p.kind));
    }
}

void check_self_intersection(const std::vector<Vec2>& loop) {
    // bucketed segment-pair test
    const std::size_t n = loop.size();
    double cell = 0.0;
    Vec2 lo{HUGE_VAL, HUGE_VAL};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = loop[i], b = loop[(i + 1) % n];
        cell = std::max(cell, std::max(std::abs(b.x - a.x), std::abs(b.y - a.y)));
        lo.x = std::min(lo.x, a.x);
        lo.y = std::min(lo.y, a.y);
    }
    cell = std::max(cell, 1e-9) * 1.01;
    std::map<std::pair<long, long>, std::vector<std::size_t>> buckets;
    auto key = [&](Vec2 p) {
        return std::make_pair(long(std::floor((p.x - lo.x) / cell)),
                              long(std::floor((p.y - lo.y) / cell)));
    };
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = loop[i], b = loop[(i + 1) % n];
        const auto ka = key(a), kb = key(b);
        for (long cx = std::min(ka.first, kb.first); cx <= std::max(ka.first, kb.first); ++cx)
            for (long cy = std::min(ka.second, kb.second); cy <= std::max(ka.second, kb.second);
                 ++cy)
                buckets[{cx, cy}].push_back(i);
    }
    auto crosses = [&](std::size_t i, std::size_t j) {
        const std::size_t in = (i + 1) % n, jn = (j + 1) % n;
        if (i == j || in == j || jn == i) return false; // adjacent
        const Vec2 p1 = loop[i], p2 = loop[in], q1 = loop[j], q2 = loop[jn];
        const Vec2 d1 = p2 - p1, d2 = q2 - q1;
        const double den = cross(d1, d2);
        if (std::abs(den) < 1e-18) return false;
        const Vec2 w = q1 - p1;
        const double s = cross(w, d2) / den;
        const double u = cross(w, d1) / den;
        const double e = 1e-9;
        return s > e && s < 1 - e && u > e && u < 1 - e;
    };
    for (const auto& [k, segs] : buckets) {
        for (std::size_t a = 0; a < segs.size(); ++a)
            for (std::size_t b = a + 1; b < segs.size(); ++b)
                if (crosses(segs[a], segs[b]))
                    throw SelfIntersection("boundary loop crosses itself");
    }
}

SofaBoundary assemble_car(const PathFunctions& rt, const ScenarioSpec& spec);

} // namespace

SofaBoundary assemble_shape(const PathFunctions& rt, const ScenarioSpec& spec,
                            const IntersectionParams& ip) {
    if (spec.kind == Scenario::Car) return assemble_car(rt, spec);

    const bool sym = spec.symmetric();
    const PathFunctions full = sym ? rt.mirror_extended() : rt;
    const std::size_t n = full.size();
    const double r0 = full.r(0), t0 = full.t(0);
    const double rpi = full.r(n - 1), tpi = full.t(n - 1);
    const double rp0 = full.r1(0), rppi = full.r1(n - 1);

    const double wall_left_x = -1.0 - rpi;
    const double wall_right_x = 1.0 + r0;
    const double apbp_left_y = -2.0 * rppi;
    const double apcp_right_y = 2.0 * rp0;
    const Vec2 ab_floor{r0 - 2.0 * t0, 0.0};
    const Vec2 ac_floor{-rpi + 2.0 * tpi, 0.0};
    const Vec2 ceil_left{r0 - 2.0 * t0, 1.0};
    const Vec2 ceil_right{-rpi + 2.0 * tpi, 1.0};

    const bool has_ac = ip.a1p.has_value();
    const bool has_ab = sym ? has_ac : ip.a3p.has_value();

    std::vector<BoundaryPiece> ps;
    Vec2 bottom_start = has_ab ? ab_floor : Vec2{-rpi, 0.0};
    ps.push_back(segment_piece(PieceKind::Floor, {wall_left_x, 0.0}, bottom_start));
    if (has_ab) {
        const double a4 = sym ? M_PI - *ip.a2p : *ip.a4p;
        const double a3 = sym ? M_PI - *ip.a1p : *ip.a3p;
        ps.push_back(curve_piece(PieceKind::EnvAB, full, 0.0, a4, true));
        ps.push_back(curve_piece(PieceKind::TrajA, full, a3, *ip.a1p, false));
        ps.push_back(curve_piece(PieceKind::EnvAC, full, *ip.a2p, M_PI, true));
    } else if (has_ac) { // asym (b): trajectory reaches the floor on the left
        ps.push_back(curve_piece(PieceKind::TrajA, full, M_PI, *ip.a1p, false));
        ps.push_back(curve_piece(PieceKind::EnvAC, full, *ip.a2p, M_PI, true));
    } else {
        ps.push_back(curve_piece(PieceKind::TrajA, full, M_PI, 0.0, false));
    }
    const Vec2 bottom_end = (has_ac || has_ab) ? ac_floor : Vec2{r0, 0.0};
    ps.push_back(segment_piece(PieceKind::Floor, bottom_end, {wall_right_x, 0.0}));
    ps.push_back(segment_piece(PieceKind::WallRight, {wall_right_x, 0.0},
                               {wall_right_x, apcp_right_y}));
    ps.push_back(curve_piece(PieceKind::EnvApCp, full, 0.0, M_PI, true));
    ps.push_back(segment_piece(PieceKind::Ceiling, ceil_right, ceil_left));
    ps.push_back(curve_piece(PieceKind::EnvApBp, full, 0.0, M_PI, true));
    ps.push_back(segment_piece(PieceKind::WallLeft, {wall_left_x, apbp_left_y},
                               {wall_left_x, 0.0}));

    SofaBoundary boundary;
    for (auto& p : ps) {
        if (p.length() < kDegenerate) continue;
        boundary.pieces.push_back(std::move(p));
    }

    // closure check
    const auto& pcs = boundary.pieces;
    for (std::size_t i = 0; i < pcs.size(); ++i) {
        const Vec2 a = pcs[i].pts.back();
        const Vec2 b = pcs[(i + 1) % pcs.size()].pts.front();
        if (norm(b - a) > 1e-6)
            throw Error("assembled boundary is not closed between " + piece_label(pcs[i].kind)
                        + " and " + piece_label(pcs[(i + 1) % pcs.size()].kind));
    }
    if (boundary.polygon_area() <= 0.0) throw Error("assembled boundary is not counter-clockwise");
    for (const auto& p : boundary.pieces) check_convexity(p);
    check_self_intersection(boundary.vertices());
    return boundary;
}

namespace {

struct PoseEntry {
    int mode = 0; // 0: regular, 1: strip union at alpha ~ 0, 2: strip union at alpha ~ pi
    HallwayPose pose;
    double r_end = 0.0;
};

struct PoseSet {
    std::optional<PathFunctions> extended;
    std::vector<PoseEntry> entries;
};

PoseSet pose_set(const PathFunctions& rt, const ScenarioSpec& spec) {
    PoseSet out;
    const PathFunctions* base = &rt;
    if (spec.symmetric() && spec.kind != Scenario::Car) {
        out.extended = rt.mirror_extended();
        base = &*out.extended;
    }
    const std::size_t n = base->size();
    out.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double al = base->alpha(i);
        PoseEntry e;
        if (std::abs(std::sin(al / 2)) < 1e-9) {
            e.mode = 1;
            e.r_end = base->r(i);
        } else if (std::abs(std::cos(al / 2)) < 1e-9) {
            e.mode = 2;
            e.r_end = base->r(i);
        } else {
            e.pose = hallway_pose(al, base->jet(i));
        }
        out.entries.push_back(e);
    }
    return out;
}

double pose_margin(Vec2 p, const HallwayPose& pose) {
    const double th = pose.tan_half, ct = pose.cot_half;
    const double o1 = th * (p.x - pose.Ap.x) + pose.Ap.y - p.y;
    const double o2 = -ct * (p.x - pose.Ap.x) + pose.Ap.y - p.y;
    const double i1 = p.y - (th * (p.x - pose.A.x) + pose.A.y);
    const double i2 = p.y - (-ct * (p.x - pose.A.x) + pose.A.y);
    return std::min(std::min(o1, o2), std::max(i1, i2));
}

double strip_margin(Vec2 p, double r_end, bool at_zero) {
    // union of the two strips of Remarks 3.4 / 3.5
    if (at_zero) {
        const double horiz = std::min({1.0 + r_end - p.x, p.y, 1.0 - p.y});
        const double vert = std::min({p.x - r_end, 1.0 + r_end - p.x, 1.0 - p.y});
        return std::max(horiz, vert);
    }
    const double horiz = std::min({p.x + 1.0 + r_end, p.y, 1.0 - p.y});
    const double vert = std::min({p.x + 1.0 + r_end, -r_end - p.x, 1.0 - p.y});
    return std::max(horiz, vert);
}

double entry_margin(Vec2 p, const PoseEntry& e) {
    if (e.mode == 1) return strip_margin(p, e.r_end, true);
    if (e.mode == 2) return strip_margin(p, e.r_end, false);
    return pose_margin(p, e.pose);
}

double point_margin(Vec2 p, const PoseSet& ps) {
    double m = HUGE_VAL;
    for (const PoseEntry& e : ps.entries) {
        m = std::min(m, entry_margin(p, e));
        if (m < -1.0) break; // deep outside, margin only matters near 0
    }
    return m;
}

bool car_contains(Vec2 p, const PoseSet& ps, double tol) {
    const Vec2 pm{-p.x, p.y}, pf{p.x, 1.0 - p.y}, pmf{-p.x, 1.0 - p.y};
    return point_margin(p, ps) >= -tol && point_margin(pm, ps) >= -tol
           && point_margin(pf, ps) >= -tol && point_margin(pmf, ps) >= -tol;
}

SofaBoundary assemble_car(const PathFunctions& rt, const ScenarioSpec& spec) {
    // contour of the four-pass containment mask (marching squares on a fine grid)
    const PoseSet ps = pose_set(rt, spec);
    const double xmax = 1.0 + rt.r(0) + 0.05;
    const int nx = 1200, ny = 520;
    const double x0 = -xmax, x1 = xmax, y0 = -0.02, y1 = 1.02;
    std::vector<std::uint8_t> mask(std::size_t(nx) * ny, 0);
    auto X = [&](int i) { return x0 + (x1 - x0) * double(i) / (nx - 1); };
    auto Y = [&](int j) { return y0 + (y1 - y0) * double(j) / (ny - 1); };
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            mask[std::size_t(j) * nx + i] =
                car_contains({X(i), Y(j)}, ps, 1e-9) && Y(j) >= 0.0 && Y(j) <= 1.0 ? 1 : 0;

    // collect cell-edge crossings as segments and chain them
    std::vector<std::pair<Vec2, Vec2>> segs;
    auto at = [&](int i, int j) { return mask[std::size_t(j) * nx + i]; };
    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const int c = at(i, j) | (at(i + 1, j) << 1) | (at(i + 1, j + 1) << 2)
                          | (at(i, j + 1) << 3);
            if (c == 0 || c == 15) continue;
            const Vec2 bm{0.5 * (X(i) + X(i + 1)), Y(j)};
            const Vec2 tm{0.5 * (X(i) + X(i + 1)), Y(j + 1)};
            const Vec2 lm{X(i), 0.5 * (Y(j) + Y(j + 1))};
            const Vec2 rm{X(i + 1), 0.5 * (Y(j) + Y(j + 1))};
            auto add = [&](Vec2 a, Vec2 b) { segs.emplace_back(a, b); };
            switch (c) {
                case 1: case 14: add(lm, bm); break;
                case 2: case 13: add(bm, rm); break;
                case 3: case 12: add(lm, rm); break;
                case 4: case 11: add(rm, tm); break;
                case 6: case 9: add(bm, tm); break;
                case 7: case 8: add(lm, tm); break;
                case 5: add(lm, bm); add(rm, tm); break;
                case 10: add(bm, rm); add(lm, tm); break;
            }
        }
    }
    SofaBoundary boundary;
    BoundaryPiece outline;
    outline.kind = PieceKind::CarOutline;
    outline.is_curve = true;
    for (const auto& s : segs) {
        outline.pts.push_back(s.first);
        outline.pts.push_back(s.second);
    }
    boundary.pieces.push_back(std::move(outline));
    return boundary;
}

} // namespace

double feasibility_margin(const SofaBoundary& boundary, const PathFunctions& rt,
                          const ScenarioSpec& spec, bool parallel) {
    const PoseSet ps = pose_set(rt, spec);
    const std::vector<Vec2> verts = boundary.vertices();
    const std::size_t npose = ps.entries.size();
    std::vector<double> worst(npose, HUGE_VAL);
    auto body = [&](std::size_t i) {
        double m = HUGE_VAL;
        for (const Vec2& v : verts) m = std::min(m, entry_margin(v, ps.entries[i]));
        worst[i] = m;
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long i = 0; i < long(npose); ++i) body(std::size_t(i));
    } else {
        for (std::size_t i = 0; i < npose; ++i) body(i);
    }
    double m = HUGE_VAL;
    for (double w : worst) m = std::min(m, w);
    return m;
}

bool feasibility_sweep(const SofaBoundary& boundary, const PathFunctions& rt,
                       const ScenarioSpec& spec, double tol, bool parallel) {
    return feasibility_margin(boundary, rt, spec, parallel) >= -tol;
}

bool region_contains(Vec2 p, const PathFunctions& rt, const ScenarioSpec& spec, double tol) {
    const PoseSet ps = pose_set(rt, spec);
    if (p.y < -tol || p.y > 1.0 + tol) return false;
    if (spec.kind == Scenario::Car) return car_contains(p, ps, tol);
    return point_margin(p, ps) >= -tol;
}

namespace {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline double u01(std::uint64_t& s) {
    return double(splitmix64(s) >> 11) * (1.0 / 9007199254740992.0);
}

} // namespace

double monte_carlo_area(const PathFunctions& rt, const ScenarioSpec& spec, std::size_t samples,
                        std::uint64_t seed, bool parallel) {
    const PoseSet ps = pose_set(rt, spec);
    const double xmax = 1.0 + std::max(rt.r(0), rt.r(rt.size() - 1)) + 0.02;
    const double x0 = -xmax, x1 = xmax, y0 = 0.0, y1 = 1.0;
    const double box = (x1 - x0) * (y1 - y0);

    const int nchunks = 256;
    std::vector<std::size_t> hits(nchunks, 0);
    const std::size_t per = samples / nchunks;
    auto body = [&](int c) {
        std::uint64_t s = seed + 0x9e3779b97f4a7c15ull * std::uint64_t(c + 1);
        std::size_t h = 0;
        for (std::size_t k = 0; k < per; ++k) {
            const Vec2 p{x0 + (x1 - x0) * u01(s), y0 + (y1 - y0) * u01(s)};
            bool in;
            if (spec.kind == Scenario::Car)
                in = car_contains(p, ps, 0.0);
            else
                in = point_margin(p, ps) >= 0.0;
            h += in ? 1 : 0;
        }
        hits[std::size_t(c)] = h;
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int c = 0; c < nchunks; ++c) body(c);
    } else {
        for (int c = 0; c < nchunks; ++c) body(c);
    }
    std::size_t total = 0;
    for (std::size_t h : hits) total += h;
    return box * double(total) / double(per * nchunks);
}

} // namespace sofa
