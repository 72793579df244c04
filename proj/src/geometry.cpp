#include "sofa/geometry.hpp"

#include <cmath>

namespace sofa {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

namespace {
constexpr double kEndpointEps = 1e-12;
} // namespace

CornerPoints eval_points(double alpha, const RTJet& j) {
    CornerPoints p;
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double ch = std::cos(alpha / 2), sh = std::sin(alpha / 2);
    p.A = {j.r * ca, j.t * sa};
    p.Ap = {std::sqrt(2.0) * std::cos(alpha / 2 + M_PI / 4) + ca * j.r,
            std::sqrt(2.0) * std::sin(alpha / 2 + M_PI / 4) + sa * j.t};
    p.B = {ca * j.r - 2.0 * ch * ch * j.t, 0.0};
    p.C = {ca * j.r + sa * std::tan(alpha / 2) * j.t, 0.0};
    if (std::abs(sh) < kEndpointEps) { // alpha -> 0: csc blows up
        p.bp_at_infinity = true;
        p.Bp = {-HUGE_VAL, 0.0};
        p.C = {j.r, 0.0}; // tan(alpha/2) -> 0 limit
    } else {
        p.Bp = {-1.0 / sh + p.B.x, 0.0};
    }
    if (std::abs(ch) < kEndpointEps) { // alpha -> pi: sec/tan blow up
        p.cp_at_infinity = true;
        p.Cp = {HUGE_VAL, 0.0};
        p.C = {HUGE_VAL, 0.0};
    } else {
        p.Cp = {1.0 / ch + p.C.x, 0.0};
    }
    return p;
}

EnvelopeSample eval_envelopes(double alpha, const RTJet& j) {
    EnvelopeSample e;
    e.alpha = alpha;
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double ch = std::cos(alpha / 2), sh = std::sin(alpha / 2);
    const double c2a = std::cos(2 * alpha), s2a = std::sin(2 * alpha);
    const double r = j.r, t = j.t, r1 = j.r1, t1 = j.t1;

    e.e_ab = {0.5 * (-1 + 2 * ca + c2a) * r - 2 * ch * ch * ca * t
                  + sa * (ca * r1 - (1 + ca) * t1),
              -2 * sh * sh * (r * sa - sa * t - ca * r1 + t1 + ca * t1)};
    e.e_ac = {r * (ca + sa * sa) - 2 * ca * sh * sh * t + sa * (-ca * r1 + (-1 + ca) * t1),
              2 * ch * ch * (-r * sa + sa * t + ca * r1 + t1 - ca * t1)};
    e.e_apbp = {0.5 * ((-1 + 2 * ca + c2a) * r - 2 * sh - 4 * ch * ch * ca * t
                       + s2a * r1 - 2 * sa * t1 - s2a * t1),
                0.5 * (2 * ch + r * (-2 * sa + s2a) - 2 * (-1 + ca) * sa * t
                       - r1 + 2 * ca * r1 - c2a * r1 - t1 + c2a * t1)};
    e.e_apcp = {0.5 * (2 * ch + 2 * r * (ca + sa * sa) + (1 - 2 * ca + c2a) * t
                       - s2a * r1 - 2 * sa * t1 + s2a * t1),
                0.5 * (2 * sh - 2 * (1 + ca) * r * sa + (2 * sa + s2a) * t
                       + r1 + 2 * ca * r1 + c2a * r1 + t1 - c2a * t1)};
    return e;
}

HallwayPose hallway_pose(double alpha, const RTJet& j) {
    HallwayPose pose;
    pose.alpha = alpha;
    const auto pts = eval_points(alpha, j);
    pose.A = pts.A;
    pose.Ap = pts.Ap;
    pose.tan_half = std::tan(alpha / 2);
    pose.cot_half = 1.0 / pose.tan_half;
    return pose;
}

bool hallway_contains(Vec2 p, const HallwayPose& pose, double tol) {
    const double th = pose.tan_half, ct = pose.cot_half;
    // exterior walls: must be below both
    if (p.y > th * (p.x - pose.Ap.x) + pose.Ap.y + tol) return false;
    if (p.y > -ct * (p.x - pose.Ap.x) + pose.Ap.y + tol) return false;
    // interior corner: must be above at least one interior wall
    const bool above_ab = p.y >= th * (p.x - pose.A.x) + pose.A.y - tol;
    const bool above_ac = p.y >= -ct * (p.x - pose.A.x) + pose.A.y - tol;
    return above_ab || above_ac;
}

bool hallway_contains(Vec2 p, double alpha, const RTJet& j, double tol) {
    const double sh = std::sin(alpha / 2), ch = std::cos(alpha / 2);
    if (std::abs(sh) < kEndpointEps) {
        // strip union before the turn: {x <= Ap_x, 0 <= y <= 1} u {A_x <= x <= Ap_x, y <= 1}
        const double ax = j.r, apx = 1.0 + j.r;
        const bool horiz = p.x <= apx + tol && p.y >= -tol && p.y <= 1.0 + tol;
        const bool vert = p.x >= ax - tol && p.x <= apx + tol && p.y <= 1.0 + tol;
        return horiz || vert;
    }
    if (std::abs(ch) < kEndpointEps) {
        const double ax = -j.r, apx = -1.0 - j.r;
        const bool horiz = p.x >= apx - tol && p.y >= -tol && p.y <= 1.0 + tol;
        const bool vert = p.x >= apx - tol && p.x <= ax + tol && p.y <= 1.0 + tol;
        return horiz || vert;
    }
    return hallway_contains(p, hallway_pose(alpha, j), tol);
}

} // namespace sofa
