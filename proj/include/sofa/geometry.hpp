#pragma once

#include <array>
#include <optional>

namespace sofa {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

/// Local jet of the path pair (r, t) at one angle.
struct RTJet {
    double r = 0.0, t = 0.0;
    double r1 = 0.0, t1 = 0.0; // first derivatives
    double r2 = 0.0, t2 = 0.0; // second derivatives
};

/// Corner points of the rotating hallway. B'/C' run to infinity at the
/// endpoint poses; the flags keep containment logic total there.
struct CornerPoints {
    Vec2 A, Ap, B, Bp, C, Cp;
    bool bp_at_infinity = false;
    bool cp_at_infinity = false;
};

struct EnvelopeSample {
    double alpha = 0.0;
    Vec2 e_ab, e_ac, e_apbp, e_apcp;
};

/// One hallway pose: the four wall lines through A and Ap with slopes
/// tan(alpha/2), -cot(alpha/2).
struct HallwayPose {
    double alpha = 0.0;
    Vec2 A, Ap;
    double tan_half = 0.0; // tan(alpha/2)
    double cot_half = 0.0; // cot(alpha/2)
};

CornerPoints eval_points(double alpha, const RTJet& j);
EnvelopeSample eval_envelopes(double alpha, const RTJet& j);
HallwayPose hallway_pose(double alpha, const RTJet& j);

/// Point-in-hallway test for one pose. Interior poses use
///   {below both exterior walls} and {above either interior wall};
/// alpha = 0 and alpha = pi use the union-of-strips limit regions.
bool hallway_contains(Vec2 p, double alpha, const RTJet& j, double tol);
bool hallway_contains(Vec2 p, const HallwayPose& pose, double tol);

} // namespace sofa
