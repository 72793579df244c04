#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sofa/functional.hpp"
#include "sofa/path_functions.hpp"
#include "sofa/scenario.hpp"

namespace sofa {

enum class PieceKind {
    TrajA,
    EnvAB,
    EnvAC,
    EnvApBp,
    EnvApCp,
    Floor,
    Ceiling,
    WallLeft,
    WallRight,
    CarOutline,
};

std::string piece_label(PieceKind k);

struct BoundaryPiece {
    PieceKind kind;
    bool is_curve = false;
    double alpha_begin = 0.0, alpha_end = 0.0; // curve pieces only
    std::vector<Vec2> pts;
    double length() const;
};

struct SofaBoundary {
    std::vector<BoundaryPiece> pieces;
    std::size_t curve_count() const;
    std::size_t segment_count() const;
    std::vector<Vec2> vertices() const;
    double polygon_area() const; // signed, positive for CCW loops
    void bounding_box(Vec2& lo, Vec2& hi) const;
};

/// Stitch the boundary from Eq 1's pieces in counter-clockwise order, dropping
/// degenerate parts. Validates closure, orientation, per-curve convexity and
/// absence of self-intersections. The car boundary is extracted as contours of
/// the four-fold containment test.
SofaBoundary assemble_shape(const PathFunctions& rt, const ScenarioSpec& spec,
                            const IntersectionParams& ip);

/// Worst containment slack of the boundary vertices over every grid pose
/// (negative = violation). Symmetric scenarios sweep the mirror-extended grid.
double feasibility_margin(const SofaBoundary& boundary, const PathFunctions& rt,
                          const ScenarioSpec& spec, bool parallel = true);

bool feasibility_sweep(const SofaBoundary& boundary, const PathFunctions& rt,
                       const ScenarioSpec& spec, double tol, bool parallel = true);

/// Containment test of a point in the swept region (all poses, plus the car's
/// mirrored and flipped passes).
bool region_contains(Vec2 p, const PathFunctions& rt, const ScenarioSpec& spec, double tol);

/// Deterministic rejection-sampling area of the swept region.
double monte_carlo_area(const PathFunctions& rt, const ScenarioSpec& spec, std::size_t samples,
                        std::uint64_t seed, bool parallel = true);

} // namespace sofa
