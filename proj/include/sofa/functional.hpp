#pragma once

#include <vector>

#include "sofa/path_functions.hpp"
#include "sofa/scenario.hpp"

namespace sofa {

/// Corner trajectory and the four wall envelopes sampled on the path grid.
struct EnvelopeField {
    UniformGrid grid;
    std::vector<double> ax, ay;
    std::vector<double> abx, aby, acx, acy;
    std::vector<double> apbpx, apbpy, apcpx, apcpy;
};

EnvelopeField envelope_field(const PathFunctions& rt);

AssumptionFlags check_assumptions(const PathFunctions& rt, bool symmetric_domain);

/// Intersection parameters for a scenario. Symmetric scenarios are evaluated
/// on the mirror-extended path. Throws NoIntersection / MultipleIntersections
/// per the spec; the car returns the tangency angle a1p = a2p and the
/// E_ApCp = 1/2 crossing a5p (collapsing to a1p when the envelope rides the
/// ceiling).
IntersectionParams find_intersections(const PathFunctions& rt, const ScenarioSpec& spec);

/// Nearest-approach parameters of the trajectory and the interior envelopes;
/// used to warm-start the solver's intersection iteration while the iterate's
/// curves do not cross yet. Falls back to the crossing when one exists.
IntersectionParams closest_approach(const PathFunctions& rt, const ScenarioSpec& spec);

AreaReport area_symmetric(const PathFunctions& rt, const IntersectionParams& ip);
AreaReport area_general(const PathFunctions& rt, const IntersectionParams& ip);
AreaReport area_asym(const PathFunctions& rt, const IntersectionParams& ip, char variant);
AreaReport area_car(const PathFunctions& rt, const IntersectionParams& ip);

/// Area dispatch used by solvers and the CLI.
AreaReport scenario_area(const PathFunctions& rt, const IntersectionParams& ip,
                         const ScenarioSpec& spec);

/// Area as a pure function of the path: intersections are re-solved first.
double area_of_path(const PathFunctions& rt, const ScenarioSpec& spec);

} // namespace sofa
