#pragma once

#include <stdexcept>
#include <string>

namespace sofa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : Error { using Error::Error; };
struct NewtonDiverged : Error { using Error::Error; };
struct SingularJacobian : Error { using Error::Error; };
struct IntersectionOscillation : Error { using Error::Error; };
struct AssumptionViolated : Error { using Error::Error; };
struct SelfIntersection : Error { using Error::Error; };
struct NonConvexEnvelope : Error { using Error::Error; };
struct NoIntersection : Error { using Error::Error; };
struct MultipleIntersections : Error { using Error::Error; };
struct ScenarioMismatch : Error { using Error::Error; };
struct ClosedSofaViolation : Error { using Error::Error; };
struct BranchUndefined : Error { using Error::Error; };
struct PerturbationInadmissible : Error { using Error::Error; };
struct IntervalEmpty : Error { using Error::Error; };
struct AllSolvesFailed : Error { using Error::Error; };

} // namespace sofa
