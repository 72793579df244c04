#pragma once

#include <array>
#include <functional>
#include <vector>

#include "sofa/path_functions.hpp"
#include "sofa/scenario.hpp"

namespace sofa {

struct Resid2 {
    double ode1 = 0.0;
    double ode2 = 0.0;
};

struct Resid4 {
    double ode1 = 0.0, ode2 = 0.0, ode3 = 0.0, ode4 = 0.0;
};

/// Piecewise Euler-Lagrange residuals, exactly as printed per scenario.
/// Jet-level evaluators (used by the solver rows) and alpha-level wrappers.
Resid2 residual_sym_gerver(double alpha, const RTJet& j, const IntersectionParams& ip);
Resid2 residual_sym_gerver(const PathFunctions& rt, const IntersectionParams& ip, double alpha);

/// [r'(pi/2), t'(pi/2), -1/2 + 2 r(0) - 2 t(0) - 2 r''(0)] (Eqs 17-19).
std::array<double, 3> residual_boundary_sym(const PathFunctions& rt);

Resid4 residual_sym_constrained(double alpha, const RTJet& j, double lambda1, double lambda2,
                                double r_at0, double r_atpi);
Resid4 residual_sym_constrained(const PathFunctions& rt, const MultiplierField& mult,
                                double alpha);

Resid4 residual_asym(double alpha, const RTJet& j, double lambda1, double lambda2,
                     const IntersectionParams& ip, char variant, double r_at0, double r_atpi);
Resid4 residual_asym(const PathFunctions& rt, const MultiplierField& mult,
                     const IntersectionParams& ip, double alpha, char variant);

Resid2 residual_car(double alpha, const RTJet& j, const IntersectionParams& ip, bool simplified);
Resid2 residual_car(const PathFunctions& rt, const IntersectionParams& ip, double alpha,
                    bool simplified);

/// Jumps of r, t, r', t' across each breakpoint (diagnostic; a single global
/// grid keeps them at interpolation error).
std::vector<double> continuity_residuals(const PathFunctions& rt, const IntersectionParams& ip);

/// Second epsilon-derivative at 0 of area(r + eps eta, t + eps xi), via the
/// 5-point 4th-order stencil with one Richardson step. Perturbations must
/// respect the symmetry conditions at the right end.
double second_variation(const PathFunctions& rt, const ScenarioSpec& spec,
                        const std::vector<double>& eta, const std::vector<double>& xi,
                        double* first_variation = nullptr);

} // namespace sofa
