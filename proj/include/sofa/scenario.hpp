#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace sofa {

enum class Scenario {
    GerverSym,      // symmetric, trajectory/AC intersection (Eqs 15-19)
    ConstrainedSym, // symmetric, no intersection, Lagrange multipliers (Eqs 20-23)
    AsymA,          // [0, pi], no intersections, two multipliers (Eqs 24-27)
    AsymB,          // [0, pi], AC-side intersection, one multiplier (Eqs 28-30)
    AsymC,          // [0, pi], intersections on both sides (Eqs 31-32)
    Car,            // ambidextrous sofa, ceiling 1/2 (Eqs 33-36)
};

std::string to_string(Scenario s);
std::optional<Scenario> scenario_from_string(const std::string& name);

struct ScenarioSpec {
    Scenario kind = Scenario::GerverSym;

    bool symmetric() const {
        return kind == Scenario::GerverSym || kind == Scenario::ConstrainedSym
               || kind == Scenario::Car;
    }
    double domain_end() const { return symmetric() ? M_PI / 2 : M_PI; }
    bool has_multipliers() const {
        return kind == Scenario::ConstrainedSym || kind == Scenario::AsymA
               || kind == Scenario::AsymB;
    }
    bool has_lambda1() const {
        return kind == Scenario::ConstrainedSym || kind == Scenario::AsymA;
    }
};

/// Rotation angles at which the corner trajectory meets the interior-wall
/// envelopes (and, for the car, the envelope/ceiling crossing).
struct IntersectionParams {
    std::optional<double> a1p, a2p; // trajectory / envelope AC
    std::optional<double> a3p, a4p; // trajectory / envelope AB
    std::optional<double> a5p, a6p; // car: E_ApCp / E_ApBp at height 1/2
};

struct MultiplierField {
    std::vector<double> lambda1;
    std::vector<double> lambda2;
};

struct AssumptionFlags {
    // signed values of Eqs 5-8; pass uses a -1e-9 slack so converged solutions
    // that satisfy them with equality are accepted
    double e5_two_rp0 = 0.0;      // 2 r'(0)      >= 0
    double e6_minus_two_rppi = 0.0; // -2 r'(pi)  >= 0
    double e7_apcp_end = 0.0;     // -r(pi)+2t(pi) >= 0
    double e8_apbp_start = 0.0;   // r(0)-2t(0)    <= 0
    bool pass_e5 = false, pass_e6 = false, pass_e7 = false, pass_e8 = false;
    bool all_pass() const { return pass_e5 && pass_e6 && pass_e7 && pass_e8; }
};

struct AreaReport {
    double area = 0.0;
    AssumptionFlags assumptions;
    double max_interior_residual = 0.0; // filled by the solver
    double max_boundary_residual = 0.0;
    bool feasible = false;
};

} // namespace sofa
