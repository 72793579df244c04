#pragma once

#include <array>
#include <string>
#include <vector>

#include "sofa/geometry.hpp"
#include "sofa/scenario.hpp"

namespace sofa {

enum class Problem { Sofa, Car };

struct GerverConstants {
    double A = 0.0, B = 0.0, phi = 0.0, theta = 0.0;
    std::array<double, 4> residuals() const;
};

/// Newton solve of the four implicit balanced-polygon equations.
GerverConstants solve_gerver_constants(std::array<double, 4> guess = {0.1, 1.4, 0.04, 0.68},
                                       double tol = 1e-13, int max_iter = 50);

/// Closed-form trajectory constants for Gerver's sofa (Romik's pieces x1..x5)
/// and Romik's ambidextrous car (pieces x1, x6).
struct RomikConstants {
    // sofa pieces
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, c1 = 0.0, c2 = 0.0;
    double d1 = 0.0, d2 = 0.0, e1 = 0.0, e2 = 0.0;
    double kappa[6][2] = {};
    double sofa_translate = 0.0; // x-shift that centres the sofa
    // car pieces (the paper reuses the x1 symbols with car-specific values)
    double car_a1 = 0.0, car_a2 = 0.0, car_k11 = 0.0, car_k12 = 0.0;
    double f1 = 0.0, f2 = 0.0;
    double beta = 0.0;
    double car_translate = 0.0;
    // sofa piece breakpoints (Gerver's phi, theta)
    double phi_store = 0.0, theta_store = 0.0;

    double phi() const { return phi_store; }
    double theta() const { return theta_store; }
};

/// Re-derive the constants from the matching/boundary/junction conditions
/// (Newton from coarse seeds). Used to validate the checked-in data file.
RomikConstants solve_romik_constants(const GerverConstants& g);

RomikConstants load_romik_constants(const std::string& toml_path);
void save_romik_constants(const RomikConstants& c, const std::string& toml_path);

/// Trajectory point at rotation angle alpha (already translated).
Vec2 romik_trajectory(double alpha, const RomikConstants& c, Problem problem);
int romik_piece_index(double alpha, const RomikConstants& c, Problem problem);

/// (r, t) with analytic derivatives; singular angles use one-sided 4th-order
/// Richardson extrapolation with step 1e-3.
RTJet analytic_rt(double alpha, const RomikConstants& c, Problem problem);
std::pair<double, double> rt_from_trajectory(Vec2 point, double alpha);

struct PieceReport {
    std::string name;
    double max_el_residual = 0.0;    // over the branch interior
    double junction_residual = 0.0;  // C1 mismatch at the piece's left breakpoint
    double boundary_residual = 0.0;  // conditions at alpha = 0 (piece 1 only)
};

struct VerificationReport {
    std::vector<PieceReport> pieces;
    double translation_residual = 0.0;
    bool pass = false;
    double worst() const;
};

/// Theorem 6.1 / 10.1 check: per-branch EL residuals on a 1000-point subgrid
/// excluding 1e-4 collars around the breakpoints, plus structural residuals.
VerificationReport verify_analytic(Problem problem, const RomikConstants& c);

} // namespace sofa
