#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sofa/el_residuals.hpp"
#include "sofa/functional.hpp"
#include "sofa/path_functions.hpp"
#include "sofa/scenario.hpp"

namespace sofa {

/// General banded matrix with LAPACK-style band storage and partial-pivot LU.
class BandedMatrix {
public:
    BandedMatrix(std::size_t n, std::size_t kl, std::size_t ku);

    std::size_t size() const { return n_; }
    std::size_t kl() const { return kl_; }
    std::size_t ku() const { return ku_; }

    double& at(std::size_t i, std::size_t j);
    double get(std::size_t i, std::size_t j) const;
    bool in_band(std::size_t i, std::size_t j) const;
    void zero();

    void lu_factor();                            // throws SingularJacobian
    void solve_inplace(std::vector<double>& b) const;

private:
    std::size_t n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
    std::vector<int> piv_;
    bool factored_ = false;
};

struct SearchBox {
    std::vector<double> lo, hi;
    int coarse_steps = 11;
    int refine_iters = 60;
};

struct SolverConfig {
    ScenarioSpec scenario;
    std::size_t n_points = 2000;
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    int intersection_iters = 5;  // paper's minimum
    int intersection_cap = 20;
    double damping = 0.5;
    int max_halvings = 20;
    int active_set_iters = 40;
    std::vector<double> boundary_values; // scenario packing, see defaults()
    SearchBox search;
    bool parallel = true;

    static SolverConfig defaults(Scenario s, std::size_t n = 2000);
};

struct TraceEntry {
    int outer = 0;
    int newton_iter = 0;
    double residual_norm = 0.0;
    int halvings = 0;
    double a1p = 0.0, a2p = 0.0;
};

struct Solution {
    PathFunctions rt;
    IntersectionParams ip;
    MultiplierField mult;
    AreaReport report;
    std::vector<TraceEntry> trace;
    std::vector<double> boundary_values;
    int outer_iterations = 0;
};

/// One full solve at fixed boundary values: outer fixed point on the
/// intersection parameters around a damped banded Newton on the EL system.
Solution solve_scenario(const SolverConfig& config);

/// Coarse scan plus golden-section (1D) or Nelder-Mead (>= 2D) refinement of
/// the searched boundary values; every evaluation is a full solve.
std::pair<std::vector<double>, Solution> search_boundary_values(const SolverConfig& config);

/// Residual vector of the discretised system (exposed for tests/benchmarks).
std::vector<double> bvp_residual(const SolverConfig& config, const PathFunctions& rt,
                                 const MultiplierField& mult, const IntersectionParams& ip,
                                 const std::vector<std::uint8_t>& active1,
                                 const std::vector<std::uint8_t>& active2, bool parallel);

/// Banded finite-difference Jacobian via column colouring (exposed for tests).
BandedMatrix jacobian_assemble(const SolverConfig& config, const PathFunctions& rt,
                               const MultiplierField& mult, const IntersectionParams& ip,
                               const std::vector<std::uint8_t>& active1,
                               const std::vector<std::uint8_t>& active2, bool parallel);

} // namespace sofa
