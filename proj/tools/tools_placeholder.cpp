#include <cstdio>

#include "sofa/analytic.hpp"
#include "sofa/functional.hpp"
#include "sofa/solver.hpp"

using namespace sofa;

int main() {
    // Gerver constants
    const GerverConstants g = solve_gerver_constants();
    std::printf("Gerver A=%.15f B=%.15f phi=%.15f theta=%.15f\n", g.A, g.B, g.phi, g.theta);

    // Romik constants
    const RomikConstants rc = solve_romik_constants(g);
    std::printf("a1=%.12f b1=%.12f translate=%.12f beta=%.12f 2b=%.12f\n", rc.a1, rc.b1,
                rc.sofa_translate, rc.beta, 2 * rc.beta);

    // verification
    const VerificationReport vs = verify_analytic(Problem::Sofa, rc);
    std::printf("verify sofa: pass=%d worst=%.3e\n", vs.pass, vs.worst());
    for (const auto& p : vs.pieces)
        std::printf("  %s el=%.3e junction=%.3e boundary=%.3e\n", p.name.c_str(),
                    p.max_el_residual, p.junction_residual, p.boundary_residual);
    const VerificationReport vc = verify_analytic(Problem::Car, rc);
    std::printf("verify car: pass=%d worst=%.3e\n", vc.pass, vc.worst());
    for (const auto& p : vc.pieces)
        std::printf("  %s el=%.3e junction=%.3e boundary=%.3e\n", p.name.c_str(),
                    p.max_el_residual, p.junction_residual, p.boundary_residual);

    // baseline areas
    {
        PathFunctions zero = PathFunctions::constant(0.0, 0.0, 0.0, M_PI / 2, 2001);
        const AreaReport rep = area_symmetric(zero, {});
        std::printf("area(r=t=0) = %.12f (pi/2 = %.12f)\n", rep.area, M_PI / 2);
        PathFunctions ham = PathFunctions::constant(2 / M_PI, 2 / M_PI, 0.0, M_PI / 2, 2001);
        const AreaReport rep2 = area_symmetric(ham, {});
        std::printf("area(hammersley) = %.12f (pi/2+2/pi = %.12f)\n", rep2.area,
                    M_PI / 2 + 2 / M_PI);
    }

    // analytic path area via the functional machinery at N=2000
    {
        PathFunctions rt = PathFunctions::from_functions(
            [&](double a) { return analytic_rt(a, rc, Problem::Sofa).r; },
            [&](double a) { return analytic_rt(a, rc, Problem::Sofa).t; }, 0.0, M_PI / 2, 2000);
        ScenarioSpec spec{Scenario::GerverSym};
        const IntersectionParams ip = find_intersections(rt, spec);
        std::printf("analytic ip: a1p=%.10f (2phi=%.10f) a2p=%.10f (pi-2theta=%.10f)\n",
                    ip.a1p.value_or(-1), 2 * g.phi, ip.a2p.value_or(-1), M_PI - 2 * g.theta);
        const AreaReport rep = area_symmetric(rt, ip);
        std::printf("analytic area = %.10f (expect 2.2195316688)\n", rep.area);
    }

    // one small gerver-sym solve
    {
        SolverConfig cfg = SolverConfig::defaults(Scenario::GerverSym, 500);
        cfg.boundary_values = {0.710322422072689};
        Solution sol = solve_scenario(cfg);
        std::printf("solve N=500: area=%.10f interior=%.2e boundary=%.2e outer=%d\n",
                    sol.report.area, sol.report.max_interior_residual,
                    sol.report.max_boundary_residual, sol.outer_iterations);
        std::printf("  ip: a1p=%.8f a2p=%.8f\n", sol.ip.a1p.value_or(-1), sol.ip.a2p.value_or(-1));
    }
    return 0;
}
