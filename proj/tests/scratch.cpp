// Throwaway calibration driver; superseded by the doctest suites.
#include <cmath>
#include <cstdio>

#include "liouville/energy.hpp"
#include "liouville/reduction.hpp"
#include "liouville/solver.hpp"

using namespace liouville;

int main() {
    const double A = 55.0, t = 7.0;
    Knobs kn;
    kn.R0_auto = true;
    Problem pb(Domain::disc({0, 0}, 1.0), 512, Coefficient::constant(1.0),
               SourceField::gaussian_bump(A, 0.25, {0, 0}), 0.5, 1, {0, 0}, 0.62, kn);
    const Grid& g = pb.grid();
    for (double r : {0.40, 0.45, 0.50, 0.55, 0.60}) {
        BubbleConfig cfg = make_bubble_config(pb, t, {{r, 0.0}});
        AnsatzFields f = assemble(pb, cfg);
        ScalarField w = star_weight(pb, cfg);
        // full star norm + argmax
        double best = 0;
        Point bp{};
        for (int k = 0; k < g.num_interior(); ++k) {
            const double ratio = std::abs(f.E[k]) / w[k];
            if (ratio > best) {
                best = ratio;
                bp = g.interior_point(k);
            }
        }
        // tilt: d/dr log M at xi, M = W / (-Delta u_1 analytic)
        const double em = cfg.core_i(0);
        auto logM = [&](double rr) {
            Point x{rr, 0.0};
            // interpolate W / lap1
            // lap1 = 8 c1 / (c1 + |x-xi|^2)^2
            const double c1 = em * em;
            const double dx2 = (rr - r) * (rr - r);
            const double lap1 = 8.0 * c1 / ((c1 + dx2) * (c1 + dx2));
            return std::log(interpolate(f.W, x) / lap1);
        };
        const double dl = 3.0 * em;
        const double tilt = (logM(r + dl) - logM(r - dl)) / (2.0 * dl);
        std::printf("r=%.2f: E*=%7.3f argmax=(%.3f,%.3f) |amax-xi|/em=%.2f tilt=%+.3f em=%.3f\n",
                    r, best, bp.x, bp.y, dist(bp, {r, 0.0}) / em, tilt, em);
    }
    return 0;
}
