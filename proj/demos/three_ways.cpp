// Computes the residual rotation of a closed two-absorber train three
// independent ways and prints the agreement:
//   1. polar decomposition of the exact operator product,
//   2. path-ordered integral of the precession gauge field along the
//      velocity loop,
//   3. half the solid angle swept by a fixed polarization eigenstate.

#include <cstdio>

#include <dichro/dichro.hpp>

using namespace dichro;

int main() {
    AbsorberSpec a1(PoincarePoint::zhat(), 1.0);
    AbsorberSpec a2(PoincarePoint::xhat(), 1.0);
    ClosedSequence seq = close_sequence(a1, a2);

    const AbsorberSpec& a3 = seq.elements.back();
    std::printf("closing absorber: axis (% .6f, % .6f, % .6f), alpha %.6f\n", a3.axis.s[0],
                a3.axis.s[1], a3.axis.s[2], a3.alpha);

    PhaseReport rep = thomas_report(seq, 64);
    std::printf("operator product : angle %.12f rad about (% .6f, % .6f, % .6f)\n",
                rep.rotation.angle, rep.rotation.axis.s[0], rep.rotation.axis.s[1],
                rep.rotation.axis.s[2]);

    RotationResult wil = wilson_loop(reversed(velocity_loop(seq.elements)), 20000);
    std::printf("gauge holonomy   : angle %.12f rad about (% .6f, % .6f, % .6f)\n", wil.angle,
                wil.axis.s[0], wil.axis.s[1], wil.axis.s[2]);

    std::printf("solid angle      : omega %.12f sr, phase_n %.12f rad, phase_s %.12f rad\n",
                rep.omega, rep.phase_n, rep.phase_s);
    std::printf("half solid angle : %.12f rad\n", rep.omega / 2.0);
    return 0;
}
