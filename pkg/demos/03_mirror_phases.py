"""Interferometer phases near a perfect mirror.

One arm of an atom interferometer skims a reflecting surface at z = 0.
The quasi-static phase integrates the instantaneous image-dipole
potential U(z) = -<d^2>/(48 pi eps0 z^3) along the path; the motional
correction replaces U by its average over the round-trip light delay
tau = 2 z / c and is suppressed by roughly 3 v/c. The script checks both
against their closed forms for a linear retreat from the surface.

Run:  python3 demos/03_mirror_phases.py
"""

import math

from casq import (
    AtomSpecies,
    Linear1D,
    MirrorScenario,
    QuadratureSpec,
    TimeWindow,
    Transition,
    mean_square_dipole,
    motional_phase_mirror,
    quasi_static_phase,
    vdw_potential,
)
from casq.constants import C_LIGHT, EPSILON_0, HBAR

atom = AtomSpecies("demo", (Transition(2.0e15, 1.0e-58),))
c3 = mean_square_dipole(atom) / (48.0 * math.pi * EPSILON_0)

h = 1.0e-6            # starting distance, 1 um
v = 3.0e4             # retreat speed, 30 km/s  (v/c = 1e-4)
t_end = 1.0e-13
window = TimeWindow(0.0, t_end)
spec = QuadratureSpec(rel_tol=1e-12)

print(f"U(h)        = {vdw_potential(atom, h):.4e} J at h = {h * 1e6:.1f} um")

scenario = MirrorScenario(atom, (Linear1D(h, v),), window)

qs = quasi_static_phase(scenario, 0, spec)
delta = 1.0 / h**2 - 1.0 / (h + v * t_end) ** 2
qs_closed = c3 / (2.0 * HBAR * v) * delta
print(f"phi_qs      = {qs.value:.10e} rad   closed form {qs_closed:.10e}")

mot = motional_phase_mirror(scenario, 0, spec)
mot_closed = -(3.0 * c3 / (2.0 * HBAR * C_LIGHT)) * delta
print(f"phi_mot     = {mot.value:.10e} rad   leading order {mot_closed:.10e}")
print(f"phi_mot/phi_qs = {mot.value / qs.value:.3e}   (-3 v/c = {-3.0 * v / C_LIGHT:.3e})")

# the breakdown carries the leading-order companion and their ratio
for key, val in mot.breakdown.items():
    print(f"  breakdown[{key}] = {val:.6e}")
