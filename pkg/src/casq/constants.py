"""Physical constants used throughout the toolkit (SI, CODATA 2018).

Every compute module imports constants from here so that reported values,
reference tables and regression baselines all share a single source of
truth. ``constants_hash()`` fingerprints the table; the CLI stamps it into
every report so results can be traced to the constant set that produced
them.
"""

from __future__ import annotations

import hashlib
import math

#: Speed of light in vacuum (m/s, exact).
C_LIGHT = 299792458.0

#: Planck constant (J·s, exact by SI definition).
H_PLANCK = 6.62607015e-34

#: Reduced Planck constant, h / 2π (J·s).
HBAR = H_PLANCK / (2.0 * math.pi)

#: Vacuum permittivity (F/m).
EPSILON_0 = 8.8541878128e-12

#: 4π ε0, the Gaussian-to-SI conversion factor that appears in all
#: polarizability and dipole formulas (F/m).
FOUR_PI_EPS0 = 4.0 * math.pi * EPSILON_0

CONSTANTS_TABLE = {
    "c_m_per_s": C_LIGHT,
    "h_J_s": H_PLANCK,
    "hbar_J_s": HBAR,
    "epsilon0_F_per_m": EPSILON_0,
}


def constants_hash() -> str:
    """SHA-256 fingerprint of the constants table (first 16 hex digits)."""
    payload = "\n".join(f"{k}={v:.17g}" for k, v in sorted(CONSTANTS_TABLE.items()))
    return hashlib.sha256(payload.encode("ascii")).hexdigest()[:16]
