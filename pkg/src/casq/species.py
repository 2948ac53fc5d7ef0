"""Atomic internal-structure data model.

An atom enters every computation only through its ladder of dipole
transitions: angular frequencies ``omega_eg`` (rad/s) and squared dipole
matrix elements ``|d_eg|^2`` (C^2 m^2). From these derive the lossless
polarizability

    alpha(omega) = sum_e 2 omega_eg |d_eg|^2 / (3 hbar (omega_eg^2 - omega^2)),

its static limit alpha(0), the equivalent atomic radius a defined by
alpha(0) = 4 pi eps0 a^3, and the mean-square dipole <d^2> = sum_e |d_eg|^2.
All quantities are SI. The response is lossless by design; none of the
far-off-resonance phases computed here involve atomic damping.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass

from .constants import FOUR_PI_EPS0, HBAR
from .errors import DuplicateSpecies, NotTwoLevel, ParseError, PoleProximity

__all__ = [
    "Transition",
    "AtomSpecies",
    "POLE_GUARD_DEFAULT",
    "alpha_of_omega",
    "alpha_static",
    "equivalent_radius",
    "mean_square_dipole",
    "two_level_transition",
    "d2_for_static_polarizability",
    "load_species_db",
    "dump_species_db",
    "default_species_db",
    "resolve_species_db",
    "SPECIES_DB_ENV",
]

#: Relative half-width of the guard band around each resonance. All toolkit
#: uses are far off resonance (adiabatic regime); silently evaluating the
#: lossless polarizability near a pole would poison every quadrature built
#: on top of it, so it is an error instead.
POLE_GUARD_DEFAULT = 1e-6

SPECIES_DB_ENV = "CASQ_SPECIES_DB"


@dataclass(frozen=True)
class Transition:
    """One dipole transition: frequency (rad/s) and |d_eg|^2 (C^2 m^2)."""

    omega_eg: float
    d2: float

    def __post_init__(self):
        if not (self.omega_eg > 0.0 and math.isfinite(self.omega_eg)):
            raise ValueError(f"Transition: omega_eg must be > 0, got {self.omega_eg!r}")
        if not (self.d2 >= 0.0 and math.isfinite(self.d2)):
            raise ValueError(f"Transition: d2 must be >= 0, got {self.d2!r}")


@dataclass(frozen=True)
class AtomSpecies:
    """Named, immutable set of transitions (at least one, frequencies distinct)."""

    name: str
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        if not self.name:
            raise ValueError("AtomSpecies: name must be non-empty")
        trs = tuple(self.transitions)
        object.__setattr__(self, "transitions", trs)
        if len(trs) == 0:
            raise ValueError(f"AtomSpecies {self.name!r}: needs at least one transition")
        freqs = [t.omega_eg for t in trs]
        if len(set(freqs)) != len(freqs):
            raise ValueError(f"AtomSpecies {self.name!r}: transition frequencies must be distinct")


def alpha_of_omega(
    species: AtomSpecies, omega: float, guard: float = POLE_GUARD_DEFAULT
) -> float:
    """Lossless polarizability alpha(omega) in F m^2.

    Even in omega by construction. Raises :class:`PoleProximity` when
    ``| |omega| - omega_eg | < guard * omega_eg`` for any transition.
    """
    w = abs(float(omega))
    for t in species.transitions:
        if abs(w - t.omega_eg) < guard * t.omega_eg:
            raise PoleProximity(
                f"alpha({omega!r}) for {species.name!r}: within guard band "
                f"{guard:g} of resonance at {t.omega_eg!r} rad/s"
            )
    return math.fsum(
        2.0 * t.omega_eg * t.d2 / (3.0 * HBAR * (t.omega_eg**2 - w * w))
        for t in species.transitions
    )


def alpha_static(species: AtomSpecies) -> float:
    """Static polarizability alpha(0) in F m^2."""
    return alpha_of_omega(species, 0.0)


def equivalent_radius(species: AtomSpecies) -> float:
    """Atomic length scale a with alpha(0) = 4 pi eps0 a^3 (m)."""
    return (alpha_static(species) / FOUR_PI_EPS0) ** (1.0 / 3.0)


def mean_square_dipole(species: AtomSpecies) -> float:
    """<d^2> = sum over transitions of |d_eg|^2 (C^2 m^2)."""
    return math.fsum(t.d2 for t in species.transitions)


def two_level_transition(species: AtomSpecies) -> Transition:
    """The single transition of a two-level species, or :class:`NotTwoLevel`."""
    if len(species.transitions) != 1:
        raise NotTwoLevel(
            f"{species.name!r} has {len(species.transitions)} transitions; "
            "this operation is derived for a two-level atom"
        )
    return species.transitions[0]


def d2_for_static_polarizability(omega_eg: float, alpha0: float) -> float:
    """|d|^2 that gives a single-transition species the static value alpha0.

    Inverts alpha(0) = 2 d^2 / (3 hbar omega_eg).
    """
    return 1.5 * HBAR * omega_eg * alpha0


# -- species database (JSON) --------------------------------------------------

def _parse_transition(obj, ctx: str) -> Transition:
    if not isinstance(obj, dict):
        raise ParseError(f"{ctx}: expected an object, got {type(obj).__name__}")
    for key in ("omega_eg_rad_per_s", "d2_C2m2"):
        if key not in obj:
            raise ParseError(f"{ctx}.{key}: missing required key")
        if not isinstance(obj[key], (int, float)) or isinstance(obj[key], bool):
            raise ParseError(f"{ctx}.{key}: expected a number, got {obj[key]!r}")
    extra = set(obj) - {"omega_eg_rad_per_s", "d2_C2m2"}
    if extra:
        raise ParseError(f"{ctx}: unexpected key(s) {sorted(extra)}")
    try:
        return Transition(float(obj["omega_eg_rad_per_s"]), float(obj["d2_C2m2"]))
    except ValueError as exc:
        raise ParseError(f"{ctx}: {exc}") from exc


def parse_species_db(data, source: str = "<species db>") -> list[AtomSpecies]:
    """Validate a decoded species-database document into species objects."""
    if not isinstance(data, dict) or "species" not in data:
        raise ParseError(f"{source}: top level must be an object with a 'species' list")
    entries = data["species"]
    if not isinstance(entries, list):
        raise ParseError(f"{source}.species: expected a list")
    out: list[AtomSpecies] = []
    seen: set[str] = set()
    for i, entry in enumerate(entries):
        ctx = f"{source}.species[{i}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{ctx}: expected an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise ParseError(f"{ctx}.name: missing or not a non-empty string")
        if name in seen:
            raise DuplicateSpecies(f"{source}: duplicate species name {name!r}")
        seen.add(name)
        trs = entry.get("transitions")
        if not isinstance(trs, list) or not trs:
            raise ParseError(f"{ctx}.transitions: missing or empty list")
        transitions = tuple(
            _parse_transition(tr, f"{ctx}.transitions[{j}]") for j, tr in enumerate(trs)
        )
        try:
            out.append(AtomSpecies(name, transitions))
        except ValueError as exc:
            raise ParseError(f"{ctx}: {exc}") from exc
    return out


def load_species_db(path: str) -> list[AtomSpecies]:
    """Load and validate a species database JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc
    return parse_species_db(data, source=path)


def species_db_to_dict(species: list[AtomSpecies]) -> dict:
    return {
        "species": [
            {
                "name": s.name,
                "transitions": [
                    {"omega_eg_rad_per_s": t.omega_eg, "d2_C2m2": t.d2}
                    for t in s.transitions
                ],
            }
            for s in species
        ]
    }


def dump_species_db(species: list[AtomSpecies], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(species_db_to_dict(species), fh, indent=2, sort_keys=True)
        fh.write("\n")


def default_species_db() -> list[AtomSpecies]:
    """Species bundled with the package (demo entries, not spectroscopy data)."""
    from importlib.resources import files

    text = files("casq.data").joinpath("species.json").read_text(encoding="utf-8")
    return parse_species_db(json.loads(text), source="casq.data/species.json")


def resolve_species_db(path: str | None = None) -> list[AtomSpecies]:
    """Database resolution order: explicit path, CASQ_SPECIES_DB, bundled."""
    if path is not None:
        return load_species_db(path)
    env = os.environ.get(SPECIES_DB_ENV)
    if env:
        return load_species_db(env)
    return default_species_db()
