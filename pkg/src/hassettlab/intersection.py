"""Excess intersection numbers and secant counts for surfaces meeting along curves.

Inputs are numerical invariants only: the degree ``d`` and genus ``g`` of
the common curve and the canonical pairings ``K_S . C`` of the surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass

# Ambient term of the multiplicity formula, as a multiple of deg C:
# -K_Y . C for the ambient Y. A smooth cubic fourfold has -K = 3H; after
# projecting from a general point into P^4 the ambient is P^4 with -K = 5H,
# which gives the constants 5 (line) and 10 (conic).
PRESETS: dict[str, int] = {
    "cubic-fourfold": 3,
    "projected-p4": 5,
}
PRESET_ALIASES = {
    "scroll": "projected-p4",
    "veronese": "projected-p4",
    "p4": "projected-p4",
    "cubic": "cubic-fourfold",
}
DEFAULT_PRESET = "projected-p4"


def resolve_preset(name: str) -> str:
    name = PRESET_ALIASES.get(name, name)
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return name


def plane_curve_invariants(d: int) -> tuple[int, int]:
    """Genus and K_P . C of a smooth plane curve of degree d."""
    if d <= 0:
        raise ValueError("plane curve degree must be positive")
    return (d - 1) * (d - 2) // 2, -3 * d


def excess_surface_plane(ksc: int, d: int, g: int) -> int:
    """S . P when S and the plane P meet along a smooth plane curve C.

    Equals K_S.C - d(d-3) = K_S.C + 2 - 2g; the two forms must agree.
    """
    if -d * (d - 3) != 2 - 2 * g:
        raise ValueError(f"(d={d}, g={g}) is not the degree/genus of a plane curve")
    return ksc + 2 - 2 * g


def ambient_term(preset: str, d: int) -> int:
    return PRESETS[resolve_preset(preset)] * d


def mult_along_curve(d: int, g: int, k1c: int, k2c: int, preset: str = DEFAULT_PRESET) -> int:
    """Intersection multiplicity of two surfaces along a common curve C.

    ``A + K_1.C + K_2.C + 2 - 2g`` with the ambient term A given by the
    preset: 3d inside a cubic fourfold, 5d after projection into P^4.
    """
    return ambient_term(preset, d) + k1c + k2c + 2 - 2 * g


@dataclass(frozen=True)
class ScrollLineCase:
    l_self: int
    excess: int
    mult: int
    status: str
    flat_limit: str


def scroll_line_case(l_self: int) -> ScrollLineCase:
    """Plane meeting a cubic scroll along a line with self-intersection l_self."""
    if l_self not in (-1, 0):
        raise ValueError("a line on a cubic scroll has self-intersection 0 or -1")
    ksl = -2 - l_self
    excess = excess_surface_plane(ksl, 1, 0)
    mult = mult_along_curve(1, 0, ksl, plane_curve_invariants(1)[1])
    status = "OADP" if secant_count(3, 1, mult) == 1 else "defective"
    limit = "quartic scroll limit" if l_self == 0 else "Veronese limit"
    return ScrollLineCase(l_self, excess, mult, status, limit)


def secant_count(deg1: int, deg2: int, accounted: int) -> int:
    """Secant lines through a general point: deg1*deg2 minus what the intersection absorbs."""
    if accounted < 0:
        raise ValueError("accounted intersection must be non-negative")
    k = deg1 * deg2 - accounted
    if k < 0:
        raise ValueError(f"inconsistent input: {deg1}*{deg2} - {accounted} < 0")
    return k


def classify_secants(k: int) -> str:
    if k == 1:
        return "OADP"
    if k == 0:
        return "defective"
    return f"finite({k})"
