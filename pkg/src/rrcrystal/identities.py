"""Built-in identity registry: each entry binds the routes that must agree.

An identity packages a difference profile (sum side), a Pochhammer product
(product side), and optionally a crystal/recursion provenance.  ``routes(N)``
returns independently computed coefficient sequences; a verifier only has to
compare them degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import recursions
from .crystal import PSI, builtin_crystal, principal_exponents, wt_in_roots
from .energy import DifferenceProfile, EnergyTable, solve_energy, specialise_energy
from .partitions import enumerate_coloured, enumerate_congruence
from .series import (ColourPolynomial, ColourSystem, PochhammerFactor,
                     TruncatedSeries, pochhammer_expand, rr_sum_side)

G2_COLOUR_OF_VERTEX = dict(zip(builtin_crystal("g2").vertices, "abcdefgh"))
G2_ORDER = ("g", "f", "e", "h", "d", "c", "b", "a")
G2_RESIDUE_CLASSES = ((1, 6), (5, 6), (0, 4))


def g2_energy() -> EnergyTable:
    crystal = builtin_crystal("g2")
    return solve_energy(crystal, ((PSI, PSI), 0))


def g2_profile() -> DifferenceProfile:
    """The eight-colour profile of the main identity, derived from the crystal."""
    energy = g2_energy()
    exponents = principal_exponents(wt_in_roots(energy.crystal, PSI))
    return specialise_energy(energy, exponents, recursions.DILATION_T_EXPONENT,
                             G2_COLOUR_OF_VERTEX, order=G2_ORDER)


def primc_profile() -> DifferenceProfile:
    """Primc's four-colour profile.

    The part 1_d is forbidden: the statement's difference and parity
    conditions alone overcount (d-parts arise as 2k+1 with k >= 1), and the
    forbidden part is what makes the count match p(n).
    """
    colours = ("a", "b", "c", "d")
    rows = {"a": (4, 3, 1, 2), "b": (1, 0, 2, 3), "c": (3, 2, 0, 1), "d": (2, 1, 3, 4)}
    matrix = {(r, c): rows[r][j] for r in colours for j, c in enumerate(colours)}
    residues = {"a": (1, 2), "b": (0, 2), "c": (0, 2), "d": (1, 2)}
    return DifferenceProfile(colours, matrix, residues, frozenset({(1, "d")}),
                             order=("d", "c", "b", "a"))


def dousse_lovejoy_profile() -> DifferenceProfile:
    colours = ("a", "b", "c", "d")
    rows = {"a": (2, 1, 0, 0), "b": (1, 0, 1, 1), "c": (2, 1, 0, 0), "d": (2, 1, 2, 2)}
    matrix = {(r, c): rows[r][j] for r in colours for j, c in enumerate(colours)}
    return DifferenceProfile(colours, matrix, {c: None for c in colours}, frozenset(),
                             order=("d", "c", "b", "a"))


def gap2_profile(min_part: int = 1) -> DifferenceProfile:
    """One-colour profile for partitions with gaps >= 2 (smallest part >= min_part)."""
    forbidden = frozenset((v, "p") for v in range(1, min_part))
    return DifferenceProfile(("p",), {("p", "p"): 2}, {"p": None}, forbidden)


DL_SYSTEM = ColourSystem(("a", "c", "d"))

DL_PRODUCT = (
    PochhammerFactor(1, 2, 1, sign=True, colour=DL_SYSTEM.monomial("a")),
    PochhammerFactor(1, 2, 1, sign=True, colour=DL_SYSTEM.monomial("d")),
    PochhammerFactor(1, 1, -1),
    PochhammerFactor(1, 2, -1, colour=DL_SYSTEM.monomial("c")),
)


@dataclass(frozen=True)
class Identity:
    """A named identity with its independently computable coefficient routes."""

    name: str
    description: str
    route_builders: tuple    # of (route name, callable(N) -> list of coefficients)

    def routes(self, N: int) -> list[tuple[str, list]]:
        return [(name, build(N)) for name, build in self.route_builders]

    def route_names(self) -> list[str]:
        return [name for name, _ in self.route_builders]


def _series_route(builder: Callable[[int], TruncatedSeries]):
    return lambda N: [builder(N)[n] for n in range(N + 1)]


def _product_route(factors: Sequence[PochhammerFactor], system: Optional[ColourSystem] = None):
    return _series_route(lambda N: pochhammer_expand(factors, N, system=system))


def _profile_route(profile_builder: Callable[[], DifferenceProfile], track: bool = False):
    def build(N: int) -> list:
        profile = profile_builder()
        system = ColourSystem(profile.colours) if track else None
        return [enumerate_coloured(profile, n, track, system) for n in range(N + 1)]
    return build


def _congruence_route(residues) -> Callable[[int], list]:
    return lambda N: [enumerate_congruence(residues, n) for n in range(N + 1)]


def _g2_crystal_route(N: int) -> list:
    """Grounded partitions counted directly on the crystal with dilated part sizes.

    Parts are pairs (k, vertex) of dilated size 4k + exponent(vertex); the
    difference conditions come straight from the energy table, so this route
    does not go through the specialised profile at all.
    """
    energy = g2_energy()
    crystal = energy.crystal
    exponents = principal_exponents(wt_in_roots(crystal, PSI))
    t_exp = recursions.DILATION_T_EXPONENT

    parts = []
    for v in crystal.vertices:
        k = 1
        while True:
            size = t_exp * k + exponents[v]
            if size > N:
                break
            if size >= 1 and k >= energy(PSI, v):
                parts.append((k, v, size))
            k += 1

    cache: dict = {}

    def count(k: int, v, budget: int) -> int:
        if budget == 0:
            return 1
        key = (k, v, budget)
        if key in cache:
            return cache[key]
        total = 0
        for k2, v2, size2 in parts:
            if size2 <= budget and k - k2 >= energy(v2, v):
                total += count(k2, v2, budget - size2)
        cache[key] = total
        return total

    out = [0] * (N + 1)
    out[0] = 1
    for n in range(1, N + 1):
        out[n] = sum(count(k, v, n - size) for k, v, size in parts if size <= n)
    return out


def _dl_refined_route(N: int) -> list:
    profile = dousse_lovejoy_profile()
    full = ColourSystem(profile.colours)
    out = []
    for n in range(N + 1):
        poly = enumerate_coloured(profile, n, track_colours=True, system=full)
        projected: dict = {}
        for exps, coeff in poly.terms.items():
            key = DL_SYSTEM.monomial({c: exps[full.index[c]] for c in DL_SYSTEM.names})
            projected[key] = projected.get(key, 0) + coeff
        out.append(ColourPolynomial(DL_SYSTEM, projected))
    return out


REGISTRY = {
    "g2": Identity(
        name="g2",
        description="eight-colour identity: parts 1,5 mod 6 or 0 mod 4",
        route_builders=(
            ("product", _product_route((PochhammerFactor(5, 6, -1),
                                        PochhammerFactor(1, 6, -1),
                                        PochhammerFactor(4, 4, -1)))),
            ("congruence", _congruence_route(G2_RESIDUE_CLASSES)),
            ("coloured", _profile_route(g2_profile)),
            ("recursion", _series_route(recursions.dilated_series)),
            ("crystal", _g2_crystal_route),
        ),
    ),
    "primc": Identity(
        name="primc",
        description="Primc's four-colour identity: d(n) = p(n)",
        route_builders=(
            ("product", _product_route((PochhammerFactor(1, 1, -1),))),
            ("coloured", _profile_route(primc_profile)),
        ),
    ),
    "dousse-lovejoy": Identity(
        name="dousse-lovejoy",
        description="refined four-colour identity with tracked colours a, c, d",
        route_builders=(
            ("product", _product_route(DL_PRODUCT, DL_SYSTEM)),
            ("refined", _dl_refined_route),
        ),
    ),
    "rr1": Identity(
        name="rr1",
        description="first Rogers-Ramanujan identity",
        route_builders=(
            ("product", _product_route((PochhammerFactor(1, 5, -1),
                                        PochhammerFactor(4, 5, -1)))),
            ("sum", _series_route(lambda N: rr_sum_side(1, N))),
            ("gap2", _profile_route(gap2_profile)),
        ),
    ),
    "rr2": Identity(
        name="rr2",
        description="second Rogers-Ramanujan identity",
        route_builders=(
            ("product", _product_route((PochhammerFactor(2, 5, -1),
                                        PochhammerFactor(3, 5, -1)))),
            ("sum", _series_route(lambda N: rr_sum_side(2, N))),
            ("gap2", _profile_route(lambda: gap2_profile(min_part=2))),
        ),
    ),
}


def verify_identity(name: str, N: int):
    """Compare all routes of one identity degree by degree.

    Returns (rows, first_mismatch) where rows is a list of
    (degree, [value per route], agree flag) and first_mismatch the smallest
    disagreeing degree or None.
    """
    if name not in REGISTRY:
        raise ValueError(f"unknown identity {name!r} (have {', '.join(sorted(REGISTRY))})")
    if N < 0:
        raise ValueError("order must be >= 0")
    identity = REGISTRY[name]
    routes = identity.routes(N)
    rows = []
    first_mismatch = None
    for n in range(N + 1):
        values = [values_n[n] for _, values_n in routes]
        agree = all(v == values[0] for v in values[1:])
        if not agree and first_mismatch is None:
            first_mismatch = n
        rows.append((n, values, agree))
    return rows, first_mismatch
