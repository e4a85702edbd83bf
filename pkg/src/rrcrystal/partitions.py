"""Exhaustive enumeration of ordinary, congruence-restricted, and coloured partitions.

This module is the ground truth the generating-function pipelines are tested
against.  Enumeration is memoised on (remaining weight, previous part), which
keeps the brute-force semantics while making weights up to a few dozen cheap.

Coloured partitions are kept as sequences sorted by part value and then by the
profile's declared colour priority; consecutive parts (and the implicit ground
part of grounded partitions) must respect the difference matrix.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from .energy import DifferenceProfile, EnergyTable, energy_tails, iter_deviation_paths
from .series import ColourPolynomial, ColourSystem, TruncatedSeries

Vertex = Hashable


# -- plain and congruence-restricted partitions ------------------------------------


def partition_count(n: int) -> int:
    """p(n) by the restricted-largest-part recurrence (exact, unmemoised API)."""
    if n < 0:
        raise ValueError("n must be >= 0")

    @lru_cache(maxsize=None)
    def count(remaining: int, largest: int) -> int:
        if remaining == 0:
            return 1
        return sum(count(remaining - k, k) for k in range(1, min(remaining, largest) + 1))

    return count(n, n)


def enumerate_congruence(residues: Iterable[tuple], n: int) -> int:
    """Partitions of n whose every part is congruent to r mod m for some (r, m) listed."""
    if n < 0:
        raise ValueError("n must be >= 0")
    rules = list(residues)
    if any(m < 1 for _, m in rules):
        raise ValueError("moduli must be >= 1")
    allowed = [v for v in range(1, n + 1)
               if any(v % m == r % m for r, m in rules)]
    counts = [0] * (n + 1)
    counts[0] = 1
    for v in allowed:
        for w in range(v, n + 1):
            counts[w] += counts[w - v]
    return counts[n]


def congruence_series(residues: Iterable[tuple], N: int) -> TruncatedSeries:
    rules = list(residues)
    counts = [0] * (N + 1)
    counts[0] = 1
    for v in range(1, N + 1):
        if any(v % m == r % m for r, m in rules):
            for w in range(v, N + 1):
                counts[w] += counts[w - v]
    return TruncatedSeries("q", counts)


# -- coloured partitions under a difference profile ----------------------------------


def _allowed_parts(profile: DifferenceProfile, n: int) -> list[tuple]:
    """All parts (value, colour) of value <= n, sorted descending in the part order."""
    parts = [(v, c) for v in range(1, n + 1) for c in profile.colours
             if profile.part_allowed(v, c)]
    parts.sort(key=lambda p: (-p[0], profile.rank(p[1])))
    return parts


def _successors(profile: DifferenceProfile, parts: Sequence[tuple]) -> dict:
    """For each part, the list of parts that may follow it (value-sorted descending)."""
    out: dict = {None: list(parts)}
    for value, colour in parts:
        following = []
        for v2, c2 in parts:
            if v2 > value or (v2 == value and profile.rank(c2) < profile.rank(colour)):
                continue
            if value - v2 >= profile.gap(c2, colour):
                following.append((v2, c2))
        out[(value, colour)] = following
    return out


def iter_coloured(profile: DifferenceProfile, n: int) -> Iterator[tuple]:
    """Generate every coloured partition of weight n, largest part first."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        yield ()
        return
    parts = _allowed_parts(profile, n)
    succ = _successors(profile, parts)

    def descend(prefix: list, prev, remaining: int):
        if remaining == 0:
            yield tuple(prefix)
            return
        for part in succ[prev]:
            if part[0] > remaining:
                continue
            prefix.append(part)
            yield from descend(prefix, part, remaining - part[0])
            prefix.pop()

    yield from descend([], None, n)


def enumerate_coloured(profile: DifferenceProfile, n: int,
                       track_colours: bool = False,
                       system: Optional[ColourSystem] = None):
    """Count coloured partitions of weight n; optionally as a colour polynomial.

    The memoised recursion runs over (remaining weight, previous part), so the
    result is exact brute force without the exponential blow-up.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if track_colours and system is None:
        system = ColourSystem(profile.colours)
    parts = _allowed_parts(profile, n)
    succ = _successors(profile, parts)
    cache: dict = {}

    def count(prev, remaining: int):
        if remaining == 0:
            return system.const(1) if track_colours else 1
        key = (prev, remaining)
        if key in cache:
            return cache[key]
        total = system.const(0) if track_colours else 0
        for value, colour in succ[prev]:
            if value > remaining:
                continue
            sub = count((value, colour), remaining - value)
            if track_colours:
                sub = sub * system.var(colour)
            total = total + sub
        cache[key] = total
        return total

    return count(None, n)


def coloured_series(profile: DifferenceProfile, N: int, track_colours: bool = False,
                    var: str = "q") -> TruncatedSeries:
    system = ColourSystem(profile.colours) if track_colours else None
    coeffs = [enumerate_coloured(profile, n, track_colours, system) for n in range(N + 1)]
    return TruncatedSeries(var, coeffs)


def render_partition(parts: Iterable[tuple]) -> str:
    return " ".join(f"{v}_{c}" for v, c in parts) if parts else "(empty)"


# -- grounded partitions from an energy table -----------------------------------------


def grounded_series(energy: EnergyTable, ground: Vertex, N: int,
                    colour_names: Optional[Mapping[Vertex, str]] = None) -> TruncatedSeries:
    """Sum of C(pi) t^|pi| over grounded partitions, truncated at t^N.

    Parts are pairs (value, vertex); consecutive parts (k, b) then (k', b')
    need k - k' >= H(b' (x) b), and the last stored part must tolerate the
    implicit trailing ground part of value 0, which itself contributes neither
    weight nor colour.
    """
    if energy(ground, ground) != 0:
        raise ValueError("need H(g (x) g) = 0; re-normalise the energy table")
    crystal = energy.crystal
    vertices = list(crystal.vertices)
    if colour_names is None:
        colour_names = {v: str(v) for v in vertices}
    system = ColourSystem(tuple(colour_names[v] for v in vertices))
    colour_of = {v: system.var(colour_names[v]) for v in vertices}

    cache: dict = {}

    def below(value: int, vertex: Vertex, budget: int) -> ColourPolynomial:
        """Sum over partitions with all parts below (value, vertex), weight = budget."""
        key = (value, vertex, budget)
        if key in cache:
            return cache[key]
        total = system.const(1) if budget == 0 else system.const(0)
        if budget > 0:
            for v2 in vertices:
                top = min(budget, value - energy(v2, vertex))
                for k2 in range(max(1, energy(ground, v2)), top + 1):
                    total = total + colour_of[v2] * below(k2, v2, budget - k2)
        cache[key] = total
        return total

    coeffs = [system.const(0)] * (N + 1)
    coeffs[0] = system.const(1)
    for n in range(1, N + 1):
        acc = system.const(0)
        for v in vertices:
            for k in range(max(1, energy(ground, v)), n + 1):
                acc = acc + colour_of[v] * below(k, v, n - k)
        coeffs[n] = acc
    return TruncatedSeries("t", coeffs)


def path_series(energy: EnergyTable, ground: Vertex, N: int,
                colour_names: Optional[Mapping[Vertex, str]] = None) -> TruncatedSeries:
    """The grounded-partition series rebuilt from deviation paths.

    Every grounded partition decomposes uniquely as a deviation path plus an
    ordinary padding partition: position k of the path carries the energy tail
    lambda_k, the padding mu adds mu_k on top, and the part colour is the path
    entry's colour where the path deviates (the ground colour where only the
    padding is positive).  Summing t^(degree + |mu|) times those colours over
    all pairs reproduces the grounded series; this is an independent route
    through the path weight formula.
    """
    crystal = energy.crystal
    vertices = list(crystal.vertices)
    if colour_names is None:
        colour_names = {v: str(v) for v in vertices}
    system = ColourSystem(tuple(colour_names[v] for v in vertices))
    ground_var = system.var(colour_names[ground])

    coeffs = [system.const(0)] * (N + 1)
    for deviation, degree in iter_deviation_paths(energy, ground, N):
        tails = energy_tails(deviation, energy, ground)
        top = len(tails) - 1                      # highest path position in use
        if any(t == 0 for t in tails):
            raise ValueError("zero energy tail inside a deviation; padding is ambiguous")
        base = system.const(1)
        for k in range(top + 1):
            base = base * system.var(colour_names[deviation.get(k, ground)])
        # pad with ordinary partitions mu_0 >= mu_1 >= ...; parts of mu beyond
        # the path support sit on ground entries and are coloured by the ground
        for mu in _padded_partitions(N - degree):
            weight = degree + sum(mu)
            extra = sum(1 for j, m in enumerate(mu) if j > top and m > 0)
            term = base * ground_var ** extra if extra else base
            coeffs[weight] = coeffs[weight] + term
    return TruncatedSeries("t", coeffs)


def _padded_partitions(budget: int) -> Iterator[tuple]:
    """All ordinary partitions (non-increasing positive tuples) with sum <= budget."""
    def grow(prefix: list, largest: int, remaining: int):
        yield tuple(prefix)
        for m in range(1, min(largest, remaining) + 1):
            prefix.append(m)
            yield from grow(prefix, m, remaining - m)
            prefix.pop()

    yield ()
    for first in range(1, budget + 1):
        yield from grow([first], first, budget - first)


# -- the refined four-colour enumeration ----------------------------------------------


def refined_count_dl(profile: DifferenceProfile, n_max: int,
                     tracked: Sequence[str] = ("a", "c", "d")) -> dict:
    """Table A(n; k, l, m): partitions of n with k, l, m parts of the tracked colours.

    Colours outside ``tracked`` are counted but not indexed (their multiplicity
    is projected out), matching a generating function with unit weight on them.
    """
    table: dict = {}
    for n in range(n_max + 1):
        poly = enumerate_coloured(profile, n, track_colours=True)
        for exps, coeff in poly.terms.items():
            key = tuple(exps[poly.system.index[c]] for c in tracked)
            table[(n, *key)] = table.get((n, *key), 0) + coeff
    return table
