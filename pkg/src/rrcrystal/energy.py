"""Energy functions on tensor squares and their specialised difference profiles.

The energy H on B (x) B is constant along arrows with index != 0 and shifts by
-1 along a 0-arrow that moves the left factor and +1 along one that moves the
right factor.  On a connected tensor square this pins H up to one additive
constant, fixed by an explicit normalisation pair.

Specialising H with per-vertex weight exponents and a dilation exponent turns
it into a difference matrix on coloured integers, together with the congruence
classes of each colour and the finitely many forbidden small parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .crystal import CrystalGraph, tensor, tensor_vertex_str

Vertex = Hashable


class EnergyInconsistency(ValueError):
    """Raised when two propagation paths force different energy values."""


@dataclass(frozen=True)
class EnergyTable:
    """H(b1 (x) b2) for every ordered vertex pair of one crystal."""

    crystal: CrystalGraph
    values: Mapping[tuple, int]

    def __call__(self, b1: Vertex, b2: Vertex) -> int:
        return self.values[(b1, b2)]

    def shifted(self, offset: int) -> "EnergyTable":
        return EnergyTable(self.crystal, {k: v + offset for k, v in self.values.items()})

    def matrix(self, order: Optional[Sequence[Vertex]] = None) -> list[list[int]]:
        order = list(order or self.crystal.vertices)
        return [[self.values[(r, c)] for c in order] for r in order]

    def render(self, order: Optional[Sequence[Vertex]] = None, tsv: bool = False) -> str:
        order = list(order or self.crystal.vertices)
        labels = [tensor_vertex_str(v) for v in order]
        rows = [[""] + labels]
        for v, row in zip(labels, self.matrix(order)):
            rows.append([v] + [str(x) for x in row])
        if tsv:
            return "\n".join("\t".join(r) for r in rows) + "\n"
        width = max(len(x) for row in rows for x in row) + 1
        return "\n".join("".join(x.rjust(width) for x in row) for row in rows) + "\n"


def solve_energy(crystal: CrystalGraph,
                 normalisation: Optional[tuple] = None) -> EnergyTable:
    """Propagate the defining recurrence of H over B (x) B.

    ``normalisation`` is a pair ((b1, b2), value); by default the ground pair
    of the constant ground-state path, H(g (x) g) = 0, with g the unique
    level-1 vertex when one exists, otherwise the first vertex pair.
    Inconsistent propagation (possible only on a graph that is not a crystal
    tensor square) raises :class:`EnergyInconsistency`.
    """
    square = tensor(crystal, crystal)
    if not square.is_connected():
        raise ValueError("tensor square is not connected; energy is not determined")

    if normalisation is None:
        ones = [v for v in crystal.vertices if crystal.level(v) == 1]
        g = ones[0] if len(ones) == 1 else crystal.vertices[0]
        normalisation = ((g, g), 0)
    (pair, value) = normalisation
    pair = tuple(pair)
    if pair not in set(square.vertices):
        raise ValueError(f"normalisation pair {pair} is not a vertex pair")

    values = {pair: value}
    queue = [pair]
    while queue:
        v = queue.pop()
        h = values[v]
        for i in range(crystal.cartan.rank + 1):
            for other, direction in ((square.f_apply(v, i), +1), (square.e_apply(v, i), -1)):
                if other is None:
                    continue
                if i == 0:
                    src = v if direction == +1 else other
                    dst = other if direction == +1 else v
                    left_moved = src[0] != dst[0]
                    delta = (-1 if left_moved else +1) * direction
                else:
                    delta = 0
                expected = h + delta
                if other in values:
                    if values[other] != expected:
                        raise EnergyInconsistency(
                            f"H({tensor_vertex_str(other)}) forced to both "
                            f"{values[other]} and {expected}")
                else:
                    values[other] = expected
                    queue.append(other)
    return EnergyTable(crystal, values)


@dataclass(frozen=True)
class DifferenceProfile:
    """A coloured-partition class: difference matrix, congruences, forbidden parts.

    ``colours`` is the display order; ``order`` lists the colours by descending
    priority, which fixes how equal-valued parts of different colours are
    arranged inside a partition.  ``matrix[(row, col)]`` bounds the drop from a
    part coloured ``col`` to the next (smaller) part coloured ``row``.
    ``residues`` maps a colour to (r, m) meaning its parts are congruent to r
    mod m, or None for no constraint.
    """

    colours: tuple
    matrix: Mapping[tuple, int]
    residues: Mapping[str, Optional[tuple]]
    forbidden: frozenset
    order: tuple = ()

    def __post_init__(self):
        order = self.order or tuple(reversed(self.colours))
        object.__setattr__(self, "order", order)
        if sorted(order) != sorted(self.colours):
            raise ValueError("order must be a permutation of the colours")
        for c in self.colours:
            r = self.residues.get(c)
            if r is not None and r[1] < 1:
                raise ValueError("residue modulus must be >= 1")
        for pair in self.matrix:
            if pair[0] not in self.colours or pair[1] not in self.colours:
                raise ValueError(f"matrix entry {pair} uses unknown colour")
        for c1 in self.colours:
            for c2 in self.colours:
                if (c1, c2) not in self.matrix:
                    raise ValueError(f"matrix entry ({c1}, {c2}) missing")

    def gap(self, following: str, preceding: str) -> int:
        return self.matrix[(following, preceding)]

    def rank(self, colour: str) -> int:
        """Priority of a colour; lower rank = larger in the part order."""
        return self.order.index(colour)

    def part_allowed(self, value: int, colour: str) -> bool:
        if value < 1:
            return False
        rule = self.residues.get(colour)
        if rule is not None and value % rule[1] != rule[0] % rule[1]:
            return False
        return (value, colour) not in self.forbidden

    def without_forbidden(self, value: int, colour: str) -> "DifferenceProfile":
        return DifferenceProfile(self.colours, self.matrix, self.residues,
                                 self.forbidden - {(value, colour)}, self.order)

    def render(self, tsv: bool = False) -> str:
        rows = [[""] + list(self.colours)]
        for r in self.colours:
            rows.append([r] + [str(self.matrix[(r, c)]) for c in self.colours])
        if tsv:
            body = "\n".join("\t".join(row) for row in rows)
        else:
            width = max(len(x) for row in rows for x in row) + 1
            body = "\n".join("".join(x.rjust(width) for x in row) for row in rows)
        extra = []
        for c in self.colours:
            rule = self.residues.get(c)
            if rule is not None:
                extra.append(f"residue {c} {rule[0]} {rule[1]}")
        for value, colour in sorted(self.forbidden):
            extra.append(f"forbid {value} {colour}")
        return body + "\n" + ("\n".join(extra) + "\n" if extra else "")


def parse_profile(text: str) -> DifferenceProfile:
    """Profile text format: colour header row, matrix rows, then residue/forbid lines."""
    header: list = []
    matrix: dict = {}
    residues: dict = {}
    forbidden: set = set()
    row_index = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if not header:
            header = cols
            if len(set(header)) != len(header):
                raise ValueError(f"line {lineno}: duplicate colours in header")
            continue
        if cols[0] == "residue":
            if len(cols) != 4:
                raise ValueError(f"line {lineno}: residue takes 'colour r m'")
            residues[cols[1]] = (int(cols[2]), int(cols[3]))
            continue
        if cols[0] == "forbid":
            if len(cols) != 3:
                raise ValueError(f"line {lineno}: forbid takes 'value colour'")
            forbidden.add((int(cols[1]), cols[2]))
            continue
        if row_index >= len(header):
            raise ValueError(f"line {lineno}: more matrix rows than colours")
        row = cols[1:] if cols[0] == header[row_index] else cols
        if len(row) != len(header):
            raise ValueError(f"line {lineno}: expected {len(header)} entries")
        for c, x in zip(header, row):
            try:
                matrix[(header[row_index], c)] = int(x)
            except ValueError:
                raise ValueError(f"line {lineno}: bad matrix entry {x!r}")
        row_index += 1
    if not header:
        raise ValueError("empty profile")
    if row_index != len(header):
        raise ValueError(f"expected {len(header)} matrix rows, got {row_index}")
    for c in header:
        residues.setdefault(c, None)
    return DifferenceProfile(tuple(header), matrix, residues, frozenset(forbidden))


def load_profile(path) -> DifferenceProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_profile(fh.read())


def specialise_energy(energy: EnergyTable,
                      exponents: Mapping[Vertex, int],
                      t_exponent: int,
                      colour_names: Optional[Mapping[Vertex, str]] = None,
                      order: Optional[Sequence[str]] = None) -> DifferenceProfile:
    """Dilate an energy table into the difference profile it induces.

    A part of undilated value k and vertex v gets size t_exponent*k +
    exponents[v], so the matrix entry for a part coloured row following a part
    coloured col is t_exponent*H(row (x) col) + exp(col) - exp(row); colours
    inherit the congruence class exponents[v] mod t_exponent, and positive
    sizes reachable only with undilated value k <= 0 become forbidden parts.
    """
    if t_exponent < 1:
        raise ValueError("dilation exponent must be positive")
    crystal = energy.crystal
    vertices = list(crystal.vertices)
    if colour_names is None:
        colour_names = {v: tensor_vertex_str(v) for v in vertices}
    colours = tuple(colour_names[v] for v in vertices)

    matrix = {}
    for vr in vertices:
        for vc in vertices:
            matrix[(colour_names[vr], colour_names[vc])] = (
                t_exponent * energy(vr, vc) + exponents[vc] - exponents[vr])

    residues = {colour_names[v]: (exponents[v] % t_exponent, t_exponent) for v in vertices}

    forbidden = set()
    for v in vertices:
        k = 0
        while True:
            size = t_exponent * k + exponents[v]
            if size < 1:
                break
            forbidden.add((size, colour_names[v]))
            k -= 1

    if order is None:
        # descending specialisation exponent, later-declared vertex first on ties
        ranked = sorted(range(len(vertices)),
                        key=lambda i: (exponents[vertices[i]], i), reverse=True)
        order = tuple(colours[i] for i in ranked)
    return DifferenceProfile(colours, matrix, residues, frozenset(forbidden), tuple(order))


# -- path weights under a constant ground state path ---------------------------------


def _check_constant_ground(energy: EnergyTable, ground: Vertex):
    if energy(ground, ground) != 0:
        raise ValueError("need H(g (x) g) = 0; re-normalise the energy table")
    crystal = energy.crystal
    if crystal.epsilon_wt(ground) != crystal.phi_wt(ground):
        raise ValueError(f"{ground!r} does not generate a constant ground state path")


def path_weight(deviation: Mapping[int, Vertex] | Iterable[tuple],
                energy: EnergyTable,
                ground: Vertex) -> tuple[int, dict]:
    """Degree and colour content of a path differing from the ground path.

    ``deviation`` maps positions k to vertices p_k (unlisted positions hold the
    ground vertex).  The degree is the double tail sum
    sum_k sum_{j>=k} H(p_{j+1} (x) p_j); the colour content counts the
    non-ground entries by vertex.
    """
    _check_constant_ground(energy, ground)
    dev = dict(deviation)
    for k, v in dev.items():
        if k < 0:
            raise ValueError("deviation positions must be >= 0")
        if v not in set(energy.crystal.vertices):
            raise ValueError(f"unknown vertex {v!r}")
    top = max(dev) if dev else -1

    def entry(k: int) -> Vertex:
        return dev.get(k, ground)

    degree = 0
    for j in range(top + 1):
        h = energy(entry(j + 1), entry(j))
        degree += (j + 1) * h
    content: dict = {}
    for k, v in dev.items():
        if v != ground:
            content[v] = content.get(v, 0) + 1
    return degree, content


def energy_tails(deviation: Mapping[int, Vertex], energy: EnergyTable,
                 ground: Vertex) -> list[int]:
    """The tail sums lambda_k = sum_{j>=k} H(p_{j+1} (x) p_j), for k = 0..max deviation."""
    dev = dict(deviation)
    top = max(dev) if dev else -1
    tails = [0] * (top + 2)
    for k in range(top, -1, -1):
        h = energy(dev.get(k + 1, ground), dev.get(k, ground))
        tails[k] = tails[k + 1] + h
    return tails[: top + 1]


def iter_deviation_paths(energy: EnergyTable, ground: Vertex, max_degree: int):
    """All deviation paths with degree <= max_degree, as (positions dict, degree).

    Requires every energy value to be non-negative and H(g (x) x) >= 1 for
    x != g, which bounds the search: a non-ground entry at position m costs at
    least m + 1.
    """
    _check_constant_ground(energy, ground)
    crystal = energy.crystal
    others = [v for v in crystal.vertices if v != ground]
    if any(h < 0 for h in energy.values.values()):
        raise ValueError("path enumeration requires non-negative energies")
    if any(energy(ground, v) < 1 for v in others):
        raise ValueError("path enumeration requires H(g (x) x) >= 1 off the ground")

    yield {}, 0
    # a non-ground entry at the top position m alone costs (m+1)*H(g (x) p_m) >= m+1
    from itertools import product

    for m in range(max_degree):
        for top in others:
            for below in product(crystal.vertices, repeat=m):
                assignment = {k: v for k, v in enumerate(below) if v != ground}
                assignment[m] = top
                degree = sum((j + 1) * energy(assignment.get(j + 1, ground),
                                              assignment.get(j, ground))
                             for j in range(m + 1))
                if degree <= max_degree:
                    yield assignment, degree
