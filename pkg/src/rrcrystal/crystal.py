"""Finite crystal graphs: Kashiwara statistics, tensor squares, perfectness.

A crystal is stored as its lowering-arrow set: a partial map (vertex, index)
-> vertex.  Raising arrows are the inverse relation, and the statistics
epsilon_i / phi_i are the lengths of the incoming and outgoing i-chains, so
the graph alone determines all weight data (the built-in examples are
seminormal, where that derivation is exact).

Tensor products follow the convention in which f_i moves the left factor
exactly when phi_i(left) > epsilon_i(right) (and e_i moves it when >=).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .cartan import AffineCartanData, builtin_cartan, canonical_type

Vertex = Hashable


class CrystalGraph:
    """A finite labelled crystal graph over a fixed affine Cartan datum."""

    def __init__(self, cartan: AffineCartanData, vertices: Iterable[Vertex],
                 arrows: Mapping[tuple, Vertex]):
        self.cartan = cartan
        self.vertices = tuple(vertices)
        self._vertex_set = set(self.vertices)
        if len(self._vertex_set) != len(self.vertices):
            raise ValueError("duplicate vertices")
        self.f = dict(arrows)
        self.e = {}
        for (src, i), dst in self.f.items():
            if src not in self._vertex_set or dst not in self._vertex_set:
                raise ValueError(f"arrow {src} -{i}-> {dst} uses unknown vertex")
            if not 0 <= i <= cartan.rank:
                raise ValueError(f"arrow index {i} out of range")
            if (dst, i) in self.e:
                raise ValueError(f"two {i}-arrows into {dst}")
            self.e[(dst, i)] = src
        self._check_chains()
        self._eps = {(v, i): self._chain_length(v, i, self.e)
                     for v in self.vertices for i in range(cartan.rank + 1)}
        self._phi = {(v, i): self._chain_length(v, i, self.f)
                     for v in self.vertices for i in range(cartan.rank + 1)}

    def _check_chains(self):
        # per index, arrows must form disjoint simple paths: no i-cycles
        for i in range(self.cartan.rank + 1):
            for start in self.vertices:
                seen = {start}
                v = start
                while (v, i) in self.f:
                    v = self.f[(v, i)]
                    if v in seen:
                        raise ValueError(f"{i}-arrows contain a cycle through {start}")
                    seen.add(v)

    def _chain_length(self, v: Vertex, i: int, step: dict) -> int:
        n = 0
        while (v, i) in step:
            v = step[(v, i)]
            n += 1
        return n

    # -- Kashiwara data --------------------------------------------------------

    def f_apply(self, v: Vertex, i: int) -> Optional[Vertex]:
        return self.f.get((v, i))

    def e_apply(self, v: Vertex, i: int) -> Optional[Vertex]:
        return self.e.get((v, i))

    def epsilon(self, v: Vertex, i: int) -> int:
        return self._eps[(v, i)]

    def phi(self, v: Vertex, i: int) -> int:
        return self._phi[(v, i)]

    def epsilon_wt(self, v: Vertex) -> tuple:
        """Coefficients of epsilon(v) over the fundamental weights."""
        return tuple(self._eps[(v, i)] for i in range(self.cartan.rank + 1))

    def phi_wt(self, v: Vertex) -> tuple:
        return tuple(self._phi[(v, i)] for i in range(self.cartan.rank + 1))

    def wt(self, v: Vertex) -> tuple:
        """Derived-algebra weight phi(v) - epsilon(v) in fundamental-weight coordinates."""
        return tuple(p - e for p, e in zip(self.phi_wt(v), self.epsilon_wt(v)))

    def level(self, v: Vertex) -> int:
        """Pairing of epsilon(v) with the central element."""
        return sum(c * e for c, e in zip(self.cartan.central, self.epsilon_wt(v)))

    # -- graph structure ---------------------------------------------------------

    def arrows(self) -> list[tuple]:
        return sorted(((src, i, dst) for (src, i), dst in self.f.items()),
                      key=lambda t: (self.vertices.index(t[0]), t[1]))

    def components(self, exclude: Iterable[int] = ()) -> list[frozenset]:
        """Connected components, optionally ignoring arrows with given indices."""
        excluded = set(exclude)
        adj = {v: [] for v in self.vertices}
        for (src, i), dst in self.f.items():
            if i in excluded:
                continue
            adj[src].append(dst)
            adj[dst].append(src)
        seen: set = set()
        comps = []
        for start in self.vertices:
            if start in seen:
                continue
            stack, comp = [start], set()
            while stack:
                v = stack.pop()
                if v in comp:
                    continue
                comp.add(v)
                stack.extend(adj[v])
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1


def level(v: Vertex, crystal: CrystalGraph) -> int:
    return crystal.level(v)


# -- built-in crystals ----------------------------------------------------------

PSI = "Ψ"            # the level-1 vertex of the G2^(2) crystal
BAR = "̄"            # combining macron for the barred vertex names
V3BAR, V2BAR, V1BAR = "3" + BAR, "2" + BAR, "1" + BAR

G2_VERTICES = ("1", "2", "3", "0", V3BAR, V2BAR, V1BAR, PSI)

_G2_ARROWS = {
    ("1", 1): "2", ("3", 1): "0", ("0", 1): V3BAR, (V2BAR, 1): V1BAR,
    ("2", 2): "3", (V3BAR, 2): V2BAR,
    (V1BAR, 0): PSI, (PSI, 0): "1", (V3BAR, 0): "2", (V2BAR, 0): "3",
}

_A1_ARROWS = {("a", 1): "b", ("b", 0): "a"}

_VERTEX_ALIASES = {
    "psi": PSI, "Psi": PSI, "PSI": PSI,
    "3bar": V3BAR, "2bar": V2BAR, "1bar": V1BAR,
    "3b": V3BAR, "2b": V2BAR, "1b": V1BAR,
}


def vertex_name(name: str) -> str:
    return _VERTEX_ALIASES.get(name, name)


_BUILTIN_TAGS = {
    "a1-level1": "a1-level1", "a1": "a1-level1",
    "g2^(2)-level1": "g2-level1", "g2-level1": "g2-level1", "g2": "g2-level1",
}


def builtin_crystal(tag: str) -> CrystalGraph:
    key = _BUILTIN_TAGS.get(tag.strip().lower())
    if key == "a1-level1":
        return CrystalGraph(builtin_cartan("A1^(1)"), ("a", "b"), _A1_ARROWS)
    if key == "g2-level1":
        return CrystalGraph(builtin_cartan("G2^(2)"), G2_VERTICES, _G2_ARROWS)
    raise ValueError(f"unknown crystal {tag!r} (expected a1-level1 or g2^(2)-level1)")


# -- tensor product ---------------------------------------------------------------


def tensor(b1: CrystalGraph, b2: CrystalGraph) -> CrystalGraph:
    """Tensor product crystal on the vertex set b1 x b2.

    f_i acts on the left factor when phi_i(left) > epsilon_i(right) and on the
    right factor otherwise; the raising arrows are then automatically the
    inverse relation.
    """
    if b1.cartan.tag != b2.cartan.tag:
        raise ValueError("tensor factors have different Cartan data")
    vertices = [(x, y) for x in b1.vertices for y in b2.vertices]
    arrows = {}
    for x in b1.vertices:
        for y in b2.vertices:
            for i in range(b1.cartan.rank + 1):
                if b1.phi(x, i) > b2.epsilon(y, i):
                    nx = b1.f_apply(x, i)
                    if nx is not None:
                        arrows[((x, y), i)] = (nx, y)
                else:
                    ny = b2.f_apply(y, i)
                    if ny is not None:
                        arrows[((x, y), i)] = (x, ny)
    return CrystalGraph(b1.cartan, vertices, arrows)


def tensor_vertex_str(v) -> str:
    if isinstance(v, tuple):
        return "⊗".join(tensor_vertex_str(x) for x in v)
    return str(v)


# -- perfectness ------------------------------------------------------------------


@dataclass
class PerfectReport:
    """Outcome of the machine-checkable perfectness conditions at one level.

    The classical-decomposition condition and the weight-cone condition are
    not machine-checked; they are listed in ``unchecked`` instead of being
    guessed at.
    """

    level: int
    tensor_connected: bool
    min_level: int
    min_level_ok: bool
    epsilon_witnesses: dict      # level-l weight -> vertices with epsilon(b) = weight
    phi_witnesses: dict          # level-l weight -> vertices with phi(b) = weight
    epsilon_unique: bool
    phi_unique: bool
    unchecked: tuple = ("classical-crystal decomposition", "weight-cone containment")

    @property
    def checked_ok(self) -> bool:
        return (self.tensor_connected and self.min_level_ok
                and self.epsilon_unique and self.phi_unique)


def check_perfect(crystal: CrystalGraph, level_l: int) -> PerfectReport:
    """Report the machine-checkable perfect-crystal conditions for level ``level_l``."""
    square = tensor(crystal, crystal)
    connected = square.is_connected()
    levels = {v: crystal.level(v) for v in crystal.vertices}
    min_level = min(levels.values())

    eps_witnesses: dict = {}
    phi_witnesses: dict = {}
    for v in crystal.vertices:
        ew = crystal.epsilon_wt(v)
        if sum(c * x for c, x in zip(crystal.cartan.central, ew)) == level_l:
            eps_witnesses.setdefault(ew, []).append(v)
        pw = crystal.phi_wt(v)
        if sum(c * x for c, x in zip(crystal.cartan.central, pw)) == level_l:
            phi_witnesses.setdefault(pw, []).append(v)

    return PerfectReport(
        level=level_l,
        tensor_connected=connected,
        min_level=min_level,
        min_level_ok=min_level >= level_l,
        epsilon_witnesses=eps_witnesses,
        phi_witnesses=phi_witnesses,
        epsilon_unique=all(len(vs) == 1 for vs in eps_witnesses.values()),
        phi_unique=all(len(vs) == 1 for vs in phi_witnesses.values()),
    )


# -- ground state paths -------------------------------------------------------------


def ground_state_path(crystal: CrystalGraph, weight: Sequence[int], length: int) -> tuple:
    """The reference path g_0, g_1, ... of a level-l weight, with its period.

    g_k is the unique vertex with phi(g_k) equal to the running weight, and the
    next weight is epsilon(g_k); a missing or non-unique vertex is an error.
    """
    weight = tuple(weight)
    path = []
    seen = {}
    period = None
    lam = weight
    for k in range(length):
        if lam in seen and period is None:
            period = k - seen[lam]
        if lam not in seen:
            seen[lam] = k
        matches = [v for v in crystal.vertices if crystal.phi_wt(v) == lam]
        if len(matches) != 1:
            raise ValueError(f"weight {lam} has {len(matches)} vertices with phi(b) = weight")
        g = matches[0]
        path.append(g)
        lam = crystal.epsilon_wt(g)
    if period is None:
        # the recurrence on weights is eventually periodic; detect over one more sweep
        period = 0
    return tuple(path), period


# -- derived-algebra weights in root coordinates -------------------------------------


def wt_in_roots(crystal: CrystalGraph, anchor: Vertex) -> dict:
    """Weights of all vertices over the finite simple roots, anchored at zero.

    Every i-arrow lowers the weight by alpha_i, with alpha_0 rewritten through
    delta = 0 as -(1/d0) * sum_{i>=1} labels[i] * alpha_i.  The crystal must be
    connected and the anchor must have derived-algebra weight zero; the
    resulting assignment is checked on every arrow.
    """
    cartan = crystal.cartan
    if cartan.d0 != 1:
        raise ValueError("root coordinates need d0 = 1")
    if any(crystal.wt(anchor)):
        raise ValueError(f"anchor {anchor!r} has non-zero derived weight {crystal.wt(anchor)}")
    if not crystal.is_connected():
        raise ValueError("crystal is not connected")
    n = cartan.rank
    alpha = {i: tuple(1 if j == i else 0 for j in range(1, n + 1)) for i in range(1, n + 1)}
    alpha[0] = tuple(-cartan.labels[j] for j in range(1, n + 1))

    coords = {anchor: (0,) * n}
    queue = [anchor]
    while queue:
        v = queue.pop()
        base = coords[v]
        for i in range(n + 1):
            for other, sign in ((crystal.f_apply(v, i), -1), (crystal.e_apply(v, i), +1)):
                if other is None:
                    continue
                value = tuple(b + sign * a for b, a in zip(base, alpha[i]))
                if other in coords:
                    if coords[other] != value:
                        raise ValueError(
                            f"inconsistent weight for {other!r}: {coords[other]} vs {value}")
                else:
                    coords[other] = value
                    queue.append(other)
    return coords


def principal_exponents(coords: Mapping[Vertex, tuple]) -> dict:
    """Principal specialisation exponent of e^(wt b): the negated coordinate sum."""
    return {v: -sum(x) for v, x in coords.items()}


# -- crystal definition files ----------------------------------------------------------


def render_crystal(crystal: CrystalGraph, tag: Optional[str] = None) -> str:
    lines = [f"cartan {tag or crystal.cartan.tag}"]
    for v in crystal.vertices:
        lines.append(f"vertex {v}")
    for src, i, dst in crystal.arrows():
        lines.append(f"arrow {src} {i} {dst}")
    return "\n".join(lines) + "\n"


def parse_crystal(text: str) -> CrystalGraph:
    cartan = None
    vertices: list = []
    arrows: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        kind, args = cols[0], cols[1:]
        if kind == "cartan":
            if len(args) != 1:
                raise ValueError(f"line {lineno}: cartan takes one type tag")
            cartan = builtin_cartan(args[0])
        elif kind == "vertex":
            if len(args) != 1:
                raise ValueError(f"line {lineno}: vertex takes one name")
            vertices.append(vertex_name(args[0]))
        elif kind == "arrow":
            if len(args) != 3:
                raise ValueError(f"line {lineno}: arrow takes 'src i dst'")
            src, i_text, dst = args
            try:
                i = int(i_text)
            except ValueError:
                raise ValueError(f"line {lineno}: arrow index {i_text!r} is not an integer")
            arrows[(vertex_name(src), i)] = vertex_name(dst)
        else:
            raise ValueError(f"line {lineno}: unknown directive {kind!r}")
    if cartan is None:
        raise ValueError("missing 'cartan <type>' line")
    if not vertices:
        raise ValueError("no vertices")
    try:
        return CrystalGraph(cartan, vertices, arrows)
    except ValueError as exc:
        raise ValueError(f"invalid crystal: {exc}") from exc


def load_crystal(path) -> CrystalGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_crystal(fh.read())
