"""Affine Cartan data, parametrised positive-root families, and specialised products.

The three built-in algebras are stored as literal tables: the generalised
Cartan matrix, the labels (coefficients of the basic imaginary root delta),
the colabels (the left null vector of the GCM), and the central-element
coefficients used for crystal levels.  Root families are one-parameter
arithmetic progressions of positive roots transcribed as data, not generated
from a Weyl group.

An s-specialisation sends every family to a q-Pochhammer factor; collecting
those factors for a numerator and denominator weight gives the product side
of an identity (a principally specialised character).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .series import PochhammerFactor, TruncatedSeries, pochhammer_expand

A1 = "A1^(1)"
G2_1 = "G2^(1)"
G2_2 = "G2^(2)"

_ALIASES = {
    "a1": A1, "a1^(1)": A1, "a1(1)": A1,
    "g2^(1)": G2_1, "g2(1)": G2_1,
    "g2": G2_2, "g2^(2)": G2_2, "g2(2)": G2_2,
}


def canonical_type(tag: str) -> str:
    key = tag.strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    raise ValueError(f"unknown affine type {tag!r} (expected one of A1^(1), G2^(1), G2^(2))")


@dataclass(frozen=True)
class AffineCartanData:
    """Cartan matrix plus the derived affine bookkeeping for one algebra.

    ``labels`` are the coefficients of the simple roots in delta (so
    ``d0 = labels[0]``); ``colabels`` form the left null vector of the GCM;
    ``central`` holds the central-element coefficients used for vertex levels.
    For A1^(1) and G2^(1) these coincide with the colabels.
    """

    tag: str
    gcm: tuple
    labels: tuple
    colabels: tuple
    central: tuple

    @property
    def rank(self) -> int:
        return len(self.labels) - 1

    @property
    def d0(self) -> int:
        return self.labels[0]

    def validate(self):
        n = len(self.gcm)
        for i in range(n):
            if self.gcm[i][i] != 2:
                raise ValueError("diagonal GCM entries must be 2")
            for j in range(n):
                if i != j and self.gcm[i][j] > 0:
                    raise ValueError("off-diagonal GCM entries must be <= 0")
                if (self.gcm[i][j] == 0) != (self.gcm[j][i] == 0):
                    raise ValueError("asymmetric zero pattern in GCM")
        for i in range(n):
            if sum(self.gcm[i][j] * self.labels[j] for j in range(n)) != 0:
                raise ValueError("labels are not a right null vector")
        for j in range(n):
            if sum(self.colabels[i] * self.gcm[i][j] for i in range(n)) != 0:
                raise ValueError("colabels are not a left null vector")
        if math.gcd(*self.labels) != 1 or math.gcd(*self.colabels) != 1:
            raise ValueError("labels and colabels must each have gcd 1")


_CARTAN = {
    A1: AffineCartanData(
        tag=A1,
        gcm=((2, -2), (-2, 2)),
        labels=(1, 1),
        colabels=(1, 1),
        central=(1, 1),
    ),
    G2_1: AffineCartanData(
        tag=G2_1,
        gcm=((2, -1, 0), (-1, 2, -1), (0, -3, 2)),
        labels=(1, 2, 3),
        colabels=(1, 2, 1),
        central=(1, 2, 1),
    ),
    # The central coefficients (1,2,2) are the ones the level table of the
    # G2^(2) level-1 crystal is computed with; they differ from the colabels
    # (the GCM's left null vector) in the last entry.
    G2_2: AffineCartanData(
        tag=G2_2,
        gcm=((2, -1, 0), (-1, 2, -3), (0, -1, 2)),
        labels=(1, 2, 1),
        colabels=(1, 2, 3),
        central=(1, 2, 2),
    ),
}

for _data in _CARTAN.values():
    _data.validate()


def builtin_cartan(tag: str) -> AffineCartanData:
    return _CARTAN[canonical_type(tag)]


@dataclass(frozen=True)
class RootFamily:
    """A one-parameter family of positive roots sum_i (m_i*k + c_i) alpha_i, k >= k_start."""

    cls: str                      # "short" | "long" | "imaginary"
    coeffs: tuple                 # ((m_0, c_0), ..., (m_n, c_n))
    k_start: int
    mult: int = 1

    def __post_init__(self):
        if self.cls not in ("short", "long", "imaginary"):
            raise ValueError(f"unknown root class {self.cls!r}")
        if self.mult < 1:
            raise ValueError("multiplicity must be positive")
        first = self.root_at(self.k_start)
        if any(x < 0 for x in first) or not any(first):
            raise ValueError(f"family {self} starts at a non-positive root {first}")

    def root_at(self, k: int) -> tuple:
        return tuple(m * k + c for m, c in self.coeffs)


def _fam(cls, ms, cs, k_start, mult=1):
    return RootFamily(cls, tuple(zip(ms, cs)), k_start, mult)


# A1^(1) positive roots: alpha1 + k*delta (k>=0), -alpha1 + k*delta (k>=1),
# k*delta (k>=1); delta = alpha0 + alpha1.
_A1_FAMILIES = (
    _fam("short", (1, 1), (0, 1), 0),
    _fam("short", (1, 1), (0, -1), 1),
    _fam("imaginary", (1, 1), (0, 0), 1),
)

# G2^(1) positive roots, delta = alpha0 + 2 alpha1 + 3 alpha2.  Short and long
# refer to the finite G2 roots the family extends; the two families obtained
# from -(alpha1 + 3 alpha2) and -(2 alpha1 + 3 alpha2) start at k = 1 (their
# k = 1 members, alpha0 + alpha1 and alpha0, are positive roots).
_G2_1_FAMILIES = (
    _fam("short", (1, 2, 3), (0, 0, 1), 0),
    _fam("short", (1, 2, 3), (0, 1, 1), 0),
    _fam("short", (1, 2, 3), (0, 1, 2), 0),
    _fam("short", (1, 2, 3), (0, 0, -1), 1),
    _fam("short", (1, 2, 3), (0, -1, -1), 1),
    _fam("short", (1, 2, 3), (0, -1, -2), 1),
    _fam("long", (1, 2, 3), (0, 1, 0), 0),
    _fam("long", (1, 2, 3), (0, 1, 3), 0),
    _fam("long", (1, 2, 3), (0, 2, 3), 0),
    _fam("long", (1, 2, 3), (0, -1, 0), 1),
    _fam("long", (1, 2, 3), (0, -1, -3), 1),
    _fam("long", (1, 2, 3), (0, -2, -3), 1),
    _fam("imaginary", (1, 2, 3), (0, 0, 0), 1, mult=2),
)

_FAMILIES = {A1: _A1_FAMILIES, G2_1: _G2_1_FAMILIES}


def positive_root_families(tag: str) -> tuple:
    """Positive-root family tables; available for A1^(1) and G2^(1).

    G2^(2) has no table of its own: every product computed here uses the dual
    root system, which for G2^(2) is the G2^(1) system.
    """
    canon = canonical_type(tag)
    if canon not in _FAMILIES:
        raise ValueError(f"no root family table for {canon}")
    return _FAMILIES[canon]


@dataclass(frozen=True)
class SpecialisationVector:
    """Exponents s_i of the substitution e^(-alpha_i) -> q^(s_i)."""

    s: tuple

    def __post_init__(self):
        if any(x < 0 for x in self.s):
            raise ValueError("specialisation exponents must be non-negative")
        if not any(self.s):
            raise ValueError("specialisation vector must be non-zero")


def specialise_families(
    families: Iterable[RootFamily],
    s: SpecialisationVector | Sequence[int],
) -> list[PochhammerFactor]:
    """Send each family to the factor (q^a; q^n)^mult it specialises to.

    ``a`` is the specialised exponent of the family's first root and ``n``
    the specialised exponent of its step (one delta).  A family whose first
    root specialises to exponent 0 lies in the kernel of the specialisation,
    which no valid product allows.
    """
    if not isinstance(s, SpecialisationVector):
        s = SpecialisationVector(tuple(s))
    out = []
    for fam in families:
        if len(s.s) != len(fam.coeffs):
            raise ValueError("specialisation vector length mismatch")
        step = sum(si * m for si, (m, _) in zip(s.s, fam.coeffs))
        first = sum(si * x for si, x in zip(s.s, fam.root_at(fam.k_start)))
        if first == 0:
            raise ValueError(f"family {fam} specialises to exponent 0 under s={s.s}")
        out.append(PochhammerFactor(a=first, n=step, power=fam.mult))
    return out


# -- collection and pretty factorisation -------------------------------------


def _merge_exponents(factors: Iterable[PochhammerFactor]) -> tuple[int, dict]:
    """Net exponent of (1 - q^m) for every m in one period of the product.

    Returns (L, net) where L is the lcm of the factor moduli and net[m] for
    m in 1..L is the net power of the progression m, m+L, m+2L, ...
    All factor shifts must satisfy 1 <= a <= n (true for root families).
    """
    factors = list(factors)
    if any(f.sign for f in factors):
        raise ValueError("signed factors cannot be collected")
    L = math.lcm(*(f.n for f in factors)) if factors else 1
    net = {m: 0 for m in range(1, L + 1)}
    for f in factors:
        if not 1 <= f.a <= f.n:
            raise ValueError(f"factor {f.label()} has shift outside its modulus")
        for m in range(f.a, L + 1, f.n):
            net[m] += f.power
    return L, net


def collect_factors(factors: Iterable[PochhammerFactor]) -> list[PochhammerFactor]:
    """Rewrite a product of Pochhammer factors as a short canonical factor list.

    Factors are merged on matching arithmetic progressions (cancelling
    opposite powers) and then peeled greedily into the coarsest moduli, which
    reproduces hand-simplified forms like ((q;q^2)(q^2;q^5)(q^3;q^5))^(-1).
    """
    L, net = _merge_exponents(factors)
    divisors = [d for d in range(1, L + 1) if L % d == 0]
    out = []
    changed = True
    while changed and any(net.values()):
        changed = False
        for d in divisors:
            for r in range(1, d + 1):
                cls = [net[m] for m in range(r, L + 1, d)]
                if 0 in cls:
                    continue
                if all(c > 0 for c in cls):
                    p = min(cls)
                elif all(c < 0 for c in cls):
                    p = max(cls)
                else:
                    continue
                out.append(PochhammerFactor(a=r, n=d, power=p))
                for m in range(r, L + 1, d):
                    net[m] -= p
                changed = True
    out.sort(key=lambda f: (f.n, f.a, f.power))
    return out


def expand_factors(factors: Iterable[PochhammerFactor], N: int) -> TruncatedSeries:
    return pochhammer_expand(factors, N)


def lepowsky_factors(tag: str, weight_coeffs: Sequence[int]) -> list[PochhammerFactor]:
    """Factored form of the principally specialised character of L(weight).

    The numerator is the (weight(h_i) + 1)-specialisation of the dual root
    system's product and the denominator its principal specialisation; the
    denominator enters with negated powers.  Supported types are A1^(1)
    (self-dual) and G2^(2) (dual system G2^(1)).
    """
    canon = canonical_type(tag)
    dual = {A1: A1, G2_2: G2_1}.get(canon)
    if dual is None:
        raise ValueError(f"no dual root family table for {canon}")
    cartan = builtin_cartan(canon)
    if len(weight_coeffs) != cartan.rank + 1:
        raise ValueError(f"expected {cartan.rank + 1} weight coefficients")
    if any(c < 0 for c in weight_coeffs):
        raise ValueError("weight coefficients must be non-negative")
    families = positive_root_families(dual)
    numer = specialise_families(families, [c + 1 for c in weight_coeffs])
    denom = specialise_families(families, [1] * (cartan.rank + 1))
    flipped = [PochhammerFactor(f.a, f.n, -f.power) for f in denom]
    return collect_factors(numer + flipped)


def lepowsky_product(tag: str, weight_coeffs: Sequence[int], N: int) -> TruncatedSeries:
    """Principal specialisation of e^(-weight) ch L(weight), truncated at N."""
    return pochhammer_expand(lepowsky_factors(tag, weight_coeffs), N)


def factors_label(factors: Sequence[PochhammerFactor]) -> str:
    return " ".join(f.label() for f in factors) if factors else "1"


# -- text format for root family tables ---------------------------------------


def render_families(families: Iterable[RootFamily]) -> str:
    """One line per family: ``class m0+c0 m1+c1 ... kstart mult``."""
    lines = []
    for fam in families:
        cols = [fam.cls]
        for m, c in fam.coeffs:
            cols.append(f"{m}k{c:+d}")
        cols.append(str(fam.k_start))
        cols.append(str(fam.mult))
        lines.append(" ".join(cols))
    return "\n".join(lines) + "\n"


def parse_families(text: str) -> list[RootFamily]:
    families = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split()
        if len(cols) < 4:
            raise ValueError(f"line {lineno}: expected 'class m*k+c ... kstart mult'")
        cls, *coeff_cols, k_start, mult = cols
        coeffs = []
        for col in coeff_cols:
            if "k" not in col:
                raise ValueError(f"line {lineno}: bad coefficient {col!r} (expected e.g. 2k+1)")
            m_text, c_text = col.split("k", 1)
            coeffs.append((int(m_text), int(c_text) if c_text else 0))
        try:
            families.append(RootFamily(cls, tuple(coeffs), int(k_start), int(mult)))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if not families:
        raise ValueError("no root families in input")
    return families
