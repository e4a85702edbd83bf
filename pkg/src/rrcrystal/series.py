"""Exact truncated power-series arithmetic over integers and colour polynomials.

Every other module computes inside this one.  Two coefficient rings are
supported: plain Python integers (arbitrary precision, so coefficient growth
in inverses is harmless) and :class:`ColourPolynomial`, a multivariate
polynomial with integer coefficients over a declared, ordered colour set.

Series are immutable, carry an explicit truncation order, and compare equal
when they agree coefficient-by-coefficient over the shared truncation prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union


class ColourSystem:
    """An ordered, fixed set of colour names.

    Monomials are exponent tuples relative to one system; mixing two systems
    in a single polynomial operation is an error rather than a silent
    misalignment of exponent vectors.
    """

    __slots__ = ("names", "index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate colour names in {names!r}")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, ColourSystem) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"ColourSystem({', '.join(self.names)})"

    def monomial(self, colours: Union[str, Iterable[str], Mapping[str, int]] = ()) -> tuple:
        """Exponent tuple for a product of colours, e.g. ``('a','a','b')`` -> a^2*b."""
        exps = [0] * len(self.names)
        if isinstance(colours, str):
            colours = [colours]
        if isinstance(colours, Mapping):
            for name, e in colours.items():
                exps[self.index[name]] += e
        else:
            for name in colours:
                exps[self.index[name]] += 1
        if any(e < 0 for e in exps):
            raise ValueError("negative colour exponent")
        return tuple(exps)

    def monomial_str(self, exps: Sequence[int]) -> str:
        parts = []
        for name, e in zip(self.names, exps):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    def poly(self, terms: Mapping[tuple, int]) -> "ColourPolynomial":
        return ColourPolynomial(self, terms)

    def var(self, name: str) -> "ColourPolynomial":
        """The colour itself as a polynomial."""
        return ColourPolynomial(self, {self.monomial(name): 1})

    def const(self, value: int) -> "ColourPolynomial":
        return ColourPolynomial(self, {self.monomial(): value} if value else {})


class ColourPolynomial:
    """Integer-coefficient polynomial in the colours of one :class:`ColourSystem`.

    Zero coefficients are never stored; integers embed as constant polynomials
    in mixed arithmetic.
    """

    __slots__ = ("system", "terms")

    def __init__(self, system: ColourSystem, terms: Mapping[tuple, int]):
        self.system = system
        clean = {}
        width = len(system)
        for exps, coeff in terms.items():
            if coeff == 0:
                continue
            exps = tuple(exps)
            if len(exps) != width or any(e < 0 for e in exps):
                raise ValueError(f"bad monomial {exps!r} for {system!r}")
            clean[exps] = clean.get(exps, 0) + coeff
        self.terms = {e: c for e, c in clean.items() if c != 0}

    # -- ring structure -----------------------------------------------------

    def _coerce(self, other) -> "ColourPolynomial":
        if isinstance(other, int):
            return self.system.const(other)
        if isinstance(other, ColourPolynomial):
            if other.system != self.system:
                raise ValueError("colour systems differ")
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            terms[exps] = terms.get(exps, 0) + coeff
        return ColourPolynomial(self.system, terms)

    __radd__ = __add__

    def __neg__(self):
        return ColourPolynomial(self.system, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return ColourPolynomial(self.system, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.system.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            if not self.terms:
                return other == 0
            const = self.system.monomial()
            return set(self.terms) == {const} and self.terms[const] == other
        if isinstance(other, ColourPolynomial):
            return self.system == other.system and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.system, frozenset(self.terms.items())))

    # -- queries ------------------------------------------------------------

    def monomials(self) -> list:
        return sorted(self.terms)

    def num_monomials(self) -> int:
        return len(self.terms)

    def constant(self) -> int:
        return self.terms.get(self.system.monomial(), 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def substitute_ones(self) -> int:
        """Sum of coefficients, i.e. every colour set to 1."""
        return sum(self.terms.values())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # sort by total degree, then lexicographically on exponents
        keys = sorted(self.terms, key=lambda e: (sum(e), e))
        out = []
        for exps in keys:
            coeff = self.terms[exps]
            mono = self.system.monomial_str(exps)
            if mono == "1":
                text = str(abs(coeff))
            elif abs(coeff) == 1:
                text = mono
            else:
                text = f"{abs(coeff)}*{mono}"
            if not out:
                out.append(text if coeff > 0 else f"-{text}")
            else:
                out.append(f"+ {text}" if coeff > 0 else f"- {text}")
        return " ".join(out)

    __repr__ = __str__


Coefficient = Union[int, ColourPolynomial]


def _is_zero(c: Coefficient) -> bool:
    return not c


def render_coefficient(c: Coefficient) -> str:
    return str(c)


class TruncatedSeries:
    """A power series in one formal variable, exact up to an explicit order.

    ``coeffs[i]`` is the coefficient of ``var^i`` for ``0 <= i <= order``.
    Arithmetic truncates to the smaller operand order.  Instances are
    immutable; all operations return new series.
    """

    __slots__ = ("var", "order", "coeffs")

    def __init__(self, var: str, coeffs: Sequence[Coefficient], order: Optional[int] = None):
        coeffs = tuple(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if len(coeffs) != order + 1:
            raise ValueError(f"need {order + 1} coefficients, got {len(coeffs)}")
        self.var = var
        self.order = order
        self.coeffs = coeffs

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, var: str, order: int) -> "TruncatedSeries":
        return cls(var, [0] * (order + 1))

    @classmethod
    def one(cls, var: str, order: int) -> "TruncatedSeries":
        return cls(var, [1] + [0] * order)

    @classmethod
    def monomial(cls, var: str, exponent: int, order: int, coeff: Coefficient = 1) -> "TruncatedSeries":
        coeffs = [0] * (order + 1)
        if exponent < 0:
            raise ValueError("negative exponent")
        if exponent <= order:
            coeffs[exponent] = coeff
        return cls(var, coeffs)

    # -- basics ---------------------------------------------------------------

    def __getitem__(self, i: int) -> Coefficient:
        if not 0 <= i <= self.order:
            raise IndexError(f"degree {i} beyond truncation order {self.order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order >= self.order:
            return self
        return TruncatedSeries(self.var, self.coeffs[: order + 1])

    def _check_var(self, other: "TruncatedSeries"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __eq__(self, other) -> bool:
        """Coefficient-wise equality over the shared truncation prefix."""
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if self.var != other.var:
            return False
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __hash__(self):
        return hash((self.var, self.order))

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_var(other)
        n = min(self.order, other.order)
        return TruncatedSeries(self.var, [self.coeffs[i] + other.coeffs[i] for i in range(n + 1)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_var(other)
        n = min(self.order, other.order)
        return TruncatedSeries(self.var, [self.coeffs[i] - other.coeffs[i] for i in range(n + 1)])

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.var, [-c for c in self.coeffs])

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_var(other)
        n = min(self.order, other.order)
        out: list = [0] * (n + 1)
        for i, ci in enumerate(self.coeffs[: n + 1]):
            if _is_zero(ci):
                continue
            for j in range(n + 1 - i):
                cj = other.coeffs[j]
                if _is_zero(cj):
                    continue
                out[i + j] = out[i + j] + ci * cj
        return TruncatedSeries(self.var, out)

    def scale(self, c: Coefficient) -> "TruncatedSeries":
        return TruncatedSeries(self.var, [c * x for x in self.coeffs])

    def shift(self, e: int) -> "TruncatedSeries":
        """Multiply by var^e, keeping the truncation order."""
        if e < 0:
            raise ValueError("negative shift")
        return TruncatedSeries(self.var, (0,) * min(e, self.order + 1) + self.coeffs[: self.order + 1 - e])

    def mul_binomial(self, exponent: int, coeff: Coefficient) -> "TruncatedSeries":
        """Multiply by (1 + coeff * var^exponent) in O(order) coefficient ops."""
        if exponent <= 0:
            raise ValueError("binomial exponent must be positive")
        out = list(self.coeffs)
        for i in range(self.order, exponent - 1, -1):
            lower = out[i - exponent]
            if not _is_zero(lower):
                out[i] = out[i] + coeff * lower
        return TruncatedSeries(self.var, out)

    def mul_geometric(self, exponent: int, coeff: Coefficient) -> "TruncatedSeries":
        """Multiply by 1/(1 - coeff * var^exponent) = sum_m coeff^m var^(m*exponent)."""
        if exponent <= 0:
            raise ValueError("geometric exponent must be positive")
        out = list(self.coeffs)
        for i in range(exponent, self.order + 1):
            lower = out[i - exponent]
            if not _is_zero(lower):
                out[i] = out[i] + coeff * lower
        return TruncatedSeries(self.var, out)

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires constant coefficient 1 or -1."""
        c0 = self.coeffs[0]
        if c0 == 1:
            unit = 1
        elif c0 == -1:
            unit = -1
        else:
            raise ValueError(f"constant coefficient {c0!r} is not a unit (need 1 or -1)")
        n = self.order
        inv: list = [0] * (n + 1)
        inv[0] = unit
        for i in range(1, n + 1):
            acc = 0
            for j in range(1, i + 1):
                cj = self.coeffs[j]
                if _is_zero(cj) or _is_zero(inv[i - j]):
                    continue
                acc = acc + cj * inv[i - j]
            inv[i] = -unit * acc
        return TruncatedSeries(self.var, inv)

    # -- output ----------------------------------------------------------------

    def lines(self) -> list[str]:
        """Tab-separated ``degree<TAB>coefficient`` rows, one per degree."""
        return [f"{i}\t{render_coefficient(c)}" for i, c in enumerate(self.coeffs)]

    def __str__(self) -> str:
        out = ""
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            sign = "+"
            if isinstance(c, ColourPolynomial) and not c.is_constant():
                text = f"({c})"
            else:
                value = c.constant() if isinstance(c, ColourPolynomial) else c
                if value < 0:
                    sign, value = "-", -value
                text = str(value)
            power = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if power and text == "1":
                term = power
            elif power:
                term = f"{text}*{power}"
            else:
                term = text
            if not out:
                out = term if sign == "+" else f"-{term}"
            else:
                out += f" {sign} {term}"
        return out if out else "0"

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.var!r}, order={self.order}, {self})"


def multiply(s1: TruncatedSeries, s2: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller operand order."""
    return s1 * s2


def invert(s: TruncatedSeries) -> TruncatedSeries:
    return s.invert()


@dataclass(frozen=True)
class PochhammerFactor:
    """One factor (+-X q^a; q^n)_infinity ^ power of an infinite product.

    ``power`` may be negative (a reciprocal factor); ``sign`` selects the
    (-q^a; q^n) variant; ``colour`` optionally attaches a colour monomial X
    (an exponent tuple of ``system``) to every term of the factor.
    """

    a: int
    n: int
    power: int = 1
    sign: bool = False
    colour: Optional[tuple] = None

    def __post_init__(self):
        if self.a < 1:
            raise ValueError(f"shift a={self.a} must be >= 1")
        if self.n < 1:
            raise ValueError(f"modulus n={self.n} must be >= 1")
        if self.power == 0:
            raise ValueError("power must be non-zero")

    def label(self) -> str:
        base = f"(-q^{self.a};q^{self.n})" if self.sign else f"(q^{self.a};q^{self.n})"
        base = base.replace("q^1;", "q;").replace(";q^1)", ";q)")
        if self.power != 1:
            base += f"^{self.power}"
        return base


def pochhammer_expand(
    factors: Iterable[PochhammerFactor],
    N: int,
    var: str = "q",
    system: Optional[ColourSystem] = None,
) -> TruncatedSeries:
    """Expand a product of q-Pochhammer factors as a series truncated at ``N``.

    Exponents a + k*n beyond N cannot influence the truncated result and are
    skipped, which makes the infinite product finite.  If any factor carries a
    colour monomial the result has :class:`ColourPolynomial` coefficients over
    ``system``.
    """
    factors = list(factors)
    coloured = any(f.colour is not None for f in factors)
    if coloured and system is None:
        raise ValueError("coloured factors require a colour system")
    if coloured:
        one = system.const(1)
        result = TruncatedSeries(var, [one] + [system.const(0)] * N)
    else:
        result = TruncatedSeries.one(var, N)
    for f in factors:
        if f.colour is not None:
            unit: Coefficient = ColourPolynomial(system, {tuple(f.colour): 1})
        elif coloured:
            unit = one
        else:
            unit = 1
        term = unit if f.sign else -unit
        for _ in range(abs(f.power)):
            e = f.a
            while e <= N:
                if f.power > 0:
                    result = result.mul_binomial(e, term)
                else:
                    # 1/(1 - c q^e) or 1/(1 + c q^e) expanded as a geometric series
                    result = result.mul_geometric(e, -term if f.sign else unit)
                e += f.n
    return result


def specialise(
    s: TruncatedSeries,
    colour_exponents: Mapping[str, int],
    t_exponent: int,
    N: int,
    var: str = "q",
) -> TruncatedSeries:
    """Map a colour-coefficient series in t to a plain q-series.

    A term ``X * t^m`` with colour monomial X goes to
    ``q^(t_exponent*m + sum_i exps_i * colour_exponents[colour_i])``; a
    negative resulting exponent signals an invalid specialisation and raises.
    """
    if t_exponent < 1:
        raise ValueError("t exponent must be positive")
    out = [0] * (N + 1)
    for m, c in enumerate(s.coeffs):
        if _is_zero(c):
            continue
        if isinstance(c, int):
            deg = t_exponent * m
            if deg <= N:
                out[deg] += c
            continue
        weights = [colour_exponents[name] for name in c.system.names]
        for exps, coeff in c.terms.items():
            deg = t_exponent * m + sum(e * w for e, w in zip(exps, weights))
            if deg < 0:
                raise ValueError(
                    f"specialisation gives negative exponent {deg} on term "
                    f"{c.system.monomial_str(exps)}*{s.var}^{m}"
                )
            if deg <= N:
                out[deg] += coeff
    return TruncatedSeries(var, out)


def rr_sum_side(variant: int, N: int) -> TruncatedSeries:
    """The Rogers-Ramanujan sum sides sum(q^(n^2)/(q;q)_n) and sum(q^(n(n+1))/(q;q)_n)."""
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    total = TruncatedSeries.one("q", N)
    term = TruncatedSeries.one("q", N)
    n = 0
    while True:
        n += 1
        lead = n * n if variant == 1 else n * (n + 1)
        if lead > N:
            break
        prev = (n - 1) ** 2 if variant == 1 else (n - 1) * n
        term = term.shift(lead - prev).mul_geometric(n, 1)
        total = total + term
    return total
