"""The eight-colour recursion system for the coloured generating function.

With colours ordered g > f > e > h > d > c > b > a, P[c] at step k is the
generating function for coloured partitions whose largest part is exactly k
with colour c, and R[c] for largest part at most k_c.  One step applies the
eight transcribed recursions in dependency order and re-telescopes the R's;
the h-recursion is self-referential and enters through an eagerly expanded
geometric factor.

Base cases (every R = 1, every P = 0 for k <= 0) are forced by the empty
partition being the only one without positive parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .series import ColourPolynomial, ColourSystem, TruncatedSeries, specialise

COLOURS = ("a", "b", "c", "d", "e", "f", "g", "h")
SYSTEM = ColourSystem(COLOURS)

#: colours by descending part priority
ORDER = ("g", "f", "e", "h", "d", "c", "b", "a")

#: ascending chain used to telescope R: R[next] = R[prev] + P[next]
ASCENDING = tuple(reversed(ORDER))

#: evaluation order inside one k-step and each recursion's inputs, as
#: (same-step P dependencies, previous-step terms).  'Rg2' is R at k-2.
RECURSIONS: dict = {
    "a": ((), ("Ph", "Rg2")),
    "b": ((), ("Ph", "Ra")),
    "c": ((), ("Ph", "Rb")),
    "d": (("a",), ("Rh",)),
    "e": (("a",), ("Rh",)),
    "f": (("b", "a"), ("Re",)),
    "g": (("d", "c", "b", "a"), ("Rf",)),
    "h": ((), ("Rg",)),       # geometric: h t^k/(1 - h t^k) * R_{k-1,g}
}

STEP_ORDER = ("a", "b", "c", "d", "e", "f", "g", "h")

# the hard-coded order must be topological for the same-step dependencies
for _pos, _c in enumerate(STEP_ORDER):
    for _dep in RECURSIONS[_c][0]:
        if STEP_ORDER.index(_dep) >= _pos:
            raise AssertionError(f"recursion order is not topological at {_c!r}")


@dataclass
class RecursionState:
    """P and R series (in t, colour-polynomial coefficients) after step k."""

    k: int
    order: int
    P: dict
    R: dict
    R_prev_g: TruncatedSeries      # R at step k-1 for colour g

    def total(self) -> TruncatedSeries:
        return self.R["g"]


def _const(order: int, value: int) -> TruncatedSeries:
    c = [SYSTEM.const(value)] + [SYSTEM.const(0)] * order
    return TruncatedSeries("t", c)


def initial_state(order: int) -> RecursionState:
    """State at k = 0: only the empty partition has largest part <= 0_c."""
    if order < 0:
        raise ValueError("truncation order must be >= 0")
    P = {c: _const(order, 0) for c in COLOURS}
    R = {c: _const(order, 1) for c in COLOURS}
    return RecursionState(k=0, order=order, P=P, R=R, R_prev_g=_const(order, 1))


def advance(state: RecursionState) -> RecursionState:
    """Apply the eight recursions at k = state.k + 1 and re-telescope the R's."""
    k = state.k + 1
    order = state.order
    zero = _const(order, 0)
    P: dict = {}

    def monomial_mul(colour: str, series: TruncatedSeries, power: int = 1) -> TruncatedSeries:
        coeff = SYSTEM.var(colour) ** power
        return series.scale(coeff).shift(k * power)

    for colour in STEP_ORDER:
        same_step, carried = RECURSIONS[colour]
        acc = zero
        for dep in same_step:
            acc = acc + P[dep]
        for term in carried:
            if term == "Ph":
                acc = acc + state.P["h"]
            elif term == "Rg2":
                acc = acc + state.R_prev_g
            elif term.startswith("R"):
                acc = acc + state.R[term[1]]
            else:
                raise AssertionError(f"unknown carried term {term!r}")
        if colour == "h":
            # P_h = (h t^k + h^2 t^2k + ...) R_{k-1,g}, expanded to the order
            total = zero
            power = 1
            while k * power <= order:
                total = total + monomial_mul("h", acc, power)
                power += 1
            P["h"] = total
        else:
            P[colour] = monomial_mul(colour, acc)

    R: dict = {}
    prev = state.R["g"]
    for colour in ASCENDING:
        prev = prev + P[colour]
        R[colour] = prev

    new = RecursionState(k=k, order=order, P=P, R=R, R_prev_g=state.R["g"])
    _check_telescoping(state, new)
    return new


def _check_telescoping(old: RecursionState, new: RecursionState):
    """R must telescope along the colour order and against the previous step."""
    total = _const(new.order, 0)
    for colour in COLOURS:
        total = total + new.P[colour]
    if not (new.R["g"] - old.R["g"]) == total:
        raise ValueError(f"telescoping identity fails at k={new.k}")


def run(order: int) -> RecursionState:
    """Advance until every t-coefficient up to the order is stable."""
    state = initial_state(order)
    while state.k < order:
        state = advance(state)
    return state


def total_series(order: int) -> TruncatedSeries:
    """The full coloured generating function, truncated at t^order."""
    return run(order).total()


def refinement_impossible(order: int = 2) -> tuple[bool, list]:
    """Check whether the t^2 coefficient misses pairwise colour products.

    Any factorisation into infinite products with non-negative colour
    coefficients would force every product of two distinct colours to appear
    in the t^2 coefficient; the certificate lists the absent ones.
    """
    if order < 2:
        raise ValueError("need the series at least to t^2")
    t2 = total_series(order)[2]
    missing = []
    for i, c1 in enumerate(COLOURS):
        for c2 in COLOURS[i + 1:]:
            exps = SYSTEM.monomial((c1, c2))
            if exps not in t2.terms:
                missing.append(c1 + c2)
    return bool(missing), missing


#: dilation exponents of the eight colours in the principal specialisation
DILATION_EXPONENTS = {"a": -3, "b": -2, "c": -1, "d": 0, "e": 1, "f": 2, "g": 3, "h": 0}
DILATION_T_EXPONENT = 4


def dilated_series(n_max: int,
                   exponents: Optional[Mapping[str, int]] = None,
                   t_exponent: int = DILATION_T_EXPONENT) -> TruncatedSeries:
    """The q-series of the dilated system, truncated at q^n_max.

    Runs the same recursions with each colour already specialised to its
    q-power (specialisation commutes with the recursion arithmetic, which the
    tests cross-check on the undilated prefix); a part of value k and colour c
    has dilated size t_exponent*k + exponents[c], so the loop stops once the
    smallest dilated part exceeds the truncation.
    """
    if n_max < 0:
        raise ValueError("truncation order must be >= 0")
    exponents = dict(DILATION_EXPONENTS if exponents is None else exponents)
    min_exp = min(exponents.values())
    if t_exponent + min_exp < 1:
        raise ValueError("smallest dilated part is not positive")

    one = TruncatedSeries.one("q", n_max)
    zero = TruncatedSeries.zero("q", n_max)
    P = {c: zero for c in COLOURS}
    R = {c: one for c in COLOURS}
    R_prev_g = one
    k = 0
    while t_exponent * k + min_exp <= n_max:
        k += 1
        newP: dict = {}
        for colour in STEP_ORDER:
            same_step, carried = RECURSIONS[colour]
            acc = zero
            for dep in same_step:
                acc = acc + newP[dep]
            for term in carried:
                if term == "Ph":
                    acc = acc + P["h"]
                elif term == "Rg2":
                    acc = acc + R_prev_g
                else:
                    acc = acc + R[term[1]]
            size = t_exponent * k + exponents[colour]
            if size < 1:
                raise ValueError(f"part {k}_{colour} dilates to non-positive size {size}")
            if colour == "h":
                total = zero
                power = 1
                while size * power <= n_max:
                    total = total + acc.shift(size * power)
                    power += 1
                newP["h"] = total
            else:
                newP[colour] = acc.shift(size)
        R_prev_g = R["g"]
        P = newP
        R = {}
        prev = R_prev_g
        for colour in ASCENDING:
            prev = prev + P[colour]
            R[colour] = prev
    return R["g"]


def dilate(series_t: TruncatedSeries, n_max: int,
           exponents: Optional[Mapping[str, int]] = None,
           t_exponent: int = DILATION_T_EXPONENT) -> TruncatedSeries:
    """Specialise an undilated coloured series to q (colours to q-powers)."""
    return specialise(series_t, dict(DILATION_EXPONENTS if exponents is None else exponents),
                      t_exponent, n_max)
