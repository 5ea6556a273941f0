"""Finite and eventually periodic continued fractions.

Words are kept as combinatorial objects: [0;2,1] and [0;3] denote the
same rational but stay distinct words, since trailing quotients matter
for pattern analysis.  Evaluation is exact (Fraction or QuadExt), period
detection works on exact surd states, and prefix comparison follows the
alternating parity rule for continued fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .quadfield import QuadExt

__all__ = [
    "EPCF",
    "EpsDelta",
    "FiniteCF",
    "PeriodNotFoundError",
    "PrefixOrderUndecided",
    "convergents",
    "cylinder",
    "cmp_prefix",
    "distance_bounds",
    "eval_finite",
    "eval_periodic",
    "expand",
]


class PeriodNotFoundError(RuntimeError):
    """Surd state did not repeat within the term budget."""


class PrefixOrderUndecided(ValueError):
    """One word is a prefix of the other; the parity rule does not apply."""


def _check_quotients(seq, what):
    for q in seq:
        if q < 1:
            raise ValueError(f"{what} must be positive integers, got {q}")


@dataclass(frozen=True)
class FiniteCF:
    """Finite continued fraction [a0; a1, ..., an]."""

    a0: int
    tail: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "tail", tuple(self.tail))
        _check_quotients(self.tail, "partial quotients")

    @property
    def word(self) -> tuple[int, ...]:
        return (self.a0,) + self.tail

    def __len__(self):
        return 1 + len(self.tail)

    def __str__(self):
        if not self.tail:
            return f"[{self.a0}]"
        return f"[{self.a0};{','.join(map(str, self.tail))}]"


@dataclass(frozen=True)
class EPCF:
    """Eventually periodic continued fraction [a0; pre..., (period...)]."""

    a0: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be nonempty")
        _check_quotients(self.preperiod, "partial quotients")
        _check_quotients(self.period, "partial quotients")

    def quotient(self, i: int) -> int:
        """The i-th term of the infinite word, i = 0 giving a0."""
        if i == 0:
            return self.a0
        i -= 1
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> tuple[int, ...]:
        return tuple(self.quotient(i) for i in range(n))

    def __str__(self):
        per = f"({','.join(map(str, self.period))})"
        if self.preperiod:
            return f"[{self.a0};{','.join(map(str, self.preperiod))},{per}]"
        return f"[{self.a0};{per}]"


@dataclass(frozen=True)
class EpsDelta:
    """Distance bounds for words agreeing on an n-term prefix."""

    n: int
    eps: Fraction
    delta: Fraction


def distance_bounds(n: int) -> EpsDelta:
    """eps = 2**-(n-1) and delta = 5**-2(n+2) for prefix length n >= 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return EpsDelta(n, Fraction(2) ** (1 - n), Fraction(5) ** (-2 * (n + 2)))


def _word_of(w) -> tuple[int, ...]:
    if isinstance(w, FiniteCF):
        return w.word
    return tuple(w)


def convergents(w) -> list[tuple[int, int]]:
    """Convergents (p, q) of a finite word, leading term included."""
    p1, p0 = 1, 0
    q1, q0 = 0, 1
    out = []
    for a in _word_of(w):
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
        out.append((p1, q1))
    return out


def eval_finite(w) -> Fraction:
    """Exact rational value of a finite word; equals its last convergent."""
    p, q = convergents(w)[-1]
    return Fraction(p, q)


def eval_periodic(cf: EPCF) -> QuadExt:
    """Exact value of an eventually periodic continued fraction.

    The purely periodic tail solves its Moebius fixed point; the root
    greater than 1 is the value since the tail starts with a positive
    quotient.  The preperiod map is then applied exactly.
    """
    per = cf.period
    p1, p0 = 1, 0
    q1, q0 = 0, 1
    for a in per:
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
    # y = (p1*y + p0) / (q1*y + q0)
    A, B, C = q1, q0 - p1, -p0
    assert A != 0, "degenerate period map"
    disc = B * B - 4 * A * C
    y = QuadExt(-B, 1, 2 * A, disc)
    # apply [a0; preperiod..., y]
    p1, p0 = 1, 0
    q1, q0 = 0, 1
    for a in (cf.a0,) + cf.preperiod:
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
    return (p1 * y + p0) / (q1 * y + q0)


def expand(x, max_terms: int = 512):
    """Continued fraction of an exact value, with period detection.

    Rational input yields its FiniteCF in canonical Euclid form; quadratic
    irrationals yield the EPCF found by the first repeated surd state, so
    eval_periodic(expand(x)) == x exactly.  Raises PeriodNotFoundError if
    no state repeats within max_terms quotients.
    """
    if isinstance(x, (int, Fraction)):
        x = QuadExt.from_rational(x)
    if x.is_rational:
        num, den = x.a, x.c
        quots = []
        while den:
            a, num = divmod(num, den)
            quots.append(a)
            num, den = den, num
        return FiniteCF(quots[0], tuple(quots[1:]))
    # surd state (P + sqrt(D)) / Q with Q dividing D - P*P
    D = x.b * x.b * x.d
    if x.b > 0:
        P, Q = x.a, x.c
    else:
        P, Q = -x.a, -x.c
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    seen: dict[tuple[int, int], int] = {}
    quots = []
    for i in range(max_terms):
        if (P, Q) in seen:
            k = seen[(P, Q)]
            if k == 0:
                # purely periodic: the tail period wraps around to a0
                return EPCF(quots[0], (), tuple(quots[1:]) + (quots[0],))
            return EPCF(quots[0], tuple(quots[1:k]), tuple(quots[k:]))
        seen[(P, Q)] = i
        s = isqrt(D)
        if Q > 0:
            a = (P + s) // Q
        else:
            a = (-P - s - 1) // -Q
        quots.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    raise PeriodNotFoundError(f"no repeated state within {max_terms} terms")


def cmp_prefix(x, y) -> tuple[int, int | None]:
    """Order two words by the parity rule at their first differing quotient.

    Returns (ordering, first_diff_index) with ordering in {-1, 0, +1};
    the ordering agrees with exact comparison of the evaluated values
    under any common infinite extension.  Raises PrefixOrderUndecided
    when one word is a strict prefix of the other.
    """
    xw, yw = _word_of(x), _word_of(y)
    n = min(len(xw), len(yw))
    for i in range(n):
        if xw[i] != yw[i]:
            bigger = 1 if xw[i] > yw[i] else -1
            if i == 0:
                return bigger, 0
            # i-1 shared terms after a0: odd count => larger quotient wins
            return (bigger if (i - 1) % 2 else -bigger), i
    if len(xw) == len(yw):
        return 0, None
    raise PrefixOrderUndecided("one word is a prefix of the other")


def cylinder(w) -> tuple[Fraction, Fraction]:
    """Open interval containing every infinite extension of the word.

    Endpoints are the last convergent and the mediant with the previous
    one; the word itself needs a nonempty tail.
    """
    word = _word_of(w)
    if len(word) < 2:
        raise ValueError("cylinder needs a word with nonempty tail")
    convs = convergents(word)
    (pm, qm), (pn, qn) = convs[-2], convs[-1]
    e1 = Fraction(pn, qn)
    e2 = Fraction(pn + pm, qn + qm)
    return (e1, e2) if e1 < e2 else (e2, e1)
