"""Machine-checkable certificates over words with forbidden factors.

Bounds on the two-sided value at a site inside a pattern are computed
from exact cylinder intervals: admissible continuations are explored to
a fixed depth, each leaf contributing the convergent/mediant endpoints
of its cylinder, and the min/max are folded through the Moebius maps of
the known word.  Everything is rational arithmetic; deepening the search
never loosens a bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cfrac import FiniteCF, cylinder, eval_finite
from .quadfield import QuadSum

__all__ = [
    "AuditReport",
    "BoundCertificate",
    "Constraints",
    "GAP_FORBIDDEN",
    "NecessityReport",
    "NotSeparatedError",
    "Pattern",
    "PrefixTooShortError",
    "admissible_extensions",
    "audit_not_attained",
    "certify_forbidden",
    "gap_constraints",
    "one_sided_lambda_bracket",
    "pattern_necessity",
    "site_lambda_bounds",
    "violates",
]

# factors whose presence at a site forces the two-sided value above the
# gap endpoint; listed in certification order
GAP_FORBIDDEN: tuple[tuple[int, ...], ...] = (
    (1, 3),
    (3, 1),
    (2, 2, 3),
    (3, 2, 2),
    (3, 2, 3),
    (1, 2, 3, 2, 1),
)

CENTER_PATTERN: tuple[int, ...] = (1, 2, 3, 3, 3, 2, 1)


class NotSeparatedError(Exception):
    """Bounds straddle the threshold at this depth; deepen the search."""

    def __init__(self, certificate: "BoundCertificate"):
        self.certificate = certificate
        super().__init__(
            f"bounds [{certificate.lower}, {certificate.upper}] straddle the threshold"
        )


class PrefixTooShortError(ValueError):
    """The known word does not cover the requested audit range."""


@dataclass(frozen=True)
class Constraints:
    """Alphabet bound plus a set of forbidden factors."""

    alphabet_max: int
    forbidden: frozenset[tuple[int, ...]] = frozenset()

    def __post_init__(self):
        object.__setattr__(
            self, "forbidden", frozenset(tuple(f) for f in self.forbidden)
        )
        if self.alphabet_max < 1:
            raise ValueError("alphabet_max must be positive")
        for f in self.forbidden:
            if not f:
                raise ValueError("forbidden patterns must be nonempty")
            for q in f:
                if not 1 <= q <= self.alphabet_max:
                    raise ValueError(f"forbidden pattern {f} leaves the alphabet")

    @property
    def context_len(self) -> int:
        return max((len(f) for f in self.forbidden), default=1) - 1

    def sorted_forbidden(self) -> list[tuple[int, ...]]:
        return sorted(self.forbidden)


def gap_constraints() -> Constraints:
    """Alphabet 1..3 with the full forbidden-factor list."""
    return Constraints(3, frozenset(GAP_FORBIDDEN))


@dataclass(frozen=True)
class Pattern:
    """A word with a distinguished site where the value is evaluated."""

    word: tuple[int, ...]
    site: int

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if not self.word:
            raise ValueError("pattern word must be nonempty")
        if not 0 <= self.site < len(self.word):
            raise ValueError("site outside pattern word")


@dataclass(frozen=True)
class BoundCertificate:
    """Certified rational bounds on the value at a pattern site."""

    pattern: Pattern
    constraints: Constraints
    depth: int
    lower: Fraction
    upper: Fraction
    kind: str  # "site_lower_bound" or "cylinder_upper_bound"

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")


def violates(word, constraints: Constraints) -> bool:
    """True when the word leaves the alphabet or contains a forbidden factor."""
    w = tuple(word)
    for q in w:
        if not 1 <= q <= constraints.alphabet_max:
            return True
    for f in constraints.forbidden:
        n = len(f)
        for i in range(len(w) - n + 1):
            if w[i : i + n] == f:
                return True
    return False


def _ends_forbidden(word, constraints: Constraints) -> bool:
    """True when some forbidden factor is a suffix of the word."""
    for f in constraints.forbidden:
        if len(f) <= len(word) and word[-len(f) :] == f:
            return True
    return False


def admissible_extensions(prefix, constraints: Constraints, depth: int):
    """Depth-first lexicographic enumeration of all length-`depth`
    extensions of the prefix avoiding every forbidden factor; yields the
    full concatenated words."""
    prefix = tuple(prefix)
    if violates(prefix, constraints):
        raise ValueError("prefix violates the constraints")

    def rec(word, remaining):
        if remaining == 0:
            yield word
            return
        for a in range(1, constraints.alphabet_max + 1):
            cand = word + (a,)
            if not _ends_forbidden(cand, constraints):
                yield from rec(cand, remaining - 1)

    yield from rec(prefix, depth)


class _TailDP:
    """Exact value range of admissible tails [x1; x2, ...] by context.

    bounds(ctx, depth) is the closed rational interval containing every
    [x1; ...; x_depth, t] with the x's admissible after ctx and t free in
    [1, inf); the depth-0 base is that free interval itself, so the leaf
    endpoints are exactly cylinder endpoints.  Returns None for contexts
    admitting no extension.
    """

    def __init__(self, constraints: Constraints, reverse: bool = False):
        forb = constraints.forbidden
        if reverse:
            forb = frozenset(tuple(reversed(f)) for f in forb)
        self.constraints = Constraints(constraints.alphabet_max, forb)
        self.k = self.constraints.context_len
        self._memo: dict = {}

    def _allowed(self, ctx):
        out = []
        for a in range(1, self.constraints.alphabet_max + 1):
            if not _ends_forbidden(ctx + (a,), self.constraints):
                out.append(a)
        return out

    def bounds(self, ctx, depth: int):
        ctx = tuple(ctx)[-self.k :] if self.k else ()
        key = (ctx, depth)
        if key in self._memo:
            return self._memo[key]
        if depth == 0:
            res = (Fraction(1), None)  # None marks +infinity
        else:
            lo = hi = None
            for a in self._allowed(ctx):
                sub = self.bounds(ctx + (a,), depth - 1)
                if sub is None:
                    continue
                slo, shi = sub
                alo = Fraction(a) if shi is None else a + Fraction(1) / shi
                ahi = a + Fraction(1) / slo
                lo = alo if lo is None or alo < lo else lo
                hi = ahi if hi is None or ahi > hi else hi
            res = None if lo is None else (lo, hi)
        self._memo[key] = res
        return res


def _mobius_interval(known, tail):
    """Value interval of [0; known..., t] for t in the tail interval."""
    tlo, thi = tail
    p1, p0 = 1, 0
    q1, q0 = 0, 1
    for a in (0,) + tuple(known):
        p1, p0 = a * p1 + p0, p1
        q1, q0 = a * q1 + q0, q1
    at_lo = Fraction(p1 * tlo.numerator + p0 * tlo.denominator,
                     q1 * tlo.numerator + q0 * tlo.denominator)
    if thi is None:
        at_hi = Fraction(p1, q1) if q1 else None
    else:
        at_hi = Fraction(p1 * thi.numerator + p0 * thi.denominator,
                         q1 * thi.numerator + q0 * thi.denominator)
    return (at_lo, at_hi) if at_lo <= at_hi else (at_hi, at_lo)


def site_lambda_bounds(
    pattern: Pattern, constraints: Constraints, depth: int
) -> BoundCertificate:
    """Certified bounds on the two-sided value at the pattern site over
    all bi-infinite admissible sequences containing the word there."""
    w = pattern.word
    if violates(w, constraints):
        raise ValueError("pattern word violates the constraints")
    dp_f = _TailDP(constraints)
    dp_r = _TailDP(constraints, reverse=True)
    right = dp_f.bounds(w, depth)
    left = dp_r.bounds(tuple(reversed(w)), depth)
    if right is None or left is None:
        raise ValueError("pattern admits no admissible completion")
    rint = _mobius_interval(w[pattern.site + 1 :], right)
    lint = _mobius_interval(tuple(reversed(w[: pattern.site])), left)
    return BoundCertificate(
        pattern=pattern,
        constraints=constraints,
        depth=depth,
        lower=w[pattern.site] + rint[0] + lint[0],
        upper=w[pattern.site] + rint[1] + lint[1],
        kind="site_lower_bound",
    )


def certify_forbidden(
    pattern: Pattern, threshold, constraints: Constraints, depth: int
) -> BoundCertificate:
    """Certificate that every sequence with limsup at most `threshold`
    contains the pattern only finitely often: the certified lower bound
    at the site must strictly exceed the threshold.  Raises
    NotSeparatedError when it does not at this depth."""
    cert = site_lambda_bounds(pattern, constraints, depth)
    if QuadSum(cert.lower) > threshold:
        return cert
    raise NotSeparatedError(cert)


@dataclass(frozen=True)
class NecessityReport:
    """Window sweep outcome: every admissible window either has its center
    value certified below the threshold or carries the center pattern with
    the center on an outer 3; `exceptions` lists windows doing neither."""

    threshold: Fraction
    constraints: Constraints
    window_len: int
    depth: int
    windows_total: int
    passed_by_bound: int
    passed_by_pattern: int
    exceptions: tuple[tuple[int, ...], ...]

    @property
    def holds(self) -> bool:
        return not self.exceptions


def pattern_necessity(
    threshold,
    constraints: Constraints,
    window_len: int = 15,
    depth: int = 25,
    center_pattern: tuple[int, ...] = CENTER_PATTERN,
) -> NecessityReport:
    """Sweep every admissible window of the given length.

    Unknown context beyond the window is bounded by worst-case admissible
    tails, so a window passes case (a) only if its center value is below
    the threshold for every completion.  Subtrees whose uniform bound is
    already below the threshold are counted without enumeration.
    """
    if window_len < 7:
        raise ValueError("window_len must be at least 7")
    threshold = Fraction(threshold)
    center = window_len // 2
    dp_f = _TailDP(constraints)
    dp_r = _TailDP(constraints, reverse=True)
    k = constraints.context_len
    m = constraints.alphabet_max

    count_memo: dict = {}

    def count_words(ctx, remaining) -> int:
        ctx = ctx[-k:] if k else ()
        key = (ctx, remaining)
        if key in count_memo:
            return count_memo[key]
        if remaining == 0:
            total = 1
        else:
            total = 0
            for a in range(1, m + 1):
                if not _ends_forbidden(ctx + (a,), constraints):
                    total += count_words(ctx + (a,), remaining - 1)
        count_memo[key] = total
        return total

    left_memo: dict = {}

    def left_interval(word):
        key = word[: center + 1]
        if key not in left_memo:
            rev = tuple(reversed(word[:center]))
            tail = dp_r.bounds(rev, depth)
            left_memo[key] = None if tail is None else _mobius_interval(rev, tail)
        return left_memo[key]

    def upper_for(word):
        """Uniform upper bound over completions of a partial window."""
        lint = left_interval(word)
        if lint is None:
            return None
        tail = dp_f.bounds(word, (window_len - len(word)) + depth)
        if tail is None:
            return None
        rint = _mobius_interval(word[center + 1 :], tail)
        return word[center] + lint[1] + rint[1]

    def center_on_outer_three(word) -> bool:
        n = len(center_pattern)
        for o in range(window_len - n + 1):
            if word[o : o + n] == center_pattern and center in (o + 2, o + n - 3):
                return True
        return False

    exceptions: list[tuple[int, ...]] = []
    stats = {"bound": 0, "pattern": 0}

    def dfs(word):
        if len(word) == window_len:
            ub = upper_for(word)
            if ub is None or ub < threshold:
                stats["bound"] += 1
            elif center_on_outer_three(word):
                stats["pattern"] += 1
            else:
                exceptions.append(word)
            return
        if len(word) > center:
            ub = upper_for(word)
            if ub is None or ub < threshold:
                stats["bound"] += count_words(word, window_len - len(word))
                return
        for a in range(1, m + 1):
            cand = word + (a,)
            if not _ends_forbidden(cand, constraints):
                dfs(cand)

    dfs(())
    return NecessityReport(
        threshold=threshold,
        constraints=constraints,
        window_len=window_len,
        depth=depth,
        windows_total=count_words((), window_len),
        passed_by_bound=stats["bound"],
        passed_by_pattern=stats["pattern"],
        exceptions=tuple(exceptions),
    )


def one_sided_lambda_bracket(word, n: int) -> tuple[Fraction, Fraction]:
    """Exact bracket of the one-sided value at position n (1-based) of
    [0; b1, ..., bL, unknown...]: the backward part is a finite word and
    evaluates exactly; the forward part is bracketed by the cylinder of
    the remaining known prefix."""
    w = tuple(word)
    if not 1 <= n <= len(w):
        raise ValueError("position outside the word")
    a = w[n - 1]
    back = eval_finite(FiniteCF(0, tuple(reversed(w[: n - 1])))) if n > 1 else Fraction(0)
    rest = w[n:]
    if rest:
        lo, hi = cylinder((0,) + rest)
    else:
        lo, hi = Fraction(0), Fraction(1)
    return a + back + lo, a + back + hi


@dataclass(frozen=True)
class AuditReport:
    """Truncated non-attainability audit of a known prefix.

    For each audited position the exact upper bracket of the one-sided
    value must stay strictly below the reference value; `flagged` lists
    the positions where it does not.  This is a desk-scale verification
    on a finite prefix, not a proof about the full infinite word.
    """

    start: int
    stop: int
    guard: int
    flagged: tuple[int, ...]

    @property
    def clean(self) -> bool:
        return not self.flagged


def audit_not_attained(
    alpha_prefix: FiniteCF, reference: QuadSum, start: int, guard: int = 19
) -> AuditReport:
    """Check reference > lambda_n exactly for n in [start, len - guard].

    The guard keeps enough of the word ahead of every audited position
    that the forward bracket is narrower than the separation from the
    reference; a site whose value approaches the reference needs the
    known word to reach one symbol past the point where it leaves the
    reference's periodic tail.  For the block word with m blocks that
    means guard >= 2m + 3 (19 covers the default 8 blocks).
    """
    w = alpha_prefix.tail
    stop = len(w) - guard
    if start < 1 or start > stop:
        raise PrefixTooShortError(
            f"audit range [{start}, {stop}] is empty for a word of length {len(w)}"
        )
    flagged = []
    for n in range(start, stop + 1):
        _, hi = one_sided_lambda_bracket(w, n)
        if not reference > hi:
            flagged.append(n)
    return AuditReport(start=start, stop=stop, guard=guard, flagged=tuple(flagged))
