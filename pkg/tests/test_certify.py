import random
from fractions import Fraction

import pytest

from lagspec.bisequence import BiSeq, lambda_at
from lagspec.certify import (
    Constraints,
    NotSeparatedError,
    Pattern,
    PrefixTooShortError,
    admissible_extensions,
    audit_not_attained,
    certify_forbidden,
    cylinder,
    gap_constraints,
    one_sided_lambda_bracket,
    pattern_necessity,
    site_lambda_bounds,
    violates,
)
from lagspec.cfrac import FiniteCF
from lagspec.constructions import alpha0_prefix, gap_left_endpoint
from lagspec.quadfield import QuadExt, QuadSum

LAM0 = gap_left_endpoint()
ONLY_13_31 = Constraints(3, frozenset({(1, 3), (3, 1)}))


def test_admissible_extensions_examples():
    c = Constraints(3, frozenset({(3, 1), (1, 3)}))
    assert list(admissible_extensions((3,), c, 1)) == [(3, 2), (3, 3)]
    assert list(admissible_extensions((), Constraints(2), 2)) == [
        (1, 1),
        (1, 2),
        (2, 1),
        (2, 2),
    ]
    c2 = Constraints(3, frozenset({(2, 2, 3)}))
    assert list(admissible_extensions((2, 2), c2, 1)) == [(2, 2, 1), (2, 2, 2)]
    with pytest.raises(ValueError):
        list(admissible_extensions((3, 1), c, 1))


def test_violates():
    c = gap_constraints()
    assert violates((1, 3), c)
    assert violates((2, 1, 2, 3, 2, 1), c)  # contains (1,2,3,2,1)
    assert not violates((1, 2, 3, 3, 3, 2, 1), c)
    assert violates((4,), c)


def _brute_bounds(pattern, constraints, depth):
    """Independent oracle: full enumeration of admissible one-sided
    extensions, folding cylinder endpoints of each leaf."""
    w = pattern.word
    site = pattern.site
    rev = Constraints(
        constraints.alphabet_max,
        frozenset(tuple(reversed(f)) for f in constraints.forbidden),
    )
    right_lo = right_hi = None
    for full in admissible_extensions(w, constraints, depth):
        word = (w[site],) + full[site + 1 :]
        lo, hi = cylinder(word)
        right_lo = lo if right_lo is None or lo < right_lo else right_lo
        right_hi = hi if right_hi is None or hi > right_hi else right_hi
    rw = tuple(reversed(w))
    left_lo = left_hi = None
    for full in admissible_extensions(rw, rev, depth):
        word = (w[site],) + full[len(w) - site :]
        lo, hi = cylinder(word)
        left_lo = lo if left_lo is None or lo < left_lo else left_lo
        left_hi = hi if left_hi is None or hi > left_hi else left_hi
    # cylinder of [a_site; u...] = a_site + interval of [0; u...]
    return (
        right_lo + left_lo - w[site],
        right_hi + left_hi - w[site],
    )


@pytest.mark.parametrize(
    "word,site,forbidden",
    [
        ((3, 1), 0, frozenset()),
        ((3, 2, 2), 0, frozenset({(1, 3), (3, 1)})),
        ((1, 2, 3, 2, 1), 2, frozenset({(1, 3), (3, 1)})),
        ((2, 2), 1, frozenset({(2, 2, 3)})),
    ],
)
def test_site_bounds_match_brute_enumeration(word, site, forbidden):
    c = Constraints(3, forbidden)
    p = Pattern(word, site)
    for depth in (1, 2, 4, 6):
        cert = site_lambda_bounds(p, c, depth)
        lo, hi = _brute_bounds(p, c, depth)
        assert cert.lower == lo and cert.upper == hi


def test_site_bounds_known_limits():
    b = site_lambda_bounds(Pattern((3, 1), 0), Constraints(3), 20)
    assert b.lower > Fraction(382, 100)
    assert QuadSum(QuadExt(39, 4, 15, 21)) > b.lower
    b = site_lambda_bounds(Pattern((3, 2, 2), 0), ONLY_13_31, 20)
    assert b.lower > Fraction(370, 100)
    b = site_lambda_bounds(Pattern((1, 2, 3, 2, 1), 2), ONLY_13_31, 20)
    assert b.lower > Fraction(373, 100)


CUMULATIVE_ORDER = [
    (Pattern((3, 1), 0), Constraints(3)),
    (Pattern((1, 3), 1), Constraints(3)),
    (Pattern((3, 2, 2), 0), ONLY_13_31),
    (Pattern((2, 2, 3), 2), ONLY_13_31),
    (Pattern((3, 2, 3), 0), Constraints(3, frozenset({(1, 3), (3, 1), (3, 2, 2), (2, 2, 3)}))),
    (
        Pattern((1, 2, 3, 2, 1), 2),
        Constraints(3, frozenset({(1, 3), (3, 1), (3, 2, 2), (2, 2, 3), (3, 2, 3)})),
    ),
]


def test_certify_forbidden_cumulative():
    for pattern, constraints in CUMULATIVE_ORDER:
        cert = certify_forbidden(pattern, LAM0, constraints, 25)
        assert QuadSum(cert.lower) > LAM0


def test_certify_not_separated():
    with pytest.raises(NotSeparatedError) as err:
        certify_forbidden(Pattern((2, 2), 0), LAM0, Constraints(3), 20)
    cert = err.value.certificate
    assert QuadSum(cert.lower) < LAM0
    # witness: the all-2 periodic word contains (2,2) with value below LAM0
    all2 = BiSeq((2,), (2, 2), 0, (2,))
    assert lambda_at(all2, 0).value < LAM0


def test_bound_monotonicity_in_depth():
    for word, site in [((1, 3), 1), ((3, 1), 0), ((2, 2, 3), 2), ((3, 2, 2), 0), ((3, 2, 3), 0), ((1, 2, 3, 2, 1), 2)]:
        prev = None
        for depth in (5, 10, 15, 20):
            cert = site_lambda_bounds(Pattern(word, site), Constraints(3), depth)
            if prev is not None:
                assert cert.lower >= prev.lower
                assert cert.upper <= prev.upper
            prev = cert


LIMIT_CASES = [
    # lower bounds of the excluded factors
    ((3, 1), 0, Constraints(3), QuadSum(QuadExt(39, 4, 15, 21)), "lower"),
    ((1, 3), 1, Constraints(3), QuadSum(QuadExt(39, 4, 15, 21)), "lower"),
    ((3, 2, 2), 0, ONLY_13_31, QuadSum(QuadExt(39, 10, 21, 15)), "lower"),
    ((2, 2, 3), 2, ONLY_13_31, QuadSum(QuadExt(39, 10, 21, 15)), "lower"),
    ((1, 2, 3, 2, 1), 2, ONLY_13_31, QuadSum(QuadExt(2, 1, 1, 3)), "lower"),
    # upper bounds of the center-pattern analysis
    ((2,), 0, ONLY_13_31, QuadSum(QuadExt(0, 2, 1, 3)), "upper"),
    ((3, 3, 3), 1, ONLY_13_31, QuadSum(QuadExt(33, -2, 7, 15)), "upper"),
    ((1, 2, 3, 3, 2, 1), 3, ONLY_13_31, QuadSum(QuadExt(44, -2, 11, 3)), "upper"),
    # the four-3s case needs the full forbidden list: with only (1,3)/(3,1)
    # excluded a (3,2,3)-type tail pushes the sup slightly higher
    ((3, 3, 3, 3, 2, 1), 3, gap_constraints(), QuadSum(QuadExt(681609, -16103, 177122, 3)), "upper"),
]


def test_bounds_converge_to_closed_forms():
    from lagspec.cfrac import distance_bounds

    tol = 2 * distance_bounds(25).eps
    for word, site, constraints, limit, kind in LIMIT_CASES:
        cert = site_lambda_bounds(Pattern(word, site), constraints, 30)
        if kind == "lower":
            gap = limit - cert.lower
        else:
            gap = QuadSum(cert.upper) - limit
        assert gap.sign() >= 0, (word, kind)
        assert (gap - tol).sign() < 0, (word, kind)


def _admissible_biseq(rng, pattern, constraints):
    """Random bi-infinite periodic completion of the pattern, admissible
    for the constraints, by rejection sampling."""
    m = constraints.alphabet_max
    while True:
        lp = tuple(rng.randint(1, m) for _ in range(rng.randint(1, 3)))
        rp = tuple(rng.randint(1, m) for _ in range(rng.randint(1, 3)))
        seq = BiSeq(lp, pattern.word, pattern.site, rp)
        span = len(pattern.word) + 4 * (len(lp) + len(rp)) + 12
        window = tuple(seq.at(i) for i in range(seq.start - span, seq.end + span))
        if not violates(window, constraints):
            return seq


def test_certificate_soundness_200_random():
    rng = random.Random(11223344)
    pool = [
        (Pattern((3, 1), 0), Constraints(3)),
        (Pattern((2, 2), 1), Constraints(3)),
        (Pattern((1, 2, 3), 1), Constraints(3, frozenset({(3, 1), (1, 3)}))),
        (Pattern((2, 1, 2), 1), Constraints(2)),
        (Pattern((1, 1), 0), Constraints(4, frozenset({(4, 4)}))),
    ]
    for _ in range(200):
        pattern, constraints = rng.choice(pool)
        cert = site_lambda_bounds(pattern, constraints, rng.randint(3, 12))
        seq = _admissible_biseq(rng, pattern, constraints)
        lam = lambda_at(seq, 0).value
        assert not lam < QuadSum(cert.lower)
        assert not lam > QuadSum(cert.upper)


def test_necessity_sweep_holds():
    report = pattern_necessity(Fraction(3691, 1000), gap_constraints(), 15, 25)
    assert report.holds
    assert report.exceptions == ()
    assert report.passed_by_bound + report.passed_by_pattern == report.windows_total
    assert report.passed_by_pattern > 0


def test_necessity_middle_three_passes_by_bound():
    cert = site_lambda_bounds(Pattern((3, 3, 3), 1), ONLY_13_31, 25)
    assert QuadSum(cert.upper) < Fraction(3691, 1000)


def test_necessity_threshold_sensitivity():
    report = pattern_necessity(Fraction(383, 100), Constraints(3), 7, 15)
    assert not report.holds
    assert any(
        any(w[i : i + 2] == (3, 1) for i in range(len(w) - 1)) for w in report.exceptions
    )


def test_necessity_rejects_short_window():
    with pytest.raises(ValueError):
        pattern_necessity(Fraction(3691, 1000), gap_constraints(), 5, 10)


def test_audit_reference_word():
    rep = audit_not_attained(alpha0_prefix(8), LAM0, start=12)
    assert rep.clean
    assert rep.stop == len(alpha0_prefix(8).tail) - 19


def test_audit_low_word():
    rep = audit_not_attained(FiniteCF(0, (1, 2) * 40), LAM0, start=3)
    assert rep.clean


def test_audit_flags_adversarial_word():
    word = (2, 1) * 5 + (3, 1) + (1, 3) * 10 + (1, 2) * 10
    rep = audit_not_attained(FiniteCF(0, word), LAM0, start=1)
    assert not rep.clean
    assert 11 in rep.flagged  # the 3 of the planted (3,1)


def test_audit_prefix_too_short():
    with pytest.raises(PrefixTooShortError):
        audit_not_attained(FiniteCF(0, (1, 2) * 5), LAM0, start=1)


def test_one_sided_bracket_edges():
    word = (1, 2, 3)
    lo, hi = one_sided_lambda_bracket(word, 3)  # backward word is (2, 1)
    assert lo == 3 + Fraction(1, 3) and hi == 3 + Fraction(1, 3) + 1
    with pytest.raises(ValueError):
        one_sided_lambda_bracket(word, 4)
