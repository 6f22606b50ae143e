import mpmath
import pytest

from pellrep.realfield import ALPHA
from pellrep.recurrences import (
    PELL,
    PELL_LUCAS,
    BinaryRecurrence,
    binet_approx,
    binet_coefficients,
    growth_envelope_check,
    roots,
    term,
)


def test_initial_terms():
    assert [term(PELL, k) for k in range(10)] == [0, 1, 2, 5, 12, 29, 70, 169, 408, 985]
    assert [term(PELL_LUCAS, k) for k in range(10)] == [2, 2, 6, 14, 34, 82, 198, 478, 1154, 2786]


@pytest.mark.parametrize("rec", [PELL, PELL_LUCAS])
def test_binet_agrees_with_recurrence_up_to_500(rec):
    mpmath.mp.dps = 300
    s2 = mpmath.sqrt(2)
    a, b = 1 + s2, 1 - s2
    for k in range(501):
        r = binet_approx(rec, k, 128)
        assert r.to_integer() == term(rec, k)
        want = (a**k - b**k) / (2 * s2) if rec is PELL else a**k + b**k
        assert int(mpmath.nint(want)) == term(rec, k)


@pytest.mark.parametrize("rec", [PELL, PELL_LUCAS])
def test_growth_envelopes_up_to_300(rec):
    for k in range(rec.envelope_from, 301):
        assert growth_envelope_check(rec, k)


def test_envelope_domain():
    with pytest.raises(ValueError):
        growth_envelope_check(PELL, 1)


def test_roots_and_coefficients():
    assert roots(PELL)[0] == ALPHA
    A, B = binet_coefficients(PELL_LUCAS)
    assert A == 1 and B == 1


def test_bad_recurrences():
    with pytest.raises(ValueError):
        BinaryRecurrence(0, -1, 0, 1)
    with pytest.raises(ValueError):
        term(PELL, -1)
