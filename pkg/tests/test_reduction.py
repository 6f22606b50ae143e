import random
from fractions import Fraction

import mpmath
import pytest

from pellrep import constants as C
from pellrep.errors import CertificationError
from pellrep.realfield import Quantity, expand_cf_until
from pellrep.reduction import (
    ReductionInstance,
    dujella_petho_reduce,
    epsilon,
    legendre_lower_bound,
    legendre_w_ceiling,
    reduce_cases,
)

mpmath.mp.dps = 80
SQ = mpmath.sqrt

# (tau name, tau value, mu name, mu value, M, A, B)
SYNTHETIC = [
    ("sqrt2", SQ(2), "sqrt3-minus-1", SQ(3) - 1, 1000, Fraction(1), 2),
    ("golden", (1 + SQ(5)) / 2, "sqrt2", SQ(2), 2000, Fraction(2), 3),
    ("sqrt5", SQ(5), "0.25", mpmath.mpf(1) / 4, 1500, Fraction(1, 2), 2),
    ("pell-gamma", mpmath.log(1 + SQ(2)) / mpmath.log(10), "pell-mu1-a3",
     mpmath.log(9 / (12 * SQ(2))) / mpmath.log(10), 2000, Fraction(44888, 10000), 10),
]


def brute_max_w(tau, mu, M, A, B):
    """Largest w >= 0 with |u*tau - v + mu| < A*B^-w over 1 <= u <= M, all v."""
    A = mpmath.mpf(A.numerator) / A.denominator
    best = -1
    for u in range(1, M + 1):
        x = u * tau + mu
        for v in (mpmath.floor(x), mpmath.floor(x) + 1):
            lam = abs(x - v)
            if lam == 0 or lam >= A:
                continue
            w = int(mpmath.floor(mpmath.log(A / lam) / mpmath.log(B)))
            while A * mpmath.mpf(B) ** (-w) <= lam:
                w -= 1
            best = max(best, w)
    return best


@pytest.mark.parametrize("case", SYNTHETIC, ids=[c[0] + "/" + c[2] for c in SYNTHETIC])
def test_soundness_against_exhaustive_search(case):
    tname, tau, mname, mu, M, A, B = case
    inst = ReductionInstance(C.parse_quantity(tname), C.parse_quantity(mname), M, A, B)
    res = dujella_petho_reduce(inst)
    assert res.eps.sign() > 0
    assert res.q_used > 6 * M
    assert brute_max_w(tau, mu, M, A, B) <= res.w_bound


def test_synthetic_reference_instance():
    inst = ReductionInstance(C.sqrt_const(2), C.named("sqrt3-minus-1"), 1000, 1, 2)
    res = dujella_petho_reduce(inst)
    assert (res.q_used, res.index, res.w_bound) == (13860, 11, 16)


def test_epsilon_sign_is_stable_under_precision():
    tau, mu = C.pell_gamma(), C.pell_mu1(5)
    M = 10**20
    cf = expand_cf_until(tau, 6 * M, extra=3)
    q = cf.convergents[cf.first_index_above(6 * M) + 1][1]
    e1, _ = epsilon(mu, tau, q, M, 256)
    e2, _ = epsilon(mu, tau, q, M, 1024)
    assert e1.sign() == e2.sign()
    assert e1.overlaps(e2) and e2.width <= e1.width


def test_bound_grows_with_A():
    tau, mu = C.pell_gamma(), C.pell_mu1(2)
    lo = dujella_petho_reduce(ReductionInstance(tau, mu, 10**10, 1, 10))
    hi = dujella_petho_reduce(ReductionInstance(tau, mu, 10**10, 10**6, 10))
    assert lo.q_used == hi.q_used and hi.w_bound >= lo.w_bound + 5


def test_reference_round_one_pell():
    # reference parameters: M = 1.25e29, A = 4.7, B = 10
    r = reduce_cases(C.pell_gamma(), [(f"a{a}", C.pell_mu1(a)) for a in range(1, 10)],
                     M=125 * 10**27, A=Fraction(47, 10), B=10)
    assert r.w_bound <= 32
    assert r.min_eps.sign() > 0 and len(r.rows) == 9


def test_reference_round_one_pell_lucas():
    # reference parameters: M = 13e14, A = 10, B = 10 over a1 in 1..8
    r = reduce_cases(C.pell_gamma(), [(f"a{a}", C.pl_mu1(a)) for a in range(1, 9)],
                     M=13 * 10**14, A=10, B=10)
    assert r.w_bound <= 19


def test_case_window_prefers_smallest_bound():
    cases = [(f"a{a}", C.pell_mu1(a)) for a in range(1, 10)]
    r = reduce_cases(C.pell_gamma(), cases, M=10**12, A=5, B=10, window=6)
    scored = [w for _, w in r.window if w is not None]
    assert r.w_bound == min(scored)
    assert max(row.w_bound for row in r.rows) == r.w_bound
    threaded = reduce_cases(C.pell_gamma(), cases, M=10**12, A=5, B=10, window=6, threads=3)
    assert (threaded.q_used, threaded.w_bound) == (r.q_used, r.w_bound)


def test_rejections():
    with pytest.raises(ValueError):
        ReductionInstance(Quantity.rational(Fraction(5, 2)), C.golden(), 10, 1, 2)
    with pytest.raises(ValueError):
        ReductionInstance(C.golden(), C.sqrt_const(2), 0, 1, 2)
    with pytest.raises(ValueError):
        ReductionInstance(C.golden(), C.sqrt_const(2), 10, 1, 1)
    with pytest.raises(ValueError):
        dujella_petho_reduce(ReductionInstance(C.golden(), Quantity.rational(0), 10, 1, 2))
    with pytest.raises(ValueError):
        reduce_cases(C.golden(), [("z", Quantity.rational(0))], 10, 1, 2)


def test_failure_when_epsilon_never_positive():
    # mu = tau makes ||mu q|| = ||tau q|| < M ||tau q||
    with pytest.raises(CertificationError):
        dujella_petho_reduce(ReductionInstance(C.sqrt_const(2), C.sqrt_const(2), 50, 1, 2))


def test_legendre_golden():
    a_max, N = legendre_lower_bound(C.golden(), 100)
    assert a_max == 1
    fib = [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]
    assert N == fib.index(144)


def test_legendre_spot_checks():
    tau = C.pell_gamma()
    x = mpmath.log(1 + SQ(2)) / mpmath.log(10)
    a_max, N = legendre_lower_bound(tau, 10**5)
    rng = random.Random(3)
    for k in [rng.randint(1, 10**5) for _ in range(2000)] + [1, 2, 3, 5, 8, 13, 10**5]:
        assert abs(k * x - mpmath.nint(k * x)) > 1 / ((a_max + 2) * mpmath.mpf(k))


def test_legendre_pell_lucas_scale():
    a_max, N = legendre_lower_bound(C.pell_gamma(), 752530977738427484872940245690)
    mp_q = []
    y = mpmath.log(1 + SQ(2)) / mpmath.log(10)
    for _ in range(N + 1):
        a = int(mpmath.floor(y))
        mp_q.append(a)
        y = 1 / (y - a)
    assert a_max == max(mp_q)
    w = legendre_w_ceiling(Fraction(44888, 10000), a_max, 752530977738427484872940245690)
    assert 10 ** (w + 1) >= 4.4888 * (a_max + 2) * 752530977738427484872940245690
