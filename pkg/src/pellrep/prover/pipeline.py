"""Mechanized proofs that every Pell / Pell-Lucas solution has k < 150.

Both theorems run the same chain; :class:`SequenceSetup` holds what differs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .. import constants as C
from ..baker import (
    LogPolynomialBound,
    coupled_shape,
    matveev_coefficient,
    solve_k_ceiling,
    weber_log_factor,
)
from ..errors import CertificationError, PrecisionError
from ..realfield.cf import PREC_CAP
from ..realfield.heights import eval_log, log_height, matveev_A
from ..realfield.precreal import DEFAULT_PREC, PrecReal
from ..realfield.quad import ALPHA, BETA, QuadElement
from ..realfield.quantities import Quantity
from ..recurrences import PELL, PELL_LUCAS, BinaryRecurrence
from ..reduction import legendre_lower_bound, legendre_w_ceiling, reduce_cases
from ..repdigits import search_difference_solutions, value_set
from .certificate import Certificate, Step

K_SPLIT = 150
X_COEFF = Fraction(981, 100)  # |x| <= 9.81 * 10**-w for the first linear form
LAMBDA2_COEFF = 4  # |Lambda_2| < 4 * alpha**-k
WEBER_A = Fraction(1, 10)


@dataclass(frozen=True)
class ProofConfig:
    prec: int = DEFAULT_PREC
    prec_cap: int = PREC_CAP
    threads: int = 1
    window: int = 10
    sanity_scan_to: int = 300

    def __post_init__(self):
        if not 64 <= self.prec <= self.prec_cap:
            raise ValueError("need 64 <= prec <= prec_cap")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass(frozen=True)
class SequenceSetup:
    theorem: str
    rec: BinaryRecurrence
    search_from: int
    scale: QuadElement  # U_k = scale * alpha**k + (conjugate term)
    lambda1_gamma: Callable[[int], QuadElement]
    lambda2_gamma: Callable[[int, int, int], QuadElement]
    mu1: Callable[[int], Quantity]
    mu2: Callable[[int, int, int], Quantity]
    gamma3_cofactor: QuadElement  # lambda2_gamma = (a1 - a2*10**-w) * cofactor
    b_shift: int
    size_rhs: int  # the size bound reads 2n < k + size_rhs
    external_w1: bool
    discrepancies: tuple = field(default=())


PELL_SETUP = SequenceSetup(
    theorem="pell",
    rec=PELL,
    search_from=1,
    scale=QuadElement(0, Fraction(1, 4), 2),
    lambda1_gamma=C.pell_lambda1_gamma,
    lambda2_gamma=C.pell_lambda2_gamma,
    mu1=C.pell_mu1,
    mu2=C.pell_mu2,
    gamma3_cofactor=C.TWO_SQRT2_OVER_9,
    b_shift=0,
    size_rhs=3,
    external_w1=False,
    discrepancies=(
        {
            "item": "k-ceiling after both Matveev steps",
            "reference": "1.25e29",
            "note": "reference coefficients 4.29e13 and 4.1e12 themselves give about 1.8e30; "
            "certified heights give the computed value",
        },
        {
            "item": "reduction round 1 ceiling on n-m",
            "reference": "32",
            "note": "one convergent shared by all digit cases, chosen from a window of 10",
        },
        {"item": "k-ceiling after round 1", "reference": "1.32e16"},
        {
            "item": "final k-ceiling",
            "reference": "23",
            "note": "the second reduction uses B = alpha since the bound decays like alpha**-k; "
            "the reference took B = 10",
        },
        {
            "item": "gamma_3 of the second linear form",
            "reference": "(a1 - a2*10^(m-n))/(18*sqrt2)",
            "computed": "(a1 - a2*10^(m-n))*2*sqrt2/9",
            "note": "dividing by alpha^k/(2*sqrt2) gives the factor 2*sqrt2/9",
        },
        {
            "item": "A_2 of both Matveev steps",
            "reference": "4.7 declared, 4.6 substituted",
            "computed": "2*log 10 = 4.6051...",
            "note": "4.6 is below 2*log 10",
        },
        {
            "item": "sign in the first Matveev consequence",
            "reference": "(m-n)*log 10",
            "computed": "(n-m)*log 10",
        },
        {
            "item": "second reduction digit range",
            "reference": "2 <= n-m <= 32",
            "computed": "1 <= n-m <= round 1 ceiling",
            "note": "n-m = 1 has no separate argument for this sequence",
        },
        {
            "item": "size-bound chain",
            "reference": "10^(n-1)/2 < 10^(n-1) - 10^m",
            "computed": "a1*R_n - a2*R_m >= R_n - 9*R_(n-1) > 10^(n-2)",
            "note": "the reference step fails when n-m = 1",
        },
    ),
)

PELL_LUCAS_SETUP = SequenceSetup(
    theorem="pell-lucas",
    rec=PELL_LUCAS,
    search_from=0,
    scale=QuadElement(1),
    lambda1_gamma=C.pl_lambda1_gamma,
    lambda2_gamma=C.pl_lambda2_gamma,
    mu1=C.pl_mu1,
    mu2=C.pl_mu2,
    gamma3_cofactor=QuadElement(Fraction(1, 9)),
    b_shift=2,
    size_rhs=5,
    external_w1=True,
    discrepancies=(
        {
            "item": "solution value set",
            "reference": "{2, 5, 6, 14, 34, 82, 478} with Q_1 = 5 = 11 - 6",
            "note": "Q_0 = Q_1 = 2 by definition and 5 is not a Pell-Lucas number",
        },
        {
            "item": "k-ceiling after both Matveev steps",
            "reference": "9e30 from k < 1.7e27*(1 + log(k+2))^2",
            "note": "the reference shape reproduces 8.88e30; certified heights give a sharper constant",
        },
        {
            "item": "bound on |x| for the first linear form",
            "reference": "21*10^(m-n), with a = 0.21 claimed to keep the factor 21",
            "computed": "9.81*10^(m-n) with a = 0.1",
            "note": "-log(1-0.21)/0.21 = 1.122 > 1",
        },
        {
            "item": "reduction round 1 M",
            "reference": "13e14 (a bound on n-m)",
            "computed": "the k-ceiling, since u = k in the reduction",
        },
        {"item": "reduction round 1 ceiling on n-m (a1 <= 8)", "reference": "19"},
        {
            "item": "Legendre branch",
            "reference": "a_max = 39 over the first 38 quotients, 10^(n-m) < 3.69e33",
            "note": "maximum taken up to the first q_N above the k-ceiling",
        },
        {
            "item": "final k-ceiling",
            "reference": "36",
            "note": "the second reduction uses B = alpha; the reference took B = 10",
        },
        {
            "item": "A_2 of both Matveev steps",
            "reference": "4.7 declared, 4.6 substituted",
            "computed": "2*log 10 = 4.6051...",
        },
    ),
)

SETUPS = {"pell": PELL_SETUP, "pell-lucas": PELL_LUCAS_SETUP}


class _Failure(Exception):
    def __init__(self, anchor: str, exc: Exception):
        super().__init__(f"{anchor}: {exc}")
        self.anchor = anchor
        self.exc = exc


def _shape_json(shape: LogPolynomialBound) -> dict:
    return shape.to_json()


def _family_max(values: list[PrecReal]) -> PrecReal:
    best = values[0]
    for v in values[1:]:
        best = best.max(v)
    return best


class _Run:
    """One execution of the chain; steps are appended as they are certified."""

    def __init__(self, setup: SequenceSetup, cfg: ProofConfig):
        self.s = setup
        self.cfg = cfg
        self.P = cfg.prec
        self.steps: list[Step] = []
        self.log_alpha = eval_log(ALPHA, self.P)
        self.log10 = eval_log(10, self.P)

    def add(self, kind, anchor, inputs, outputs, prec=None) -> Step:
        st = Step(kind, anchor, inputs, outputs, prec)
        self.steps.append(st)
        return st

    def guard(self, anchor: str, fn):
        try:
            return fn()
        except (CertificationError, PrecisionError, ValueError) as exc:
            raise _Failure(anchor, exc) from exc

    # individual steps -------------------------------------------------

    def brute_force(self):
        s = self.s
        anchor = "brute force over small k"
        records = self.guard(
            anchor,
            lambda: search_difference_solutions(s.rec, s.search_from, K_SPLIT - 1, workers=self.cfg.threads),
        )
        self.records = records
        self.add(
            "brute-force",
            anchor,
            {"sequence": s.rec.name, "k_min": s.search_from, "k_max": K_SPLIT - 1, "n_range": "2 <= n <= digits(U_k) + 1"},
            {"solutions": len(records), "value_set": value_set(records), "covers_k_below": K_SPLIT},
        )

    def equal_lengths(self):
        lo = self.s.rec.envelope[0]
        self.add(
            "size-bound",
            "equal lengths n = m",
            {
                "claim": "n = m forces U_k = a*R_n with a = a1 - a2 in 1..8",
                "lower_envelope": f"U_k >= alpha^(k{lo:+d})",
                "linear_form": "first linear form with a1 -> a and w = n",
            },
            {
                "k_relation": f"k < {-lo} + n*log(10)/log(alpha)",
                "discharged_by": "reduction round 1 (cases a1 in 1..8 with w = n >= 2)",
            },
        )

    def size_bound(self):
        s = self.s
        hi = s.rec.envelope[1]
        slope = self.log_alpha / self.log10
        # n < 2 + (k + hi)*slope implies 2n < k + size_rhs for k >= 2 once slope < 1/2
        ok = slope.hi < Fraction(1, 2)
        beta150 = abs(BETA.to_real(self.P)) ** K_SPLIT
        scale_abs = abs(s.scale.to_real(self.P))
        # 9|beta|^k/(a1*10^n) <= 9*|scale*beta^k|*10^(m-n)/10 after scaling by the Binet factor
        x_coeff = 9 + Fraction(8, 10) + beta150 * scale_abs * 9 / 10
        # |Lambda_2| <= alpha^-2k + |a1 - a2|/(9*scale*alpha^k), as a multiple of alpha^-k
        lam2 = PrecReal.exact(1, self.P) / ALPHA.to_real(self.P) ** K_SPLIT + (
            s.scale.inverse() * Fraction(8, 9)
        ).to_real(self.P)
        weber_x2 = LAMBDA2_COEFF / ALPHA.to_real(self.P) ** K_SPLIT
        if not (ok and x_coeff.hi <= X_COEFF and lam2.hi < LAMBDA2_COEFF and weber_x2.hi < WEBER_A):
            raise _Failure("size bound", CertificationError("size-bound constants not certified"))
        self.add(
            "size-bound",
            "size bound",
            {
                "lower": "a1*R_n - a2*R_m >= R_n - 9*R_(n-1) > 10^(n-2)",
                "upper": f"U_k <= alpha^(k{hi:+d})",
                "slope_log_alpha_over_log_10": slope,
                "k_min": K_SPLIT,
            },
            {
                "size": f"2n < k + {s.size_rhs}",
                "n_le_k": True,
                "x_bound_coefficient": x_coeff,
                "x_bound_used": X_COEFF,
                "lambda2_bound_coefficient": lam2,
                "lambda2_bound_used": LAMBDA2_COEFF,
                "lambda2_x_at_k_min": weber_x2,
            },
            self.P,
        )

    def matveev1(self):
        s, P = self.s, self.P
        anchor = "Matveev on the first linear form"
        A1, A2 = matveev_A(ALPHA, 2, P), matveev_A(10, 2, P)
        A3 = _family_max([matveev_A(s.lambda1_gamma(a), 2, P) for a in range(1, 10)])
        coeff = matveev_coefficient(3, 2, [A1, A2, A3], P)
        self.c1 = coeff
        self.add(
            "matveev",
            anchor,
            {
                "t": 3,
                "D": 2,
                "gammas": ["alpha", "10", f"{s.lambda1_gamma(1)!r} / a1, a1 in 1..9"],
                "exponents": ["k", "-n", "1"],
                "B": f"k + {s.b_shift}" if s.b_shift else "k",
                "A": [A1, A2, A3],
                "nonvanishing": "axiom: conjugating Lambda_1 = 0 in Q(sqrt2) forces a contradiction "
                "(Q_k = 0, or alpha^k rational)",
            },
            {
                "coefficient_per_1_plus_log_B": coeff,
                "consequence": "(n-m)*log(10) < coefficient*(1 + log B) + log(9.81)",
            },
            P,
        )

    def matveev2(self):
        s, P = self.s, self.P
        anchor = "Matveev on the second linear form"
        A1, A2 = matveev_A(ALPHA, 2, P), matveev_A(10, 2, P)
        h_cof = log_height(s.gamma3_cofactor, P)
        # h(gamma_3) <= h((a1*10^w - a2)/10^w) + h(cofactor) <= log 9 + w*log 10 + h(cofactor)
        e1 = (eval_log(9, P) + h_cof) * 2
        e2 = self.log10 * 2
        # |log gamma_3| stays below e1 for every digit pair
        extremes = [s.lambda2_gamma(9, 1, 1), s.lambda2_gamma(1, 9, 1), s.lambda2_gamma(9, 9, 100)]
        if not all(abs(eval_log(g, P)).hi <= e1.lo for g in extremes):
            raise _Failure(anchor, CertificationError("|log gamma_3| exceeds A_3"))
        c2 = matveev_coefficient(3, 2, [A1, A2, 1], P)
        self.c2, self.e1, self.e2 = c2, e1, e2
        self.add(
            "matveev",
            anchor,
            {
                "t": 3,
                "D": 2,
                "gammas": ["alpha", "10", f"(a1 - a2*10^-w) * {s.gamma3_cofactor!r}"],
                "exponents": ["-k", "n", "1"],
                "B": f"k + {s.b_shift}" if s.b_shift else "k",
                "A": [A1, A2, "e1 + e2*w"],
                "e1": e1,
                "e2": e2,
                "nonvanishing": "axiom: Lambda_2 = 0 would make alpha^(2k) rational",
            },
            {
                "coefficient_per_A3_per_1_plus_log_B": c2,
                "consequence": "k*log(alpha) - log(4) < coefficient*(1 + log B)*(e1 + e2*w)",
            },
            P,
        )

    def k_ceiling(self):
        s, P = self.s, self.P
        anchor = "k-ceiling from both Matveev steps"
        shape = coupled_shape(
            self.log_alpha, eval_log(4, P), self.c2, self.e1, self.e2, self.c1, eval_log(X_COEFF, P), self.log10,
            shift=s.b_shift, prec=P,
        )
        K1 = self.guard(anchor, lambda: solve_k_ceiling(shape, P))
        # equal lengths: k < -lo + n*log10/log(alpha) and n*log 10 < c1*L + log 9.81
        lo = s.rec.envelope[0]
        zero = PrecReal.exact(0, P)
        eq_shape = LogPolynomialBound(
            zero, self.c1 / self.log_alpha, eval_log(X_COEFF, P) / self.log_alpha + (-lo), shift=s.b_shift
        )
        K_eq = self.guard(anchor, lambda: solve_k_ceiling(eq_shape, P))
        self.K1 = K1
        self.M1 = max(K1, K_eq)
        self.add(
            "size-bound",
            anchor,
            {"shape": _shape_json(shape), "equal_lengths_shape": _shape_json(eq_shape), "k0": 10},
            {"k_ceiling": K1, "equal_lengths_k_ceiling": K_eq, "u_bound_round_1": self.M1},
            P,
        )

    def weber1(self):
        P = self.P
        f = weber_log_factor(WEBER_A, P)
        A = f * X_COEFF / self.log10
        self.A1 = A
        self.add(
            "weber",
            "log bound for the first linear form",
            {"a": WEBER_A, "x_bound": f"{X_COEFF} * 10^-w", "valid_for": "w >= 2"},
            {"factor": f, "A": A, "B": 10, "form": "|k*log(alpha)/log(10) - n + mu1| < A * 10^-w"},
            P,
        )

    def round1(self):
        s, P = self.s, self.P
        anchor = "reduction round 1"
        digits = range(1, 9) if s.external_w1 else range(1, 10)
        cases = [(f"a1={a}", s.mu1(a)) for a in digits]
        self.tau1 = C.pell_gamma()
        red = self.guard(
            anchor,
            lambda: reduce_cases(
                self.tau1, cases, self.M1, self.A1, 10, window=self.cfg.window,
                prec_floor=P, prec_cap=self.cfg.prec_cap, threads=self.cfg.threads,
            ),
        )
        self.w1 = red.w_bound
        zero_note = "a1 = 9 gives mu = 0 and goes to the Legendre branch" if s.external_w1 else "mu != 0 for all a1"
        self.add(
            "reduction",
            anchor,
            {
                "tau": "log(alpha)/log(10)",
                "mu": f"log({s.lambda1_gamma(1)!r}/a1)/log(10)",
                "cases": [c[0] for c in cases],
                "M": self.M1,
                "A": self.A1,
                "B": 10,
                "w": "n - m (or n when n = m)",
                "note": zero_note,
            },
            _reduction_outputs(red, "w_bound"),
            red.precision_bits,
        )

    def legendre(self):
        P = self.P
        anchor = "Legendre branch for a1 = 9"
        a_max, N = self.guard(anchor, lambda: legendre_lower_bound(self.tau1, self.M1, P, self.cfg.prec_cap))
        wL = legendre_w_ceiling(self.A1, a_max, self.M1, 10, P)
        bound = self.A1 * (a_max + 2) * self.M1
        self.wL, self.a_max = wL, a_max
        self.add(
            "legendre",
            anchor,
            {"tau": "log(alpha)/log(10)", "k_max": self.M1, "A": self.A1, "form": "0 < |k*tau - n| < A*10^-w"},
            {"a_max": a_max, "N_used": N, "ten_pow_w_below": bound, "w_bound": wL},
            P,
        )

    def resolve(self):
        s, P = self.s, self.P
        anchor = "k-ceiling after round 1"
        zero = PrecReal.exact(0, P)
        shape = coupled_shape(
            self.log_alpha, eval_log(4, P), self.c2, self.e1, self.e2, zero, self.log10 * self.w1, self.log10,
            shift=s.b_shift, prec=P,
        )
        K2 = self.guard(anchor, lambda: solve_k_ceiling(shape, P))
        self.M2 = K2
        self.add("size-bound", anchor, {"shape": _shape_json(shape), "w_max": self.w1}, {"k_ceiling": K2}, P)

    def weber2(self):
        P = self.P
        f = weber_log_factor(WEBER_A, P)
        A = f * LAMBDA2_COEFF / self.log_alpha
        self.A2 = A
        self.add(
            "weber",
            "log bound for the second linear form",
            {"a": WEBER_A, "x_bound": f"{LAMBDA2_COEFF} * alpha^-k", "valid_for": f"k >= {K_SPLIT}"},
            {"factor": f, "A": A, "B": "alpha", "form": "|n*log(10)/log(alpha) - k + mu2| < A * alpha^-k"},
            P,
        )

    def round2(self):
        s, P = self.s, self.P
        anchor = "reduction round 2"
        w_lo = 2 if s.external_w1 else 1
        w_hi = max(self.w1, getattr(self, "wL", 0))
        cases = [
            (f"a1={a1},a2={a2},w={w}", s.mu2(a1, a2, w))
            for w in range(w_lo, w_hi + 1)
            for a1 in range(1, 10)
            for a2 in range(1, 10)
        ]
        M = self.M2
        red = self.guard(
            anchor,
            lambda: reduce_cases(
                C.pell_gamma_inv(), cases, M, self.A2, Quantity.of(ALPHA, "alpha"), window=self.cfg.window,
                prec_floor=P, prec_cap=self.cfg.prec_cap, threads=self.cfg.threads,
            ),
        )
        self.k_final = red.w_bound
        self.add(
            "reduction",
            anchor,
            {
                "tau": "log(10)/log(alpha)",
                "mu": f"log((a1 - a2*10^-w) * {s.gamma3_cofactor!r})/log(alpha)",
                "w_range": [w_lo, w_hi],
                "cases": len(cases),
                "M": M,
                "u": "n",
                "A": self.A2,
                "B": "alpha",
            },
            _reduction_outputs(red, "k_bound"),
            red.precision_bits,
        )

    def external(self):
        scan = None
        if self.cfg.sanity_scan_to >= K_SPLIT:
            hits = search_difference_solutions(
                self.s.rec, K_SPLIT, self.cfg.sanity_scan_to, workers=self.cfg.threads, k_limit=self.cfg.sanity_scan_to
            )
            scan = {
                "k_range": [K_SPLIT, self.cfg.sanity_scan_to],
                "solutions_with_n_minus_m_1": sum(1 for r in hits if r.n - r.m == 1),
                "label": "sanity scan, not part of the proof",
            }
        self.add(
            "external-lemma",
            "n - m = 1",
            {
                "claim": "no Pell-Lucas number with k >= 150 is a concatenation of two repdigits; "
                "the largest such number is Q_5 = 82",
                "source": "published classification of Pell-Lucas numbers that are concatenations of two repdigits",
            },
            {"verified": False, "sanity_scan": scan},
        )

    def conclusion(self):
        s = self.s
        lo = s.rec.envelope[0]
        eq_bound = (self.log10 / self.log_alpha * self.w1 + (-lo)).floor_upper()
        K = max(self.k_final, eq_bound)
        closed = K < K_SPLIT
        branches = ["n = m: k <= equal_lengths_k_ceiling", f"n - m >= {2 if s.external_w1 else 1}: reduction round 2"]
        if s.external_w1:
            branches.append("n - m = 1: external lemma")
        self.add(
            "conclusion",
            "contradiction with k >= 150",
            {"k_min": K_SPLIT, "branches": branches},
            {
                "reduction_k_ceiling": self.k_final,
                "equal_lengths_k_ceiling": eq_bound,
                "k_ceiling": K,
                "closed": closed,
            },
        )
        return closed


def _reduction_outputs(red, bound_name: str) -> dict:
    return {
        "q_used": red.q_used,
        "convergent_index": red.index,
        "window": [[i, w] for i, w in red.window],
        "min_eps": red.min_eps,
        bound_name: red.w_bound,
        "cases": [{"case": r.label, "eps": r.eps, "w_bound": r.w_bound} for r in red.rows],
    }


def prove(theorem: str, cfg: Optional[ProofConfig] = None) -> Certificate:
    if theorem not in SETUPS:
        raise ValueError(f"unknown theorem {theorem!r}")
    setup = SETUPS[theorem]
    cfg = cfg or ProofConfig()
    run = _Run(setup, cfg)
    status = "FAILED"
    failure = None
    try:
        run.brute_force()
        run.equal_lengths()
        if setup.external_w1:
            run.external()
        run.size_bound()
        run.matveev1()
        run.matveev2()
        run.k_ceiling()
        run.weber1()
        run.round1()
        if setup.external_w1:
            run.legendre()
            run.M2 = run.M1
        else:
            run.resolve()
        run.weber2()
        run.round2()
        if run.conclusion():
            status = "PROVED_CONDITIONAL" if setup.external_w1 else "PROVED"
    except _Failure as f:
        failure = f
        run.add("conclusion", "failure", {"failed_step": f.anchor}, {"error": str(f.exc), "closed": False})
    records = getattr(run, "records", [])
    metadata = {
        "base_precision_bits": cfg.prec,
        "k_split": K_SPLIT,
        "search_n_bound": "n <= digits(U_k) + 1",
        "paper_discrepancies": _discrepancies(setup, run) if failure is None else list(setup.discrepancies),
    }
    return Certificate(setup.theorem, status, run.steps, list(records), metadata)


def _discrepancies(setup: SequenceSetup, run: _Run) -> list:
    computed = {
        "k-ceiling after both Matveev steps": run.K1,
        "reduction round 1 ceiling on n-m": run.w1,
        "reduction round 1 ceiling on n-m (a1 <= 8)": run.w1,
        "k-ceiling after round 1": getattr(run, "M2", None),
        "final k-ceiling": run.k_final,
        "solution value set": value_set(run.records),
    }
    out = []
    for d in setup.discrepancies:
        d = dict(d)
        if "computed" not in d and d["item"] in computed:
            d["computed"] = computed[d["item"]]
        if d["item"] == "Legendre branch":
            d["computed"] = f"a_max = {run.a_max}, n-m <= {run.wL}"
        out.append(d)
    return out


def prove_pell(cfg: Optional[ProofConfig] = None) -> Certificate:
    return prove("pell", cfg)


def prove_pell_lucas(cfg: Optional[ProofConfig] = None) -> Certificate:
    return prove("pell-lucas", cfg)
