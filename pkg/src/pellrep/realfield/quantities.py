"""Re-evaluable real quantities: a name plus a precision -> enclosure map."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .heights import eval_log
from .precreal import DEFAULT_PREC, PrecReal
from .quad import Number, as_quad


@dataclass(frozen=True, eq=False)
class Quantity:
    """A real number that can be enclosed at any requested precision.

    ``exact`` is set when the number is rational; continued fractions of such
    quantities terminate.
    """

    name: str
    evaluate: Callable[[int], PrecReal] = field(repr=False)
    exact: Optional[Fraction] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def enclose(self, prec: int = DEFAULT_PREC) -> PrecReal:
        hit = self._cache.get(prec)
        if hit is None:
            hit = self.evaluate(prec)
            self._cache[prec] = hit
        return hit

    @property
    def is_zero(self) -> bool:
        return self.exact == 0

    @classmethod
    def rational(cls, x, name: Optional[str] = None) -> "Quantity":
        fr = Fraction(x)
        return cls(name or str(fr), lambda prec: PrecReal.exact(fr, prec), fr)

    @classmethod
    def of(cls, x: Number, name: Optional[str] = None) -> "Quantity":
        q = as_quad(x)
        if q.is_rational():
            return cls.rational(q.a, name)
        return cls(name or repr(q), lambda prec: q.to_real(prec))

    @classmethod
    def log_ratio(cls, num: Number, base: Number, name: Optional[str] = None) -> "Quantity":
        """``log(num) / log(base)``; exact zero when ``num == 1``."""
        n, b = as_quad(num), as_quad(base)
        label = name or f"log({n!r})/log({b!r})"
        if n == 1:
            return cls(label, lambda prec: PrecReal.exact(0, prec), Fraction(0))

        def ev(prec: int) -> PrecReal:
            return (eval_log(n, prec + 8) / eval_log(b, prec + 8)).with_prec(prec)

        return cls(label, ev)

    def __repr__(self) -> str:
        return f"Quantity({self.name})"
