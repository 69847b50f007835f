"""Exact arithmetic for equitable partitions, f(n,h), g(n,h) and density bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

# Budget on the bit length of any single exact quantity we are asked to build.
MAX_BITS = 1 << 22


class BudgetExceeded(RuntimeError):
    """Requested quantity is too large to compute exactly."""


@dataclass(frozen=True)
class PartitionSeq:
    entries: tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.entries)

    @property
    def h(self) -> int:
        return len(self.entries)

    def is_equitable(self) -> bool:
        return not self.entries or max(self.entries) - min(self.entries) <= 1

    def product(self) -> int:
        return math.prod(self.entries)


def equitable_partition(n: int, h: int) -> PartitionSeq:
    """The equitable (h, n)-partition, larger parts first."""
    if h < 1:
        raise ValueError("h must be at least 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    q, t = divmod(n, h)
    return PartitionSeq((q + 1,) * t + (q,) * (h - t))


def f_value(n: int, h: int) -> int:
    q, t = divmod(n, h)
    return (q + 1) ** t * q ** (h - t)


@lru_cache(maxsize=None)
def g_value(n: int, h: int) -> int:
    if h < 2 or n < 0:
        # h = 1 would recurse on g(n, 1) forever
        raise ValueError("need h >= 2 and n >= 0")
    if n < h:
        return 0
    q, t = divmod(n, h)
    big = t * g_value(q + 1, h) if t else 0
    return f_value(n, h) + big + (h - t) * g_value(q, h)


def g_closed_form(h: int, k: int) -> int:
    """g(h^k, h) as the finite geometric sum."""
    if h < 2 or k < 1:
        raise ValueError("need h >= 2 and k >= 1")
    if (k - 1) * h * h.bit_length() > MAX_BITS:
        raise BudgetExceeded(f"h^(h(k-1)) too large for h={h}, k={k}")
    return sum(h ** ((k - 1) * h - (i - 1) * (h - 1)) for i in range(1, k + 1))


def nonequitable_bound_ok(parts: list[int]) -> bool:
    """prod(parts) <= f(n,h) * (1 - 1/ceil(n/h)^2), compared as integers."""
    h, n = len(parts), sum(parts)
    c = -(-n // h)
    return math.prod(parts) * c * c <= f_value(n, h) * (c * c - 1)


@dataclass
class BoundReport:
    h: int
    lower: Fraction
    ratio_bounds: list[tuple[int, Fraction]] = field(default_factory=list)
    theorem3_factor: Fraction = Fraction(0)

    def as_dict(self) -> dict:
        return {
            "h": self.h,
            "lower": str(self.lower),
            "ratio_bounds": [{"k": k, "ratio": str(r)} for k, r in self.ratio_bounds],
            "theorem3_factor": str(self.theorem3_factor),
            "theorem3_factor_decimal": mpmath.nstr(mpmath.mpf(self.theorem3_factor.numerator)
                                                   / self.theorem3_factor.denominator, 25),
        }


def _round_up(x: mpmath.mpf, frac_bits: int) -> Fraction:
    scale = 1 << frac_bits
    return Fraction(int(mpmath.ceil(x * scale)), scale)


def upper_factor(h: int, frac_bits: int = 64) -> Fraction:
    """1 + 4 / h^(h^(1/3)) rounded up to a multiple of 2^-frac_bits.

    Evaluated in interval arithmetic; the upper endpoint is rounded up, so the
    result is a certified upper bound.
    """
    if h < 2:
        raise ValueError("h must be at least 2")
    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = frac_bits + 64
        val = 1 + 4 / iv.mpf(h) ** (iv.mpf(h) ** (iv.mpf(1) / 3))
        hi = val.b
    finally:
        iv.prec = old
    with mpmath.workprec(frac_bits + 64):
        return _round_up(mpmath.mpf(hi), frac_bits)


def inducibility_bounds(h: int, k_list: list[int], frac_bits: int = 64) -> BoundReport:
    if h < 2:
        raise ValueError("h must be at least 2")
    lower = Fraction(math.factorial(h), h ** h - h)
    ratios = []
    for k in k_list:
        if k < 1:
            raise ValueError("k must be at least 1")
        n = h ** k if k * h.bit_length() <= MAX_BITS else None
        if n is None or h * n.bit_length() > MAX_BITS:
            raise BudgetExceeded(f"C(h^k, h) too large for h={h}, k={k}")
        ratios.append((k, Fraction(g_value(n, h), math.comb(n, h))))
    return BoundReport(h, lower, ratios, upper_factor(h, frac_bits))


def range_bound(h: int, eps: Fraction | str | float) -> int:
    """floor(2^(h^(1-eps))), rounded so the returned n is always admissible."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if h < 1:
        raise ValueError("h must be positive")
    e = 1 - eps
    a, b = e.numerator, e.denominator
    # integer exponent when h^a is a perfect b-th power
    ha = h ** a
    root = _iroot(ha, b)
    if root ** b == ha:
        if root > MAX_BITS:
            raise BudgetExceeded(f"2^{root} exceeds the bit budget")
        return 1 << root
    iv = mpmath.iv
    old = iv.prec
    try:
        prec = 64
        while True:
            iv.prec = prec
            expo = iv.mpf(h) ** (iv.mpf(a) / b)
            if expo.b > MAX_BITS:
                raise BudgetExceeded("2^(h^(1-eps)) exceeds the bit budget")
            iv.prec = prec + int(expo.b) + 8
            val = iv.mpf(2) ** expo
            lo, hi = int(mpmath.floor(val.a)), int(mpmath.floor(val.b))
            if lo == hi:
                return lo
            prec *= 2
    finally:
        iv.prec = old


def _iroot(x: int, b: int) -> int:
    """floor(x ** (1/b)) for nonnegative ints."""
    if x < 2 or b == 1:
        return x
    r = 1 << ((x.bit_length() + b - 1) // b)
    while True:
        s = ((b - 1) * r + x // r ** (b - 1)) // b
        if s >= r:
            break
        r = s
    while r ** b > x:
        r -= 1
    while (r + 1) ** b <= x:
        r += 1
    return r
