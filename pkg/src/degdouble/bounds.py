"""Closed-form counts and bounds, evaluated exactly.

Irrational quantities ((1+sqrt 2)^n, e^sqrt(n)) are enclosed in intervals
with rational endpoints.  Endpoints are rounded outward onto a dyadic grid
of ``prec`` fractional bits, so an interval is always a rigorous enclosure.
A comparison against a number is only decided when the interval excludes it;
``decide`` re-evaluates at doubled precision until that happens.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .enumeration import PartitionShape
from .families import triangle_family_size

DEFAULT_PREC = 128
MAX_PREC = 8192


def _floor_grid(x: Fraction, prec: int) -> Fraction:
    return Fraction(math.floor(x * (1 << prec)), 1 << prec)


def _ceil_grid(x: Fraction, prec: int) -> Fraction:
    return Fraction(math.ceil(x * (1 << prec)), 1 << prec)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other):
        o = _as_interval(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_interval(other)
        return Interval(self.lo - o.hi, self.hi - o.lo)

    def __mul__(self, other):
        o = _as_interval(other)
        p = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_interval(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return _as_interval(other) / self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        if self.lo >= 0:
            return Interval(self.lo ** k, self.hi ** k)
        out = Interval.exact(1)
        for _ in range(k):
            out = out * self
        return out

    def rounded(self, prec: int) -> "Interval":
        return Interval(_floor_grid(self.lo, prec), _ceil_grid(self.hi, prec))

    def contains(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def compare(self, x) -> int | None:
        """-1 if the whole interval is below x, +1 if above, None if undecided."""
        x = Fraction(x)
        if self.hi < x:
            return -1
        if self.lo > x:
            return 1
        if self.lo == self.hi == x:
            return 0
        return None


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.exact(x)


def sqrt_interval(x, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of sqrt(x) for rational x >= 0."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of a negative number")
    scale = 1 << prec
    # isqrt(floor(x * 4^prec)) <= sqrt(x) * 2^prec
    lo_num = math.isqrt(math.floor(x * scale * scale))
    hi_num = lo_num if lo_num * lo_num == x * scale * scale else lo_num + 1
    return Interval(Fraction(lo_num, scale), Fraction(hi_num, scale))


def _exp_bounds(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    """Taylor partial sum (a lower bound for x >= 0) and that sum plus a geometric tail bound."""
    if x < 0:
        raise ValueError("exp enclosure implemented for x >= 0 only")
    eps = Fraction(1, 1 << (prec + 8))
    total, term, k = Fraction(0), Fraction(1), 0
    while True:
        total += term
        k += 1
        term = term * x / k
        if k > x + 1 and term * (k + 1) / (k + 1 - x) < eps:
            return total, total + term * (k + 1) / (k + 1 - x)


def exp_interval(x: Interval | Fraction | int, prec: int = DEFAULT_PREC) -> Interval:
    x = _as_interval(x)
    lo, _ = _exp_bounds(x.lo, prec)
    _, hi = _exp_bounds(x.hi, prec)
    return Interval(lo, hi).rounded(prec)


@dataclass(frozen=True)
class BoundValue:
    kind: str  # "exact-integer" | "exact-rational" | "interval"
    lo: Fraction
    hi: Fraction
    precision: int = 0

    @classmethod
    def of(cls, x) -> "BoundValue":
        x = Fraction(x)
        return cls("exact-integer" if x.denominator == 1 else "exact-rational", x, x)

    @classmethod
    def enclosing(cls, iv: Interval, prec: int) -> "BoundValue":
        return cls("interval", iv.lo, iv.hi, prec)

    @property
    def value(self) -> Fraction:
        if self.kind == "interval":
            raise ValueError("interval bounds have no single value")
        return self.lo

    def compare(self, x) -> int | None:
        return Interval(self.lo, self.hi).compare(x)

    def render(self) -> tuple[str, str]:
        return format_number(self.lo, "down"), format_number(self.hi, "up")


def decide(evaluate: Callable[[int], BoundValue], x, prec: int = DEFAULT_PREC,
           max_prec: int = MAX_PREC) -> tuple[int | None, BoundValue]:
    """Compare the bound with x, doubling the working precision until decided or ``max_prec`` is passed."""
    while True:
        b = evaluate(prec)
        c = b.compare(x)
        if c is not None or b.kind != "interval" or prec >= max_prec:
            return c, b
        prec *= 2


def format_number(x: Fraction, direction: str = "nearest", digits: int = 12) -> str:
    """Integers and short rationals exactly; long dyadic endpoints as decimals rounded outward."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    if direction == "nearest" or x.denominator < 10 ** 6:
        return f"{x.numerator}/{x.denominator}"
    # keep `digits` significant digits, rounding away from the enclosed value
    if x == 0:
        return "0"
    exp10 = math.floor(math.log10(abs(float(x)))) if abs(x) > Fraction(1, 10 ** 300) else -300
    shift = digits - 1 - exp10
    scaled = x * Fraction(10) ** shift
    q = math.floor(scaled) if direction == "down" else math.ceil(scaled)
    s = str(abs(q))
    sign = "-" if q < 0 else ""
    if shift <= 0:
        return sign + s + "0" * (-shift)
    s = s.rjust(shift + 1, "0")
    return f"{sign}{s[:-shift]}.{s[-shift:]}".rstrip("0").rstrip(".")


# ---------------------------------------------------------------- counts

def factorial(n: int) -> int:
    return math.factorial(n)


def hamilton_cycle_count(n: int) -> int:
    return math.factorial(n - 1) // 2


def eq1_count(n: int) -> int:
    """Hamilton cycles through a fixed perfect matching: (n/2)! 2^(n/2) / n."""
    if n % 2 or n < 4:
        raise ValueError(f"eq1_count needs even n >= 4, got {n}")
    h = n // 2
    num = math.factorial(h) * 2 ** h
    q, rem = divmod(num, n)
    assert rem == 0
    return q


def near_count(n: int) -> int:
    """Hamilton cycles through a fixed near-matching: floor(n/2)! 2^floor(n/2) / (n-1)."""
    if n % 2 == 0 or n < 5:
        raise ValueError(f"near_count needs odd n >= 5, got {n}")
    h = n // 2
    q, rem = divmod(math.factorial(h) * 2 ** h, n - 1)
    if rem:
        raise ArithmeticError(f"non-exact division in near_count({n})")
    return q


def _one_plus_sqrt2_power(n: int) -> tuple[int, int]:
    """(a, b) with (1 + sqrt 2)^n = a + b sqrt 2."""
    a, b = 1, 0
    for _ in range(n):
        a, b = a + 2 * b, a + b
    return a, b


def one_plus_sqrt2_power(n: int, prec: int = DEFAULT_PREC) -> Interval:
    a, b = _one_plus_sqrt2_power(n)
    return (a + b * sqrt_interval(2, prec + b.bit_length() + 2)).rounded(prec)


@dataclass(frozen=True)
class Theorem1Bounds:
    lower: BoundValue
    upper: int
    upper_weak: int


def q_lower(n: int, prec: int = DEFAULT_PREC) -> BoundValue:
    """(n-1)! / (2 floor(n/2)! (1+sqrt 2)^n)."""
    h = n // 2
    iv = Fraction(math.factorial(n - 1), 2 * math.factorial(h)) / one_plus_sqrt2_power(n, prec + 16)
    return BoundValue.enclosing(iv.rounded(prec), prec)


def q_upper(n: int) -> int:
    h = n // 2
    return math.factorial(n) // (math.factorial(h) * 2 ** h)


def q_upper_weak(n: int) -> int:
    c = -(-n // 2)
    return math.factorial(c) * 2 ** c


def theorem1_bounds(n: int, prec: int = DEFAULT_PREC) -> Theorem1Bounds:
    if n < 3:
        raise ValueError(f"theorem1_bounds needs n >= 3, got {n}")
    return Theorem1Bounds(q_lower(n, prec), q_upper(n), q_upper_weak(n))


def eq3_sum(n: int) -> int:
    """sum over s = ceil(n/3)..floor(n/2) of C(s, n-2s) 2^s (s-1)!"""
    if n < 3:
        raise ValueError(f"eq3_sum needs n >= 3, got {n}")
    return sum(math.comb(s, n - 2 * s) * 2 ** s * math.factorial(s - 1)
               for s in range(-(-n // 3), n // 2 + 1))


eq3_bound = eq3_sum


def final_bound(n: int, prec: int = DEFAULT_PREC) -> BoundValue:
    """(1+sqrt 2)^n floor(n/2)!, the per-step elimination bound of the greedy argument."""
    iv = one_plus_sqrt2_power(n, prec + 16) * math.factorial(n // 2)
    return BoundValue.enclosing(iv.rounded(prec), prec)


@dataclass(frozen=True)
class Theorem2Bounds:
    lower: BoundValue
    upper: BoundValue
    lower_is_formula: bool


def triangle_factor_count(n: int) -> int:
    if n % 3:
        raise ValueError(f"3 does not divide {n}")
    q = n // 3
    return math.factorial(n) // (math.factorial(q) * 6 ** q)


def r_upper(n: int, prec: int = DEFAULT_PREC) -> BoundValue:
    """e^sqrt(n) n! / floor(n/3)!"""
    e = exp_interval(sqrt_interval(n, prec + 16), prec + 16)
    iv = e * Fraction(math.factorial(n), math.factorial(n // 3))
    return BoundValue.enclosing(iv.rounded(prec), prec)


def theorem2_bounds(n: int, prec: int = DEFAULT_PREC) -> Theorem2Bounds:
    if n < 3:
        raise ValueError(f"theorem2_bounds needs n >= 3, got {n}")
    if n % 3 == 0:
        lower, formula = triangle_factor_count(n), True
    else:
        lower, formula = triangle_family_size(n), False
    return Theorem2Bounds(BoundValue.of(lower), r_upper(n, prec), formula)


@dataclass(frozen=True)
class ShapeBounds:
    n: int
    t: int
    k: int
    l: int
    f_upper: Fraction
    f_upper_loose: Fraction
    c_lower: Fraction
    m_upper: Fraction
    m_upper_third: BoundValue
    kl_at_least_third: bool


def shape_bounds(parts, prec: int = DEFAULT_PREC) -> ShapeBounds:
    """The per-shape quantities: |F(p)| <= n!/(t! 2^t prod n_i), |C(p)| >= (k+l)!/(n t! prod n_i),
    M(F(p)) <= n n!/(k+l)! and its weakening n n!/(n/3)!."""
    shape = parts if isinstance(parts, PartitionShape) else PartitionShape(tuple(parts))
    shape.check_two_regular()
    n, t = shape.n, len(shape.parts)
    k = shape.odd_parts
    l = (n - 3 * k) // 2
    prod = math.prod(shape.parts)
    nf = math.factorial(n)
    f_upper = Fraction(nf, math.factorial(t) * 2 ** t * prod)
    f_loose = Fraction(nf, math.factorial(t) * prod)
    c_lower = Fraction(math.factorial(k + l), n * math.factorial(t) * prod)
    m_upper = Fraction(n * nf, math.factorial(k + l))
    third = Fraction(n, 3)
    if third.denominator == 1:
        m_third = BoundValue.of(Fraction(n * nf, math.factorial(n // 3)))
    else:
        m_third = BoundValue.enclosing(n * nf / gamma_plus_one_interval(third, prec), prec)
    return ShapeBounds(n, t, k, l, f_upper, f_loose, c_lower, m_upper, m_third, 3 * (k + l) >= n)


def gamma_plus_one_interval(x: Fraction, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure [floor(x)!, ceil(x)!] of Gamma(x+1); Gamma is increasing on [2, oo), so x >= 1."""
    if x < 1:
        raise ValueError("gamma enclosure needs x >= 1")
    m = math.floor(x)
    return Interval(Fraction(math.factorial(m)), Fraction(math.factorial(m + 1)))


# ---------------------------------------------------------------- partitions

def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total, k = 0, 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


def hardy_ramanujan(n: int, prec: int = DEFAULT_PREC) -> BoundValue:
    """Enclosure of e^sqrt(n) / n."""
    if n < 1:
        raise ValueError("n must be positive")
    iv = exp_interval(sqrt_interval(n, prec + 16), prec + 16) / n
    return BoundValue.enclosing(iv.rounded(prec), prec)


BOUNDS_COLUMNS = ("n", "eq1", "near", "q_upper", "q_upper_weak", "q_lower_lo", "q_lower_hi", "eq3",
                  "final_lo", "final_hi", "r_lower", "r_upper_lo", "r_upper_hi", "p_n", "hr_lo", "hr_hi")


def bounds_row(n: int, prec: int = DEFAULT_PREC) -> dict[str, str]:
    t1 = theorem1_bounds(n, prec)
    t2 = theorem2_bounds(n, prec)
    fb = final_bound(n, prec)
    hr = hardy_ramanujan(n, prec)
    row = {
        "n": str(n),
        "eq1": str(eq1_count(n)) if n % 2 == 0 and n >= 4 else "",
        "near": str(near_count(n)) if n % 2 == 1 and n >= 5 else "",
        "q_upper": str(t1.upper),
        "q_upper_weak": str(t1.upper_weak),
        "eq3": str(eq3_sum(n)),
        "r_lower": format_number(t2.lower.value),
        "p_n": str(partition_count(n)),
    }
    row["q_lower_lo"], row["q_lower_hi"] = t1.lower.render()
    row["final_lo"], row["final_hi"] = fb.render()
    row["r_upper_lo"], row["r_upper_hi"] = t2.upper.render()
    row["hr_lo"], row["hr_hi"] = hr.render()
    return {c: row[c] for c in BOUNDS_COLUMNS}
