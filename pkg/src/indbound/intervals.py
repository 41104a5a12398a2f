"""Dyadic interval arithmetic with directed rounding.

A positive real v is bracketed by an Interval (lo_m, lo_e, hi_m, hi_e) with
lo_m * 2**lo_e <= v <= hi_m * 2**hi_e.  Lower bounds always round down and
upper bounds always round up, so every derived interval contains the exact
value.  Mantissas are kept at a fixed bit width, which makes the grid of
representable bounds at a higher precision a refinement of the grid at a
lower one: re-running the same computation with more bits can only shrink
an interval, never grow it.
"""

from __future__ import annotations

import math
from typing import NamedTuple

# extra working bits on top of the requested precision; results are rounded
# back to the requested precision, so "8-bit" intervals really are 8 bits wide
GUARD_BITS = 16


class Interval(NamedTuple):
    lo_m: int
    lo_e: int
    hi_m: int
    hi_e: int


def _floor_round(m: int, e: int, prec: int) -> tuple[int, int]:
    s = m.bit_length() - prec
    if s <= 0:
        return m, e
    return m >> s, e + s


def _ceil_round(m: int, e: int, prec: int) -> tuple[int, int]:
    s = m.bit_length() - prec
    if s <= 0:
        return m, e
    return -((-m) >> s), e + s


def exact(n: int, e: int = 0) -> Interval:
    """Interval containing exactly n * 2**e (n >= 0)."""
    return Interval(n, e, n, e)


def round_to(iv: Interval, prec: int) -> Interval:
    lo_m, lo_e = _floor_round(iv.lo_m, iv.lo_e, prec)
    hi_m, hi_e = _ceil_round(iv.hi_m, iv.hi_e, prec)
    return Interval(lo_m, lo_e, hi_m, hi_e)


def mul(a: Interval, b: Interval, prec: int) -> Interval:
    lo_m, lo_e = _floor_round(a.lo_m * b.lo_m, a.lo_e + b.lo_e, prec)
    hi_m, hi_e = _ceil_round(a.hi_m * b.hi_m, a.hi_e + b.hi_e, prec)
    return Interval(lo_m, lo_e, hi_m, hi_e)


def div(a: Interval, b: Interval, prec: int) -> Interval:
    """a / b for intervals of positive reals (b.lo > 0)."""
    if b.lo_m <= 0:
        raise ZeroDivisionError("interval divisor must be positive")
    # lo: round a.lo / b.hi down; hi: round a.hi / b.lo up
    shift = prec + b.hi_m.bit_length()
    lo_m = (a.lo_m << shift) // b.hi_m
    lo_e = a.lo_e - b.hi_e - shift
    shift2 = prec + b.lo_m.bit_length()
    hi_m = -((-(a.hi_m << shift2)) // b.lo_m)
    hi_e = a.hi_e - b.lo_e - shift2
    lo_m, lo_e = _floor_round(lo_m, lo_e, prec)
    hi_m, hi_e = _ceil_round(hi_m, hi_e, prec)
    return Interval(lo_m, lo_e, hi_m, hi_e)


def ipow(a: Interval, k: int, prec: int) -> Interval:
    """a**k for integer k >= 0 by binary powering."""
    if k < 0:
        raise ValueError("negative powers are handled by div at the product level")
    result = exact(1)
    base = a
    while k:
        if k & 1:
            result = mul(result, base, prec)
        k >>= 1
        if k:
            base = mul(base, base, prec)
    return result


def add(a: Interval, b: Interval) -> Interval:
    """Exact sum of two intervals (no rounding; used for final comparisons)."""
    e = min(a.lo_e, b.lo_e)
    lo = (a.lo_m << (a.lo_e - e)) + (b.lo_m << (b.lo_e - e))
    e2 = min(a.hi_e, b.hi_e)
    hi = (a.hi_m << (a.hi_e - e2)) + (b.hi_m << (b.hi_e - e2))
    return Interval(lo, e, hi, e2)


def dyadic_cmp(m1: int, e1: int, m2: int, e2: int) -> int:
    """Sign of m1*2**e1 - m2*2**e2, computed exactly."""
    if e1 >= e2:
        d = (m1 << (e1 - e2)) - m2
    else:
        d = m1 - (m2 << (e2 - e1))
    return (d > 0) - (d < 0)


def strictly_above(a: Interval, b: Interval) -> bool:
    """True when every value of a exceeds every value of b."""
    return dyadic_cmp(a.lo_m, a.lo_e, b.hi_m, b.hi_e) > 0


def contains_int(iv: Interval, n: int) -> bool:
    return dyadic_cmp(iv.lo_m, iv.lo_e, n, 0) <= 0 and dyadic_cmp(iv.hi_m, iv.hi_e, n, 0) >= 0


def to_decimal_str(m: int, e: int, digits: int = 18) -> str:
    """Render m * 2**e as a decimal string with roughly `digits` significant digits."""
    if m == 0:
        return "0"
    # scale into an integer with the requested number of decimal digits
    bits = m.bit_length() + e
    dec_exp = math.floor(bits * math.log10(2)) - digits
    if dec_exp >= 0:
        scaled = (m << e) // 10**dec_exp if e >= 0 else (m >> -e) // 10**dec_exp
    else:
        num = m * 10**-dec_exp
        scaled = num << e if e >= 0 else num >> -e
    s = str(scaled)
    point = len(s) + dec_exp
    if 0 < point <= len(s):
        out = s[:point] + "." + s[point:]
    else:
        out = s[0] + "." + s[1:] + f"e{point - 1}"
    return out.rstrip(".") if out.endswith(".") else out


def iroot(x: int, n: int) -> int:
    """floor(x ** (1/n)) for x >= 0, n >= 1, by integer Newton iteration."""
    if x < 0:
        raise ValueError("iroot of a negative number")
    if n == 1 or x < 2:
        return x
    bl = x.bit_length()
    r = 1 << -(-bl // n)  # 2**ceil(bl/n) >= root, a safe start
    # float seed from the leading bits saves iterations when it is also >= root
    top = x >> max(0, bl - 53)
    est = (math.log2(top) + max(0, bl - 53)) / n
    if est < 960:
        cand = int(2**est) + 2
        if cand < r and cand**n >= x:
            r = cand
    while True:
        nr = ((n - 1) * r + x // r ** (n - 1)) // n
        if nr >= r:
            break
        r = nr
    while r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def interval_nth_root(iv: Interval, n: int, prec: int) -> Interval:
    """Directed-rounding n-th root of an interval of positive reals."""
    out = []
    for m, e, up in ((iv.lo_m, iv.lo_e, False), (iv.hi_m, iv.hi_e, True)):
        k = max(0, (prec + 2) * n - m.bit_length())
        k += (e - k) % n  # align so the remaining exponent is divisible by n
        r = iroot(m << k, n)
        if up:
            r += 1
        out.append((r, (e - k) // n))
    lo_m, lo_e = _floor_round(out[0][0], out[0][1], prec)
    hi_m, hi_e = _ceil_round(out[1][0], out[1][1], prec)
    return Interval(lo_m, lo_e, hi_m, hi_e)


_root_cache: dict[tuple[int, int, int], Interval] = {}
_pow_cache: dict[tuple[int, int, int, int], Interval] = {}


def _prime_factor_list(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def nth_root_interval(p: int, den: int, prec: int) -> Interval:
    """Interval for p ** (1/den); the root is taken one small prime factor of
    den at a time, which keeps the integer root arguments tiny even for
    denominators like 3600."""
    key = (p, den, prec)
    iv = _root_cache.get(key)
    if iv is None:
        iv = exact(p)
        for q in _prime_factor_list(den):
            iv = interval_nth_root(iv, q, prec)
        _root_cache[key] = iv
    return iv


def prime_power_interval(p: int, num: int, den: int, prec: int) -> Interval:
    """Interval for p ** (num/den) with num >= 0, den >= 1 (fraction need not be reduced)."""
    if num == 0:
        return exact(1)
    if den == 1:
        v = p**num
        return Interval(*_floor_round(v, 0, prec), *_ceil_round(v, 0, prec))
    key = (p, num, den, prec)
    iv = _pow_cache.get(key)
    if iv is None:
        iv = ipow(nth_root_interval(p, den, prec), num, prec)
        _pow_cache[key] = iv
    return iv
