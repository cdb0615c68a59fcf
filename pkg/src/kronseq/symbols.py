"""Jacobi and Kronecker symbols, and the symbol sequences of a periodic CF.

Symbols are computed by reciprocity-style reduction only; nothing here
factors its arguments.
"""

from __future__ import annotations

import math

from .cf import PeriodicCF, iter_convergent_pairs
from .errors import EvenArgument, EvenModulus, NotCoprime

__all__ = [
    "STAR",
    "jacobi",
    "kronecker",
    "reciprocity_sign",
    "jacobi_sequence",
    "reciprocal_jacobi_sequence",
    "kronecker_sequence",
]

# Placeholder entry for sequence positions where the Jacobi symbol is
# undefined (even lower argument).  Serialized as-is.
STAR = "*"


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1; 0 when gcd(a, n) > 1.

    Negative a is reduced mod n first, which absorbs the (-1/n) supplement.
    """
    if n < 1 or n % 2 == 0:
        raise EvenModulus(f"lower argument must be odd and positive, got {n}")
    a %= n
    result = 1
    while a:
        z = (a & -a).bit_length() - 1
        if z & 1 and n & 7 in (3, 5):
            result = -result
        a >>= z
        if a & 3 == 3 and n & 3 == 3:
            result = -result
        a, n = n % a, a
    return result if n == 1 else 0


def kronecker(s: int, t: int) -> int:
    """Kronecker symbol (s/t) for coprime s, t with t >= 1; always +-1.

    For t = 2^j * t' with t' odd this is (s/2)^j * (s/t'), where (s/2) is
    +1 for s = +-1 mod 8 and -1 for s = +-3 mod 8.
    """
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if math.gcd(s, t) != 1:
        raise NotCoprime(f"gcd({s}, {t}) != 1")
    j = 0
    while t % 2 == 0:
        t //= 2
        j += 1
    result = jacobi(s, t)
    if j % 2:
        result *= 1 if s % 8 in (1, 7) else -1
    return result


def reciprocity_sign(s_odd: int, t_odd: int) -> int:
    """Sign relating (s/t) and (t/s): -1 iff both arguments are 3 mod 4."""
    if s_odd < 1 or s_odd % 2 == 0 or t_odd < 1 or t_odd % 2 == 0:
        raise EvenArgument(f"arguments must be odd positive, got {s_odd}, {t_odd}")
    return -1 if s_odd % 4 == 3 and t_odd % 4 == 3 else 1


def jacobi_sequence(cf: PeriodicCF, count: int) -> list:
    """(s_k/t_k) for k < count, with STAR wherever t_k is even."""
    return _sequence(cf, count, _jacobi_entry)


def reciprocal_jacobi_sequence(cf: PeriodicCF, count: int) -> list:
    """(t_k/s_k) for k < count, with STAR wherever s_k is even."""
    return _sequence(cf, count, _reciprocal_entry)


def kronecker_sequence(cf: PeriodicCF, count: int) -> list[int]:
    """Kronecker symbols (s_k/t_k) for k < count; entries are always +-1
    because consecutive convergents are coprime."""
    return _sequence(cf, count, kronecker)


def _jacobi_entry(s, t):
    return STAR if t % 2 == 0 else jacobi(s, t)


def _reciprocal_entry(s, t):
    return STAR if s % 2 == 0 else jacobi(t, s)


def _sequence(cf, count, entry):
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    it = iter_convergent_pairs(cf)
    for _ in range(count):
        s, t = next(it)
        out.append(entry(s, t))
    return out
