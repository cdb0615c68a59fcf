"""Exact convergents of purely periodic regular continued fractions.

Everything here is integer arithmetic on Python ints; no floating point
is used anywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import EmptyInput, NonPositiveQuotient, NotCoprime

__all__ = [
    "PeriodicCF",
    "Convergent",
    "ConvergentMatrix",
    "QuadIrrational",
    "normalize_period",
    "convergents",
    "iter_convergent_pairs",
    "matrix_at",
    "matrix_at_mod2",
    "quad_irrational_of",
    "cf_of_rational",
]


@dataclass(frozen=True)
class PeriodicCF:
    """A repeating block of partial quotients, always stored with minimal
    block length.

    ``reduced`` records whether :func:`normalize_period` had to shrink the
    input; it does not take part in equality.
    """

    quotients: tuple[int, ...]
    reduced: bool = field(default=False, compare=False)

    def __post_init__(self):
        q = self.quotients
        if not q:
            raise EmptyInput("quotient block must be non-empty")
        if any(a < 1 for a in q):
            raise NonPositiveQuotient(f"quotients must be >= 1, got {q}")
        if _minimal_period(q) != len(q):
            raise ValueError(f"block {q} is not of minimal period; "
                             "use normalize_period()")

    def __len__(self):
        return len(self.quotients)

    def quotient(self, k):
        """Partial quotient a_k of the infinite periodic expansion."""
        return self.quotients[k % len(self.quotients)]

    def __str__(self):
        return "[" + ",".join(str(a) for a in self.quotients) + "]"


@dataclass(frozen=True)
class Convergent:
    """The k-th convergent s/t, in lowest terms by construction."""

    k: int
    s: int
    t: int


@dataclass(frozen=True)
class ConvergentMatrix:
    """Columns are two consecutive convergents: ((s_k, s_{k-1}), (t_k, t_{k-1})).

    ``modulus`` is None for exact matrices, or 2**precision for reduced ones.
    """

    k: int
    s: int
    s_prev: int
    t: int
    t_prev: int
    modulus: int | None = None

    @property
    def rows(self):
        return ((self.s, self.s_prev), (self.t, self.t_prev))

    def det(self):
        return self.s * self.t_prev - self.s_prev * self.t

    def __matmul__(self, other):
        """Matrix product; the combined index is valid whenever the left
        factor spans a whole number of quotient blocks."""
        if self.modulus != other.modulus:
            raise ValueError("cannot mix exact and reduced matrices")
        s = self.s * other.s + self.s_prev * other.t
        sp = self.s * other.s_prev + self.s_prev * other.t_prev
        t = self.t * other.s + self.t_prev * other.t
        tp = self.t * other.s_prev + self.t_prev * other.t_prev
        if self.modulus is not None:
            mask = self.modulus - 1
            s, sp, t, tp = s & mask, sp & mask, t & mask, tp & mask
        return ConvergentMatrix(self.k + other.k + 1, s, sp, t, tp, self.modulus)

    def reduce(self, precision):
        mask = (1 << precision) - 1
        return ConvergentMatrix(self.k, self.s & mask, self.s_prev & mask,
                                self.t & mask, self.t_prev & mask, 1 << precision)


@dataclass(frozen=True)
class QuadIrrational:
    """(P + sqrt(D)) / Q in normalized form: D positive and non-square,
    Q > 0 dividing D - P*P, the value > 1 and its conjugate in (-1, 0)."""

    P: int
    D: int
    Q: int

    def __post_init__(self):
        P, D, Q = self.P, self.D, self.Q
        if D <= 0 or math.isqrt(D) ** 2 == D:
            raise ValueError(f"D must be positive and non-square, got {D}")
        if Q <= 0 or (D - P * P) % Q:
            raise ValueError(f"Q must be positive and divide D - P^2: {self}")
        r = math.isqrt(D)  # floor of sqrt(D), never exact
        if not (P + r >= Q):  # value > 1  <=>  P + sqrt(D) > Q
            raise ValueError(f"{self} is not > 1")
        if not (P < 0 or P * P < D):  # conjugate < 0
            raise ValueError(f"conjugate of {self} is not < 0")
        if not (P + Q > 0 and (P + Q) ** 2 > D):  # conjugate > -1
            raise ValueError(f"conjugate of {self} is not > -1")

    def __str__(self):
        return f"({self.P} + sqrt({self.D})) / {self.Q}"


def _minimal_period(q):
    n = len(q)
    for p in range(1, n):
        if n % p == 0 and all(q[i] == q[i % p] for i in range(n)):
            return p
    return n


def normalize_period(quotients) -> PeriodicCF:
    """Reduce a quotient block to its minimal repeating prefix.

    The returned block tiles the input exactly; ``reduced`` is set when the
    input was not already minimal.
    """
    q = tuple(int(a) for a in quotients)
    if not q:
        raise EmptyInput("quotient block must be non-empty")
    if any(a < 1 for a in q):
        raise NonPositiveQuotient(f"quotients must be >= 1, got {q}")
    p = _minimal_period(q)
    return PeriodicCF(q[:p], reduced=(p < len(q)))


def iter_convergent_pairs(cf: PeriodicCF):
    """Yield (s_k, t_k) for k = 0, 1, 2, ... without end."""
    s_prev, t_prev = 1, 0
    s, t = cf.quotients[0], 1
    yield s, t
    k = 1
    while True:
        a = cf.quotient(k)
        s, s_prev = a * s + s_prev, s
        t, t_prev = a * t + t_prev, t
        yield s, t
        k += 1


def convergents(cf: PeriodicCF, count: int) -> list[Convergent]:
    """The first ``count`` convergents, computed exactly."""
    if count < 1:
        raise ValueError("count must be >= 1")
    out = []
    it = iter_convergent_pairs(cf)
    for k in range(count):
        s, t = next(it)
        out.append(Convergent(k, s, t))
    return out


def matrix_at(cf: PeriodicCF, k: int) -> ConvergentMatrix:
    """Exact matrix of the convergents at indices k and k-1."""
    if k < 0:
        raise ValueError("k must be >= 0")
    s_prev, t_prev = 1, 0
    s, t = cf.quotients[0], 1
    for i in range(1, k + 1):
        a = cf.quotient(i)
        s, s_prev = a * s + s_prev, s
        t, t_prev = a * t + t_prev, t
    return ConvergentMatrix(k, s, s_prev, t, t_prev)


def _mat_mul_mod(A, B, mask):
    return ((A[0] * B[0] + A[1] * B[2]) & mask, (A[0] * B[1] + A[1] * B[3]) & mask,
            (A[2] * B[0] + A[3] * B[2]) & mask, (A[2] * B[1] + A[3] * B[3]) & mask)


def _mat_pow_mod(A, n, mask):
    R = (1, 0, 0, 1)
    while n:
        if n & 1:
            R = _mat_mul_mod(R, A, mask)
        A = _mat_mul_mod(A, A, mask)
        n >>= 1
    return R


def matrix_at_mod2(cf: PeriodicCF, k: int, precision: int) -> ConvergentMatrix:
    """matrix_at(cf, k) with entries reduced mod 2**precision.

    One whole block is a fixed matrix, so k+1 quotients split into a binary
    power of the block product times a short prefix.  Cost is logarithmic in
    k, which is what makes deep cascade indices affordable.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if precision < 2:
        raise ValueError("precision must be >= 2")
    mask = (1 << precision) - 1
    block = (1, 0, 0, 1)
    for a in cf.quotients:
        block = _mat_mul_mod(block, (a & mask, 1, 1, 0), mask)
    q, r = divmod(k + 1, len(cf))
    M = _mat_pow_mod(block, q, mask)
    for i in range(r):
        M = _mat_mul_mod(M, (cf.quotients[i] & mask, 1, 1, 0), mask)
    return ConvergentMatrix(k, M[0], M[1], M[2], M[3], 1 << precision)


def quad_irrational_of(cf: PeriodicCF) -> QuadIrrational:
    """Closed form of the expansion's value as a quadratic irrational.

    The value z satisfies t_{l-1} z^2 + (t_{l-2} - s_{l-1}) z - s_{l-2} = 0
    where l is the block length; take the positive root and normalize.
    """
    l = len(cf)
    M = matrix_at(cf, l - 1)
    s1, t1 = M.s, M.t
    s2, t2 = M.s_prev, M.t_prev
    P = s1 - t2
    D = (t2 - s1) ** 2 + 4 * t1 * s2
    Q = 2 * t1
    # D - P^2 = 4*t_{l-1}*s_{l-2} = 2*Q*s_{l-2}, so Q | D - P^2 from the start
    g = _largest_reduction(P, D, Q)
    return QuadIrrational(P // g, D // (g * g), Q // g)


def _largest_reduction(P, D, Q):
    # largest g with g | P, g | Q, g^2 | D that keeps Q/g | (D - P^2)/g^2
    G = math.gcd(P, Q)
    best = 1
    d = 1
    while d * d <= G:
        if G % d == 0:
            for g in (d, G // d):
                if g > best and D % (g * g) == 0 and (D - P * P) % (Q * g) == 0:
                    best = g
        d += 1
    return best


def cf_of_rational(s: int, t: int) -> list[int]:
    """Regular continued fraction of s/t by the Euclidean algorithm.

    The expansion is canonical: when longer than one term its last quotient
    is >= 2, so expansions are unique.
    """
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    if math.gcd(s, t) != 1:
        raise NotCoprime(f"gcd({s}, {t}) != 1")
    out = []
    while t:
        a, r = divmod(s, t)
        out.append(a)
        s, t = t, r
    return out
