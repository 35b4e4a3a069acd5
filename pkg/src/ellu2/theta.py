"""Normalized theta products, elliptic Pochhammer symbols, and exact zero tracking.

Everything downstream (series evaluation, R-matrix entries, representation
coefficients, biorthogonality sums) reduces to products and quotients of the
normalized theta function

    theta(z) = prod_{j>=0} (1 - z p^j) (1 - p^(j+1) / z),    0 < p < 1,

evaluated at arguments of the form q^(2s) * g, where s is an integer and g is
a generic factor built from continuous parameters.  For generic p, q the value
theta(q^(2s) * g) vanishes exactly only when g == 1 and s == 0, so carrying
the pair (s, g) decides vanishing without any floating-point comparison.
``TrackedArg`` stores that pair, and ``ThetaProduct`` accumulates products of
theta values while counting exact zero factors separately from the finite
part: a product with surviving numerator zeros is exactly 0, while an exact or
near-exact zero in denominator position raises ``PoleError`` instead of
propagating garbage.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "PoleError",
    "ThetaContext",
    "TrackedArg",
    "ThetaProduct",
    "qarg",
    "garg",
    "theta",
    "theta_vec",
    "theta_multi",
    "pochhammer",
    "pochhammer_ratio",
    "elliptic_binomial",
]

MAX_THETA_FACTORS = 2000


class PoleError(ArithmeticError):
    """A theta factor in denominator position vanished, exactly or numerically."""


@dataclass(frozen=True)
class ThetaContext:
    """Fixed nome/base pair with truncation and genericity-guard policy.

    ``truncation_floor`` stops the theta product once p^j drops below it
    (capped at ``MAX_THETA_FACTORS`` factors); ``zero_guard`` is the magnitude
    below which an untracked denominator theta value is treated as a pole.
    """

    p: float
    q: float
    truncation_floor: float = 1e-17
    zero_guard: float = 1e-12

    def __post_init__(self) -> None:
        if not 0.0 < self.p < 1.0:
            raise ValueError(f"p must lie in (0, 1), got {self.p!r}")
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"q must lie in (0, 1), got {self.q!r}")
        nfac = int(math.ceil(math.log(self.truncation_floor) / math.log(self.p)))
        nfac = min(max(nfac, 1), MAX_THETA_FACTORS)
        ppow = self.p ** np.arange(nfac)
        object.__setattr__(self, "_ppow", ppow)
        object.__setattr__(self, "_ppow1", self.p * ppow)
        object.__setattr__(
            self, "_pairs", tuple(zip(ppow.tolist(), (self.p * ppow).tolist()))
        )
        object.__setattr__(self, "_lnq", math.log(self.q))
        object.__setattr__(self, "_memo", {})

    def qpow(self, x: complex) -> complex:
        """q**x for arbitrary complex exponent x (principal branch)."""
        return cmath.exp(self._lnq * x)


def theta(z: complex, ctx: ThetaContext) -> complex:
    """Normalized theta value at a single nonzero argument.

    Arguments far from the unit circle are first reduced into the annulus
    sqrt(p) <= |z| < 1/sqrt(p) by quasi-periodicity; truncating the product
    at raw arguments would cost relative accuracy proportional to |z|.
    Scalar calls are memoized per context; word evaluation re-requests the
    same shifted arguments many times over.
    """
    memo = ctx._memo
    got = memo.get(z)
    if got is not None:
        return got
    if z == 0:
        raise ValueError("theta argument must be nonzero")
    m = round(math.log(abs(z)) / math.log(ctx.p))
    w = z
    pref = 1.0 + 0.0j
    if m != 0:
        w = z * ctx.p ** (-m)
        pref = (-1 if m % 2 else 1) * w ** (-m) * ctx.p ** (-m * (m - 1) // 2)
    acc = 1.0 + 0.0j
    for pj, pj1 in ctx._pairs:
        acc *= (1.0 - w * pj) * (1.0 - pj1 / w)
    acc *= pref
    if len(memo) < 1 << 20:
        memo[z] = acc
    return acc


def theta_vec(zs: Sequence[complex], ctx: ThetaContext) -> np.ndarray:
    """Vectorized theta over a batch of nonzero arguments.

    Same annulus reduction as the scalar path, applied only when some entry
    needs it so moderate batches stay on the fast path.
    """
    arr = np.asarray(zs, dtype=complex)
    if arr.size and np.any(arr == 0):
        raise ValueError("theta argument must be nonzero")
    m = np.rint(np.log(np.abs(arr)) / math.log(ctx.p)).astype(np.int64)
    if np.any(m != 0):
        arr = arr * ctx.p ** (-m.astype(float))
        pref = (
            np.where(m % 2 == 0, 1.0, -1.0)
            * arr ** (-m.astype(float))
            * ctx.p ** (-(m * (m - 1) // 2).astype(float))
        )
    else:
        pref = None
    zc = arr[..., None]
    out = np.prod((1.0 - zc * ctx._ppow) * (1.0 - ctx._ppow1 / zc), axis=-1)
    return out if pref is None else out * pref


def theta_multi(args: Sequence[complex], ctx: ThetaContext) -> complex:
    """Product of theta values, the usual shorthand theta(a_1, ..., a_n)."""
    return complex(np.prod(theta_vec(args, ctx))) if len(args) else 1.0 + 0.0j


@dataclass(frozen=True)
class TrackedArg:
    """Argument q^(2s) * generic with exact bookkeeping of the integer part.

    ``is_one`` asserts the generic part is the constant 1 by construction, so
    theta of the argument vanishes exactly iff ``is_one`` and ``s == 0``.
    """

    s: int
    generic: complex = 1.0 + 0.0j
    is_one: bool = False

    def shifted(self, i: int) -> "TrackedArg":
        """Multiply by q^(2i)."""
        return TrackedArg(self.s + i, self.generic, self.is_one)

    def value(self, ctx: ThetaContext) -> complex:
        return ctx.qpow(2 * self.s) * self.generic

    def theta_is_zero(self, i: int = 0) -> bool:
        """Exact vanishing of theta(self * q^(2i))."""
        return self.is_one and self.s + i == 0


def qarg(s: int) -> TrackedArg:
    """Tracked pure power q^(2s)."""
    return TrackedArg(s, 1.0 + 0.0j, True)


def garg(value: complex) -> TrackedArg:
    """Generic (untracked) argument; assumed to never vanish exactly."""
    return TrackedArg(0, complex(value), False)


ArgLike = Union[TrackedArg, complex, float, int]


def _as_arg(a: ArgLike) -> TrackedArg:
    return a if isinstance(a, TrackedArg) else garg(a)


class ThetaProduct:
    """Deferred product of theta factors and plain scalars.

    Factors are collected and evaluated in one vectorized theta call.
    Numerator factors that vanish exactly are counted instead of multiplied,
    so ``value()`` returns exactly 0 when any survive; denominator factors
    that vanish exactly, or whose magnitude falls below the zero guard, raise
    ``PoleError``.
    """

    def __init__(self, ctx: ThetaContext, scalar: complex = 1.0 + 0.0j):
        self._ctx = ctx
        self.scalar = complex(scalar)
        self.zeros = 0
        self._num: list[complex] = []
        self._den: list[complex] = []

    def mul_scalar(self, c: complex) -> "ThetaProduct":
        self.scalar *= c
        return self

    def theta(self, arg: ArgLike, inv: bool = False, count: int = 1) -> "ThetaProduct":
        """Multiply by theta(arg)^count, or divide when ``inv``."""
        if count < 0:
            inv, count = not inv, -count
        ta = _as_arg(arg)
        for _ in range(count):
            if ta.theta_is_zero():
                if inv:
                    raise PoleError("exact zero theta factor in denominator")
                self.zeros += 1
            else:
                (self._den if inv else self._num).append(ta.value(self._ctx))
        return self

    def poch(self, arg: ArgLike, n: int, inv: bool = False) -> "ThetaProduct":
        """Multiply by the length-n Pochhammer product of theta(arg * q^(2i)).

        Negative n uses the reflection convention, a length -n product of
        inverse factors at arguments arg * q^(-2i), i = 1..-n.
        """
        ta = _as_arg(arg)
        if n >= 0:
            for i in range(n):
                self.theta(ta.shifted(i), inv=inv)
        else:
            for i in range(1, -n + 1):
                self.theta(ta.shifted(-i), inv=not inv)
        return self

    def value(self) -> complex:
        guard = self._ctx.zero_guard
        if self._den:
            dvals = theta_vec(self._den, self._ctx)
            if np.any(np.abs(dvals) < guard):
                raise PoleError("denominator theta factor below zero guard")
        else:
            dvals = None
        if self.zeros > 0:
            return 0.0 + 0.0j
        nvals = theta_vec(self._num, self._ctx) if self._num else None
        # Pair numerator and denominator factors before reducing so the
        # partial products stay near the scale of the quotient; separate
        # products can overflow even when the result is representable.
        nlen = 0 if nvals is None else nvals.size
        dlen = 0 if dvals is None else dvals.size
        ratio = np.ones(max(nlen, dlen, 1), dtype=complex)
        if nvals is not None:
            ratio[:nlen] *= nvals
        if dvals is not None:
            ratio[:dlen] /= dvals
        out = self.scalar * complex(np.prod(ratio))
        if not cmath.isfinite(out):
            raise PoleError("theta product exceeds double precision range")
        return out


def pochhammer(a: ArgLike, n: int, ctx: ThetaContext) -> complex:
    """Elliptic Pochhammer symbol of length n in base q^2 (n may be negative)."""
    tp = ThetaProduct(ctx)
    tp.poch(a, n)
    return tp.value()


def pochhammer_ratio(a: TrackedArg, num_len: int, den_len: int, ctx: ThetaContext) -> complex:
    """Ratio of Pochhammer symbols (a)_num_len / (a)_den_len, den_len <= num_len.

    Evaluated as the partial product over i = den_len..num_len-1, so the
    shared leading factors, including any exact zero among them, cancel
    structurally and are never formed as 0/0.  The result may be exactly 0
    when the remaining window still contains an exact zero.
    """
    if den_len > num_len:
        raise ValueError("pochhammer_ratio requires den_len <= num_len")
    tp = ThetaProduct(ctx)
    for i in range(den_len, num_len):
        tp.theta(a.shifted(i))
    return tp.value()


def elliptic_binomial(k: int, l: int, ctx: ThetaContext) -> complex:
    """Elliptic binomial coefficient, the theta analogue of k choose l.

    Zero outside 0 <= l <= k; exactly 1 at the endpoints.
    """
    if l < 0 or l > k:
        return 0.0 + 0.0j
    if l == 0 or l == k:
        return 1.0 + 0.0j
    tp = ThetaProduct(ctx)
    for i in range(1, l + 1):
        tp.theta(qarg(k - l + i))
        tp.theta(qarg(i), inv=True)
    return tp.value()
