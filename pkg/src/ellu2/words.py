"""Word algebra over the generator letters of the dynamical function algebra.

Elements are finite sums of scalar-weighted words.  A word is a tuple of
letters: the four generators alpha, beta, gamma, delta (each carrying a
spectral argument), the inverse determinant letter, and two function letters
fl / fr for the left and right moment-map images of a function of the
dynamical variable.  Structural operations implemented here:

  * multiplication (concatenation, bilinear),
  * the star structure (antilinear antimultiplicative involution),
  * the antipode (linear antimultiplicative),
  * the coproduct into two tensor legs,
  * the counit into difference operators f T_shift,
  * the bigrading by moment-map weights.

Functions of the dynamical variable are carried as ``CoefficientFn`` objects,
plain callables with a printable name and an ``is_one`` flag that lets exact
identities (such as the counit of corepresentation words) come out exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .theta import PoleError, ThetaContext, theta

__all__ = [
    "CoefficientFn",
    "ONE_FN",
    "cf_shift",
    "cf_mul",
    "cf_from",
    "cf_f_factor",
    "cf_inv_f_factor",
    "Letter",
    "L_alpha",
    "L_beta",
    "L_gamma",
    "L_delta",
    "L_detinv",
    "L_fl",
    "L_fr",
    "AlgebraElement",
    "unit",
    "zero",
    "word",
    "GRADES",
    "bigrade",
    "star",
    "antipode",
    "coproduct",
    "counit",
    "serialize",
    "elements_close",
]


class CoefficientFn:
    """A function of the dynamical variable with a name and exactness flag."""

    __slots__ = ("fn", "name", "is_one")

    def __init__(self, fn: Callable[[complex], complex], name: str, is_one: bool = False):
        self.fn = fn
        self.name = name
        self.is_one = is_one

    def __call__(self, x: complex) -> complex:
        if self.is_one:
            return 1.0 + 0.0j
        return self.fn(x)

    def __repr__(self) -> str:
        return f"CoefficientFn({self.name})"

    def conjugated(self) -> "CoefficientFn":
        """The bar involution: conjugate values at the conjugate point."""
        if self.is_one:
            return self
        base = self.fn
        return CoefficientFn(
            lambda x: complex(base(complex(x).conjugate())).conjugate(),
            f"bar({self.name})",
        )


ONE_FN = CoefficientFn(lambda x: 1.0 + 0.0j, "1", is_one=True)


def cf_from(fn: Callable[[complex], complex], name: str) -> CoefficientFn:
    return CoefficientFn(fn, name)


def cf_shift(f: CoefficientFn, a: int) -> CoefficientFn:
    """The translate x -> f(x + a)."""
    if f.is_one or a == 0:
        return f
    return CoefficientFn(lambda x, g=f, a=a: g(x + a), f"T{a:+d}[{f.name}]")


def cf_mul(f: CoefficientFn, g: CoefficientFn) -> CoefficientFn:
    if f.is_one:
        return g
    if g.is_one:
        return f
    return CoefficientFn(lambda x, a=f, b=g: a(x) * b(x), f"{f.name}*{g.name}")


def cf_f_factor(ctx: ThetaContext) -> CoefficientFn:
    """The weight factor q^x theta(q^(-2(x+1))) used by the antipode."""
    return CoefficientFn(
        lambda x: ctx.qpow(x) * theta(ctx.qpow(-2 * (x + 1)), ctx), "F"
    )


def cf_inv_f_factor(ctx: ThetaContext) -> CoefficientFn:
    def inv(x: complex) -> complex:
        v = ctx.qpow(x) * theta(ctx.qpow(-2 * (x + 1)), ctx)
        if abs(v) < ctx.zero_guard:
            raise PoleError("weight factor below zero guard")
        return 1.0 / v

    return CoefficientFn(inv, "1/F")


GENERATOR_KINDS = ("alpha", "beta", "gamma", "delta")
ALL_KINDS = GENERATOR_KINDS + ("detinv", "fl", "fr")


def _fmt_c(z: complex) -> str:
    z = complex(z)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}j"


@dataclass(frozen=True)
class Letter:
    kind: str
    arg: complex = 0.0 + 0.0j
    fn: Optional[CoefficientFn] = None

    def __post_init__(self) -> None:
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown letter kind {self.kind!r}")
        if self.kind in ("fl", "fr") and self.fn is None:
            raise ValueError("function letters need a CoefficientFn")

    def key(self) -> str:
        if self.kind in ("fl", "fr"):
            return f"{self.kind}[{self.fn.name}]"
        return f"{self.kind}({_fmt_c(self.arg)})"


def L_alpha(z: complex) -> Letter:
    return Letter("alpha", complex(z))


def L_beta(z: complex) -> Letter:
    return Letter("beta", complex(z))


def L_gamma(z: complex) -> Letter:
    return Letter("gamma", complex(z))


def L_delta(z: complex) -> Letter:
    return Letter("delta", complex(z))


def L_detinv(z: complex) -> Letter:
    return Letter("detinv", complex(z))


def L_fl(fn: CoefficientFn) -> Letter:
    return Letter("fl", 0.0 + 0.0j, fn)


def L_fr(fn: CoefficientFn) -> Letter:
    return Letter("fr", 0.0 + 0.0j, fn)


Word = tuple[Letter, ...]
Term = tuple[complex, Word]


@dataclass(frozen=True)
class AlgebraElement:
    """Finite sum of scalar-weighted words, immutable."""

    terms: tuple[Term, ...]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.terms + other.terms)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1.0) * other

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = []
        for s1, w1 in self.terms:
            for s2, w2 in other.terms:
                out.append((s1 * s2, w1 + w2))
        return AlgebraElement(tuple(out))

    def __rmul__(self, scalar: complex) -> "AlgebraElement":
        return AlgebraElement(tuple((scalar * s, w) for s, w in self.terms))

    def __len__(self) -> int:
        return len(self.terms)


def unit() -> AlgebraElement:
    return AlgebraElement(((1.0 + 0.0j, ()),))


def zero() -> AlgebraElement:
    return AlgebraElement(())


def word(scalar: complex, letters: Iterable[Letter]) -> AlgebraElement:
    return AlgebraElement(((complex(scalar), tuple(letters)),))


GRADES = {
    "alpha": (1, 1),
    "beta": (1, -1),
    "gamma": (-1, 1),
    "delta": (-1, -1),
    "detinv": (0, 0),
    "fl": (0, 0),
    "fr": (0, 0),
}


def bigrade(el: AlgebraElement) -> tuple[int, int]:
    """Common moment-map bigrade of all words; raises on mixed grades."""
    grades = set()
    for _, w in el.terms:
        a = sum(GRADES[l.kind][0] for l in w)
        b = sum(GRADES[l.kind][1] for l in w)
        grades.add((a, b))
    if len(grades) > 1:
        raise ValueError(f"element is not homogeneous: grades {sorted(grades)}")
    return grades.pop() if grades else (0, 0)


def _star_letter(l: Letter, ctx: ThetaContext) -> tuple[complex, Letter]:
    if l.kind == "alpha":
        return 1.0, L_delta(1.0 / complex(l.arg).conjugate())
    if l.kind == "beta":
        return -1.0, L_gamma(1.0 / complex(l.arg).conjugate())
    if l.kind == "gamma":
        return -1.0, L_beta(1.0 / complex(l.arg).conjugate())
    if l.kind == "delta":
        return 1.0, L_alpha(1.0 / complex(l.arg).conjugate())
    if l.kind == "detinv":
        return 1.0, L_detinv(ctx.qpow(-2) / complex(l.arg).conjugate())
    return 1.0, Letter(l.kind, l.arg, l.fn.conjugated())


def star(el: AlgebraElement, ctx: ThetaContext) -> AlgebraElement:
    """Antilinear antimultiplicative involution."""
    out = []
    for s, w in el.terms:
        sign = 1.0 + 0.0j
        letters = []
        for l in reversed(w):
            sg, nl = _star_letter(l, ctx)
            sign *= sg
            letters.append(nl)
        out.append((complex(s).conjugate() * sign, tuple(letters)))
    return AlgebraElement(tuple(out))


def det_element(z: complex, ctx: ThetaContext) -> AlgebraElement:
    """The determinant group-like element, expanded in generator words."""
    ff = cf_f_factor(ctx)
    finv = cf_inv_f_factor(ctx)
    q2z = ctx.qpow(2) * z
    head = (L_fr(ff), L_fl(finv))
    return word(1.0, head + (L_alpha(z), L_delta(q2z))) + word(
        -1.0, head + (L_gamma(z), L_beta(q2z))
    )


def _antipode_letter(l: Letter, ctx: ThetaContext) -> AlgebraElement:
    if l.kind == "fl":
        return word(1.0, (L_fr(l.fn),))
    if l.kind == "fr":
        return word(1.0, (L_fl(l.fn),))
    if l.kind == "detinv":
        return det_element(l.arg, ctx)
    zq = ctx.qpow(-2) * l.arg
    head = (L_fr(cf_f_factor(ctx)), L_fl(cf_inv_f_factor(ctx)), L_detinv(zq))
    image = {
        "alpha": (1.0, L_delta(zq)),
        "beta": (-1.0, L_beta(zq)),
        "gamma": (-1.0, L_gamma(zq)),
        "delta": (1.0, L_alpha(zq)),
    }[l.kind]
    return word(image[0], head + (image[1],))


def antipode(el: AlgebraElement, ctx: ThetaContext) -> AlgebraElement:
    """Linear antimultiplicative antipode."""
    out = zero()
    for s, w in el.terms:
        acc = unit()
        for l in reversed(w):
            acc = acc * _antipode_letter(l, ctx)
        out = out + s * acc
    return out


_COPRODUCT = {
    "alpha": ((1.0, "alpha", "alpha"), (1.0, "beta", "gamma")),
    "beta": ((1.0, "alpha", "beta"), (1.0, "beta", "delta")),
    "gamma": ((1.0, "gamma", "alpha"), (1.0, "delta", "gamma")),
    "delta": ((1.0, "gamma", "beta"), (1.0, "delta", "delta")),
}

TensorTerm = tuple[complex, Word, Word]


def coproduct(el: AlgebraElement) -> list[TensorTerm]:
    """Expand into tensor terms (scalar, left-leg word, right-leg word)."""
    out: list[TensorTerm] = []
    for s, w in el.terms:
        partial: list[TensorTerm] = [(s, (), ())]
        for l in w:
            if l.kind == "fl":
                partial = [(c, w1 + (l,), w2) for c, w1, w2 in partial]
            elif l.kind == "fr":
                partial = [(c, w1, w2 + (l,)) for c, w1, w2 in partial]
            elif l.kind == "detinv":
                partial = [(c, w1 + (l,), w2 + (l,)) for c, w1, w2 in partial]
            else:
                nxt = []
                for coef, k1, k2 in _COPRODUCT[l.kind]:
                    nxt.extend(
                        (c * coef, w1 + (Letter(k1, l.arg),), w2 + (Letter(k2, l.arg),))
                        for c, w1, w2 in partial
                    )
                partial = nxt
        out.extend(partial)
    return out


DifferenceOp = tuple[complex, CoefficientFn, int]


def counit(el: AlgebraElement) -> list[DifferenceOp]:
    """Counit into difference operators, one (scalar, fn, shift) per word.

    Words containing beta or gamma letters are annihilated and dropped; for
    the rest, alpha contributes a shift by -1, delta by +1, the inverse
    determinant nothing, and function letters multiply by their function at
    the running shift.
    """
    out: list[DifferenceOp] = []
    for s, w in el.terms:
        fn = ONE_FN
        shift = 0
        dead = False
        for l in w:
            if l.kind in ("beta", "gamma"):
                dead = True
                break
            if l.kind == "alpha":
                shift -= 1
            elif l.kind == "delta":
                shift += 1
            elif l.kind in ("fl", "fr"):
                fn = cf_mul(fn, cf_shift(l.fn, shift))
        if not dead:
            out.append((s, fn, shift))
    return out


def serialize(el: AlgebraElement) -> str:
    """Deterministic text form: scalar-tagged words sorted by letter keys."""
    rows = []
    for s, w in el.terms:
        rows.append(f"({_fmt_c(s)}) " + ".".join(l.key() for l in w))
    return "\n".join(sorted(rows))


def elements_close(
    x: AlgebraElement, y: AlgebraElement, tol: float = 1e-12
) -> bool:
    """Structural equality up to tolerance in scalars and letter arguments.

    Terms must match pairwise after canonical sorting; function letters are
    compared by exactness flag and name.
    """

    def rows(el: AlgebraElement):
        return sorted(
            el.terms, key=lambda t: ".".join(l.key() for l in t[1])
        )

    rx, ry = rows(x), rows(y)
    if len(rx) != len(ry):
        return False
    for (s1, w1), (s2, w2) in zip(rx, ry):
        if abs(s1 - s2) > tol or len(w1) != len(w2):
            return False
        for l1, l2 in zip(w1, w2):
            if l1.kind != l2.kind:
                return False
            if l1.kind in ("fl", "fr"):
                if l1.fn.is_one != l2.fn.is_one or l1.fn.name != l2.fn.name:
                    return False
            elif abs(l1.arg - l2.arg) > tol * max(1.0, abs(l1.arg)):
                return False
    return True
