"""Generators, subgroup membership tests and the quotient/germ homomorphisms.

Membership in the ambient group is taken to mean: dyadic breakpoints and
values, slopes that are signed powers of two, and periodic (or affine) ends
with dyadic periods.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Mapping

from . import plmap
from .errors import NotInComF, NotInComPlusF, NotInHp, NotInK, UnknownGenerator
from .plmap import Affine, Periodic, PLMap, Q, canonicalize, compose, equals, invert, translation

__all__ = [
    "catalog", "generator", "is_dyadic", "is_dyadic_map", "in_K", "in_ComPlusF", "in_ComF",
    "in_F", "in_Fprime", "in_Hp", "in_H", "in_Ap", "is_in_AutPlusF", "rho",
    "slope_quotient", "orientation_sign", "equal_mod_Ap", "conjugate", "periodic_scaling",
    "integer_periods", "MEMBERSHIP",
]


def _periodic(*points) -> PLMap:
    return plmap.periodic_map([(Q(x), Q(y)) for x, y in points])


X0 = _periodic((0, 0), ("1/2", "1/4"), ("3/4", "1/2"), (1, 1))
X1 = _periodic((0, 0), ("1/2", "1/2"), ("3/4", "5/8"), ("7/8", "3/4"), (1, 1))
C = _periodic((0, "-1/4"), ("1/2", 0), ("3/4", "1/2"), (1, "3/4"))

_ID = Affine(1, 0)
BUMP = canonicalize(PLMap(1, ((0, 0), ("1/4", "1/2"), ("1/2", "3/4"), (1, 1)), _ID, _ID))
# identity on (-inf, 0], one-periodic copy of BUMP on [0, inf)
GLUED = canonicalize(
    PLMap(1, ((0, 0), ("1/4", "1/2"), ("1/2", "3/4"), (1, 1)), _ID, Periodic(1, 1))
)
# identity on (-inf, 0], translation by 1 on [1, inf)
STEP = canonicalize(PLMap(1, ((0, 0), (1, 2)), _ID, Affine(1, 1)))

_FIXED = {"x0": X0, "x1": X1, "c": C, "bump": BUMP, "glued": GLUED, "step": STEP}
_PARAM = re.compile(r"^(tau|alpha|scale):(-?\d+(?:/\d+)?)$")


def generator(name: str) -> PLMap:
    """Look up a catalog element: fixed names, ``tau:a`` (t+a), ``alpha:a`` (a*t),
    or ``scale:p`` (dyadic map with f(t+1) = f(t) + p)."""
    if name in _FIXED:
        return _FIXED[name]
    m = _PARAM.match(name)
    if not m:
        raise UnknownGenerator(name)
    kind, value = m.group(1), Q(m.group(2))
    if kind == "tau":
        return translation(value)
    if kind == "alpha":
        if value == 0:
            raise UnknownGenerator(name)
        return plmap.affine(value, 0)
    if value <= 0 or value.denominator != 1:
        raise UnknownGenerator(name)
    return periodic_scaling(int(value))


class _Catalog(Mapping):
    """Read-only name -> map lookup that also resolves parametrised names."""

    def __getitem__(self, name):
        return generator(name)

    def __contains__(self, name):
        try:
            generator(name)
        except UnknownGenerator:
            return False
        return True

    def __iter__(self):
        return iter(_FIXED)

    def __len__(self):
        return len(_FIXED)


catalog = _Catalog()


@lru_cache(maxsize=None)
def periodic_scaling(p: int) -> PLMap:
    """A dyadic map alpha with alpha(0) = 0 and alpha(t+1) = alpha(t) + p for all t.

    Conjugating by it carries H_1 onto H_p.  ``p`` is split into powers of two;
    each summand gets its own piece of [0, 1] with power-of-two slope.
    """
    if p < 1:
        raise ValueError("p must be a positive integer")
    if p & (p - 1) == 0:
        return plmap.affine(p, 0)
    powers = [1 << e for e in range(p.bit_length()) if p >> e & 1]
    m = len(powers)
    lengths = [Q(Fraction(1, 2 ** i)) for i in range(1, m)] + [Q(Fraction(1, 2 ** (m - 1)))]
    pts = [(Q(0), Q(0))]
    for width, rise in zip(lengths, powers):
        x, y = pts[-1]
        pts.append((x + width, y + rise))
    return plmap.periodic_map(pts)


# --------------------------------------------------------------------------
# predicates


def is_dyadic(x: Fraction) -> bool:
    d = x.denominator
    return d & (d - 1) == 0


def _is_power_of_two(x: Fraction) -> bool:
    x = abs(x)
    n, d = x.numerator, x.denominator
    return (n == 1 and d & (d - 1) == 0) or (d == 1 and n & (n - 1) == 0)


def is_dyadic_map(f: PLMap) -> bool:
    f = canonicalize(f)
    for tail in (f.left, f.right):
        if isinstance(tail, Affine):
            if not (_is_power_of_two(tail.slope) and is_dyadic(tail.intercept)):
                return False
        elif not (is_dyadic(tail.p) and is_dyadic(tail.q)):
            return False
    if not all(is_dyadic(x) and is_dyadic(y) for x, y in f.core):
        return False
    return all(
        _is_power_of_two((y2 - y1) / (x2 - x1)) for (x1, y1), (x2, y2) in zip(f.core, f.core[1:])
    )


def _tail_ratio(tail) -> Fraction:
    return abs(tail.slope) if isinstance(tail, Affine) else tail.ratio


def integer_periods(tail) -> tuple:
    """Smallest positive integers (p, p') with ``f(t+p) = f(t) +- p'`` past that end."""
    if isinstance(tail, Affine):
        a = abs(tail.slope)
        return a.denominator, a.numerator
    k = lcm(tail.p.denominator, tail.q.denominator)
    return int(tail.p * k), int(tail.q * k)


def in_ComF(f: PLMap) -> bool:
    # rational end periods always have integral multiples, so only dyadicity can fail
    return is_dyadic_map(f)


def in_ComPlusF(f: PLMap) -> bool:
    return f.sign > 0 and in_ComF(f)


def in_K(f: PLMap) -> bool:
    f = canonicalize(f)
    return in_ComPlusF(f) and _tail_ratio(f.left) == 1 and _tail_ratio(f.right) == 1


def in_F(f: PLMap) -> bool:
    f = canonicalize(f)
    if f.sign < 0 or not is_dyadic_map(f):
        return False
    return all(
        isinstance(t, Affine) and t.slope == 1 and t.intercept.denominator == 1
        for t in (f.left, f.right)
    )


def in_Fprime(f: PLMap) -> bool:
    f = canonicalize(f)
    return in_F(f) and f.left == _ID and f.right == _ID


def in_Hp(f: PLMap, p: int) -> bool:
    """f is dyadic, orientation preserving and commutes with t -> t + p."""
    f = canonicalize(f)
    if f.sign < 0 or not is_dyadic_map(f):
        return False
    tau = translation(p)
    return equals(compose(f, tau), compose(tau, f))


def in_H(f: PLMap) -> bool:
    f = canonicalize(f)
    if f.sign < 0 or f.left != f.right:
        return False
    tail = f.right
    if isinstance(tail, Affine):
        return tail.slope == 1 and in_Hp(f, 1)
    if tail.p != tail.q:
        return False
    # smallest integer multiple of the minimal period
    return in_Hp(f, tail.p.numerator)


def in_Ap(f: PLMap, p: int) -> bool:
    f = canonicalize(f)
    if f.core or f.right.slope != 1:
        return False
    k = f.right.intercept / p
    return k.denominator == 1


def is_in_AutPlusF(f: PLMap) -> bool:
    if not in_K(f):
        return False
    minus, plus = rho(f)
    return in_Hp(minus, 1) and in_Hp(plus, 1)


# --------------------------------------------------------------------------
# homomorphisms


def rho(f: PLMap) -> tuple:
    """The pair of periodic germs (f_-, f_+) of an element of K."""
    f = canonicalize(f)
    if not in_K(f):
        raise NotInK("rho is defined on K only")
    return plmap.germs(f)


def slope_quotient(f: PLMap) -> tuple:
    """Image in Q* x Q*: the ratio output/input period at -inf and at +inf."""
    f = canonicalize(f)
    if not in_ComPlusF(f):
        raise NotInComPlusF("slope_quotient needs an orientation-preserving element of Com(F)")
    return _tail_ratio(f.left), _tail_ratio(f.right)


def orientation_sign(f: PLMap) -> int:
    if not in_ComF(f):
        raise NotInComF("orientation_sign needs an element of Com(F)")
    return f.sign


def equal_mod_Ap(f: PLMap, g: PLMap, p: int) -> bool:
    """Whether f and g have the same image in H_p / A_p."""
    if not (in_Hp(f, p) and in_Hp(g, p)):
        raise NotInHp("both maps must lie in H_%d" % p)
    return in_Ap(compose(f, invert(g)), p)


def conjugate(alpha: PLMap, f: PLMap) -> PLMap:
    """alpha o f o alpha^-1."""
    return compose(alpha, f, invert(alpha))


MEMBERSHIP = {
    "F": in_F,
    "Fprime": in_Fprime,
    "K": in_K,
    "ComF": in_ComF,
    "ComPlusF": in_ComPlusF,
    "H": in_H,
    "AutPlusF": is_in_AutPlusF,
}
