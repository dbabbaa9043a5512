"""
Piecewise-linear homeomorphisms of the real line with periodically affine ends.

A map is stored as a finite *core* of breakpoints ``(x, y)`` together with a
description of its behaviour beyond either end of the core:

* ``Affine(a, b)``: the map is ``t -> a*t + b`` past that end;
* ``Periodic(p, q)``: past the right end ``f(t) = f(t - p) + sign*q``, past the
  left end ``f(t) = f(t + p) - sign*q``.  The fundamental domain of length
  ``p`` adjacent to that end must lie inside the core.

All coordinates are exact rationals (``gmpy2.mpq`` when available, otherwise
:class:`fractions.Fraction`); nothing here touches floats.

Canonical form (what :func:`canonicalize` produces, and what equality compares):

* the periods of periodic ends are minimal, and an end whose slope is
  eventually constant is described as ``Affine``;
* a map that is globally affine has an empty core;
* a globally periodic map has a core of exactly one fundamental domain, whose
  left end is the first breakpoint ``>= 0``;
* otherwise, with ``R`` the infimum of the region where the map agrees with its
  germ at ``+inf`` and ``L`` the supremum of the region where it agrees with its
  germ at ``-inf``, the right end of the core is ``R`` for an affine end and
  the first breakpoint ``>= max(L, R) + p`` for a periodic one; symmetrically
  on the left.  Every core point is a breakpoint.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .errors import MalformedMap, ZeroSlope

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    Rat = Fraction

Rational = Union[Fraction, int, str]


def Q(value: Rational):
    """Coerce ints, ``"num/den"`` strings and Fractions to the exact scalar type."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction or 'num/den'")
    return Rat(value)


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


@dataclass(frozen=True)
class Affine:
    slope: Fraction
    intercept: Fraction

    def __post_init__(self):
        object.__setattr__(self, "slope", Q(self.slope))
        object.__setattr__(self, "intercept", Q(self.intercept))
        if self.slope == 0:
            raise ZeroSlope("affine tail with zero slope")

    def __call__(self, t: Fraction) -> Fraction:
        return self.slope * t + self.intercept


@dataclass(frozen=True)
class Periodic:
    p: Fraction
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", Q(self.p))
        object.__setattr__(self, "q", Q(self.q))
        if self.p <= 0 or self.q <= 0:
            raise MalformedMap("periods must be positive, got (%s, %s)" % (self.p, self.q))

    @property
    def ratio(self) -> Fraction:
        return self.q / self.p


Tail = Union[Affine, Periodic]


@dataclass(frozen=True)
class PLMap:
    sign: int
    core: tuple
    left: Tail
    right: Tail
    _canonical: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        core = tuple((Q(x), Q(y)) for x, y in self.core)
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "_xs", [x for x, _ in core])
        _validate(self)

    def __call__(self, t: Rational) -> Fraction:
        return evaluate(self, t)

    def __matmul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __invert__(self) -> "PLMap":
        return invert(self)

    def __str__(self):
        return dumps(self)

    @property
    def is_canonical(self) -> bool:
        return self._canonical


def _validate(f: PLMap) -> None:
    if f.sign not in (1, -1):
        raise MalformedMap("sign must be +1 or -1, got %r" % (f.sign,))
    for tail in (f.left, f.right):
        if not isinstance(tail, (Affine, Periodic)):
            raise MalformedMap("tails must be Affine or Periodic")
    core = f.core
    if not core:
        if not (isinstance(f.left, Affine) and f.left == f.right):
            raise MalformedMap("an empty core needs identical affine tails")
        if (f.left.slope > 0) != (f.sign > 0):
            raise MalformedMap("slope sign disagrees with orientation")
        return
    for (x1, y1), (x2, y2) in zip(core, core[1:]):
        if x2 <= x1:
            raise MalformedMap("core x-coordinates must increase strictly")
        if f.sign * (y2 - y1) <= 0:
            raise MalformedMap("core values are not strictly monotone")
    (x0, y0), (xn, yn) = core[0], core[-1]
    for tail, (xe, ye) in ((f.right, (xn, yn)), (f.left, (x0, y0))):
        if isinstance(tail, Affine):
            if (tail.slope > 0) != (f.sign > 0):
                raise MalformedMap("affine tail slope disagrees with orientation")
            if tail(xe) != ye:
                raise MalformedMap("affine tail does not meet the core at x=%s" % xe)
    if isinstance(f.right, Periodic):
        p, q = f.right.p, f.right.q
        if xn - p < x0:
            raise MalformedMap("right fundamental domain leaves the core")
        if _eval_core(f, xn - p) + f.sign * q != yn:
            raise MalformedMap("right periodic tail is discontinuous")
    if isinstance(f.left, Periodic):
        p, q = f.left.p, f.left.q
        if x0 + p > xn:
            raise MalformedMap("left fundamental domain leaves the core")
        if _eval_core(f, x0 + p) - f.sign * q != y0:
            raise MalformedMap("left periodic tail is discontinuous")


# --------------------------------------------------------------------------
# evaluation


def _eval_core(f: PLMap, t: Fraction) -> Fraction:
    xs = f._xs
    i = bisect.bisect_left(xs, t)
    if i < len(xs) and xs[i] == t:
        return f.core[i][1]
    (xa, ya), (xb, yb) = f.core[i - 1], f.core[i]
    return ya + (yb - ya) * (t - xa) / (xb - xa)


def evaluate(f: PLMap, t: Rational) -> Fraction:
    """Exact value ``f(t)``; tails are unrolled in a single step."""
    t = Q(t)
    if not f.core:
        return f.right(t)
    x0, xn = f._xs[0], f._xs[-1]
    if t > xn:
        tail = f.right
        if isinstance(tail, Affine):
            return tail(t)
        k = _ceil((t - xn) / tail.p)
        return _eval_core(f, t - k * tail.p) + f.sign * k * tail.q
    if t < x0:
        tail = f.left
        if isinstance(tail, Affine):
            return tail(t)
        k = _ceil((x0 - t) / tail.p)
        return _eval_core(f, t + k * tail.p) - f.sign * k * tail.q
    return _eval_core(f, t)


def _graph(f: PLMap, lo: Fraction, hi: Fraction) -> list:
    """Sorted vertices ``(t, f(t))`` between which f is linear on [lo, hi]; both ends included."""
    if not f.core:
        return [(lo, f.right(lo)), (hi, f.right(hi))] if lo < hi else [(lo, f.right(lo))]
    xs, core, s = f._xs, f.core, f.sign
    x0, xn = xs[0], xs[-1]
    out = list(core[bisect.bisect_left(xs, lo):bisect.bisect_right(xs, hi)])
    if hi > xn and isinstance(f.right, Periodic):
        p, q = f.right.p, f.right.q
        base = core[bisect.bisect_right(xs, xn - p):]
        for k in range(max(1, _floor((lo - xn) / p)), _ceil((hi - xn + p) / p) + 1):
            dx, dy = k * p, s * k * q
            out.extend((x + dx, y + dy) for x, y in base if lo <= x + dx <= hi)
    if lo < x0 and isinstance(f.left, Periodic):
        p, q = f.left.p, f.left.q
        base = core[:bisect.bisect_left(xs, x0 + p)]
        for k in range(max(1, _floor((x0 - hi) / p)), _ceil((x0 + p - lo) / p) + 1):
            dx, dy = k * p, s * k * q
            out.extend((x - dx, y - dy) for x, y in base if lo <= x - dx <= hi)
    out.sort()
    if not out or out[0][0] != lo:
        out.insert(0, (lo, evaluate(f, lo)))
    if out[-1][0] != hi:
        out.append((hi, evaluate(f, hi)))
    return out


def _resample(graph: list, ts: Sequence) -> list:
    """Values at the sorted points ``ts`` of the PL function with vertices ``graph``."""
    out, j, n = [], 0, len(graph)
    for t in ts:
        while j + 1 < n and graph[j + 1][0] < t:
            j += 1
        xa, ya = graph[j]
        if t == xa:
            out.append(ya)
            continue
        xb, yb = graph[j + 1]
        out.append(yb if t == xb else ya + (yb - ya) * (t - xa) / (xb - xa))
    return out


def _corners(f: PLMap, lo: Fraction, hi: Fraction) -> list:
    """Vertices of the graph on [lo, hi] where the slope actually changes."""
    g = _graph(f, lo - 1, hi + 1)
    slopes = [(g[i + 1][1] - g[i][1]) / (g[i + 1][0] - g[i][0]) for i in range(len(g) - 1)]
    return [
        g[i] for i in range(1, len(g) - 1)
        if lo <= g[i][0] <= hi and slopes[i - 1] != slopes[i]
    ]


def breakpoints(f: PLMap, lo: Rational, hi: Rational) -> list:
    """All points of [lo, hi] where the slope of f changes."""
    return [t for t, _ in _corners(f, Q(lo), Q(hi))]


def pieces_per_period(f: PLMap, side: str = "right") -> int:
    """Number of linear pieces in one fundamental domain of an end (1 if affine)."""
    tail = f.right if side == "right" else f.left
    if isinstance(tail, Affine) or not f.core:
        return 1
    u = f._xs[-1] - tail.p if side == "right" else f._xs[0]
    return max(1, len([b for b in breakpoints(f, u, u + tail.p) if b > u]))


# --------------------------------------------------------------------------
# construction


def affine(a: Rational, b: Rational = 0) -> PLMap:
    a, b = Q(a), Q(b)
    if a == 0:
        raise ZeroSlope("affine map with zero slope")
    tail = Affine(a, b)
    return PLMap(1 if a > 0 else -1, (), tail, tail, _canonical=True)


def translation(a: Rational) -> PLMap:
    return affine(1, a)


def identity() -> PLMap:
    return affine(1, 0)


def periodic_map(points: Sequence, period: Rational = None) -> PLMap:
    """The orientation-preserving map with ``f(t + p) = f(t) + q`` everywhere,
    given by its graph over one fundamental domain ``[x_0, x_0 + p]``."""
    pts = [(Q(x), Q(y)) for x, y in points]
    p = pts[-1][0] - pts[0][0] if period is None else Q(period)
    if pts[-1][0] - pts[0][0] != p:
        raise MalformedMap("points must span exactly one period")
    tail = Periodic(p, pts[-1][1] - pts[0][1])
    return canonicalize(PLMap(1, tuple(pts), tail, tail))


def from_pieces(points: Sequence, left: Tail, right: Tail, sign: int = None) -> PLMap:
    """Canonical map from explicit core points and tails; sign inferred from the core."""
    pts = tuple((Q(x), Q(y)) for x, y in points)
    if sign is None:
        sign = 1 if len(pts) < 2 or pts[1][1] > pts[0][1] else -1
    return canonicalize(PLMap(sign, pts, left, right))


# --------------------------------------------------------------------------
# inversion and composition


def _raw_inverse(f: PLMap) -> PLMap:
    def inv_tail(tail):
        if isinstance(tail, Affine):
            return Affine(1 / tail.slope, -tail.intercept / tail.slope)
        return Periodic(tail.q, tail.p)

    core = tuple((y, x) for x, y in f.core)
    if f.sign > 0:
        return PLMap(1, core, inv_tail(f.left), inv_tail(f.right))
    return PLMap(-1, core[::-1], inv_tail(f.right), inv_tail(f.left))


def invert(f: PLMap) -> PLMap:
    inv = _raw_inverse(f)
    if f._canonical and not _is_global(f):
        # canonical anchoring is preserved by inversion except for globally periodic maps
        object.__setattr__(inv, "_canonical", True)
        return inv
    return canonicalize(inv)


def _is_global(f: PLMap) -> bool:
    """Whether a canonical map obeys one law on all of R."""
    if not f.core:
        return True
    tail = f.right
    return isinstance(tail, Periodic) and f.left == tail and f._xs[-1] - f._xs[0] == tail.p


@dataclass(frozen=True)
class _Law:
    """Tail law of one end: threshold past which it holds, and period data.

    ``period`` is None for an affine end, whose period can be chosen freely
    (it then advances the output by ``|slope|`` times the input step).
    """

    threshold: Fraction
    period: Fraction = None
    advance: Fraction = None
    slope: Fraction = None


def _law(f: PLMap, side: str) -> _Law:
    tail = f.right if side == "right" else f.left
    if not f.core:
        return _Law(Rat(0), slope=abs(tail.slope))
    if side == "right":
        xn = f._xs[-1]
        if isinstance(tail, Affine):
            return _Law(xn, slope=abs(tail.slope))
        return _Law(xn - tail.p, tail.p, tail.q)
    x0 = f._xs[0]
    if isinstance(tail, Affine):
        return _Law(x0, slope=abs(tail.slope))
    return _Law(x0 + tail.p, tail.p, tail.q)


def _combine(inner: _Law, outer: _Law) -> tuple:
    """Input/output periods of the composite end (outer after inner)."""
    if inner.period is None and outer.period is None:
        return Rat(1), inner.slope * outer.slope
    if inner.period is None:
        return outer.period / inner.slope, outer.advance
    if outer.period is None:
        return inner.period, outer.slope * inner.advance
    r = inner.advance / outer.period
    k, l = r.denominator, r.numerator
    return k * inner.period, l * outer.advance


def compose_raw(f: PLMap, g: PLMap) -> PLMap:
    """``t -> f(g(t))`` with unminimized tails (periods straight from the laws)."""
    ginv = _raw_inverse(g)
    flip = g.sign < 0
    gr, gl = _law(g, "right"), _law(g, "left")
    fr, fl = _law(f, "right"), _law(f, "left")
    # past +inf the inner map feeds the outer map's right end, or its left end if it reverses
    outer_r, outer_l = (fl, fr) if flip else (fr, fl)
    PR, QR = _combine(gr, outer_r)
    PL, QL = _combine(gl, outer_l)
    TR = max(gr.threshold, evaluate(ginv, outer_r.threshold))
    TL = min(gl.threshold, evaluate(ginv, outer_l.threshold))
    A = min(TL - PL, TR)
    B = max(TR + PR, TL)
    gg = _graph(g, A, B)
    ua, ub = sorted((gg[0][1], gg[-1][1]))
    fg = _graph(f, ua, ub)
    inverse_graph = sorted((y, x) for x, y in gg)
    ts = {t for t, _ in gg}
    ts.update(_resample(inverse_graph, [u for u, _ in fg]))
    ts = sorted(ts)
    us = _resample(gg, ts)
    if g.sign > 0:
        vs = _resample(fg, us)
    else:
        vs = _resample(fg, us[::-1])[::-1]
    core = tuple(zip(ts, vs))
    return PLMap(f.sign * g.sign, core, Periodic(PL, QL), Periodic(PR, QR))


def compose(*maps: PLMap) -> PLMap:
    """Composite read right to left: ``compose(f, g)(t) == f(g(t))``."""
    if not maps:
        return identity()
    result = maps[-1]
    for f in reversed(maps[:-1]):
        if not f.core and not result.core:
            a, b = f.right.slope, f.right.intercept
            result = affine(a * result.right.slope, a * result.right.intercept + b)
        else:
            result = canonicalize(compose_raw(f, result))
    return canonicalize(result)


# --------------------------------------------------------------------------
# canonical form


def _right_germ(f: PLMap) -> PLMap:
    tail = f.right
    if isinstance(tail, Affine):
        return PLMap(f.sign, (), tail, tail)
    xn = f._xs[-1]
    u = xn - tail.p
    pts = [(u, _eval_core(f, u))] + [pt for pt in f.core if pt[0] > u]
    return PLMap(f.sign, tuple(pts), tail, tail)


def _left_germ(f: PLMap) -> PLMap:
    tail = f.left
    if isinstance(tail, Affine):
        return PLMap(f.sign, (), tail, tail)
    x0 = f._xs[0]
    u = x0 + tail.p
    pts = [pt for pt in f.core if pt[0] < u] + [(u, _eval_core(f, u))]
    return PLMap(f.sign, tuple(pts), tail, tail)


def _canonical_global(g: PLMap) -> PLMap:
    """Canonical form of a raw map whose two ends obey one global law."""
    if not g.core:
        return PLMap(g.sign, (), g.right, g.right, _canonical=True)
    u, p = g._xs[0], g.right.p
    corners = _corners(g, u + p / 2, u + p + p / 2)
    corners = [c for c in corners if c[0] < corners[0][0] + p] if corners else []
    if not corners:
        a = g.sign * g.right.q / p
        tail = Affine(a, g.core[0][1] - a * u)
        return PLMap(g.sign, (), tail, tail, _canonical=True)
    m = len(corners)
    ends = corners + [(corners[0][0] + p, corners[0][1] + g.sign * g.right.q)]
    shape = [
        (ends[i + 1][0] - ends[i][0], (ends[i + 1][1] - ends[i][1]) / (ends[i + 1][0] - ends[i][0]))
        for i in range(m)
    ]
    d = next(
        d for d in range(1, m + 1)
        if m % d == 0 and all(shape[i] == shape[(i + d) % m] for i in range(m))
    )
    p0 = ends[d][0] - ends[0][0]
    q0 = abs(ends[d][1] - ends[0][1])
    start = min(t for t, _ in _corners(g, Rat(0), p0))
    core = tuple(_corners(g, start, start + p0))
    tail = Periodic(p0, q0)
    return PLMap(g.sign, core, tail, tail, _canonical=True)


def _tail_period(germ: PLMap) -> Fraction:
    return germ.right.p if isinstance(germ.right, Periodic) else Rat(0)


def _disagreement(f: PLMap, g: PLMap, lo: Fraction, hi: Fraction, last: bool):
    """Right end of the last (or left end of the first) subinterval of
    [lo, hi] on which f and g differ; None when they agree throughout."""
    gf, gg = _graph(f, lo, hi), _graph(g, lo, hi)
    pts = sorted({t for t, _ in gf} | {t for t, _ in gg})
    diff = [a - b for a, b in zip(_resample(gf, pts), _resample(gg, pts))]
    idx = range(len(pts) - 1)
    for i in (reversed(idx) if last else idx):
        if diff[i] != 0 or diff[i + 1] != 0:
            return pts[i + 1] if last else pts[i]
    return None


def germs(f: PLMap) -> tuple:
    """Canonical globally-defined maps agreeing with f near -inf and near +inf."""
    if not f.core:
        f = canonicalize(f)
        return f, f
    return _canonical_global(_left_germ(f)), _canonical_global(_right_germ(f))


def canonicalize(f: PLMap) -> PLMap:
    """Unique normal form of f (see module docstring); idempotent."""
    if f._canonical:
        return f
    if not f.core:
        return PLMap(f.sign, (), f.right, f.right, _canonical=True)
    left, right = germs(f)
    x0, xn = f._xs[0], f._xs[-1]
    span = _tail_period(left) + _tail_period(right) + 1
    r_star = _disagreement(f, right, x0 - span, xn, last=True)
    if r_star is None:
        return right
    l_star = _disagreement(f, left, x0, xn + span, last=False)
    hi, lo = max(r_star, l_star), min(r_star, l_star)
    if isinstance(right.right, Periodic):
        p = right.right.p
        end = _corners(f, hi + p, hi + 2 * p)[0][0]
    else:
        end = r_star
    if isinstance(left.left, Periodic):
        p = left.left.p
        begin = _corners(f, lo - 2 * p, lo - p)[-1][0]
    else:
        begin = l_star
    core = _corners(f, begin, end)
    if not core or core[0][0] != begin:
        core.insert(0, (begin, evaluate(f, begin)))
    if core[-1][0] != end:
        core.append((end, evaluate(f, end)))
    return PLMap(f.sign, tuple(core), left.left, right.right, _canonical=True)


def equals(f: PLMap, g: PLMap) -> bool:
    return canonicalize(f) == canonicalize(g)


def is_identity(f: PLMap) -> bool:
    return canonicalize(f) == identity()


# --------------------------------------------------------------------------
# serialization


def _fmt(x: Fraction) -> str:
    return str(x)


def to_record(f: PLMap) -> dict:
    def tail(t):
        if isinstance(t, Affine):
            return {"affine": [_fmt(t.slope), _fmt(t.intercept)]}
        return {"periodic": [_fmt(t.p), _fmt(t.q)]}

    return {
        "sign": f.sign,
        "core": [[_fmt(x), _fmt(y)] for x, y in f.core],
        "left": tail(f.left),
        "right": tail(f.right),
    }


def from_record(rec: dict) -> PLMap:
    def tail(t):
        if set(t) == {"affine"}:
            return Affine(*map(Q, t["affine"]))
        if set(t) == {"periodic"}:
            return Periodic(*map(Q, t["periodic"]))
        raise MalformedMap("tail must be {'affine': [a, b]} or {'periodic': [p, q]}")

    try:
        return PLMap(int(rec["sign"]), tuple(rec["core"]), tail(rec["left"]), tail(rec["right"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedMap("bad map record: %s" % exc) from exc


def dumps(f: PLMap) -> str:
    return json.dumps(to_record(f), separators=(", ", ": "))


def loads(text: str) -> PLMap:
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedMap("bad map record: %s" % exc) from exc
    return from_record(rec)
