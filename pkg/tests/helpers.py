"""Random map/word generators and independent oracles shared by the tests."""

import random
from fractions import Fraction

from thompsonpl import plmap, thompson
from thompsonpl.plmap import Affine, Periodic, PLMap, evaluate, invert
from thompsonpl.words import random_word

H1_GENS = ["x0", "x1", "c"]
# elements of K: F-type elements, glued germs, H_1 and H_2 elements
K_GENS = ["x0", "x1", "c", "bump", "glued", "step", "tau:1", "h2"]
COMPLUS_GENS = K_GENS + ["alpha:2", "scale:3"]
COMF_GENS = COMPLUS_GENS + ["alpha:-1"]
F_GENS = ["bump", "step", "tau:1"]

EXTRA = {}


def assignment():
    if not EXTRA:
        EXTRA["h2"] = thompson.conjugate(thompson.generator("alpha:2"), thompson.generator("c"))
    return _Assign()


class _Assign(dict):
    def __missing__(self, name):
        if name in EXTRA:
            return EXTRA[name]
        return thompson.generator(name)


def rat(rng, lo=-6, hi=6, dens=(1, 2, 3, 4, 5, 8)):
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def sample_points(rng, n, spread=10**3):
    """Mixture of small rationals and points far out in both tails."""
    pts = []
    for i in range(n):
        if i % 3 == 0:
            pts.append(Fraction(rng.randint(-spread, spread), rng.choice((1, 3, 7, 64))))
        else:
            pts.append(rat(rng, -20, 20))
    return pts


def random_raw_map(rng, sign=None, dens=(1, 2, 3, 4, 5, 8)):
    """A random (generally non-canonical) PL map with arbitrary rational data."""
    sign = sign or rng.choice((1, -1))
    x, y = rat(rng, dens=dens), rat(rng, dens=dens)
    pts = [(x, y)]
    for _ in range(rng.randint(2, 7)):
        x += Fraction(rng.randint(1, 6), rng.choice(dens))
        y += sign * Fraction(rng.randint(1, 6), rng.choice(dens))
        pts.append((x, y))

    def tail(side):
        end = pts[-1] if side == "right" else pts[0]
        if rng.random() < 0.35:
            a = sign * Fraction(rng.randint(1, 5), rng.randint(1, 5))
            return Affine(a, end[1] - a * end[0])
        j = rng.randrange(0, len(pts) - 1) if side == "right" else rng.randrange(1, len(pts))
        other = pts[j]
        return Periodic(abs(end[0] - other[0]), abs(end[1] - other[1]))

    return PLMap(sign, tuple(pts), tail("left"), tail("right"))


def random_dyadic_word_map(rng, gens, max_len=12, min_len=0):
    w = random_word(rng, gens, rng.randint(min_len, max_len))
    from thompsonpl.presentation import eval_word

    return w, eval_word(w, assignment())


def letterwise(w, t, assign=None):
    """Evaluate a word at t one generator letter at a time (no composition)."""
    assign = assign or assignment()
    for name, exp in reversed(w):
        g = assign[name]
        if exp < 0:
            g, exp = invert(g), -exp
        for _ in range(exp):
            t = evaluate(g, t)
    return t


def re_present(f, rng, max_mult=3):
    """A random non-canonical presentation of the same function as ``f``.

    Extends the core outward, multiplies the tail periods, presents affine
    ends as periodic ones where possible, and sprinkles collinear points.
    """
    f = plmap.canonicalize(f)
    if not f.core:
        a = f.right.slope
        xs = sorted({rat(rng) for _ in range(rng.randint(2, 5))})
        if len(xs) < 2:
            xs.append(xs[0] + 1)
        core = tuple((x, evaluate(f, x)) for x in xs)
        right = Periodic(xs[-1] - xs[0], abs(a) * (xs[-1] - xs[0])) if rng.random() < 0.5 else f.right
        left = Periodic(xs[-1] - xs[0], abs(a) * (xs[-1] - xs[0])) if rng.random() < 0.5 else f.left
        return PLMap(f.sign, core, left, right)
    x0, xn = f.core[0][0], f.core[-1][0]
    s = f.sign

    def plan(tail):
        if isinstance(tail, Periodic):
            m = rng.randint(1, max_mult)
            return m, Periodic(m * tail.p, m * tail.q), (m - 1) * tail.p
        return 1, tail, Fraction(0)

    mr, right, need_r = plan(f.right)
    ml, left, need_l = plan(f.left)
    hi = xn + need_r + Fraction(rng.randint(0, 4), rng.choice((1, 2, 4)))
    lo = x0 - need_l - Fraction(rng.randint(0, 4), rng.choice((1, 2, 4)))
    if isinstance(f.right, Affine) and hi > xn and rng.random() < 0.5:
        P = (hi - xn) / rng.randint(1, 3)
        right = Periodic(P, abs(f.right.slope) * P)
    if isinstance(f.left, Affine) and lo < x0 and rng.random() < 0.5:
        P = (x0 - lo) / rng.randint(1, 3)
        left = Periodic(P, abs(f.left.slope) * P)
    xs = {lo, hi} | {x for x, _ in f.core}
    if isinstance(f.right, Periodic):
        base = [x for x, _ in f.core if x >= xn - f.right.p]
        k = 1
        while xn - f.right.p + k * f.right.p <= hi:
            xs.update(x + k * f.right.p for x in base)
            k += 1
    if isinstance(f.left, Periodic):
        base = [x for x, _ in f.core if x <= x0 + f.left.p]
        k = 1
        while x0 + f.left.p - k * f.left.p >= lo:
            xs.update(x - k * f.left.p for x in base)
            k += 1
    for _ in range(rng.randint(0, 4)):
        xs.add(lo + (hi - lo) * Fraction(rng.randint(1, 99), 100))
    xs = sorted(x for x in xs if lo <= x <= hi)
    core = tuple((x, evaluate(f, x)) for x in xs)
    del s
    return PLMap(f.sign, core, left, right)


def new_rng(seed=0):
    return random.Random(seed)
