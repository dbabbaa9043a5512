from fractions import Fraction as Fr

import pytest

from helpers import (
    COMF_GENS,
    COMPLUS_GENS,
    F_GENS,
    H1_GENS,
    K_GENS,
    new_rng,
    random_dyadic_word_map,
    sample_points,
)
from thompsonpl import thompson as th
from thompsonpl.errors import NotInComF, NotInComPlusF, NotInHp, NotInK, UnknownGenerator
from thompsonpl.plmap import (
    Affine,
    Periodic,
    PLMap,
    affine,
    canonicalize,
    compose,
    equals,
    evaluate,
    identity,
    invert,
    translation,
)

x0, x1, c = th.generator("x0"), th.generator("x1"), th.generator("c")
bump, glued, step = th.generator("bump"), th.generator("glued"), th.generator("step")
alpha2 = th.generator("alpha:2")
refl = affine(-1)


# ---------------------------------------------------------------- catalog


@pytest.mark.parametrize(
    "g,points",
    [
        (x0, [(0, 0), (Fr(1, 2), Fr(1, 4)), (Fr(3, 4), Fr(1, 2)), (1, 1)]),
        (x1, [(0, 0), (Fr(1, 2), Fr(1, 2)), (Fr(3, 4), Fr(5, 8)), (Fr(7, 8), Fr(3, 4)), (1, 1)]),
        (c, [(0, Fr(-1, 4)), (Fr(1, 2), 0), (Fr(3, 4), Fr(1, 2)), (1, Fr(3, 4))]),
    ],
)
def test_lift_piece_data(g, points):
    for t, v in points:
        assert evaluate(g, t) == v
    assert g.left == g.right == Periodic(1, 1)


def test_lift_normalisation():
    assert evaluate(x0, 0) == 0 and evaluate(x1, 0) == 0
    assert evaluate(c, 0) == Fr(-1, 4)
    assert compose(c, c, c) == translation(-1)


def test_lifts_are_one_periodic():
    rng = new_rng(1)
    for g in (x0, x1, c):
        for t in sample_points(rng, 30):
            assert evaluate(g, t + 1) == evaluate(g, t) + 1


def test_bump_pieces():
    expected = {Fr(-3): Fr(-3), Fr(1, 8): Fr(1, 4), Fr(3, 8): Fr(5, 8), Fr(3, 4): Fr(7, 8), Fr(5): Fr(5)}
    for t, v in expected.items():
        assert evaluate(bump, t) == v


def test_parametrised_names():
    assert th.generator("tau:3/2") == translation(Fr(3, 2))
    assert th.generator("alpha:2") == affine(2)
    s5 = th.generator("scale:5")
    assert evaluate(s5, 0) == 0
    for t in sample_points(new_rng(2), 20):
        assert evaluate(s5, t + 1) == evaluate(s5, t) + 5
    assert th.is_dyadic_map(s5)
    with pytest.raises(UnknownGenerator):
        th.generator("nope")
    assert "tau:1" in th.catalog and "nope" not in th.catalog


# ---------------------------------------------------------------- dyadic / membership examples


def test_is_dyadic_map_examples():
    assert th.is_dyadic_map(c)
    assert not th.is_dyadic_map(affine(3))
    assert not th.is_dyadic_map(translation(Fr(1, 3)))


def test_K_examples():
    assert th.in_K(c)
    assert not th.in_K(alpha2)
    assert th.in_ComPlusF(alpha2)
    assert th.slope_quotient(alpha2) == (2, 2)


def test_reflection_membership():
    # t -> -t obeys f(t + 1) = f(t) - 1 at both ends: the reversed integral law
    for t in sample_points(new_rng(3), 20):
        assert evaluate(refl, t + 1) == evaluate(refl, t) - 1
    assert th.in_ComF(refl)
    assert not th.in_ComPlusF(refl)


def test_F_examples():
    assert th.in_F(translation(1)) and not th.in_Fprime(translation(1))
    assert th.in_Fprime(bump)
    assert not th.in_F(c)
    assert th.in_F(step) and not th.in_Fprime(step)


def test_Hp_examples():
    assert th.in_Hp(c, 1) and th.in_Hp(c, 2)
    assert th.in_H(c)
    assert not th.in_Hp(glued, 1) and not th.in_H(glued)
    assert th.in_Ap(translation(-1), 1)
    assert not th.in_Ap(translation(1), 2)
    assert th.in_Ap(translation(4), 2)


def test_H_via_minimal_period():
    h2 = th.conjugate(alpha2, c)
    assert h2.right == Periodic(2, 2)
    assert th.in_H(h2) and not th.in_Hp(h2, 1) and th.in_Hp(h2, 2)
    assert th.in_H(translation(Fr(1, 2)))
    assert not th.in_H(alpha2)


def test_integer_periods():
    assert th.integer_periods(Periodic(Fr(1, 2), Fr(3, 4))) == (2, 3)
    assert th.integer_periods(Affine(2, 0)) == (1, 2)
    assert th.integer_periods(Affine(Fr(1, 4), 0)) == (4, 1)


# ---------------------------------------------------------------- rho


def test_rho_examples():
    assert th.rho(bump) == (identity(), identity())
    assert th.rho(c) == (c, c)


def test_rho_glued():
    minus, plus = th.rho(glued)
    assert minus == identity()
    rng = new_rng(4)
    # independent description of the periodised bump: bump(t - n) + n for n = floor(t)
    for _ in range(50):
        t = Fr(rng.randint(-5000, 5000), rng.choice((1, 3, 8, 16)))
        n = t.numerator // t.denominator
        assert evaluate(plus, t) == evaluate(bump, t - n) + n
        assert evaluate(plus, abs(t) + 1) == evaluate(glued, abs(t) + 1)
        assert evaluate(minus, -abs(t)) == evaluate(glued, -abs(t))


def test_rho_of_F_elements_are_translations():
    rng = new_rng(5)
    for _ in range(20):
        _, f = random_dyadic_word_map(rng, F_GENS, 10)
        assert th.in_F(f)
        m_minus = evaluate(f, -10**6) + 10**6
        m_plus = evaluate(f, 10**6) - 10**6
        assert th.rho(f) == (translation(m_minus), translation(m_plus))


def test_rho_requires_K():
    with pytest.raises(NotInK):
        th.rho(alpha2)


# ---------------------------------------------------------------- quotients


def test_slope_quotient_examples():
    assert th.slope_quotient(c) == (1, 1)
    assert th.slope_quotient(compose(alpha2, alpha2)) == (4, 4)
    assert th.slope_quotient(th.generator("scale:3")) == (3, 3)
    with pytest.raises(NotInComPlusF):
        th.slope_quotient(refl)


def test_orientation_sign_examples():
    assert th.orientation_sign(translation(1)) == 1
    assert th.orientation_sign(refl) == -1
    assert th.orientation_sign(compose(refl, refl)) == 1
    with pytest.raises(NotInComF):
        th.orientation_sign(affine(3))


def test_equal_mod_Ap_examples():
    assert th.equal_mod_Ap(compose(c, c, c), identity(), 1)
    assert not th.equal_mod_Ap(c, identity(), 1)
    rng = new_rng(6)
    for p in (1, 2, 3):
        for _ in range(5):
            _, f = random_dyadic_word_map(rng, H1_GENS, 6)
            assert th.equal_mod_Ap(f, compose(translation(p), f), p)
    with pytest.raises(NotInHp):
        th.equal_mod_Ap(glued, c, 1)


def test_conjugate_examples():
    assert th.conjugate(alpha2, translation(-1)) == translation(-2)
    conj = th.conjugate(alpha2, c)
    assert th.in_Hp(conj, 2)
    rng = new_rng(7)
    for _ in range(50):
        t = Fr(rng.randint(-10**4, 10**4), rng.choice((1, 4, 5)))
        assert evaluate(conj, t + 2) == evaluate(conj, t) + 2
    _, f = random_dyadic_word_map(rng, COMF_GENS, 5)
    assert th.conjugate(identity(), f) == f


def test_conjugation_by_scale_reaches_Hp():
    rng = new_rng(8)
    for p in (3, 5, 6):
        alpha = th.periodic_scaling(p)
        for _ in range(4):
            _, f = random_dyadic_word_map(rng, H1_GENS, 6)
            g = th.conjugate(alpha, f)
            assert th.in_Hp(g, p)
        assert th.conjugate(alpha, translation(1)) == translation(p)


# ---------------------------------------------------------------- properties


def test_centralizer_characterisation():
    rng = new_rng(9)
    for _ in range(100):
        _, f = random_dyadic_word_map(rng, H1_GENS, 10)
        assert th.in_Hp(f, 1)
        assert equals(compose(f, translation(1)), compose(translation(1), f))


def test_A_p_central_in_H_p():
    rng = new_rng(10)
    for p in (1, 2, 3):
        alpha = th.periodic_scaling(p)
        for _ in range(8):
            _, f = random_dyadic_word_map(rng, H1_GENS, 8)
            f = th.conjugate(alpha, f)
            for k in range(-2, 3):
                tau = translation(k * p)
                assert compose(tau, f) == compose(f, tau)


def test_lattice_facts():
    rng = new_rng(11)
    for _ in range(20):
        _, f = random_dyadic_word_map(rng, H1_GENS, 8)
        for q in (2, 3, 6):
            assert th.in_Hp(f, q)
    assert th.in_Ap(translation(6), 2) and th.in_Ap(translation(6), 3)
    assert not th.in_Ap(translation(2), 4)


def test_rho_homomorphism():
    rng = new_rng(12)
    for _ in range(40):
        _, f = random_dyadic_word_map(rng, K_GENS, 6)
        _, g = random_dyadic_word_map(rng, K_GENS, 6)
        fm, fp = th.rho(f)
        gm, gp = th.rho(g)
        assert th.rho(compose(f, g)) == (compose(fm, gm), compose(fp, gp))


def test_rho_kernel_is_F_prime():
    """Conjugates of compactly supported elements have trivial germs and stay in F'."""
    rng = new_rng(13)
    shifted_bump = compose(step, bump, invert(step))
    for _ in range(20):
        _, f = random_dyadic_word_map(rng, K_GENS, 5)
        b = compose(*(rng.choice((bump, shifted_bump, invert(bump))) for _ in range(3)))
        k = compose(f, b, invert(f))
        assert th.rho(k) == (identity(), identity())
        assert th.in_Fprime(k)


def test_quotients_multiplicative():
    rng = new_rng(14)
    for _ in range(40):
        _, f = random_dyadic_word_map(rng, COMPLUS_GENS, 5)
        _, g = random_dyadic_word_map(rng, COMPLUS_GENS, 5)
        a, b = th.slope_quotient(f), th.slope_quotient(g)
        assert th.slope_quotient(compose(f, g)) == (a[0] * b[0], a[1] * b[1])
        _, f = random_dyadic_word_map(rng, COMF_GENS, 5)
        _, g = random_dyadic_word_map(rng, COMF_GENS, 5)
        assert th.orientation_sign(compose(f, g)) == th.orientation_sign(f) * th.orientation_sign(g)


def test_slope_quotient_trivial_exactly_on_K():
    rng = new_rng(15)
    for _ in range(40):
        _, f = random_dyadic_word_map(rng, COMPLUS_GENS, 6)
        assert (th.slope_quotient(f) == (1, 1)) == th.in_K(f)


@pytest.mark.parametrize(
    "gens,test",
    [
        (K_GENS, th.in_K),
        (COMPLUS_GENS, th.in_ComPlusF),
        (COMF_GENS, th.in_ComF),
        (F_GENS, th.in_F),
        (["bump"], th.in_Fprime),
        (H1_GENS, lambda f: th.in_Hp(f, 1)),
        (["tau:2"], lambda f: th.in_Ap(f, 2)),
    ],
)
def test_closure(gens, test):
    rng = new_rng(16)
    for _ in range(10):
        _, f = random_dyadic_word_map(rng, gens, 5)
        _, g = random_dyadic_word_map(rng, gens, 5)
        assert test(f) and test(g)
        assert test(compose(f, g))
        assert test(invert(f))


def test_H2_closure():
    rng = new_rng(17)
    alpha = th.periodic_scaling(2)
    for _ in range(10):
        f = th.conjugate(alpha, random_dyadic_word_map(rng, H1_GENS, 5)[1])
        g = th.conjugate(alpha, random_dyadic_word_map(rng, H1_GENS, 5)[1])
        assert th.in_Hp(compose(f, g), 2) and th.in_Hp(invert(f), 2)


def test_aut_plus_F():
    assert th.is_in_AutPlusF(c)
    assert th.is_in_AutPlusF(step)
    assert not th.is_in_AutPlusF(th.conjugate(alpha2, c))
    assert not th.is_in_AutPlusF(alpha2)


def test_non_canonical_input_accepted():
    raw = PLMap(1, ((0, 0), (1, 1), (2, 2)), Periodic(1, 1), Periodic(1, 1))
    assert th.in_Ap(raw, 1) and th.in_F(canonicalize(raw))
