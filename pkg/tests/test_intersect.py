"""Divisors, cup products, and the displacement-rule pairing."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from matfan import corpus
from matfan.charpoly import mu_vector_mobius
from matfan.fan import (
    MinkowskiWeight,
    bergman_weight,
    check_balancing,
    cremona_pullback_weight,
    fundamental_weight,
    permutohedral_weight,
)
from matfan.intersect import (
    DegenerateDisplacementError,
    DisplacementVector,
    NotBalancedError,
    PLDivisor,
    alpha_divisor,
    certified_degree_pairing,
    cone_displacement_intersect,
    cremona_pullback_divisor,
    default_displacement,
    degree_pairing,
    displacement_weights,
    divisor_cup,
    evaluate_in_cone,
    mu_via_displacement,
    mu_via_divisors,
    mu_vector_displacement,
    mu_vector_divisors,
    nef_check,
    nef_values,
    pairing_terms,
    perturbed_displacement,
)
from matfan.matroid import FreeMatroid, UniformMatroid

from oracles import min_formula


# -- piecewise-linear divisors ------------------------------------------------


def test_alpha_divisor_ray_values():
    a = alpha_divisor(2)
    assert a.ray_values == {0b001: -1, 0b011: -1, 0b101: -1}
    assert a.value(0b010) == 0
    assert a.value(0b001) == -1


def test_divisor_rejects_improper_rays():
    with pytest.raises(ValueError):
        PLDivisor(2, {0: 1})
    with pytest.raises(ValueError):
        PLDivisor(2, {0b111: 1})


def test_divisor_arithmetic():
    a = alpha_divisor(2)
    zero = a - a
    assert zero.ray_values == {}
    double = a + a
    assert double.value(0b001) == -2
    assert (-a).value(0b011) == 1
    with pytest.raises(ValueError):
        a + alpha_divisor(3)


def test_divisor_json():
    d = PLDivisor(2, {0b010: 3, 0b001: -1})
    assert d.to_json() == {"rays": {"1": -1, "2": 3}}


def test_cremona_pullback_divisor():
    beta = cremona_pullback_divisor(alpha_divisor(2))
    # Value on a ray is alpha on the complement: -1 exactly off 0.
    assert beta.ray_values == {0b110: -1, 0b100: -1, 0b010: -1}
    again = cremona_pullback_divisor(beta)
    assert again.ray_values == alpha_divisor(2).ray_values


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_alpha_evaluates_to_the_minimum_formula(data):
    # Pick a flag cone in a small fan and a nonnegative rational point in
    # it; the linear extension of alpha must equal min(0, x_1, ..., x_n).
    n = data.draw(st.integers(1, 3))
    support = permutohedral_weight(n, 0).support()
    flag = data.draw(st.sampled_from(support))
    coeffs = [Fraction(data.draw(st.integers(0, 5)), data.draw(st.integers(1, 3)))
              for _ in flag]
    from matfan.fan import flag_generators
    gens = flag_generators(n, flag)
    point = [sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n)]
    assert evaluate_in_cone(alpha_divisor(n), flag, coeffs) == min_formula(point)


def test_evaluate_in_cone_shape_check():
    with pytest.raises(ValueError):
        evaluate_in_cone(alpha_divisor(2), (0b001,), (1, 2))


# -- cup products ---------------------------------------------------------------


def test_nef_values_of_alpha_are_zero_one():
    for n in (1, 2, 3):
        w = nef_values(alpha_divisor(n))
        assert set(w.weights.values()) <= {1}
        assert check_balancing(w) == []


def test_nef_checks():
    for n in (1, 2, 3):
        a = alpha_divisor(n)
        assert nef_check(a)
        assert nef_check(cremona_pullback_divisor(a))
        assert not nef_check(-a)
    assert nef_check(PLDivisor(0, {}))


def test_cup_is_linear_in_the_divisor():
    w = bergman_weight(corpus.build("k4"))
    a = alpha_divisor(w.n)
    b = cremona_pullback_divisor(a)
    both = divisor_cup(a + b, w)
    assert both == divisor_cup(a, w) + divisor_cup(b, w)


def test_cups_commute():
    w = bergman_weight(corpus.build("u-3-5"))
    a = alpha_divisor(w.n)
    b = cremona_pullback_divisor(a)
    assert divisor_cup(a, divisor_cup(b, w)) == divisor_cup(b, divisor_cup(a, w))


def test_cup_truncation_identity():
    for name in ("k4", "fano", "u-3-6"):
        matroid = corpus.build(name)
        r = matroid.full_rank - 1
        w = bergman_weight(matroid)
        cupped = divisor_cup(alpha_divisor(w.n), w)
        assert cupped == bergman_weight(matroid.truncate(r - 1))


def test_alpha_chain_ends_at_the_point():
    n = 2
    w = fundamental_weight(n)
    a = alpha_divisor(n)
    for _ in range(n):
        w = divisor_cup(a, w)
    assert w.weights == {(): 1}


def test_cup_of_top_codimension_raises():
    with pytest.raises(ValueError):
        divisor_cup(alpha_divisor(2), MinkowskiWeight(2, 2, {(): 1}))
    with pytest.raises(ValueError):
        divisor_cup(alpha_divisor(3), fundamental_weight(2))


def test_cup_detects_unbalanced_weight():
    lone = MinkowskiWeight(2, 0, {(0b010, 0b110): 1})
    with pytest.raises(NotBalancedError) as exc:
        divisor_cup(alpha_divisor(2), lone)
    assert len(exc.value.tau) == 1


# -- displacement vectors ---------------------------------------------------------


def test_default_displacement():
    v = default_displacement(3)
    assert v.coords == (Fraction(1), Fraction(2), Fraction(3))
    assert not v.certified


def test_perturbed_displacement_window():
    rng = random.Random(11)
    v = perturbed_displacement(4, rng)
    for i, c in enumerate(v.coords, start=1):
        assert Fraction(i) < c < Fraction(i + 1)
    assert all(a < b for a, b in zip(v.coords, v.coords[1:]))


def test_perturbed_displacement_is_seed_deterministic():
    a = perturbed_displacement(3, random.Random(5))
    b = perturbed_displacement(3, random.Random(5))
    assert a.coords == b.coords


# -- single-pair intersections ------------------------------------------------------


def frac(*xs):
    return tuple(Fraction(x) for x in xs)


def test_intersect_two_dim_cone_with_point():
    # Cone of the flag ({2}, {1,2}) is x2 >= x1 >= 0; (1,2) is interior.
    hit = cone_displacement_intersect(2, (0b100, 0b110), (), frac(1, 2))
    assert hit == (frac(1, 2), 1)
    # The mirror flag needs the mirrored displacement.
    hit = cone_displacement_intersect(2, (0b010, 0b110), (), frac(2, 1))
    assert hit == (frac(2, 1), 1)
    assert cone_displacement_intersect(2, (0b010, 0b110), (), frac(1, 2)) is None


def test_intersect_boundary_tie_is_degenerate():
    with pytest.raises(DegenerateDisplacementError):
        cone_displacement_intersect(2, (0b010, 0b110), (), frac(1, 1))


def test_intersect_singular_cases():
    # Same ray on both sides: the system is singular; whether it is
    # degenerate depends on the displacement hitting the common line.
    with pytest.raises(DegenerateDisplacementError):
        cone_displacement_intersect(2, (0b010,), (0b010,), frac(1, 0))
    assert cone_displacement_intersect(2, (0b010,), (0b010,), frac(1, 1)) is None


def test_intersect_ray_against_ray():
    # sigma = ray of {1}, tau = ray of {0,1}; tau + v crosses sigma.
    hit = cone_displacement_intersect(2, (0b010,), (0b011,), frac(1, 2))
    assert hit is not None
    point, index = hit
    assert index == 1
    # The point lies on the sigma ray: second coordinate zero.
    assert point[1] == 0


def test_intersect_trivial_dimension():
    assert cone_displacement_intersect(0, (), (), ()) == ((), 1)


def test_intersect_validates_dimensions():
    with pytest.raises(ValueError):
        cone_displacement_intersect(2, (0b010,), (), frac(1, 2))


# -- full pairings ---------------------------------------------------------------


def test_degree_pairing_shape_checks():
    w1 = permutohedral_weight(2, 1)
    with pytest.raises(ValueError):
        degree_pairing(w1, permutohedral_weight(3, 2), default_displacement(2))
    with pytest.raises(ValueError):
        degree_pairing(w1, permutohedral_weight(2, 0), default_displacement(2))
    with pytest.raises(ValueError):
        degree_pairing(w1, permutohedral_weight(2, 1), default_displacement(3))


def test_pairing_line_by_hand():
    # Level 1 of the three-point line: two transversal pairs, index 1.
    w1, w2 = displacement_weights(corpus.build("u-2-3"), 1)
    terms = pairing_terms(w1, w2, default_displacement(2))
    assert len(terms) == 2
    assert {t.sigma for t in terms} == {(0b010,), (0b100,)}
    assert all(t.index == 1 for t in terms)
    assert degree_pairing(w1, w2, default_displacement(2)) == 2


def test_pairing_level_zero_point_is_the_displacement():
    w1, w2 = displacement_weights(corpus.build("k4"), 0)
    v = default_displacement(5)
    terms = pairing_terms(w1, w2, v)
    assert len(terms) == 1
    assert terms[0].tau == ()
    assert terms[0].point == v.coords
    assert terms[0].index == 1


def test_pairing_certifies_the_vector():
    w1, w2 = displacement_weights(corpus.build("u-2-3"), 1)
    v = default_displacement(2)
    assert not v.certified
    degree_pairing(w1, w2, v)
    assert v.certified


def test_certified_pairing_retries_past_degeneracy():
    # A single two-dimensional cone against the origin, displaced onto
    # its boundary: the first sweep is degenerate, the retry resolves it
    # robustly to an empty intersection.
    w1 = MinkowskiWeight(2, 0, {(0b010, 0b110): 1})
    w2 = MinkowskiWeight(2, 2, {(): 1})
    bad = DisplacementVector(frac(1, 1))
    with pytest.raises(DegenerateDisplacementError):
        degree_pairing(w1, w2, bad)
    degree, used = certified_degree_pairing(w1, w2, DisplacementVector(frac(1, 1)), seed=0)
    assert degree == 0
    assert used.certified
    assert used.coords != (Fraction(1), Fraction(1))


def test_certified_pairing_is_deterministic():
    w1, w2 = displacement_weights(corpus.build("fano"), 1)
    a = certified_degree_pairing(w1, w2, seed=9)
    b = certified_degree_pairing(w1, w2, seed=9)
    assert a[0] == b[0] == 6
    assert a[1].coords == b[1].coords


def test_displacement_weights_shapes():
    m = corpus.build("k4")
    for k in range(3):
        w1, w2 = displacement_weights(m, k)
        assert w1.codim + w2.codim == w1.n == w2.n
    with pytest.raises(ValueError):
        displacement_weights(m, 3)


# -- the two geometric coefficient routes ------------------------------------------


GEOMETRY_SAMPLE = ["u-1-2", "u-2-3", "u-2-5", "u-3-6", "free-4", "k4",
                   "fano", "non-fano", "rt-whirl", "rt-one-line"]


@pytest.mark.parametrize("name", GEOMETRY_SAMPLE)
def test_displacement_route_matches_mobius(name):
    matroid = corpus.build(name)
    assert mu_vector_displacement(matroid) == mu_vector_mobius(matroid)


@pytest.mark.parametrize("name", GEOMETRY_SAMPLE)
def test_divisor_route_matches_mobius(name):
    matroid = corpus.build(name)
    assert mu_vector_divisors(matroid) == mu_vector_mobius(matroid)


def test_both_routes_on_the_rational_configuration():
    m = corpus.build("non-fano")
    assert mu_vector_divisors(m) == (1, 6, 9)
    assert mu_vector_displacement(m) == (1, 6, 9)


def test_mu_level_bounds():
    m = corpus.build("u-2-3")
    with pytest.raises(ValueError):
        mu_via_divisors(m, 2)
    with pytest.raises(ValueError):
        mu_via_displacement(m, -1)


def test_explicit_displacement_vector_is_used():
    m = corpus.build("u-2-3")
    v = DisplacementVector(frac(Fraction(3, 2), Fraction(7, 3)))
    assert mu_via_displacement(m, 1, v=v) == 2


def test_pairing_respects_weight_multiplicities():
    # Doubling one side doubles the degree.
    w1, w2 = displacement_weights(corpus.build("u-2-3"), 1)
    doubled = MinkowskiWeight(w1.n, w1.codim,
                              {f: 2 * c for f, c in w1.items()})
    v = default_displacement(2)
    assert degree_pairing(doubled, w2, v) == 2 * degree_pairing(w1, w2, v)
