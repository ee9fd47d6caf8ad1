import random
from fractions import Fraction

import pytest

from rees_ag.artinian import (
    LocalIdeal,
    _truncated_level,
    colon,
    contains_ideal,
    ideal_combine,
    ideal_equal,
    ideal_product,
    ideal_sum,
    linear_rank,
    local_length,
    maximal_ideal,
    membership,
    mu,
    mu_subquotient,
    power_of_maximal,
    socle_dimension,
    socle_ideal,
    stabilized_quotient,
)
from rees_ag.errors import ContainmentError, HypothesisError, NotPrimaryError, RingMismatchError
from rees_ag.expr_parser import parse_polynomial
from rees_ag.polyring import RingDescriptor


def ideal(ring, *texts):
    return LocalIdeal.from_strings(ring, texts)


def test_stabilized_quotient_of_maximal_ideal(xyz):
    quotient = stabilized_quotient(maximal_ideal(xyz))
    assert quotient.length == 1
    assert quotient.basis == ((0, 0, 0),)


def test_stabilized_quotient_basis(xyz):
    quotient = stabilized_quotient(ideal(xyz, "x", "y^2", "z^2"))
    assert quotient.length == 4
    assert set(quotient.basis) == {(0, 0, 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)}
    assert quotient.basis[0] == (0, 0, 0)
    assert quotient.basis[-1] == (0, 1, 1)


def test_not_primary_raises(xyz):
    with pytest.raises(NotPrimaryError):
        stabilized_quotient(ideal(xyz, "x", "y"), nmax=10)


def test_local_length(xyz):
    assert local_length(ideal(xyz, "x", "y^2", "z^2")) == 4
    assert local_length(ideal(xyz, "x", "y^2", "z^3")) == 6
    assert local_length(maximal_ideal(xyz)) == 1
    assert local_length(ideal(xyz, "x^2", "y^2", "z^2")) == 8
    assert local_length(ideal(xyz, "x", "y^2 + z^3", "z^2")) == 4


def test_length_over_prime_field():
    ring = RingDescriptor(("x", "y", "z"), characteristic=2)
    assert local_length(LocalIdeal.from_strings(ring, ["x", "y^2", "z^2"])) == 4
    assert local_length(LocalIdeal.from_strings(ring, ["x^2 + y^2", "x*y", "z"])) == 4


def test_membership(xyz):
    q = ideal(xyz, "x", "y^2", "z^2")
    assert not membership(parse_polynomial("y*z", xyz), q)
    assert membership(parse_polynomial("y^2", xyz), q)
    assert membership(parse_polynomial("x^2*(1 + y + z^5)", xyz), q)
    assert membership(parse_polynomial("y*z^2 - 3*x*y", xyz), q)


def test_normal_form_and_coordinates(xyz):
    quotient = stabilized_quotient(ideal(xyz, "x", "y^2", "z^2"))
    f = parse_polynomial("x + y*z + 2*z + y^3", xyz)
    assert quotient.normal_form(f) == parse_polynomial("y*z + 2*z", xyz)
    coords = dict(zip(quotient.basis, quotient.coordinates(f)))
    assert coords[(0, 1, 1)] == 1
    assert coords[(0, 0, 1)] == 2
    assert coords[(0, 0, 0)] == 0


def test_ideal_combine(xyz):
    q = ideal(xyz, "x", "y^2", "z^2")
    product = ideal_combine("product", q, q)
    assert len(product) == 6
    assert {str(g) for g in product.generators} == {"x^2", "x*y^2", "x*z^2", "y^4", "y^2*z^2", "z^4"}
    assert ideal_product(q, LocalIdeal(xyz, ())).is_zero()
    i = ideal(xyz, "x", "y^2", "y*z", "z^2")
    assert ideal_equal(ideal_sum(i, power_of_maximal(xyz, 2)), ideal_sum(ideal(xyz, "x"), power_of_maximal(xyz, 2)))
    with pytest.raises(RingMismatchError):
        ideal_sum(q, maximal_ideal(RingDescriptor(("x", "y"))))


def test_colon_by_maximal_ideal(xyz):
    q = ideal(xyz, "x", "y^2", "z^2")
    assert ideal_equal(colon(q, maximal_ideal(xyz)), ideal(xyz, "x", "y^2", "y*z", "z^2"))
    q3 = ideal(xyz, "x", "y^2", "z^3")
    assert ideal_equal(colon(q3, maximal_ideal(xyz)), ideal(xyz, "x", "y^2", "y*z^2", "z^3"))


def test_colon_edge_cases(xyz):
    q = ideal(xyz, "x", "y^2", "z^2")
    assert colon(q, q).is_unit()
    assert colon(q, LocalIdeal(xyz, ())).is_unit()
    assert ideal_equal(colon(q, ideal(xyz, "y")), ideal(xyz, "x", "y", "z^2"))
    ring = RingDescriptor(("x", "y"))
    assert ideal_equal(colon(ideal(ring, "x^2", "y^2"), ideal(ring, "x")), ideal(ring, "x", "y^2"))


def test_colon_with_non_monomial_generators(xyz):
    q = ideal(xyz, "x", "y^2 + z^3", "z^2")
    assert ideal_equal(colon(q, maximal_ideal(xyz)), ideal(xyz, "x", "y^2", "y*z", "z^2"))


def test_socle_ideal(xyz):
    q = ideal(xyz, "x", "y^2", "z^2")
    socle = socle_ideal(q)
    assert local_length(q) == 4
    assert local_length(socle) == 3
    assert ideal_equal(socle_ideal(ideal(xyz, "x", "y", "z^2")), maximal_ideal(xyz))
    with pytest.raises(HypothesisError, match="unit ideal"):
        socle_ideal(maximal_ideal(xyz))


def test_socle_dimension_of_complete_intersections(xyz):
    assert socle_dimension(ideal(xyz, "x", "y^2", "z^2")) == 1
    assert socle_dimension(ideal(xyz, "x^2", "y^2 + x*z", "z^2")) == 1
    assert socle_dimension(power_of_maximal(xyz, 2)) == 3


def test_mu(xyz):
    assert mu(ideal(xyz, "x", "y^2", "y*z", "z^2")) == 4
    assert mu(power_of_maximal(xyz, 2)) == 6
    assert mu(maximal_ideal(xyz)) == 3
    assert mu(ideal(xyz, "x", "x + y^2", "y^2", "z^2")) == 3


def test_mu_subquotient(xyz):
    m = maximal_ideal(xyz)
    x_plus_m2 = ideal_sum(ideal(xyz, "x"), power_of_maximal(xyz, 2))
    assert mu_subquotient(m, x_plus_m2) == 2
    assert mu_subquotient(m, m) == 0
    assert mu_subquotient(m, power_of_maximal(xyz, 2)) == 3
    with pytest.raises(ContainmentError) as excinfo:
        mu_subquotient(power_of_maximal(xyz, 2), m)
    assert excinfo.value.generator is not None


def test_ideal_equal_and_containment(xyz):
    q = ideal(xyz, "x", "y^2", "z^2")
    assert ideal_equal(q, ideal(xyz, "z^2", "x", "y^2"))
    assert not ideal_equal(q, ideal(xyz, "x", "y^2", "z^3"))
    assert ideal_equal(ideal(xyz, "x", "y^2", "y*z", "z^2"), ideal_sum(ideal(xyz, "x"), power_of_maximal(xyz, 2)))
    assert contains_ideal(q, ideal(xyz, "x", "z^3"))
    assert not contains_ideal(q, ideal(xyz, "y*z"))


def test_linear_rank(xyz):
    assert linear_rank(maximal_ideal(xyz)) == 3
    assert linear_rank(ideal(xyz, "x", "y^2", "z^2")) == 1
    assert linear_rank(ideal(xyz, "x + y^2", "y + z^3", "z^2")) == 2
    assert linear_rank(ideal(xyz, "x + y", "2*x + 2*y + z^2")) == 1
    assert linear_rank(ideal(xyz, "x^2", "y^2", "z^2")) == 0


@pytest.mark.parametrize(
    "texts",
    [("x", "y^2", "z^3"), ("x^2 + y*z", "y^2", "z^2"), ("x^2", "y^3", "z^2 + x*y"), ("x*y", "x^2 + y^2", "z^2")],
)
def test_length_is_stable_past_the_truncation(xyz, texts):
    quotient = stabilized_quotient(ideal(xyz, *texts))
    for extra in (1, 2, 3):
        assert _truncated_level(quotient.ideal, quotient.N + extra).length == quotient.length


def test_unit_rescaling_preserves_the_ideal(xyz):
    rng = random.Random(5)
    x, y, z = xyz.gens()
    bases = [ideal(xyz, "x", "y^2", "z^2"), ideal(xyz, "x^2 + y*z", "y^2", "z^2"), ideal(xyz, "x^2", "y^3", "z^2 + x*y")]
    elements = [parse_polynomial(t, xyz) for t in ("x*y", "y*z", "z^3", "x*z + y^2", "x*y^2*z", "y^2 - z^2")]
    for base in bases:
        scaled_gens = []
        for g in base.generators:
            constant = Fraction(rng.choice([-3, -1, 2, 5]), rng.randint(1, 3))
            unit = xyz.one() + rng.choice([x, y, z, x * y, z**2])
            scaled_gens.append(g.scale(constant) * unit)
        scaled = LocalIdeal(xyz, tuple(scaled_gens))
        assert ideal_equal(base, scaled)
        assert local_length(base) == local_length(scaled)
        for f in elements:
            assert membership(f, base) == membership(f, scaled)


def test_colon_is_antitone_in_the_divisor(xyz):
    a = ideal(xyz, "x^2", "y^2", "z^2")
    divisors = [ideal(xyz, "x"), ideal(xyz, "x", "y"), maximal_ideal(xyz)]
    colons = [colon(a, b) for b in divisors]
    for bigger, smaller in zip(colons, colons[1:]):
        assert contains_ideal(bigger, smaller)
    assert not contains_ideal(colons[2], colons[0])


def test_colon_is_monotone_in_the_dividend(xyz):
    small = ideal(xyz, "x^2", "y^3", "z^3")
    large = ideal(xyz, "x^2", "y^2", "z^2")
    assert contains_ideal(large, small)
    for b in (ideal(xyz, "x", "y"), maximal_ideal(xyz), ideal(xyz, "y*z")):
        assert contains_ideal(colon(large, b), colon(small, b))
