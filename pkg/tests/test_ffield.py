import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclocover.ffield import (
    FieldTower,
    TowerMismatchError,
    find_irreducible,
    frobenius,
    is_irreducible,
    minimal_polynomial_degree,
    mult_order,
    norm_solutions,
    norm_to_subfield,
    ord_mod,
    poly_mul,
    primitive_lth_root,
    solve_norm_equation,
)


def _monic_polys(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def brute_irreducible(f, p):
    """Oracle: no monic factor of degree 1..deg/2 divides f (checked by multiplying out)."""
    k = len(f) - 1
    target = tuple(x % p for x in f)
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(p, d):
            for h in _monic_polys(p, k - d):
                if tuple(poly_mul(g, h, p)) == target:
                    return False
    return True


SMALL_TOWERS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (7, 3), (11, 2), (13, 1)]


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)])
def test_find_irreducible_matches_brute_force(p, k):
    f = find_irreducible(p, k)
    assert len(f) == k + 1 and f[-1] == 1
    assert brute_irreducible(list(f), p)
    # every smaller code is reducible, so the choice is the first in scan order
    for code in range(sum(c * p**i for i, c in enumerate(f[:-1]))):
        low = [(code // p**i) % p for i in range(k)]
        assert not brute_irreducible(low + [1], p)


def test_find_irreducible_fixed_values():
    assert find_irreducible(2, 1) == (0, 1)
    assert find_irreducible(2, 2) == (1, 1, 1)
    f = find_irreducible(7, 3)
    assert all(sum(c * x**i for i, c in enumerate(f)) % 7 for x in range(7))


def test_find_irreducible_rejects_composite():
    with pytest.raises(ValueError):
        find_irreducible(6, 2)


@pytest.mark.parametrize("p,d", [(2, 2), (3, 3), (5, 2), (2, 5)])
def test_rabin_agrees_with_brute_force_exhaustively(p, d):
    for f in _monic_polys(p, d):
        assert is_irreducible(f, p) == brute_irreducible(f, p)


def test_towers_are_interned():
    assert FieldTower(7, 2) is FieldTower(7, 2)
    assert FieldTower(7, 2).size == 49


def test_frobenius_examples():
    F4 = FieldTower(2, 2)
    w = F4.gen()
    assert w * w + w + 1 == 0
    assert frobenius(w, 1) == w * w == w + 1
    F7 = FieldTower(7, 1)
    for x in F7.elements():
        assert frobenius(x, 3) == x


@pytest.mark.parametrize("p,k", SMALL_TOWERS)
def test_frobenius_has_order_k(p, k):
    F = FieldTower(p, k)
    for x in F.elements():
        assert frobenius(frobenius(x, 1), k - 1) == x
        assert x ** (p**k) == x


def test_mult_order_examples():
    F4 = FieldTower(2, 2)
    assert mult_order(F4.one()) == 1
    assert mult_order(F4.gen()) == 3
    F49 = FieldTower(7, 2)
    g = F49.primitive_element
    # oracle: scan powers until 1
    x, n = g, 1
    while x != 1:
        x, n = x * g, n + 1
    assert n == 48 == mult_order(g)
    with pytest.raises(ValueError):
        mult_order(F49.zero())


@pytest.mark.parametrize(
    "l,p", [(3, 2), (3, 7), (5, 19), (5, 2), (7, 2), (7, 3), (7, 13), (11, 3), (13, 5)]
)
def test_primitive_lth_root(l, p):
    e = ord_mod(p, l)
    F = FieldTower(p, e)
    z = primitive_lth_root(l, F)
    assert z != 1 and z**l == 1
    assert minimal_polynomial_degree(z) == e


def test_primitive_lth_root_examples():
    w = primitive_lth_root(3, FieldTower(2, 2))
    assert w * w + w + 1 == 0
    assert primitive_lth_root(3, FieldTower(7, 1)).code in (2, 4)
    with pytest.raises(ValueError):
        primitive_lth_root(5, FieldTower(19, 1))
    with pytest.raises(ValueError):
        primitive_lth_root(3, FieldTower(3, 1))


def test_ord_mod():
    assert ord_mod(7, 3) == 1
    assert ord_mod(2, 3) == 2
    assert ord_mod(2, 5) == 4
    with pytest.raises(ValueError):
        ord_mod(3, 3)
    with pytest.raises(ValueError):
        ord_mod(4, 3)


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (5, 2), (2, 4), (3, 4), (7, 2)])
def test_norm_equation_all_targets(p, k):
    F = FieldTower(p, k)
    q = p ** (k // 2)
    sub = FieldTower(p, k // 2)
    for nu in sub.elements():
        if nu.is_zero():
            with pytest.raises(ValueError):
                solve_norm_equation(nu, F)
            continue
        lam = solve_norm_equation(nu, F)
        assert lam * lam**q == F.embed(nu)
        # oracle: exhaustive solution count is q + 1
        brute = [x for x in F.elements() if not x.is_zero() and x ** (q + 1) == F.embed(nu)]
        assert sorted(x.code for x in brute) == sorted(x.code for x in norm_solutions(nu, F))
        assert len(brute) == q + 1


def test_norm_equation_examples():
    F4 = FieldTower(2, 2)
    assert solve_norm_equation(F4.one(), F4) ** 3 == 1
    assert all(x**3 == 1 for x in norm_solutions(F4.one(), F4))
    F9 = FieldTower(3, 2)
    lam = solve_norm_equation(F9(2), F9)
    assert lam**4 == 2


def test_norm_to_subfield():
    F4 = FieldTower(2, 2)
    for x in F4.elements():
        n = norm_to_subfield(x, 1)
        assert n.tower is FieldTower(2, 1)
        assert n == (0 if x.is_zero() else 1)
        assert norm_to_subfield(x, 2) == x
    F49 = FieldTower(7, 2)
    for x in F49.elements():
        n = norm_to_subfield(x, 1)
        assert F49.embed(n) == x**8
        assert n**7 == n
    with pytest.raises(ValueError):
        norm_to_subfield(F49.one(), 3)


def test_subfield_embedding_is_a_ring_map():
    F = FieldTower(3, 4)
    small, table = F.embedding(2)
    assert len(set(table)) == small.size
    for a in small.elements():
        for b in small.elements():
            assert F.embed(a + b) == F.embed(a) + F.embed(b)
            assert F.embed(a * b) == F.embed(a) * F.embed(b)
        assert F.restrict(F.embed(a), 2) == a
        assert frobenius(F.embed(a), 2) == F.embed(a)


def test_cross_tower_arithmetic_is_an_error():
    with pytest.raises(TowerMismatchError):
        FieldTower(2, 2).one() + FieldTower(2, 4).one()
    with pytest.raises(TowerMismatchError):
        FieldTower(3, 1).one() * FieldTower(3, 2).one()


def test_table_ops_agree_with_polynomial_arithmetic():
    for p, k in SMALL_TOWERS[:8]:
        F = FieldTower(p, k)
        ops = F.ops
        for a in F.elements():
            for b in F.elements():
                assert ops.add(a.code, b.code) == (a + b).code
                assert ops.mul(a.code, b.code) == (a * b).code
                assert ops.sub(a.code, b.code) == (a - b).code
            if not a.is_zero():
                assert ops.inv(a.code) == a.inverse().code


def _element(draw, tower):
    return tower.from_code(draw(st.integers(0, tower.size - 1)))


towers = st.sampled_from([(2, 1), (2, 2), (2, 8), (3, 5), (5, 4), (7, 3), (13, 2), (2, 20), (1021, 1)])


@st.composite
def triples(draw):
    F = FieldTower(*draw(towers))
    return _element(draw, F), _element(draw, F), _element(draw, F)


@settings(max_examples=200, deadline=None)
@given(triples())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == 0
    if not x.is_zero():
        assert x * x.inverse() == 1


@settings(max_examples=200, deadline=None)
@given(triples())
def test_frobenius_is_a_ring_homomorphism(xyz):
    x, y, _ = xyz
    assert frobenius(x + y, 1) == frobenius(x, 1) + frobenius(y, 1)
    assert frobenius(x * y, 1) == frobenius(x, 1) * frobenius(y, 1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (5, 2), (7, 2), (2, 6), (3, 6), (11, 2), (2, 20)]), st.data())
def test_norm_equation_property(tower, data):
    F = FieldTower(*tower)
    sub = FieldTower(F.p, F.k // 2)
    nu = sub.from_code(data.draw(st.integers(1, sub.size - 1)))
    lam = solve_norm_equation(nu, F)
    q = sub.size
    assert lam * lam**q == F.embed(nu)
