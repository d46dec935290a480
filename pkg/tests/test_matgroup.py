import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclocover import matgroup
from cyclocover.acceptance import random_generator_set
from cyclocover.ffield import FieldTower, TowerMismatchError, norm_solutions
from cyclocover.formsolve import SesquiForm, check_unitary, multiplier
from cyclocover.matgroup import (
    CapExceeded,
    GroupTarget,
    bfs_enumerate,
    group_order,
    membership_sll,
    membership_slu,
    monodromy_rep,
    pgu_normalize,
    psl_class,
    psu_class,
    schreier_sims_order,
    verify_image,
)
from cyclocover.matrix import MatrixFq


def brute_sl_count(p, m):
    F = FieldTower(p, 1)
    return sum(
        1 for data in itertools.product(range(p), repeat=m * m) if MatrixFq(F, m, data).det() == 1
    )


def brute_unitary_count(q_sq_tower, m, det_one=False):
    """Oracle: count ordered orthonormal bases of F_{q^2}^m for the standard Hermitian form."""
    F = q_sq_tower
    q = F.p ** (F.k // 2)
    vecs = [tuple(v) for v in itertools.product(list(F.elements()), repeat=m)]

    def herm(u, v):
        return sum((a * b**q for a, b in zip(u, v)), F.zero())

    units = [v for v in vecs if herm(v, v) == 1]
    count = 0

    def extend(rows):
        nonlocal count
        if len(rows) == m:
            if det_one:
                A = MatrixFq.from_rows(F, rows)
                count += A.det() == 1
            else:
                count += 1
            return
        for v in units:
            if all(herm(v, r).is_zero() for r in rows):
                extend(rows + [v])

    extend([])
    return count


def test_group_order_examples():
    assert group_order("SL", 2, 3) == 24 == brute_sl_count(3, 2)
    assert group_order("GU", 3, 2) == 648 == brute_unitary_count(FieldTower(2, 2), 3)
    assert group_order("SU", 3, 2) == 216 == brute_unitary_count(FieldTower(2, 2), 3, det_one=True)
    assert group_order("PSL", 2, 7) == 168 == brute_sl_count(7, 2) // 2
    assert group_order("PSU", 3, 2) == 72
    assert group_order("SlU", 3, 2, l=3) == 648
    assert group_order("SlL", 3, 7, l=3) == 16_892_064
    assert 3 * group_order("SU", 3, 5) == 1_134_000 == group_order("SlU", 3, 5, l=3)


def test_group_order_unitary_dim2_brute():
    assert group_order("GU", 2, 3) == brute_unitary_count(FieldTower(3, 2), 2) == 96


def test_group_order_rejects():
    with pytest.raises(ValueError):
        group_order("XL", 2, 3)
    with pytest.raises(ValueError):
        group_order("SlL", 2, 3)


@pytest.mark.parametrize("m,q", [(2, 2), (2, 3), (3, 2), (2, 4), (4, 3), (3, 7)])
def test_order_identities(m, q):
    assert group_order("GL", m, q) == group_order("SL", m, q) * (q - 1)
    assert group_order("PGL", m, q) == group_order("SL", m, q)
    assert group_order("SL", m, q) == group_order("PSL", m, q) * math.gcd(m, q - 1)
    assert group_order("GU", m, q) == group_order("SU", m, q) * (q + 1)
    assert group_order("PGU", m, q) == group_order("PU", m, q) == group_order("SU", m, q)
    assert group_order("SU", m, q) == group_order("PSU", m, q) * math.gcd(m, q + 1)
    assert GroupTarget("SlU", m, q, 3).order == group_order("SU", m, q) * math.gcd(3, q + 1)


def test_centers_by_brute_force():
    F7 = FieldTower(7, 1)
    center = [c for c in F7.elements() if not c.is_zero() and c**2 == 1]
    assert group_order("SL", 2, 7) // len(center) == 168
    F4 = FieldTower(2, 2)
    center = [c for c in F4.elements() if not c.is_zero() and c**3 == 1 and c * c**2 == 1]
    assert group_order("SU", 3, 2) // len(center) == 72


def test_bfs_small_examples():
    F4 = FieldTower(2, 2)
    assert bfs_enumerate([MatrixFq.identity(F4, 2)]) == 1
    w = F4.gen()
    assert bfs_enumerate([MatrixFq.diagonal([w, F4.one()])]) == 3


def _sl23_gens():
    F3 = FieldTower(3, 1)
    return [MatrixFq.from_rows(F3, [[1, 1], [0, 1]]), MatrixFq.from_rows(F3, [[1, 0], [1, 1]])]


def test_sl23_both_methods():
    assert bfs_enumerate(_sl23_gens()) == 24 == schreier_sims_order(_sl23_gens())


def test_cap_exceeded():
    with pytest.raises(CapExceeded) as info:
        bfs_enumerate(_sl23_gens(), cap=10)
    assert info.value.count > 10


def test_mixed_towers_rejected():
    with pytest.raises(TowerMismatchError):
        bfs_enumerate([MatrixFq.identity(FieldTower(2, 2), 2), MatrixFq.identity(FieldTower(3, 1), 2)])


def test_flagship_bfs_order():
    rep = monodromy_rep(3, 2, 4)
    assert bfs_enumerate(rep.pure_gen_images.values()) == 648


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_bfs_and_schreier_sims_agree(seed):
    gens = random_generator_set(seed)
    assert bfs_enumerate(gens, cap=200_000) == schreier_sims_order(gens, seed=seed)


def test_schreier_sims_independent_of_seed():
    gens = list(monodromy_rep(3, 5, 4).pure_gen_images.values())
    assert {schreier_sims_order(gens, seed=s) for s in (0, 1, 2)} == {1_134_000}


def test_membership_examples():
    F7 = FieldTower(7, 1)
    ident = MatrixFq.identity(F7, 3)
    assert membership_sll(ident, 3, 7)
    t = F7(2)  # order 3 mod 7
    assert membership_sll(MatrixFq.diagonal([t, F7.one(), F7.one()]), 3, 7)
    g = F7.primitive_element
    assert not membership_sll(MatrixFq.diagonal([g, F7.one(), F7.one()]), 3, 7)
    with pytest.raises(TowerMismatchError):
        membership_sll(ident, 3, 49)
    F4 = FieldTower(2, 2)
    form = SesquiForm.hermitian_identity(F4, 3)
    assert membership_slu(MatrixFq.identity(F4, 3), 3, form)


def _unitary_2x2(F):
    """Oracle list of all 2x2 unitary matrices for the standard form, by exhaustion."""
    form = SesquiForm.hermitian_identity(F, 2)
    out = []
    for data in itertools.product(range(F.size), repeat=4):
        A = MatrixFq(F, 2, data)
        if check_unitary(A, form):
            out.append(A)
    return form, out


@pytest.mark.parametrize("p", [2, 3])
def test_pgu_normalize_on_all_similitudes(p):
    F = FieldTower(p, 2)
    q = p
    form, unitary = _unitary_2x2(F)
    assert len(unitary) == group_order("GU", 2, q)
    scalars = [c for c in F.elements() if not c.is_zero()]
    for U in unitary[:: max(1, len(unitary) // 12)]:
        for c in scalars:
            A = U.scale(c)
            nu = multiplier(A, form)
            assert nu == c * c**q
            B = pgu_normalize(A, nu, form)
            assert check_unitary(B, form)
            classes = {
                psu_class(pgu_normalize(A, nu, form, lam=lam), 2, q, form)
                for lam in norm_solutions(nu, F)
            }
            assert len(classes) == 1


def test_pgu_normalize_examples():
    F9 = FieldTower(3, 2)
    form = SesquiForm.hermitian_identity(F9, 2)
    lam = F9.primitive_element
    nu = lam * lam**3
    A = MatrixFq.identity(F9, 2).scale(lam)
    B = pgu_normalize(A, nu, form)
    assert multiplier(B, form) == 1
    same = pgu_normalize(MatrixFq.identity(F9, 2), F9.one(), form)
    assert same.entry(0, 1).is_zero() and same.entry(0, 0) ** 4 == 1
    with pytest.raises(ValueError):
        pgu_normalize(A, F9.zero(), form)
    with pytest.raises(ValueError):
        pgu_normalize(A, F9.one(), form)


@pytest.mark.parametrize("q,tower", [(2, (2, 2)), (3, (3, 2)), (4, (2, 4)), (5, (5, 2))])
def test_psu_class_independent_of_lambda(q, tower):
    F = FieldTower(*tower)
    for m in (2, 3, 4):
        form = SesquiForm.hermitian_identity(F, m)
        for c in [x for x in F.elements() if not x.is_zero()][:6]:
            A = MatrixFq.identity(F, m).scale(c)
            nu = multiplier(A, form)
            classes = {psu_class(pgu_normalize(A, nu, form, lam=lam), m, q) for lam in norm_solutions(nu, F)}
            assert len(classes) == 1


def test_psu_class_examples():
    F = FieldTower(5, 2)
    assert psu_class(MatrixFq.identity(F, 4), 4, 5) == 0
    xi = F.primitive_element ** (24 // 3)  # order 3, inside mu_6
    assert psu_class(MatrixFq.diagonal([xi] + [F.one()] * 3), 4, 5) == 0
    minus = MatrixFq.diagonal([-F.one()] + [F.one()] * 3)
    assert psu_class(minus, 4, 5) != 0
    with pytest.raises(ValueError):
        psu_class(MatrixFq.diagonal([F.primitive_element] + [F.one()] * 3), 4, 5)
    with pytest.raises(TowerMismatchError):
        psu_class(MatrixFq.identity(FieldTower(5, 1), 4), 4, 5)


def test_minus_one_class_follows_two_adic_rule():
    """diag(-1,1,...) is nontrivial in mu_{q+1}/mu_{q+1}^gcd(m,q+1) iff v2(m) >= v2(q+1)."""

    def v2(n):
        return (n & -n).bit_length() - 1

    for q, tower in [(3, (3, 2)), (5, (5, 2)), (7, (7, 2)), (9, (3, 4)), (11, (11, 2))]:
        F = FieldTower(*tower)
        for m in (2, 4, 6, 8):
            A = MatrixFq.diagonal([-F.one()] + [F.one()] * (m - 1))
            assert (psu_class(A, m, q) != 0) == (v2(m) >= v2(q + 1))


def test_psl_class_examples():
    F7 = FieldTower(7, 1)
    assert psl_class(MatrixFq.identity(F7, 3), 3, 7) == 0
    g = F7.primitive_element
    assert psl_class(MatrixFq.diagonal([g, F7.one(), F7.one()]), 3, 7) != 0
    # det in mu_l with l not dividing m: trivial
    F11 = FieldTower(11, 1)
    t = F11.primitive_element ** 2  # order 5
    assert psl_class(MatrixFq.diagonal([t, F11.one()]), 2, 11) == 0
    with pytest.raises(TowerMismatchError):
        psl_class(MatrixFq.identity(F7, 3), 3, 49)


def test_verify_image_unitary_flagship():
    rep = verify_image(3, 2, 4)
    assert rep.method == "BFS" and rep.computed_order == 648
    assert rep.target.family == "SlU" and rep.equals_expected and rep.membership_ok
    assert rep.bracket == (True, True)
    js = rep.to_json()
    assert js["method"] == "BFS" and js["target"]["order"] == 648 and js["flags"] == []


def test_verify_image_degenerate():
    rep = verify_image(3, 2, 3)
    assert rep.dim == 1 and rep.equals_expected is None
    assert rep.computed_order == 3
    assert any("degenerate" in f for f in rep.flags)


def test_verify_image_flags_small_branch_count():
    rep = verify_image(7, 2, 4)
    assert any("outside the branch-count hypothesis" in f for f in rep.flags)
    assert rep.membership_ok and rep.bracket[1]


def test_bfs_cap_env_override(monkeypatch):
    monkeypatch.setenv("CYCLOCOVER_BFS_CAP", "100")
    assert matgroup.default_bfs_cap() == 100
    rep = verify_image(3, 2, 4)
    assert rep.method == "SchreierSims" and rep.computed_order == 648


@pytest.mark.parametrize("l,p,r", [(3, 2, 5), (5, 2, 4), (5, 3, 3), (3, 7, 5), (5, 11, 3)])
def test_bracket_property(l, p, r):
    rep = verify_image(l, p, r, bfs_cap=400_000)
    assert rep.membership_ok
    assert rep.bracket == (True, True)


def test_bfs_large_field_fallback():
    F = FieldTower(5, 6)  # q > 4096 takes the pure-Python closure
    h = F.primitive_element ** ((F.size - 1) // 8)
    A = MatrixFq.diagonal([h, F.one()])
    B = MatrixFq.from_rows(F, [[0, 1], [1, 0]])
    assert bfs_enumerate([A]) == 8
    assert bfs_enumerate([A, B]) == schreier_sims_order([A, B]) == 128
