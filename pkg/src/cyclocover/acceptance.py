"""Acceptance criteria as plain functions, shared by the test-suite and ``cyclocover selftest``.

Every criterion returns a :class:`CriterionResult`; a result passes only when
its check holds and it finished inside its time limit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .arith import Family, check_v2_lemma, realization_verdict, subfield_descriptor, theorem_main_verdict
from .covering import genus
from .ffield import FieldTower, is_prime, ord_mod, v2
from .formsolve import invariant_form_space
from .matgroup import (
    CapExceeded,
    bfs_enumerate,
    membership_sll,
    monodromy_rep,
    psu_class,
    schreier_sims_order,
    verify_image,
)
from .matrix import MatrixFq


@dataclass
class CriterionResult:
    number: int
    name: str
    ok: bool
    elapsed: float
    limit: float
    failures: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ok and self.elapsed < self.limit

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.number:2d}. {self.name}"
        if timing:
            out += f"  {self.elapsed:.2f}s / {self.limit:g}s"
        if not self.passed:
            out += f"  ({len(self.failures)} failing case(s))" if self.failures else "  (time limit)"
        return out

    def to_json(self):
        return {
            "number": self.number,
            "name": self.name,
            "passed": self.passed,
            "limit_seconds": self.limit,
            "failures": [str(f) for f in self.failures],
            "detail": self.detail,
        }


def _run(number, name, limit, body, **kwargs) -> CriterionResult:
    start = time.perf_counter()
    try:
        failures, detail = body(**kwargs)
    except Exception as exc:  # a crash is a failed criterion, not a crashed gate
        failures, detail = [f"{type(exc).__name__}: {exc}"], {}
    elapsed = time.perf_counter() - start
    return CriterionResult(number, name, not failures, elapsed, limit, failures, detail)


# (row, l, p, n, expected family, expected degree, expected (p, exp))
FAMILY_CASES = [
    (1, 3, 7, 2, Family.PSL, 2, (7, 1)),
    (2, 5, 19, 1, Family.PSL, 2, (19, 2)),
    (3, 5, 11, 1, Family.PSL, 2, (11, 1)),
    (4, 5, 19, 1, Family.PSL, 2, (19, 2)),
    (5, 3, 7, 2, Family.PSU, 2, (7, 1)),
    (6, 7, 13, 1, Family.PSU, 4, (13, 1)),
    (7, 7, 5, 1, Family.PSU, 4, (5, 3)),
    (8, 5, 3, 1, Family.PSU, 2, (3, 2)),
]


def _family_table():
    failures, rows = [], []
    for row_id, l, p, n, fam, deg, fs in FAMILY_CASES:
        v = realization_verdict(l, p, n)
        got = (v.family, v.degree, v.field_size)
        rows.append({"row": row_id, "l": l, "p": p, "n": n, "got": v.label()})
        if got != (fam, deg, fs):
            failures.append(f"row {row_id}: l={l} p={p} n={n} expected {fam.value}({deg}, {fs}) got {v.label()}")
    return failures, {"rows": rows}


def family_table_conformance():
    return _run(1, "family table conformance", 1.0, _family_table)


# Base-field rows: (l, p residues mod l, unitary?, exponent of q over p, n residues, modulus for n, field name)
BASE_FIELD_ROWS = [
    (3, (2,), True, 1, (0,), 2, "Q"),
    (3, (2,), True, 1, (1,), 2, "Q(ω)"),
    (3, (1,), False, 1, (0,), 2, "Q"),
    (3, (1,), False, 1, (1,), 2, "Q(ω)"),
]
for _pres, _unit, _exp in (((2, 3), True, 2), ((1,), False, 1), ((4,), False, 2)):
    BASE_FIELD_ROWS += [
        (5, _pres, _unit, _exp, (2,), 4, "Q"),
        (5, _pres, _unit, _exp, (0,), 4, "Q(√5)"),
        (5, _pres, _unit, _exp, (1, 3), 4, "Q(ζ_5)"),
    ]
for _pres, _unit, _exp in (((6,), True, 1), ((3, 5), True, 3), ((1,), False, 1)):
    BASE_FIELD_ROWS += [
        (7, _pres, _unit, _exp, (4,), 6, "Q"),
        (7, _pres, _unit, _exp, (1,), 6, "Q(√-7)"),
        (7, _pres, _unit, _exp, (3, 5), 6, "Q(cos 2π/7)"),
        (7, _pres, _unit, _exp, (0, 2), 6, "Q(ζ_7)"),
    ]


def _mu_for_name(l, name):
    return next(mu for mu in range(1, l) if (l - 1) % mu == 0 and subfield_descriptor(l, mu).name == name)


def _base_field_table(p_max=100, n_max=24):
    failures = []
    for row in BASE_FIELD_ROWS:
        l, pres, unitary, exp, nres, nmod, name = row
        mu = _mu_for_name(l, name)
        fam = Family.BETWEEN_PGU_PSU if unitary else Family.BETWEEN_PGL_PSL
        for p in range(3, p_max):
            if not is_prime(p) or p % l not in pres:
                continue
            for n in range(1, n_max + 1):
                if n % nmod not in nres:
                    continue
                v = theorem_main_verdict(l, mu, p, n)
                if (v.family, v.field_size, v.base_field.name) != (fam, (p, exp), name):
                    failures.append(f"l={l} p={p} n={n} over {name}: got {v.label()} ({v.family.value})")
    return failures, {"rows": len(BASE_FIELD_ROWS)}


def base_field_conformance():
    return _run(2, "minimal base field table", 1.0, _base_field_table)


def _riemann_hurwitz():
    failures = []
    for l in range(3, 14, 2):
        if not is_prime(l):
            continue
        for R in range(2, 21):
            # Euler characteristic: l sheets over P^1, minus (l-1) per totally ramified point
            chi = l * (2 - R) + R
            if 2 - chi != 2 * genus(l, R):
                failures.append((l, R))
    if genus(3, 3) != 1:
        failures.append("g(3,3) != 1")
    return failures, {}


def riemann_hurwitz():
    return _run(3, "Riemann-Hurwitz genus", 1.0, _riemann_hurwitz)


def _v2_lemma(p_bound=10_000):
    failures, count = [], 0
    for p in range(3, p_bound):
        if not is_prime(p):
            continue
        for half in (1, 3, 5, 7, 9):
            count += 1
            if not check_v2_lemma(p, 2 * half)["holds"]:
                failures.append((p, 2 * half))
    return failures, {"checked": count}


def v2_lemma(p_bound=10_000):
    return _run(4, "2-adic lemma", 10.0, _v2_lemma, p_bound=p_bound)


def _unitary_flagship():
    rep = verify_image(3, 2, 4)
    failures = []
    if rep.method != "BFS" or rep.computed_order != 648 or not rep.equals_expected:
        failures.append(f"order {rep.computed_order} via {rep.method}")
    if not rep.pure_dets_in_mu_l:
        failures.append("pure-braid determinant outside mu_3")
    gens = monodromy_rep(3, 2, 4).gen_images
    space = invariant_form_space(gens, 1)
    if len(space) != 1 or space[0].det().is_zero():
        failures.append(f"Hermitian form space dimension {len(space)}")
    return failures, rep.to_json()


def unitary_flagship():
    return _run(5, "monodromy l=3 p=2 r=4 (648)", 5.0, _unitary_flagship)


def _linear_flagship():
    rep = verify_image(3, 7, 4)
    failures = []
    if rep.method != "SchreierSims" or rep.computed_order != 16_892_064 or not rep.equals_expected:
        failures.append(f"order {rep.computed_order} via {rep.method}")
    mrep = monodromy_rep(3, 7, 4)
    if not all(membership_sll(A, 3, 7) for A in mrep.pure_gen_images.values()):
        failures.append("membership_sll failed")
    if invariant_form_space(mrep.gen_images, 0):
        failures.append("nonzero invariant bilinear form")
    return failures, rep.to_json()


def linear_flagship():
    return _run(6, "monodromy l=3 p=7 r=4 (16,892,064)", 60.0, _linear_flagship)


def _odd_unitary():
    rep = verify_image(3, 5, 4)
    failures = [] if rep.computed_order == 1_134_000 and rep.equals_expected else [f"order {rep.computed_order}"]
    return failures, rep.to_json()


def odd_unitary():
    return _run(7, "monodromy l=3 p=5 r=4 (1,134,000)", 60.0, _odd_unitary)


def _dichotomy(rs=(4, 5, 6), p_max=13):
    failures, rows = [], []
    for l in (3, 5, 7):
        for p in range(2, p_max + 1):
            if not is_prime(p) or p == l:
                continue
            e = ord_mod(p, l)
            predicted = ((l - 1) // e) % 2 == 1
            for r in rs:
                if r % l == 0:
                    continue
                gens = monodromy_rep(l, p, r).gen_images
                js = [0] + ([e // 2] if e % 2 == 0 else [])
                dims = {j: len(invariant_form_space(gens, j)) for j in js}
                found = any(dims.values())
                rows.append({"l": l, "p": p, "r": r, "dims": dims, "predicted": predicted})
                if found != predicted:
                    failures.append(f"l={l} p={p} r={r}: dims {dims}, predicted form={predicted}")
    return failures, {"cases": len(rows)}


def dichotomy(rs=(4, 5, 6)):
    return _run(8, "unitary/linear dichotomy sweep", 300.0, _dichotomy, rs=rs)


def _unitary_tower(q):
    p = next(x for x in range(2, q + 1) if q % x == 0)
    k = 0
    while p**k < q:
        k += 1
    return FieldTower(p, 2 * k)


def _bookkeeping():
    failures = []
    for q in (3, 5, 7, 9):
        tower = _unitary_tower(q)
        for m in (2, 4, 6):
            for l in (3, 5, 7, 11):
                if (q + 1) % l or m % l == 0:
                    continue
                w = tower.primitive_element ** ((q * q - 1) // l)
                A = MatrixFq.diagonal([w] + [tower.one()] * (m - 1))
                if psu_class(A, m, q) != 0:
                    failures.append(f"xi in mu_{l}: q={q} m={m} class nontrivial")
            A = MatrixFq.diagonal([-tower.one()] + [tower.one()] * (m - 1))
            if psu_class(A, m, q) == 0:
                failures.append(f"-1 trivial at q={q} m={m} (v2(m)={v2(m)} < v2(q+1)={v2(q + 1)})")
    return failures, {}


def bookkeeping():
    return _run(9, "PSU determinant classes", 1.0, _bookkeeping)


# (tower p, tower k, dim); every GL here has order at most 10^5
_ORACLE_SHAPES = [(2, 1, 2), (3, 1, 2), (2, 2, 2), (5, 1, 2), (7, 1, 2), (2, 3, 2),
                  (3, 2, 2), (11, 1, 2), (13, 1, 2), (2, 1, 3), (3, 1, 3)]


def random_generator_set(seed: int):
    rng = random.Random(seed)
    p, k, m = _ORACLE_SHAPES[seed % len(_ORACLE_SHAPES)]
    tower = FieldTower(p, k)
    gens = []
    while len(gens) < rng.choice((1, 2, 2, 3)):
        A = MatrixFq(tower, m, tuple(rng.randrange(tower.size) for _ in range(m * m)))
        if not A.det().is_zero():
            gens.append(A)
    return gens


def _oracle(count=20):
    failures, orders = [], []
    for seed in range(count):
        gens = random_generator_set(seed)
        try:
            a = bfs_enumerate(gens, cap=100_000)
        except CapExceeded as exc:
            failures.append(f"seed {seed}: {exc}")
            continue
        b = schreier_sims_order(gens, seed=seed)
        orders.append(a)
        if a != b:
            failures.append(f"seed {seed}: BFS {a} vs Schreier-Sims {b}")
    return failures, {"orders": orders}


def oracle_agreement(count=20):
    return _run(10, "BFS vs Schreier-Sims agreement", 30.0, _oracle, count=count)


def run_all(quick: bool = False) -> list[CriterionResult]:
    """All ten criteria; ``quick`` shrinks the sweeps (used by selftest)."""
    return [
        family_table_conformance(),
        base_field_conformance(),
        riemann_hurwitz(),
        v2_lemma(1_000 if quick else 10_000),
        unitary_flagship(),
        linear_flagship(),
        odd_unitary(),
        dichotomy((4,) if quick else (4, 5, 6)),
        bookkeeping(),
        oracle_agreement(5 if quick else 20),
    ]
