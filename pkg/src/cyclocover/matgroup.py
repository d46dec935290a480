"""Orders of matrix groups over finite fields and classical-group bookkeeping.

Two independent routes compute the order of a group generated by matrices:
:func:`bfs_enumerate` lists every element (vectorized with numpy), and
:func:`schreier_sims_order` builds a stabilizer chain for the action on
column vectors.  They share no code beyond the field tables.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass, field

import numpy as np

from .burau import degenerate_burau, quotient_rep, reduced_burau
from .ffield import FFElement, FieldTower, TowerMismatchError, ord_mod, primitive_lth_root, solve_norm_equation
from .formsolve import SesquiForm, check_unitary, invariant_form, is_unitary_case, multiplier
from .matrix import MatrixFq, mat_inv, mat_mul, mat_vec

DEFAULT_BFS_CAP = 2_000_000
FAMILIES = ("GL", "SL", "SlL", "GU", "SU", "SlU", "PSL", "PSU", "PGL", "PGU", "PU")


def default_bfs_cap() -> int:
    value = os.environ.get("CYCLOCOVER_BFS_CAP")
    return int(value) if value else DEFAULT_BFS_CAP


class CapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"closure has at least {count} elements, cap is {cap}")


class SchreierSimsError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# classical orders


def group_order(family: str, m: int, q: int, l: int | None = None) -> int:
    """Order of a classical group of degree m over F_q (unitary: matrices over F_{q^2})."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if m < 1 or q < 2:
        raise ValueError("need m >= 1 and q >= 2")
    if family in ("SlL", "SlU") and l is None:
        raise ValueError(f"{family} needs l")
    if family in ("GL", "SL", "SlL", "PSL", "PGL"):
        gl = 1
        for i in range(m):
            gl *= q**m - q**i
        sl = gl // (q - 1)
        return {
            "GL": gl,
            "SL": sl,
            "SlL": sl * math.gcd(l or 1, q - 1),
            "PGL": sl,
            "PSL": sl // math.gcd(m, q - 1),
        }[family]
    gu = q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        gu *= q**i - (-1) ** i
    su = gu // (q + 1)
    return {
        "GU": gu,
        "SU": su,
        "SlU": su * math.gcd(l or 1, q + 1),
        "PGU": su,
        "PU": su,
        "PSU": su // math.gcd(m, q + 1),
    }[family]


@dataclass(frozen=True)
class GroupTarget:
    family: str
    m: int
    q: int
    l: int | None = None

    @property
    def order(self) -> int:
        return group_order(self.family, self.m, self.q, self.l)

    def to_json(self):
        return {"family": self.family, "m": self.m, "q": self.q, "l": self.l, "order": self.order}


# ---------------------------------------------------------------------------
# breadth-first closure


class _VecField:
    """numpy versions of the field tables."""

    def __init__(self, tower: FieldTower):
        ops = tower.ops
        q = tower.size
        self.q = q
        self.p = tower.p
        n = q - 1
        exp = np.zeros(4 * n + 1, dtype=np.int64)
        exp[: 2 * n] = ops.exp
        log = np.array(ops.log, dtype=np.int64)
        log[0] = 2 * n  # any sum involving log 0 lands in the zero tail
        self.exp, self.log = exp, log
        if tower.p == 2:
            self.add_table = None
        else:
            codes = np.arange(q, dtype=np.int64)
            digits = [(codes // tower.p**i) % tower.p for i in range(tower.k)]
            table = np.zeros((q, q), dtype=np.int64)
            for i, d in enumerate(digits):
                table += ((d[:, None] + d[None, :]) % tower.p) * tower.p**i
            self.add_table = table

    def mul(self, a, b):
        return self.exp[self.log[a] + self.log[b]]

    def add(self, a, b):
        if self.add_table is None:
            return a ^ b
        return self.add_table[a, b]


def _batch_matmul(F: _VecField, A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    """A (N, m, m) times a single B (m, m)."""
    out = np.zeros_like(A)
    for i in range(m):
        for j in range(m):
            acc = np.zeros(A.shape[0], dtype=np.int64)
            for k in range(m):
                b = int(B[k, j])
                if b:
                    acc = F.add(acc, F.mul(A[:, i, k], b))
            out[:, i, j] = acc
    return out


def bfs_enumerate(generators, cap: int | None = None) -> int:
    """Exact size of the group generated by ``generators`` by listing its elements.

    Raises :class:`CapExceeded` once more than ``cap`` elements are found.
    """
    generators = list(generators)
    if not generators:
        return 1
    cap = default_bfs_cap() if cap is None else cap
    tower = generators[0].tower
    m = generators[0].dim
    for g in generators:
        if g.tower is not tower or g.dim != m:
            raise TowerMismatchError("generators over different towers or sizes")
    q = tower.size
    if q ** (m * m) >= 2**62 or q > 4096:
        return _bfs_python(generators, cap)
    F = _VecField(tower)
    weights = np.array([q**i for i in range(m * m)], dtype=np.int64)
    gens = [np.array(g.data, dtype=np.int64).reshape(m, m) for g in generators]
    ident = np.eye(m, dtype=np.int64)[None]
    seen = np.array([int((ident.reshape(1, -1) * weights).sum())], dtype=np.int64)
    frontier = ident
    while len(frontier):
        products = np.concatenate([_batch_matmul(F, frontier, g, m) for g in gens])
        keys = products.reshape(len(products), -1) @ weights
        keys, idx = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen, assume_unique=True)
        seen = np.union1d(seen, keys[fresh])
        frontier = products[idx[fresh]]
        if len(seen) > cap:
            raise CapExceeded(len(seen), cap)
    return int(len(seen))


def _bfs_python(generators, cap):
    tower = generators[0].tower
    ops, m = tower.ops, generators[0].dim
    ident = MatrixFq.identity(tower, m).data
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = mat_mul(ops, m, x, g.data)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(len(seen), cap)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# Schreier-Sims on column vectors


class _Level:
    __slots__ = ("base", "gens", "orbit")

    def __init__(self, base):
        self.base = base
        self.gens = []  # (g, g^-1) pairs of code tuples
        self.orbit = {}  # point -> (u, u^-1) with u . base = point


class StabilizerChain:
    """Base and strong generating set for a matrix group acting on F_q^m."""

    def __init__(self, tower: FieldTower, m: int, max_orbit: int = 2_000_000):
        self.tower = tower
        self.ops = tower.ops
        self.m = m
        self.ident = MatrixFq.identity(tower, m).data
        self.levels: list[_Level] = []
        self.max_orbit = max_orbit

    def order(self) -> int:
        out = 1
        for lev in self.levels:
            out *= len(lev.orbit)
        return out

    def _mul(self, a, b):
        return mat_mul(self.ops, self.m, a, b)

    def _first_moved(self, g):
        """First projective point (normalized vector) in lex order that g moves."""
        q, m = self.tower.size, self.m
        for lead in range(m):
            for tail in itertools.product(range(q), repeat=m - lead - 1):
                v = (0,) * lead + (1,) + tail
                if mat_vec(self.ops, m, g, v) != v:
                    return v
        raise SchreierSimsError("identity has no moved point")

    def _rebuild_orbit(self, lev: _Level):
        ident = self.ident
        orbit = {lev.base: (ident, ident)}
        queue = [lev.base]
        ops, m = self.ops, self.m
        for pt in queue:
            u, uinv = orbit[pt]
            for s, sinv in lev.gens:
                img = mat_vec(ops, m, s, pt)
                if img not in orbit:
                    orbit[img] = (mat_mul(ops, m, s, u), mat_mul(ops, m, uinv, sinv))
                    queue.append(img)
                    if len(orbit) > self.max_orbit:
                        raise SchreierSimsError(f"orbit exceeds {self.max_orbit} points")
        lev.orbit = orbit

    def sift(self, g, start=0):
        """Strip g through the chain; returns (residue, level where it stopped)."""
        ops, m = self.ops, self.m
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            pt = mat_vec(ops, m, g, lev.base)
            hit = lev.orbit.get(pt)
            if hit is None:
                return g, i
            g = mat_mul(ops, m, hit[1], g)
        return g, len(self.levels)

    def add_generator(self, h, depth):
        """Add h (fixing the first ``depth`` base points) to levels 0..depth."""
        hinv = mat_inv(self.ops, self.m, h)
        if depth == len(self.levels):
            self.levels.append(_Level(self._first_moved(h)))
        for i in range(depth + 1):
            self.levels[i].gens.append((h, hinv))
        for i in range(depth + 1):
            self._rebuild_orbit(self.levels[i])

    def absorb(self, g, start=0) -> bool:
        """Sift g; if it does not strip to the identity, extend the chain."""
        res, depth = self.sift(g, start)
        if res == self.ident:
            return False
        self.add_generator(res, depth)
        return True

    def verify(self) -> bool:
        """Sift every Schreier generator once; returns True if the chain changed."""
        ops, m = self.ops, self.m
        for i in reversed(range(len(self.levels))):
            lev = self.levels[i]
            for pt, (u, _) in list(lev.orbit.items()):
                for s, _ in lev.gens:
                    img = mat_vec(ops, m, s, pt)
                    h = mat_mul(ops, m, lev.orbit[img][1], mat_mul(ops, m, s, u))
                    if h == self.ident:
                        continue
                    if self.absorb(h, i + 1):
                        return True
        return False


def schreier_sims_order(generators, seed: int = 0, quiet_rounds: int = 40, max_orbit: int = 2_000_000) -> int:
    """Order of the group generated by ``generators`` via a stabilizer chain.

    A seeded random phase (product replacement) builds a candidate chain; a
    deterministic pass then sifts every Schreier generator, so the result does
    not depend on the random phase being lucky.
    """
    return build_chain(generators, seed, quiet_rounds, max_orbit).order()


def build_chain(generators, seed=0, quiet_rounds=40, max_orbit=2_000_000) -> StabilizerChain:
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    tower, m = generators[0].tower, generators[0].dim
    for g in generators:
        if g.tower is not tower or g.dim != m:
            raise TowerMismatchError("generators over different towers or sizes")
    chain = StabilizerChain(tower, m, max_orbit)
    gens = [g.data for g in generators if not g.is_identity()]
    if not gens:
        return chain
    for g in gens:
        chain.absorb(g)

    rng = random.Random(seed)
    pool = [g for g in gens]
    while len(pool) < 10:
        pool.append(gens[len(pool) % len(gens)])
    acc = chain.ident
    quiet = 0
    while quiet < quiet_rounds:
        a, b = rng.sample(range(len(pool)), 2)
        pool[a] = chain._mul(pool[a], pool[b])
        acc = chain._mul(acc, pool[a])
        if chain.absorb(acc):
            quiet = 0
        else:
            quiet += 1

    while chain.verify():
        pass
    return chain


# ---------------------------------------------------------------------------
# membership and determinant classes


def membership_sll(A: MatrixFq, l: int, q: int) -> bool:
    """A in GL(m, q) with det A an l-th root of unity."""
    if A.tower.size != q:
        raise TowerMismatchError(f"matrix over F_{A.tower.size}, expected F_{q}")
    d = A.det()
    return not d.is_zero() and d**l == 1


def membership_slu(A: MatrixFq, l: int, form: SesquiForm) -> bool:
    """A preserves the form exactly and det A is an l-th root of unity."""
    d = A.det()
    return not d.is_zero() and d**l == 1 and check_unitary(A, form)


def _as_element(x, tower):
    if isinstance(x, int):
        return tower(x)
    if x.tower is not tower:
        return tower.embed(x)
    return x


def pgu_normalize(A: MatrixFq, nu, form: SesquiForm, lam: FFElement | None = None) -> MatrixFq:
    """lambda^-1 A, where lambda * lambda**q = nu is the multiplier of A."""
    tower = A.tower
    nu = _as_element(nu, tower)
    if nu.is_zero():
        raise ValueError("multiplier must be nonzero")
    if multiplier(A, form) != nu:
        raise ValueError("A does not scale the form by nu")
    q = tower.p ** form.involution
    if lam is None:
        lam = solve_norm_equation(nu, tower)
    elif lam * lam**q != nu:
        raise ValueError("lambda does not solve lambda * lambda^q = nu")
    out = A.scale(lam.inverse())
    assert check_unitary(out, form)
    return out


def _log(x: FFElement) -> int:
    return x.tower.ops.log[x.code]


def psu_class(A: MatrixFq, m: int, q: int, form: SesquiForm | None = None) -> int:
    """Class of det A in mu_{q+1} / mu_{q+1}^gcd(m, q+1); 0 means A lies in PSU.

    The class is k mod gcd(m, q+1), where det A = w**k for the generator
    w = g**(q-1) of mu_{q+1} (g the tower's primitive element).
    """
    if A.tower.size != q * q:
        raise TowerMismatchError(f"matrix over F_{A.tower.size}, expected F_{q * q}")
    if A.dim != m:
        raise ValueError("dimension mismatch")
    d = A.det()
    if d.is_zero() or d ** (q + 1) != 1:
        raise ValueError("not unitary: det A is not in mu_{q+1}")
    if form is not None and not check_unitary(A, form):
        raise ValueError("not unitary for the given form")
    k = _log(d) // (q - 1) if q > 1 else 0
    return k % math.gcd(m, q + 1)


def psl_class(A: MatrixFq, m: int, q: int) -> int:
    """Class of det A in F_q^x / (F_q^x)^gcd(m, q-1); 0 means A lies in PSL."""
    if A.tower.size != q:
        raise TowerMismatchError(f"matrix over F_{A.tower.size}, expected F_{q}")
    if A.dim != m:
        raise ValueError("dimension mismatch")
    d = A.det()
    if d.is_zero():
        raise ValueError("singular matrix")
    return _log(d) % math.gcd(m, q - 1)


# ---------------------------------------------------------------------------
# end-to-end monodromy check


@dataclass
class GroupReport:
    l: int
    p: int
    r: int
    dim: int
    unitary: bool
    q: int
    computed_order: int
    method: str
    membership_ok: bool
    target: GroupTarget | None
    lower: GroupTarget | None
    bracket: tuple[bool, bool] | None
    equals_expected: bool | None
    form: SesquiForm | None
    pure_dets_in_mu_l: bool
    det_subgroup_order: int
    flags: list[str] = field(default_factory=list)

    def to_json(self):
        return {
            "l": self.l,
            "p": self.p,
            "r": self.r,
            "dim": self.dim,
            "case": "unitary" if self.unitary else "linear",
            "q": self.q,
            "computed_order": self.computed_order,
            "method": self.method,
            "membership_ok": self.membership_ok,
            "target": None if self.target is None else self.target.to_json(),
            "lower": None if self.lower is None else self.lower.to_json(),
            "bracket": None
            if self.bracket is None
            else {"lower_divides_order": self.bracket[0], "order_divides_upper": self.bracket[1]},
            "equals_expected": self.equals_expected,
            "form": None if self.form is None else self.form.to_json(),
            "pure_dets_in_mu_l": self.pure_dets_in_mu_l,
            "det_subgroup_order": self.det_subgroup_order,
            "flags": list(self.flags),
        }


def monodromy_rep(l: int, p: int, r: int):
    """Burau representation at a primitive l-th root over F_{p^e}; the quotient when l | r."""
    e = ord_mod(p, l)
    tower = FieldTower(p, e)
    t = primitive_lth_root(l, tower)
    if r % l == 0:
        return quotient_rep(degenerate_burau(r, t))
    return reduced_burau(r, t)


def verify_image(l: int, p: int, r: int, bfs_cap: int | None = None, seed: int = 0) -> GroupReport:
    """Compute the pure-braid monodromy group and compare with SlU/SlL."""
    bfs_cap = default_bfs_cap() if bfs_cap is None else bfs_cap
    rep = monodromy_rep(l, p, r)
    e = rep.e
    unitary = is_unitary_case(l, p)
    q = p ** (e // 2) if unitary else p**e
    m = rep.dim
    pure = list(rep.pure_gen_images.values())
    flags = []
    R = r if r % l == 0 else r + 1
    if r % l == 0:
        flags.append("degenerate: l divides r, quotient representation")
    if R < l:
        flags.append("outside the branch-count hypothesis (branch count < l)")

    form = invariant_form(rep) if m >= 2 else None
    mu = {rep.t**i for i in range(l)}
    dets = [A.det() for A in pure]
    dets_ok = all(d in mu for d in dets)
    det_group = _generated_cyclic(dets)

    if unitary:
        member = all(membership_slu(A, l, form) for A in pure) if form else dets_ok
    else:
        member = all(membership_sll(A, l, q) for A in pure)

    target = lower = None
    if m >= 2:
        target = GroupTarget("SlU" if unitary else "SlL", m, q, l)
        lower = GroupTarget("SU" if unitary else "SL", m, q)
        use_bfs = target.order <= bfs_cap
    else:
        use_bfs = True
    if use_bfs:
        order, method = bfs_enumerate(pure, cap=bfs_cap), "BFS"
    else:
        order, method = schreier_sims_order(pure, seed=seed), "SchreierSims"

    bracket = equals = None
    if target is not None:
        bracket = (order % lower.order == 0, target.order % order == 0)
        equals = order == target.order
        if member and not bracket[1]:
            raise RuntimeError(f"order {order} does not divide |{target.family}| = {target.order} despite membership")
    return GroupReport(
        l=l, p=p, r=r, dim=m, unitary=unitary, q=q,
        computed_order=order, method=method, membership_ok=member,
        target=target, lower=lower, bracket=bracket, equals_expected=equals,
        form=form, pure_dets_in_mu_l=dets_ok, det_subgroup_order=det_group, flags=flags,
    )


def _generated_cyclic(elements) -> int:
    """Order of the subgroup of F^x generated by the given units."""
    if not elements:
        return 1
    n = elements[0].tower.size - 1
    g = n
    for x in elements:
        g = math.gcd(g, _log(x))
    return n // g
