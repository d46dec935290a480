"""Reduced Burau representation of the braid group specialized at t = zeta_l.

Convention (r strands, matrices of size r-1 acting on column vectors)::

    s_1     -> [[-t, 1], [0, 1]]             (+ identity)
    s_i     -> rows i-1..i+1: [[1, 0, 0], [t, -t, 1], [0, 0, 1]]
    s_{r-1} -> [[1, 0], [t, -t]]             (identity +)

so det(s_i) = -t and det(A_ij) = t**2.  Words are lists of signed generator
indices (``-i`` is the inverse of ``s_i``) and are evaluated left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ffield import FFElement, mult_order
from .matrix import MatrixFq, kernel, row_reduce


class DegenerateSpecialization(ValueError):
    pass


@dataclass
class BurauRep:
    r: int  # strands
    t: FFElement
    gen_images: list[MatrixFq]  # gen_images[i-1] = rho(s_i)
    pure_gen_images: dict[tuple[int, int], MatrixFq] = field(default_factory=dict)
    quotient: bool = False

    @property
    def l(self) -> int:
        return mult_order(self.t)

    @property
    def p(self) -> int:
        return self.t.tower.p

    @property
    def e(self) -> int:
        return self.t.tower.k

    @property
    def tower(self):
        return self.t.tower

    @property
    def dim(self) -> int:
        return self.gen_images[0].dim

    def evaluate(self, word) -> MatrixFq:
        out = MatrixFq.identity(self.tower, self.dim)
        inverses = {}
        for letter in word:
            g = self.gen_images[abs(letter) - 1]
            if letter < 0:
                if letter not in inverses:
                    inverses[letter] = g.inverse()
                g = inverses[letter]
            out = out @ g
        return out

    def to_json(self):
        return {
            "r": self.r,
            "l": self.l,
            "p": self.p,
            "e": self.e,
            "dim": self.dim,
            "quotient": self.quotient,
            "t": list(self.t.coeffs),
            "tower": self.tower.to_json(),
            "gen_images": {f"s{i + 1}": g.to_json()["entries"] for i, g in enumerate(self.gen_images)},
            "pure_gen_images": {f"A{i}{j}": g.to_json()["entries"] for (i, j), g in self.pure_gen_images.items()},
        }


def burau_generator(r: int, i: int, t: FFElement) -> MatrixFq:
    """rho(s_i) for 1 <= i <= r-1 in the reduced Burau representation."""
    tower = t.tower
    m = r - 1
    rows = [[tower(1 if a == b else 0) for b in range(m)] for a in range(m)]
    c = i - 1  # row of the -t entry
    rows[c][c] = -t
    if c - 1 >= 0:
        rows[c][c - 1] = t
    if c + 1 < m:
        rows[c][c + 1] = tower(1)
    return MatrixFq.from_rows(tower, rows)


def pure_braid_words(r: int) -> dict[tuple[int, int], list[int]]:
    """A_ij = (s_{j-1} ... s_{i+1}) s_i^2 (s_{j-1} ... s_{i+1})^-1 for 1 <= i < j <= r."""
    if r < 2:
        raise ValueError("need at least 2 strands")
    words = {}
    for i in range(1, r):
        for j in range(i + 1, r + 1):
            prefix = list(range(j - 1, i, -1))
            words[(i, j)] = prefix + [i, i] + [-x for x in reversed(prefix)]
    return words


def _build(r: int, t: FFElement) -> BurauRep:
    gens = [burau_generator(r, i, t) for i in range(1, r)]
    rep = BurauRep(r, t, gens)
    rep.pure_gen_images = {ij: rep.evaluate(w) for ij, w in pure_braid_words(r).items()}
    return rep


def reduced_burau(r: int, t: FFElement) -> BurauRep:
    """Reduced Burau at t; t must have odd prime order l with l not dividing r."""
    if r < 3:
        raise ValueError("need at least 3 strands")
    l = mult_order(t)
    if l == 1:
        raise ValueError("t must not be 1")
    if r % l == 0:
        raise DegenerateSpecialization(
            f"degenerate specialization (l={l} divides r={r}): use quotient_rep"
        )
    rep = _build(r, t)
    check_rep(rep)
    return rep


def degenerate_burau(r: int, t: FFElement) -> BurauRep:
    """Reduced Burau at t when l | r; input for :func:`quotient_rep`."""
    l = mult_order(t)
    if r % l:
        raise ValueError(f"l={l} does not divide r={r}")
    return _build(r, t)


def check_rep(rep: BurauRep):
    """Assert the braid relations, invertibility and the determinant pattern."""
    g = rep.gen_images
    n = len(g)
    for a in range(n):
        for b in range(a + 1, n):
            if b == a + 1:
                assert g[a] @ g[b] @ g[a] == g[b] @ g[a] @ g[b], f"braid relation fails at {a + 1}"
            else:
                assert g[a] @ g[b] == g[b] @ g[a], f"far commutation fails at {a + 1},{b + 1}"
    t = rep.t
    mu = {t**i for i in range(rep.l)}
    if not rep.quotient:
        for x in g:
            assert x.det() == -t
    for x in rep.pure_gen_images.values():
        d = x.det()
        assert not d.is_zero()
        assert d in mu, "pure braid determinant outside mu_l"


def _eigen_lines(A: MatrixFq):
    """Yield (eigenvalue, kernel basis) for each eigenvalue of A in its field."""
    ops = A.tower.ops
    m = A.dim
    for lam in range(1, A.tower.size):
        data = list(A.data)
        for i in range(m):
            data[i * m + i] = ops.sub(data[i * m + i], lam)
        basis = kernel(ops, [data[i * m : (i + 1) * m] for i in range(m)], m)
        if basis:
            yield lam, basis


def _intersect(ops, a, b, m):
    """Intersection of two subspaces given by spanning vectors."""
    # x = sum u_i a_i = sum v_j b_j  <=>  [a | -b] (u, v) = 0
    cols = list(a) + [tuple(ops.negate(x) for x in v) for v in b]
    rows = [[c[i] for c in cols] for i in range(m)]
    sol = kernel(ops, rows, len(cols))
    out = []
    for s in sol:
        vec = [0] * m
        for coef, v in zip(s[: len(a)], a):
            if coef:
                vec = [ops.add(x, ops.mul(coef, y)) for x, y in zip(vec, v)]
        out.append(tuple(vec))
    # basis via row reduction
    rows = [list(v) for v in out]
    piv = row_reduce(ops, rows, m)
    return [tuple(rows[i]) for i in range(len(piv))]


def common_eigenspaces(mats) -> list[list[tuple[int, ...]]]:
    """All nonzero subspaces of simultaneous eigenvectors, one per eigenvalue tuple."""
    ops = mats[0].tower.ops
    m = mats[0].dim
    spaces = [list(b) for _, b in _eigen_lines(mats[0])]
    for A in mats[1:]:
        new = []
        eig = list(_eigen_lines(A))
        for S in spaces:
            for _, B in eig:
                inter = _intersect(ops, S, B, m)
                if inter:
                    new.append(inter)
        spaces = new
    return spaces


def quotient_rep(rep: BurauRep) -> BurauRep:
    """Action on V / <v> where <v> is the unique invariant line (l | r)."""
    r, t = rep.r, rep.t
    if r % rep.l:
        raise ValueError("quotient_rep applies only when l divides r")
    spaces = common_eigenspaces(rep.gen_images)
    if len(spaces) != 1 or len(spaces[0]) != 1:
        dims = [len(s) for s in spaces]
        raise ValueError(f"invariant subspace is not a single line (eigenspace dims {dims})")
    v = spaces[0][0]
    ops = rep.tower.ops
    m = rep.dim
    # complete v to a basis with standard vectors
    basis = [v]
    for i in range(m):
        e_i = tuple(1 if j == i else 0 for j in range(m))
        trial = [list(b) for b in basis + [e_i]]
        if len(row_reduce(ops, trial, m)) == len(basis) + 1:
            basis.append(e_i)
        if len(basis) == m:
            break
    # B has the basis vectors as columns
    B = MatrixFq(rep.tower, m, tuple(basis[j][i] for i in range(m) for j in range(m)))
    Binv = B.inverse()
    qm = m - 1

    def project(A: MatrixFq) -> MatrixFq:
        C = Binv @ A @ B
        assert all(C.data[i * m] == 0 for i in range(1, m)), "line is not invariant"
        return MatrixFq(rep.tower, qm, tuple(C.data[i * m + j] for i in range(1, m) for j in range(1, m)))

    out = BurauRep(r, t, [project(g) for g in rep.gen_images], quotient=True)
    out.pure_gen_images = {ij: project(A) for ij, A in rep.pure_gen_images.items()}
    for ij, w in pure_braid_words(r).items():
        assert out.evaluate(w) == out.pure_gen_images[ij]
    check_rep(out)
    return out
