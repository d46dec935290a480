"""Square matrices over a :class:`FieldTower`, stored as tuples of element codes."""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import FFElement, FieldTower, TowerMismatchError


@dataclass(frozen=True)
class MatrixFq:
    tower: FieldTower
    dim: int
    data: tuple[int, ...]  # row-major element codes

    def __post_init__(self):
        if len(self.data) != self.dim * self.dim:
            raise ValueError("matrix data does not match its dimension")

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls, tower: FieldTower, m: int) -> MatrixFq:
        return cls(tower, m, tuple(1 if i == j else 0 for i in range(m) for j in range(m)))

    @classmethod
    def diagonal(cls, entries) -> MatrixFq:
        entries = list(entries)
        tower = entries[0].tower
        m = len(entries)
        data = [0] * (m * m)
        for i, x in enumerate(entries):
            data[i * m + i] = tower(x).code
        return cls(tower, m, tuple(data))

    @classmethod
    def from_rows(cls, tower: FieldTower, rows) -> MatrixFq:
        rows = [list(r) for r in rows]
        m = len(rows)
        if any(len(r) != m for r in rows):
            raise ValueError("matrix must be square")
        return cls(tower, m, tuple(tower(x).code for r in rows for x in r))

    # -- access -------------------------------------------------------------

    def entry(self, i: int, j: int) -> FFElement:
        return self.tower.from_code(self.data[i * self.dim + j])

    def rows(self) -> list[list[FFElement]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def to_json(self):
        return {
            "tower": self.tower.to_json(),
            "dim": self.dim,
            "entries": [[list(x.coeffs) for x in row] for row in self.rows()],
        }

    def __repr__(self):
        body = "; ".join(" ".join(str(c) for c in self.data[i * self.dim : (i + 1) * self.dim]) for i in range(self.dim))
        return f"MatrixFq(F_{self.tower.p}^{self.tower.k}, [{body}])"

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: MatrixFq):
        if other.tower is not self.tower:
            raise TowerMismatchError("matrices over different towers")
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        self._check(other)
        return MatrixFq(self.tower, self.dim, mat_mul(self.tower.ops, self.dim, self.data, other.data))

    __mul__ = __matmul__

    def is_identity(self) -> bool:
        m = self.dim
        return all(c == (1 if i % (m + 1) == 0 else 0) for i, c in enumerate(self.data))

    def scale(self, c: FFElement) -> MatrixFq:
        c = self.tower(c).code
        mul = self.tower.ops.mul
        return MatrixFq(self.tower, self.dim, tuple(mul(c, x) for x in self.data))

    def transpose(self) -> MatrixFq:
        m = self.dim
        return MatrixFq(self.tower, m, tuple(self.data[j * m + i] for i in range(m) for j in range(m)))

    def conj(self, j: int) -> MatrixFq:
        """Apply x -> x**(p**j) entrywise."""
        frob = self.tower.ops.frob
        return MatrixFq(self.tower, self.dim, tuple(frob(x, j) for x in self.data))

    def star(self, j: int) -> MatrixFq:
        """Conjugate transpose for the involution x -> x**(p**j)."""
        return self.conj(j).transpose()

    def det(self) -> FFElement:
        return self.tower.from_code(mat_det(self.tower.ops, self.dim, self.data))

    def inverse(self) -> MatrixFq:
        return MatrixFq(self.tower, self.dim, mat_inv(self.tower.ops, self.dim, self.data))

    def __pow__(self, e: int) -> MatrixFq:
        if e < 0:
            return self.inverse() ** (-e)
        result = MatrixFq.identity(self.tower, self.dim)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def apply(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        return mat_vec(self.tower.ops, self.dim, self.data, vec)


# ---------------------------------------------------------------------------
# code-level kernels; ``ops`` is a FieldOps


def mat_mul(ops, m, a, b):
    exp, log, add = ops.exp, ops.log, ops.add
    out = []
    for i in range(m):
        row = a[i * m : (i + 1) * m]
        for j in range(m):
            acc = 0
            for k in range(m):
                x = row[k]
                y = b[k * m + j]
                if x and y:
                    acc = add(acc, exp[log[x] + log[y]])
            out.append(acc)
    return tuple(out)


def mat_vec(ops, m, a, v):
    exp, log, add = ops.exp, ops.log, ops.add
    out = []
    for i in range(m):
        acc = 0
        for k in range(m):
            x = a[i * m + k]
            y = v[k]
            if x and y:
                acc = add(acc, exp[log[x] + log[y]])
        out.append(acc)
    return tuple(out)


def row_reduce(ops, rows, ncols):
    """Reduced row echelon form in place; returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ops.inv(rows[r][c])
        rows[r] = [ops.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = ops.negate(rows[i][c])
                rows[i] = [ops.add(x, ops.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def kernel(ops, rows, ncols):
    """Basis of {x : rows . x = 0}, each vector with a 1 at a free column."""
    rows = [list(r) for r in rows]
    pivots = row_reduce(ops, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, c in enumerate(pivots):
            vec[c] = ops.negate(rows[i][f])
        basis.append(tuple(vec))
    return basis


def mat_det(ops, m, a):
    rows = [list(a[i * m : (i + 1) * m]) for i in range(m)]
    det = 1
    for c in range(m):
        piv = next((i for i in range(c, m) if rows[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = ops.negate(det)
        det = ops.mul(det, rows[c][c])
        inv = ops.inv(rows[c][c])
        for i in range(c + 1, m):
            if rows[i][c]:
                f = ops.negate(ops.mul(rows[i][c], inv))
                rows[i] = [ops.add(x, ops.mul(f, y)) for x, y in zip(rows[i], rows[c])]
    return det


def mat_inv(ops, m, a):
    rows = [list(a[i * m : (i + 1) * m]) + [1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots = row_reduce(ops, rows, m)
    if len(pivots) < m:
        raise ZeroDivisionError("singular matrix")
    return tuple(x for r in rows for x in r[m:])
