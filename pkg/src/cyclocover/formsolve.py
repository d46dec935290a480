"""Invariant sesquilinear forms of a matrix representation over F_{p^e}.

The space of Gram matrices J with A^* J A = J for every generator A is the
kernel of a linear operator on m x m matrices, where A^* is the transpose of
A with the Frobenius x -> x**(p**j) applied entrywise.  j = 0 gives
bilinear forms; j = e/2 gives Hermitian-type forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ffield import FFElement, TowerMismatchError, ord_mod
from .matrix import MatrixFq, kernel


class FormDimensionError(RuntimeError):
    """The invariant-form solution space has an unexpected dimension."""

    def __init__(self, dimension: int, involution: int, expected: int):
        self.dimension = dimension
        self.involution = involution
        self.expected = expected
        super().__init__(
            f"invariant form space for involution j={involution} has dimension "
            f"{dimension}, expected {expected}"
        )


@dataclass(frozen=True)
class SesquiForm:
    gram: MatrixFq
    involution: int  # conjugation is x -> x**(p**involution)
    nondegenerate: bool
    symmetry: FFElement | None = None  # c with gram^* = c * gram

    @property
    def tower(self):
        return self.gram.tower

    def conj(self, x: FFElement) -> FFElement:
        return x.frobenius(self.involution)

    def scaled(self, c: FFElement) -> SesquiForm:
        g = self.gram.scale(c)
        return SesquiForm(g, self.involution, self.nondegenerate and not c.is_zero(), _symmetry(g, self.involution))

    def to_json(self):
        return {
            "involution": self.involution,
            "nondegenerate": self.nondegenerate,
            "gram": self.gram.to_json()["entries"],
            "symmetry": None if self.symmetry is None else list(self.symmetry.coeffs),
        }

    @classmethod
    def hermitian_identity(cls, tower, m: int) -> SesquiForm:
        """The standard form sum x_i conj(y_i) over F_{q^2} (tower degree even)."""
        if tower.k % 2:
            raise ValueError("a Hermitian form needs an even-degree tower")
        j = tower.k // 2
        g = MatrixFq.identity(tower, m)
        return cls(g, j, True, tower.one())


def _operator_rows(A: MatrixFq, j: int):
    """Rows of J -> A^* J A - J acting on vec(J) (row-major)."""
    ops = A.tower.ops
    m = A.dim
    Ac = A.conj(j).data
    a = A.data
    mul, add, sub = ops.mul, ops.add, ops.sub
    rows = []
    for r in range(m):
        for s in range(m):
            # (A^* J A)[r, s] = sum_{c,d} conj(A)[c, r] J[c, d] A[d, s]
            row = [0] * (m * m)
            for c in range(m):
                x = Ac[c * m + r]
                if not x:
                    continue
                for d in range(m):
                    y = a[d * m + s]
                    if y:
                        row[c * m + d] = add(row[c * m + d], mul(x, y))
            row[r * m + s] = sub(row[r * m + s], 1)
            rows.append(row)
    return rows


def invariant_form_space(generators, j: int) -> list[MatrixFq]:
    """Basis of {J : A^* J A = J for all generators}, as Gram matrices."""
    generators = list(generators)
    tower = generators[0].tower
    m = generators[0].dim
    rows = []
    for A in generators:
        if A.tower is not tower:
            raise TowerMismatchError("generators over different towers")
        rows.extend(_operator_rows(A, j))
    basis = kernel(tower.ops, rows, m * m)
    return [MatrixFq(tower, m, v) for v in basis]


def _normalize(J: MatrixFq) -> MatrixFq:
    first = next(x for x in J.data if x)
    return J.scale(J.tower.from_code(J.tower.ops.inv(first)))


def _symmetry(J: MatrixFq, j: int):
    """The scalar c with J^* = c J, or None."""
    S = J.star(j)
    idx = next((i for i, x in enumerate(J.data) if x), None)
    if idx is None:
        return None
    ops = J.tower.ops
    c = ops.mul(S.data[idx], ops.inv(J.data[idx]))
    if J.scale(J.tower.from_code(c)) != S:
        return None
    return J.tower.from_code(c)


def is_unitary_case(l: int, p: int) -> bool:
    e = ord_mod(p, l)
    return ((l - 1) // e) % 2 == 1


def invariant_form(rep) -> SesquiForm | None:
    """The invariant form of a Burau-type representation, or None in the linear case.

    Raises :class:`FormDimensionError` when the solution space is not what
    the unitary/linear dichotomy predicts.
    """
    l, p, e = rep.l, rep.p, rep.e
    gens = rep.gen_images
    if is_unitary_case(l, p):
        j = e // 2
        space = invariant_form_space(gens, j)
        if len(space) != 1:
            raise FormDimensionError(len(space), j, 1)
        J = _normalize(space[0])
        nondeg = not J.det().is_zero()
        if not nondeg:
            raise FormDimensionError(1, j, 1)
        return SesquiForm(J, j, nondeg, _symmetry(J, j))
    candidates = [0] + ([e // 2] if e % 2 == 0 else [])
    for j in candidates:
        space = invariant_form_space(gens, j)
        if space:
            raise FormDimensionError(len(space), j, 0)
    return None


def check_unitary(A: MatrixFq, form: SesquiForm) -> bool:
    """A^* J A == J exactly."""
    if A.tower is not form.tower:
        raise TowerMismatchError("matrix and form over different towers")
    if A.dim != form.gram.dim:
        raise ValueError("dimension mismatch")
    return A.star(form.involution) @ form.gram @ A == form.gram


def multiplier(A: MatrixFq, form: SesquiForm) -> FFElement | None:
    """nu with A^* J A = nu J, or None if A is not a similitude."""
    if A.tower is not form.tower:
        raise TowerMismatchError("matrix and form over different towers")
    return _ratio(A.star(form.involution) @ form.gram @ A, form.gram)


def _ratio(X: MatrixFq, J: MatrixFq):
    idx = next(i for i, x in enumerate(J.data) if x)
    ops = J.tower.ops
    c = J.tower.from_code(ops.mul(X.data[idx], ops.inv(J.data[idx])))
    return c if J.scale(c) == X else None
