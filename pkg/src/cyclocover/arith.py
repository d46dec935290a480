"""Realizability verdicts for PSL/PSU groups built from cyclic covers.

All functions here are pure integer computations.  A verdict of
``NOT_COVERED`` means the method says nothing about the group; it is not a
claim that the group fails to be a Galois group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum

from .ffield import is_prime, ord_mod, v2

__all__ = [
    "EnumerationCapExceeded",
    "Family",
    "RealizationVerdict",
    "SubfieldDescriptor",
    "best_base_field",
    "check_v2_lemma",
    "corollary_enumerate",
    "gcd_halving",
    "ord_mod",
    "realization_verdict",
    "subfield_descriptor",
    "theorem_main_verdict",
]

DEFAULT_ENUMERATION_CAP = 200_000


class Family(str, Enum):
    PSL = "PSL"
    PSU = "PSU"
    BETWEEN_PGL_PSL = "BETWEEN_PGL_PSL"
    BETWEEN_PGU_PSU = "BETWEEN_PGU_PSU"
    NOT_COVERED = "NOT_COVERED"


class EnumerationCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class SubfieldDescriptor:
    """The subfield of Q(zeta_l) of index mu."""

    l: int
    mu: int
    degree_over_Q: int
    name: str

    def to_json(self):
        return {"l": self.l, "mu": self.mu, "degree_over_Q": self.degree_over_Q, "name": self.name}


@dataclass(frozen=True)
class TraceEntry:
    name: str
    values: dict
    passed: bool

    def to_json(self):
        return {"name": self.name, "values": dict(self.values), "passed": self.passed}


@dataclass
class RealizationVerdict:
    family: Family
    degree: int
    field_size: tuple[int, int]  # (p, exponent)
    base_field: SubfieldDescriptor
    trace: list[TraceEntry] = field(default_factory=list)
    det_shape: dict | None = None
    params: dict = field(default_factory=dict)

    @property
    def covered(self) -> bool:
        return self.family is not Family.NOT_COVERED

    @property
    def q(self) -> int:
        p, e = self.field_size
        return p**e

    def check(self, name, passed, **values) -> bool:
        self.trace.append(TraceEntry(name, values, bool(passed)))
        return bool(passed)

    def label(self) -> str:
        p, e = self.field_size
        fq = str(p) if e == 1 else f"{p}^{e}"
        fam = {
            Family.BETWEEN_PGL_PSL: "PSL..PGL",
            Family.BETWEEN_PGU_PSU: "PSU..PGU",
        }.get(self.family, self.family.value)
        return f"{fam}({self.degree}, {fq})"

    def to_json(self):
        p, e = self.field_size
        return {
            "family": self.family.value,
            "degree": self.degree,
            "q": {"p": p, "exp": e},
            "base_field": self.base_field.to_json(),
            "trace": [t.to_json() for t in self.trace],
            "det_shape": self.det_shape,
            "params": dict(self.params),
        }


def _require_odd_prime(l):
    if not (is_prime(l) and l != 2):
        raise ValueError(f"l={l} is not an odd prime")


def _require_prime(p, l):
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if p == l:
        raise ValueError("p must differ from l")


def subfield_descriptor(l: int, mu: int) -> SubfieldDescriptor:
    _require_odd_prime(l)
    if mu < 1 or (l - 1) % mu:
        raise ValueError(f"mu={mu} does not divide l-1={l - 1}")
    degree = (l - 1) // mu
    if mu == l - 1:
        name = "Q"
    elif mu == 1:
        name = "Q(ω)" if l == 3 else f"Q(ζ_{l})"
    elif 2 * mu == l - 1:
        name = f"Q(√{'-' if l % 4 == 3 else ''}{l})"
    elif mu == 2:
        name = f"Q(cos 2π/{l})"
    else:
        name = f"degree-{degree} subfield of Q(ζ_{l})"
    return SubfieldDescriptor(l, mu, degree, name)


def best_base_field(l: int, n: int) -> SubfieldDescriptor:
    """Smallest E_{mu,l} allowed for matrix size n: largest mu | l-1 with n = -2 mod mu."""
    _require_odd_prime(l)
    mu = max(d for d in range(1, l) if (l - 1) % d == 0 and (n + 2) % d == 0)
    return subfield_descriptor(l, mu)


def realization_verdict(l: int, p: int, n: int) -> RealizationVerdict:
    """Which simple group PSL/PSU((l-1)n - 2, .) the construction realizes over Q."""
    _require_odd_prime(l)
    _require_prime(p, l)
    if n < 1:
        raise ValueError("n must be a natural number")
    degree = (l - 1) * n - 2
    e = ord_mod(p, l)
    linear = ((l - 1) // e) % 2 == 0
    v = RealizationVerdict(
        family=Family.NOT_COVERED,
        degree=degree,
        field_size=(p, e if linear else e // 2),
        base_field=subfield_descriptor(l, l - 1),
        params={"l": l, "p": p, "n": n},
    )
    v.check("congruence_statement_vs_proof", True, statement="n != -2 mod l", proof="n != -1 mod l",
            used="n != -2 mod l", n_mod_l=n % l)
    if p == 2:
        v.check("p=2: outside the odd-p hypothesis", True, p=p)
    if not v.check("n_not_congruent_to_-2_mod_l", n % l != (l - 2) % l, n=n, l=l, n_mod_l=n % l):
        return v
    if degree < 2:
        v.check("degree too small", False, degree=degree)
        return v
    v.check("degree_at_least_2", True, degree=degree)
    v.check("order_of_p_mod_l", True, e=e, l_minus_1_over_e=(l - 1) // e)

    v.check("parity_of_(l-1)/e", True, parity="even" if linear else "odd",
            branch="linear" if linear else "unitary")
    if linear:
        v.family = Family.PSL
        v.det_shape = {"eps_exponent": degree, "psi_order_divides": 2 * l, "psi_odd_assumed": True}
    else:
        r = v2(p + 1)
        e_mult_4 = e % 4 == 0
        cong = ((l - 1) // 2 * n - 1) % 2**r == 0
        ok = v.check(
            "unitary_side_condition",
            e_mult_4 or cong,
            rule="e = 0 mod 4 OR (l-1)/2*n = 1 mod 2^r",
            e=e,
            e_multiple_of_4=e_mult_4,
            r=r,
            congruence_holds=cong,
            value_mod_2r=((l - 1) // 2 * n) % 2**r,
        )
        if not ok:
            return v
        v.family = Family.PSU
        v.det_shape = {"eps_exponent": degree // 2, "psi_order_divides": 2 * l, "psi_odd_assumed": True}
    assert degree % l != 0, "l divides the degree of a covered verdict"
    return v


def theorem_main_verdict(l: int, mu: int, p: int, n: int) -> RealizationVerdict:
    """Group bracket realized over E_{mu,l} in matrix size n (p odd)."""
    base = subfield_descriptor(l, mu)
    _require_prime(p, l)
    if p == 2:
        raise ValueError("theorem_main_verdict requires an odd prime p")
    e = ord_mod(p, l)
    unitary = ((l - 1) // e) % 2 == 1
    v = RealizationVerdict(
        family=Family.NOT_COVERED,
        degree=n,
        field_size=(p, e // 2 if unitary else e),
        base_field=base,
        params={"l": l, "mu": mu, "p": p, "n": n},
    )
    if not v.check("n = -2 mod mu", (n + 2) % mu == 0, n=n, mu=mu):
        return v
    v.check("order_of_p_mod_l", True, e=e, l_minus_1_over_e=(l - 1) // e)
    v.family = Family.BETWEEN_PGU_PSU if unitary else Family.BETWEEN_PGL_PSL
    return v


def check_v2_lemma(p: int, e: int) -> dict:
    """v2(p**(e/2) + 1) against v2(p + 1) for e/2 odd."""
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if e % 2 or (e // 2) % 2 == 0:
        raise ValueError("e must be even with e/2 odd")
    q = p ** (e // 2)
    r = v2(p + 1)
    vq = v2(q + 1)
    return {"p": p, "e": e, "q": q, "v2_p_plus_1": r, "v2_q_plus_1": vq, "holds": vq == r}


def gcd_halving(m: int, q: int) -> bool:
    """gcd(m, q+1) == gcd(m/2, q+1) for even m."""
    if m < 2 or m % 2:
        raise ValueError("m must be even and >= 2")
    direct = math.gcd(m, q + 1) == math.gcd(m // 2, q + 1)
    assert direct == (v2(q + 1) <= v2(m // 2))
    return direct


def _primes_upto(n):
    return [x for x in range(2, n + 1) if is_prime(x)]


def corollary_enumerate(p_max: int, l_max: int, n_max: int, cap: int = DEFAULT_ENUMERATION_CAP):
    """All PSL/PSU verdicts in the box, one witness per (family, degree, q).

    The witness kept is the smallest (l, p, n); rows come back sorted by it.
    """
    ls = [l for l in _primes_upto(l_max) if l > 2]
    ps = _primes_upto(p_max)
    size = len(ls) * len(ps) * max(n_max, 0)
    if size > cap:
        raise EnumerationCapExceeded(f"{size} parameter tuples exceed the cap {cap}")
    best: dict[tuple, RealizationVerdict] = {}
    for l, p, n in itertools.product(ls, ps, range(1, n_max + 1)):
        if p == l:
            continue
        v = realization_verdict(l, p, n)
        if not v.covered:
            continue
        key = (v.family.value, v.degree, v.q)
        if key not in best:  # product order already yields the smallest witness first
            best[key] = v
    return sorted(best.values(), key=lambda v: (v.params["l"], v.params["p"], v.params["n"]))
