"""Combinatorial invariants of cyclic degree-l covers of the projective line.

Branch points are tracked only through their exponents; coordinates never
enter any computation.  R always denotes the total number of branch points,
infinity included when its exponent is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ffield import is_prime, ord_mod, prime_factors


def _require_odd_prime(l):
    if not (is_prime(l) and l != 2):
        raise ValueError(f"l={l} is not an odd prime")


def genus(l: int, R: int) -> int:
    """Genus of a cyclic l-cover totally ramified over R points."""
    _require_odd_prime(l)
    if R < 2:
        raise ValueError(f"need at least 2 branch points, got R={R}")
    return (l - 1) * (R - 2) // 2


@dataclass(frozen=True)
class CoverSpec:
    l: int
    finite_exponents: tuple[int, ...]
    p: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "finite_exponents", tuple(int(k) for k in self.finite_exponents))

    @property
    def infinity_exponent(self) -> int:
        return -sum(self.finite_exponents) % self.l

    @property
    def branch_count(self) -> int:
        return len(self.finite_exponents) + (1 if self.infinity_exponent else 0)

    def to_json(self):
        return {"l": self.l, "exponents": list(self.finite_exponents), "p": self.p}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["l"], tuple(obj["exponents"]), obj.get("p"))


def validate_cover(spec: CoverSpec) -> dict:
    """Check a cover's branch data and report R, genus and the F_q-dimension."""
    _require_odd_prime(spec.l)
    for i, k in enumerate(spec.finite_exponents):
        if k % spec.l == 0:
            raise ValueError(f"branch point {i + 1} not actually ramified (exponent {k} = 0 mod {spec.l})")
    R = spec.branch_count
    report = {
        "valid": True,
        "l": spec.l,
        "exponents": [k % spec.l for k in spec.finite_exponents],
        "infinity_exponent": spec.infinity_exponent,
        "R": R,
        "genus": genus(spec.l, R),
        "dimension": R - 2,
    }
    assert (sum(spec.finite_exponents) + spec.infinity_exponent) % spec.l == 0
    if spec.p is not None:
        e = ord_mod(spec.p, spec.l)
        report["field"] = {"p": spec.p, "exp": e, "q": spec.p**e}
    return report


def fq_dimension(spec: CoverSpec) -> tuple[int, int]:
    """(dimension of H^1 mod a prime above p, exponent e with q = p**e)."""
    if spec.p is None:
        raise ValueError("fq_dimension needs the auxiliary prime p")
    report = validate_cover(spec)
    return report["dimension"], report["field"]["exp"]


def primitive_root(l: int) -> int:
    """Smallest generator of (Z/l)^x."""
    _require_odd_prime(l)
    factors = prime_factors(l - 1)
    for g in range(2, l):
        if all(pow(g, (l - 1) // s, l) != 1 for s in factors):
            return g
    raise AssertionError("no primitive root")  # pragma: no cover


def order_subgroup(l: int, mu: int) -> tuple[int, ...]:
    """The unique subgroup of order mu in (Z/l)^x, sorted."""
    _require_odd_prime(l)
    if mu < 1 or (l - 1) % mu:
        raise ValueError(f"mu={mu} does not divide l-1={l - 1}")
    h = pow(primitive_root(l), (l - 1) // mu, l)
    return tuple(sorted(pow(h, i, l) for i in range(mu)))


@dataclass(frozen=True)
class OrbitConfig:
    l: int
    mu: int
    orbits: tuple[tuple[int, ...], ...]
    character: tuple[int, ...] = field(default=())  # aligned with ``points``

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(u for orb in self.orbits for u in orb)

    @property
    def branch_count(self) -> int:
        return len(self.points)

    @property
    def character_sum(self) -> int:
        return sum(self.character) % self.l

    def cover_spec(self, p: int | None = None) -> CoverSpec:
        return CoverSpec(self.l, self.character, p)


def orbit_character(l: int, mu: int, seeds) -> OrbitConfig:
    """Branch points in full cosets a*H of the order-mu subgroup H, with f(a h) = (a h)^-1."""
    H = order_subgroup(l, mu)
    orbits, seen = [], set()
    for a in seeds:
        if a % l == 0:
            raise ValueError(f"seed {a} is not a unit mod {l}")
        orb = tuple(a * h % l for h in H)
        if seen.intersection(orb):
            raise ValueError("orbits must be disjoint")
        seen.update(orb)
        orbits.append(orb)
    character = tuple(pow(u, -1, l) for orb in orbits for u in orb)
    cfg = OrbitConfig(l, mu, tuple(orbits), character)
    for orb in orbits:
        assert orb and len(orb) == mu
        if mu > 1:
            assert sum(pow(u, -1, l) for u in orb) % l == 0
    return cfg
