"""Exact arithmetic in prime fields and their extensions.

A :class:`FieldTower` is F_p[x]/(f) for a monic irreducible f of degree k.
Elements are :class:`FFElement` values: a coefficient vector (constant term
first) together with the tower they belong to.  Every element also has an
integer *code* ``sum(c_i * p**i)``; the matrix engines work on codes through
the log/antilog tables of :class:`FieldOps`.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

#: fields above this size are refused (brute-force discrete logs only)
MAX_FIELD_SIZE = 1 << 20


class TowerMismatchError(ValueError):
    """Arithmetic between elements of different towers."""


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v2(0) is infinite")
    n = abs(n)
    return (n & -n).bit_length() - 1


def prime_power(q: int) -> tuple[int, int]:
    """Write q = p**k with p prime; raise if q is not a prime power."""
    for p in prime_factors(q)[:1]:
        k = 0
        while q % p == 0:
            q //= p
            k += 1
        if q == 1:
            return p, k
    raise ValueError(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# polynomials over F_p: lists of ints, constant term first, no trailing zeros


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a, b, p):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
    return _trim(quot), a


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [x * inv % p for x in a]
    return a


def poly_powmod(a, e, f, p):
    result = [1]
    base = poly_mod(a, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = _trim(list(f))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if poly_sub(poly_powmod(x, p**k, f, p), x, p):
        return False
    for s in prime_factors(k):
        h = poly_sub(poly_powmod(x, p ** (k // s), f, p), x, p)
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


@functools.lru_cache(maxsize=None)
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree k over F_p.

    Candidates x**k + c_{k-1} x**(k-1) + ... + c_0 are scanned with the code
    ``sum(c_i p**i)`` increasing, so the choice is reproducible.  Returns the
    coefficient tuple, constant term first, leading 1 included.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if k < 1:
        raise ValueError("degree must be >= 1")
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        f = low + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# towers


class FieldTower:
    """The field F_{p^k} = F_p[x]/(modulus).

    Towers are interned per (p, k), so ``FieldTower(7, 2) is FieldTower(7, 2)``.
    Lookup tables are built lazily and never change afterwards.
    """

    _cache: dict[tuple[int, int], FieldTower] = {}

    def __new__(cls, p: int, k: int = 1):
        key = (p, k)
        tower = cls._cache.get(key)
        if tower is None:
            if not is_prime(p):
                raise ValueError(f"p={p} is not prime")
            if k < 1:
                raise ValueError("extension degree must be >= 1")
            if p**k > MAX_FIELD_SIZE:
                raise ValueError(f"F_{p}^{k} exceeds the desk-scale cap {MAX_FIELD_SIZE}")
            tower = super().__new__(cls)
            tower._p = p
            tower._k = k
            tower._modulus = find_irreducible(p, k)
            cls._cache[key] = tower
        return tower

    def __reduce__(self):
        return FieldTower, (self._p, self._k)

    @property
    def p(self) -> int:
        return self._p

    @property
    def k(self) -> int:
        return self._k

    @property
    def modulus(self) -> tuple[int, ...]:
        return self._modulus

    @property
    def size(self) -> int:
        return self._p**self._k

    def __repr__(self):
        return f"FieldTower(p={self.p}, k={self.k}, modulus={list(self.modulus)})"

    def to_json(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- element construction --------------------------------------------

    def __call__(self, value) -> FFElement:
        """Coerce an int (prime-field residue) or coefficient sequence."""
        if isinstance(value, FFElement):
            if value.tower is not self:
                raise TowerMismatchError(f"element of {value.tower} used in {self}")
            return value
        if isinstance(value, int):
            return FFElement(self, _reduce_coeffs([value], self))
        return FFElement(self, _reduce_coeffs(list(value), self))

    def zero(self) -> FFElement:
        return FFElement(self, (0,) * self.k)

    def one(self) -> FFElement:
        return self(1)

    def gen(self) -> FFElement:
        """The class of x (a root of the modulus)."""
        if self.k == 1:
            return self(-self.modulus[0])
        return self([0, 1])

    def from_code(self, code: int) -> FFElement:
        p = self.p
        return FFElement(self, tuple((code // p**i) % p for i in range(self.k)))

    def elements(self):
        for code in range(self.size):
            yield self.from_code(code)

    @functools.cached_property
    def primitive_element(self) -> FFElement:
        """Smallest-code generator of the multiplicative group."""
        n = self.size - 1
        factors = prime_factors(n)
        for code in range(1, self.size):
            x = self.from_code(code)
            if all(x ** (n // s) != self.one() for s in factors):
                return x
        raise AssertionError("no primitive element")  # pragma: no cover

    @functools.cached_property
    def ops(self) -> FieldOps:
        return FieldOps(self)

    # -- subfields -----------------------------------------------------------

    @functools.lru_cache(maxsize=None)
    def embedding(self, d: int) -> tuple[FieldTower, tuple[int, ...]]:
        """Embed F_{p^d} into this tower by matching a root of its modulus.

        Returns the small tower and the table ``small code -> big code``.
        The root is the first of 0, h**0, h**1, ... (h = g**((q-1)/(p^d-1)))
        annihilated by the small modulus.
        """
        if d < 1 or self.k % d:
            raise ValueError(f"F_{self.p}^{d} is not a subfield of F_{self.p}^{self.k}")
        small = FieldTower(self.p, d)
        if d == self.k:
            return small, tuple(range(self.size))
        h = self.primitive_element ** ((self.size - 1) // (small.size - 1))
        root = None
        x = self.one()
        candidates = [self.zero()]
        for _ in range(small.size - 1):
            candidates.append(x)
            x = x * h
        for x in candidates:
            if _poly_eval(small.modulus, x) == self.zero():
                root = x
                break
        if root is None:
            raise AssertionError("subfield modulus has no root")  # pragma: no cover
        powers = [self.one()]
        for _ in range(d - 1):
            powers.append(powers[-1] * root)
        table = []
        for code in range(small.size):
            coeffs = small.from_code(code).coeffs
            acc = self.zero()
            for c, pw in zip(coeffs, powers):
                if c:
                    acc = acc + pw * c
            table.append(acc.code)
        return small, tuple(table)

    def embed(self, x: FFElement) -> FFElement:
        """Image of an element of a subfield tower inside this tower."""
        if x.tower is self:
            return x
        if x.tower.p != self.p:
            raise TowerMismatchError("different characteristic")
        _, table = self.embedding(x.tower.k)
        return self.from_code(table[x.code])

    def restrict(self, x: FFElement, d: int) -> FFElement:
        """Express an element lying in the subfield F_{p^d} in that subfield's tower."""
        if x.tower is not self:
            raise TowerMismatchError(f"element of {x.tower} used in {self}")
        small, table = self.embedding(d)
        try:
            return small.from_code(table.index(x.code))
        except ValueError:
            raise ValueError(f"{x} does not lie in F_{self.p}^{d}") from None


def _reduce_coeffs(coeffs, tower):
    p = tower.p
    c = _trim([int(v) % p for v in coeffs])
    if len(c) > tower.k:
        c = poly_mod(c, tower.modulus, p)
    return tuple(c) + (0,) * (tower.k - len(c))


def _poly_eval(coeffs, x: FFElement) -> FFElement:
    acc = x.tower.zero()
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class FFElement:
    tower: FieldTower
    coeffs: tuple[int, ...]

    @property
    def code(self) -> int:
        p = self.tower.p
        out = 0
        for c in reversed(self.coeffs):
            out = out * p + c
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.tower(other)
        if not isinstance(other, FFElement):
            return NotImplemented
        return self.tower is other.tower and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.tower.p, self.tower.k, self.coeffs))

    def __repr__(self):
        if self.tower.k == 1:
            return f"{self.coeffs[0]} (mod {self.tower.p})"
        terms = [f"{c}*x^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"[{' + '.join(terms) or '0'}] in F_{self.tower.p}^{self.tower.k}"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> FFElement:
        if isinstance(other, int):
            return self.tower(other)
        if not isinstance(other, FFElement):
            return NotImplemented
        if other.tower is not self.tower:
            raise TowerMismatchError(
                f"cannot combine F_{self.tower.p}^{self.tower.k} and "
                f"F_{other.tower.p}^{other.tower.k}; embed explicitly"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.tower.p
        return FFElement(self.tower, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.tower.p
        return FFElement(self.tower, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = self.tower
        prod = poly_mul(list(self.coeffs), list(other.coeffs), t.p)
        return FFElement(t, _reduce_coeffs(prod, t))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.tower.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FFElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.tower.size - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def frobenius(self, j: int = 1) -> FFElement:
        return frobenius(self, j)


# ---------------------------------------------------------------------------
# operations


def frobenius(x: FFElement, j: int = 1) -> FFElement:
    """x ** (p ** j)."""
    k = x.tower.k
    return x ** (x.tower.p ** (j % k))


def mult_order(x: FFElement) -> int:
    """Least m >= 1 with x**m == 1."""
    if x.is_zero():
        raise ValueError("zero has no multiplicative order")
    n = x.tower.size - 1
    order = n
    for s in prime_factors(n):
        while order % s == 0 and x ** (order // s) == 1:
            order //= s
    return order


def minimal_polynomial_degree(x: FFElement) -> int:
    """Size of the Frobenius orbit of x, i.e. the degree of x over F_p."""
    y = frobenius(x, 1)
    d = 1
    while y != x:
        y = frobenius(y, 1)
        d += 1
    return d


def ord_mod(p: int, l: int) -> int:
    """Multiplicative order of p modulo the odd prime l."""
    if not is_prime(p) or not is_prime(l) or l == 2:
        raise ValueError(f"need a prime p and an odd prime l, got p={p}, l={l}")
    if p == l:
        raise ValueError("p must differ from l")
    e, acc = 1, p % l
    while acc != 1:
        acc = acc * p % l
        e += 1
    return e


def primitive_lth_root(l: int, tower: FieldTower) -> FFElement:
    """A primitive l-th root of unity in F_{p^e}, e = ord(p mod l).

    Deterministic: g**((q-1)/l) for the tower's primitive element g.
    """
    e = ord_mod(tower.p, l)
    if tower.k != e:
        raise ValueError(f"tower degree {tower.k} differs from ord({tower.p} mod {l}) = {e}")
    zeta = tower.primitive_element ** ((tower.size - 1) // l)
    assert zeta != 1 and zeta**l == 1
    return zeta


def norm_solutions(nu: FFElement, tower: FieldTower) -> list[FFElement]:
    """Every lambda in F_{q^2} with lambda * lambda**q == nu (q**2 = tower size)."""
    lam = solve_norm_equation(nu, tower)
    q = _half_field_size(tower)
    g = tower.primitive_element
    kappa = g ** (q - 1)  # generates the norm-one group mu_{q+1}
    out, x = [], lam
    for _ in range(q + 1):
        out.append(x)
        x = x * kappa
    return out


def _half_field_size(tower: FieldTower) -> int:
    if tower.k % 2:
        raise ValueError(f"F_{tower.p}^{tower.k} is not a quadratic extension of anything")
    return tower.p ** (tower.k // 2)


def solve_norm_equation(nu: FFElement, tower: FieldTower) -> FFElement:
    """Some lambda in F_{q^2} with lambda**(q+1) == nu.

    ``nu`` may be given in the tower of F_q or already inside F_{q^2}.
    """
    q = _half_field_size(tower)
    if nu.tower is not tower:
        nu = tower.embed(nu)
    if nu.is_zero():
        raise ValueError("norm equation with nu = 0 has only the trivial solution")
    if nu**q != nu:
        raise ValueError(f"{nu} does not lie in F_{q}")
    # N(g) = g**(q+1) generates F_q^x, so a scan of q - 1 powers finds log_N(g)(nu)
    g = tower.primitive_element
    h = g ** (q + 1)
    acc, i = tower.one(), 0
    while acc != nu:
        acc = acc * h
        i += 1
    lam = g**i
    assert lam * lam**q == nu
    return lam


def norm_to_subfield(x: FFElement, d: int) -> FFElement:
    """Norm from F_{p^k} to F_{p^d}, returned as an element of the small tower."""
    tower = x.tower
    if d < 1 or tower.k % d:
        raise ValueError(f"{d} does not divide {tower.k}")
    acc = tower.one()
    y = x
    for _ in range(tower.k // d):
        acc = acc * y
        y = frobenius(y, d)
    assert frobenius(acc, d) == acc
    return tower.restrict(acc, d)


# ---------------------------------------------------------------------------
# table-driven arithmetic on integer codes


class FieldOps:
    """Log/antilog tables for fast arithmetic on element codes.

    ``exp`` has length 2(q-1) so products need no reduction;
    ``log[0]`` is unused (set to -1).
    """

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.p = p = tower.p
        self.k = k = tower.k
        self.q = q = tower.size
        g = tower.primitive_element
        exp = [0] * (2 * (q - 1))
        log = [-1] * q
        # multiply by g in coefficient form; avoids the generic pow path
        mod = tower.modulus
        gc = list(g.coeffs)
        cur = [1] + [0] * (k - 1)
        for i in range(q - 1):
            code = 0
            for c in reversed(cur):
                code = code * p + c
            exp[i] = code
            log[code] = i
            prod = [0] * (2 * k - 1)
            for a, x in enumerate(cur):
                if x:
                    for b, y in enumerate(gc):
                        if y:
                            prod[a + b] += x * y
            for deg in range(2 * k - 2, k - 1, -1):
                c = prod[deg] % p
                if c:
                    for j in range(k + 1):
                        prod[deg - k + j] -= c * mod[j]
            cur = [v % p for v in prod[:k]]
        exp[q - 1 :] = exp[: q - 1]
        self.exp = exp
        self.log = log
        if p == 2:
            self._add = None
        elif q <= 1024:
            digits = [tuple((c // p**i) % p for i in range(k)) for c in range(q)]
            pw = [p**i for i in range(k)]
            self._add = [
                sum(((da[i] + db[i]) % p) * pw[i] for i in range(k)) for da in digits for db in digits
            ]
        else:
            self._add = None
        self.neg = [self._neg_slow(c) for c in range(q)] if q <= 1 << 16 else None

    def _neg_slow(self, a):
        p, out, mult = self.p, 0, 1
        while a:
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add is not None:
            return self._add[a * self.q + b]
        p, out, mult = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def negate(self, a: int) -> int:
        if self.neg is not None:
            return self.neg[a]
        return self._neg_slow(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.negate(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frob(self, a: int, j: int) -> int:
        return self.pow(a, self.p ** (j % self.k))


__all__ = [
    "FFElement",
    "FieldOps",
    "FieldTower",
    "MAX_FIELD_SIZE",
    "TowerMismatchError",
    "find_irreducible",
    "frobenius",
    "is_irreducible",
    "is_prime",
    "minimal_polynomial_degree",
    "mult_order",
    "norm_solutions",
    "norm_to_subfield",
    "ord_mod",
    "prime_factors",
    "prime_power",
    "primitive_lth_root",
    "solve_norm_equation",
    "v2",
]
