"""Exact sparse polynomials over F_p or Q in x_1..x_n, y_1..y_n and T_e.

Exponents are dense tuples over the ring's variable list; coefficients are
``int`` residues in [0, p) for F_p and ``Fraction``/``int`` over Q.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import FieldMismatch, MapUnavailable

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin, exact for p < 3.3e24."""
    if p < 2:
        return False
    for q in _SMALL_PRIMES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def expected_sqrt_flag(characteristic: int) -> bool:
    if characteristic == 0:
        return False
    return characteristic == 2 or characteristic % 4 == 1


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int
    has_sqrt_minus_one: bool

    def __post_init__(self):
        p = self.characteristic
        if p != 0:
            if not is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
            if p >= 1 << 61:
                raise ValueError("prime fields are limited to p < 2^61")
        if self.has_sqrt_minus_one != expected_sqrt_flag(p):
            raise ValueError(
                f"has_sqrt_minus_one={self.has_sqrt_minus_one} inconsistent with characteristic {p}"
            )

    @classmethod
    def of(cls, characteristic: int) -> "FieldSpec":
        return cls(characteristic, expected_sqrt_flag(characteristic))

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def coerce(self, c):
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c

    def inverse(self, c):
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        return self.coerce(Fraction(1) / Fraction(c))

    @cached_property
    def sqrt_minus_one(self) -> int:
        """A root of t^2 + 1 in F_p; raises when none exists."""
        p = self.characteristic
        if not self.has_sqrt_minus_one:
            raise MapUnavailable(f"no square root of -1 in characteristic {p}")
        if p == 2:
            return 1
        for a in range(2, p):
            if pow(a, (p - 1) // 2, p) == p - 1:
                return pow(a, (p - 1) // 4, p)
        raise AssertionError("unreachable for p = 1 mod 4")

    def describe(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"


QQ = FieldSpec.of(0)


@dataclass(frozen=True)
class PolyRing:
    """Variables x_1..x_n, y_1..y_n, then one T per listed edge."""

    n: int
    t_edges: tuple[tuple[int, int], ...] = ()

    @property
    def nvars(self) -> int:
        return 2 * self.n + len(self.t_edges)

    def x(self, i: int) -> int:
        return i - 1

    def y(self, i: int) -> int:
        return self.n + i - 1

    def t(self, e) -> int:
        return 2 * self.n + self.t_edges.index((min(e), max(e)))

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(
            [f"x{i}" for i in range(1, self.n + 1)]
            + [f"y{i}" for i in range(1, self.n + 1)]
            + [f"T{i}_{j}" for i, j in self.t_edges]
        )

    def vertex_of(self, var: int) -> int | None:
        """Vertex a variable belongs to (T variables belong to none)."""
        if var < 2 * self.n:
            return var % self.n + 1
        return None

    def contains(self, other: "PolyRing") -> bool:
        return other.n == self.n and self.t_edges[: len(other.t_edges)] == other.t_edges


def degrevlex_key(exp: tuple[int, ...]):
    """Sort key; larger key = larger monomial."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class Polynomial:
    __slots__ = ("ring", "field", "terms")

    def __init__(self, ring: PolyRing, field: FieldSpec, terms=None):
        self.ring = ring
        self.field = field
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = field.coerce(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring, field):
        return cls(ring, field)

    @classmethod
    def constant(cls, ring, field, c):
        return cls(ring, field, {(0,) * ring.nvars: c})

    @classmethod
    def var(cls, ring, field, index: int, power: int = 1):
        exp = [0] * ring.nvars
        exp[index] = power
        return cls(ring, field, {tuple(exp): 1})

    @classmethod
    def monomial(cls, ring, field, exp, c=1):
        return cls(ring, field, {tuple(exp): c})

    # basic protocol ---------------------------------------------------------
    def _compatible(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial.constant(self.ring, self.field, other)
        if other.field != self.field:
            raise FieldMismatch(
                f"{self.field.describe()} vs {other.field.describe()}"
            )
        if other.ring != self.ring:
            raise FieldMismatch("polynomials live in different variable universes")
        return other

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if other == 0:
                return not self.terms
            return NotImplemented
        return (self.ring, self.field, self.terms) == (other.ring, other.field, other.terms)

    def __hash__(self):
        return hash((self.ring, self.field, frozenset(self.terms.items())))

    def _combine(self, other, op):
        other = self._compatible(other)
        out = dict(self.terms)
        p = self.field.characteristic
        for exp, c in other.terms.items():
            v = op(out.get(exp, 0), c)
            if p:
                v %= p
            if v:
                out[exp] = v
            else:
                out.pop(exp, None)
        return self._raw(out)

    def _raw(self, terms):
        poly = Polynomial.__new__(Polynomial)
        poly.ring, poly.field, poly.terms = self.ring, self.field, terms
        return poly

    def __add__(self, other):
        return self._combine(other, operator.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, operator.sub)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.field.characteristic
        if p:
            return self._raw({e: (-c) % p for e, c in self.terms.items()})
        return self._raw({e: -c for e, c in self.terms.items()})

    def scale(self, c):
        c = self.field.coerce(c)
        if not c:
            return self._raw({})
        p = self.field.characteristic
        if p:
            return self._raw({e: v * c % p for e, v in self.terms.items()})
        return self._raw({e: self.field.coerce(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._compatible(other)
        p = self.field.characteristic
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                out[exp] = out.get(exp, 0) + c1 * c2
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: self.field.coerce(c) for e, c in out.items() if c}
        return self._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.ring, self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # inspection ------------------------------------------------------------
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(t[0]), reverse=True)

    def vertex_multidegree(self, exp) -> tuple[int, ...]:
        deg = [0] * self.ring.n
        for var, k in enumerate(exp):
            if k:
                v = self.ring.vertex_of(var)
                if v is not None:
                    deg[v - 1] += k
        return tuple(deg)

    def lift(self, ring: PolyRing) -> "Polynomial":
        """Embed into a ring with extra trailing T variables."""
        if not ring.contains(self.ring):
            raise FieldMismatch("target ring does not extend the source ring")
        pad = (0,) * (ring.nvars - self.ring.nvars)
        poly = Polynomial.__new__(Polynomial)
        poly.ring, poly.field = ring, self.field
        poly.terms = {e + pad: c for e, c in self.terms.items()}
        return poly

    def with_field(self, field: FieldSpec) -> "Polynomial":
        """Reduce an integral polynomial into another field."""
        return Polynomial(self.ring, field, dict(self.terms))

    def _signed(self, c):
        p = self.field.characteristic
        if p and c > p // 2:
            return c - p
        return c

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        pieces = []
        for exp, c in self.sorted_terms():
            c = self._signed(c)
            factors = []
            for var, k in enumerate(exp):
                if k == 1:
                    factors.append(names[var])
                elif k > 1:
                    factors.append(f"{names[var]}^{k}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self}; {self.field.describe()})"

    def to_json(self):
        return [
            {"coeff": str(self._signed(c)), "exponents": list(e)}
            for e, c in self.sorted_terms()
        ]


# --- named generators -------------------------------------------------------

def _xy(ring, field, i):
    return (Polynomial.var(ring, field, ring.x(i)), Polynomial.var(ring, field, ring.y(i)))


def edge_generator(kind: str, indices, field: FieldSpec, ring: PolyRing | None = None):
    """f, g, gbar, perm for an edge {i,j}; h for a single vertex.

    f_{i,j} = x_i y_j - x_j y_i is taken in the given order, so callers pass
    (i, j) with i < j for the standard generator.
    """
    if kind == "h":
        (i,) = (indices,) if isinstance(indices, int) else tuple(indices)
        ring = ring or PolyRing(i)
        xi, yi = _xy(ring, field, i)
        return xi * xi + yi * yi
    i, j = indices
    if i == j:
        raise ValueError(f"binomial generator needs distinct endpoints, got {i}={j}")
    ring = ring or PolyRing(max(i, j))
    xi, yi = _xy(ring, field, i)
    xj, yj = _xy(ring, field, j)
    if kind == "f":
        return xi * yj - xj * yi
    if kind == "g":
        return xi * xj + yi * yj
    if kind == "gbar":
        return xi * xj - yi * yj
    if kind == "perm":
        return xi * yj + xj * yi
    raise ValueError(f"unknown generator kind {kind!r}")


def combine(pairs) -> Polynomial:
    """Sum of coefficient * generator over the given pairs."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("combine needs at least one pair")
    total = None
    for coeff, gen in pairs:
        if not isinstance(coeff, Polynomial):
            term = gen.scale(coeff)
        else:
            if coeff.field != gen.field:
                raise FieldMismatch(f"{coeff.field.describe()} vs {gen.field.describe()}")
            term = coeff * gen
        if total is not None and total.field != term.field:
            raise FieldMismatch(f"{total.field.describe()} vs {term.field.describe()}")
        total = term if total is None else total + term
    return total


# --- ring maps ---------------------------------------------------------------

@dataclass(frozen=True)
class RingMap:
    """Phi1 / Phi2 (need the part V2 of a bipartition), Eta, Psi, and inverses."""

    tag: str
    part2: frozenset = frozenset()

    @classmethod
    def phi1(cls, bipartition):
        return cls("Phi1", frozenset(bipartition[1]))

    @classmethod
    def phi2(cls, bipartition):
        return cls("Phi2", frozenset(bipartition[1]))


ETA = RingMap("Eta")
PSI = RingMap("Psi")
ETA_INV = RingMap("EtaInverse")
PSI_INV = RingMap("PsiInverse")
PHI_TAGS = ("Phi1", "Phi2", "Phi1Inverse", "Phi2Inverse")


def inverse_map(m: RingMap) -> RingMap:
    pairs = {
        "Phi1": "Phi1Inverse", "Phi1Inverse": "Phi1", "Phi2": "Phi2Inverse",
        "Phi2Inverse": "Phi2", "Eta": "EtaInverse", "EtaInverse": "Eta",
        "Psi": "PsiInverse", "PsiInverse": "Psi",
    }
    return RingMap(pairs[m.tag], m.part2)


def _images(m: RingMap, ring: PolyRing, field: FieldSpec):
    p = field.characteristic
    if m.tag in ("Eta", "EtaInverse", "Psi", "PsiInverse") and p == 2:
        raise MapUnavailable(f"{m.tag} needs characteristic != 2")
    if m.tag in ("Psi", "PsiInverse"):
        iota = field.sqrt_minus_one  # raises MapUnavailable
    images = {}
    half = field.inverse(2) if p != 2 else None
    for i in range(1, ring.n + 1):
        x, y = _xy(ring, field, i)
        if m.tag in PHI_TAGS:
            if i not in m.part2:
                images[ring.x(i)], images[ring.y(i)] = x, y
            elif m.tag == "Phi1":
                images[ring.x(i)], images[ring.y(i)] = y, -x
            elif m.tag == "Phi1Inverse":
                images[ring.x(i)], images[ring.y(i)] = -y, x
            else:
                images[ring.x(i)], images[ring.y(i)] = y, x
        elif m.tag == "Eta":
            images[ring.x(i)], images[ring.y(i)] = x + y, x - y
        elif m.tag == "EtaInverse":
            images[ring.x(i)] = (x + y).scale(half)
            images[ring.y(i)] = (x - y).scale(half)
        elif m.tag == "Psi":
            images[ring.x(i)] = x + y.scale(iota)
            images[ring.y(i)] = x - y.scale(iota)
        elif m.tag == "PsiInverse":
            # x = (X + Y)/2, y = (X - Y)/(2i)
            inv_iota = field.inverse(iota)
            images[ring.x(i)] = (x + y).scale(half)
            images[ring.y(i)] = (x - y).scale(field.coerce(half * inv_iota))
        else:
            raise ValueError(f"unknown ring map {m.tag}")
    return images


def substitute(poly: Polynomial, images: dict) -> Polynomial:
    """Replace variable ``k`` by ``images[k]`` (missing keys map to themselves)."""
    ring, field = poly.ring, poly.field
    result = Polynomial.zero(ring, field)
    powers: dict = {}
    for exp, c in poly.terms.items():
        term = Polynomial.constant(ring, field, c)
        for var, k in enumerate(exp):
            if not k:
                continue
            key = (var, k)
            if key not in powers:
                base = images.get(var)
                if base is None:
                    base = Polynomial.var(ring, field, var)
                powers[key] = base ** k
            term = term * powers[key]
        result = result + term
    return result


def apply_map(m: RingMap, poly: Polynomial) -> Polynomial:
    return substitute(poly, _images(m, poly.ring, poly.field))
