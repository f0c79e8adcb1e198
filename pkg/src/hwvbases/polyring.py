"""Exact sparse multivariate polynomials over Z, Q, and prime fields.

Variables are indexed x(l)_{i,j} with 1 <= l <= m, 1 <= i <= r, 1 <= j <= s
for a fixed ambient (r, s, m), plus one formal parameter u used by the
one-parameter subgroup substitutions.  A monomial is a sorted tuple of
(variable key, exponent) pairs; the canonical term order is lexicographic
on exponent vectors, variables ordered by (l, i, j) with u last.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import (
    AmbientMismatch,
    DenominatorError,
    FieldRequired,
    RingError,
    RingMismatch,
)

VarKey = tuple
X_TAG = 0
U_TAG = 1
U_KEY: VarKey = (U_TAG,)
_END_KEY: VarKey = (2,)

Mono = tuple  # tuple[tuple[VarKey, int], ...], sorted by VarKey, exponents > 0
ONE: Mono = ()

Ambient = tuple[int, int, int]  # (r, s, m)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: Z, Q, or the field with p elements."""

    kind: str  # "Z" | "Q" | "Fp"
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "Q", "Fp"):
            raise RingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise RingError(f"modulus {self.p!r} is not prime")
        elif self.p is not None:
            raise RingError("only Fp takes a modulus")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def from_int(self, n: int):
        if self.kind == "Z":
            return n
        if self.kind == "Q":
            return Fraction(n)
        return n % self.p

    def add(self, a, b):
        c = a + b
        return c % self.p if self.kind == "Fp" else c

    def sub(self, a, b):
        c = a - b
        return c % self.p if self.kind == "Fp" else c

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.kind == "Fp" else c

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def inv(self, a):
        if self.kind == "Q":
            return Fraction(1) / a
        if self.kind == "Fp":
            return pow(a, self.p - 2, self.p)
        raise FieldRequired("inverse requires Q or Fp coefficients")

    def is_zero(self, a) -> bool:
        return a == 0

    def one(self):
        return self.from_int(1)

    def zero(self):
        return self.from_int(0)

    def coeff_to_json(self, a):
        if self.kind == "Q":
            return str(a) if a.denominator != 1 else str(a.numerator)
        return int(a)

    def __str__(self) -> str:
        return {"Z": "Z", "Q": "Q"}.get(self.kind, f"F{self.p}")

    def to_json(self) -> dict:
        data = {"kind": self.kind}
        if self.p is not None:
            data["p"] = self.p
        return data

    @staticmethod
    def from_json(data) -> "Ring":
        if isinstance(data, str):
            return ring_from_name(data)
        return Ring(data["kind"], data.get("p"))


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)


def ring_from_name(name: str) -> Ring:
    name = name.strip().lower()
    if name == "z":
        return ZZ
    if name == "q":
        return QQ
    if name.startswith("f"):
        return GF(int(name[1:]))
    raise RingError(f"unknown ring name {name!r}")


def xvar(l: int, i: int, j: int) -> VarKey:
    return (X_TAG, l, i, j)


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[VarKey, int] = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_sort_key(m: Mono):
    """Ascending sort by this key lists the lexicographically largest monomial
    first (higher power of an earlier variable wins)."""
    return tuple((v, -e) for v, e in m) + ((_END_KEY, 0),)


def mono_u_degree(m: Mono) -> int:
    for v, e in m:
        if v == U_KEY:
            return e
    return 0


def mono_strip_u(m: Mono) -> Mono:
    return tuple((v, e) for v, e in m if v != U_KEY)


def mono_multidegree(m: Mono, num_matrices: int) -> tuple[int, ...]:
    degs = [0] * num_matrices
    for v, e in m:
        if v[0] == X_TAG:
            degs[v[1] - 1] += e
    return tuple(degs)


def mono_total_degree(m: Mono) -> int:
    return sum(e for v, e in m if v[0] == X_TAG)


NOT_HOMOGENEOUS = object()
NOT_ISOTYPIC = object()


@dataclass(frozen=True)
class WeightPair:
    """A character of the two diagonal torus factors."""

    row: tuple[int, ...]
    col: tuple[int, ...]


class Poly:
    """Immutable sparse polynomial with exact coefficients."""

    __slots__ = ("ring", "ambient", "terms")

    def __init__(self, ring: Ring, ambient: Ambient, terms: dict[Mono, object]):
        self.ring = ring
        self.ambient = ambient
        self.terms = {m: c for m, c in terms.items() if not ring.is_zero(c)}

    @staticmethod
    def zero(ring: Ring, ambient: Ambient) -> "Poly":
        return Poly(ring, ambient, {})

    @staticmethod
    def constant(ring: Ring, ambient: Ambient, value: int) -> "Poly":
        return Poly(ring, ambient, {ONE: ring.from_int(value)})

    @staticmethod
    def one(ring: Ring, ambient: Ambient) -> "Poly":
        return Poly.constant(ring, ambient, 1)

    @staticmethod
    def variable(ring: Ring, ambient: Ambient, l: int, i: int, j: int) -> "Poly":
        r, s, m = ambient
        if not (1 <= l <= m and 1 <= i <= r and 1 <= j <= s):
            raise AmbientMismatch(f"variable ({l},{i},{j}) outside ambient {ambient}")
        return Poly(ring, ambient, {((xvar(l, i, j), 1),): ring.one()})

    @staticmethod
    def u(ring: Ring, ambient: Ambient) -> "Poly":
        return Poly(ring, ambient, {((U_KEY, 1),): ring.one()})

    def _check(self, other: "Poly") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.ambient != other.ambient:
            raise AmbientMismatch(f"{self.ambient} vs {other.ambient}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        ring = self.ring
        terms = dict(self.terms)
        for m, c in other.terms.items():
            if m in terms:
                new = ring.add(terms[m], c)
                if ring.is_zero(new):
                    del terms[m]
                else:
                    terms[m] = new
            else:
                terms[m] = c
        out = Poly.__new__(Poly)
        out.ring, out.ambient, out.terms = ring, self.ambient, terms
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        ring = self.ring
        out = Poly.__new__(Poly)
        out.ring, out.ambient = ring, self.ambient
        out.terms = {m: ring.neg(c) for m, c in self.terms.items()}
        return out

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        ring = self.ring
        terms: dict[Mono, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = ring.mul(c1, c2)
                if m in terms:
                    c = ring.add(terms[m], c)
                if ring.is_zero(c):
                    terms.pop(m, None)
                else:
                    terms[m] = c
        out = Poly.__new__(Poly)
        out.ring, out.ambient, out.terms = ring, self.ambient, terms
        return out

    def scale(self, value) -> "Poly":
        ring = self.ring
        c0 = ring.from_int(value) if isinstance(value, int) else value
        out = Poly.__new__(Poly)
        out.ring, out.ambient = ring, self.ambient
        out.terms = {
            m: cv for m, c in self.terms.items() if not ring.is_zero(cv := ring.mul(c, c0))
        }
        return out

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative powers are not defined")
        result = Poly.one(self.ring, self.ambient)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and self.ring == other.ring
            and self.ambient == other.ambient
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ring, self.ambient, tuple(sorted(self.terms.items(), key=lambda t: mono_sort_key(t[0])))))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Mono, object]]:
        return sorted(self.terms.items(), key=lambda t: mono_sort_key(t[0]))

    def multidegree(self):
        """Common per-matrix degree tuple, or the NOT_HOMOGENEOUS marker."""
        if not self.terms:
            return NOT_HOMOGENEOUS
        m = self.ambient[2]
        degs = {mono_multidegree(mono, m) for mono in self.terms}
        return degs.pop() if len(degs) == 1 else NOT_HOMOGENEOUS

    def torus_weight(self, action: str):
        """Common torus weight of all terms, or the NOT_ISOTYPIC marker.

        Under the transpose action x(l)_{i,j} scales with weight (e_i, e_j);
        under the inverse action with (-e_i, e_j).
        """
        if action not in ("Transpose", "Inverse"):
            raise ValueError(f"unknown action {action!r}")
        r, s, _ = self.ambient
        sign = 1 if action == "Transpose" else -1
        weights = set()
        for mono in self.terms:
            row = [0] * r
            col = [0] * s
            for v, e in mono:
                if v[0] == X_TAG:
                    row[v[2] - 1] += sign * e
                    col[v[3] - 1] += e
            weights.add((tuple(row), tuple(col)))
            if len(weights) > 1:
                return NOT_ISOTYPIC
        if not weights:
            return WeightPair((0,) * r, (0,) * s)
        row, col = weights.pop()
        return WeightPair(row, col)

    def u_coefficients(self) -> dict[int, "Poly"]:
        """Split into polynomials in x alone, keyed by the power of u."""
        buckets: dict[int, dict[Mono, object]] = {}
        for mono, c in self.terms.items():
            d = mono_u_degree(mono)
            buckets.setdefault(d, {})[mono_strip_u(mono)] = c
        return {d: Poly(self.ring, self.ambient, t) for d, t in sorted(buckets.items())}

    def substitute(self, replacements: dict[VarKey, "Poly"]) -> "Poly":
        """Replace variables by polynomials; untouched variables pass through."""
        ring = self.ring
        out = Poly.zero(ring, self.ambient)
        power_cache: dict[tuple[VarKey, int], Poly] = {}
        for mono, coeff in self.terms.items():
            kept = []
            factors = []
            for v, e in mono:
                if v in replacements:
                    key = (v, e)
                    if key not in power_cache:
                        power_cache[key] = replacements[v] ** e
                    factors.append(power_cache[key])
                else:
                    kept.append((v, e))
            term = Poly(ring, self.ambient, {tuple(kept): coeff})
            for f in factors:
                term = term * f
            out = out + term
        return out

    def rename_variables(self, var_map: Callable[[VarKey], VarKey], ambient: Ambient) -> "Poly":
        """Re-index every x-variable; used by the concatenation isomorphisms."""
        terms: dict[Mono, object] = {}
        for mono, c in self.terms.items():
            new = tuple(sorted((var_map(v) if v[0] == X_TAG else v, e) for v, e in mono))
            if new in terms:
                c = self.ring.add(terms[new], c)
            terms[new] = c
        return Poly(self.ring, ambient, terms)

    def change_ring(self, target: Ring) -> "Poly":
        """Coefficient-wise image; Z->Q, Z->Fp, and Q->Z (integral) only."""
        src = self.ring
        if src == target:
            return self
        if src.kind == "Z" and target.kind in ("Q", "Fp"):
            conv = target.from_int
        elif src.kind == "Q" and target.kind == "Z":
            for c in self.terms.values():
                if c.denominator != 1:
                    raise DenominatorError(f"coefficient {c} is not integral")
            conv = lambda c: int(c)
        else:
            raise RingError(f"cannot map coefficients from {src} to {target}")
        return Poly(target, self.ambient, {m: conv(c) for m, c in self.terms.items()})

    def text(self) -> str:
        """Canonical text form: terms in decreasing monomial order."""
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for v, e in mono:
                if v == U_KEY:
                    name = "u"
                else:
                    name = f"x({v[1]})_{{{v[2]},{v[3]}}}"
                factors.append(name if e == 1 else f"{name}^{e}")
            body = "*".join(factors)
            c = coeff
            neg = c < 0
            if neg:
                c = -c
            cs = str(c)
            if body:
                piece = body if cs == "1" else f"{cs}*{body}"
            else:
                piece = cs
            if not parts:
                parts.append(("-" if neg else "") + piece)
            else:
                parts.append(("- " if neg else "+ ") + piece)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "ambient": list(self.ambient),
            "terms": [
                {
                    "coeff": self.ring.coeff_to_json(c),
                    "u": mono_u_degree(m),
                    "vars": [[v[1], v[2], v[3], e] for v, e in m if v[0] == X_TAG],
                }
                for m, c in self.sorted_terms()
            ],
        }

    def __repr__(self) -> str:
        return f"Poly({self.ring}, {self.ambient}, {self.text()})"


def unipotent_substitution(f: Poly, side: str, a: int, b: int, action: str) -> Poly:
    """Apply the one-parameter elementary subgroup element with parameter u.

    Row side, transpose action: x(l)_{b,j} += u*x(l)_{a,j}.
    Row side, inverse action:   x(l)_{a,j} -= u*x(l)_{b,j}.
    Column side (either action): x(l)_{i,b} += u*x(l)_{i,a}.
    """
    r, s, m = f.ambient
    bound = r if side == "Row" else s
    if side not in ("Row", "Col"):
        raise ValueError(f"unknown side {side!r}")
    if action not in ("Transpose", "Inverse"):
        raise ValueError(f"unknown action {action!r}")
    if not (1 <= a < b <= bound):
        raise IndexError(f"need 1 <= a < b <= {bound}, got ({a}, {b})")
    u = Poly.u(f.ring, f.ambient)
    repl: dict[VarKey, Poly] = {}
    for l in range(1, m + 1):
        if side == "Row" and action == "Transpose":
            for j in range(1, s + 1):
                repl[xvar(l, b, j)] = Poly.variable(f.ring, f.ambient, l, b, j) + u * Poly.variable(
                    f.ring, f.ambient, l, a, j
                )
        elif side == "Row":
            for j in range(1, s + 1):
                repl[xvar(l, a, j)] = Poly.variable(f.ring, f.ambient, l, a, j) - u * Poly.variable(
                    f.ring, f.ambient, l, b, j
                )
        else:
            for i in range(1, r + 1):
                repl[xvar(l, i, b)] = Poly.variable(f.ring, f.ambient, l, i, b) + u * Poly.variable(
                    f.ring, f.ambient, l, i, a
                )
    return f.substitute(repl)


def is_unipotent_invariant(f: Poly, action: str) -> bool:
    """Invariance under every simple-root one-parameter subgroup on both sides.

    These generate the full upper unitriangular groups, and vanishing of all
    u-coefficients is identical vanishing over the (infinite) base field.
    """
    r, s, _ = f.ambient
    for a in range(1, r):
        if not (unipotent_substitution(f, "Row", a, a + 1, action) - f).is_zero():
            return False
    for a in range(1, s):
        if not (unipotent_substitution(f, "Col", a, a + 1, action) - f).is_zero():
            return False
    return True
