"""Exact arithmetic in multiquadratic fields Q(sqrt(d1),...,sqrt(dk)).

Elements are rational coordinate vectors over the subset basis
{prod_{i in S} sqrt(d_i) : S subseteq {1..k}}, indexed by bitmask with
generator 0 as the least significant bit.  Automorphisms are sign vectors on
the generators, so the Galois group over Q is elementary abelian of order 2^k
and composes by XOR of masks.

The canonical square root of a rational r^2 * prod_{i in S} d_i is the
positive multiple r of the basis monomial for S; all radical quotients are
evaluated exactly against that choice.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import numpy as np

from .errors import NonUnitQuotientError, TowerError
from .groups import FiniteGroup, GroupHom, subgroup_from_elements
from .wreath import WreathProduct, build_wreath
from .actions import regular_action
from .embeddings import EmbeddingReport, ShortExactSequence, verify_embedding

GENERATOR_BOUND = 10**6


def _square_free_part(n: int) -> tuple[int, int]:
    """n = r^2 * m with m square-free; returns (r, m), preserving the sign on m."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    r, m = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            r *= d ** (e // 2)
            if e % 2:
                m *= d
        d += 1
    m *= n
    return r, sign * m


def _is_square_free(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


class MultiQuadField:
    """Q(sqrt(d1),...,sqrt(dk)) for multiplicatively independent square-free d_i."""

    def __init__(self, generators: Sequence[int]):
        gens = tuple(int(d) for d in generators)
        for d in gens:
            if d in (0, 1):
                raise ValueError(f"generator {d} is excluded")
            if abs(d) > GENERATOR_BOUND:
                raise ValueError(f"generator {d} exceeds bound {GENERATOR_BOUND}")
            if not _is_square_free(d):
                raise ValueError(f"generator {d} is not square-free")
        if len(set(gens)) != len(gens):
            raise ValueError("generators must be distinct")
        k = len(gens)
        for mask in range(1, 1 << k):
            prod = 1
            for i in range(k):
                if mask >> i & 1:
                    prod *= gens[i]
            if prod > 0 and isqrt(prod) ** 2 == prod:
                raise ValueError(
                    f"generators are multiplicatively dependent: subset {mask:#b} "
                    f"multiplies to the square {prod}")
        self.generators = gens
        self.k = k
        self.dim = 1 << k

    # -- basis bookkeeping ---------------------------------------------------

    def subset_product(self, mask: int) -> int:
        prod = 1
        for i in range(self.k):
            if mask >> i & 1:
                prod *= self.generators[i]
        return prod

    def basis_label(self, mask: int) -> str:
        if mask == 0:
            return "1"
        return "·".join(f"√{self.generators[i]}" for i in range(self.k) if mask >> i & 1)

    # -- element constructors --------------------------------------------------

    def element(self, coords: Sequence, ) -> "MultiQuadElement":
        return MultiQuadElement(self, coords)

    def zero(self) -> "MultiQuadElement":
        return self.element([Fraction(0)] * self.dim)

    def one(self) -> "MultiQuadElement":
        return self.rational(1)

    def rational(self, q) -> "MultiQuadElement":
        coords = [Fraction(0)] * self.dim
        coords[0] = Fraction(q)
        return self.element(coords)

    def gen_sqrt(self, i: int) -> "MultiQuadElement":
        coords = [Fraction(0)] * self.dim
        coords[1 << i] = Fraction(1)
        return self.element(coords)

    def sqrt_of_rational(self, q) -> "MultiQuadElement":
        """Canonical square root r * basis(S) of q = r^2 * prod_{i in S} d_i."""
        q = Fraction(q)
        if q == 0:
            return self.zero()
        r0, m = _square_free_part(q.numerator * q.denominator)
        for mask in range(self.dim):
            if self.subset_product(mask) == m:
                coords = [Fraction(0)] * self.dim
                coords[mask] = Fraction(r0, q.denominator)
                return self.element(coords)
        raise ValueError(f"sqrt({q}) does not lie in {self!r}")

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiQuadField) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        inside = ",".join(f"√{d}" for d in self.generators)
        return f"Q({inside})" if self.generators else "Q"


class MultiQuadElement:
    """Exact field element: 2^k rational coordinates over the subset basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: MultiQuadField, coords: Sequence):
        if len(coords) != field.dim:
            raise ValueError(f"need {field.dim} coordinates, got {len(coords)}")
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)

    def _check_same_field(self, other: "MultiQuadElement") -> None:
        if self.field != other.field:
            raise ValueError("elements live in different fields")

    def __add__(self, other: "MultiQuadElement") -> "MultiQuadElement":
        self._check_same_field(other)
        return MultiQuadElement(self.field, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "MultiQuadElement") -> "MultiQuadElement":
        self._check_same_field(other)
        return MultiQuadElement(self.field, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "MultiQuadElement":
        return MultiQuadElement(self.field, [-a for a in self.coords])

    def __mul__(self, other: "MultiQuadElement") -> "MultiQuadElement":
        self._check_same_field(other)
        f = self.field
        out = [Fraction(0)] * f.dim
        for s, a in enumerate(self.coords):
            if a == 0:
                continue
            for t, b in enumerate(other.coords):
                if b == 0:
                    continue
                out[s ^ t] += a * b * f.subset_product(s & t)
        return MultiQuadElement(f, out)

    def inverse(self) -> "MultiQuadElement":
        """Multiply by all sign conjugates and divide by the rational norm."""
        f = self.field
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        prod = f.one()
        for mask in range(1, f.dim):
            signs = tuple(-1 if mask >> i & 1 else 1 for i in range(f.k))
            prod = prod * FieldAutomorphism(f, signs).apply(self)
        norm = self * prod
        if any(c != 0 for c in norm.coords[1:]):
            raise ArithmeticError("norm failed to collapse to a rational")
        if norm.coords[0] == 0:
            raise ZeroDivisionError("zero norm for a nonzero element")
        scale = 1 / norm.coords[0]
        return MultiQuadElement(f, [c * scale for c in prod.coords])

    def __truediv__(self, other: "MultiQuadElement") -> "MultiQuadElement":
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiQuadElement) and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __bool__(self) -> bool:
        return any(c != 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __str__(self) -> str:
        terms = []
        for mask, c in enumerate(self.coords):
            if c == 0:
                continue
            if mask == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(self.field.basis_label(mask))
            else:
                terms.append(f"{c}·{self.field.basis_label(mask)}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"<{self} in {self.field!r}>"


def field_arithmetic(a: MultiQuadElement, b: Optional[MultiQuadElement], op: str) -> MultiQuadElement:
    """Named dispatch over the exact element operations."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown field operation {op!r}")


class FieldAutomorphism:
    """Automorphism sqrt(d_i) -> signs[i] * sqrt(d_i); composition is sign product."""

    __slots__ = ("field", "signs")

    def __init__(self, field: MultiQuadField, signs: Sequence[int]):
        signs = tuple(int(s) for s in signs)
        if len(signs) != field.k or any(s not in (-1, 1) for s in signs):
            raise ValueError("signs must be a +-1 vector, one entry per generator")
        self.field = field
        self.signs = signs

    def mask(self) -> int:
        return sum(1 << i for i, s in enumerate(self.signs) if s == -1)

    def apply(self, x: MultiQuadElement) -> MultiQuadElement:
        if x.field != self.field:
            raise ValueError("element lives in a different field")
        neg = self.mask()
        coords = [
            -c if (mask & neg).bit_count() % 2 else c
            for mask, c in enumerate(x.coords)
        ]
        return MultiQuadElement(self.field, coords)

    __call__ = apply

    def compose(self, other: "FieldAutomorphism") -> "FieldAutomorphism":
        if other.field != self.field:
            raise ValueError("automorphisms of different fields")
        return FieldAutomorphism(self.field, tuple(a * b for a, b in zip(self.signs, other.signs)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldAutomorphism) and self.field == other.field
                and self.signs == other.signs)

    def __repr__(self) -> str:
        parts = ", ".join(f"√{d}->{s:+d}√{d}" for d, s in zip(self.field.generators, self.signs))
        return f"<automorphism {parts}>" if parts else "<identity automorphism>"


def _mask_labels(count: int) -> list[str]:
    if count == 2:
        return ["id", "eta"]
    return ["id"] + [f"rho{m}" for m in range(1, count)]


def galois_group(f: MultiQuadField) -> tuple[FiniteGroup, list[FieldAutomorphism]]:
    """Gal over Q as a concrete group (XOR on sign masks) plus the automorphisms.

    Index m corresponds to negating exactly the generators in bitmask m, so
    the group is elementary abelian of order 2^k.
    """
    dim = f.dim
    idx = np.arange(dim)
    table = idx[:, None] ^ idx[None, :]
    group = FiniteGroup(table, labels=_mask_labels(dim), name=f"Gal({f!r}/Q)")
    auts = [
        FieldAutomorphism(f, tuple(-1 if m >> i & 1 else 1 for i in range(f.k)))
        for m in range(dim)
    ]
    return group, auts


def _subfield_positions(f: MultiQuadField, k_generators: Sequence[int]) -> list[int]:
    k_gens = [int(d) for d in k_generators]
    positions = []
    for d in f.generators:
        if d in k_gens:
            positions.append(f.generators.index(d))
    if len(positions) != len(set(k_gens)) or len(set(k_gens)) != len(k_gens):
        raise ValueError("K generators must be a subset of the field generators")
    return positions


def restriction(f_big: MultiQuadField, k_generators: Sequence[int],
                rho: FieldAutomorphism) -> FieldAutomorphism:
    """Restrict an automorphism to the subfield on the chosen generators."""
    positions = _subfield_positions(f_big, k_generators)
    sub = MultiQuadField([f_big.generators[p] for p in positions])
    return FieldAutomorphism(sub, tuple(rho.signs[p] for p in positions))


def restriction_hom(f_big: MultiQuadField, k_generators: Sequence[int]) -> GroupHom:
    """The induced surjection Gal(L/Q) -> Gal(K/Q) on concrete groups."""
    positions = _subfield_positions(f_big, k_generators)
    big, _ = galois_group(f_big)
    sub_field = MultiQuadField([f_big.generators[p] for p in positions])
    small, _ = galois_group(sub_field)
    image = np.empty(big.order, dtype=np.int64)
    for m in range(big.order):
        image[m] = sum(((m >> p) & 1) << j for j, p in enumerate(positions))
    return GroupHom(big, small, image)


class QuadraticTower:
    """F=Q <= K <= L with L multiquadratic and a designated rational alpha
    whose canonical square root lies in L but not in K."""

    def __init__(self, l_field: MultiQuadField, k_generators: Sequence[int], alpha):
        self.L = l_field
        self.k_positions = _subfield_positions(l_field, k_generators)
        self.K_generators = tuple(l_field.generators[p] for p in self.k_positions)
        if len(self.K_generators) >= l_field.k:
            raise TowerError("K must be a proper subfield of L")
        self.K = MultiQuadField(self.K_generators)
        self.alpha = Fraction(alpha)
        if self.alpha <= 0:
            raise TowerError("alpha must be a positive rational")
        try:
            self.sqrt_alpha = l_field.sqrt_of_rational(self.alpha)
        except ValueError as exc:
            raise TowerError(str(exc)) from None
        self.alpha_mask = next(m for m, c in enumerate(self.sqrt_alpha.coords) if c != 0)
        k_mask = sum(1 << p for p in self.k_positions)
        if self.alpha_mask & ~k_mask == 0:
            raise TowerError("sqrt(alpha) already lies in K")

    @property
    def gap(self) -> int:
        return self.L.k - len(self.K_generators)

    def k_mask_in_l(self) -> int:
        return sum(1 << p for p in self.k_positions)

    def __repr__(self) -> str:
        return f"<tower Q <= {self.K!r} <= {self.L!r}, alpha={self.alpha}>"


def chi(t: QuadraticTower, rho: FieldAutomorphism, tau: FieldAutomorphism) -> int:
    """Exponent in (-1)^chi = rho(sqrt(rho^-1(tau(alpha)))) / sqrt(tau(alpha)).

    Evaluated exactly in L; anything other than +-1 signals broken tower data.
    """
    if tau.field != t.K:
        raise ValueError("tau must be an automorphism of the tower's K")
    if rho.field != t.L:
        raise ValueError("rho must be an automorphism of the tower's L")
    tau_alpha = tau.apply(t.K.rational(t.alpha)).rational_value()
    rho_inv = rho  # sign vectors are involutions
    pre = rho_inv.apply(t.L.rational(tau_alpha)).rational_value()
    numerator = rho.apply(t.L.sqrt_of_rational(pre))
    denominator = t.L.sqrt_of_rational(tau_alpha)
    quotient_val = numerator / denominator
    if quotient_val == t.L.one():
        return 0
    if quotient_val == -t.L.one():
        return 1
    raise NonUnitQuotientError(f"radical quotient {quotient_val} is not +-1")


def tower_extension(t: QuadraticTower) -> ShortExactSequence:
    """1 -> Gal(L/K) -> Gal(L/Q) -> Gal(K/Q) -> 1 on concrete groups."""
    eps = restriction_hom(t.L, t.K_generators)
    big = eps.domain
    k_mask = t.k_mask_in_l()
    fixing = [m for m in range(big.order) if m & k_mask == 0]
    _sub, incl = subgroup_from_elements(big, fixing, name=f"Gal({t.L!r}/{t.K!r})")
    return ShortExactSequence(incl, eps)


def quadratic_kummer_embedding(
    t: QuadraticTower,
    size_cap: Optional[int] = None,
    dense_cap: Optional[int] = None,
) -> tuple[WreathProduct, GroupHom, EmbeddingReport]:
    """Embed Gal(L/Q) into Gal(L/K) wr_Omega Gal(K/Q) via sigma_rho(tau) = eta^chi.

    Omega is Gal(K/Q) acting on itself by composition (K is Galois over Q), the
    base group is {id, eta} with eta the flip of the single generator of L/K.
    """
    if t.gap != 1:
        raise TowerError("the chi-based embedding needs [L:K] = 2 (one extra generator)")
    big, auts_l = galois_group(t.L)
    small, auts_k = galois_group(t.K)
    eps = restriction_hom(t.L, t.K_generators)
    flip_idx = t.alpha_mask & ~t.k_mask_in_l()
    base = FiniteGroup([[0, 1], [1, 0]], labels=["id", big.labels[flip_idx]],
                       name=f"Gal({t.L!r}/{t.K!r})")
    omega = regular_action(small)
    w = build_wreath(base, omega, size_cap=size_cap, dense_cap=dense_cap)
    image = np.empty(big.order, dtype=np.int64)
    for m in range(big.order):
        digits = [chi(t, auts_l[m], auts_k[j]) for j in range(small.order)]
        image[m] = w.encode(digits, int(eps.image[m]))
    phi = GroupHom(big, w.product, image)
    return w, phi, verify_embedding(phi)


def verify_cocycle(t: QuadraticTower) -> tuple[bool, Optional[tuple[int, int, int]]]:
    """chi(r1 r2, tau) == chi(r2, r1^-1 tau) + chi(r1, tau) mod 2 over all triples.

    Returns (True, None) or (False, first failing (rho1, rho2, tau) indices).
    """
    big, auts_l = galois_group(t.L)
    small, auts_k = galois_group(t.K)
    eps = restriction_hom(t.L, t.K_generators)
    for i1 in range(big.order):
        for i2 in range(big.order):
            prod = big.mul(i1, i2)
            for j in range(small.order):
                lhs = chi(t, auts_l[prod], auts_k[j])
                shifted = small.mul(small.inv(int(eps.image[i1])), j)
                rhs = (chi(t, auts_l[i2], auts_k[shifted]) + chi(t, auts_l[i1], auts_k[j])) % 2
                if lhs != rhs:
                    return False, (i1, i2, j)
    return True, None
