"""Finite abelian groups in invariant-factor form.

A group is stored as a chain of invariant factors d1 | d2 | ... | dm with
order n = d1*...*dm and exponent v = dm.  Elements are coordinate vectors,
but internally every element is identified with its mixed-radix index in
[0, n) (last coordinate least significant), so a subset is an n-bit mask
and translating a subset by a group element costs a few shift/mask
operations per coordinate axis.

Everything here is immutable and pure; values can be shared freely between
concurrent callers.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "GroupSpec",
    "Element",
    "DivisorSet",
    "make_group",
    "parse_group_spec",
    "format_group_spec",
    "add",
    "neg",
    "scale",
    "divisors",
    "smallest_prime",
    "prime_factors",
    "divisor_sets",
    "invariant_factor_chains",
    "all_abelian_groups",
    "cyclic_quotient_lift",
]


# ---------------------------------------------------------------------------
# small number-theory helpers (desk scale; trial division is plenty)

def prime_factors(x: int) -> dict[int, int]:
    """Prime factorization of x >= 1 as {prime: exponent}."""
    if x < 1:
        raise ValueError(f"expected a positive integer, got {x}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= x:
        while x % p == 0:
            out[p] = out.get(p, 0) + 1
            x //= p
        p += 1 if p == 2 else 2
    if x > 1:
        out[x] = out.get(x, 0) + 1
    return out


def divisors(x: int) -> list[int]:
    """All divisors of x >= 1, sorted ascending."""
    divs = [1]
    for p, e in prime_factors(x).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def smallest_prime(x: int) -> int:
    """Smallest prime divisor of x >= 2."""
    if x < 2:
        raise ValueError(f"expected an integer >= 2, got {x}")
    p = 2
    while p * p <= x:
        if x % p == 0:
            return p
        p += 1 if p == 2 else 2
    return x


# ---------------------------------------------------------------------------
# groups and elements

@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group Z_{d1} x ... x Z_{dm} with d1 | d2 | ... | dm.

    n is the order (product of the factors), v the exponent (last factor).
    Construct through make_group / parse_group_spec, which normalize and
    validate the chain.
    """

    factors: tuple[int, ...]
    n: int
    v: int

    @property
    def is_cyclic(self) -> bool:
        return len(self.factors) == 1

    def coords_of(self, index: int) -> tuple[int, ...]:
        coords = []
        for d in reversed(self.factors):
            coords.append(index % d)
            index //= d
        return tuple(reversed(coords))

    def index_of(self, coords: Iterable[int]) -> int:
        idx = 0
        for c, d in zip(coords, self.factors):
            idx = idx * d + (c % d)
        return idx

    def element_at(self, index: int) -> "Element":
        if not 0 <= index < self.n:
            raise ValueError(f"index {index} out of range for group of order {self.n}")
        return Element(self.coords_of(index))

    def element(self, coords: Iterable[int]) -> "Element":
        coords = tuple(coords)
        if len(coords) != len(self.factors):
            raise ValueError(
                f"expected {len(self.factors)} coordinates, got {len(coords)}"
            )
        return Element(tuple(c % d for c, d in zip(coords, self.factors)))

    def identity(self) -> "Element":
        return Element((0,) * len(self.factors))

    def add_index(self, i: int, j: int) -> int:
        ci, cj = self.coords_of(i), self.coords_of(j)
        return self.index_of(a + b for a, b in zip(ci, cj))

    def neg_index(self, i: int) -> int:
        return self.index_of(-c for c in self.coords_of(i))

    def scale_index(self, h: int, i: int) -> int:
        return self.index_of(h * c for c in self.coords_of(i))

    def indices(self) -> range:
        return range(self.n)

    def __str__(self) -> str:
        return format_group_spec(self)


@dataclass(frozen=True)
class Element:
    """A group element as a tuple of residues, coords[i] in [0, d_i)."""

    coords: tuple[int, ...]

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _canonical_invariant_factors(factors: Iterable[int]) -> tuple[int, ...]:
    """Invariant-factor chain of the product of cyclic groups Z_f.

    Merges the prime-power content of all factors: for each prime, the
    exponent multiset is right-aligned so the largest powers end up in the
    last (biggest) invariant factor.
    """
    per_prime: dict[int, list[int]] = {}
    for f in factors:
        for p, e in prime_factors(f).items():
            per_prime.setdefault(p, []).append(e)
    if not per_prime:
        return ()
    m = max(len(es) for es in per_prime.values())
    chain = [1] * m
    for p, es in per_prime.items():
        es = sorted(es)
        for i, e in enumerate(es):
            chain[m - len(es) + i] *= p**e
    return tuple(chain)


def make_group(factors: Iterable[int], auto_canonicalize: bool = False) -> GroupSpec:
    """Build a GroupSpec from a factor list, dropping factors equal to 1.

    The remaining factors must form a divisibility chain with product > 1;
    with auto_canonicalize=True an arbitrary factor list is first rewritten
    into its invariant-factor form (e.g. [2, 3] becomes [6]).
    """
    factors = list(factors)
    if not factors:
        raise ValueError("factor list must be non-empty")
    if any(f < 1 for f in factors):
        raise ValueError(f"factors must be positive integers, got {factors}")
    kept = tuple(f for f in factors if f > 1)
    n = 1
    for f in kept:
        n *= f
    if n <= 1:
        raise ValueError(f"group order must exceed 1, got factors {factors}")
    if auto_canonicalize:
        kept = _canonical_invariant_factors(kept)
    else:
        for a, b in zip(kept, kept[1:]):
            if b % a != 0:
                raise ValueError(
                    f"{a} does not divide {b}: not an invariant-factor chain "
                    f"(pass auto_canonicalize=True to rewrite {list(factors)})"
                )
    return GroupSpec(factors=kept, n=n, v=kept[-1])


def parse_group_spec(text: str, auto_canonicalize: bool = False) -> GroupSpec:
    """Parse a CLI group spec: "10" for Z_10, "2x4x8" for Z_2 x Z_4 x Z_8."""
    parts = text.strip().split("x")
    try:
        factors = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"cannot parse group spec {text!r}") from None
    return make_group(factors, auto_canonicalize=auto_canonicalize)


def format_group_spec(g: GroupSpec) -> str:
    return "x".join(str(f) for f in g.factors)


def add(g: GroupSpec, x: Element, y: Element) -> Element:
    """Coordinate-wise modular sum of two elements of g."""
    if len(x.coords) != len(g.factors) or len(y.coords) != len(g.factors):
        raise ValueError("element dimension does not match group")
    return Element(tuple((a + b) % d for a, b, d in zip(x.coords, y.coords, g.factors)))


def neg(g: GroupSpec, x: Element) -> Element:
    if len(x.coords) != len(g.factors):
        raise ValueError("element dimension does not match group")
    return Element(tuple((-a) % d for a, d in zip(x.coords, g.factors)))


def scale(g: GroupSpec, h: int, x: Element) -> Element:
    """h*x for any integer h (negative allowed)."""
    if len(x.coords) != len(g.factors):
        raise ValueError("element dimension does not match group")
    return Element(tuple((h * a) % d for a, d in zip(x.coords, g.factors)))


# ---------------------------------------------------------------------------
# bitmask translation machinery
#
# With the mixed-radix layout, adding a fixed element e is an independent
# cyclic rotation along every coordinate axis.  A rotation along one axis
# moves each block of bits by a fixed amount, which two masked shifts
# implement for the whole n-bit word at once.  An "op" is the 4-tuple
# (mask_low, shift_up, mask_high, shift_down).

_Op = tuple[int, int, int, int]


@functools.lru_cache(maxsize=None)
def _axis_rotations(g: GroupSpec) -> tuple[tuple[Optional[_Op], ...], ...]:
    """For each axis, the rotation op for every shift amount t in [0, d)."""
    axes = []
    stride = 1
    for d in reversed(g.factors):
        block = d * stride
        reps = g.n // block
        ops: list[Optional[_Op]] = [None]  # t = 0 is the identity
        for t in range(1, d):
            up = t * stride
            low_len = block - up
            pat_low = (1 << low_len) - 1
            pat_high = ((1 << up) - 1) << low_len
            m_low = 0
            m_high = 0
            for j in range(reps):
                m_low |= pat_low << (j * block)
                m_high |= pat_high << (j * block)
            ops.append((m_low, up, m_high, low_len))
        axes.append(tuple(ops))
        stride = block
    # axes were built last-factor-first; store in factor order
    return tuple(reversed(axes))


@functools.lru_cache(maxsize=None)
def translation_ops(g: GroupSpec) -> tuple[tuple[_Op, ...], ...]:
    """translation_ops(g)[e] is the op sequence implementing bits -> bits + e."""
    axes = _axis_rotations(g)
    table = []
    for e in range(g.n):
        coords = g.coords_of(e)
        ops = tuple(axes[i][c] for i, c in enumerate(coords) if c != 0)
        table.append(ops)
    return tuple(table)


def apply_ops(bits: int, ops: tuple[_Op, ...]) -> int:
    """Translate a subset bitmask by the element whose ops these are."""
    for m_low, up, m_high, down in ops:
        bits = ((bits & m_low) << up) | ((bits & m_high) >> down)
    return bits


@functools.lru_cache(maxsize=None)
def negation_table(g: GroupSpec) -> tuple[int, ...]:
    """negation_table(g)[i] is the index of -x for the element x at index i."""
    return tuple(g.neg_index(i) for i in range(g.n))


# ---------------------------------------------------------------------------
# divisor bookkeeping for the (k, l) parameter pair

@dataclass(frozen=True)
class DivisorSet:
    """Divisors of n split by whether they divide k - l.

    d_gt1 is the set of divisors of n greater than 1; d1 are those not
    dividing k - l, d2 those dividing it.  rho1/rho2 are the smallest
    members (None when the set is empty): d1 is empty iff n | k - l, and
    d2 is empty iff gcd(n, k - l) = 1.
    """

    d_all: tuple[int, ...]
    d_gt1: tuple[int, ...]
    d1: tuple[int, ...]
    d2: tuple[int, ...]
    rho1: Optional[int]
    rho2: Optional[int]


def divisor_sets(n: int, k: int, l: int) -> DivisorSet:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if not k > l >= 1:
        raise ValueError(f"need k > l >= 1, got k={k}, l={l}")
    d_all = tuple(divisors(n))
    d_gt1 = tuple(d for d in d_all if d > 1)
    diff = k - l
    d1 = tuple(d for d in d_gt1 if diff % d != 0)
    d2 = tuple(d for d in d_gt1 if diff % d == 0)
    return DivisorSet(
        d_all=d_all,
        d_gt1=d_gt1,
        d1=d1,
        d2=d2,
        rho1=d1[0] if d1 else None,
        rho2=d2[0] if d2 else None,
    )


# ---------------------------------------------------------------------------
# enumerating all abelian groups of a given order

def invariant_factor_chains(order: int) -> list[tuple[int, ...]]:
    """All invariant-factor chains with the given product, sorted.

    Each chain is one isomorphism class of abelian group of that order.
    """
    if order < 2:
        return []

    def rec(m: int, cap: int) -> list[tuple[int, ...]]:
        if m == 1:
            return [()]
        out = []
        for t in divisors(m):
            if t >= 2 and cap % t == 0:
                out.extend(prefix + (t,) for prefix in rec(m // t, t))
        return out

    return sorted(rec(order, order))


def all_abelian_groups(max_order: int, min_order: int = 2) -> list[GroupSpec]:
    """Every abelian group with order in [min_order, max_order], ascending."""
    out = []
    for order in range(max(2, min_order), max_order + 1):
        out.extend(make_group(chain) for chain in invariant_factor_chains(order))
    return out


# ---------------------------------------------------------------------------
# quotient lifting

def cyclic_quotient_lift(g: GroupSpec, d: int, residues):
    """Pull a subset of Z_d back through the canonical surjection g -> Z_d.

    The surjection is fixed as x -> (last coordinate of x) mod d, which for
    the mixed-radix index is simply index mod d; it is a homomorphism
    exactly because d divides the exponent v.  The preimage of a set of
    size s has size s * n/d.
    """
    from .sumset import Subset

    if d < 2 or g.v % d != 0:
        raise ValueError(f"{d} does not divide the exponent {g.v}")
    if not isinstance(residues, Subset):
        raise TypeError("residues must be a Subset of the cyclic group Z_d")
    if residues.group.factors != (d,):
        raise ValueError(
            f"residues live in {residues.group}, expected the cyclic group of order {d}"
        )
    bits = 0
    for j in range(g.n // d):
        bits |= residues.bits << (j * d)
    return Subset(g, bits)
