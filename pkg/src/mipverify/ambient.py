"""Ambient direct products P = K x C x D and their element arithmetic.

K is one of four finite p-group kinds:

* ``dihedral``      -- order 2^(k+1), presentation <r, t | r^(2^k), t^2, r^t = r^-1>
* ``semidihedral``  -- order 2^(k+1), r^t = r^(2^(k-1) - 1)
* ``quaternion``    -- generalized quaternion of order 2^(k+1), t^2 = r^(2^(k-1))
* ``heisenberg``    -- order p^3 (p odd), unitriangular 3x3 matrices over F_p
* ``table``         -- any finite p-group given by an explicit Cayley table

C and D are cyclic of order p^n and p^m.  Elements are plain int tuples:

* two-generator K kinds:  (eps, i, a, b)      meaning t^eps r^i * c^a * d^b
* heisenberg:             (h1, h2, h3, a, b)  rows of a unitriangular matrix
* table:                  (idx, a, b)         idx indexes the Cayley table

Tuple comparison gives the canonical element order used everywhere else.
All arithmetic is exact integer arithmetic; vectorized variants operate on
int64 numpy arrays with one row per element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

Element = tuple[int, ...]

TWO_GENERATOR_VARIANTS = ("dihedral", "semidihedral", "quaternion")
ODD_VARIANTS = ("heisenberg", "table")
VARIANTS = TWO_GENERATOR_VARIANTS + ODD_VARIANTS

DEFAULT_GUARD = 2 ** 22


class GuardExceeded(RuntimeError):
    """Raised when a construction would exceed the configured size guard."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class AmbientDescriptor:
    """Arithmetic context for a product P = K x C x D."""

    p: int
    variant: str
    k: int
    n: int
    m: int
    radices: tuple[int, ...]
    order: int
    # two-generator kinds: rotation twist theta (as a nonnegative residue) and
    # whether t^2 contributes a central rotation carry (quaternion only)
    theta: int = 0
    carry: bool = False
    table: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    table_inv: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    table_generators: tuple[int, ...] = ()

    # -- basic accessors ---------------------------------------------------

    @property
    def width(self) -> int:
        return len(self.radices)

    @property
    def identity(self) -> Element:
        return (0,) * self.width

    @property
    def k_order(self) -> int:
        if self.variant in TWO_GENERATOR_VARIANTS:
            return 2 ** (self.k + 1)
        if self.variant == "heisenberg":
            return self.p ** 3
        return int(self.table.shape[0])

    def standard_generators(self) -> dict[str, Element]:
        """Named generators of the three factors.

        Two-generator kinds: t (reflection), r (rotation, r = ts), c, d.
        Odd kinds: s, s1 (generators of K), c, d.
        """
        zc = (0, 0)
        if self.variant in TWO_GENERATOR_VARIANTS:
            return {
                "t": (1, 0) + zc,
                "r": (0, 1) + zc,
                "c": (0, 0, 1 % self.radices[2], 0),
                "d": (0, 0, 0, 1 % self.radices[3]),
            }
        if self.variant == "heisenberg":
            return {
                "s": (1, 0, 0) + zc,
                "s1": (0, 1, 0) + zc,
                "c": (0, 0, 0, 1 % self.radices[3], 0),
                "d": (0, 0, 0, 0, 1 % self.radices[4]),
            }
        g0, g1 = self.table_generators
        return {
            "s": (g0,) + zc,
            "s1": (g1,) + zc,
            "c": (0, 1 % self.radices[1], 0),
            "d": (0, 0, 1 % self.radices[2]),
        }

    # -- scalar arithmetic -------------------------------------------------

    def mul(self, g: Element, h: Element) -> Element:
        if self.variant in TWO_GENERATOR_VARIANTS:
            e1, i1, a1, b1 = g
            e2, i2, a2, b2 = h
            rot = self.radices[1]
            i = (self.theta * i1 + i2) if e2 else (i1 + i2)
            if self.carry and e1 and e2:
                i += rot >> 1
            return (e1 ^ e2, i % rot, (a1 + a2) % self.radices[2],
                    (b1 + b2) % self.radices[3])
        if self.variant == "heisenberg":
            p = self.p
            return ((g[0] + h[0]) % p, (g[1] + h[1]) % p,
                    (g[2] + h[2] + g[0] * h[1]) % p,
                    (g[3] + h[3]) % self.radices[3],
                    (g[4] + h[4]) % self.radices[4])
        return (int(self.table[g[0], h[0]]), (g[1] + h[1]) % self.radices[1],
                (g[2] + h[2]) % self.radices[2])

    def inv(self, g: Element) -> Element:
        if self.variant in TWO_GENERATOR_VARIANTS:
            e, i, a, b = g
            rot = self.radices[1]
            if e:
                j = -self.theta * i
                if self.carry:
                    j -= rot >> 1
            else:
                j = -i
            return (e, j % rot, -a % self.radices[2], -b % self.radices[3])
        if self.variant == "heisenberg":
            p = self.p
            return (-g[0] % p, -g[1] % p, (-g[2] + g[0] * g[1]) % p,
                    -g[3] % self.radices[3], -g[4] % self.radices[4])
        return (int(self.table_inv[g[0]]), -g[1] % self.radices[1],
                -g[2] % self.radices[2])

    def power(self, g: Element, e: int) -> Element:
        if e < 0:
            g, e = self.inv(g), -e
        acc = self.identity
        base = g
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def conj(self, g: Element, h: Element) -> Element:
        """g^h = h^-1 g h."""
        return self.mul(self.mul(self.inv(h), g), h)

    def comm(self, g: Element, h: Element) -> Element:
        """[g, h] = g^-1 h^-1 g h."""
        return self.mul(self.inv(self.mul(h, g)), self.mul(g, h))

    def order_of(self, g: Element) -> int:
        o = 1
        cur = g
        ident = self.identity
        while cur != ident:
            cur = self.power(cur, self.p)
            o *= self.p
            if o > self.order:
                raise RuntimeError("element order exceeds group order")
        return o

    # -- vectorized arithmetic ---------------------------------------------

    def mul_rows(self, g: Element, rights: np.ndarray) -> np.ndarray:
        """Products g * h for every row h of ``rights`` (int64, shape (N, width))."""
        out = np.empty_like(rights)
        if self.variant in TWO_GENERATOR_VARIANTS:
            e1, i1, a1, b1 = g
            rot = self.radices[1]
            e2 = rights[:, 0]
            i = np.where(e2 == 1, self.theta * i1, i1) + rights[:, 1]
            if self.carry and e1:
                i = i + (rot >> 1) * e2
            out[:, 0] = e1 ^ e2
            out[:, 1] = i % rot
            out[:, 2] = (a1 + rights[:, 2]) % self.radices[2]
            out[:, 3] = (b1 + rights[:, 3]) % self.radices[3]
        elif self.variant == "heisenberg":
            p = self.p
            out[:, 0] = (g[0] + rights[:, 0]) % p
            out[:, 1] = (g[1] + rights[:, 1]) % p
            out[:, 2] = (g[2] + rights[:, 2] + g[0] * rights[:, 1]) % p
            out[:, 3] = (g[3] + rights[:, 3]) % self.radices[3]
            out[:, 4] = (g[4] + rights[:, 4]) % self.radices[4]
        else:
            out[:, 0] = self.table[g[0], rights[:, 0]]
            out[:, 1] = (g[1] + rights[:, 1]) % self.radices[1]
            out[:, 2] = (g[2] + rights[:, 2]) % self.radices[2]
        return out

    def mul_cols(self, lefts: np.ndarray, h: Element) -> np.ndarray:
        """Products g * h for every row g of ``lefts``."""
        out = np.empty_like(lefts)
        if self.variant in TWO_GENERATOR_VARIANTS:
            e2, i2, a2, b2 = h
            rot = self.radices[1]
            e1 = lefts[:, 0]
            i = (self.theta * lefts[:, 1] + i2) if e2 else (lefts[:, 1] + i2)
            if self.carry and e2:
                i = i + (rot >> 1) * e1
            out[:, 0] = e1 ^ e2
            out[:, 1] = i % rot
            out[:, 2] = (lefts[:, 2] + a2) % self.radices[2]
            out[:, 3] = (lefts[:, 3] + b2) % self.radices[3]
        elif self.variant == "heisenberg":
            p = self.p
            out[:, 0] = (lefts[:, 0] + h[0]) % p
            out[:, 1] = (lefts[:, 1] + h[1]) % p
            out[:, 2] = (lefts[:, 2] + h[2] + lefts[:, 0] * h[1]) % p
            out[:, 3] = (lefts[:, 3] + h[3]) % self.radices[3]
            out[:, 4] = (lefts[:, 4] + h[4]) % self.radices[4]
        else:
            out[:, 0] = self.table[lefts[:, 0], h[0]]
            out[:, 1] = (lefts[:, 1] + h[1]) % self.radices[1]
            out[:, 2] = (lefts[:, 2] + h[2]) % self.radices[2]
        return out

    def encode(self, rows: np.ndarray) -> np.ndarray:
        """Mixed-radix keys of element rows; monotone in tuple order."""
        keys = rows[:, 0].astype(np.int64)
        for j in range(1, self.width):
            keys = keys * self.radices[j] + rows[:, j]
        return keys

    def key(self, g: Element) -> int:
        key = g[0]
        for j in range(1, self.width):
            key = key * self.radices[j] + g[j]
        return key


def _validate_table(table: np.ndarray, generators: Sequence[int], p: int) -> np.ndarray:
    size = table.shape[0]
    if table.ndim != 2 or table.shape[1] != size:
        raise ValueError("Cayley table must be square")
    q = size
    while q % p == 0:
        q //= p
    if q != 1 or size == 1:
        raise ValueError(f"table size {size} is not a positive power of p={p}")
    if table.min() < 0 or table.max() >= size:
        raise ValueError("table entries must index table rows")
    if not (np.array_equal(table[0], np.arange(size)) and
            np.array_equal(table[:, 0], np.arange(size))):
        raise ValueError("table row/column 0 must be the identity")
    left = table[table, :]
    right = table[:, table]
    if not np.array_equal(left, right):
        raise ValueError("table is not associative")
    inv = np.empty(size, dtype=np.int64)
    for i in range(size):
        zeros = np.flatnonzero(table[i] == 0)
        if zeros.size != 1:
            raise ValueError("table rows must contain the identity exactly once")
        inv[i] = zeros[0]
    gens = tuple(int(g) for g in generators)
    if len(gens) != 2 or not all(0 <= g < size for g in gens):
        raise ValueError("table_generators must be two valid indices")
    reached = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for i in frontier:
            for g in gens:
                j = int(table[i, g])
                if j not in reached:
                    reached.add(j)
                    nxt.append(j)
        frontier = nxt
    if len(reached) != size:
        raise ValueError("table_generators do not generate the table group")
    return inv


def make_ambient(p: int, variant: str, k: int, n: int, m: int,
                 guard: int = DEFAULT_GUARD,
                 table: Optional[Sequence[Sequence[int]]] = None,
                 table_generators: Optional[Sequence[int]] = None) -> AmbientDescriptor:
    """Build the descriptor for P = K x C x D with |C| = p^n, |D| = p^m.

    ``guard`` bounds |P|; exceeding it raises :class:`GuardExceeded`.
    """
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    if n < 0 or m < 0:
        raise ValueError("cyclic exponents n, m must be nonnegative")

    if variant in TWO_GENERATOR_VARIANTS:
        if p != 2:
            raise ValueError(f"variant {variant!r} requires p = 2")
        kmin = {"dihedral": 1, "quaternion": 2, "semidihedral": 3}[variant]
        if k < kmin:
            raise ValueError(f"variant {variant!r} requires k >= {kmin}")
        rot = 2 ** k
        theta = {"dihedral": rot - 1,
                 "semidihedral": (rot >> 1) - 1,
                 "quaternion": rot - 1}[variant]
        radices = (2, rot, 2 ** n, 2 ** m)
        order = 2 * rot * radices[2] * radices[3]
        if order > guard:
            raise GuardExceeded(f"|P| = {order} exceeds guard {guard}")
        return AmbientDescriptor(p=2, variant=variant, k=k, n=n, m=m,
                                 radices=radices, order=order, theta=theta,
                                 carry=(variant == "quaternion"))

    if variant == "heisenberg":
        if p == 2:
            raise ValueError("variant 'heisenberg' requires an odd prime p")
        if table is not None or table_generators is not None:
            raise ValueError("heisenberg variant does not accept a table")
        radices = (p, p, p, p ** n, p ** m)
        order = p ** 3 * radices[3] * radices[4]
        if order > guard:
            raise GuardExceeded(f"|P| = {order} exceeds guard {guard}")
        return AmbientDescriptor(p=p, variant=variant, k=k, n=n, m=m,
                                 radices=radices, order=order)

    if table is None or table_generators is None:
        raise ValueError("table variant requires table and table_generators")
    tarr = np.asarray(table, dtype=np.int64)
    tinv = _validate_table(tarr, table_generators, p)
    size = int(tarr.shape[0])
    radices = (size, p ** n, p ** m)
    order = size * radices[1] * radices[2]
    if order > guard:
        raise GuardExceeded(f"|P| = {order} exceeds guard {guard}")
    tarr.setflags(write=False)
    tinv.setflags(write=False)
    return AmbientDescriptor(p=p, variant=variant, k=k, n=n, m=m,
                             radices=radices, order=order, table=tarr,
                             table_inv=tinv,
                             table_generators=tuple(int(g) for g in table_generators))


def round_up_power(p: int, bound: int) -> int:
    """Smallest e with p**e >= bound (used for nilpotency/guard heuristics)."""
    e = 0
    v = 1
    while v < bound:
        v *= p
        e += 1
    return e


def int_log(p: int, q: int) -> int:
    """Exact logarithm: e with p**e == q, or ValueError."""
    e = round_up_power(p, q)
    if p ** e != q:
        raise ValueError(f"{q} is not a power of {p}")
    return e


def check_prime_power(p: int, q: int) -> int:
    return int_log(p, q)


__all__ = [
    "AmbientDescriptor", "Element", "GuardExceeded", "DEFAULT_GUARD",
    "VARIANTS", "TWO_GENERATOR_VARIANTS", "ODD_VARIANTS",
    "make_ambient", "int_log", "round_up_power", "check_prime_power",
]
