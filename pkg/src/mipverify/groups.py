"""Concrete finite p-groups inside an ambient product, and subgroup machinery.

A :class:`FiniteGroup` stores a sorted element list (canonical order = tuple
order), an index map, the generating set, and for every element a derivation
word over the generators obtained from breadth-first closure.  All subgroup
constructions (derived subgroup, lower central series, Frattini and power
subgroups, center, centralizers, Jennings series) reduce to breadth-first
closure over explicit generator sets, so every returned group carries valid
words by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Iterable, Optional, Sequence

import numpy as np

from .ambient import AmbientDescriptor, Element, GuardExceeded, int_log

Word = tuple[int, ...]


@dataclass
class FiniteGroup:
    """A subgroup of an ambient product, with canonical element order."""

    ambient: AmbientDescriptor
    elements: tuple[Element, ...]
    generators: tuple[Element, ...]
    words: tuple[Word, ...]
    # breadth-first derivation: element i (other than the identity) equals
    # elements[bfs_parent[i]] * generators[bfs_gen[i]]
    bfs_order: tuple[int, ...]
    bfs_parent: tuple[int, ...]
    bfs_gen: tuple[int, ...]
    _index: dict[Element, int] = field(repr=False, default_factory=dict)
    _array: Optional[np.ndarray] = field(repr=False, default=None)
    _table: Optional[np.ndarray] = field(repr=False, default=None)
    _orders: Optional[np.ndarray] = field(repr=False, default=None)
    _central_mask: Optional[np.ndarray] = field(repr=False, default=None)
    _small_gens: Optional[tuple[Element, ...]] = field(repr=False, default=None)

    def __post_init__(self) -> None:
        if not self._index:
            self._index = {g: i for i, g in enumerate(self.elements)}

    # -- basics --------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def identity(self) -> Element:
        return self.ambient.identity

    @property
    def identity_index(self) -> int:
        return self._index[self.identity]

    def __contains__(self, g: Element) -> bool:
        return g in self._index

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, g: Element) -> int:
        return self._index[g]

    def element_set(self) -> frozenset[Element]:
        return frozenset(self.elements)

    def array(self) -> np.ndarray:
        """Element tuples as an int64 array, one row per element."""
        if self._array is None:
            arr = np.array(self.elements, dtype=np.int64)
            arr.setflags(write=False)
            self._array = arr
        return self._array

    def mul(self, g: Element, h: Element) -> Element:
        return self.ambient.mul(g, h)

    def inv(self, g: Element) -> Element:
        return self.ambient.inv(g)

    def conj(self, g: Element, h: Element) -> Element:
        return self.ambient.conj(g, h)

    def comm(self, g: Element, h: Element) -> Element:
        return self.ambient.comm(g, h)

    def power(self, g: Element, e: int) -> Element:
        return self.ambient.power(g, e)

    def order_of(self, g: Element) -> int:
        return self.ambient.order_of(g)

    def evaluate_word(self, word: Word) -> Element:
        acc = self.identity
        for j in word:
            acc = self.mul(acc, self.generators[j])
        return acc

    # -- derived data ----------------------------------------------------------

    def indices_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Element indices of product rows known to lie in the group."""
        keys = self.ambient.encode(rows)
        sorted_keys = self.ambient.encode(self.array())
        idx = np.searchsorted(sorted_keys, keys)
        if idx.size and (idx.max() >= len(sorted_keys) or
                         not np.array_equal(sorted_keys[idx], keys)):
            raise KeyError("row outside the group")
        return idx

    def cayley_table(self) -> np.ndarray:
        """Full multiplication table T[i, j] = index(elements[i] * elements[j])."""
        if self._table is None:
            arr = self.array()
            size = self.order
            table = np.empty((size, size), dtype=np.int32)
            sorted_keys = self.ambient.encode(arr)
            for i, g in enumerate(self.elements):
                keys = self.ambient.encode(self.ambient.mul_rows(g, arr))
                table[i] = np.searchsorted(sorted_keys, keys)
            table.setflags(write=False)
            self._table = table
        return self._table

    def right_generator_columns(self) -> list[np.ndarray]:
        """For each generator a, the permutation i -> index(elements[i] * a)."""
        arr = self.array()
        return [self.indices_of_rows(self.ambient.mul_cols(arr, a)).astype(np.int32)
                for a in self.generators]

    def inverse_permutation(self) -> np.ndarray:
        rows = np.array([self.inv(g) for g in self.elements], dtype=np.int64)
        return self.indices_of_rows(rows).astype(np.int32)

    def element_orders(self) -> np.ndarray:
        """Orders of all elements (vectorized repeated p-th powers)."""
        if self._orders is None:
            size = self.order
            table = self.cayley_table()
            orders = np.ones(size, dtype=np.int64)
            ident = self.identity_index
            cur = np.arange(size, dtype=np.int32)
            q = 1
            while True:
                pending = cur != ident
                if not pending.any():
                    break
                nxt = cur
                for _ in range(self.p - 1):
                    nxt = table[nxt, cur]
                cur = nxt
                q *= self.p
                orders[pending] = q
                if q > self.order:
                    raise RuntimeError("order computation exceeded group order")
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def small_generators(self) -> tuple[Element, ...]:
        """A short generating sequence (greedy over canonical order; cached).

        Groups wrapped from explicit element sets (intersections,
        centralizers, hyperplane preimages) store every element as a
        generator; structural operations reduce to this sequence so that
        conjugation and commutator seed sets stay proportional to log|G|
        instead of |G|.
        """
        if self._small_gens is None:
            if len(self.generators) <= 3:
                self._small_gens = tuple(self.generators)
            else:
                sel: list[Element] = []
                have = frozenset((self.identity,))
                for g in self.elements:
                    if g in have:
                        continue
                    sel.append(g)
                    have = closure(self.ambient, sel,
                                   guard=self.order + 1).element_set()
                    if len(have) == self.order:
                        break
                self._small_gens = tuple(sel)
        return self._small_gens

    def central_mask(self) -> np.ndarray:
        """Boolean mask of elements commuting with every generator."""
        if self._central_mask is None:
            arr = self.array()
            mask = np.ones(self.order, dtype=bool)
            for a in self.small_generators():
                left = self.ambient.encode(self.ambient.mul_cols(arr, a))
                right = self.ambient.encode(self.ambient.mul_rows(a, arr))
                mask &= left == right
            mask.setflags(write=False)
            self._central_mask = mask
        return self._central_mask

    def is_central(self, g: Element) -> bool:
        return all(self.mul(g, a) == self.mul(a, g)
                   for a in self.small_generators())

    def is_abelian(self) -> bool:
        gens = self.small_generators()
        return all(self.mul(a, b) == self.mul(b, a)
                   for i, a in enumerate(gens) for b in gens[i + 1:])

    def exponent(self) -> int:
        return int(self.element_orders().max()) if self.order > 1 else 1


def closure(ambient: AmbientDescriptor, generators: Sequence[Element],
            guard: Optional[int] = None) -> FiniteGroup:
    """Subgroup generated by ``generators``, by breadth-first multiplication.

    Elements are discovered FIFO with generators tried in the given order, so
    the derivation words are deterministic; the stored element list is then
    sorted into canonical (tuple) order.  ``guard`` bounds the subgroup size
    (default: ambient order).
    """
    gens = tuple(generators)
    for g in gens:
        if len(g) != ambient.width or any(not (0 <= v < r) for v, r in zip(g, ambient.radices)):
            raise ValueError(f"generator {g} is not an ambient element")
    bound = ambient.order if guard is None else min(guard, ambient.order)
    ident = ambient.identity
    words: dict[Element, Word] = {ident: ()}
    parents: dict[Element, tuple[Element, int]] = {}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for j, a in enumerate(gens):
                h = ambient.mul(g, a)
                if h not in words:
                    words[h] = words[g] + (j,)
                    parents[h] = (g, j)
                    nxt.append(h)
                    if len(words) > bound:
                        raise GuardExceeded(
                            f"closure exceeded guard {bound}")
        frontier = nxt
    elements = tuple(sorted(words))
    index = {g: i for i, g in enumerate(elements)}
    word_list = tuple(words[g] for g in elements)
    bfs_elems = sorted(words, key=lambda g: (len(words[g]), words[g]))
    bfs_order = tuple(index[g] for g in bfs_elems)
    bfs_parent = [0] * len(elements)
    bfs_gen = [0] * len(elements)
    for g, (par, j) in parents.items():
        bfs_parent[index[g]] = index[par]
        bfs_gen[index[g]] = j
    return FiniteGroup(ambient=ambient, elements=elements, generators=gens,
                       words=word_list, bfs_order=bfs_order,
                       bfs_parent=tuple(bfs_parent), bfs_gen=tuple(bfs_gen),
                       _index=index)


def generated_subgroup(ambient: AmbientDescriptor, seeds: Iterable[Element],
                       guard: Optional[int] = None) -> FiniteGroup:
    """Subgroup generated by a (possibly large, redundant) seed set.

    Absorbs seeds one at a time, skipping those already contained in the
    closure so far; the essential seeds become the generating set.  This keeps
    breadth-first closure cheap when the seed set is much larger than a
    minimal generating set (powers of all elements, commutator seeds, ...).
    """
    essential: list[Element] = []
    current: frozenset[Element] = frozenset((ambient.identity,))
    group: Optional[FiniteGroup] = None
    for g in sorted(set(seeds)):
        if g in current:
            continue
        essential.append(g)
        group = closure(ambient, essential, guard)
        current = group.element_set()
    if group is None:
        return closure(ambient, (), guard)
    return group


def subgroup_from_elements(ambient: AmbientDescriptor,
                           elements: Iterable[Element],
                           verify: bool = True) -> FiniteGroup:
    """Wrap a set already known (or verified) to be closed as a FiniteGroup.

    Every element is its own generator (identity gets the empty word), which
    keeps stored words trivially valid.  With ``verify`` the closure property
    is checked vectorized; a failure means the precondition was violated.
    """
    elems = tuple(sorted(set(elements)))
    if ambient.identity not in elems:
        raise ValueError("element set must contain the identity")
    if verify:
        arr = np.array(elems, dtype=np.int64)
        keys = np.sort(ambient.encode(arr))
        for g in elems:
            prod_keys = ambient.encode(ambient.mul_rows(g, arr))
            pos = np.searchsorted(keys, prod_keys)
            if pos.max() >= keys.size or not np.array_equal(keys[pos], prod_keys):
                raise ValueError("element set is not closed under multiplication")
    index = {g: i for i, g in enumerate(elems)}
    ident_idx = index[ambient.identity]
    words = tuple((i,) if i != ident_idx else () for i in range(len(elems)))
    bfs_order = (ident_idx,) + tuple(i for i in range(len(elems)) if i != ident_idx)
    bfs_parent = tuple(ident_idx for _ in elems)
    bfs_gen = tuple(range(len(elems)))
    return FiniteGroup(ambient=ambient, elements=elems, generators=elems,
                       words=words, bfs_order=bfs_order, bfs_parent=bfs_parent,
                       bfs_gen=bfs_gen, _index=index)


# -- classical subgroups -----------------------------------------------------


def normal_closure(group: FiniteGroup, seeds: Sequence[Element]) -> FiniteGroup:
    """Smallest subgroup containing ``seeds`` normalized by ``group``."""
    conjugators = group.small_generators()
    orbit = set()
    frontier = [g for g in seeds if g != group.identity]
    orbit.update(frontier)
    while frontier:
        nxt = []
        for g in frontier:
            for a in conjugators:
                h = group.conj(g, a)
                if h not in orbit:
                    orbit.add(h)
                    nxt.append(h)
        frontier = nxt
    return generated_subgroup(group.ambient, orbit, guard=group.order)


def commutator_subgroup(group: FiniteGroup, left: FiniteGroup) -> FiniteGroup:
    """[left, group] for left a subgroup of group (both sharing the ambient)."""
    seeds = [group.comm(h, a) for h in left.small_generators()
             for a in group.small_generators()]
    return normal_closure(group, seeds)


def derived_subgroup(group: FiniteGroup) -> FiniteGroup:
    gens = group.small_generators()
    seeds = [group.comm(a, b) for a in gens for b in gens]
    return normal_closure(group, seeds)


def lower_central_series(group: FiniteGroup) -> list[FiniteGroup]:
    """gamma_1 = G >= gamma_2 = [G, G] >= ... down to the trivial subgroup."""
    series = [group]
    while series[-1].order > 1:
        nxt = commutator_subgroup(group, series[-1])
        if nxt.order == series[-1].order:
            raise RuntimeError("lower central series stalled; group not nilpotent")
        series.append(nxt)
    return series


def nilpotency_class(group: FiniteGroup) -> int:
    return len(lower_central_series(group)) - 1


def power_subgroup(group: FiniteGroup, s: int) -> FiniteGroup:
    """Subgroup generated by g^(p^s) for all g in the group."""
    if s < 0:
        raise ValueError("power exponent must be nonnegative")
    q = group.p ** s
    seeds = {group.power(g, q) for g in group.elements}
    return generated_subgroup(group.ambient, seeds, guard=group.order)


def frattini(group: FiniteGroup) -> FiniteGroup:
    """Frattini subgroup of a finite p-group: G' G^p."""
    der = derived_subgroup(group)
    seeds = set(der.generators)
    seeds.update(group.power(g, group.p) for g in group.elements)
    return generated_subgroup(group.ambient, seeds, guard=group.order)


def center(group: FiniteGroup) -> FiniteGroup:
    elems = [g for g, c in zip(group.elements, group.central_mask()) if c]
    return subgroup_from_elements(group.ambient, elems, verify=False)


def centralizer_mod(group: FiniteGroup, upper: FiniteGroup,
                    lower: FiniteGroup) -> FiniteGroup:
    """C_group(upper/lower): elements g with [g, u] in lower for all u in upper.

    ``lower`` must be normalized by both ``group`` and ``upper`` for the result
    to be a subgroup; closure of the filtered set is verified and a violation
    raises ValueError.
    """
    lower_set = lower.element_set()
    if not lower_set <= upper.element_set():
        raise ValueError("lower must be contained in upper")
    ugens = upper.small_generators()
    elems = [g for g in group.elements
             if all(group.comm(g, u) in lower_set for u in ugens)]
    return subgroup_from_elements(group.ambient, elems, verify=True)


def intersection(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    common = a.element_set() & b.element_set()
    return subgroup_from_elements(a.ambient, common, verify=False)


def conjugacy_classes(group: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted index tuples, ordered by minimal element."""
    table = group.cayley_table()
    invp = group.inverse_permutation()
    size = group.order
    # columns of the conjugation maps g -> a^-1 g a for each generator
    conj_cols = []
    for a in group.small_generators():
        ai = group.index(a)
        conj_cols.append(table[table[invp[ai]], ai])
    seen = np.zeros(size, dtype=bool)
    classes = []
    for i in range(size):
        if seen[i]:
            continue
        orbit = {i}
        frontier = [i]
        seen[i] = True
        while frontier:
            nxt = []
            for j in frontier:
                for col in conj_cols:
                    h = int(col[j])
                    if not seen[h]:
                        seen[h] = True
                        orbit.add(h)
                        nxt.append(h)
            frontier = nxt
        classes.append(tuple(sorted(orbit)))
    return classes


def centralizer_index(group: FiniteGroup, g: Element) -> int:
    """|G : C_G(g)| = size of the conjugacy class of g."""
    orbit = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for h in frontier:
            for a in group.small_generators():
                h2 = group.conj(h, a)
                if h2 not in orbit:
                    orbit.add(h2)
                    nxt.append(h2)
        frontier = nxt
    return len(orbit)


def maximal_subgroups(group: FiniteGroup) -> list[FiniteGroup]:
    """All maximal subgroups (index p), via hyperplanes of G/Frattini.

    Returned sorted by element lists, so the order is deterministic.
    """
    p = group.p
    phi = frattini(group)
    phi_arr = phi.array()
    # canonical coset representative: minimal element of g*Phi
    rep_cache: dict[Element, Element] = {}

    def rep(g: Element) -> Element:
        r = rep_cache.get(g)
        if r is None:
            coset = group.ambient.mul_cols(phi_arr, g)
            keys = group.ambient.encode(coset)
            r = tuple(int(v) for v in coset[int(np.argmin(keys))])
            rep_cache[r] = r
            rep_cache[g] = r
        return r

    # basis of the elementary abelian quotient
    basis: list[Element] = []
    span = {rep(group.identity)}
    for g in group.elements:
        rg = rep(g)
        if rg in span:
            continue
        basis.append(rg)
        new_span = set()
        for h in span:
            cur = h
            for _ in range(p):
                new_span.add(rep(cur))
                cur = group.mul(cur, rg)
        span = new_span
    rank = len(basis)
    if p ** rank * phi.order != group.order:
        raise RuntimeError("Frattini quotient rank inconsistent with order")

    # coordinates of every coset representative
    coords: dict[Element, tuple[int, ...]] = {}
    for vec in iter_product(range(p), repeat=rank):
        g = group.identity
        for e, b in zip(vec, basis):
            g = group.mul(g, group.power(b, e))
        coords[rep(g)] = vec

    elem_coords = np.array([coords[rep(g)] for g in group.elements], dtype=np.int64)

    # hyperplane normals up to scalar: first nonzero coefficient equal 1
    subgroups = []
    for w in iter_product(range(p), repeat=rank):
        nz = next((v for v in w if v), None)
        if nz != 1:
            continue
        dots = (elem_coords @ np.array(w, dtype=np.int64)) % p
        elems = [g for g, v in zip(group.elements, dots) if v == 0]
        subgroups.append(subgroup_from_elements(group.ambient, elems, verify=False))
    subgroups.sort(key=lambda s: s.elements)
    return subgroups


def jennings_series(group: FiniteGroup) -> list[FiniteGroup]:
    """Dimension subgroups M_1 >= M_2 >= ... with M_i = [M_{i-1}, G] M_{ceil(i/p)}^p.

    Returns the chain down to (and including) the trivial subgroup.
    """
    p = group.p
    series = [group]
    i = 2
    # terms may legitimately repeat; the chain still reaches 1 in finitely
    # many steps (the commutator part strictly shrinks once powers die out)
    while series[-1].order > 1:
        prev = series[-1]
        half = series[(i + p - 1) // p - 1]
        seeds = {group.comm(h, a) for h in prev.elements
                 for a in group.small_generators()}
        seeds.update(group.power(g, p) for g in half.elements)
        series.append(normal_closure(group, sorted(seeds)))
        i += 1
        if i > p * group.order + 2:
            raise RuntimeError("Jennings series failed to terminate")
    return series


def jennings_factor_orders(group: FiniteGroup) -> list[int]:
    series = jennings_series(group)
    return [series[i].order // series[i + 1].order for i in range(len(series) - 1)]


def exponent(group: FiniteGroup) -> int:
    return group.exponent()


def abelian_invariants(group: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors (prime powers, descending) of an abelian p-group."""
    if not group.is_abelian():
        raise ValueError("abelian_invariants requires an abelian group")
    p = group.p
    if group.order == 1:
        return ()
    # f_s = log_p |G^(p^s)|; number of factors of order >= p^s is f_{s-1} - f_s
    logs = [int_log(p, group.order)]
    s = 1
    while logs[-1] > 0:
        logs.append(int_log(p, power_subgroup(group, s).order))
        s += 1
    counts = [logs[i] - logs[i + 1] for i in range(len(logs) - 1)]
    invariants: list[int] = []
    for e in range(len(counts), 0, -1):
        mult = counts[e - 1] - (counts[e] if e < len(counts) else 0)
        invariants.extend([p ** e] * mult)
    return tuple(invariants)


__all__ = [
    "FiniteGroup", "Word", "closure", "generated_subgroup",
    "subgroup_from_elements", "normal_closure", "commutator_subgroup",
    "derived_subgroup", "lower_central_series", "nilpotency_class",
    "power_subgroup", "frattini", "center", "centralizer_mod", "intersection",
    "conjugacy_classes", "centralizer_index", "maximal_subgroups",
    "jennings_series", "jennings_factor_orders", "exponent",
    "abelian_invariants",
]
