"""Isomorphism tooling: recognition clauses, presentation witnesses, oracle.

Three independent routes to (non-)isomorphism evidence:

* :func:`recognize_presented_group` -- sufficient structural clauses on a
  designated generating pair (orders, central squares, derived-subgroup size,
  trivial intersection) that pin the group's isomorphism type.
* :func:`find_presentation_witness` -- exhaustive search for a generating pair
  satisfying an explicit defining relation set.
* :func:`isomorphic_bruteforce` -- exhaustive generator-image transport oracle.

The oracle enumerates image pairs in canonical element order, prunes with
vectorized isomorphism invariants (which can never discard a valid image
pair), and verifies survivors by word transport plus bijectivity plus
generator-column multiplicativity, which suffices by induction over
derivation words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .ambient import Element
from .groups import FiniteGroup, closure, derived_subgroup

DEFAULT_ORACLE_BOUND = 2 ** 12


class OracleBoundExceeded(RuntimeError):
    """Raised when the brute-force oracle is asked about groups above its bound."""


@dataclass(frozen=True)
class Clause:
    """One named check with its outcome and supporting data."""

    id: str
    statement: str
    passed: bool
    data: dict

    def as_dict(self) -> dict:
        return {"id": self.id, "statement": self.statement,
                "passed": self.passed, "data": self.data}


@dataclass(frozen=True)
class RecognitionResult:
    ok: bool
    clauses: tuple[Clause, ...]

    @property
    def first_failing(self) -> Optional[str]:
        for c in self.clauses:
            if not c.passed:
                return c.id
        return None


def _span_of_central_pair(group: FiniteGroup, u: Element, v: Element,
                          bound_u: int, bound_v: int) -> set[Element]:
    """{u^i v^j} for commuting u, v (used for <a^2, b^2>)."""
    span = set()
    ui = group.identity
    for _ in range(bound_u):
        uij = ui
        for _ in range(bound_v):
            span.add(uij)
            uij = group.mul(uij, v)
        ui = group.mul(ui, u)
    return span


def recognize_presented_group(group: FiniteGroup, a: Element, b: Element,
                              n: int, m: int, k: int) -> RecognitionResult:
    """Structural recognition of the target 2-group on the pair (a, b).

    Checks, in order: parameter validity (n > m >= k >= 3), |a| = 2^n,
    |b| = 2^m, a^2 and b^2 central, |G'| = 2^(k-1), and trivial intersection
    of <a^2, b^2> with G'.  All clauses passing certifies the isomorphism
    type of a group generated by (a, b); the pair must generate ``group``.
    """
    gen = closure(group.ambient, (a, b), guard=group.order + 1)
    if gen.element_set() != group.element_set():
        raise ValueError("the pair (a, b) does not generate the group")
    clauses: list[Clause] = []

    def add(cid: str, statement: str, passed: bool, **data) -> bool:
        clauses.append(Clause(cid, statement, bool(passed), data))
        return bool(passed)

    ok = add("parameters", "parameters satisfy n > m >= k >= 3",
             n > m >= k >= 3, n=n, m=m, k=k)
    oa = group.order_of(a)
    ok = add("order-a", "first generator has order 2^n",
             oa == 2 ** n, order=oa, expected=2 ** n) and ok
    ob = group.order_of(b)
    ok = add("order-b", "second generator has order 2^m",
             ob == 2 ** m, order=ob, expected=2 ** m) and ok
    a2, b2 = group.mul(a, a), group.mul(b, b)
    ok = add("a-square-central", "square of the first generator is central",
             group.is_central(a2)) and ok
    ok = add("b-square-central", "square of the second generator is central",
             group.is_central(b2)) and ok
    der = derived_subgroup(group)
    ok = add("derived-order", "derived subgroup has order 2^(k-1)",
             der.order == 2 ** (k - 1), order=der.order,
             expected=2 ** (k - 1)) and ok
    if clauses[3].passed and clauses[4].passed:
        span = _span_of_central_pair(group, a2, b2,
                                     max(oa // 2, 1), max(ob // 2, 1))
        meet = span & der.element_set()
        triv = meet == {group.identity}
        ok = add("central-squares-meet-derived-trivially",
                 "<a^2, b^2> intersects the derived subgroup trivially",
                 triv, intersection_size=len(meet)) and ok
    else:
        ok = add("central-squares-meet-derived-trivially",
                 "<a^2, b^2> intersects the derived subgroup trivially",
                 False, skipped="squares not central; span not enumerable as powers") and ok
    return RecognitionResult(ok=ok, clauses=tuple(clauses))


def recognize_any_pair(group: FiniteGroup, n: int, m: int, k: int) -> Optional[tuple[Element, Element]]:
    """First generating pair (canonical order) recognized, or None.

    Scans order-compatible pairs with cheap vectorized filters before running
    the full clause set; used by property tests to compare recognition
    against the brute-force oracle.
    """
    if not n > m >= k >= 3:
        return None
    if group.order != 2 ** (n + m + k - 1):
        return None
    der = derived_subgroup(group)
    if der.order != 2 ** (k - 1):
        return None
    orders = group.element_orders()
    central = group.central_mask()
    table = group.cayley_table()
    sq = table[np.arange(group.order), np.arange(group.order)]
    a_idx = np.flatnonzero((orders == 2 ** n) & central[sq])
    b_idx = np.flatnonzero((orders == 2 ** m) & central[sq])
    der_set = der.element_set()
    for ia in a_idx:
        a = group.elements[int(ia)]
        a2 = group.mul(a, a)
        for ib in b_idx:
            b = group.elements[int(ib)]
            b2 = group.mul(b, b)
            span = _span_of_central_pair(group, a2, b2, 2 ** (n - 1), 2 ** (m - 1))
            if span & der_set != {group.identity}:
                continue
            pair_closure = closure(group.ambient, (a, b), guard=group.order + 1)
            if pair_closure.order != group.order:
                continue
            res = recognize_presented_group(group, a, b, n, m, k)
            if res.ok:
                return a, b
    return None


# -- presentation witnesses ---------------------------------------------------


def find_presentation_witness(group: FiniteGroup, n: int, m: int, k: int,
                              relations: str = "g") -> Optional[tuple[Element, Element]]:
    """First pair (a, b) in canonical order satisfying the defining relations.

    With u = [b, a], the ``"g"`` relation set demands
    u^(2^(k-1)) = 1, b^a = b u, u^a = u^(-1), u^b = u^(-1); the ``"h"`` set
    replaces the last relation by u^b = u.  Additionally requires
    |a| = 2^n, |b| = 2^m and that (a, b) generate the group, which pins the
    presented group of order 2^(n+m+k-1) exactly.
    """
    if relations not in ("g", "h"):
        raise ValueError("relations must be 'g' or 'h'")
    expected = 2 ** (n + m + k - 1)
    if group.order != expected:
        raise ValueError(f"group order {group.order} != 2^(n+m+k-1) = {expected}")
    size = group.order
    table = group.cayley_table()
    invp = group.inverse_permutation()
    orders = group.element_orders()
    ident = group.identity_index
    idx_all = np.arange(size, dtype=np.int32)

    # iterated squaring tables: pow2[s][i] = index of elements[i]^(2^s)
    pow2 = [idx_all]
    for _ in range(max(k - 1, 0)):
        pow2.append(table[pow2[-1], pow2[-1]])
    half_pow = pow2[k - 1] if k >= 1 else idx_all

    a_candidates = np.flatnonzero(orders == 2 ** n)
    b_candidates = np.flatnonzero(orders == 2 ** m)
    if a_candidates.size == 0 or b_candidates.size == 0:
        return None
    bs = b_candidates.astype(np.int32)
    for ia in a_candidates:
        ia = int(ia)
        inv_a = int(invp[ia])
        # u = [b, a] = b^-1 a^-1 b a for all candidate b at once
        u = table[table[table[invp[bs], inv_a], bs], ia]
        mask = half_pow[u] == ident
        # b^a = b u
        b_conj = table[table[inv_a, bs], ia]
        mask &= b_conj == table[bs, u]
        # u^a = u^-1
        u_conj_a = table[table[inv_a, u], ia]
        mask &= u_conj_a == invp[u]
        # u^b = u^-1 or u
        u_conj_b = table[table[invp[bs], u], bs]
        mask &= u_conj_b == (invp[u] if relations == "g" else u)
        # nontrivial commutator: rules out abelian degenerate witnesses
        mask &= u != ident
        for ib in bs[mask]:
            a_el = group.elements[ia]
            b_el = group.elements[int(ib)]
            gen = closure(group.ambient, (a_el, b_el), guard=size + 1)
            if gen.order == size:
                return a_el, b_el
    return None


# -- brute-force isomorphism oracle -------------------------------------------


def _pair_profile(group: FiniteGroup, a: Element, b: Element) -> tuple:
    """Isomorphism-invariant fingerprint of a generating pair."""
    u = group.comm(b, a)
    ab = group.mul(a, b)
    a2 = group.mul(a, a)
    b2 = group.mul(b, b)
    return (
        group.order_of(a),
        group.order_of(b),
        group.order_of(u),
        group.order_of(ab),
        group.is_central(a2),
        group.is_central(b2),
        group.is_central(u),
        group.is_central(group.mul(ab, ab)),
        group.order_of(group.mul(a2, b2)),
    )


def _transport_images(a_group: FiniteGroup, b_table: np.ndarray,
                      img_gens: Sequence[int], b_ident: int) -> np.ndarray:
    """Image indices of every element of A under word transport."""
    size = a_group.order
    img = np.empty(size, dtype=np.int32)
    img[a_group.identity_index] = b_ident
    parent = a_group.bfs_parent
    gen = a_group.bfs_gen
    for i in a_group.bfs_order:
        if i == a_group.identity_index:
            continue
        img[i] = b_table[img[parent[i]], img_gens[gen[i]]]
    return img


def _check_candidate(a_group: FiniteGroup, a_cols: list[np.ndarray],
                     b_group: FiniteGroup, b_table: np.ndarray,
                     img_gens: Sequence[int]) -> bool:
    img = _transport_images(a_group, b_table, img_gens, b_group.identity_index)
    if np.unique(img).size != a_group.order:
        return False
    for j, col in enumerate(a_cols):
        if not np.array_equal(img[col], b_table[img, img_gens[j]]):
            return False
    return True


def isomorphic_bruteforce(a_group: FiniteGroup, b_group: FiniteGroup,
                          bound: int = DEFAULT_ORACLE_BOUND) -> bool:
    """Exhaustive 2-generated isomorphism test.

    Fixes A's stored generating pair, enumerates order-compatible image pairs
    in B in canonical order, prunes with pair-profile invariants, and verifies
    survivors by transport.  A ``True`` answer comes with a verified bijective
    multiplicative map; ``False`` means no image pair survived.
    """
    if a_group.order != b_group.order:
        return False
    if a_group.order > bound or b_group.order > bound:
        raise OracleBoundExceeded(
            f"group order {max(a_group.order, b_group.order)} exceeds oracle bound {bound}")
    if len(a_group.generators) != 2:
        raise ValueError("oracle requires a 2-generated A with a stored generating pair")
    a1, a2 = a_group.generators
    profile = _pair_profile(a_group, a1, a2)

    orders = b_group.element_orders()
    central = b_group.central_mask()
    table = b_group.cayley_table()
    invp = b_group.inverse_permutation()
    size = b_group.order
    idx_all = np.arange(size, dtype=np.int32)
    sq = table[idx_all, idx_all]

    def order_pow_table(target: int) -> np.ndarray:
        return orders == target

    b1_mask = order_pow_table(profile[0]) & (central[sq] == profile[4])
    b2_mask_base = order_pow_table(profile[1]) & (central[sq] == profile[5])
    b1_candidates = np.flatnonzero(b1_mask)
    b2_candidates = np.flatnonzero(b2_mask_base).astype(np.int32)
    if b1_candidates.size == 0 or b2_candidates.size == 0:
        return False
    a_cols = a_group.right_generator_columns()

    for ib1 in b1_candidates:
        ib1 = int(ib1)
        b2s = b2_candidates
        # u = [b2, b1]
        u = table[table[table[invp[b2s], invp[ib1]], b2s], ib1]
        mask = orders[u] == profile[2]
        prod = table[ib1, b2s]
        mask &= orders[prod] == profile[3]
        mask &= central[u] == profile[6]
        mask &= central[sq[prod]] == profile[7]
        mask &= orders[table[sq[ib1], sq[b2s]]] == profile[8]
        for ib2 in b2s[mask]:
            if _check_candidate(a_group, a_cols, b_group, table, (ib1, int(ib2))):
                return True
    return False


__all__ = [
    "Clause", "RecognitionResult", "OracleBoundExceeded", "DEFAULT_ORACLE_BOUND",
    "recognize_presented_group", "recognize_any_pair",
    "find_presentation_witness", "isomorphic_bruteforce",
]
