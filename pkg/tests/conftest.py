"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the code paths they check: naive
dict-convolution products, a self-contained GF(p) eliminator for the
regular-representation unit test, set-based closure, an element-order
census for abelian types, and a quadratic pairwise scan for the
class-sum power count.
"""

from __future__ import annotations

import sys
from collections import Counter
from typing import Dict, List, Sequence, Tuple

import numpy as np
import pytest

from mipverify.algebra import AlgebraElement, GroupAlgebra
from mipverify.ambient import Element, int_log, make_ambient
from mipverify.family import FamilyInstance, build_family
from mipverify.groups import FiniteGroup, closure, generated_subgroup
from mipverify.tables import semidirect_c9c9_table, wreath_cyclic_table

# --- naive oracles -------------------------------------------------------------


def naive_product(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Dict-convolution product, one group multiplication per support pair."""
    alg = u.algebra
    group = alg.group
    acc: Dict[Element, int] = {}
    for i in u.support():
        gi = group.elements[i]
        ci = u.coeff(i)
        for j in v.support():
            gj = group.elements[j]
            key = group.mul(gi, gj)
            acc[key] = (acc.get(key, 0) + ci * v.coeff(j)) % alg.p
    out = alg.zero()
    for g, coef in acc.items():
        if coef:
            out = out + alg.embed(g).scale(coef)
    return out


def naive_power(u: AlgebraElement, e: int) -> AlgebraElement:
    out = u.algebra.one()
    for _ in range(e):
        out = naive_product(out, u)
    return out


def modp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    """Row-echelon rank over F_p via fraction-free elimination on lists."""
    mat = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def gf2_rank_bitmask(rows: Sequence[int]) -> int:
    """GF(2) rank of rows packed as Python ints (own eliminator, no numpy)."""
    basis: List[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
    return len(basis)


def regular_rep_is_unit(u: AlgebraElement) -> bool:
    """Unit test by rank of the left-multiplication matrix (independent route).

    Row g of the matrix is the vector of e_g * u, built directly by
    translating u's support; the rank comes from a local eliminator.
    """
    alg = u.algebra
    group = alg.group
    support = u.support()
    if alg.p == 2:
        packed: List[int] = []
        for g in group.elements:
            row = 0
            for j in support:
                row |= 1 << group.index(group.mul(g, group.elements[j]))
            packed.append(row)
        return gf2_rank_bitmask(packed) == alg.dim
    rows: List[List[int]] = []
    for g in group.elements:
        row = [0] * alg.dim
        for j in support:
            idx = group.index(group.mul(g, group.elements[j]))
            row[idx] = (row[idx] + u.coeff(j)) % alg.p
        rows.append(row)
    return modp_rank(rows, alg.p) == alg.dim


def order_census(group: FiniteGroup) -> Counter:
    return Counter(int(o) for o in group.element_orders())


def abelian_type_census_check(group: FiniteGroup, parts: Tuple[int, ...]) -> bool:
    """Does the claimed type reproduce the census of orders dividing p^s?

    For an abelian p-group of type (p^{e_1}, ..., p^{e_r}) the number of
    elements of order dividing p^s is p^{sum_i min(e_i, s)}; those counts
    determine the type, so matching them for every s is a complete check.
    """
    p = group.ambient.p
    census = order_census(group)
    prod = 1
    for part in parts:
        prod *= int(part)
    if prod != group.order:
        return False
    exps = [int_log(p, part) for part in parts]
    s = 0
    while p ** s <= group.exponent():
        expected = p ** sum(min(e, s) for e in exps)
        actual = sum(cnt for o, cnt in census.items() if o <= p ** s)
        if expected != actual:
            return False
        s += 1
    return True


def naive_closure(group_ambient, generators: Sequence[Element]) -> frozenset:
    """Set-based breadth-first closure, no vectorization."""
    seen = {group_ambient.identity}
    frontier = [group_ambient.identity]
    gens = list(generators)
    for g in gens:
        if g not in seen:
            seen.add(g)
            frontier.append(g)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group_ambient.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def pairwise_class_sum_count(alg: GroupAlgebra) -> int:
    """Quadratic oracle: class sums equal to a p-th power of a different one."""
    sums = alg.class_sums()
    hit = set()
    for i, u in enumerate(sums):
        up = naive_power(u, alg.p)
        for j, v in enumerate(sums):
            if j != i and up == v:
                hit.add(j)
    return len(hit)


# --- shared instances ------------------------------------------------------------


@pytest.fixture(scope="session")
def inst433() -> FamilyInstance:
    return build_family(2, "dihedral", 4, 3, 3)


@pytest.fixture(scope="session")
def FG433(inst433) -> GroupAlgebra:
    return GroupAlgebra(inst433.G)


@pytest.fixture(scope="session")
def FH433(inst433) -> GroupAlgebra:
    return GroupAlgebra(inst433.H)


def _two_group(variant: str, k: int) -> FiniteGroup:
    amb = make_ambient(2, variant, k, 1, 1)
    g = amb.standard_generators()
    return closure(amb, [g["t"], g["r"]])


def small_group_catalog() -> List[Tuple[str, FiniteGroup]]:
    """Named groups of order <= 2^9 the suite exercises (both parities)."""
    a2 = make_ambient(2, "dihedral", 3, 3, 1)
    g2 = a2.standard_generators()
    a3 = make_ambient(3, "heisenberg", 1, 2, 1)
    g3 = a3.standard_generators()
    wt, wg = wreath_cyclic_table(3)
    st, sg = semidirect_c9c9_table()
    catalog: List[Tuple[str, FiniteGroup]] = [
        ("C2", closure(a2, [g2["t"]])),
        ("C4", closure(a2, [a2.power(g2["c"], 2)])),
        ("C8", closure(a2, [g2["c"]])),
        ("V4", generated_subgroup(a2, [g2["t"], g2["d"]])),
        ("C8xC2", generated_subgroup(a2, [g2["c"], g2["d"]])),
        ("D8", _two_group("dihedral", 2)),
        ("Q8", _two_group("quaternion", 2)),
        ("D16", _two_group("dihedral", 3)),
        ("SD16", _two_group("semidihedral", 3)),
        ("Q16", _two_group("quaternion", 3)),
        ("C9", closure(a3, [g3["c"]])),
        ("C3xC3", generated_subgroup(a3, [a3.power(g3["c"], 3), g3["d"]])),
        ("heis27", closure(a3, [g3["s"], g3["s1"]])),
        ("wreath243", build_family(3, "table", 2, 1, 1, table=wt,
                                   table_generators=wg).G),
        ("c9c9_243", build_family(3, "table", 1, 1, 1, table=st,
                                  table_generators=sg).G),
    ]
    return catalog


@pytest.fixture(scope="session")
def catalog() -> List[Tuple[str, FiniteGroup]]:
    return small_group_catalog()


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance pass/fail lines after the test summary."""
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "acceptance_lines", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
