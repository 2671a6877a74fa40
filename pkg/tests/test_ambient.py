"""Ambient product arithmetic: encodings, axioms, guards, tables."""

import random

import numpy as np
import pytest

from mipverify.ambient import (DEFAULT_GUARD, GuardExceeded, check_prime_power,
                               int_log, make_ambient, round_up_power)
from mipverify.tables import semidirect_c9c9_table, wreath_cyclic_table


AMBIENTS = {
    "dihedral": make_ambient(2, "dihedral", 3, 4, 3),
    "semidihedral": make_ambient(2, "semidihedral", 3, 4, 3),
    "quaternion": make_ambient(2, "quaternion", 3, 4, 3),
    "heisenberg": make_ambient(3, "heisenberg", 1, 2, 1),
}


def random_element(amb, rng):
    return tuple(rng.randrange(r) for r in amb.radices)


@pytest.mark.parametrize("name", sorted(AMBIENTS))
def test_group_axioms_sampled(name):
    amb = AMBIENTS[name]
    rng = random.Random(20240605)
    e = amb.identity
    for _ in range(200):
        a, b, c = (random_element(amb, rng) for _ in range(3))
        assert amb.mul(amb.mul(a, b), c) == amb.mul(a, amb.mul(b, c))
        assert amb.mul(a, e) == a and amb.mul(e, a) == a
        assert amb.mul(a, amb.inv(a)) == e
        assert amb.conj(a, b) == amb.mul(amb.inv(b), amb.mul(a, b))
        assert amb.comm(a, b) == amb.mul(amb.inv(amb.mul(b, a)), amb.mul(a, b))


@pytest.mark.parametrize("name", sorted(AMBIENTS))
def test_power_matches_repeated_multiplication(name):
    amb = AMBIENTS[name]
    rng = random.Random(99)
    for _ in range(25):
        a = random_element(amb, rng)
        acc = amb.identity
        for e in range(9):
            assert amb.power(a, e) == acc
            acc = amb.mul(acc, a)
        assert amb.power(a, -1) == amb.inv(a)


def test_two_generator_relations():
    for name in ("dihedral", "semidihedral", "quaternion"):
        amb = AMBIENTS[name]
        g = amb.standard_generators()
        t, r = g["t"], g["r"]
        assert amb.order_of(r) == 2 ** amb.k
        rt = amb.conj(r, t)
        if name == "dihedral":
            assert amb.order_of(t) == 2
            assert rt == amb.inv(r)
        elif name == "semidihedral":
            assert amb.order_of(t) == 2
            assert rt == amb.power(r, 2 ** (amb.k - 1) - 1)
        else:
            assert amb.power(t, 2) == amb.power(r, 2 ** (amb.k - 1))
            assert rt == amb.inv(r)
        assert amb.order_of(g["c"]) == 2 ** amb.n
        assert amb.order_of(g["d"]) == 2 ** amb.m


def test_central_factors_commute():
    rng = random.Random(5)
    for name, amb in AMBIENTS.items():
        g = amb.standard_generators()
        for _ in range(40):
            a = random_element(amb, rng)
            for central in (g["c"], g["d"]):
                assert amb.mul(a, central) == amb.mul(central, a), name


def test_heisenberg_relations():
    amb = AMBIENTS["heisenberg"]
    g = amb.standard_generators()
    s, s1 = g["s"], g["s1"]
    u = amb.comm(s, s1)
    assert amb.order_of(s) == 3 and amb.order_of(s1) == 3
    assert amb.order_of(u) == 3
    assert amb.comm(u, s) == amb.identity and amb.comm(u, s1) == amb.identity
    assert amb.k_order == 27


def test_element_key_roundtrip():
    rng = random.Random(31)
    for amb in AMBIENTS.values():
        seen = set()
        for _ in range(50):
            a = random_element(amb, rng)
            seen.add(amb.key(a))
        assert all(0 <= key < amb.order for key in seen)


def test_guard_exceeded():
    with pytest.raises(GuardExceeded):
        make_ambient(2, "dihedral", 3, 4, 3, guard=64)


def test_heisenberg_rejects_p2():
    with pytest.raises(ValueError):
        make_ambient(2, "heisenberg", 1, 2, 1)


def test_bad_prime_and_variant():
    with pytest.raises(ValueError):
        make_ambient(6, "dihedral", 3, 4, 3)
    with pytest.raises(ValueError):
        make_ambient(2, "cyclic", 3, 4, 3)


def test_table_kind_validation():
    wt, wgens = wreath_cyclic_table(3)
    amb = make_ambient(3, "table", 1, 1, 1, table=wt, table_generators=wgens)
    assert amb.k_order == 81
    st, sgens = semidirect_c9c9_table()
    assert st.shape == (243, 243)
    # identity must be row/column 0
    assert list(st[0]) == list(range(243))
    bad = np.array([[0, 1], [1, 1]])
    with pytest.raises(ValueError):
        make_ambient(2, "table", 1, 1, 1, table=bad, table_generators=(1,))
    non_assoc = np.array([[0, 1, 2], [1, 2, 0], [2, 1, 0]])
    with pytest.raises(ValueError):
        make_ambient(3, "table", 1, 1, 1, table=non_assoc,
                     table_generators=(1,))


def test_wreath_table_is_wreath_product():
    wt, wgens = wreath_cyclic_table(3)
    assert wt.shape == (81, 81)
    amb = make_ambient(3, "table", 1, 1, 1, table=wt, table_generators=wgens)
    g = amb.standard_generators()
    s, s1 = g["s"], g["s1"]
    assert amb.order_of(s) == 3  # top cycle
    assert amb.order_of(s1) == 3  # one base coordinate
    conj = amb.conj(s1, s)
    assert amb.comm(s1, conj) == amb.identity  # base stays abelian


def test_int_log_and_powers():
    assert int_log(2, 8) == 3
    assert int_log(3, 81) == 4
    assert round_up_power(2, 5) == 3  # smallest e with 2^e >= 5
    assert round_up_power(2, 8) == 3
    assert check_prime_power(2, 16) == 4
    with pytest.raises(ValueError):
        check_prime_power(2, 12)
    assert DEFAULT_GUARD == 2 ** 22
