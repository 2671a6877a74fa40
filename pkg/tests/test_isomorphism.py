"""Recognition clauses and the brute-force isomorphism oracle."""

import pytest

from mipverify.family import build_family
from mipverify.groups import closure, generated_subgroup
from mipverify.isomorphism import (OracleBoundExceeded,
                                   find_presentation_witness,
                                   isomorphic_bruteforce, recognize_any_pair,
                                   recognize_presented_group)


def _by_name(catalog):
    return dict(catalog)


def test_bruteforce_distinguishes_small_groups(catalog):
    groups = _by_name(catalog)
    assert not isomorphic_bruteforce(groups["V4"], groups["C4"])
    assert not isomorphic_bruteforce(groups["D8"], groups["Q8"])
    assert not isomorphic_bruteforce(groups["D16"], groups["SD16"])
    assert not isomorphic_bruteforce(groups["D16"], groups["Q16"])
    assert not isomorphic_bruteforce(groups["SD16"], groups["Q16"])


def test_bruteforce_accepts_relabelled_copy(catalog):
    groups = _by_name(catalog)
    D16 = groups["D16"]
    t, r = D16.generators
    # same group on a different generating pair: (t r^2, r) still presents D16
    other = closure(D16.ambient, [D16.mul(t, D16.mul(r, r)), r])
    assert other.element_set() == D16.element_set()
    assert isomorphic_bruteforce(other, D16)
    assert isomorphic_bruteforce(D16, D16)


def test_bruteforce_differing_orders_and_bound(catalog):
    groups = _by_name(catalog)
    assert not isomorphic_bruteforce(groups["D8"], groups["D16"])
    with pytest.raises(OracleBoundExceeded):
        isomorphic_bruteforce(groups["D16"], groups["Q16"], bound=8)


def test_recognition_accepts_g_pair(inst433):
    res = recognize_presented_group(inst433.G, inst433.x, inst433.y, 4, 3, 3)
    assert res.ok
    assert [c.id for c in res.clauses] == [
        "parameters", "order-a", "order-b", "a-square-central",
        "b-square-central", "derived-order",
        "central-squares-meet-derived-trivially"]
    assert all(c.passed for c in res.clauses)


def test_recognition_rejects_h_pair_on_g_parameters(inst433):
    # (x, z) generates H whose z^2 is NOT central: recognition must fail there
    res = recognize_presented_group(inst433.H, inst433.x, inst433.z, 4, 3, 3)
    assert not res.ok
    failing = [c.id for c in res.clauses if not c.passed]
    assert "b-square-central" in failing


def test_recognition_requires_generating_pair(inst433):
    c = inst433.named["c"]
    with pytest.raises(ValueError):
        recognize_presented_group(inst433.G, inst433.x, c, 4, 3, 3)


def test_recognize_any_pair(inst433):
    pair = recognize_any_pair(inst433.G, 4, 3, 3)
    assert pair is not None
    a, b = pair
    assert recognize_presented_group(inst433.G, a, b, 4, 3, 3).ok
    assert recognize_any_pair(inst433.G, 3, 3, 3) is None  # bad parameters


def test_presentation_witness_g_and_h(inst433):
    G, H = inst433.G, inst433.H
    assert find_presentation_witness(G, 4, 3, 3, relations="g") is not None
    assert find_presentation_witness(G, 4, 3, 3, relations="h") is None
    assert find_presentation_witness(H, 4, 3, 3, relations="h") is not None
    assert find_presentation_witness(H, 4, 3, 3, relations="g") is None
    with pytest.raises(ValueError):
        find_presentation_witness(G, 4, 3, 3, relations="x")


def test_witness_pair_satisfies_relations(inst433):
    G = inst433.G
    a, b = find_presentation_witness(G, 4, 3, 3, relations="g")
    u = G.comm(b, a)
    assert G.order_of(a) == 16 and G.order_of(b) == 8
    assert G.order_of(u) == 4
    assert G.conj(b, a) == G.mul(b, u)
    assert G.conj(u, a) == G.inv(u)
    assert G.conj(u, b) == G.inv(u)
    assert closure(G.ambient, [a, b]).order == G.order
