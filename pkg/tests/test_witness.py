"""Unit-witness construction, certification clauses, and unit-group tooling."""

import pytest

from mipverify.algebra import GroupAlgebra, is_unit, unit_inverse, unit_order
from mipverify.family import build_family
from mipverify.groups import abelian_invariants
from mipverify.isomorphism import isomorphic_bruteforce
from mipverify.witness import (build_beta, build_beta_general, build_beta_k3,
                               unit_closure, unit_group_table,
                               unit_subgroup_as_table_group, verify_witness)

CLAUSE_IDS = ["beta-order", "beta-square-central", "closure-size",
              "unit-recognition", "spanning", "independent-mod-a2",
              "basis-transport"]


@pytest.fixture(scope="module")
def beta433(FH433, inst433):
    return build_beta(FH433, inst433.x, inst433.z)


@pytest.fixture(scope="module")
def cert433(FG433, FH433, beta433):
    return verify_witness(FG433, FH433, beta433, (4, 3, 3))


def test_beta_support(FH433, inst433, beta433):
    H = FH433.group
    xz = H.mul(inst433.x, inst433.z)
    expected = {H.index(H.identity), H.index(inst433.x), H.index(xz)}
    assert set(beta433.support()) == expected
    assert beta433.augmentation() == 1


def test_beta_order_and_square(FH433, inst433, beta433):
    assert unit_order(beta433) == 8
    sq = beta433 * beta433
    assert sq.is_central()
    x_emb = FH433.embed(inst433.x)
    assert unit_inverse(x_emb) * sq * x_emb == sq


def test_certificate_valid(cert433):
    assert cert433.valid
    assert cert433.first_failing is None
    assert [c.id for c in cert433.clauses] == CLAUSE_IDS
    assert cert433.beta_order == 8
    assert cert433.order_note is None
    assert cert433.rank == 512
    assert len(cert433.matrix_keys) == 512


def test_certificate_clause_data(cert433):
    data = {c.id: c.data for c in cert433.clauses}
    assert data["beta-order"] == {"order": 8, "expected": 8, "note": None}
    assert data["beta-square-central"]["fixed_by_x"] is True
    assert data["closure-size"] == {"size": 512, "expected": 512}
    rec = data["unit-recognition"]
    assert rec["order_a"] == 16 and rec["order_b"] == 8
    assert rec["commutator_order"] == 4 and rec["derived_order"] == 4
    assert rec["squares_meet_derived_size"] == 1
    assert data["spanning"] == {"rank": 512, "dim": 512}
    assert data["independent-mod-a2"]["a2_dim"] == 509
    transport = data["basis-transport"]
    assert transport["mode"] == "sampled" and transport["pairs"] == 1024
    assert transport["mismatches"] == 0


def test_certificate_seed_determinism(FG433, FH433, beta433, cert433):
    again = verify_witness(FG433, FH433, beta433, (4, 3, 3))
    assert again.matrix_keys == cert433.matrix_keys
    assert [c.data for c in again.clauses] == [c.data for c in cert433.clauses]
    other_seed = verify_witness(FG433, FH433, beta433, (4, 3, 3), seed=99)
    assert other_seed.valid


def test_exhaustive_multiplicativity(FG433, FH433, beta433):
    cert = verify_witness(FG433, FH433, beta433, (4, 3, 3), exhaustive=True)
    assert cert.valid
    transport = {c.id: c.data for c in cert.clauses}["basis-transport"]
    assert transport["mode"] == "exhaustive"
    assert transport["pairs"] == 512 * 512
    assert transport["mismatches"] == 0


def test_negative_control_embedded_z(FG433, FH433, inst433):
    bad = FH433.embed(inst433.z)
    cert = verify_witness(FG433, FH433, bad, (4, 3, 3))
    assert not cert.valid
    assert cert.first_failing == "beta-square-central"
    status = {c.id: c.passed for c in cert.clauses}
    assert status == {"beta-order": True, "beta-square-central": False,
                      "closure-size": True, "unit-recognition": False,
                      "spanning": True, "independent-mod-a2": True,
                      "basis-transport": False}
    rec = {c.id: c.data for c in cert.clauses}["unit-recognition"]
    assert rec["first_failing"] == "b-square-central"


def test_power_closed_form(FG433, FH433, inst433, beta433):
    """beta^(2^j) = 1 + x^(2^j) (1 + z^(2^(j-1)) (1 + (st)^(2^j)) + d^(2^j))."""
    H = FH433.group
    amb = inst433.ambient
    st = amb.mul(inst433.named["s"], inst433.named["t"])
    d = inst433.named["d"]
    n, m, k = 4, 3, 3
    one = FH433.one()
    for j in range(1, m + 1):
        e = 2 ** j
        lhs = beta433 ** e
        inner = one + FH433.embed(H.power(st, e))
        zpart = FH433.embed(H.power(inst433.z, e // 2)) * inner
        bracket = one + zpart + FH433.embed(H.power(d, e))
        rhs = one + FH433.embed(H.power(inst433.x, e)) * bracket
        assert lhs == rhs, f"j={j}"
    assert beta433 ** (2 ** m) == one


def test_power_z_final_term_variant_boundary(FG433, FH433, inst433, beta433):
    """The variant with final term z^(2^j) holds exactly when j >= k or j = m."""
    H = FH433.group
    amb = inst433.ambient
    st = amb.mul(inst433.named["s"], inst433.named["t"])
    n, m, k = 4, 3, 3
    one = FH433.one()
    for j in range(1, m + 1):
        e = 2 ** j
        lhs = beta433 ** e
        inner = one + FH433.embed(H.power(st, e))
        zpart = FH433.embed(H.power(inst433.z, e // 2)) * inner
        bracket = one + zpart + FH433.embed(H.power(inst433.z, e))
        rhs = one + FH433.embed(H.power(inst433.x, e)) * bracket
        assert (lhs == rhs) == (j >= k or j == m), f"j={j}"


def test_commutator_closed_form(FG433, FH433, inst433, beta433):
    """[beta, x] = 1 + beta^(-1) (zx) ((ts)^2 + 1), a unit of order 2^(k-1)."""
    H = FH433.group
    amb = inst433.ambient
    ts2 = amb.power(amb.mul(inst433.named["t"], inst433.named["s"]), 2)
    x_emb = FH433.embed(inst433.x)
    comm = unit_inverse(beta433) * unit_inverse(x_emb) * beta433 * x_emb
    zx = FH433.embed(H.mul(inst433.z, inst433.x))
    rhs = FH433.one() + unit_inverse(beta433) * zx * \
        (FH433.embed(ts2) + FH433.one())
    assert comm == rhs
    assert unit_order(comm) == 4


def test_k3_witness(FG433, FH433, inst433):
    d_sq = inst433.ambient.power(inst433.named["d"], 2)
    beta = build_beta_k3(FH433, inst433.x, inst433.z, d_sq, 3)
    assert beta.support_size() == 3 and beta.augmentation() == 1
    cert = verify_witness(FG433, FH433, beta, (4, 3, 3))
    assert cert.valid
    assert cert.beta_order == 8
    with pytest.raises(ValueError):
        build_beta_k3(FH433, inst433.x, inst433.z, d_sq, 4)


def test_general_witness_and_preconditions(FG433, FH433, inst433):
    H = FH433.group
    c = inst433.named["c"]
    zeta = FH433.embed(H.power(c, 8))  # central of order 2 < 2^m
    beta = build_beta_general(FH433, zeta, inst433.x, inst433.z, 3)
    cert = verify_witness(FG433, FH433, beta, (4, 3, 3))
    assert cert.valid
    with pytest.raises(ValueError):  # zeta not central
        build_beta_general(FH433, FH433.embed(inst433.z), inst433.x,
                           inst433.z, 3)
    with pytest.raises(ValueError):  # zeta order too large
        build_beta_general(FH433, FH433.embed(c), inst433.x, inst433.z, 3)
    with pytest.raises(ValueError):  # x_t must move z
        build_beta_general(FH433, zeta, H.power(inst433.z, 2), inst433.z, 3)
    with pytest.raises(ValueError):  # non-unit zeta
        build_beta_general(FH433, FH433.zero(), inst433.x, inst433.z, 3)


def test_order_note_at_543():
    inst = build_family(2, "dihedral", 5, 4, 3)
    FH = GroupAlgebra(inst.H)
    beta = build_beta(FH, inst.x, inst.z)
    assert unit_order(beta) == 16  # 2^m with m = 4, not 2^k = 8
    FG = GroupAlgebra(inst.G)
    cert = verify_witness(FG, FH, beta, (5, 4, 3))
    assert cert.valid
    assert cert.beta_order == 16
    assert cert.order_note is not None and "2^k" in cert.order_note


def test_unit_closure_of_group_basis(FH433, inst433):
    gens = [FH433.embed(inst433.x), FH433.embed(inst433.z)]
    sub = unit_closure(FH433, gens)
    assert sub.order == 512
    assert sub.index(FH433.one()) == 0


def test_unit_closure_guards(catalog, FH433, FG433):
    groups = dict(catalog)
    FV4 = GroupAlgebra(groups["V4"])
    gens = [FV4.embed(g) for g in groups["V4"].generators]
    # the unit group of F2[V4] has order 8 > dim * safety_factor for factor 1
    with pytest.raises(RuntimeError):
        all_units = [FV4.from_indices(ix) for ix in _all_odd_supports(4)]
        unit_closure(FV4, all_units, safety_factor=1)
    with pytest.raises(ValueError):  # non-unit generator
        unit_closure(FV4, [FV4.zero()])
    with pytest.raises(ValueError):  # generator from another algebra
        unit_closure(FG433, [FH433.one()])


def _all_odd_supports(dim):
    for mask in range(2 ** dim):
        if bin(mask).count("1") % 2 == 1:
            yield [i for i in range(dim) if mask >> i & 1]


def test_unit_group_of_c4_structure(catalog):
    groups = dict(catalog)
    C4 = groups["C4"]
    FC4 = GroupAlgebra(C4)
    c = C4.generators[0]
    u1 = FC4.embed(c)
    # c + c^2 + c^3 squares to 1 in characteristic 2 and lies outside <c>
    u2 = FC4.from_elements([c, C4.power(c, 2), C4.power(c, 3)])
    assert unit_order(u2) == 2
    sub = unit_closure(FC4, [u1, u2])
    assert sub.order == 8  # all augmentation-1 elements
    table = unit_group_table(sub)
    assert table.shape == (8, 8)
    tgroup = unit_subgroup_as_table_group(sub)
    assert tgroup.order == 8 and tgroup.is_abelian()
    assert abelian_invariants(tgroup) == (4, 2)


def test_unit_subgroup_isomorphism_oracle(FG433, FH433, beta433, inst433):
    sub = unit_closure(FH433, [FH433.embed(inst433.x), beta433])
    assert sub.order == 512
    tgroup = unit_subgroup_as_table_group(sub)
    assert isomorphic_bruteforce(tgroup, inst433.G)
    assert not isomorphic_bruteforce(tgroup, inst433.H)
