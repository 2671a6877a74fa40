"""Subgroup machinery: closure, series, classes, maximal subgroups."""

import random

import pytest

from mipverify.ambient import make_ambient
from mipverify.groups import (center, centralizer_index, closure,
                              commutator_subgroup, conjugacy_classes,
                              derived_subgroup, exponent, frattini,
                              generated_subgroup, intersection,
                              jennings_factor_orders, jennings_series,
                              lower_central_series, maximal_subgroups,
                              nilpotency_class, normal_closure,
                              power_subgroup, subgroup_from_elements)

from conftest import naive_closure


def _catalog_map(catalog):
    return dict(catalog)


def test_closure_matches_naive_oracle(catalog):
    groups = _catalog_map(catalog)
    rng = random.Random(424242)
    for name in ("D16", "Q16", "heis27"):
        grp = groups[name]
        amb = grp.ambient
        for _ in range(6):
            gens = [grp.elements[rng.randrange(grp.order)] for _ in range(2)]
            fast = closure(amb, gens)
            assert fast.element_set() == naive_closure(amb, gens), name


def test_closure_canonical_order_deterministic(catalog):
    grp = _catalog_map(catalog)["D16"]
    again = closure(grp.ambient, list(grp.generators))
    assert again.elements == grp.elements


def test_small_generators_regenerate(catalog):
    for name, grp in catalog:
        small = grp.small_generators()
        assert len(small) <= max(len(grp.generators), 3)
        assert closure(grp.ambient, small).element_set() == grp.element_set()


def test_small_generators_shrinks_full_element_list(catalog):
    grp = _catalog_map(catalog)["D16"]
    fat = subgroup_from_elements(grp.ambient, grp.elements)
    assert len(fat.generators) == grp.order
    small = fat.small_generators()
    assert len(small) <= 4
    assert closure(grp.ambient, small).element_set() == grp.element_set()


def test_derived_center_frattini_dihedral8(catalog):
    D8 = _catalog_map(catalog)["D8"]
    der = derived_subgroup(D8)
    assert der.order == 2
    assert center(D8).element_set() == der.element_set()
    assert frattini(D8).element_set() == der.element_set()


def test_derived_center_frattini_quaternion8(catalog):
    Q8 = _catalog_map(catalog)["Q8"]
    assert derived_subgroup(Q8).order == 2
    assert center(Q8).order == 2
    assert frattini(Q8).order == 2
    # Q8 has a unique minimal subgroup: every order-2 subgroup is the center
    assert sum(1 for o in Q8.element_orders() if o == 2) == 1


def test_lower_central_series_and_class(catalog):
    groups = _catalog_map(catalog)
    assert nilpotency_class(groups["C8"]) == 1
    assert nilpotency_class(groups["D8"]) == 2
    assert nilpotency_class(groups["D16"]) == 3
    assert nilpotency_class(groups["Q16"]) == 3
    series = lower_central_series(groups["D16"])
    orders = [s.order for s in series]
    assert orders[0] == 16 and orders[-1] == 1
    assert all(orders[i] % orders[i + 1] == 0 for i in range(len(orders) - 1))
    assert nilpotency_class(groups["heis27"]) == 2


def test_power_subgroup_cyclic(catalog):
    C8 = _catalog_map(catalog)["C8"]
    assert power_subgroup(C8, 1).order == 4
    assert power_subgroup(C8, 2).order == 2
    assert power_subgroup(C8, 3).order == 1


def test_frattini_of_cyclic_and_klein(catalog):
    groups = _catalog_map(catalog)
    assert frattini(groups["C8"]).order == 4
    assert frattini(groups["V4"]).order == 1


def test_maximal_subgroups_counts(catalog):
    groups = _catalog_map(catalog)
    assert len(maximal_subgroups(groups["C4"])) == 1
    assert len(maximal_subgroups(groups["V4"])) == 3
    d8_max = maximal_subgroups(groups["D8"])
    assert len(d8_max) == 3
    assert sorted(sub.is_abelian() for sub in d8_max) == [True, True, True]
    assert all(2 * sub.order == 8 for sub in d8_max)


def test_conjugacy_classes_dihedral8(catalog):
    D8 = _catalog_map(catalog)["D8"]
    classes = conjugacy_classes(D8)
    sizes = sorted(len(cls) for cls in classes)
    assert sizes == [1, 1, 2, 2, 2]
    for cls in classes:
        rep = D8.elements[cls[0]]
        assert centralizer_index(D8, rep) == len(cls)


def test_conjugacy_classes_partition(catalog):
    for name in ("Q16", "heis27"):
        grp = _catalog_map(catalog)[name]
        classes = conjugacy_classes(grp)
        seen = sorted(i for cls in classes for i in cls)
        assert seen == list(range(grp.order))


def test_normal_closure_and_commutator(catalog):
    D16 = _catalog_map(catalog)["D16"]
    t = D16.generators[0]
    nc = normal_closure(D16, [t])
    assert nc.order in (8, 16)
    der = commutator_subgroup(D16, D16)
    assert der.element_set() == derived_subgroup(D16).element_set()


def test_intersection(catalog):
    groups = _catalog_map(catalog)
    V4, C4 = groups["V4"], groups["C4"]
    assert intersection(V4, V4).order == 4
    D8 = groups["D8"]
    der = derived_subgroup(D8)
    cen = center(D8)
    assert intersection(der, cen).element_set() == der.element_set()


def test_jennings_series_c4():
    amb = make_ambient(2, "dihedral", 3, 2, 1)
    C4 = closure(amb, [amb.standard_generators()["c"]])
    series = jennings_series(C4)
    assert [s.order for s in series] == [4, 2, 1]
    assert jennings_factor_orders(C4) == [2, 2]


def test_jennings_series_shape(catalog):
    for name, grp in catalog:
        series = jennings_series(grp)
        assert series[0].element_set() == grp.element_set()
        assert series[-1].order == 1
        factors = jennings_factor_orders(grp)
        prod = 1
        for f in factors:
            prod *= f
        assert prod == grp.order, name


def test_exponent(catalog):
    groups = _catalog_map(catalog)
    assert exponent(groups["C8"]) == 8
    assert exponent(groups["V4"]) == 2
    assert exponent(groups["Q8"]) == 4
    assert groups["heis27"].exponent() == 3


def test_generated_subgroup_vs_closure(catalog):
    grp = _catalog_map(catalog)["SD16"]
    gens = list(grp.generators)
    assert generated_subgroup(grp.ambient, gens).element_set() == \
        closure(grp.ambient, gens).element_set()
