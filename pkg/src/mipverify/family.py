"""Construction of the counterexample family inside P = K x C x D.

For p = 2, K is dihedral (or semidihedral/quaternion) of order 2^(k+1) with
reflection t and rotation r = ts, C = <c> has order 2^n and D = <d> has order
2^m with n > m >= k >= 3.  The family instance carries

    x = tc,  y = sd,  z = rd = tsd,  G = <x, y>,  H = <x, z>,

together with the abelian index-2 subgroup M = <r, c, d> of P.  G and H share
the literal element x because both live in the same ambient, which is what
makes the unit-witness construction exact.

For odd p the analogous construction takes K = <s, s1> of maximal class with
an abelian maximal subgroup, C = <c> of order p^m, D = <d> of order p^n
(note the swapped roles of n and m relative to the 2-case), and stores only
G = <sc, s1 d>.  The maximal-class and abelian-maximal hypotheses on K are
verified, not trusted, whether K is the built-in Heisenberg group or an
explicit multiplication table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .ambient import (AmbientDescriptor, DEFAULT_GUARD, Element,
                      TWO_GENERATOR_VARIANTS, int_log, make_ambient)
from .groups import (FiniteGroup, closure, derived_subgroup, frattini,
                     generated_subgroup, intersection, maximal_subgroups,
                     nilpotency_class)
from .isomorphism import (Clause, DEFAULT_ORACLE_BOUND,
                          find_presentation_witness, isomorphic_bruteforce)


@dataclass(frozen=True)
class FamilyInstance:
    """One member of the family, with every named subgroup enumerated."""

    params: tuple  # (p, variant, n, m, k)
    ambient: AmbientDescriptor
    P: FiniteGroup
    G: FiniteGroup
    x: Element
    y: Element
    M: Optional[FiniteGroup] = None
    H: Optional[FiniteGroup] = None
    z: Optional[Element] = None
    named: dict = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.params[0]

    @property
    def variant(self) -> str:
        return self.params[1]

    @property
    def nmk(self) -> tuple[int, int, int]:
        return (self.params[2], self.params[3], self.params[4])


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a clause-by-clause structural verification."""

    title: str
    params: tuple
    clauses: tuple[Clause, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.clauses)

    @property
    def first_failing(self) -> Optional[str]:
        for c in self.clauses:
            if not c.passed:
                return c.id
        return None

    def as_dict(self) -> dict:
        return {"title": self.title, "params": list(self.params),
                "ok": self.ok, "first_failing": self.first_failing,
                "clauses": [c.as_dict() for c in self.clauses]}


def build_family(p: int, variant: str, n: int, m: int, k: int,
                 guard: int = DEFAULT_GUARD,
                 table: Optional[Sequence[Sequence[int]]] = None,
                 table_generators: Optional[Sequence[int]] = None) -> FamilyInstance:
    """Construct and enumerate a family instance.

    2-case (p = 2, dihedral/semidihedral/quaternion): requires
    n > m >= k >= 3; returns P, M, G, H and the elements x, y, z.

    Odd case (heisenberg or explicit table): requires n, m, k >= 1; c has
    order p^m and d has order p^n, G = <sc, s1 d>; M, H, z are absent.  The
    hypotheses on K (maximal class; some maximal subgroup abelian) are
    checked and a ValueError is raised when they fail.
    """
    if p == 2 and variant in TWO_GENERATOR_VARIANTS:
        if not (n > m >= k >= 3):
            raise ValueError(
                f"2-case parameters need n > m >= k >= 3, got (n, m, k) = ({n}, {m}, {k})")
        amb = make_ambient(2, variant, k, n, m, guard=guard)
        gens = amb.standard_generators()
        t, r, c, d = gens["t"], gens["r"], gens["c"], gens["d"]
        s = amb.mul(amb.inv(t), r)  # r = ts
        x = amb.mul(t, c)
        y = amb.mul(s, d)
        z = amb.mul(r, d)
        P = closure(amb, [t, r, c, d], guard=guard)
        M = closure(amb, [r, c, d], guard=guard)
        G = closure(amb, [x, y], guard=guard)
        H = closure(amb, [x, z], guard=guard)
        expected = 2 ** (n + m + k - 1)
        if G.order != expected or H.order != expected:
            raise RuntimeError(
                f"constructed |G| = {G.order}, |H| = {H.order}, expected {expected}")
        if P.order != 2 * M.order:
            raise RuntimeError("M is not of index 2 in P")
        named = {"t": t, "s": s, "r": r, "c": c, "d": d}
        return FamilyInstance(params=(p, variant, n, m, k), ambient=amb,
                              P=P, G=G, x=x, y=y, M=M, H=H, z=z, named=named)

    if p == 2:
        raise ValueError(f"variant {variant!r} is not available for p = 2")
    if min(n, m, k) < 1:
        raise ValueError("odd-case parameters n, m, k must be >= 1")
    # c gets order p^m and d gets order p^n, so the ambient's cyclic factors
    # are built with the two exponents interchanged.
    amb = make_ambient(p, variant, k, m, n, guard=guard, table=table,
                       table_generators=table_generators)
    gens = amb.standard_generators()
    s, s1, c, d = gens["s"], gens["s1"], gens["c"], gens["d"]
    K = closure(amb, [s, s1], guard=guard)
    _verify_odd_base(K, p)
    x = amb.mul(s, c)
    y = amb.mul(s1, d)
    P = closure(amb, [s, s1, c, d], guard=guard)
    G = closure(amb, [x, y], guard=guard)
    named = {"s": s, "s1": s1, "c": c, "d": d}
    return FamilyInstance(params=(p, variant, n, m, k), ambient=amb,
                          P=P, G=G, x=x, y=y, named=named)


def _verify_odd_base(K: FiniteGroup, p: int) -> None:
    """Check the hypotheses on K: maximal class, abelian maximal subgroup."""
    logk = int_log(p, K.order)
    if K.order == p:  # class 1 groups are vacuously maximal class
        return
    cls = nilpotency_class(K)
    if cls != logk - 1:
        raise ValueError(
            f"K has class {cls}, not maximal class {logk - 1} for order p^{logk}")
    if not any(sub.is_abelian() for sub in maximal_subgroups(K)):
        raise ValueError("K has no abelian maximal subgroup")


def verify_structure(inst: FamilyInstance) -> VerificationReport:
    """Clause-by-clause verification of the structural facts of the 2-case.

    (i) orders of P, M, G, H; (ii) derived subgroups all equal <(ts)^2> and
    the nilpotency class is k; (iii) the Frattini subgroups of G, H, P
    coincide and equal <(ts)^2, c^2, d^2>; (iv) M is abelian and maximal in
    P; (v) G meet M = <xy, c^2, d^2> is maximal in G; (vi) H meet M =
    <z, c^2, d^2> is maximal in H; (vii) the exponent gap: exp(G meet M) =
    2^n while exp(H meet M) = 2^(n-1), those are the unique abelian maximal
    subgroups of G and H, and G is not isomorphic to H (exponent-gap
    argument always; brute-force oracle additionally when within bound).
    """
    if inst.M is None or inst.H is None or inst.z is None:
        raise ValueError("structural verification applies to the 2-case family")
    p, variant, n, m, k = inst.params
    amb = inst.ambient
    P, M, G, H = inst.P, inst.M, inst.G, inst.H
    x, y, z = inst.x, inst.y, inst.z
    t, s, c, d = inst.named["t"], inst.named["s"], inst.named["c"], inst.named["d"]
    clauses: list[Clause] = []

    def add(cid: str, statement: str, passed: bool, **data) -> None:
        clauses.append(Clause(cid, statement, bool(passed), data))

    expected = 2 ** (n + m + k - 1)
    add("orders", "|G| = |H| = 2^(n+m+k-1), |P| = 2|M| = 2^(k+1+n+m)",
        G.order == expected and H.order == expected
        and P.order == 2 ** (k + 1 + n + m) and 2 * M.order == P.order,
        order_g=G.order, order_h=H.order, order_p=P.order, order_m=M.order,
        expected=expected)

    ts2 = amb.power(amb.mul(t, s), 2)
    derived_target = closure(amb, [ts2], guard=P.order)
    dG, dH, dP = derived_subgroup(G), derived_subgroup(H), derived_subgroup(P)
    K = closure(amb, [t, amb.mul(t, s)], guard=P.order)
    dK = derived_subgroup(K)
    same_derived = (dG.element_set() == derived_target.element_set()
                    and dH.element_set() == derived_target.element_set()
                    and dP.element_set() == derived_target.element_set()
                    and dK.element_set() == derived_target.element_set())
    class_g, class_h = nilpotency_class(G), nilpotency_class(H)
    add("derived-and-class",
        "G' = H' = P' = K' = <(ts)^2> of order 2^(k-1); G and H have class k",
        same_derived and dG.order == 2 ** (k - 1)
        and class_g == k and class_h == k,
        derived_order=dG.order, class_g=class_g, class_h=class_h)

    c2, d2 = amb.power(c, 2), amb.power(d, 2)
    frat_target = generated_subgroup(amb, [ts2, c2, d2])
    fG, fH, fP = frattini(G), frattini(H), frattini(P)
    add("frattini",
        "Frattini subgroups of G, H, P coincide and equal <(ts)^2, c^2, d^2>",
        fG.element_set() == frat_target.element_set()
        and fH.element_set() == frat_target.element_set()
        and fP.element_set() == frat_target.element_set(),
        frattini_order=fG.order)

    add("m-abelian-maximal", "M is abelian of index 2 in P",
        M.is_abelian() and 2 * M.order == P.order,
        order_m=M.order, abelian=M.is_abelian())

    gm = intersection(G, M)
    gm_target = generated_subgroup(amb, [amb.mul(x, y), c2, d2])
    add("g-meet-m", "G meet M = <xy, c^2, d^2> has index 2 in G",
        gm.element_set() == gm_target.element_set() and 2 * gm.order == G.order,
        order=gm.order)

    hm = intersection(H, M)
    hm_target = generated_subgroup(amb, [z, c2, d2])
    add("h-meet-m", "H meet M = <z, c^2, d^2> has index 2 in H",
        hm.element_set() == hm_target.element_set() and 2 * hm.order == H.order,
        order=hm.order)

    exp_gm, exp_hm = gm.exponent(), hm.exponent()
    gmax = maximal_subgroups(G)
    hmax = maximal_subgroups(H)
    g_abelian = [sub for sub in gmax if sub.is_abelian()]
    h_abelian = [sub for sub in hmax if sub.is_abelian()]
    unique = (len(g_abelian) == 1 and len(h_abelian) == 1
              and g_abelian[0].element_set() == gm.element_set()
              and h_abelian[0].element_set() == hm.element_set())
    gap = exp_gm == 2 ** n and exp_hm == 2 ** (n - 1)
    oracle_ran = G.order <= DEFAULT_ORACLE_BOUND
    oracle_says_nontrivial = None
    if oracle_ran:
        oracle_says_nontrivial = not isomorphic_bruteforce(G, H)
    non_iso = gap and unique and (oracle_says_nontrivial in (None, True))
    add("exponent-gap-non-isomorphic",
        "exp(G meet M) = 2^n > 2^(n-1) = exp(H meet M); those are the unique "
        "abelian maximal subgroups, so G and H are not isomorphic",
        non_iso, exp_g_meet_m=exp_gm, exp_h_meet_m=exp_hm,
        unique_abelian_maximal=unique, oracle_ran=oracle_ran,
        oracle_non_isomorphic=oracle_says_nontrivial)

    return VerificationReport(title="structure", params=inst.params,
                              clauses=tuple(clauses))


def compare_variants(n: int, m: int, k: int,
                     guard: int = DEFAULT_GUARD,
                     bound: int = DEFAULT_ORACLE_BOUND) -> VerificationReport:
    """Cross-check that all three 2-case ambient kinds give the same groups.

    Builds the dihedral, semidihedral and quaternion instances at (n, m, k)
    and verifies pairwise isomorphism of the three G's and of the three H's
    (brute force), the dihedral G-vs-H control (not isomorphic), and the
    existence of a defining-relations witness pair in every variant.
    """
    instances = {v: build_family(2, v, n, m, k, guard=guard)
                 for v in TWO_GENERATOR_VARIANTS}
    clauses: list[Clause] = []

    def add(cid: str, statement: str, passed: bool, **data) -> None:
        clauses.append(Clause(cid, statement, bool(passed), data))

    names = list(TWO_GENERATOR_VARIANTS)
    for which in ("G", "H"):
        results = {}
        ok = True
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                ga = getattr(instances[a], which)
                gb = getattr(instances[b], which)
                res = isomorphic_bruteforce(ga, gb, bound=bound)
                results[f"{a}-vs-{b}"] = res
                ok = ok and res
        add(f"{which.lower()}-variants-isomorphic",
            f"the three variants' {which}'s are pairwise isomorphic",
            ok, **results)

    control = isomorphic_bruteforce(instances["dihedral"].G,
                                    instances["dihedral"].H, bound=bound)
    add("g-vs-h-control", "dihedral G and H are not isomorphic (control)",
        not control, oracle_isomorphic=control)

    ok = True
    found = {}
    for v in names:
        wg = find_presentation_witness(instances[v].G, n, m, k, relations="g")
        wh = find_presentation_witness(instances[v].H, n, m, k, relations="h")
        found[f"{v}-g"] = wg is not None
        found[f"{v}-h"] = wh is not None
        ok = ok and wg is not None and wh is not None
    add("presentation-witnesses",
        "each variant's G and H admit a defining-relations witness pair",
        ok, **found)

    return VerificationReport(title="variants", params=(2, "all", n, m, k),
                              clauses=tuple(clauses))


__all__ = [
    "FamilyInstance", "VerificationReport", "build_family",
    "verify_structure", "compare_variants",
]
