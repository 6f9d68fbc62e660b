import pytest

from wreathlab import (
    SearchBudgetExceededError,
    construct_named,
    direct_product,
    regular_wreath,
)
from wreathlab.search import are_isomorphic, embeds_into, identify_small

CATALOG = ["C:1", "C:4", "C:6", "V4", "S:3", "D:4", "Q8", "A:4", "D:6", "C:8"]


def test_c6_isomorphic_to_c2_times_c3():
    a = construct_named("C:6")
    b = direct_product(construct_named("C:2"), construct_named("C:3"))
    assert are_isomorphic(a, b) is not None


def test_c4_not_isomorphic_to_klein():
    assert are_isomorphic(construct_named("C:4"), construct_named("V4")) is None


def test_agl3_isomorphic_to_s3():
    iso = are_isomorphic(construct_named("AGL:3"), construct_named("S:3"))
    assert iso is not None
    assert iso.find_hom_counterexample() is None
    assert iso.is_injective() and iso.is_surjective()


def test_isomorphism_is_symmetric_on_catalog():
    groups = {spec: construct_named(spec) for spec in CATALOG}
    for sa in CATALOG:
        for sb in CATALOG:
            ab = are_isomorphic(groups[sa], groups[sb]) is not None
            ba = are_isomorphic(groups[sb], groups[sa]) is not None
            assert ab == ba
            assert ab == (sa == sb)


def test_embedding_screen_rejects_c4_into_elementary_abelian():
    c4 = construct_named("C:4")
    e8 = direct_product(direct_product(construct_named("C:2"), construct_named("C:2")),
                        construct_named("C:2"))
    assert embeds_into(c4, e8) is None


def test_d4_embeds_into_the_order8_wreath():
    w = regular_wreath(construct_named("C:2"), construct_named("C:2"))
    hom = embeds_into(construct_named("D:4"), w.product)
    assert hom is not None and hom.is_injective()


def test_s3_embeds_into_a3_wreath_c2():
    w = regular_wreath(construct_named("A:3"), construct_named("C:2"))
    assert w.order == 18
    hom = embeds_into(construct_named("S:3"), w.product)
    assert hom is not None
    assert hom.find_hom_counterexample() is None
    assert hom.is_injective()


def test_lagrange_screen():
    assert embeds_into(construct_named("C:5"), construct_named("A:4")) is None


def test_embedding_hom_is_injective_whenever_found():
    pairs = [("C:4", "D:4"), ("S:3", "S:4"), ("V4", "D:4"), ("C:6", "A:4")]
    for sa, sb in pairs:
        hom = embeds_into(construct_named(sa), construct_named(sb))
        if hom is not None:
            assert len(hom.image_set()) == hom.domain.order


def test_budget_exhaustion_is_distinct_from_no():
    a = construct_named("S:4")
    b = construct_named("S:5")
    with pytest.raises(SearchBudgetExceededError):
        embeds_into(a, b, budget=3)


def test_identify_wreath_as_d4():
    w = regular_wreath(construct_named("C:2"), construct_named("C:2"))
    assert identify_small(w.product) == "D:4"


def test_identify_trivial():
    assert identify_small(construct_named("C:1")) == "C:1"


def test_identify_rejects_large_groups():
    with pytest.raises(ValueError):
        identify_small(construct_named("S:5"))


def test_identify_klein_prefers_product_name():
    assert identify_small(construct_named("V4")) == "C:2 × C:2"


def test_identify_s3_and_q8():
    assert identify_small(construct_named("S:3")) == "S:3"
    assert identify_small(construct_named("Q8")) == "Q8"


def test_identify_unknown_stub():
    # SL(2,3) has order 24 but is not in the named/product catalog
    # (use a group we do know is off-catalog: the dicyclic group of order 12)
    import numpy as np

    from wreathlab.groups import FiniteGroup

    n = 12
    # dicyclic Dic3 = <a,b | a^6, b^2=a^3, b a b^-1 = a^-1>, elements a^i b^j
    def mul(x, y):
        i1, j1 = x % 6, x // 6
        i2, j2 = y % 6, y // 6
        if j1 == 0:
            i, j = (i1 + i2) % 6, j2
        elif j2 == 0:
            i, j = (i1 - i2) % 6, 1
        else:
            i, j = (i1 - i2 + 3) % 6, 0
        return i + 6 * j

    table = np.array([[mul(x, y) for y in range(n)] for x in range(n)])
    g = FiniteGroup(table)
    name = identify_small(g)
    assert name == "unidentified(order=12)"
