import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from amdfam import (
    SetFamily,
    class_differences,
    cross_differences,
    external_difference_multiset,
    incoming_differences,
    internal_differences,
    make_group,
    outgoing_differences,
)
from amdfam.constructions import pedf_example_z13, qr_gsedf
from amdfam.diffcore import summed_internal_differences
from amdfam.errors import ClassDefinitionError, DisjointnessError, ElementDomainError, IndexRangeError, TrivialFamilyError

import oracles


def as_dict(fm, G):
    return {g: fm[g] for g in G.nonzero()}


def fam(n, sets):
    return SetFamily.of(make_group(n), sets)


def test_internal_difference_set():
    G = make_group(21)
    fm = internal_differences(G, [3, 6, 12, 7, 14])
    assert fm.uniform_value() == 1 and fm.total == 20


def test_internal_singleton_is_empty():
    fm = internal_differences(make_group(9), [4])
    assert fm.total == 0 and fm.to_json() == {}


def test_internal_z13_014():
    fm = internal_differences(make_group(13), [0, 1, 4])
    assert {g[0]: c for g, c in fm.counts.items() if c} == {1: 1, 3: 1, 4: 1, 12: 1, 10: 1, 9: 1}


def test_cross_differences():
    G = make_group(13)
    fm = cross_differences(G, [0, 1], [2, 4, 6])
    assert {g[0] for g in G.nonzero() if fm[g]} == {11, 9, 7, 12, 10, 8}
    assert fm.total == 6 and fm.max == 1
    assert cross_differences(make_group(10), [0], [5]).to_json() == {"[5]": 1}
    with pytest.raises(DisjointnessError):
        cross_differences(make_group(10), [0, 5], [5])


def test_external_examples():
    assert external_difference_multiset(None, fam(19, [[1, 7, 11], [4, 9, 6], [16, 17, 5]])).uniform_value() == 3
    assert external_difference_multiset(None, fam(13, [[0, 1], [2, 4, 6]])).uniform_value() == 1
    assert external_difference_multiset(None, fam(2, [[0], [1]])).to_json() == {"[1]": 2}
    with pytest.raises(TrivialFamilyError):
        external_difference_multiset(None, fam(5, [[0, 1]]))


def test_outgoing_pedf_tables():
    F = pedf_example_z13()
    assert outgoing_differences(None, F, 1).table() == [2, 3, 2, 2, 3, 3, 3, 3, 2, 2, 3, 2]
    assert outgoing_differences(None, F, 2).table() == [3, 2, 3, 3, 2, 2, 2, 2, 3, 3, 2, 3]


def test_outgoing_incoming_qr():
    F = qr_gsedf()
    assert outgoing_differences(None, F, 1).uniform_value() == 1
    assert incoming_differences(None, F, 4).uniform_value() == 2
    assert incoming_differences(None, fam(5, [[0, 1], [2, 4]]), 1).uniform_value() == 1


def test_index_range():
    with pytest.raises(IndexRangeError):
        outgoing_differences(None, fam(5, [[0], [1]]), 3)


def test_class_differences():
    F = pedf_example_z13()
    assert class_differences(None, F, [1, 2]).uniform_value() == 5
    assert class_differences(None, F, [3]).uniform_value() == 3
    assert class_differences(None, F, [2]) == outgoing_differences(None, F, 2)
    with pytest.raises(ClassDefinitionError):
        class_differences(None, F, [1, 3])


def test_family_validation():
    with pytest.raises(DisjointnessError):
        fam(7, [[0, 1], [1, 2]])
    with pytest.raises(ElementDomainError):
        fam(7, [[0, 0]])
    with pytest.raises(ElementDomainError):
        fam(7, [[]])
    assert SetFamily.of(make_group(7), [[0, 1], [1, 2]], allow_overlap=True).m == 2


def test_summed_internal():
    F = SetFamily.of(make_group(13), [[0, 1, 4], [3, 5, 10]], allow_overlap=True)
    assert summed_internal_differences(None, F).uniform_value() == 1


def test_format_table_shape():
    text = outgoing_differences(None, pedf_example_z13(), 1).format_table()
    assert text.splitlines()[-1].split("|")[1].split() == "2 3 2 2 3 3 3 3 2 2 3 2".split()


# -- properties against the brute-force oracle ----------------------------------


@st.composite
def families(draw, max_n=24, max_m=5):
    orders = draw(st.sampled_from([(n,) for n in range(2, max_n + 1)] + [(2, 2), (2, 4), (3, 3), (2, 6), (2, 2, 2)]))
    pts = oracles.elements(orders)
    perm = draw(st.permutations(pts))
    m = draw(st.integers(2, min(max_m, len(pts))))
    used = draw(st.integers(m, len(pts)))
    cuts = sorted(draw(st.lists(st.integers(1, used - 1), min_size=m - 1, max_size=m - 1, unique=True)))
    bounds = [0] + cuts + [used]
    sets = [list(perm[bounds[i]:bounds[i + 1]]) for i in range(m)]
    return orders, sets


@settings(max_examples=150, deadline=None)
@given(families())
def test_counts_match_oracle(case):
    orders, sets = case
    G = make_group(*orders)
    F = SetFamily.of(G, sets)
    ext = external_difference_multiset(G, F)
    assert as_dict(ext, G) == oracles.external(orders, F.sets)
    assert ext.total == F.a ** 2 - sum(k * k for k in F.sizes)
    total = None
    for i in range(1, F.m + 1):
        out = outgoing_differences(G, F, i)
        inc = incoming_differences(G, F, i)
        assert as_dict(out, G) == oracles.outgoing(orders, F.sets, i - 1)
        assert as_dict(inc, G) == oracles.incoming(orders, F.sets, i - 1)
        assert all(inc[g] == out[G.neg(g)] for g in G.nonzero())
        assert out.total == F.sizes[i - 1] * (F.a - F.sizes[i - 1])
        total = out if total is None else total + out
        A = F.sets[i - 1]
        assert as_dict(internal_differences(G, A), G) == oracles.internal(orders, A)
    assert total == ext
    assert all(ext[g] == ext[G.neg(g)] for g in G.nonzero())
