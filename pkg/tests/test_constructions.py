import pytest
from hypothesis import given
from hypothesis import strategies as st

from compstruct.algebra import (
    are_isomorphic,
    cyclic_group,
    idempotents,
    identity_element,
    is_associative,
    resets,
    trivial_semigroup,
)
from compstruct.constructions import (
    LOOKUP_LABEL,
    XOR_TOP_STATES,
    Cascade,
    CascadeEvent,
    FiniteFunction,
    cascade_flatten,
    direct_product,
    disjoint_copy,
    flip_flop,
    lookup_semigroup,
    piggyback_extract,
    project_top,
    xor_cascade,
    xor_embedding,
)
from compstruct.errors import DomainError, ExtractionError, StructuralError
from compstruct.transforms import Transformation, closure, identity


def test_flip_flop_table():
    ff = flip_flop()
    assert ff.to_lists() == [[0, 1, 2], [1, 1, 2], [2, 1, 2]]
    assert resets(ff) == {1, 2}
    assert identity_element(ff) == 0


def test_lookup_small():
    f = FiniteFunction.from_dict({"a": "c", "b": "c"})
    table, labels = lookup_semigroup(f)
    assert table.order == 4
    assert labels == ("a", "b", "c", LOOKUP_LABEL)


def test_lookup_xor():
    xor = FiniteFunction.from_dict({"00": "z0", "01": "z1", "10": "z1", "11": "z0"})
    table, labels = lookup_semigroup(xor)
    assert table.order == 7
    pos = {label: i for i, label in enumerate(labels)}
    assert labels[table[pos["01"]][pos[LOOKUP_LABEL]]] == "z1"


def test_lookup_refuses_overlap_and_copy_fixes_it():
    f = FiniteFunction.from_dict({"p": "q", "q": "p"})
    with pytest.raises(DomainError):
        lookup_semigroup(f)
    table, labels = lookup_semigroup(disjoint_copy(f))
    assert labels == ("p", "q", "q'", "p'", LOOKUP_LABEL)
    assert is_associative(table)


label_pool = [f"x{i}" for i in range(5)], [f"y{i}" for i in range(5)]


@st.composite
def finite_functions(draw):
    nx = draw(st.integers(1, 5))
    ny = draw(st.integers(1, 5))
    xs, ys = label_pool[0][:nx], label_pool[1][:ny]
    images = draw(st.lists(st.sampled_from(ys), min_size=nx, max_size=nx))
    return FiniteFunction(tuple(xs), tuple(ys), tuple(zip(xs, images)))


@given(finite_functions())
def test_lookup_laws(f):
    table, labels = lookup_semigroup(f)
    n = table.order
    ell = n - 1
    assert is_associative(table)
    assert n == len(f.domain) + len(f.codomain) + 1
    assert {labels[i] for i in resets(table)} == set(f.domain) | set(f.codomain)
    assert idempotents(table) == set(range(n))
    for i, x in enumerate(f.domain):
        assert labels[table[i][ell]] == f(x)
    for u in range(len(f.domain), n):
        assert table[u][ell] == u


def test_direct_product():
    ff = flip_flop()
    assert direct_product(ff, ff).order == 9
    assert are_isomorphic(direct_product(trivial_semigroup(), ff), ff) is not None
    a, b = ff, cyclic_group(2)
    prod = direct_product(a, b)
    assert is_associative(prod)
    expected = {i * b.order + j for i in idempotents(a) for j in idempotents(b)}
    assert idempotents(prod) == expected


def test_xor_cascade_shape():
    c = xor_cascade()
    assert c.degree == 8
    flat = cascade_flatten(c)
    assert flat.degree == 8
    assert len(flat) >= 2
    t = c.event("t").top_part
    assert [t.images[t.images[x]] for x in range(4)] == [0, 1, 2, 3]


def test_xor_readout_from_fig_states():
    c = xor_cascade()
    readout = c.event_transformations()["readout"]
    for bits, want in (("01", 1), ("11", 0)):
        x = XOR_TOP_STATES.index(bits)
        for y0 in (0, 1):
            _, y = c.split_state(readout.images[c.state_index(x, y0)])
            assert y == want


def test_flattened_elements_respect_hierarchy():
    c = xor_cascade()
    for g in cascade_flatten(c).elements:
        top = project_top(c, g)
        assert top is not None and top in set(c.top.elements)


def test_identity_event_flattens_to_identity():
    c = xor_cascade()
    idle = CascadeEvent("idle", identity(4), (identity(2),) * 4)
    c2 = Cascade(c.top, c.bottom, c.events + (idle,))
    assert c2.event_transformations()["idle"] == identity(8)


def test_cascade_validation():
    c = xor_cascade()
    with pytest.raises(StructuralError):
        Cascade(c.top, c.bottom, (CascadeEvent("bad", Transformation((1, 0, 2, 3)), (identity(2),) * 4),))
    with pytest.raises(StructuralError):
        Cascade(c.top, c.bottom, (CascadeEvent("short", identity(4), (identity(2),) * 3),))


def test_example_bijection_is_a_permutation():
    p = xor_embedding()
    assert p.is_permutation()
    assert sorted(p.images) == [0, 1, 2, 3]


def test_piggyback_xor():
    f = piggyback_extract(xor_embedding(), [0, 1], [0])
    assert f.as_dict() == {"00": "0", "01": "1", "10": "1", "11": "0"}


def test_piggyback_fan_out():
    f = piggyback_extract(xor_embedding(), [1], [0, 1], fixed={0: 0})
    assert f.as_dict() == {"0": "00", "1": "11"}


def test_piggyback_identity():
    f = piggyback_extract(identity(8), [0, 1, 2], [0, 1, 2])
    assert all(x == y for x, y in f.mapping) and len(f.domain) == 8


def test_piggyback_not_single_valued():
    with pytest.raises(ExtractionError):
        piggyback_extract(xor_embedding(), [1], [0])
    with pytest.raises(DomainError):
        piggyback_extract(Transformation((0, 0, 1, 2)), [0], [0])
    with pytest.raises(DomainError):
        piggyback_extract(identity(3), [0], [0])
