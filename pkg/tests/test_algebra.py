import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compstruct.algebra import (
    MulTable,
    are_isomorphic,
    cayley_embedding,
    closure_in_table,
    cyclic_group,
    idempotents,
    identity_element,
    is_associative,
    left_zero_semigroup,
    resets,
    right_zero_semigroup,
)
from compstruct.constructions import flip_flop, lookup_semigroup, FiniteFunction
from compstruct.errors import DomainError, StructuralError
from compstruct.transforms import Transformation, closure, mul_table_of

from conftest import gallery_tables, naive_associative

FF = [[0, 1, 2], [1, 1, 2], [2, 1, 2]]


def test_flip_flop_is_associative():
    assert is_associative(FF)


def test_single_element_table():
    assert is_associative([[0]])


def test_first_violation_is_lexicographic():
    verdict = is_associative([[1, 0], [0, 0]])
    assert not verdict
    assert verdict.witness == (0, 0, 1)


def test_malformed_table_is_a_structural_error():
    with pytest.raises(StructuralError):
        is_associative([[0, 2], [1, 1]])
    with pytest.raises(StructuralError):
        MulTable(((0, 1), (1,)))


@settings(max_examples=200)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_is_associative_agrees_with_triple_loop(entries):
    assert bool(is_associative(entries)) == naive_associative(entries)


def test_idempotents():
    assert idempotents(FF) == {0, 1, 2}
    assert idempotents(cyclic_group(3)) == {0}
    assert idempotents([[1, 0], [0, 0]]) == frozenset()


def test_resets():
    assert resets(FF) == {1, 2}
    for n in (2, 3, 4):
        assert resets(cyclic_group(n)) == frozenset()


def test_resets_of_lookup_semigroup_are_domain_and_codomain():
    f = FiniteFunction.from_dict({"a": "c", "b": "c"}, ["c", "d"])
    table, labels = lookup_semigroup(f)
    assert {labels[i] for i in resets(table)} == {"a", "b", "c", "d"}


def test_identity_element():
    assert identity_element(FF) == 0
    assert identity_element(right_zero_semigroup(2)) is None
    assert identity_element(cyclic_group(3)) == 0


def test_resets_are_idempotent_on_gallery():
    for table in gallery_tables().values():
        assert resets(table) <= idempotents(table)


def test_cayley_flip_flop():
    s = cayley_embedding(FF)
    assert s.degree == 3
    assert set(s.elements) == {Transformation((0, 1, 2)), Transformation((1, 1, 1)), Transformation((2, 2, 2))}


def test_cayley_trivial():
    s = cayley_embedding([[0]])
    assert s.degree == 1 and s.elements == (Transformation((0,)),)


def test_cayley_left_zero_needs_extra_point():
    table = left_zero_semigroup(2)
    # on the elements alone both right actions are the identity map
    unfaithful = [tuple(table[p][x] for p in range(2)) for x in range(2)]
    assert unfaithful[0] == unfaithful[1] == (0, 1)
    s = cayley_embedding(table)
    assert s.degree == 3
    assert len(s.elements) == 2


def test_cayley_rejects_non_associative():
    with pytest.raises(DomainError):
        cayley_embedding([[1, 0], [0, 0]])


@pytest.mark.parametrize("name", sorted(gallery_tables()))
def test_cayley_round_trip(name):
    table = gallery_tables()[name]
    s = cayley_embedding(table)
    assert len(s.generators) == len(set(s.generators)) == table.order
    assert are_isomorphic(mul_table_of(s), table) is not None


def test_isomorphic_under_relabelling():
    perm = [2, 0, 1]
    inv = {v: i for i, v in enumerate(perm)}
    relabelled = [[perm[FF[inv[x]][inv[y]]] for y in range(3)] for x in range(3)]
    pi = are_isomorphic(FF, relabelled)
    assert pi is not None
    assert all(pi[FF[x][y]] == relabelled[pi[x]][pi[y]] for x in range(3) for y in range(3))


def test_flip_flop_not_isomorphic_to_c3():
    assert len(idempotents(FF)) == 3 and len(idempotents(cyclic_group(3))) == 1
    assert are_isomorphic(FF, cyclic_group(3)) is None


def test_c2_not_isomorphic_to_right_zero():
    a, b = cyclic_group(2), right_zero_semigroup(2)
    # both bijections fail by hand as well
    for perm in itertools.permutations(range(2)):
        assert not all(perm[a[x][y]] == b[perm[x]][perm[y]] for x in range(2) for y in range(2))
    assert are_isomorphic(a, b) is None


def test_closure_in_table():
    assert closure_in_table(FF, {1, 2}) == {1, 2}
    assert closure_in_table(FF, {0}) == {0}
    assert closure_in_table(cyclic_group(3), {1}) == {0, 1, 2}
    with pytest.raises(DomainError):
        closure_in_table(FF, set())


@given(st.sets(st.integers(0, 8), min_size=1), st.sets(st.integers(0, 8)))
def test_closure_in_table_idempotent_and_monotone(a, extra):
    table = mul_table_of(closure([Transformation((1, 0, 2)), Transformation((0, 0, 1))]))
    n = table.order
    a = {x % n for x in a}
    b = a | {x % n for x in extra}
    ca = closure_in_table(table, a)
    assert closure_in_table(table, ca) == ca
    assert ca <= closure_in_table(table, b)


def _random_gens(rng, degree, count):
    return [Transformation(tuple(rng.randrange(degree) for _ in range(degree))) for _ in range(count)]


def test_cayley_faithful_on_random_closures(rng):
    checked = 0
    while checked < 30:
        s = closure(_random_gens(rng, rng.choice([2, 3]), rng.choice([1, 2])))
        if len(s) > 6:
            continue
        table = mul_table_of(s)
        emb = cayley_embedding(table)
        assert len(set(emb.generators)) == table.order
        checked += 1
