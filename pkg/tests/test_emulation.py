import pytest

from compstruct.algebra import (
    MulTable,
    cayley_embedding,
    cyclic_group,
    trivial_semigroup,
)
from compstruct.constructions import (
    XOR_TOP_STATES,
    FiniteFunction,
    direct_product,
    flip_flop,
    lookup_semigroup,
    xor_cascade,
)
from compstruct.emulation import (
    DivisionLimits,
    ElementMap,
    Encoding,
    Machine,
    Relation,
    compose_relations,
    find_division,
    find_surjective_homomorphisms,
    implements_function,
    invert,
    is_isomorphic_relation,
    is_modelling,
)
from compstruct.errors import DomainError, ResourceError, StructuralError
from compstruct.transforms import Transformation, closure, full_transformation_semigroup, mul_table_of

FF = flip_flop()
C2 = cyclic_group(2)
TRIV = trivial_semigroup()
T2 = full_transformation_semigroup(2)


def test_identity_relation_ok():
    assert is_isomorphic_relation(Relation.identity(3), FF, FF)


def test_shared_image_breaks_lossless():
    phi = Relation(3, (frozenset({1}), frozenset({1}), frozenset({1})))
    verdict = is_isomorphic_relation(phi, FF, FF)
    assert not verdict
    assert verdict.clause == "lossless" and verdict.witness[:2] == (0, 1)


def test_shared_image_with_distinct_third_reports_all_failures():
    phi = Relation(3, (frozenset({1}), frozenset({1}), frozenset({2})))
    verdict = is_isomorphic_relation(phi, FF, FF)
    clauses = dict(verdict.failures)
    assert "lossless" in clauses and clauses["lossless"][:2] == (0, 1)


def test_empty_image_breaks_fully_defined():
    phi = Relation(3, (frozenset({0}), frozenset(), frozenset({2})))
    verdict = is_isomorphic_relation(phi, FF, FF)
    assert dict(verdict.failures)["fully-defined"] == (1,)


def test_relation_dimension_mismatch():
    with pytest.raises(DomainError):
        is_isomorphic_relation(Relation.identity(2), FF, FF)
    with pytest.raises(StructuralError):
        Relation(2, (frozenset({3}),))


def test_modelling_examples():
    assert is_modelling(ElementMap((0, 0, 0), 1), FF, TRIV)
    assert is_modelling(ElementMap((0, 1, 2), 3), FF, FF)
    mu = ElementMap((0, 1, 1), 2)  # r -> e, 0 -> g, 1 -> g
    verdict = is_modelling(mu, FF, C2)
    assert not verdict and verdict.clause == "homomorphism"
    # the pair ("0","1") = indices (1,2) is a violation: mu(0*1) = g but mu(0)mu(1) = e
    assert mu(FF[1][2]) == 1 and C2[mu(1)][mu(2)] == 0


def test_modelling_onto_failure():
    verdict = is_modelling(ElementMap((0, 0, 0), 3), FF, FF)
    assert dict(verdict.failures)["onto"] == (1,)


def test_invert():
    ident = Relation.identity(3)
    assert invert(ident) == ident
    phi = invert(ElementMap((0, 0, 0), 1))
    assert phi.image_sets == (frozenset({0, 1, 2}),)
    assert is_isomorphic_relation(phi, TRIV, FF)
    rel = Relation(4, (frozenset({0, 2}), frozenset({1}), frozenset({3})))
    assert invert(invert(rel)) == rel


def test_surjective_homomorphism_streams():
    assert ElementMap((0, 1, 2), 3) in list(find_surjective_homomorphisms(FF, FF))
    assert len(list(find_surjective_homomorphisms(C2, TRIV))) == 1
    assert list(find_surjective_homomorphisms(FF, C2)) == []
    # constants force the permutation part of T_2 to collapse
    assert list(find_surjective_homomorphisms(mul_table_of(T2), C2)) == []


GALLERY_PAIRS = [
    (FF, TRIV), (FF, FF), (cyclic_group(3), cyclic_group(3)), (mul_table_of(T2), TRIV),
    (mul_table_of(T2), mul_table_of(T2)), (direct_product(C2, C2), C2), (direct_product(FF, C2), FF),
    (cyclic_group(4), C2),
]


@pytest.mark.parametrize("u,s", GALLERY_PAIRS)
def test_duality_over_all_search_outputs(u, s):
    found = list(find_surjective_homomorphisms(u, s))
    assert found
    for mu in found:
        assert is_modelling(mu, u, s)
        assert is_isomorphic_relation(invert(mu), s, u)


def test_flip_flop_divides_t2():
    result = find_division(FF, T2)
    w = result.witness
    assert w is not None
    assert is_isomorphic_relation(w.relation, FF, mul_table_of(T2))
    members = [T2.elements[i] for i in w.subsemigroup]
    assert set(members) == {Transformation((0, 1)), Transformation((0, 0)), Transformation((1, 1))}
    assert sorted(w.modelling.images) == [0, 1, 2]


def test_c2_does_not_divide_flip_flop():
    result = find_division(C2, cayley_embedding(FF))
    assert result.witness is None
    assert result.subsemigroups_visited > 0


def test_trivial_divides_anything():
    for t in (FF, C2, T2, cyclic_group(3)):
        w = find_division(TRIV, t).witness
        assert w is not None and len(w.subsemigroup) == 1


def test_division_limits_are_resource_errors():
    with pytest.raises(ResourceError):
        find_division(C2, FF, DivisionLimits(max_subsemigroups=1))
    with pytest.raises(ResourceError):
        find_division(FF, T2, DivisionLimits(max_source=2))
    with pytest.raises(ResourceError):
        find_division(C2, full_transformation_semigroup(3), DivisionLimits(max_hom_nodes=3))


def _gallery_trans():
    return {
        "flip-flop": closure([[0, 1], [0, 0], [1, 1]]),
        "C3": closure([[1, 2, 0]]),
        "T2": T2,
        "rz": closure([[0, 0], [1, 1]]),
        "mixed": closure([[1, 0, 2], [0, 0, 2]]),
    }


@pytest.mark.parametrize("name", sorted(_gallery_trans()))
def test_division_reflexive(name):
    s = _gallery_trans()[name]
    assert find_division(mul_table_of(s), s).witness is not None


def test_division_transitivity_spot_check():
    t2_table = mul_table_of(T2)
    v = full_transformation_semigroup(3)
    v_table = mul_table_of(v)
    for s, t in ((TRIV, FF), (FF, t2_table), (C2, t2_table)):
        first = find_division(s, t).witness
        second = find_division(t, v).witness
        assert first is not None and second is not None
        assert is_isomorphic_relation(compose_relations(first.relation, second.relation), s, v_table)


def test_groups_do_not_divide_aperiodic_gallery():
    xor = FiniteFunction.from_dict({"00": "z0", "01": "z1", "10": "z1", "11": "z0"})
    small = FiniteFunction.from_dict({"a": "c", "b": "d"})
    for t in (FF, lookup_semigroup(xor)[0], lookup_semigroup(small)[0]):
        result = find_division(C2, t)
        assert result.witness is None


def test_witness_is_at_least_source_size():
    for s, t in ((FF, T2), (C2, T2), (TRIV, FF)):
        w = find_division(s, t).witness
        assert len(w.subsemigroup) >= s.order


XOR = FiniteFunction.from_dict({"00": "0", "01": "1", "10": "1", "11": "0"})
XOR_ENC = Encoding({b: XOR_TOP_STATES.index(b) for b in XOR.domain}, {"0": 0, "1": 1})


def test_xor_cascade_implements_xor():
    verdict = implements_function(xor_cascade(), XOR, XOR_ENC, ["readout"])
    assert verdict and verdict.detail == "8 rows"
    assert implements_function(xor_cascade(), XOR, XOR_ENC, ["t", "t", "readout"])


def test_xor_cascade_wrong_program_fails():
    verdict = implements_function(xor_cascade(), XOR, XOR_ENC, ["t", "readout"])
    assert not verdict and verdict.clause == "output"


def test_unknown_event_is_domain_error():
    with pytest.raises(DomainError):
        implements_function(xor_cascade(), XOR, XOR_ENC, ["nope"])
    table, labels = lookup_semigroup(FiniteFunction.from_dict({"a": "b"}))
    with pytest.raises(DomainError):
        implements_function(Machine.from_table(table, labels), FiniteFunction.from_dict({"a": "b"}),
                            Encoding({"a": 0}, {"b": 1}), ["zz"])


def test_lookup_semigroup_implements_its_function(rng):
    for _ in range(25):
        nx, ny = rng.randint(1, 5), rng.randint(1, 5)
        xs, ys = [f"x{i}" for i in range(nx)], [f"y{i}" for i in range(ny)]
        f = FiniteFunction(tuple(xs), tuple(ys), tuple((x, rng.choice(ys)) for x in xs))
        table, labels = lookup_semigroup(f)
        machine = Machine.from_table(table, labels)
        assert implements_function(machine, f, Encoding.label_identity(f, labels), ["ℓ"])


def test_encoding_must_be_injective():
    with pytest.raises(StructuralError):
        Encoding({"a": 0, "b": 0}, {})
