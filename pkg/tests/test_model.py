from __future__ import annotations

import logging

import pytest

from owlrules import (
    AllValuesFrom,
    ClassLink,
    EquivalentClass,
    IntersectionOf,
    Iri,
    MergeConflictError,
    ModelBuilder,
    PropertyDecl,
    PropertyKind,
    SubClassOf,
    add_axiom,
    iri,
    merge,
)


def test_iri_normalization_strips_hash_and_whitespace():
    assert iri("#Car") == Iri("Car")
    assert iri("# Car") == Iri("Car")
    assert iri("  Vehicle  ") == Iri("Vehicle")
    assert iri("##x") == Iri("x")


def test_iri_normalization_is_idempotent():
    for raw in ("#Car", "# Car", "plain", "  pad  ", "##deep"):
        once = iri(raw)
        assert iri(str(once)) == once


@pytest.mark.parametrize("bad", ["", "   ", "a b", "tab\tname"])
def test_iri_rejects_empty_and_whitespace(bad):
    with pytest.raises(ValueError):
        Iri(bad)


def test_iris_order_lexicographically():
    assert sorted([Iri("b"), Iri("a"), Iri("c")]) == [Iri("a"), Iri("b"), Iri("c")]


def test_equivalent_class_is_canonicalized():
    assert EquivalentClass(Iri("Car"), Iri("Auto")) == EquivalentClass(Iri("Auto"), Iri("Car"))
    assert EquivalentClass(Iri("Car"), Iri("Auto")).a == Iri("Auto")


def test_equivalent_class_rejects_self_equivalence():
    with pytest.raises(ValueError):
        EquivalentClass(Iri("Car"), Iri("Car"))


def test_intersection_needs_two_distinct_parts():
    with pytest.raises(ValueError):
        IntersectionOf(Iri("Man"), (Iri("Male"),))
    with pytest.raises(ValueError):
        IntersectionOf(Iri("Man"), (Iri("Man"), Iri("Male")))
    ax = IntersectionOf(Iri("Man"), (Iri("Male"), Iri("Human")))
    assert ax.parts == (Iri("Male"), Iri("Human"))


def test_class_link_allows_self_reference():
    ax = ClassLink(Iri("Node"), Iri("connectedTo"), Iri("Node"))
    assert ax.subject == ax.obj


def test_describe_strings_name_the_participants():
    assert SubClassOf(Iri("House"), Iri("City")).describe() == "SubClassOf(House,City)"
    decl = PropertyDecl(Iri("Wheel"), PropertyKind.DATATYPE, Iri("Car"), Iri("xs:string"))
    assert decl.describe() == "DatatypeProperty(Wheel,domain=Car,range=xs:string)"


# ---------------------------------------------------------------------------
# builder behavior


def test_add_axiom_is_idempotent():
    b = ModelBuilder()
    b.add_axiom(SubClassOf(Iri("House"), Iri("City")))
    b.add_axiom(SubClassOf(Iri("House"), Iri("City")))
    assert len(b.build().axioms) == 1


def test_equivalence_insert_collapses_both_orientations():
    b = ModelBuilder()
    b.add_axiom(EquivalentClass(Iri("Car"), Iri("Auto")))
    b.add_axiom(EquivalentClass(Iri("Auto"), Iri("Car")))
    assert len(b.build().axioms) == 1


def test_class_link_implicitly_declares_every_name():
    b = ModelBuilder()
    b.add_axiom(ClassLink(Iri("Latgale"), Iri("subAreaOf"), Iri("Latvia")))
    model = b.build()
    assert model.has_class(Iri("Latgale"))
    assert model.has_class(Iri("Latvia"))
    prop = model.property(Iri("subAreaOf"))
    assert prop is not None and prop.implicit


def test_datatype_range_never_becomes_a_class():
    b = ModelBuilder()
    b.declare_property(PropertyDecl(Iri("Wheel"), PropertyKind.DATATYPE, Iri("Car"), Iri("xs:string")))
    model = b.build()
    assert model.has_class(Iri("Car"))
    assert not model.has_class(Iri("xs:string"))


def test_explicit_declaration_wins_over_implicit():
    b = ModelBuilder()
    b.add_axiom(ClassLink(Iri("A"), Iri("p"), Iri("B")))
    b.declare_property(PropertyDecl(Iri("p"), PropertyKind.TRANSITIVE))
    model = b.build()
    assert model.property(Iri("p")).kind is PropertyKind.TRANSITIVE


def test_add_axiom_function_leaves_input_untouched():
    b = ModelBuilder()
    b.add_axiom(SubClassOf(Iri("A"), Iri("B")))
    before = b.build()
    after = add_axiom(before, SubClassOf(Iri("B"), Iri("C")))
    assert len(before.axioms) == 1
    assert len(after.axioms) == 2


# ---------------------------------------------------------------------------
# structural equality


def _chain_model(*, sources=(), flip=False):
    b = ModelBuilder()
    edges = [SubClassOf(Iri("House"), Iri("City")), SubClassOf(Iri("City"), Iri("Country"))]
    if flip:
        edges.reverse()
    for e in edges:
        b.add_axiom(e)
    for s in sources:
        b.add_source(s)
    return b.build()


def test_equality_ignores_sources_and_axiom_order():
    assert _chain_model(sources=("a.owl",)) == _chain_model(sources=("b.owl",), flip=True)


def test_equality_detects_differing_axioms():
    b = ModelBuilder()
    b.add_axiom(SubClassOf(Iri("House"), Iri("City")))
    assert b.build() != _chain_model()


def test_models_are_unhashable():
    with pytest.raises(TypeError):
        hash(_chain_model())


# ---------------------------------------------------------------------------
# merge


def test_merge_with_empty_model_is_identity():
    a = _chain_model(sources=("a.owl",))
    empty = ModelBuilder().build()
    assert merge([a, empty]) == a


def test_merge_unions_class_declarations():
    b1 = ModelBuilder()
    b1.declare_class(Iri("Car"))
    b2 = ModelBuilder()
    b2.declare_class(Iri("Car"))
    merged = merge([b1.build(), b2.build()])
    assert merged.class_iris() == frozenset({Iri("Car")})


def test_merge_of_two_subclass_files_counts_axioms_and_classes():
    b1 = ModelBuilder()
    b1.add_axiom(SubClassOf(Iri("House"), Iri("City")))
    b2 = ModelBuilder()
    b2.add_axiom(SubClassOf(Iri("City"), Iri("Country")))
    merged = merge([b1.build(), b2.build()])
    assert len(merged.axioms) == 2
    assert len(merged.class_iris()) == 3


def test_merge_concatenates_source_names():
    b1 = ModelBuilder()
    b1.add_source("a.owl")
    b2 = ModelBuilder()
    b2.add_source("b.owl")
    assert merge([b1.build(), b2.build()]).source_names == ("a.owl", "b.owl")


def test_merge_rejects_conflicting_property_kinds():
    b1 = ModelBuilder()
    b1.declare_property(PropertyDecl(Iri("p"), PropertyKind.DATATYPE))
    b2 = ModelBuilder()
    b2.declare_property(PropertyDecl(Iri("p"), PropertyKind.SYMMETRIC))
    with pytest.raises(MergeConflictError) as exc:
        merge([b1.build(), b2.build()])
    message = str(exc.value)
    assert "p" in message and "datatype" in message and "symmetric" in message


def test_merge_kind_conflict_ignores_implicit_declarations():
    b1 = ModelBuilder()
    b1.add_axiom(ClassLink(Iri("A"), Iri("p"), Iri("B")))  # implicit object kind
    b2 = ModelBuilder()
    b2.declare_property(PropertyDecl(Iri("p"), PropertyKind.TRANSITIVE))
    merged = merge([b1.build(), b2.build()])
    assert merged.property(Iri("p")).kind is PropertyKind.TRANSITIVE


def test_merge_domain_conflict_takes_lexicographic_min_and_warns(caplog):
    b1 = ModelBuilder()
    b1.declare_property(PropertyDecl(Iri("p"), PropertyKind.OBJECT, domain=Iri("Zebra")))
    b2 = ModelBuilder()
    b2.declare_property(PropertyDecl(Iri("p"), PropertyKind.OBJECT, domain=Iri("Ant")))
    with caplog.at_level(logging.WARNING):
        merged = merge([b1.build(), b2.build()])
    assert merged.property(Iri("p")).domain == Iri("Ant")
    assert any("p" in r.message for r in caplog.records)


def test_merge_is_commutative_and_associative():
    b1 = ModelBuilder()
    b1.add_axiom(SubClassOf(Iri("A"), Iri("B")))
    b2 = ModelBuilder()
    b2.add_axiom(SubClassOf(Iri("B"), Iri("C")))
    b3 = ModelBuilder()
    b3.add_axiom(AllValuesFrom(Iri("p"), Iri("F")))
    m1, m2, m3 = b1.build(), b2.build(), b3.build()
    assert merge([m1, m2]) == merge([m2, m1])
    assert merge([merge([m1, m2]), m3]) == merge([m1, merge([m2, m3])])


def test_merge_requires_at_least_one_model():
    with pytest.raises(ValueError):
        merge([])
