"""Shape scanners that turn ontology structure into IF-THEN rules.

Thirteen scanners, one per licensed shape:

  class-feature                datatype properties grouped by their domain class
  equivalence-inheritance      superclasses lifted across an equivalence
  domain-range-identification  an object property's range identifies its domain
  subclass-transitivity        two chained subclass axioms
  relation-propagation         a link propagated to the range's superclass
  subproperty-lift             links lifted along subPropertyOf
  symmetric                    both directions of a symmetric property
  transitive-property          variable-form chaining plus grounded class chains
  sole-partof                  a superclass with exactly one subclass (non-executable)
  cooccurrence                 domain/range instances expected to co-occur
  allvaluesfrom                closed-world value restriction
  intersection                 intersection class decomposed into its parts
  inverse                      both directions of an inverse property pair

``extract_all`` runs every scanner, deduplicates by rule id (merging
provenance), and returns the rules in canonical id order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import (
    AllValuesFrom,
    ClassLink,
    EquivalentClass,
    IntersectionOf,
    InverseOf,
    Iri,
    OntologyModel,
    PropertyDecl,
    PropertyKind,
    SubClassOf,
    SubPropertyOf,
)
from .rules import (
    ClassRef,
    HasFeature,
    IsA,
    Link,
    Not,
    Pattern,
    PropRef,
    Provenance,
    Rule,
    SchemaEquivalent,
    SchemaSubClassOf,
    SolePart,
    MorePartsExpected,
    Var,
    make_rule,
    with_provenance,
)

VX = Var("?x")
VY = Var("?y")
VZ = Var("?z")


@dataclass
class ExtractionReport:
    rules: list[Rule] = field(default_factory=list)
    counts: dict[Pattern, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def _prov(model: OntologyModel, triggers: list[str], display_form: str) -> Provenance:
    return Provenance(
        sources=tuple(sorted(set(model.source_names))),
        trigger_axioms=tuple(sorted(set(triggers))),
        display_form=display_form,
    )


def _sorted_props(model: OntologyModel) -> list[PropertyDecl]:
    return sorted(model.properties.values(), key=lambda d: d.iri)


def _plain_object_props(model: OntologyModel) -> list[PropertyDecl]:
    # Strictly OBJECT kind: symmetric/transitive properties have scanners of
    # their own and must not double-fire the domain/range-driven shapes.
    return [d for d in _sorted_props(model) if d.kind is PropertyKind.OBJECT]


# ---------------------------------------------------------------------------
# the thirteen scanners (each returns rules plus guard warnings)


def _class_feature(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    by_domain: dict[Iri, list[PropertyDecl]] = {}
    for d in _sorted_props(model):
        if d.kind is PropertyKind.DATATYPE and d.domain is not None:
            by_domain.setdefault(d.domain, []).append(d)
    for cls in sorted(by_domain):
        feats = by_domain[cls]  # already iri-sorted
        rule = make_rule(
            Pattern.CLASS_FEATURE,
            [IsA(VX, ClassRef(cls))],
            [HasFeature(VX, d.iri) for d in feats],
            _prov(
                model,
                [d.describe() for d in feats],
                f"IF {cls} THEN {' and '.join(str(d.iri) for d in feats)}",
            ),
        )
        rules.append(rule)
    return rules, []


def _equivalence_inheritance(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for ax in sorted(model.axioms_of(EquivalentClass), key=lambda a: (a.a, a.b)):
        for lifted, declared in ((ax.a, ax.b), (ax.b, ax.a)):
            for sup in model.superclasses_of(declared):
                if sup == lifted:
                    continue
                sub_ax = SubClassOf(declared, sup)
                rules.append(
                    make_rule(
                        Pattern.EQUIVALENCE_INHERITANCE,
                        [
                            SchemaEquivalent(ClassRef(lifted), ClassRef(declared)),
                            SchemaSubClassOf(ClassRef(declared), ClassRef(sup)),
                        ],
                        [SchemaSubClassOf(ClassRef(lifted), ClassRef(sup))],
                        _prov(
                            model,
                            [ax.describe(), sub_ax.describe()],
                            f'IF {declared} equivalent {lifted} THEN ("part of" {sup}) ∈ {lifted}',
                        ),
                    )
                )
    return rules, []


def _domain_range_identification(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for d in _plain_object_props(model):
        if d.domain is None or d.range is None:
            continue
        rules.append(
            make_rule(
                Pattern.DOMAIN_RANGE_IDENTIFICATION,
                [Link(VX, PropRef(d.iri), VY), IsA(VY, ClassRef(d.range))],
                [IsA(VX, ClassRef(d.domain))],
                _prov(model, [d.describe()], f"IF ({d.iri} {d.range}) THEN {d.domain}"),
            )
        )
    return rules, []


def _subclass_transitivity(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    edges = sorted(model.axioms_of(SubClassOf), key=lambda a: (a.sub, a.sup))
    for first in edges:
        for second in edges:
            if first.sup != second.sub or first.sub == second.sup:
                continue
            a, b, c = first.sub, first.sup, second.sup
            rules.append(
                make_rule(
                    Pattern.SUBCLASS_TRANSITIVITY,
                    [
                        SchemaSubClassOf(ClassRef(a), ClassRef(b)),
                        SchemaSubClassOf(ClassRef(b), ClassRef(c)),
                    ],
                    [SchemaSubClassOf(ClassRef(a), ClassRef(c))],
                    _prov(
                        model,
                        [first.describe(), second.describe()],
                        f'IF ({a} "part of" {b}) and ({b} "part of" {c}) '
                        f'THEN ({a} "part of" {c})',
                    ),
                )
            )
    return rules, []


def _relation_propagation(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for d in _plain_object_props(model):
        if d.domain is None or d.range is None:
            continue
        for sup in model.superclasses_of(d.range):
            sub_ax = SubClassOf(d.range, sup)
            rules.append(
                make_rule(
                    Pattern.RELATION_PROPAGATION,
                    [
                        Link(VX, PropRef(d.iri), VY),
                        IsA(VY, ClassRef(d.range)),
                        SchemaSubClassOf(ClassRef(d.range), ClassRef(sup)),
                    ],
                    [Link(VX, PropRef(d.iri), ClassRef(sup))],
                    _prov(
                        model,
                        [d.describe(), sub_ax.describe()],
                        f'IF ({d.domain} "{d.iri}" {d.range}) and '
                        f'({d.range} "part of" {sup}) THEN ({d.domain} "{d.iri}" {sup})',
                    ),
                )
            )
    return rules, []


def _subproperty_lift(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for ax in sorted(model.axioms_of(SubPropertyOf), key=lambda a: (a.sub, a.sup)):
        rules.append(
            make_rule(
                Pattern.SUBPROPERTY_LIFT,
                [Link(VX, PropRef(ax.sub), VY)],
                [Link(VX, PropRef(ax.sup), VY)],
                _prov(
                    model,
                    [ax.describe()],
                    f'IF {ax.sub} and "subproperty of" THEN {ax.sup}',
                ),
            )
        )
    return rules, []


def _symmetric(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    warnings = []
    for d in _sorted_props(model):
        if d.kind is not PropertyKind.SYMMETRIC:
            continue
        if d.domain is None or d.range is None:
            warnings.append(
                f"symmetric property {d.iri} lacks a domain or range; no rules emitted"
            )
            continue
        for here, there in ((d.domain, d.range), (d.range, d.domain)):
            rules.append(
                make_rule(
                    Pattern.SYMMETRIC,
                    [IsA(VX, ClassRef(here))],
                    [Link(VX, PropRef(d.iri), ClassRef(there))],
                    _prov(model, [d.describe()], f"IF {here} THEN ({d.iri} {there})"),
                )
            )
    return rules, warnings


def _transitive(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    links = sorted(
        (ax for ax in model.axioms_of(ClassLink) if ax.subject != ax.obj),
        key=lambda a: (a.prop, a.subject, a.obj),
    )
    for d in _sorted_props(model):
        if d.kind is not PropertyKind.TRANSITIVE:
            continue
        p = PropRef(d.iri)
        rules.append(
            make_rule(
                Pattern.TRANSITIVE_PROPERTY,
                [Link(VX, p, VY), Link(VY, p, VZ)],
                [Link(VX, p, VZ)],
                _prov(
                    model,
                    [d.describe()],
                    f'IF (?x "{d.iri}" ?y) and (?y "{d.iri}" ?z) THEN (?x "{d.iri}" ?z)',
                ),
            )
        )
        mine = [ax for ax in links if ax.prop == d.iri]
        for first in mine:
            for second in mine:
                if first.obj != second.subject or first.subject == second.obj:
                    continue
                a, b, c = first.subject, first.obj, second.obj
                rules.append(
                    make_rule(
                        Pattern.TRANSITIVE_PROPERTY,
                        [
                            Link(ClassRef(a), p, ClassRef(b)),
                            Link(ClassRef(b), p, ClassRef(c)),
                        ],
                        [Link(ClassRef(a), p, ClassRef(c))],
                        _prov(
                            model,
                            [d.describe(), first.describe(), second.describe()],
                            f'IF ({a} "{d.iri}" {b}) and ({b} "{d.iri}" {c}) '
                            f'THEN ({a} "{d.iri}" {c})',
                        ),
                    )
                )
    return rules, []


def _sole_partof(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    subs = model.subs_by_super()
    for whole in sorted(subs):
        parts = subs[whole]
        if len(parts) != 1:
            continue
        part = parts[0]
        ax = SubClassOf(part, whole)
        rules.append(
            make_rule(
                Pattern.SOLE_PARTOF,
                [SolePart(ClassRef(part), ClassRef(whole))],
                [MorePartsExpected(ClassRef(whole))],
                _prov(
                    model,
                    [ax.describe()],
                    f'IF {whole} and only one "part of" THEN (more "part of" ∈ {whole})',
                ),
            )
        )
    return rules, []


def _cooccurrence(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for d in _plain_object_props(model):
        if d.domain is None or d.range is None:
            continue
        rules.append(
            make_rule(
                Pattern.COOCCURRENCE,
                [IsA(VX, ClassRef(d.domain)), IsA(VY, ClassRef(d.range))],
                [Link(VX, PropRef(d.iri), VY)],
                _prov(model, [d.describe()], f"IF {d.domain} and {d.range} THEN {d.iri}"),
            )
        )
    return rules, []


def _allvaluesfrom(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for ax in sorted(model.axioms_of(AllValuesFrom), key=lambda a: (a.on_property, a.filler)):
        rules.append(
            make_rule(
                Pattern.ALLVALUESFROM,
                [Not(IsA(VY, ClassRef(ax.filler)))],
                [Not(Link(VX, PropRef(ax.on_property), VY))],
                _prov(
                    model,
                    [ax.describe()],
                    f"IF not {ax.filler} THEN not {ax.on_property}",
                ),
            )
        )
    return rules, []


def _intersection(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    for ax in sorted(model.axioms_of(IntersectionOf), key=lambda a: (a.defined, a.parts)):
        rules.append(
            make_rule(
                Pattern.INTERSECTION,
                [IsA(VX, ClassRef(ax.defined))],
                [IsA(VX, ClassRef(p)) for p in ax.parts],  # listing order kept
                _prov(
                    model,
                    [ax.describe()],
                    f"IF {ax.defined} THEN {' and '.join(str(p) for p in ax.parts)}",
                ),
            )
        )
    return rules, []


def _inverse(model: OntologyModel) -> tuple[list[Rule], list[str]]:
    rules = []
    warnings = []
    for ax in sorted(model.axioms_of(InverseOf), key=lambda a: (a.prop, a.inverse)):
        decl = model.property(ax.prop)
        if decl is None or decl.domain is None or decl.range is None:
            warnings.append(
                f"inverse pair ({ax.prop},{ax.inverse}) lacks a domain or range; "
                "no rules emitted"
            )
            continue
        d, r = decl.domain, decl.range
        triggers = [ax.describe(), decl.describe()]
        rules.append(
            make_rule(
                Pattern.INVERSE,
                [IsA(VX, ClassRef(d))],
                [Link(VX, PropRef(ax.prop), ClassRef(r))],
                _prov(model, triggers, f"IF {d} THEN ({ax.prop} {r})"),
            )
        )
        rules.append(
            make_rule(
                Pattern.INVERSE,
                [IsA(VX, ClassRef(r))],
                [Link(VX, PropRef(ax.inverse), ClassRef(d))],
                _prov(model, triggers, f"IF {r} THEN ({ax.inverse} {d})"),
            )
        )
    return rules, warnings


_SCANNERS = (
    _class_feature,
    _equivalence_inheritance,
    _domain_range_identification,
    _subclass_transitivity,
    _relation_propagation,
    _subproperty_lift,
    _symmetric,
    _transitive,
    _sole_partof,
    _cooccurrence,
    _allvaluesfrom,
    _intersection,
    _inverse,
)


# public single-pattern entry points


def extract_class_feature(model: OntologyModel) -> list[Rule]:
    return _class_feature(model)[0]


def extract_equivalence_inheritance(model: OntologyModel) -> list[Rule]:
    return _equivalence_inheritance(model)[0]


def extract_domain_range_identification(model: OntologyModel) -> list[Rule]:
    return _domain_range_identification(model)[0]


def extract_subclass_transitivity(model: OntologyModel) -> list[Rule]:
    return _subclass_transitivity(model)[0]


def extract_relation_propagation(model: OntologyModel) -> list[Rule]:
    return _relation_propagation(model)[0]


def extract_subproperty_lift(model: OntologyModel) -> list[Rule]:
    return _subproperty_lift(model)[0]


def extract_symmetric(model: OntologyModel) -> list[Rule]:
    return _symmetric(model)[0]


def extract_transitive(model: OntologyModel) -> list[Rule]:
    return _transitive(model)[0]


def extract_sole_partof(model: OntologyModel) -> list[Rule]:
    return _sole_partof(model)[0]


def extract_cooccurrence(model: OntologyModel) -> list[Rule]:
    return _cooccurrence(model)[0]


def extract_allvaluesfrom(model: OntologyModel) -> list[Rule]:
    return _allvaluesfrom(model)[0]


def extract_intersection(model: OntologyModel) -> list[Rule]:
    return _intersection(model)[0]


def extract_inverse(model: OntologyModel) -> list[Rule]:
    return _inverse(model)[0]


def extract_all(model: OntologyModel) -> ExtractionReport:
    """Run every scanner; dedup by id (provenance merged), sort by id."""
    merged: dict[str, Rule] = {}
    warnings: list[str] = []
    for scanner in _SCANNERS:
        rules, warns = scanner(model)
        warnings.extend(warns)
        for rule in rules:
            seen = merged.get(rule.id)
            if seen is None:
                merged[rule.id] = rule
            else:
                merged[rule.id] = with_provenance(
                    seen,
                    Provenance(
                        sources=tuple(
                            sorted(set(seen.provenance.sources + rule.provenance.sources))
                        ),
                        trigger_axioms=tuple(
                            sorted(
                                set(
                                    seen.provenance.trigger_axioms
                                    + rule.provenance.trigger_axioms
                                )
                            )
                        ),
                        display_form=seen.provenance.display_form,
                    ),
                )
    ordered = [merged[rid] for rid in sorted(merged)]
    counts = {pattern: 0 for pattern in Pattern}
    for rule in ordered:
        counts[rule.pattern] += 1
    return ExtractionReport(rules=ordered, counts=counts, warnings=warnings)
