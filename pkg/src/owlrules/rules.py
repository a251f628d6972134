"""IF-THEN rule language: terms, atoms, classification, text and JSON forms."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from enum import Enum

from .model import Iri

VAR_NAMES = ("?x", "?y", "?z")


# ---------------------------------------------------------------------------
# terms


class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __post_init__(self) -> None:
        if self.name not in VAR_NAMES:
            raise ValueError(f"variable must be one of {VAR_NAMES}, got {self.name!r}")


@dataclass(frozen=True)
class ClassRef(Term):
    iri: Iri


@dataclass(frozen=True)
class PropRef(Term):
    iri: Iri


@dataclass(frozen=True)
class IndividualRef(Term):
    iri: Iri


@dataclass(frozen=True)
class LiteralTok(Term):
    text: str


# ---------------------------------------------------------------------------
# atoms


class Atom:
    pass


@dataclass(frozen=True)
class IsA(Atom):
    subject: Term
    cls: Term


@dataclass(frozen=True)
class Link(Atom):
    subject: Term
    prop: Term
    obj: Term


@dataclass(frozen=True)
class HasFeature(Atom):
    subject: Term
    feature: Iri


@dataclass(frozen=True)
class Not(Atom):
    inner: Atom

    def __post_init__(self) -> None:
        if isinstance(self.inner, Not):
            raise ValueError("negation does not nest")


@dataclass(frozen=True)
class SchemaSubClassOf(Atom):
    sub: Term
    sup: Term


@dataclass(frozen=True)
class SchemaEquivalent(Atom):
    a: Term
    b: Term


@dataclass(frozen=True)
class SolePart(Atom):
    part: Term
    whole: Term


@dataclass(frozen=True)
class MorePartsExpected(Atom):
    whole: Term


# ---------------------------------------------------------------------------
# patterns and categories


class Pattern(str, Enum):
    CLASS_FEATURE = "class-feature"
    EQUIVALENCE_INHERITANCE = "equivalence-inheritance"
    DOMAIN_RANGE_IDENTIFICATION = "domain-range-identification"
    SUBCLASS_TRANSITIVITY = "subclass-transitivity"
    RELATION_PROPAGATION = "relation-propagation"
    SUBPROPERTY_LIFT = "subproperty-lift"
    SYMMETRIC = "symmetric"
    TRANSITIVE_PROPERTY = "transitive-property"
    SOLE_PARTOF = "sole-partof"
    COOCCURRENCE = "cooccurrence"
    ALLVALUESFROM = "allvaluesfrom"
    INTERSECTION = "intersection"
    INVERSE = "inverse"


class RuleCategory(str, Enum):
    IDENTIFYING = "identifying"
    SPECIFYING = "specifying"
    UNOBVIOUS = "unobvious"
    MEANING_ENRICHING = "meaning-enriching"


CATEGORY_ORDER = (
    RuleCategory.IDENTIFYING,
    RuleCategory.SPECIFYING,
    RuleCategory.UNOBVIOUS,
    RuleCategory.MEANING_ENRICHING,
)


class UnknownPatternError(ValueError):
    pass


_CLASSIFICATION: dict[Pattern, RuleCategory] = {
    Pattern.DOMAIN_RANGE_IDENTIFICATION: RuleCategory.IDENTIFYING,
    Pattern.SUBPROPERTY_LIFT: RuleCategory.IDENTIFYING,
    Pattern.CLASS_FEATURE: RuleCategory.SPECIFYING,
    Pattern.COOCCURRENCE: RuleCategory.SPECIFYING,
    Pattern.INTERSECTION: RuleCategory.SPECIFYING,
    Pattern.EQUIVALENCE_INHERITANCE: RuleCategory.UNOBVIOUS,
    Pattern.SUBCLASS_TRANSITIVITY: RuleCategory.UNOBVIOUS,
    Pattern.RELATION_PROPAGATION: RuleCategory.UNOBVIOUS,
    Pattern.TRANSITIVE_PROPERTY: RuleCategory.UNOBVIOUS,
    Pattern.SOLE_PARTOF: RuleCategory.UNOBVIOUS,
    Pattern.SYMMETRIC: RuleCategory.MEANING_ENRICHING,
    Pattern.ALLVALUESFROM: RuleCategory.MEANING_ENRICHING,
    Pattern.INVERSE: RuleCategory.MEANING_ENRICHING,
}


def coerce_pattern(pattern: Pattern | str) -> Pattern:
    if isinstance(pattern, Pattern):
        return pattern
    try:
        return Pattern(pattern)
    except ValueError:
        raise UnknownPatternError(f"unknown pattern: {pattern!r}") from None


def classify(pattern: Pattern | str) -> RuleCategory:
    """Map a pattern identifier to its rule category (total over the 13 patterns)."""
    return _CLASSIFICATION[coerce_pattern(pattern)]


def is_executable_pattern(pattern: Pattern | str) -> bool:
    return coerce_pattern(pattern) is not Pattern.SOLE_PARTOF


# ---------------------------------------------------------------------------
# rules


@dataclass(frozen=True)
class Provenance:
    sources: tuple[str, ...] = ()
    trigger_axioms: tuple[str, ...] = ()
    display_form: str = ""


@dataclass(frozen=True)
class Rule:
    id: str
    antecedent: tuple[Atom, ...]
    consequent: tuple[Atom, ...]
    pattern: Pattern
    category: RuleCategory
    executable: bool
    provenance: Provenance

    def __post_init__(self) -> None:
        if not self.antecedent or not self.consequent:
            raise ValueError("rule sides must be non-empty")
        if self.category is not classify(self.pattern):
            raise ValueError(f"category {self.category} inconsistent with {self.pattern}")
        if self.executable is not is_executable_pattern(self.pattern):
            raise ValueError(f"executable flag inconsistent with {self.pattern}")


def make_rule(
    pattern: Pattern | str,
    antecedent: tuple[Atom, ...] | list[Atom],
    consequent: tuple[Atom, ...] | list[Atom],
    provenance: Provenance | None = None,
) -> Rule:
    """Build a rule with its deterministic id, category, and executable flag."""
    pattern = coerce_pattern(pattern)
    ant = tuple(antecedent)
    cons = tuple(consequent)
    digest = hashlib.sha256(
        f"{pattern.value}|{_clause(ant)}|{_clause(cons)}".encode()
    ).hexdigest()[:10]
    return Rule(
        id=f"{pattern.value}-{digest}",
        antecedent=ant,
        consequent=cons,
        pattern=pattern,
        category=classify(pattern),
        executable=is_executable_pattern(pattern),
        provenance=provenance or Provenance(),
    )


def with_provenance(rule: Rule, provenance: Provenance) -> Rule:
    return replace(rule, provenance=provenance)


# ---------------------------------------------------------------------------
# text rendering


def render_term(term: Term) -> str:
    match term:
        case Var(name):
            return name
        case ClassRef(i) | PropRef(i) | IndividualRef(i):
            return i.value
        case LiteralTok(text):
            return f'"{text}"'
    raise TypeError(f"unknown term: {term!r}")


def render_atom(atom: Atom) -> str:
    match atom:
        case IsA(subject=s, cls=c):
            return f"{render_term(c)}({render_term(s)})"
        case Link(subject=s, prop=p, obj=o):
            return f"({render_term(s)} {render_term(p)} {render_term(o)})"
        case HasFeature(subject=s, feature=f):
            return f"hasFeature({render_term(s)},{f.value})"
        case Not(inner=i):
            return f"not {render_atom(i)}"
        case SchemaSubClassOf(sub=a, sup=b):
            return f"subClassOf({render_term(a)},{render_term(b)})"
        case SchemaEquivalent(a=a, b=b):
            return f"equivalent({render_term(a)},{render_term(b)})"
        case SolePart(part=p, whole=w):
            return f"solePart({render_term(p)},{render_term(w)})"
        case MorePartsExpected(whole=w):
            return f"morePartsExpected({render_term(w)})"
    raise TypeError(f"unknown atom: {atom!r}")


def _clause(atoms: tuple[Atom, ...]) -> str:
    return " and ".join(render_atom(a) for a in atoms)


def render_text(rule: Rule) -> str:
    """Single-line canonical form: ``IF <atoms> THEN <atoms>``."""
    return f"IF {_clause(rule.antecedent)} THEN {_clause(rule.consequent)}"


# ---------------------------------------------------------------------------
# structured (JSON) rendering

STRUCTURED_VERSION = 1


def _term_to_obj(term: Term) -> dict:
    match term:
        case Var(name):
            return {"var": name}
        case ClassRef(i):
            return {"class": i.value}
        case PropRef(i):
            return {"prop": i.value}
        case IndividualRef(i):
            return {"individual": i.value}
        case LiteralTok(text):
            return {"literal": text}
    raise TypeError(f"unknown term: {term!r}")


def _obj_to_term(obj: dict) -> Term:
    if len(obj) != 1:
        raise ValueError(f"bad term object: {obj!r}")
    key, value = next(iter(obj.items()))
    match key:
        case "var":
            return Var(value)
        case "class":
            return ClassRef(Iri(value))
        case "prop":
            return PropRef(Iri(value))
        case "individual":
            return IndividualRef(Iri(value))
        case "literal":
            return LiteralTok(value)
    raise ValueError(f"bad term object: {obj!r}")


def _atom_to_obj(atom: Atom) -> dict:
    match atom:
        case IsA(subject=s, cls=c):
            return {"kind": "isa", "subject": _term_to_obj(s), "class": _term_to_obj(c)}
        case Link(subject=s, prop=p, obj=o):
            return {
                "kind": "link",
                "subject": _term_to_obj(s),
                "prop": _term_to_obj(p),
                "object": _term_to_obj(o),
            }
        case HasFeature(subject=s, feature=f):
            return {"kind": "feature", "subject": _term_to_obj(s), "feature": {"prop": f.value}}
        case Not(inner=i):
            return {"kind": "not", "inner": _atom_to_obj(i)}
        case SchemaSubClassOf(sub=a, sup=b):
            return {"kind": "subclass", "sub": _term_to_obj(a), "sup": _term_to_obj(b)}
        case SchemaEquivalent(a=a, b=b):
            return {"kind": "equivalent", "a": _term_to_obj(a), "b": _term_to_obj(b)}
        case SolePart(part=p, whole=w):
            return {"kind": "sole-part", "part": _term_to_obj(p), "whole": _term_to_obj(w)}
        case MorePartsExpected(whole=w):
            return {"kind": "more-parts", "whole": _term_to_obj(w)}
    raise TypeError(f"unknown atom: {atom!r}")


def _obj_to_atom(obj: dict) -> Atom:
    kind = obj.get("kind")
    match kind:
        case "isa":
            return IsA(_obj_to_term(obj["subject"]), _obj_to_term(obj["class"]))
        case "link":
            return Link(
                _obj_to_term(obj["subject"]),
                _obj_to_term(obj["prop"]),
                _obj_to_term(obj["object"]),
            )
        case "feature":
            feature = _obj_to_term(obj["feature"])
            if not isinstance(feature, PropRef):
                raise ValueError(f"feature must be a prop term: {obj!r}")
            return HasFeature(_obj_to_term(obj["subject"]), feature.iri)
        case "not":
            return Not(_obj_to_atom(obj["inner"]))
        case "subclass":
            return SchemaSubClassOf(_obj_to_term(obj["sub"]), _obj_to_term(obj["sup"]))
        case "equivalent":
            return SchemaEquivalent(_obj_to_term(obj["a"]), _obj_to_term(obj["b"]))
        case "sole-part":
            return SolePart(_obj_to_term(obj["part"]), _obj_to_term(obj["whole"]))
        case "more-parts":
            return MorePartsExpected(_obj_to_term(obj["whole"]))
    raise ValueError(f"bad atom object: {obj!r}")


def rule_to_obj(rule: Rule) -> dict:
    return {
        "id": rule.id,
        "pattern": rule.pattern.value,
        "category": rule.category.value,
        "executable": rule.executable,
        "if": [_atom_to_obj(a) for a in rule.antecedent],
        "then": [_atom_to_obj(a) for a in rule.consequent],
        "provenance": {
            "source": sorted(set(rule.provenance.sources)),
            "trigger_axioms": sorted(set(rule.provenance.trigger_axioms)),
            "display_form": rule.provenance.display_form,
        },
    }


def render_structured(rules: list[Rule] | tuple[Rule, ...], source: tuple[str, ...] = ()) -> str:
    """Canonical JSON document: rules sorted by id, sources sorted, stable bytes."""
    doc = {
        "version": STRUCTURED_VERSION,
        "source": sorted(set(source)),
        "rules": [rule_to_obj(r) for r in sorted(rules, key=lambda r: r.id)],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_structured(text: str) -> tuple[list[Rule], list[str]]:
    """Inverse of :func:`render_structured`; validates ids against content."""
    doc = json.loads(text)
    if doc.get("version") != STRUCTURED_VERSION:
        raise ValueError(f"unsupported document version: {doc.get('version')!r}")
    rules: list[Rule] = []
    for obj in doc["rules"]:
        prov = Provenance(
            sources=tuple(obj["provenance"]["source"]),
            trigger_axioms=tuple(obj["provenance"]["trigger_axioms"]),
            display_form=obj["provenance"]["display_form"],
        )
        rule = make_rule(
            obj["pattern"],
            [_obj_to_atom(a) for a in obj["if"]],
            [_obj_to_atom(a) for a in obj["then"]],
            prov,
        )
        if rule.id != obj["id"]:
            raise ValueError(f"rule id {obj['id']!r} does not match content ({rule.id})")
        rules.append(rule)
    return rules, list(doc["source"])
