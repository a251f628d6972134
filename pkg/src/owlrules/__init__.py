"""owlrules: IF-THEN rule extraction and forward chaining over an OWL subset.

Pipeline: ``parse_ontology`` builds an :class:`OntologyModel` from the RDF/XML
subset; ``extract_all`` scans it for the thirteen rule-licensing shapes;
``classify`` sorts rules into four categories; ``run_fixpoint`` chains the
executable ones over a :class:`FactBase` of instance facts.
"""

from .engine import (
    ContradictionError,
    Fact,
    FactBase,
    FeatureExpected,
    InferenceResult,
    LinkFact,
    Membership,
    NegMembership,
    NonExecutableRuleError,
    format_fact,
    run_fixpoint,
    schema_closure,
)
from .extract import (
    ExtractionReport,
    extract_all,
    extract_allvaluesfrom,
    extract_class_feature,
    extract_cooccurrence,
    extract_domain_range_identification,
    extract_equivalence_inheritance,
    extract_intersection,
    extract_inverse,
    extract_relation_propagation,
    extract_sole_partof,
    extract_subclass_transitivity,
    extract_subproperty_lift,
    extract_symmetric,
    extract_transitive,
)
from .model import (
    AllValuesFrom,
    Axiom,
    ClassLink,
    EquivalentClass,
    IntersectionOf,
    InverseOf,
    Iri,
    MergeConflictError,
    ModelBuilder,
    OntologyModel,
    OwlClassDecl,
    PropertyDecl,
    PropertyKind,
    SubClassOf,
    SubPropertyOf,
    add_axiom,
    iri,
    merge,
)
from .parser import (
    Location,
    ParseDiagnostic,
    ParseEvent,
    Severity,
    format_diagnostic,
    has_errors,
    parse_fact_base,
    parse_ontology,
    render_fact_base,
    render_rdfxml,
    sniff_root_name,
    stream_events,
)
from .rules import (
    CATEGORY_ORDER,
    STRUCTURED_VERSION,
    VAR_NAMES,
    Atom,
    ClassRef,
    HasFeature,
    IndividualRef,
    IsA,
    Link,
    LiteralTok,
    MorePartsExpected,
    Not,
    Pattern,
    PropRef,
    Provenance,
    Rule,
    RuleCategory,
    SchemaEquivalent,
    SchemaSubClassOf,
    SolePart,
    Term,
    UnknownPatternError,
    Var,
    classify,
    coerce_pattern,
    is_executable_pattern,
    make_rule,
    parse_structured,
    render_atom,
    render_structured,
    render_term,
    render_text,
    rule_to_obj,
    with_provenance,
)

__version__ = "0.1.0"

__all__ = [
    "AllValuesFrom",
    "Atom",
    "Axiom",
    "CATEGORY_ORDER",
    "STRUCTURED_VERSION",
    "VAR_NAMES",
    "ClassLink",
    "ClassRef",
    "ContradictionError",
    "EquivalentClass",
    "ExtractionReport",
    "Fact",
    "FactBase",
    "FeatureExpected",
    "HasFeature",
    "IndividualRef",
    "InferenceResult",
    "IntersectionOf",
    "InverseOf",
    "Iri",
    "IsA",
    "Link",
    "LinkFact",
    "LiteralTok",
    "Location",
    "Membership",
    "MergeConflictError",
    "ModelBuilder",
    "MorePartsExpected",
    "NegMembership",
    "NonExecutableRuleError",
    "Not",
    "OntologyModel",
    "OwlClassDecl",
    "ParseDiagnostic",
    "ParseEvent",
    "Pattern",
    "PropRef",
    "PropertyDecl",
    "PropertyKind",
    "Provenance",
    "Rule",
    "RuleCategory",
    "SchemaEquivalent",
    "SchemaSubClassOf",
    "Severity",
    "SolePart",
    "SubClassOf",
    "SubPropertyOf",
    "Term",
    "UnknownPatternError",
    "Var",
    "add_axiom",
    "classify",
    "coerce_pattern",
    "extract_all",
    "extract_allvaluesfrom",
    "extract_class_feature",
    "extract_cooccurrence",
    "extract_domain_range_identification",
    "extract_equivalence_inheritance",
    "extract_intersection",
    "extract_inverse",
    "extract_relation_propagation",
    "extract_sole_partof",
    "extract_subclass_transitivity",
    "extract_subproperty_lift",
    "extract_symmetric",
    "extract_transitive",
    "format_diagnostic",
    "format_fact",
    "has_errors",
    "iri",
    "is_executable_pattern",
    "make_rule",
    "merge",
    "parse_fact_base",
    "parse_ontology",
    "parse_structured",
    "render_atom",
    "render_fact_base",
    "render_rdfxml",
    "render_structured",
    "render_term",
    "render_text",
    "rule_to_obj",
    "run_fixpoint",
    "schema_closure",
    "sniff_root_name",
    "stream_events",
    "with_provenance",
]
