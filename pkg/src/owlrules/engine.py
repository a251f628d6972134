"""Forward chaining over instance facts, plus schema-level subclass closure.

``run_fixpoint`` saturates a fact base under executable rules using semi-naive
rounds (each round only re-matches against facts derived in the previous one).
Matching binds the variables ?x/?y/?z to fact components, with one restriction:
the object of a class-flagged link fact never binds a variable (it names a
class, not an individual).  Ground terms match by plain name equality.

Rules whose consequents are schema atoms (the equivalence-inheritance and
subclass-transitivity shapes) are accepted but derive nothing here — there is
no instance-level fact for a schema assertion; ``schema_closure`` is their
execution path.  Rules with negated consequents (the allvaluesfrom shape)
assert nothing either: they are closed-world integrity checks whose failures
are reported as violations after the fixpoint is reached.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    EquivalentClass,
    Iri,
    OntologyModel,
    SubClassOf,
)
from .rules import (
    Atom,
    ClassRef,
    HasFeature,
    IndividualRef,
    IsA,
    Link,
    MorePartsExpected,
    Not,
    Pattern,
    PropRef,
    Rule,
    SchemaEquivalent,
    SchemaSubClassOf,
    SolePart,
    Term,
    Var,
)


class ContradictionError(Exception):
    """A membership and its negation name the same (individual, class) pair."""


class NonExecutableRuleError(ValueError):
    """A rule flagged non-executable was handed to the fixpoint engine."""


# ---------------------------------------------------------------------------
# facts


class Fact:
    pass


@dataclass(frozen=True)
class Membership(Fact):
    individual: Iri
    cls: Iri


@dataclass(frozen=True)
class NegMembership(Fact):
    individual: Iri
    cls: Iri


@dataclass(frozen=True)
class LinkFact(Fact):
    subject: Iri
    prop: Iri
    obj: Iri
    # True when the object names a class rather than an individual (the
    # symmetric/inverse shapes conclude links that point at a class).
    obj_is_class: bool = False


@dataclass(frozen=True)
class FeatureExpected(Fact):
    individual: Iri
    feature: Iri


def format_fact(fact: Fact) -> str:
    match fact:
        case Membership(individual=i, cls=c):
            return f"isa({i}, {c})"
        case NegMembership(individual=i, cls=c):
            return f"not isa({i}, {c})"
        case LinkFact(subject=s, prop=p, obj=o):
            return f"link({s}, {p}, {o})"
        case FeatureExpected(individual=i, feature=f):
            return f"feature({i}, {f})"
    raise TypeError(f"unknown fact: {fact!r}")


class FactBase:
    """Duplicate-free fact store that remembers which rule derived what."""

    def __init__(self, facts: tuple[Fact, ...] | list[Fact] = ()):
        self._facts: list[Fact] = []
        self._index: set[Fact] = set()
        self.derived_marks: dict[Fact, str] = {}
        for f in facts:
            self.add(f)

    @property
    def facts(self) -> tuple[Fact, ...]:
        return tuple(self._facts)

    def add(self, fact: Fact, derived_by: str | None = None) -> bool:
        if fact in self._index:
            return False
        self._check_contradiction(fact, derived_by)
        self._facts.append(fact)
        self._index.add(fact)
        if derived_by is not None:
            self.derived_marks[fact] = derived_by
        return True

    def _check_contradiction(self, fact: Fact, derived_by: str | None) -> None:
        twin: Fact | None = None
        if isinstance(fact, Membership):
            twin = NegMembership(fact.individual, fact.cls)
        elif isinstance(fact, NegMembership):
            twin = Membership(fact.individual, fact.cls)
        if twin is not None and twin in self._index:
            pair = (
                fact.individual,
                fact.cls,
            )
            a = self.derived_marks.get(twin, "initial")
            b = derived_by or "initial"
            raise ContradictionError(
                f"contradiction on ({pair[0]}, {pair[1]}): asserted and negated "
                f"(sources: {a}, {b})"
            )

    def source_of(self, fact: Fact) -> str:
        return self.derived_marks.get(fact, "initial")

    def copy(self) -> "FactBase":
        clone = FactBase()
        clone._facts = list(self._facts)
        clone._index = set(self._index)
        clone.derived_marks = dict(self.derived_marks)
        return clone

    def __contains__(self, fact: Fact) -> bool:
        return fact in self._index

    def __iter__(self):
        return iter(self._facts)

    def __len__(self) -> int:
        return len(self._facts)


@dataclass
class InferenceResult:
    final: FactBase
    iterations: int
    derived: list[tuple[Fact, str]]
    violations: list[tuple[Fact, str]]
    converged: bool


# ---------------------------------------------------------------------------
# matching


def _unify(term: Term, value: Iri, binds: dict[str, Iri]) -> dict[str, Iri] | None:
    if isinstance(term, Var):
        bound = binds.get(term.name)
        if bound is None:
            out = dict(binds)
            out[term.name] = value
            return out
        return binds if bound == value else None
    if isinstance(term, (ClassRef, PropRef, IndividualRef)):
        return binds if term.iri == value else None
    return None  # literals never match a name


def _match_atom(atom: Atom, fact: Fact, binds: dict[str, Iri]) -> dict[str, Iri] | None:
    if isinstance(atom, IsA) and isinstance(fact, Membership):
        b = _unify(atom.subject, fact.individual, binds)
        return None if b is None else _unify(atom.cls, fact.cls, b)
    if isinstance(atom, Link) and isinstance(fact, LinkFact):
        b = _unify(atom.subject, fact.subject, binds)
        if b is None:
            return None
        b = _unify(atom.prop, fact.prop, b)
        if b is None:
            return None
        if fact.obj_is_class and isinstance(atom.obj, Var):
            return None
        return _unify(atom.obj, fact.obj, b)
    if isinstance(atom, HasFeature) and isinstance(fact, FeatureExpected):
        if atom.feature != fact.feature:
            return None
        return _unify(atom.subject, fact.individual, binds)
    return None


def _ground(term: Term, binds: dict[str, Iri]) -> Iri:
    if isinstance(term, Var):
        try:
            return binds[term.name]
        except KeyError:
            raise ValueError(f"consequent variable {term.name} is unbound") from None
    if isinstance(term, (ClassRef, PropRef, IndividualRef)):
        return term.iri
    raise ValueError(f"cannot ground {term!r}")


def _instantiate(atom: Atom, binds: dict[str, Iri]) -> Fact | None:
    if isinstance(atom, IsA):
        return Membership(_ground(atom.subject, binds), _ground(atom.cls, binds))
    if isinstance(atom, Link):
        return LinkFact(
            _ground(atom.subject, binds),
            _ground(atom.prop, binds),
            _ground(atom.obj, binds),
            obj_is_class=isinstance(atom.obj, ClassRef),
        )
    if isinstance(atom, HasFeature):
        return FeatureExpected(_ground(atom.subject, binds), atom.feature)
    return None  # schema atoms have no instance-level fact


_SCHEMA_ATOMS = (SchemaSubClassOf, SchemaEquivalent, SolePart, MorePartsExpected)
_INSTANCE_ATOMS = (IsA, Link, HasFeature)


def _is_ground_atom(atom: Atom) -> bool:
    terms: tuple[Term, ...]
    if isinstance(atom, (SchemaSubClassOf, SchemaEquivalent)):
        terms = (atom.sub, atom.sup) if isinstance(atom, SchemaSubClassOf) else (atom.a, atom.b)
    elif isinstance(atom, SolePart):
        terms = (atom.part, atom.whole)
    elif isinstance(atom, MorePartsExpected):
        terms = (atom.whole,)
    else:
        return False
    return not any(isinstance(t, Var) for t in terms)


@dataclass
class _Prepared:
    rule: Rule
    match_atoms: list[Atom]  # instance atoms that must match facts
    fires: bool  # False when a variable-bearing schema atom blocks the rule
    emits: bool  # True when some consequent atom is instance-level


@dataclass
class _Constraint:
    rule: Rule
    prop: Iri
    filler: Iri


def _prepare(rule: Rule) -> _Prepared | _Constraint:
    if any(isinstance(a, Not) for a in rule.consequent):
        return _prepare_constraint(rule)
    match_atoms: list[Atom] = []
    fires = True
    for atom in rule.antecedent:
        if isinstance(atom, Not):
            raise ValueError(
                f"rule {rule.id}: negated antecedents are only supported on "
                "integrity-check rules"
            )
        if isinstance(atom, _INSTANCE_ATOMS):
            match_atoms.append(atom)
        elif isinstance(atom, _SCHEMA_ATOMS):
            # Ground schema atoms held at extraction time; variable-bearing
            # ones have nothing to match and silence the rule.
            if not _is_ground_atom(atom):
                fires = False
        else:
            raise ValueError(f"rule {rule.id}: unsupported antecedent atom {atom!r}")
    emits = any(isinstance(a, _INSTANCE_ATOMS) for a in rule.consequent)
    return _Prepared(rule=rule, match_atoms=match_atoms, fires=fires, emits=emits)


def _prepare_constraint(rule: Rule) -> _Constraint:
    ok = (
        len(rule.consequent) == 1
        and len(rule.antecedent) == 1
        and isinstance(rule.consequent[0], Not)
        and isinstance(rule.antecedent[0], Not)
    )
    if ok:
        head = rule.consequent[0].inner
        guard = rule.antecedent[0].inner
        ok = (
            isinstance(head, Link)
            and isinstance(head.prop, PropRef)
            and isinstance(head.obj, Var)
            and isinstance(guard, IsA)
            and isinstance(guard.cls, ClassRef)
            and guard.subject == head.obj
        )
    if not ok:
        raise ValueError(f"rule {rule.id}: unsupported integrity-check shape")
    return _Constraint(rule=rule, prop=head.prop.iri, filler=guard.cls.iri)


def _enumerate(
    atoms: list[Atom],
    idx: int,
    pivot: int,
    binds: dict[str, Iri],
    base_facts: tuple[Fact, ...],
    delta: list[Fact],
):
    if idx == len(atoms):
        yield binds
        return
    pool = delta if idx == pivot else base_facts
    for fact in pool:
        nb = _match_atom(atoms[idx], fact, binds)
        if nb is not None:
            yield from _enumerate(atoms, idx + 1, pivot, nb, base_facts, delta)


def _round(
    prepared: list[_Prepared], base: FactBase, delta: list[Fact]
) -> list[tuple[Fact, str]]:
    staged: list[tuple[Fact, str]] = []
    staged_set: set[Fact] = set()
    base_facts = base.facts
    for prep in prepared:
        seen_binds: set[tuple] = set()
        pivots = range(len(prep.match_atoms)) if prep.match_atoms else (-1,)
        for pivot in pivots:
            for binds in _enumerate(prep.match_atoms, 0, pivot, {}, base_facts, delta):
                key = tuple(sorted(binds.items()))
                if key in seen_binds:
                    continue
                seen_binds.add(key)
                for atom in prep.rule.consequent:
                    fact = _instantiate(atom, binds)
                    if fact is None or fact in base or fact in staged_set:
                        continue
                    staged.append((fact, prep.rule.id))
                    staged_set.add(fact)
    return staged


def run_fixpoint(rules: list[Rule], initial: FactBase, cap: int) -> InferenceResult:
    """Saturate ``initial`` under ``rules``; never mutates the input base."""
    if cap < 1:
        raise ValueError("iteration cap must be at least 1")
    bad = [r.id for r in rules if not r.executable]
    if bad:
        raise NonExecutableRuleError(f"non-executable rules passed to fixpoint: {', '.join(bad)}")

    positives: list[_Prepared] = []
    constraints: list[_Constraint] = []
    for rule in rules:
        prep = _prepare(rule)
        if isinstance(prep, _Constraint):
            constraints.append(prep)
        elif prep.fires and prep.emits:
            positives.append(prep)

    base = initial.copy()
    for fact in base:
        if isinstance(fact, Membership) and NegMembership(fact.individual, fact.cls) in base:
            raise ContradictionError(
                f"contradiction on ({fact.individual}, {fact.cls}): asserted and "
                f"negated (sources: {base.source_of(fact)}, "
                f"{base.source_of(NegMembership(fact.individual, fact.cls))})"
            )

    derived: list[tuple[Fact, str]] = []
    delta = list(base)
    iterations = 0
    converged = False
    while iterations < cap:
        iterations += 1
        staged = _round(positives, base, delta)
        if not staged:
            converged = True
            break
        for fact, rule_id in staged:
            base.add(fact, derived_by=rule_id)
            derived.append((fact, rule_id))
        delta = [fact for fact, _ in staged]

    violations: list[tuple[Fact, str]] = []
    for con in constraints:
        for fact in base:
            if (
                isinstance(fact, LinkFact)
                and fact.prop == con.prop
                and not fact.obj_is_class
                and Membership(fact.obj, con.filler) not in base
            ):
                violations.append((fact, con.rule.id))

    return InferenceResult(
        final=base,
        iterations=iterations,
        derived=derived,
        violations=violations,
        converged=converged,
    )


# ---------------------------------------------------------------------------
# schema-level closure


def schema_closure(model: OntologyModel, rules: list[Rule]) -> list[SubClassOf]:
    """Least fixpoint of derived subclass axioms under the two schema shapes.

    ``rules`` selects which shapes participate (transitive chaining and/or
    equivalence lifting); only those two patterns are accepted.  Returns new
    axioms only — input edges and self-edges are never reported — sorted by
    (sub, sup).
    """
    allowed = {Pattern.EQUIVALENCE_INHERITANCE, Pattern.SUBCLASS_TRANSITIVITY}
    stray = [r.id for r in rules if r.pattern not in allowed]
    if stray:
        raise ValueError(f"schema_closure only accepts schema rules, got: {', '.join(stray)}")
    trans_on = any(r.pattern is Pattern.SUBCLASS_TRANSITIVITY for r in rules)
    equiv_on = any(r.pattern is Pattern.EQUIVALENCE_INHERITANCE for r in rules)

    given = {(ax.sub, ax.sup) for ax in model.axioms_of(SubClassOf)}
    equivalences = [(ax.a, ax.b) for ax in model.axioms_of(EquivalentClass)]
    known = set(given)
    changed = True
    while changed:
        changed = False
        fresh: set[tuple[Iri, Iri]] = set()
        if trans_on:
            for a, b in known:
                for b2, c in known:
                    if b == b2 and a != c and (a, c) not in known:
                        fresh.add((a, c))
        if equiv_on:
            for a, b in equivalences:
                for lifted, declared in ((a, b), (b, a)):
                    for sub, sup in known:
                        if sub == declared and sup != lifted and (lifted, sup) not in known:
                            fresh.add((lifted, sup))
        if fresh:
            known |= fresh
            changed = True

    return [SubClassOf(s, p) for s, p in sorted(known - given)]
