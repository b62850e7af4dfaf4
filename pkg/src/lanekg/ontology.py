"""Closed vocabulary of the lane-change knowledge graph.

Ten concepts, nine relations, and a fixed set of category instances form the
schema. Per-frame vehicle snapshots are attached through a generic ``vehicle``
entity (``<vehicle, HAS_CHILD, id>``) and every observation is reified into a
``<subject, RELATION, category>`` triple. All structures here are immutable
and safe for concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .exceptions import (
    HypothesisNotIntentionError,
    NoRelationForConceptError,
    ObjectConceptMismatchError,
    UnknownEntityError,
    UnknownRelationError,
)


class Concept(Enum):
    INTENTION = "intention"
    LAT_VELOCITY = "latVelocity"
    LAT_ACCELERATION = "latAcceleration"
    TTC_PRECEDING = "ttcPreceding"
    TTC_LEFT_PRECEDING = "ttcLeftPreceding"
    TTC_RIGHT_PRECEDING = "ttcRightPreceding"
    TTC_LEFT_FOLLOWING = "ttcLeftFollowing"
    TTC_RIGHT_FOLLOWING = "ttcRightFollowing"
    VEHICLE_ID = "vehicleID"
    VEHICLE = "vehicle"


class Relation(Enum):
    INTENTION_IS = "INTENTION_IS"
    LATERAL_VELOCITY_IS = "LATERAL_VELOCITY_IS"
    LATERAL_ACCELERATION_IS = "LATERAL_ACCELERATION_IS"
    PRECEDING_TTC_IS = "PRECEDING_TTC_IS"
    LEFT_PRECEDING_TTC_IS = "LEFT_PRECEDING_TTC_IS"
    RIGHT_PRECEDING_TTC_IS = "RIGHT_PRECEDING_TTC_IS"
    LEFT_FOLLOWING_TTC_IS = "LEFT_FOLLOWING_TTC_IS"
    RIGHT_FOLLOWING_TTC_IS = "RIGHT_FOLLOWING_TTC_IS"
    HAS_CHILD = "HAS_CHILD"


#: Name of the generic entity every per-frame child hangs off.
GENERIC_VEHICLE = "vehicle"

#: Intention labels in canonical order.
INTENTIONS = ("LLC", "LK", "RLC")

#: Evidence concepts in emission order (the seven non-ID, non-intention slots).
EVIDENCE_CONCEPTS = (
    Concept.LAT_VELOCITY,
    Concept.LAT_ACCELERATION,
    Concept.TTC_PRECEDING,
    Concept.TTC_LEFT_PRECEDING,
    Concept.TTC_RIGHT_PRECEDING,
    Concept.TTC_LEFT_FOLLOWING,
    Concept.TTC_RIGHT_FOLLOWING,
)

_TTC_SUFFIX = {
    Concept.TTC_PRECEDING: "Preceding",
    Concept.TTC_LEFT_PRECEDING: "LeftPreceding",
    Concept.TTC_RIGHT_PRECEDING: "RightPreceding",
    Concept.TTC_LEFT_FOLLOWING: "LeftFollowing",
    Concept.TTC_RIGHT_FOLLOWING: "RightFollowing",
}

INSTANCES: dict[Concept, tuple[str, ...]] = {
    Concept.INTENTION: INTENTIONS,
    Concept.LAT_VELOCITY: ("movingLeft", "movingStraight", "movingRight"),
    Concept.LAT_ACCELERATION: ("leftAcceleration", "zeroAcceleration", "rightAcceleration"),
}
for _c, _suffix in _TTC_SUFFIX.items():
    INSTANCES[_c] = tuple(f"{level}Risk{_suffix}" for level in ("high", "medium", "low"))

_RELATION_OBJECT_CONCEPT: dict[Relation, Concept] = {
    Relation.INTENTION_IS: Concept.INTENTION,
    Relation.LATERAL_VELOCITY_IS: Concept.LAT_VELOCITY,
    Relation.LATERAL_ACCELERATION_IS: Concept.LAT_ACCELERATION,
    Relation.PRECEDING_TTC_IS: Concept.TTC_PRECEDING,
    Relation.LEFT_PRECEDING_TTC_IS: Concept.TTC_LEFT_PRECEDING,
    Relation.RIGHT_PRECEDING_TTC_IS: Concept.TTC_RIGHT_PRECEDING,
    Relation.LEFT_FOLLOWING_TTC_IS: Concept.TTC_LEFT_FOLLOWING,
    Relation.RIGHT_FOLLOWING_TTC_IS: Concept.TTC_RIGHT_FOLLOWING,
    Relation.HAS_CHILD: Concept.VEHICLE_ID,
}

_CONCEPT_RELATION = {c: r for r, c in _RELATION_OBJECT_CONCEPT.items()}

#: name -> owning concept, for every enumerated category instance.
INSTANCE_CONCEPT: dict[str, Concept] = {
    name: concept for concept, names in INSTANCES.items() for name in names
}


@dataclass(frozen=True)
class Instance:
    """A named category instance belonging to one concept."""

    name: str
    concept: Concept


@dataclass(frozen=True)
class Triple:
    """One knowledge-graph atom: subject --predicate--> object."""

    subject: str
    predicate: Relation
    object: str

    def as_row(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate.value, self.object)


def instance(name: str) -> Instance:
    """Look up an enumerated category instance by name."""
    concept = INSTANCE_CONCEPT.get(name)
    if concept is None:
        raise UnknownEntityError(f"not an enumerated instance: {name!r}")
    return Instance(name, concept)


def object_concept(relation: Relation) -> Concept:
    """The unique concept whose instances may appear as object of ``relation``."""
    try:
        return _RELATION_OBJECT_CONCEPT[relation]
    except KeyError:
        raise UnknownRelationError(f"unknown relation: {relation!r}") from None


def relation_for(concept: Concept) -> Relation:
    """The relation whose object concept is ``concept``."""
    rel = _CONCEPT_RELATION.get(concept)
    if rel is None:
        raise NoRelationForConceptError(f"no relation targets concept {concept.value!r}")
    return rel


def _is_child_id(name: str, known_children=None) -> bool:
    if name == GENERIC_VEHICLE or name in INSTANCE_CONCEPT:
        return False
    if known_children is not None:
        return name in known_children
    return bool(name)


def validate_triple(t: Triple, known_children=None) -> None:
    """Check a triple against the ontology; raise naming the offending field.

    ``known_children`` optionally restricts vehicle-child identifiers to a
    registry; without it any non-instance, non-``vehicle`` string is accepted
    as a child id.
    """
    if not isinstance(t.predicate, Relation):
        raise UnknownRelationError(f"predicate: unknown relation {t.predicate!r}")
    target = _RELATION_OBJECT_CONCEPT[t.predicate]

    if t.predicate is Relation.HAS_CHILD:
        if not _is_child_id(t.object, known_children):
            raise ObjectConceptMismatchError(
                f"object: {t.object!r} is not a vehicle-child id"
            )
        if t.subject != GENERIC_VEHICLE:
            raise UnknownEntityError(
                f"subject: HAS_CHILD subject must be {GENERIC_VEHICLE!r}, got {t.subject!r}"
            )
        return

    obj_concept = INSTANCE_CONCEPT.get(t.object)
    if obj_concept is not target:
        raise ObjectConceptMismatchError(
            f"object: {t.object!r} is not an instance of {target.value!r}"
        )

    if t.subject == GENERIC_VEHICLE or _is_child_id(t.subject, known_children):
        return
    # Category-instance subjects are only the conditioned-evidence form
    # <category, INTENTION_IS, intention>.
    if t.subject in INSTANCE_CONCEPT and t.predicate is Relation.INTENTION_IS:
        return
    raise UnknownEntityError(f"subject: {t.subject!r} is not a registered entity")


def triple_is_valid(t: Triple, known_children=None) -> bool:
    try:
        validate_triple(t, known_children)
    except (UnknownRelationError, ObjectConceptMismatchError, UnknownEntityError):
        return False
    return True


def reify_evidence(category: Instance | str, vehicle_child: str) -> Triple:
    """Reify an observation into ``<vehicle_child, RELATION, category>``."""
    cat = instance(category) if isinstance(category, str) else category
    return Triple(vehicle_child, relation_for(cat.concept), cat.name)


def reify_conditioned_evidence(category: Instance | str, hypothesis: Instance | str) -> Triple:
    """Reify evidence conditioned on an intention: ``<category, INTENTION_IS, h>``.

    These triples are query-only constructs scored by the embedding model;
    they are never emitted into the training corpus.
    """
    cat = instance(category) if isinstance(category, str) else category
    hyp = hypothesis.name if isinstance(hypothesis, Instance) else hypothesis
    if hyp not in INTENTIONS:
        raise HypothesisNotIntentionError(f"hypothesis must be an intention, got {hyp!r}")
    return Triple(cat.name, Relation.INTENTION_IS, hyp)


def ontology_document() -> dict:
    """Ontology reference as a plain JSON-serializable document."""
    return {
        "concepts": [c.value for c in Concept],
        "instances": {c.value: list(names) for c, names in INSTANCES.items()},
        "relations": [
            {"name": r.value, "object_concept": _RELATION_OBJECT_CONCEPT[r].value}
            for r in Relation
        ],
        "generic_entity": GENERIC_VEHICLE,
    }
