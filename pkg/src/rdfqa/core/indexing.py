"""Schema and instance indices over a parsed dataset.

The schema index holds what the document *declares* (classes, properties and
their kinds, domain/range axioms, functional/inverse-functional markers,
disjointness closed under symmetry and subclass descent). The instance index
holds what the document *uses* (instance/class memberships and per-predicate
triple groups). Keeping declaration and usage apart is what lets the
undefined-terms metric compare the two.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .model import (
    BUILTIN_NAMESPACES,
    OWL_CLASS,
    OWL_COMPLEMENT_OF,
    OWL_DATATYPE_PROPERTY,
    OWL_DISJOINT_WITH,
    OWL_FUNCTIONAL_PROPERTY,
    OWL_INVERSE_FUNCTIONAL_PROPERTY,
    OWL_OBJECT_PROPERTY,
    RDF_PROPERTY,
    RDF_TYPE,
    RDFS_CLASS,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    XSD_NS,
    Dataset,
    Iri,
    is_builtin,
)


class PropertyKind(enum.Enum):
    OBJECT = "object"
    DATATYPE = "datatype"
    UNKNOWN = "unknown"


_CLASS_TYPES = frozenset({RDFS_CLASS, OWL_CLASS})
_PROPERTY_TYPES = frozenset({
    RDF_PROPERTY, OWL_OBJECT_PROPERTY, OWL_DATATYPE_PROPERTY,
    OWL_FUNCTIONAL_PROPERTY, OWL_INVERSE_FUNCTIONAL_PROPERTY,
})


@dataclass(frozen=True)
class SchemaIndex:
    """Declared vocabulary of a dataset. Treat all fields as immutable."""

    classes: frozenset[Iri]
    properties: Mapping[Iri, PropertyKind]
    domain_of: Mapping[Iri, frozenset[Iri]]
    range_of: Mapping[Iri, frozenset[Iri]]
    functional: frozenset[Iri]
    inverse_functional: frozenset[Iri]
    disjoint_pairs: frozenset[frozenset[Iri]]
    subclass_of: Mapping[Iri, frozenset[Iri]]
    #: transitive superclasses per subclass subject (may include the class
    #: itself when the declared hierarchy is cyclic)
    ancestors: Mapping[Iri, frozenset[Iri]] = field(default_factory=dict)

    def superclasses(self, cls: Iri) -> frozenset[Iri]:
        return self.ancestors.get(cls, frozenset())

    def is_transitive_subclass(self, child: Iri, parent: Iri) -> bool:
        return parent in self.ancestors.get(child, frozenset())


@dataclass(frozen=True)
class InstanceIndex:
    """Usage-side view of a dataset. Treat all fields as immutable."""

    instances: frozenset[Iri]
    classes_of: Mapping[Iri, frozenset[Iri]]
    members_of: Mapping[Iri, frozenset[Iri]]
    #: triple indices per predicate, covering every triple in document order
    triples_by_predicate: Mapping[Iri, tuple[int, ...]]
    #: triple indices of rdf:type triples keyed by their (IRI) object
    type_object_triples: Mapping[Iri, tuple[int, ...]]


def _transitive_parents(subclass_of: dict[Iri, set[Iri]]) -> dict[Iri, frozenset[Iri]]:
    out = {}
    for start in subclass_of:
        seen: set[Iri] = set()
        stack = list(subclass_of[start])
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(subclass_of.get(node, ()))
        out[start] = frozenset(seen)
    return out


def build_schema_index(dataset: Dataset,
                       builtin_namespaces: tuple[str, ...] = BUILTIN_NAMESPACES) -> SchemaIndex:
    """Collect the declared classes, properties and axioms of ``dataset``.

    An empty or schema-free dataset yields an empty index. IRIs under the
    builtin namespaces never enter ``classes``.
    """
    classes: set[Iri] = set()
    prop_types: dict[Iri, set[Iri]] = {}
    domain_of: dict[Iri, set[Iri]] = {}
    range_of: dict[Iri, set[Iri]] = {}
    declared_disjoint: set[frozenset[Iri]] = set()
    subclass_of: dict[Iri, set[Iri]] = {}
    # first-mention document order, so downstream iteration is deterministic
    prop_order: dict[Iri, None] = {}

    def note_class(term):
        if isinstance(term, Iri) and not is_builtin(term, builtin_namespaces):
            classes.add(term)

    for t in dataset.triples:
        p = t.predicate
        if p == RDF_TYPE:
            if not isinstance(t.subject, Iri) or not isinstance(t.object, Iri):
                continue
            if t.object in _CLASS_TYPES:
                note_class(t.subject)
            elif t.object in _PROPERTY_TYPES:
                prop_types.setdefault(t.subject, set()).add(t.object)
                prop_order.setdefault(t.subject)
        elif p == RDFS_SUBCLASSOF:
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                note_class(t.subject)
                subclass_of.setdefault(t.subject, set()).add(t.object)
        elif p == OWL_DISJOINT_WITH or p == OWL_COMPLEMENT_OF:
            if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
                note_class(t.subject)
                if t.subject != t.object:
                    declared_disjoint.add(frozenset((t.subject, t.object)))
        elif p == RDFS_DOMAIN:
            if isinstance(t.subject, Iri):
                domain_of.setdefault(t.subject, set())
                prop_order.setdefault(t.subject)
                if isinstance(t.object, Iri):
                    domain_of[t.subject].add(t.object)
                    note_class(t.object)
        elif p == RDFS_RANGE:
            if isinstance(t.subject, Iri):
                range_of.setdefault(t.subject, set())
                prop_order.setdefault(t.subject)
                if isinstance(t.object, Iri):
                    range_of[t.subject].add(t.object)
                    if not t.object.text.startswith(XSD_NS):
                        note_class(t.object)

    properties: dict[Iri, PropertyKind] = {}
    for prop in prop_order:
        types = prop_types.get(prop, frozenset())
        ranges = range_of.get(prop, set())
        if OWL_DATATYPE_PROPERTY in types:
            kind = PropertyKind.DATATYPE
        elif OWL_OBJECT_PROPERTY in types:
            kind = PropertyKind.OBJECT
        elif any(r.text.startswith(XSD_NS) for r in ranges):
            kind = PropertyKind.DATATYPE
        elif any(r in classes for r in ranges):
            kind = PropertyKind.OBJECT
        else:
            kind = PropertyKind.UNKNOWN
        properties[prop] = kind

    functional = frozenset(p for p, types in prop_types.items()
                           if OWL_FUNCTIONAL_PROPERTY in types)
    inverse_functional = frozenset(p for p, types in prop_types.items()
                                   if OWL_INVERSE_FUNCTIONAL_PROPERTY in types)

    ancestors = _transitive_parents(subclass_of)

    # Disjointness propagates down the class hierarchy: if A and B are
    # disjoint, every (transitive) subclass of A is disjoint with B and with
    # every subclass of B.
    descendants: dict[Iri, set[Iri]] = {}
    for child, parents in ancestors.items():
        for parent in parents:
            descendants.setdefault(parent, set()).add(child)
    disjoint_pairs: set[frozenset[Iri]] = set()
    for pair in declared_disjoint:
        a, b = tuple(pair)
        left = {a} | descendants.get(a, set())
        right = {b} | descendants.get(b, set())
        for x in left:
            for y in right:
                if x != y:
                    disjoint_pairs.add(frozenset((x, y)))

    return SchemaIndex(
        classes=frozenset(classes),
        properties=properties,
        domain_of={p: frozenset(v) for p, v in domain_of.items()},
        range_of={p: frozenset(v) for p, v in range_of.items()},
        functional=functional,
        inverse_functional=inverse_functional,
        disjoint_pairs=frozenset(disjoint_pairs),
        subclass_of={c: frozenset(v) for c, v in subclass_of.items()},
        ancestors=ancestors,
    )


def build_instance_index(dataset: Dataset,
                         builtin_namespaces: tuple[str, ...] = BUILTIN_NAMESPACES) -> InstanceIndex:
    """Collect instance memberships and per-predicate triple groups.

    Membership requires an IRI subject and a non-builtin IRI class; blank
    nodes are never instances. ``type_object_triples`` covers every rdf:type
    triple with an IRI object, builtin or not.
    """
    classes_of: dict[Iri, set[Iri]] = {}
    members_of: dict[Iri, set[Iri]] = {}
    triples_by_predicate: dict[Iri, list[int]] = {}
    type_object_triples: dict[Iri, list[int]] = {}

    for idx, t in enumerate(dataset.triples):
        triples_by_predicate.setdefault(t.predicate, []).append(idx)
        if t.predicate == RDF_TYPE and isinstance(t.object, Iri):
            type_object_triples.setdefault(t.object, []).append(idx)
            if isinstance(t.subject, Iri) and not is_builtin(t.object, builtin_namespaces):
                classes_of.setdefault(t.subject, set()).add(t.object)
                members_of.setdefault(t.object, set()).add(t.subject)

    return InstanceIndex(
        instances=frozenset(classes_of),
        classes_of={i: frozenset(v) for i, v in classes_of.items()},
        members_of={c: frozenset(v) for c, v in members_of.items()},
        triples_by_predicate={p: tuple(v) for p, v in triples_by_predicate.items()},
        type_object_triples={c: tuple(v) for c, v in type_object_triples.items()},
    )
