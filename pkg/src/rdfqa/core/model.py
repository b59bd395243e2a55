"""Immutable RDF data model: terms, triples and datasets.

A dataset keeps its triples in document order and never contains exact
duplicates; both properties are load-bearing for deterministic reports and
byte-stable serialization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

#: Namespaces treated as built-in vocabulary. IRIs under these prefixes are
#: never reported as declared classes or as instances.
BUILTIN_NAMESPACES: tuple[str, ...] = (RDF_NS, RDFS_NS, OWL_NS, XSD_NS)


@dataclass(frozen=True, slots=True)
class Iri:
    """An absolute IRI."""

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("IRI must be non-empty")

    def __str__(self):
        return self.text


@dataclass(frozen=True, slots=True)
class BlankNode:
    label: str

    def __str__(self):
        return "_:" + self.label


@dataclass(frozen=True, slots=True)
class Literal:
    """An RDF literal.

    At most one of ``datatype`` and ``language`` may be present; a literal
    with neither is a plain literal.
    """

    lexical: str
    datatype: Iri | None = None
    language: str | None = None

    def __post_init__(self):
        if self.datatype is not None and self.language is not None:
            raise ValueError("literal cannot carry both a datatype and a language tag")

    def __str__(self):
        if self.datatype is not None:
            return f'"{self.lexical}"^^<{self.datatype.text}>'
        if self.language is not None:
            return f'"{self.lexical}"@{self.language}'
        return f'"{self.lexical}"'


Term = Union[Iri, BlankNode, Literal]
SubjectTerm = Union[Iri, BlankNode]


@dataclass(frozen=True, slots=True)
class Triple:
    subject: SubjectTerm
    predicate: Iri
    object: Term

    def __str__(self):
        s = f"<{self.subject.text}>" if isinstance(self.subject, Iri) else str(self.subject)
        o = f"<{self.object.text}>" if isinstance(self.object, Iri) else str(self.object)
        return f"{s} <{self.predicate.text}> {o} ."


@dataclass(frozen=True)
class Dataset:
    """A parsed RDF document: a duplicate-free, ordered sequence of triples."""

    id: str
    triples: tuple[Triple, ...]
    source_format: str = "ntriples"
    duplicate_count: int = 0

    def __len__(self):
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)


def make_dataset(dataset_id: str, triples: Iterable[Triple],
                 source_format: str = "ntriples") -> Dataset:
    """Build a Dataset, dropping exact duplicates and counting them."""
    seen = set()
    kept = []
    dup = 0
    for t in triples:
        if t in seen:
            dup += 1
        else:
            seen.add(t)
            kept.append(t)
    return Dataset(id=dataset_id, triples=tuple(kept),
                   source_format=source_format, duplicate_count=dup)


def is_builtin(iri: Iri, namespaces: tuple[str, ...] = BUILTIN_NAMESPACES) -> bool:
    return iri.text.startswith(namespaces)


# Vocabulary terms consumed by the indexer and the contaminator.
RDF_TYPE = Iri(RDF_NS + "type")
RDF_PROPERTY = Iri(RDF_NS + "Property")
RDF_FIRST = Iri(RDF_NS + "first")
RDF_REST = Iri(RDF_NS + "rest")
RDF_NIL = Iri(RDF_NS + "nil")
RDFS_CLASS = Iri(RDFS_NS + "Class")
RDFS_SUBCLASSOF = Iri(RDFS_NS + "subClassOf")
RDFS_DOMAIN = Iri(RDFS_NS + "domain")
RDFS_RANGE = Iri(RDFS_NS + "range")
OWL_CLASS = Iri(OWL_NS + "Class")
OWL_OBJECT_PROPERTY = Iri(OWL_NS + "ObjectProperty")
OWL_DATATYPE_PROPERTY = Iri(OWL_NS + "DatatypeProperty")
OWL_FUNCTIONAL_PROPERTY = Iri(OWL_NS + "FunctionalProperty")
OWL_INVERSE_FUNCTIONAL_PROPERTY = Iri(OWL_NS + "InverseFunctionalProperty")
OWL_DISJOINT_WITH = Iri(OWL_NS + "disjointWith")
OWL_COMPLEMENT_OF = Iri(OWL_NS + "complementOf")

XSD_STRING = Iri(XSD_NS + "string")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
XSD_DOUBLE = Iri(XSD_NS + "double")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")
XSD_DATE = Iri(XSD_NS + "date")
XSD_DATETIME = Iri(XSD_NS + "dateTime")
XSD_GYEAR = Iri(XSD_NS + "gYear")

#: rdf:type objects that mark a triple as a class or property declaration.
DECLARATION_TYPES = frozenset({
    RDFS_CLASS, OWL_CLASS, RDF_PROPERTY, OWL_OBJECT_PROPERTY,
    OWL_DATATYPE_PROPERTY, OWL_FUNCTIONAL_PROPERTY,
    OWL_INVERSE_FUNCTIONAL_PROPERTY,
})

#: Predicates whose triples belong to the schema rather than the instance data.
AXIOM_PREDICATES = frozenset({
    RDFS_SUBCLASSOF, RDFS_DOMAIN, RDFS_RANGE, OWL_DISJOINT_WITH, OWL_COMPLEMENT_OF,
})


def is_declaration_triple(t: Triple) -> bool:
    """True for schema-level triples (declarations and axioms)."""
    if t.predicate in AXIOM_PREDICATES:
        return True
    return t.predicate == RDF_TYPE and isinstance(t.object, Iri) and t.object in DECLARATION_TYPES
