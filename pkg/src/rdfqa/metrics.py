"""The ten dataset quality metrics and the assessment orchestrator.

Each metric is a pure function over the immutable dataset/index structures
and reports an undesirable-outcome ratio in [0, 1]: a numerator of offending
items, a denominator of total outcomes, and a sample of offenders (triple
indices or IRIs). A zero denominator never raises; it yields value 0 and a
DegenerateDenominator flag on the report.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .core.indexing import (
    InstanceIndex,
    PropertyKind,
    SchemaIndex,
    build_instance_index,
    build_schema_index,
)
from .core.model import (
    BUILTIN_NAMESPACES,
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
    XSD_NS,
    XSD_STRING,
    BlankNode,
    Dataset,
    Iri,
    Literal,
    is_builtin,
)

__version__ = "0.1.0"

DEFAULT_OFFENDER_CAP = 50


class MetricId(str, enum.Enum):
    """The ten metrics, keyed M1..M10 in reports, CSV columns and the CLI."""

    MISSING_VALUES = "M1"
    OUT_OF_RANGE = "M2"
    MISSPELLED_VALUES = "M3"
    UNDEFINED_TERMS = "M4"
    DISJOINT_MEMBERSHIP = "M5"
    INCONSISTENT_VALUES = "M6"
    FUNCTIONAL_CONFLICTS = "M7"
    INVERSE_FUNCTIONAL_CONFLICTS = "M8"
    IMPROPER_DATATYPE = "M9"
    SIMILAR_CLASSES = "M10"

    def __str__(self):
        return self.value


ALL_METRICS: tuple[MetricId, ...] = tuple(MetricId)

_METRIC_BY_KEY = {m.value: m for m in MetricId}


def metric_id(key: str) -> MetricId:
    """Resolve 'M1'..'M10' (case-insensitive) to a MetricId."""
    m = _METRIC_BY_KEY.get(key.upper().strip())
    if m is None:
        raise ValueError(f"unknown metric id: {key!r}")
    return m


@dataclass(frozen=True)
class MetricValue:
    id: MetricId
    value: float
    numerator: int
    denominator: int
    clamped: bool = False
    #: sample of offending items: triple indices (int) or IRIs (str)
    offenders: tuple[int | str, ...] = ()

    @property
    def degenerate(self) -> bool:
        return self.denominator == 0


@dataclass(frozen=True)
class ReportCounts:
    triples: int
    instances: int
    classes: int
    properties: int


@dataclass(frozen=True)
class MetricReport:
    dataset_id: str
    counts: ReportCounts
    metrics: Mapping[MetricId, MetricValue]
    dictionary_id: str | None
    tool_version: str
    flags: tuple[str, ...]


# ---------------------------------------------------------------------------
# Dictionary


@dataclass(frozen=True)
class Dictionary:
    """A case-insensitive word list for the misspelling metric."""

    id: str
    words: frozenset[str]

    def __contains__(self, token: str) -> bool:
        return token.lower() in self.words

    def __len__(self):
        return len(self.words)


def load_dictionary(path: str | Path, dictionary_id: str | None = None) -> Dictionary:
    """Load a word list: UTF-8, one word per line, '#' lines are comments."""
    path = Path(path)
    words = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(line.lower())
    return Dictionary(id=dictionary_id or path.stem, words=frozenset(words))


def default_dictionary() -> Dictionary:
    """The bundled English word list."""
    from importlib.resources import files

    path = files("rdfqa.data") / "words.txt"
    words = {line.strip().lower() for line in path.read_text(encoding="utf-8").splitlines()
             if line.strip() and not line.startswith("#")}
    return Dictionary(id="builtin-en", words=frozenset(words))


# tokens are maximal alphanumeric runs; digit-bearing tokens are exempt from
# spell checking, pure-alphabetic tokens of length >= 2 are checked
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def checkable_text(term) -> str | None:
    """Text of a spell-checkable literal (plain, English-tagged or xsd:string)."""
    if not isinstance(term, Literal):
        return None
    if term.datatype is not None and term.datatype != XSD_STRING:
        return None
    if term.language is not None:
        lang = term.language.lower()
        if lang != "en" and not lang.startswith("en-"):
            return None
    return term.lexical


def alpha_tokens(text: str):
    """Spell-checkable tokens: alphabetic, length >= 2, no digits."""
    for token in _TOKEN_RE.findall(text):
        if any(c.isdigit() for c in token):
            continue
        if len(token) >= 2 and token.isalpha():
            yield token


def has_unknown_token(text: str, dictionary: Dictionary) -> bool:
    return any(token.lower() not in dictionary.words for token in alpha_tokens(text))


# ---------------------------------------------------------------------------
# Lexical validity per XSD datatype (used by the out-of-range metric)


_LEXICAL_RES = {
    XSD_INTEGER: re.compile(r"[+-]?[0-9]+\Z"),
    XSD_DECIMAL: re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)\Z"),
    XSD_DOUBLE: re.compile(
        r"(?:[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?|[+-]?INF|NaN)\Z"),
    XSD_BOOLEAN: re.compile(r"(?:true|false|1|0)\Z"),
    XSD_GYEAR: re.compile(r"-?[0-9]{4,}(?:Z|[+-](?:0[0-9]|1[0-4]):[0-5][0-9])?\Z"),
}

_DATE_RE = re.compile(
    r"(-?)([0-9]{4,})-([0-9]{2})-([0-9]{2})(?:Z|[+-](?:0[0-9]|1[0-4]):[0-5][0-9])?\Z")
_DATETIME_RE = re.compile(
    r"(-?)([0-9]{4,})-([0-9]{2})-([0-9]{2})"
    r"T([0-9]{2}):([0-9]{2}):([0-9]{2})(?:\.[0-9]+)?"
    r"(?:Z|[+-](?:0[0-9]|1[0-4]):[0-5][0-9])?\Z")

_MONTH_DAYS = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


def _ymd_ok(year: str, month: str, day: str) -> bool:
    m, d = int(month), int(day)
    if not 1 <= m <= 12:
        return False
    y = int(year)
    leap = y % 4 == 0 and (y % 100 != 0 or y % 400 == 0)
    limit = 29 if (m == 2 and leap) else _MONTH_DAYS[m - 1]
    return 1 <= d <= limit


def _valid_date(lexical: str) -> bool:
    m = _DATE_RE.match(lexical)
    return bool(m) and _ymd_ok(m.group(2), m.group(3), m.group(4))


def _valid_datetime(lexical: str) -> bool:
    m = _DATETIME_RE.match(lexical)
    if not m or not _ymd_ok(m.group(2), m.group(3), m.group(4)):
        return False
    return int(m.group(5)) <= 23 and int(m.group(6)) <= 59 and int(m.group(7)) <= 59


def lexical_valid(lexical: str, datatype: Iri) -> bool | None:
    """True/False for the checkable XSD datatypes, None for unknown ones."""
    if datatype == XSD_STRING:
        return True
    if datatype == XSD_DATE:
        return _valid_date(lexical)
    if datatype == XSD_DATETIME:
        return _valid_datetime(lexical)
    pattern = _LEXICAL_RES.get(datatype)
    if pattern is None:
        return None
    return pattern.match(lexical) is not None


CHECKABLE_DATATYPES = frozenset({
    XSD_INTEGER, XSD_DECIMAL, XSD_DOUBLE, XSD_BOOLEAN,
    XSD_DATE, XSD_DATETIME, XSD_GYEAR, XSD_STRING,
})


# ---------------------------------------------------------------------------
# Metric implementations


def _ratio_value(mid: MetricId, num: int, den: int,
                 offenders: Sequence[int | str]) -> MetricValue:
    value = num / den if den > 0 else 0.0
    clamped = False
    if value > 1.0:
        value = 1.0
        clamped = True
    return MetricValue(id=mid, value=value, numerator=num, denominator=den,
                       clamped=clamped, offenders=tuple(offenders))


def m1_missing_property_values(schema: SchemaIndex, instances: InstanceIndex,
                               offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """1 - (usage of declared properties) / (|Cls| * |Prp|), floored at 0.

    Offenders are declared properties that are never used as a predicate.
    """
    usage = sum(len(instances.triples_by_predicate.get(p, ()))
                for p in schema.properties)
    den = len(schema.classes) * len(schema.properties)
    offenders = [p.text for p in schema.properties
                 if not instances.triples_by_predicate.get(p)][:offender_cap]
    if den == 0:
        return MetricValue(MetricId.MISSING_VALUES, 0.0, usage, den,
                           offenders=tuple(offenders))
    value = 1.0 - usage / den
    clamped = value < 0.0
    return MetricValue(MetricId.MISSING_VALUES, 0.0 if clamped else value,
                       usage, den, clamped=clamped, offenders=tuple(offenders))


def m2_out_of_range_values(dataset: Dataset, schema: SchemaIndex,
                           instances: InstanceIndex,
                           offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Triples whose object falls outside the predicate's declared range.

    Object properties: the object must carry at least one asserted class that
    is, or transitively specializes, a declared class range. Datatype
    properties: the literal's lexical form must be valid for some checkable
    datatype range; unknown datatypes are never flagged.
    """
    class_ranges: dict[Iri, frozenset[Iri]] = {}
    dt_ranges: dict[Iri, tuple[Iri, ...]] = {}
    for prop, kind in schema.properties.items():
        ranges = schema.range_of.get(prop, frozenset())
        if kind is PropertyKind.OBJECT:
            class_ranges[prop] = frozenset(r for r in ranges if r in schema.classes)
        elif kind is PropertyKind.DATATYPE:
            dt_ranges[prop] = tuple(r for r in sorted(ranges, key=lambda i: i.text)
                                    if r in CHECKABLE_DATATYPES)

    num = 0
    offenders = []
    for idx, t in enumerate(dataset.triples):
        flagged = False
        ranges = class_ranges.get(t.predicate)
        if ranges:
            if isinstance(t.object, Iri):
                asserted = instances.classes_of.get(t.object)
                if asserted:
                    ok = any(c in ranges or ranges & schema.superclasses(c)
                             for c in asserted)
                    flagged = not ok
        else:
            dts = dt_ranges.get(t.predicate)
            if dts and isinstance(t.object, Literal):
                flagged = not any(lexical_valid(t.object.lexical, d) for d in dts)
        if flagged:
            num += 1
            if len(offenders) < offender_cap:
                offenders.append(idx)
    return _ratio_value(MetricId.OUT_OF_RANGE, num, len(dataset.triples), offenders)


def m3_misspelled_values(dataset: Dataset, dictionary: Dictionary,
                         offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Triples whose checkable literal object carries a token not in the dictionary."""
    num = 0
    offenders = []
    for idx, t in enumerate(dataset.triples):
        text = checkable_text(t.object)
        if text is not None and has_unknown_token(text, dictionary):
            num += 1
            if len(offenders) < offender_cap:
                offenders.append(idx)
    return _ratio_value(MetricId.MISSPELLED_VALUES, num, len(dataset.triples), offenders)


def m4_undefined_terms(dataset: Dataset, schema: SchemaIndex,
                       offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Usage of classes (as rdf:type objects) or properties never declared."""
    num = 0
    offenders = []
    for idx, t in enumerate(dataset.triples):
        hit = False
        if t.predicate == RDF_TYPE:
            if (isinstance(t.object, Iri) and not is_builtin(t.object)
                    and t.object not in schema.classes):
                hit = True
        elif not is_builtin(t.predicate) and t.predicate not in schema.properties:
            hit = True
        if hit:
            num += 1
            if len(offenders) < offender_cap:
                offenders.append(idx)
    return _ratio_value(MetricId.UNDEFINED_TERMS, num, len(dataset.triples), offenders)


def m5_disjoint_membership(schema: SchemaIndex, instances: InstanceIndex,
                           offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Instances asserted into two classes declared (or derived) disjoint.

    Each instance counts once no matter how many disjoint pairs it violates.
    """
    num = 0
    offenders = []
    if schema.disjoint_pairs:
        for inst in sorted(instances.instances, key=lambda i: i.text):
            asserted = sorted(instances.classes_of[inst], key=lambda c: c.text)
            violated = False
            for i in range(len(asserted)):
                for j in range(i + 1, len(asserted)):
                    if frozenset((asserted[i], asserted[j])) in schema.disjoint_pairs:
                        violated = True
                        break
                if violated:
                    break
            if violated:
                num += 1
                if len(offenders) < offender_cap:
                    offenders.append(inst.text)
    return _ratio_value(MetricId.DISJOINT_MEMBERSHIP, num,
                        len(instances.instances), offenders)


def _term_type_key(term):
    if isinstance(term, Iri):
        return ("iri",)
    if isinstance(term, BlankNode):
        return ("bnode",)
    return ("literal", term.datatype.text if term.datatype else None)


def m6_inconsistent_values(dataset: Dataset,
                           offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Same subject and predicate, objects of conflicting term types.

    Objects conflict when their term types differ (IRI vs literal, or
    differing literal datatypes); a conflicting pair contributes exactly 1.
    """
    groups: dict[tuple, list[int]] = {}
    for idx, t in enumerate(dataset.triples):
        if t.predicate != RDF_TYPE:
            groups.setdefault((t.subject, t.predicate), []).append(idx)
    num = 0
    offenders = []
    for indices in groups.values():
        if len(indices) < 2:
            continue
        keys = {_term_type_key(dataset.triples[i].object) for i in indices}
        if len(keys) < 2:
            continue
        # with two or more type keys present, every object in the group
        # conflicts with at least one other, so all of them participate
        num += len(indices) - 1
        for i in indices:
            if len(offenders) < offender_cap:
                offenders.append(i)
    return _ratio_value(MetricId.INCONSISTENT_VALUES, num,
                        len(dataset.triples), offenders)


def m7_functional_conflicts(dataset: Dataset, schema: SchemaIndex,
                            offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Functional properties holding several distinct values for one subject."""
    groups: dict[tuple, dict] = {}
    group_triples: dict[tuple, list[int]] = {}
    for idx, t in enumerate(dataset.triples):
        if t.predicate in schema.functional:
            key = (t.subject, t.predicate)
            groups.setdefault(key, {})[t.object] = None
            group_triples.setdefault(key, []).append(idx)
    num = 0
    offenders = []
    for key, objects in groups.items():
        k = len(objects)
        if k > 1:
            num += k - 1
            for i in group_triples[key]:
                if len(offenders) < offender_cap:
                    offenders.append(i)
    return _ratio_value(MetricId.FUNCTIONAL_CONFLICTS, num,
                        len(dataset.triples), offenders)


def m8_inverse_functional_conflicts(dataset: Dataset, schema: SchemaIndex,
                                    offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Inverse-functional properties sharing one value across subjects.

    Empty-string literal objects form a single shared group per property (the
    void-value pathology), whatever their datatype or language tag.
    """
    groups: dict[tuple, dict] = {}
    group_triples: dict[tuple, list[int]] = {}
    for idx, t in enumerate(dataset.triples):
        if t.predicate in schema.inverse_functional:
            o = t.object
            void = isinstance(o, Literal) and o.lexical == ""
            key = (t.predicate, "") if void else (t.predicate, o)
            groups.setdefault(key, {})[t.subject] = None
            group_triples.setdefault(key, []).append(idx)
    num = 0
    offenders = []
    for key, subjects in groups.items():
        k = len(subjects)
        if k > 1:
            num += k - 1
            for i in group_triples[key]:
                if len(offenders) < offender_cap:
                    offenders.append(i)
    return _ratio_value(MetricId.INVERSE_FUNCTIONAL_CONFLICTS, num,
                        len(dataset.triples), offenders)


def m9_improper_datatype(dataset: Dataset, schema: SchemaIndex,
                         offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Literal datatype tags that differ from the declared datatype range.

    Unlike the out-of-range metric this compares the annotation, not the
    lexical value. Untyped (plain or language-tagged) literals are flagged
    only when the declared range is not xsd:string.
    """
    dt_ranges: dict[Iri, frozenset[Iri]] = {}
    for prop, kind in schema.properties.items():
        if kind is PropertyKind.DATATYPE:
            ranges = frozenset(r for r in schema.range_of.get(prop, frozenset())
                               if r.text.startswith(XSD_NS))
            if ranges:
                dt_ranges[prop] = ranges
    num = 0
    offenders = []
    for idx, t in enumerate(dataset.triples):
        ranges = dt_ranges.get(t.predicate)
        if not ranges or not isinstance(t.object, Literal):
            continue
        tag = t.object.datatype
        if tag is None:
            flagged = XSD_STRING not in ranges
        else:
            flagged = tag not in ranges
        if flagged:
            num += 1
            if len(offenders) < offender_cap:
                offenders.append(idx)
    return _ratio_value(MetricId.IMPROPER_DATATYPE, num,
                        len(dataset.triples), offenders)


def m10_similar_classes(schema: SchemaIndex, instances: InstanceIndex,
                        offender_cap: int = DEFAULT_OFFENDER_CAP) -> MetricValue:
    """Distinct, non-subclass-related classes over identical instance sets.

    Both members of a similar pair count; classes without instances never do.
    """
    by_members: dict[frozenset[Iri], list[Iri]] = {}
    for cls in sorted(schema.classes, key=lambda c: c.text):
        members = instances.members_of.get(cls)
        if members:
            by_members.setdefault(members, []).append(cls)
    num = 0
    offenders = []
    for members, cohort in by_members.items():
        if len(cohort) < 2:
            continue
        for cls in cohort:
            similar = any(
                other != cls
                and not schema.is_transitive_subclass(cls, other)
                and not schema.is_transitive_subclass(other, cls)
                for other in cohort
            )
            if similar:
                num += 1
                if len(offenders) < offender_cap:
                    offenders.append(cls.text)
    return _ratio_value(MetricId.SIMILAR_CLASSES, num, len(schema.classes), offenders)


# ---------------------------------------------------------------------------
# Orchestration


def assess(dataset: Dataset, dictionary: Dictionary | None = None,
           selection: Iterable[MetricId] | None = None,
           offender_cap: int = DEFAULT_OFFENDER_CAP,
           builtin_namespaces: tuple[str, ...] = BUILTIN_NAMESPACES) -> MetricReport:
    """Index the dataset once and evaluate the selected metrics (default: all).

    Metric-level degeneracies become report flags, never errors; two
    assessments of the same bytes produce identical reports.
    """
    selected = tuple(selection) if selection is not None else ALL_METRICS
    schema = build_schema_index(dataset, builtin_namespaces)
    instances = build_instance_index(dataset, builtin_namespaces)
    if dictionary is None:
        dictionary = Dictionary(id="(none)", words=frozenset())

    evaluators = {
        MetricId.MISSING_VALUES: lambda: m1_missing_property_values(schema, instances, offender_cap),
        MetricId.OUT_OF_RANGE: lambda: m2_out_of_range_values(dataset, schema, instances, offender_cap),
        MetricId.MISSPELLED_VALUES: lambda: m3_misspelled_values(dataset, dictionary, offender_cap),
        MetricId.UNDEFINED_TERMS: lambda: m4_undefined_terms(dataset, schema, offender_cap),
        MetricId.DISJOINT_MEMBERSHIP: lambda: m5_disjoint_membership(schema, instances, offender_cap),
        MetricId.INCONSISTENT_VALUES: lambda: m6_inconsistent_values(dataset, offender_cap),
        MetricId.FUNCTIONAL_CONFLICTS: lambda: m7_functional_conflicts(dataset, schema, offender_cap),
        MetricId.INVERSE_FUNCTIONAL_CONFLICTS: lambda: m8_inverse_functional_conflicts(dataset, schema, offender_cap),
        MetricId.IMPROPER_DATATYPE: lambda: m9_improper_datatype(dataset, schema, offender_cap),
        MetricId.SIMILAR_CLASSES: lambda: m10_similar_classes(schema, instances, offender_cap),
    }

    flags = []
    if dataset.duplicate_count:
        flags.append(f"DuplicateTriplesDropped: {dataset.duplicate_count}")
    if MetricId.MISSPELLED_VALUES in selected and not dictionary.words:
        flags.append("EmptyDictionary: every checkable token will be flagged")

    metrics: dict[MetricId, MetricValue] = {}
    for mid in ALL_METRICS:
        if mid in selected:
            mv = evaluators[mid]()
            metrics[mid] = mv
            if mv.degenerate:
                flags.append(f"DegenerateDenominator: {mid.value}")

    return MetricReport(
        dataset_id=dataset.id,
        counts=ReportCounts(
            triples=len(dataset.triples),
            instances=len(instances.instances),
            classes=len(schema.classes),
            properties=len(schema.properties),
        ),
        metrics=metrics,
        dictionary_id=dictionary.id if MetricId.MISSPELLED_VALUES in selected else None,
        tool_version=__version__,
        flags=tuple(flags),
    )
