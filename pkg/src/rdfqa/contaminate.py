"""Deterministic quality-defect injection.

Fourteen heuristics (H1..H14), each mapped to the metric it is meant to
raise, are applied in fixed order with a single seeded random stream, so the
same dataset, plan and seed always produce byte-identical output. Every edit
is recorded in a manifest; replaying the manifest against the original
dataset reproduces the contaminated dataset exactly. When a heuristic's
preconditions cannot be met, the shortfall is a warning, never an error.

Injected terms live under the reserved ``contam:`` IRI scheme so they are
recognizable and can never collide with source vocabulary.

Heuristics are designed to hit only their own metric, but defects interact;
measure one heuristic at a time when studying metric response. Documented
cross-talk: every added usage triple nudges the missing-values usage sum;
H2/H7 shrink the triple/property totals that several denominators use; and
H2, H6 and H7 can strip the type assertion, class declaration or subclass
link an object relied on to satisfy its range check, lifting the
out-of-range count. In combined plans, later heuristics may also edit
earlier heuristics' output.
"""

from __future__ import annotations

import enum
import json
import string
from dataclasses import dataclass
from pathlib import Path
from random import Random
from typing import Mapping

from .core.indexing import PropertyKind, build_instance_index, build_schema_index
from .core.model import (
    OWL_CLASS,
    OWL_DISJOINT_WITH,
    RDF_PROPERTY,
    RDF_TYPE,
    RDFS_DOMAIN,
    RDFS_RANGE,
    RDFS_SUBCLASSOF,
    OWL_COMPLEMENT_OF,
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DATETIME,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_GYEAR,
    XSD_INTEGER,
    XSD_NS,
    XSD_STRING,
    DECLARATION_TYPES,
    Dataset,
    Iri,
    Literal,
    Triple,
    is_declaration_triple,
    make_dataset,
)
from .core.parsing import parse_ntriples, triple_to_ntriples
from .metrics import Dictionary, MetricId, alpha_tokens, default_dictionary, has_unknown_token


class HeuristicId(str, enum.Enum):
    H1 = "H1"
    H2 = "H2"
    H3 = "H3"
    H4 = "H4"
    H5 = "H5"
    H6 = "H6"
    H7 = "H7"
    H8 = "H8"
    H9 = "H9"
    H10 = "H10"
    H11 = "H11"
    H12 = "H12"
    H13 = "H13"
    H14 = "H14"

    def __str__(self):
        return self.value


ALL_HEURISTICS: tuple[HeuristicId, ...] = tuple(HeuristicId)

#: which metric each heuristic is designed to raise
HEURISTIC_TARGETS: dict[HeuristicId, MetricId] = {
    HeuristicId.H1: MetricId.MISSING_VALUES,
    HeuristicId.H2: MetricId.MISSING_VALUES,
    HeuristicId.H3: MetricId.OUT_OF_RANGE,
    HeuristicId.H4: MetricId.MISSPELLED_VALUES,
    HeuristicId.H5: MetricId.MISSPELLED_VALUES,
    HeuristicId.H6: MetricId.UNDEFINED_TERMS,
    HeuristicId.H7: MetricId.UNDEFINED_TERMS,
    HeuristicId.H8: MetricId.DISJOINT_MEMBERSHIP,
    HeuristicId.H9: MetricId.DISJOINT_MEMBERSHIP,
    HeuristicId.H10: MetricId.INCONSISTENT_VALUES,
    HeuristicId.H11: MetricId.FUNCTIONAL_CONFLICTS,
    HeuristicId.H12: MetricId.INVERSE_FUNCTIONAL_CONFLICTS,
    HeuristicId.H13: MetricId.IMPROPER_DATATYPE,
    HeuristicId.H14: MetricId.SIMILAR_CLASSES,
}


class EditAction(str, enum.Enum):
    ADD_TRIPLE = "add_triple"
    REMOVE_TRIPLE = "remove_triple"
    REWRITE_TRIPLE = "rewrite_triple"
    ADD_AXIOM = "add_axiom"
    REMOVE_AXIOM = "remove_axiom"


@dataclass(frozen=True)
class Edit:
    heuristic: HeuristicId
    action: EditAction
    before: Triple | None = None
    after: Triple | None = None


@dataclass(frozen=True)
class ContaminationPlan:
    intensities: Mapping[HeuristicId, int]
    seed: int
    dataset_id: str = ""

    def intensity(self, h: HeuristicId) -> int:
        return int(self.intensities.get(h, 0))


@dataclass(frozen=True)
class ContaminationManifest:
    plan: ContaminationPlan
    edits: tuple[Edit, ...]
    achieved: Mapping[HeuristicId, int]
    warnings: tuple[str, ...] = ()


class ReplayError(Exception):
    pass


#: datatypes whose lexical space admits generated-invalid values
_FAKEABLE = (XSD_INTEGER, XSD_DECIMAL, XSD_DOUBLE, XSD_BOOLEAN,
             XSD_DATE, XSD_DATETIME, XSD_GYEAR)
_CLASS_DECL_OBJECTS = frozenset({Iri("http://www.w3.org/2000/01/rdf-schema#Class"), OWL_CLASS})
_CLASS_AXIOM_PREDICATES = frozenset({RDFS_SUBCLASSOF, OWL_DISJOINT_WITH, OWL_COMPLEMENT_OF})


def _no_checkable_alpha(text: str) -> bool:
    return next(alpha_tokens(text), None) is None


class _Contaminator:
    def __init__(self, dataset: Dataset, plan: ContaminationPlan, dictionary: Dictionary):
        self.dataset_id = dataset.id
        self.plan = plan
        self.dictionary = dictionary
        self.rng = Random(plan.seed)
        # slot list with None holes plus a position map keeps value-based
        # edits O(1) and makes the mutation engine identical to replay
        self.slots: list[Triple | None] = list(dataset.triples)
        self.pos: dict[Triple, int] = {t: i for i, t in enumerate(dataset.triples)}
        self.edits: list[Edit] = []
        self.achieved: dict[HeuristicId, int] = {}
        self.warnings: list[str] = []
        self.seen_iris = {term.text for t in dataset.triples
                          for term in (t.subject, t.predicate, t.object)
                          if isinstance(term, Iri)}
        self.fresh_counter = 0
        self.value_counter = 0

    # -- edit primitives

    def current(self) -> list[Triple]:
        return [t for t in self.slots if t is not None]

    def add(self, h: HeuristicId, t: Triple, axiom: bool = False):
        self.pos[t] = len(self.slots)
        self.slots.append(t)
        action = EditAction.ADD_AXIOM if axiom else EditAction.ADD_TRIPLE
        self.edits.append(Edit(h, action, after=t))

    def remove(self, h: HeuristicId, t: Triple, axiom: bool = False):
        i = self.pos.pop(t)
        self.slots[i] = None
        action = EditAction.REMOVE_AXIOM if axiom else EditAction.REMOVE_TRIPLE
        self.edits.append(Edit(h, action, before=t))

    def rewrite(self, h: HeuristicId, old: Triple, new: Triple):
        i = self.pos.pop(old)
        self.slots[i] = new
        self.pos[new] = i
        self.edits.append(Edit(h, EditAction.REWRITE_TRIPLE, before=old, after=new))

    def fresh_iri(self, tag: str) -> Iri:
        while True:
            text = f"contam:{tag}-{self.fresh_counter}"
            self.fresh_counter += 1
            if text not in self.seen_iris:
                self.seen_iris.add(text)
                return Iri(text)

    def record(self, h: HeuristicId, requested: int, achieved: int, why: str = ""):
        self.achieved[h] = achieved
        if achieved < requested:
            reason = f" ({why})" if why else ""
            self.warnings.append(f"{h.value}: requested {requested}, achieved {achieved}{reason}")

    def indices(self):
        d = make_dataset(self.dataset_id, self.current())
        return d, build_schema_index(d), build_instance_index(d)

    # -- heuristics, in application order

    def h1_fresh_properties(self, n: int):
        for _ in range(n):
            prop = self.fresh_iri("h1-property")
            self.add(HeuristicId.H1, Triple(prop, RDF_TYPE, RDF_PROPERTY), axiom=True)
        self.record(HeuristicId.H1, n, n)

    def h2_remove_triples(self, n: int):
        candidates = [t for t in self.current() if not is_declaration_triple(t)]
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        for t in chosen:
            self.remove(HeuristicId.H2, t)
        self.record(HeuristicId.H2, n, len(chosen), "not enough removable triples")

    def h3_out_of_range(self, n: int):
        _, schema, _ = self.indices()
        candidates = []
        for t in self.current():
            if schema.properties.get(t.predicate) is not PropertyKind.DATATYPE:
                continue
            if not isinstance(t.object, Literal):
                continue
            targets = [r for r in _FAKEABLE if r in schema.range_of.get(t.predicate, ())]
            if targets:
                candidates.append((t, targets[0]))
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        done = 0
        for t, target in chosen:
            lex = self._fresh_plain_value()
            new = Triple(t.subject, t.predicate, Literal(lex, datatype=target))
            if new in self.pos:
                continue
            self.rewrite(HeuristicId.H3, t, new)
            done += 1
        self.record(HeuristicId.H3, n, done, "no rewritable datatype-property triples")

    def _fresh_plain_value(self) -> str:
        # digit-bearing token: invalid for every fakeable datatype, and the
        # spell checker skips it
        self.value_counter += 1
        return f"contamvalue{self.value_counter}"

    def _spellable_candidates(self, schema):
        out = []
        for t in self.current():
            if not isinstance(t.object, Literal):
                continue
            lex = t.object.lexical
            if t.object.datatype is not None and t.object.datatype != XSD_STRING:
                continue
            if t.object.language is not None:
                lang = t.object.language.lower()
                if lang != "en" and not lang.startswith("en-"):
                    continue
            if has_unknown_token(lex, self.dictionary):
                continue
            if next(alpha_tokens(lex), None) is None:
                continue
            ranges = schema.range_of.get(t.predicate, ())
            if any(r in _FAKEABLE for r in ranges):
                continue
            out.append(t)
        return out

    def h4_mutate_literals(self, n: int):
        _, schema, _ = self.indices()
        candidates = self._spellable_candidates(schema)
        self.rng.shuffle(candidates)
        done = 0
        for t in candidates:
            if done == n:
                break
            new_lex = self._mutate_lexical(t.object.lexical)
            if new_lex is None:
                continue
            new = Triple(t.subject, t.predicate,
                         Literal(new_lex, datatype=t.object.datatype,
                                 language=t.object.language))
            if new in self.pos:
                continue
            self.rewrite(HeuristicId.H4, t, new)
            done += 1
        self.record(HeuristicId.H4, n, done, "no cleanly-spelled literals to corrupt")

    def _mutate_lexical(self, lexical: str) -> str | None:
        for _ in range(20):
            if self.rng.random() < 0.5:
                pos = self.rng.randrange(len(lexical) + 1)
                ch = self.rng.choice(string.ascii_lowercase)
                mutated = lexical[:pos] + ch + lexical[pos:]
            else:
                alpha_positions = [i for i, c in enumerate(lexical) if c.isalpha()]
                if not alpha_positions:
                    continue
                pos = self.rng.choice(alpha_positions)
                mutated = lexical[:pos] + lexical[pos + 1:]
            if mutated != lexical and has_unknown_token(mutated, self.dictionary):
                return mutated
        return None

    def h5_replace_literals(self, n: int):
        _, schema, _ = self.indices()
        candidates = self._spellable_candidates(schema)
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        done = 0
        for t in chosen:
            token = self._absent_token()
            new = Triple(t.subject, t.predicate,
                         Literal(token, datatype=t.object.datatype,
                                 language=t.object.language))
            if new in self.pos:
                continue
            self.rewrite(HeuristicId.H5, t, new)
            done += 1
        self.record(HeuristicId.H5, n, done, "no cleanly-spelled literals to replace")

    def _absent_token(self) -> str:
        while True:
            k = self.value_counter
            self.value_counter += 1
            suffix = []
            while True:
                suffix.append(string.ascii_lowercase[k % 26])
                k //= 26
                if k == 0:
                    break
            token = "zq" + "".join(suffix)
            if token not in self.dictionary:
                return token

    def h6_rename_terms(self, n: int):
        _, schema, _ = self.indices()
        type_cands = [t for t in self.current()
                      if t.predicate == RDF_TYPE and isinstance(t.object, Iri)
                      and t.object in schema.classes]
        chosen = self.rng.sample(type_cands, min(n, len(type_cands)))
        done = 0
        for t in chosen:
            new = Triple(t.subject, RDF_TYPE, self.fresh_iri("h6-class"))
            self.rewrite(HeuristicId.H6, t, new)
            done += 1
        if done < n:
            # fall back to renaming predicates of declared-property usage
            # triples; this also lowers the missing-values usage sum
            usage_cands = [t for t in self.current()
                           if t.predicate != RDF_TYPE and t.predicate in schema.properties]
            extra = self.rng.sample(usage_cands, min(n - done, len(usage_cands)))
            for t in extra:
                new = Triple(t.subject, self.fresh_iri("h6-property"), t.object)
                self.rewrite(HeuristicId.H6, t, new)
                done += 1
        self.record(HeuristicId.H6, n, done, "no renameable usage triples")

    def h7_remove_declarations(self, n: int):
        _, schema, _ = self.indices()
        current = self.current()
        used_classes = sorted(
            {t.object for t in current
             if t.predicate == RDF_TYPE and isinstance(t.object, Iri)
             and t.object in schema.classes},
            key=lambda c: c.text)
        used_props = sorted(
            {t.predicate for t in current if t.predicate in schema.properties},
            key=lambda p: p.text)
        pool = [("class", c) for c in used_classes] + [("property", p) for p in used_props]
        chosen = self.rng.sample(pool, min(n, len(pool)))
        for kind, term in chosen:
            for t in self.current():
                if kind == "class":
                    declares = (
                        (t.subject == term and t.predicate == RDF_TYPE
                         and t.object in _CLASS_DECL_OBJECTS)
                        or (t.subject == term and t.predicate in _CLASS_AXIOM_PREDICATES)
                        or (t.predicate in (RDFS_DOMAIN, RDFS_RANGE) and t.object == term)
                    )
                else:
                    declares = (
                        (t.subject == term and t.predicate == RDF_TYPE
                         and t.object in DECLARATION_TYPES)
                        or (t.subject == term and t.predicate in (RDFS_DOMAIN, RDFS_RANGE))
                    )
                if declares:
                    self.remove(HeuristicId.H7, t, axiom=True)
        self.record(HeuristicId.H7, n, len(chosen), "no used declared terms")

    def h8_make_disjoint(self, n: int):
        _, schema, instances = self.indices()
        classes = sorted(schema.classes, key=lambda c: c.text)
        candidates = []
        for i, a in enumerate(classes):
            members_a = instances.members_of.get(a)
            if not members_a:
                continue
            for b in classes[i + 1:]:
                if frozenset((a, b)) in schema.disjoint_pairs:
                    continue
                members_b = instances.members_of.get(b)
                if members_b and members_a & members_b:
                    candidates.append((a, b))
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        for a, b in chosen:
            self.add(HeuristicId.H8, Triple(a, OWL_DISJOINT_WITH, b), axiom=True)
        self.record(HeuristicId.H8, n, len(chosen), "no class pairs share instances")

    def h9_disjoint_instances(self, n: int):
        _, schema, _ = self.indices()
        pairs = sorted((tuple(sorted(p, key=lambda c: c.text))
                        for p in schema.disjoint_pairs),
                       key=lambda pair: (pair[0].text, pair[1].text))
        done = 0
        for _ in range(n):
            if not pairs:
                break
            a, b = self.rng.choice(pairs)
            inst = self.fresh_iri("h9-instance")
            self.add(HeuristicId.H9, Triple(inst, RDF_TYPE, a))
            self.add(HeuristicId.H9, Triple(inst, RDF_TYPE, b))
            done += 1
        self.record(HeuristicId.H9, n, done, "no disjoint class pairs available")

    def h10_type_conflicts(self, n: int):
        _, schema, _ = self.indices()
        candidates = [t for t in self.current()
                      if t.predicate != RDF_TYPE
                      and isinstance(t.object, Literal)
                      and t.predicate in schema.properties
                      and t.predicate not in schema.functional]
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        for t in chosen:
            companion = Triple(t.subject, t.predicate, self.fresh_iri("h10-object"))
            self.add(HeuristicId.H10, companion)
        self.record(HeuristicId.H10, n, len(chosen), "no literal-valued usage triples")

    def h11_functional_duplicates(self, n: int):
        _, schema, _ = self.indices()
        candidates = [t for t in self.current() if t.predicate in schema.functional]
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        done = 0
        for t in chosen:
            new_object = self._fresh_object_like(t, schema, "h11-object")
            if new_object is None:
                continue
            self.add(HeuristicId.H11, Triple(t.subject, t.predicate, new_object))
            done += 1
        self.record(HeuristicId.H11, n, done, "no functional-property triples to copy")

    def h12_inverse_functional_duplicates(self, n: int):
        _, schema, _ = self.indices()
        candidates = [t for t in self.current() if t.predicate in schema.inverse_functional]
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        for t in chosen:
            subject = self.fresh_iri("h12-subject")
            self.add(HeuristicId.H12, Triple(subject, t.predicate, t.object))
        self.record(HeuristicId.H12, n, len(chosen),
                    "no inverse-functional-property triples to copy")

    def _fresh_object_like(self, t: Triple, schema, tag: str):
        """A new object distinct from the original, matching its term type and
        staying inside the declared lexical range (no side effects on the
        range/datatype metrics)."""
        if not isinstance(t.object, Literal):
            return self.fresh_iri(tag)
        targets = [r for r in _FAKEABLE if r in schema.range_of.get(t.predicate, ())]
        for _ in range(50):
            self.value_counter += 1
            k = self.value_counter
            if not targets:
                lex = f"contamvalue{k}"
            elif targets[0] == XSD_INTEGER:
                lex = str(900000 + k)
            elif targets[0] in (XSD_DECIMAL, XSD_DOUBLE):
                lex = f"{900000 + k}.5"
            elif targets[0] == XSD_DATE:
                lex = f"{1200 + k % 700:04d}-01-15"
            elif targets[0] == XSD_DATETIME:
                lex = f"{1200 + k % 700:04d}-01-15T10:30:00"
            elif targets[0] == XSD_GYEAR:
                lex = f"{1200 + k % 700:04d}"
            else:
                return None  # xsd:boolean: no unbounded distinct values
            candidate = Literal(lex, datatype=t.object.datatype, language=t.object.language)
            if candidate != t.object and Triple(t.subject, t.predicate, candidate) not in self.pos:
                return candidate
        return None

    def h13_retag_literals(self, n: int):
        _, schema, _ = self.indices()
        group_sizes: dict[tuple, int] = {}
        for t in self.current():
            if t.predicate != RDF_TYPE:
                key = (t.subject, t.predicate)
                group_sizes[key] = group_sizes.get(key, 0) + 1
        candidates = []
        for t in self.current():
            if schema.properties.get(t.predicate) is not PropertyKind.DATATYPE:
                continue
            if not isinstance(t.object, Literal):
                continue
            xsd_ranges = {r for r in schema.range_of.get(t.predicate, ())
                          if r.text.startswith(XSD_NS)}
            if not xsd_ranges:
                continue
            tag = t.object.datatype
            clean = (XSD_STRING in xsd_ranges) if tag is None else (tag in xsd_ranges)
            if not clean:
                continue
            if group_sizes.get((t.subject, t.predicate), 0) != 1:
                continue
            if not _no_checkable_alpha(t.object.lexical):
                continue
            candidates.append((t, xsd_ranges))
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        done = 0
        for t, xsd_ranges in chosen:
            new_tag = XSD_STRING if XSD_STRING not in xsd_ranges else XSD_INTEGER
            new = Triple(t.subject, t.predicate, Literal(t.object.lexical, datatype=new_tag))
            if new in self.pos:
                continue
            self.rewrite(HeuristicId.H13, t, new)
            done += 1
        self.record(HeuristicId.H13, n, done, "no retaggable datatype-property literals")

    def h14_clone_classes(self, n: int):
        _, schema, instances = self.indices()
        candidates = sorted((c for c in schema.classes if instances.members_of.get(c)),
                            key=lambda c: c.text)
        chosen = self.rng.sample(candidates, min(n, len(candidates)))
        for cls in chosen:
            clone = self.fresh_iri("h14-class")
            self.add(HeuristicId.H14, Triple(clone, RDF_TYPE, OWL_CLASS), axiom=True)
            for member in sorted(instances.members_of[cls], key=lambda m: m.text):
                self.add(HeuristicId.H14, Triple(member, RDF_TYPE, clone))
        self.record(HeuristicId.H14, n, len(chosen), "no classes with instances")

    def run(self) -> tuple[Dataset, ContaminationManifest]:
        steps = {
            HeuristicId.H1: self.h1_fresh_properties,
            HeuristicId.H2: self.h2_remove_triples,
            HeuristicId.H3: self.h3_out_of_range,
            HeuristicId.H4: self.h4_mutate_literals,
            HeuristicId.H5: self.h5_replace_literals,
            HeuristicId.H6: self.h6_rename_terms,
            HeuristicId.H7: self.h7_remove_declarations,
            HeuristicId.H8: self.h8_make_disjoint,
            HeuristicId.H9: self.h9_disjoint_instances,
            HeuristicId.H10: self.h10_type_conflicts,
            HeuristicId.H11: self.h11_functional_duplicates,
            HeuristicId.H12: self.h12_inverse_functional_duplicates,
            HeuristicId.H13: self.h13_retag_literals,
            HeuristicId.H14: self.h14_clone_classes,
        }
        for h in ALL_HEURISTICS:
            n = self.plan.intensity(h)
            if n > 0:
                steps[h](n)
        contaminated = Dataset(id=self.dataset_id, triples=tuple(self.current()),
                               source_format="ntriples")
        manifest = ContaminationManifest(
            plan=self.plan,
            edits=tuple(self.edits),
            achieved=dict(self.achieved),
            warnings=tuple(self.warnings),
        )
        return contaminated, manifest


def contaminate(dataset: Dataset, plan: ContaminationPlan,
                dictionary: Dictionary | None = None) -> tuple[Dataset, ContaminationManifest]:
    """Apply the plan's heuristics in H1..H14 order with a seeded stream.

    The dictionary is consulted by H4/H5 so injected misspellings are
    guaranteed absent from it; the bundled word list is used by default.
    """
    for h, n in plan.intensities.items():
        if n < 0:
            raise ValueError(f"negative intensity for {h}")
    if dictionary is None:
        dictionary = default_dictionary()
    return _Contaminator(dataset, plan, dictionary).run()


def replay_manifest(original: Dataset, manifest: ContaminationManifest) -> Dataset:
    """Re-apply a manifest's edits; reproduces the contaminated dataset exactly."""
    slots: list[Triple | None] = list(original.triples)
    pos = {t: i for i, t in enumerate(original.triples)}
    for edit in manifest.edits:
        if edit.action in (EditAction.ADD_TRIPLE, EditAction.ADD_AXIOM):
            if edit.after is None or edit.after in pos:
                raise ReplayError(f"cannot apply add edit: {edit}")
            pos[edit.after] = len(slots)
            slots.append(edit.after)
        elif edit.action in (EditAction.REMOVE_TRIPLE, EditAction.REMOVE_AXIOM):
            if edit.before is None or edit.before not in pos:
                raise ReplayError(f"cannot apply remove edit: {edit}")
            slots[pos.pop(edit.before)] = None
        else:
            if edit.before is None or edit.after is None or edit.before not in pos:
                raise ReplayError(f"cannot apply rewrite edit: {edit}")
            i = pos.pop(edit.before)
            slots[i] = edit.after
            pos[edit.after] = i
    return Dataset(id=original.id, triples=tuple(t for t in slots if t is not None),
                   source_format="ntriples")


# ---------------------------------------------------------------------------
# Plan / manifest files


def plan_from_dict(data: Mapping, dataset_id: str = "") -> ContaminationPlan:
    intensities = {}
    for key, value in data.get("intensities", {}).items():
        h = HeuristicId(key.upper())
        n = int(value)
        if n < 0:
            raise ValueError(f"negative intensity for {h}")
        intensities[h] = n
    return ContaminationPlan(
        intensities=intensities,
        seed=int(data.get("seed", 0)),
        dataset_id=data.get("dataset", dataset_id),
    )


def plan_to_dict(plan: ContaminationPlan) -> dict:
    out: dict = {"seed": plan.seed, "intensities": {
        h.value: int(plan.intensities[h]) for h in ALL_HEURISTICS if h in plan.intensities
    }}
    if plan.dataset_id:
        out["dataset"] = plan.dataset_id
    return out


def load_plan(path: str | Path) -> ContaminationPlan:
    with open(path, encoding="utf-8") as fh:
        return plan_from_dict(json.load(fh))


def _triple_from_line(line: str) -> Triple:
    return parse_ntriples(line).triples[0]


def manifest_to_dict(manifest: ContaminationManifest) -> dict:
    return {
        "dataset": manifest.plan.dataset_id,
        "seed": manifest.plan.seed,
        "requested": {h.value: int(n) for h, n in sorted(
            manifest.plan.intensities.items(), key=lambda kv: ALL_HEURISTICS.index(kv[0]))},
        "achieved": {h.value: int(n) for h, n in sorted(
            manifest.achieved.items(), key=lambda kv: ALL_HEURISTICS.index(kv[0]))},
        "warnings": list(manifest.warnings),
        "edits": [
            {
                "heuristic": e.heuristic.value,
                "action": e.action.value,
                "before": triple_to_ntriples(e.before) if e.before else None,
                "after": triple_to_ntriples(e.after) if e.after else None,
            }
            for e in manifest.edits
        ],
    }


def manifest_from_dict(data: Mapping) -> ContaminationManifest:
    plan = ContaminationPlan(
        intensities={HeuristicId(k): int(v) for k, v in data.get("requested", {}).items()},
        seed=int(data.get("seed", 0)),
        dataset_id=data.get("dataset", ""),
    )
    edits = []
    for entry in data.get("edits", ()):
        edits.append(Edit(
            heuristic=HeuristicId(entry["heuristic"]),
            action=EditAction(entry["action"]),
            before=_triple_from_line(entry["before"]) if entry.get("before") else None,
            after=_triple_from_line(entry["after"]) if entry.get("after") else None,
        ))
    return ContaminationManifest(
        plan=plan,
        edits=tuple(edits),
        achieved={HeuristicId(k): int(v) for k, v in data.get("achieved", {}).items()},
        warnings=tuple(data.get("warnings", ())),
    )


def manifest_to_json(manifest: ContaminationManifest) -> str:
    return json.dumps(manifest_to_dict(manifest), indent=2) + "\n"


def load_manifest(path: str | Path) -> ContaminationManifest:
    with open(path, encoding="utf-8") as fh:
        return manifest_from_dict(json.load(fh))
