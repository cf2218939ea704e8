"""Edge relabeling that prepares a UD tree for scope-aware composition.

Rules, applied in this order:

* ``case-fold``: ``nmod`` with a ``case`` dependent becomes ``nmod:<case>``;
  the case word is flagged vacuous.
* ``neg-univ``: ``neg`` whose child is a universal negative ("no") becomes
  ``neg:univ``; the head's own argument edge gets ``:inv``.
* ``det-univ``: ``det`` whose child is a universal determiner becomes
  ``det:univ``; the head's argument edge gets ``:inv``.
* ``lexical-cue``: a node whose lemma is a lexical cue ("nobody") is flagged;
  its incoming argument edge gets ``:inv``, adjunct edges are left alone.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Tuple

from .ud import DepEdge, DepGraph

ARGUMENT_RELATIONS = frozenset({"nsubj", "dobj", "nsubjpass"})
ADJUNCT_RELATIONS = frozenset({"nmod", "advmod"})
INV = ":inv"

CUE = "cue"
VACUOUS = "vacuous"


class ConflictingRules(ValueError):
    def __init__(self, edge: DepEdge, first: str, second: str):
        super().__init__(f"edge {edge.head}->{edge.child} relabeled both {first!r} and {second!r}")
        self.edge = edge


class UnsupportedCueAttachment(UserWarning):
    pass


@dataclass(frozen=True)
class CueLexicon:
    universal_negatives: FrozenSet[str] = frozenset({"no"})
    universal_determiners: FrozenSet[str] = frozenset({"every", "all", "each"})
    lexical_cues: Mapping[str, str] = field(default_factory=lambda: {
        "nobody": "person", "nothing": "thing", "nowhere": "location"})
    plain_negators: FrozenSet[str] = frozenset({"not", "never", "n't"})

    def __post_init__(self):
        lower = lambda xs: frozenset(x.lower() for x in xs)  # noqa: E731
        object.__setattr__(self, "universal_negatives", lower(self.universal_negatives))
        object.__setattr__(self, "universal_determiners", lower(self.universal_determiners))
        object.__setattr__(self, "plain_negators", lower(self.plain_negators))
        object.__setattr__(self, "lexical_cues",
                           {k.lower(): v for k, v in dict(self.lexical_cues).items()})
        classes = {
            "universal_negatives": self.universal_negatives,
            "universal_determiners": self.universal_determiners,
            "lexical_cues": frozenset(self.lexical_cues),
            "plain_negators": self.plain_negators,
        }
        names = list(classes)
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                shared = classes[a] & classes[b]
                if shared:
                    raise ValueError(f"cue classes {a} and {b} share {sorted(shared)}")

    def cue_restrictor(self, lemma: str) -> Optional[str]:
        return self.lexical_cues.get(lemma.lower())

    def is_universal_negative(self, lemma: str) -> bool:
        return lemma.lower() in self.universal_negatives

    def is_universal_determiner(self, lemma: str) -> bool:
        return lemma.lower() in self.universal_determiners

    def is_vacuous(self, lemma: str) -> bool:
        low = lemma.lower()
        return (low in self.plain_negators or low in self.universal_negatives
                or low in self.universal_determiners)

    def to_dict(self) -> dict:
        return {
            "universal_negatives": sorted(self.universal_negatives),
            "universal_determiners": sorted(self.universal_determiners),
            "lexical_cues": dict(sorted(self.lexical_cues.items())),
            "plain_negators": sorted(self.plain_negators),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CueLexicon":
        default = cls()
        return cls(
            frozenset(data.get("universal_negatives", default.universal_negatives)),
            frozenset(data.get("universal_determiners", default.universal_determiners)),
            dict(data.get("lexical_cues", default.lexical_cues)),
            frozenset(data.get("plain_negators", default.plain_negators)),
        )

    @classmethod
    def load(cls, path) -> "CueLexicon":
        """Read a JSON object, or a plain-text file with ``[section]`` headers.

        In the plain-text form each line is a lemma; under ``[lexical_cues]``
        a line is ``lemma restrictor``.
        """
        text = Path(path).read_text(encoding="utf-8")
        if text.lstrip().startswith("{"):
            return cls.from_dict(json.loads(text))
        data: Dict[str, object] = {}
        section = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("[") and line.endswith("]"):
                section = line[1:-1].strip()
                data[section] = {} if section == "lexical_cues" else []
            elif section == "lexical_cues":
                lemma, restrictor = line.split()
                data[section][lemma] = restrictor
            elif section is not None:
                data[section].append(line)
            else:
                raise ValueError(f"{path}: entry {line!r} outside a section")
        return cls.from_dict(data)


DEFAULT_CUES = CueLexicon()


@dataclass(frozen=True)
class Edit:
    """``relabel`` replaces the label; ``invert`` asks for an ``:inv`` suffix."""

    edge: int
    kind: str
    label: str = ""


@dataclass(frozen=True)
class EnhancementRule:
    name: str
    match: Callable[[DepGraph, int, CueLexicon], bool]
    rewrite: Callable[[DepGraph, int, CueLexicon], List[Edit]]


def _edge_index(g: DepGraph, child: int) -> Optional[int]:
    for i, e in enumerate(g.edges):
        if e.child == child:
            return i
    return None


def _governing_inversion(g: DepGraph, head: int, rule: str) -> List[Edit]:
    gi = _edge_index(g, head)
    if gi is None:
        return []
    base = g.edges[gi].base
    if base in ARGUMENT_RELATIONS:
        return [Edit(gi, "invert")]
    if base not in ADJUNCT_RELATIONS:
        warnings.warn(f"{rule}: token {head} attaches by {g.edges[gi].label!r}; "
                      "no scope inversion applied", UnsupportedCueAttachment, stacklevel=4)
    return []


def _case_child(g: DepGraph, node: int) -> Optional[DepEdge]:
    cases = sorted((e for e in g.out_edges(node) if e.label == "case"), key=lambda e: e.child)
    return cases[0] if cases else None


def _match_case_fold(g, i, cues):
    e = g.edges[i]
    return e.base == "nmod" and _case_child(g, e.child) is not None


def _rewrite_case_fold(g, i, cues):
    e = g.edges[i]
    case = _case_child(g, e.child)
    if e.label != "nmod":
        return []
    return [Edit(i, "relabel", f"nmod:{g.node(case.child).lemma.lower()}")]


def _match_neg_univ(g, i, cues):
    e = g.edges[i]
    return e.base in ("neg", "det") and cues.is_universal_negative(g.node(e.child).lemma)


def _rewrite_neg_univ(g, i, cues):
    e = g.edges[i]
    return [Edit(i, "relabel", "neg:univ")] + _governing_inversion(g, e.head, "neg-univ")


def _match_det_univ(g, i, cues):
    e = g.edges[i]
    return e.base == "det" and cues.is_universal_determiner(g.node(e.child).lemma)


def _rewrite_det_univ(g, i, cues):
    e = g.edges[i]
    return [Edit(i, "relabel", "det:univ")] + _governing_inversion(g, e.head, "det-univ")


def _match_lexical_cue(g, i, cues):
    return cues.cue_restrictor(g.node(g.edges[i].child).lemma) is not None


def _rewrite_lexical_cue(g, i, cues):
    e = g.edges[i]
    if e.base in ARGUMENT_RELATIONS:
        return [Edit(i, "invert")]
    if e.base not in ADJUNCT_RELATIONS:
        warnings.warn(f"lexical-cue: {g.node(e.child).lemma!r} attaches by {e.label!r}; "
                      "composed without scope inversion", UnsupportedCueAttachment, stacklevel=3)
    return []


RULES: Tuple[EnhancementRule, ...] = (
    EnhancementRule("case-fold", _match_case_fold, _rewrite_case_fold),
    EnhancementRule("neg-univ", _match_neg_univ, _rewrite_neg_univ),
    EnhancementRule("det-univ", _match_det_univ, _rewrite_det_univ),
    EnhancementRule("lexical-cue", _match_lexical_cue, _rewrite_lexical_cue),
)


def enhance(g: DepGraph, cues: CueLexicon = DEFAULT_CUES, rules=RULES) -> DepGraph:
    """Relabel edges and flag cue and vacuous words. Topology is unchanged."""
    relabel: Dict[int, Tuple[str, str]] = {}
    invert = set()
    for rule in rules:
        for i in range(len(g.edges)):
            if not rule.match(g, i, cues):
                continue
            for edit in rule.rewrite(g, i, cues):
                if edit.kind == "invert":
                    invert.add(edit.edge)
                    continue
                prev = relabel.get(edit.edge)
                if prev is not None and prev[1] != edit.label:
                    raise ConflictingRules(g.edges[edit.edge], prev[1], edit.label)
                relabel[edit.edge] = (rule.name, edit.label)

    labels = {}
    for i, e in enumerate(g.edges):
        label = relabel[i][1] if i in relabel else e.label
        if i in invert and not label.endswith(INV):
            label += INV
        if label != e.label:
            labels[i] = label

    flags: Dict[int, set] = {}
    for n in g.nodes:
        if cues.cue_restrictor(n.lemma) is not None:
            flags.setdefault(n.index, set()).add(CUE)
    for e in g.edges:
        if e.base == "nmod":
            case = _case_child(g, e.child)
            if case is not None:
                flags.setdefault(case.child, set()).add(VACUOUS)

    out = g.with_labels(labels) if labels else g
    if flags:
        nodes = tuple(replace(n, flags=n.flags | flags[n.index]) if n.index in flags else n
                      for n in out.nodes)
        out = replace(out, nodes=nodes)
    return out
