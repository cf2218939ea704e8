"""Substitution: lambda terms for words and for edge labels."""

from __future__ import annotations

import functools
import logging
import os
from dataclasses import dataclass, replace
from fnmatch import fnmatchcase
from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Tuple

from .enhancer import DEFAULT_CUES, VACUOUS, CueLexicon
from .logic import Const, Pred, Term, parse_term
from .logic.terms import children, rebuild
from .ud import DepNode

log = logging.getLogger(__name__)

DATA_ENV = "UDLNEG_LEXICON_DIR"

TEMPLATES: Dict[str, str] = {
    "arg": "lambda P . lambda Q . lambda f . P(lambda x . f(x) & Q(lambda y . ROLE(x_e, y_a)))",
    "arg_inv": "lambda P . lambda Q . lambda f . Q(lambda y . P(lambda x . ROLE(x_e, y_a) & f(x)))",
    "neg": "lambda P . lambda Q . lambda f . not P(lambda x . f(x))",
    "neg_univ": "lambda P . lambda Q . lambda f . forall x . (P(lambda y . EQ(x, y)) -> not f(x))",
    "det_univ": "lambda P . lambda Q . lambda f . forall x . (P(lambda y . EQ(x, y)) -> f(x))",
    "head": "lambda P . lambda Q . lambda f . P(lambda x . f(x))",
}
ROLE_SLOT = "ROLE"
CASE_ROLE = "<case>"
NO_ROLE = "-"
FALLBACK = "head"

VACUOUS_UPOS = frozenset({"AUX", "DET", "ADP", "PART", "PUNCT", "SCONJ", "CCONJ"})
TRIVIAL_WORD = "lambda f . TRUE"


def _is_pattern(label: str) -> bool:
    return any(c in label for c in "*?[")


def data_dir() -> Path:
    override = os.environ.get(DATA_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("udlneg") / "data"))


def _with_role(t: Term, role: Optional[str], token: Optional[int]) -> Term:
    if isinstance(t, Pred) and t.name == ROLE_SLOT:
        return replace(t, name=role, token=token)
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [_with_role(k, role, token) for k in kids])


@dataclass(frozen=True)
class EdgeRecord:
    label: str
    template: str
    role: Optional[str]


class Lexicon:
    """Label -> (template id, role predicate) table, read-only after loading."""

    def __init__(self, records):
        self.records: Tuple[EdgeRecord, ...] = tuple(records)
        for r in self.records:
            if r.template not in TEMPLATES:
                raise ValueError(f"unknown template {r.template!r} for label {r.label!r}")
            needs_role = ROLE_SLOT in TEMPLATES[r.template]
            if needs_role and not r.role:
                raise ValueError(f"template {r.template!r} needs a role (label {r.label!r})")
        self._exact = {r.label: r for r in self.records if not _is_pattern(r.label)}
        self._patterns = [r for r in self.records if _is_pattern(r.label)]
        self._parsed = {k: parse_term(v) for k, v in TEMPLATES.items()}

    @classmethod
    def load(cls, path) -> "Lexicon":
        records = []
        for no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t") if "\t" in line else line.split()
            if len(parts) != 3:
                raise ValueError(f"{path}:{no}: expected label, template, role")
            label, template, role = (p.strip() for p in parts)
            records.append(EdgeRecord(label, template, None if role == NO_ROLE else role))
        return cls(records)

    @classmethod
    def default(cls) -> "Lexicon":
        return cls.load(data_dir() / "lexicon.tsv")

    def lookup(self, label: str) -> Optional[EdgeRecord]:
        if label in self._exact:
            return self._exact[label]
        for r in self._patterns:
            if fnmatchcase(label, r.label):
                return r
        return None

    def edge_term(self, label: str, token: Optional[int] = None) -> Term:
        """Edge template for ``label``; unknown labels keep the head and drop the child."""
        record = self.lookup(label)
        if record is None:
            log.warning("no semantics for edge label %r; child ignored", label)
            return self._parsed[FALLBACK]
        role = record.role
        if role == CASE_ROLE:
            role = label.split(":", 1)[1] if ":" in label else label
            if role.endswith(":inv"):
                role = role[: -len(":inv")]
        template = self._parsed[record.template]
        if ROLE_SLOT in TEMPLATES[record.template]:
            return _with_role(template, role, token)
        return template


@functools.lru_cache(maxsize=None)
def default_lexicon() -> Lexicon:
    return Lexicon.load(Path(str(resources.files("udlneg") / "data")) / "lexicon.tsv")


def edge_term(label: str, token: Optional[int] = None) -> Term:
    return default_lexicon().edge_term(label, token)


def word_term(n: DepNode, cues: CueLexicon = DEFAULT_CUES,
              predicate_source: str = "lemma") -> Term:
    """Generalized-quantifier meaning of a single word."""
    restrictor = cues.cue_restrictor(n.lemma)
    if restrictor is not None:
        t = parse_term("lambda f . not exists x . R(x_a) & f(x)")
        return _stamp(t, "R", n.index, name=restrictor)
    if VACUOUS in n.flags or cues.is_vacuous(n.lemma) or n.upos in VACUOUS_UPOS:
        return parse_term(TRIVIAL_WORD)
    if n.upos == "PROPN":
        t = parse_term('lambda f . exists x . named(x_a, "", "") & f(x)')
        return _stamp(t, "named", n.index, args=(n.form, n.ner or "PER"))
    name = n.form.lower() if predicate_source == "form" else n.lemma
    sort = "e" if n.upos == "VERB" else "a"
    t = parse_term(f"lambda f . exists x . W(x_{sort}) & f(x)")
    return _stamp(t, "W", n.index, name=name)


def _stamp(t: Term, slot: str, token: int, name: Optional[str] = None, args=None) -> Term:
    def go(t):
        if isinstance(t, Pred) and t.name == slot:
            new_args = t.args
            if args is not None:
                new_args = (t.args[0],) + tuple(Const(a) for a in args)
            return Pred(name or t.name, new_args, token=token)
        kids = children(t)
        return rebuild(t, [go(k) for k in kids]) if kids else t

    return go(t)
