"""Dependency graph to s-expression, ordered by an obliqueness hierarchy."""

from __future__ import annotations

from dataclasses import dataclass
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Optional, Tuple, Union

from .ud import DepGraph, DisconnectedGraph

DEFAULT_ORDER = (
    "det:univ", "det", "neg:univ", "neg", "aux", "advmod", "nmod:*", "nmod",
    "dobj:inv", "dobj", "nsubjpass:inv", "nsubjpass", "nsubj:inv", "nsubj",
)


@dataclass(frozen=True)
class ObliquenessHierarchy:
    """Edge-label patterns, highest priority (composed first) first."""

    priority: Tuple[str, ...] = DEFAULT_ORDER

    def rank(self, label: str) -> int:
        """Smaller rank composes earlier. Unknown labels rank after every pattern."""
        found = self._match(label)
        if found is None and label.endswith(":inv"):
            found = self._match(label[: -len(":inv")])
        return len(self.priority) if found is None else found

    def _match(self, label: str) -> Optional[int]:
        for i, pattern in enumerate(self.priority):
            if fnmatchcase(label, pattern):
                return i
        return None

    @classmethod
    def load(cls, path) -> "ObliquenessHierarchy":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        patterns = [ln.split("#", 1)[0].strip() for ln in lines]
        return cls(tuple(p for p in patterns if p))


@dataclass(frozen=True)
class Leaf:
    node: int


@dataclass(frozen=True)
class Comp:
    label: str
    head: "SExpr"
    child: "SExpr"


SExpr = Union[Leaf, Comp]


def binarize(g: DepGraph, h: ObliquenessHierarchy = ObliquenessHierarchy()) -> SExpr:
    g.check_connected()
    visiting = set()

    def build(head: int) -> SExpr:
        if head in visiting:
            raise DisconnectedGraph(f"cycle through token {head}")
        visiting.add(head)
        out: SExpr = Leaf(head)
        for e in sorted(g.out_edges(head), key=lambda e: (h.rank(e.label), e.child)):
            out = Comp(e.label, out, build(e.child))
        return out

    return build(g.root)


def head_node(s: SExpr) -> int:
    while isinstance(s, Comp):
        s = s.head
    return s.node


def comp_labels(s: SExpr) -> list:
    if isinstance(s, Leaf):
        return []
    return [s.label] + comp_labels(s.head) + comp_labels(s.child)


def format_sexpr(s: SExpr, g: Optional[DepGraph] = None) -> str:
    """``(nsubj (aux (neg eat not) does) John)``; leaves print the word form."""
    if isinstance(s, Leaf):
        return g.node(s.node).form if g is not None else str(s.node)
    return f"({s.label} {format_sexpr(s.head, g)} {format_sexpr(s.child, g)})"
