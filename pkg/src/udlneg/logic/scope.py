"""Negation scope: the predicate atoms dominated by each negation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .terms import Not, Pred, Term, children, walk


@dataclass(frozen=True)
class ScopeReport:
    negation_id: int
    atoms: Tuple[Pred, ...]
    token_indices: Tuple[int, ...]

    @property
    def predicate_names(self) -> set:
        return {a.name for a in self.atoms}


def extract_scope(phi: Term) -> List[ScopeReport]:
    """One report per ``Not`` node, numbered in pre-order."""
    reports = []
    for node in walk(phi):
        if isinstance(node, Not):
            atoms = tuple(n for n in walk(node.body) if isinstance(n, Pred))
            tokens = tuple(sorted({a.token for a in atoms if a.token is not None}))
            reports.append(ScopeReport(len(reports), atoms, tokens))
    return reports


def atoms_outside_negation(phi: Term) -> List[Pred]:
    """Predicate atoms with no ``Not`` on their path from the root."""
    out = []

    def go(t):
        if isinstance(t, Not):
            return
        if isinstance(t, Pred):
            out.append(t)
        for k in children(t):
            go(k)

    go(phi)
    return out
