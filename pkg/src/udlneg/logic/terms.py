"""Higher-order logical terms over paired Event x Individual variables.

Every value here is an immutable dataclass. Binders (``Lam``, ``Exists``,
``Forall``) carry their variable name as a plain string; occurrences of a
variable are ``Var`` nodes, or ``Proj`` nodes when a predicate reads the event
(``e``) or individual (``a``) part of a paired variable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Tuple, Union


class IllTyped(Exception):
    """A term cannot be typed, or an application is stuck on a non-function."""

    def __init__(self, message: str, label: Optional[str] = None):
        super().__init__(message if label is None else f"{message} (edge {label!r})")
        self.label = label


class NotClosable(Exception):
    pass


EVENT = "e"
INDIVIDUAL = "a"
SORTS = (EVENT, INDIVIDUAL)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Proj:
    var: str
    sort: str

    def __post_init__(self):
        if self.sort not in SORTS:
            raise ValueError(f"unknown projection sort {self.sort!r}")


@dataclass(frozen=True)
class Const:
    value: str


@dataclass(frozen=True)
class Lam:
    var: str
    body: "Term"


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class And:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Not:
    body: "Term"


@dataclass(frozen=True)
class Implies:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Term"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Term"


@dataclass(frozen=True)
class Pred:
    """An atomic predication. ``token`` records the source word, if any."""

    name: str
    args: Tuple[Union[Proj, Const], ...] = ()
    token: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        for a in self.args:
            if not isinstance(a, (Proj, Const)):
                raise TypeError(f"predicate argument must be Proj or Const, got {a!r}")


@dataclass(frozen=True)
class EQ:
    left: str
    right: str


@dataclass(frozen=True)
class TrueT:
    pass


TRUE = TrueT()

Term = Union[Var, Lam, App, And, Not, Implies, Exists, Forall, Pred, EQ, TrueT]
BINDERS = (Lam, Exists, Forall)


def conj(*terms: Term) -> Term:
    """Left-nested conjunction; ``conj()`` is TRUE."""
    if not terms:
        return TRUE
    out = terms[0]
    for t in terms[1:]:
        out = And(out, t)
    return out


def conjuncts(t: Term) -> list:
    if isinstance(t, And):
        return conjuncts(t.left) + conjuncts(t.right)
    return [t]


def children(t: Term) -> Tuple[Term, ...]:
    if isinstance(t, (Lam, Exists, Forall, Not)):
        return (t.body,)
    if isinstance(t, App):
        return (t.fn, t.arg)
    if isinstance(t, (And, Implies)):
        return (t.left, t.right)
    return ()


def rebuild(t: Term, kids) -> Term:
    """Return ``t`` with its immediate subterms replaced by ``kids``."""
    kids = tuple(kids)
    if isinstance(t, Lam):
        return Lam(t.var, kids[0])
    if isinstance(t, Exists):
        return Exists(t.var, kids[0])
    if isinstance(t, Forall):
        return Forall(t.var, kids[0])
    if isinstance(t, Not):
        return Not(kids[0])
    if isinstance(t, App):
        return App(kids[0], kids[1])
    if isinstance(t, And):
        return And(kids[0], kids[1])
    if isinstance(t, Implies):
        return Implies(kids[0], kids[1])
    return t


def walk(t: Term) -> Iterator[Term]:
    """Pre-order traversal."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def occurrences(t: Term) -> Iterator[str]:
    """Names of every variable occurrence (not binders) in ``t``."""
    for node in walk(t):
        if isinstance(node, Var):
            yield node.name
        elif isinstance(node, Pred):
            for a in node.args:
                if isinstance(a, Proj):
                    yield a.var
        elif isinstance(node, EQ):
            yield node.left
            yield node.right


def _local_occurrences(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, Pred):
        for a in t.args:
            if isinstance(a, Proj):
                yield a.var
    elif isinstance(t, EQ):
        yield t.left
        yield t.right


def free_vars(t: Term) -> frozenset:
    out = set()
    stack = [(t, frozenset())]
    while stack:
        node, bound = stack.pop()
        for name in _local_occurrences(node):
            if name not in bound:
                out.add(name)
        if isinstance(node, BINDERS):
            stack.append((node.body, bound | {node.var}))
        else:
            stack.extend((k, bound) for k in children(node))
    return frozenset(out)


def bound_names(t: Term) -> list:
    """Binder names in pre-order, with repetitions."""
    return [n.var for n in walk(t) if isinstance(n, BINDERS)]


def all_names(t: Term) -> set:
    return set(occurrences(t)) | set(bound_names(t))


def is_closed(t: Term) -> bool:
    return not free_vars(t)


def size(t: Term) -> int:
    return sum(1 for _ in walk(t))


PRIME = "′"


def fresh_name(base: str, avoid) -> str:
    """First unused variant of ``base``: x, x', x'', x''', then x4, x5, ..."""
    stem = base.rstrip(PRIME + "'").rstrip("0123456789") or "v"
    if stem not in avoid:
        return stem
    for k in range(1, 4):
        cand = stem + PRIME * k
        if cand not in avoid:
            return cand
    k = 4
    while f"{stem}{k}" in avoid:
        k += 1
    return f"{stem}{k}"
