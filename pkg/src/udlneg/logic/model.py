"""Finite first-order models and a Tarskian evaluator.

Used as a test oracle.  Events and individuals share one domain: a projection
``x_e`` or ``x_a`` simply denotes the entity assigned to ``x``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Mapping, Optional

from .terms import (
    EQ, And, App, Exists, Forall, Implies, Lam, Not, Pred, Proj, Term, TrueT, Var,
    walk,
)


class UnknownPredicate(KeyError):
    pass


@dataclass(frozen=True)
class Model:
    domain: FrozenSet[str]
    interpretation: Mapping[str, FrozenSet[tuple]]
    constants: FrozenSet[str] = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        object.__setattr__(self, "constants", frozenset(self.constants))
        interp = {k: frozenset(tuple(x) for x in v) for k, v in self.interpretation.items()}
        allowed = self.domain | self.constants
        for name, tuples in interp.items():
            if len({len(x) for x in tuples}) > 1:
                raise ValueError(f"inconsistent arity for {name!r}")
            for tup in tuples:
                if not set(tup) <= allowed:
                    raise ValueError(f"{name}{tup} leaves the domain")
        object.__setattr__(self, "interpretation", interp)


def model_check(phi: Term, m: Model, assignment: Optional[Dict[str, str]] = None) -> bool:
    missing = {n.name for n in walk(phi) if isinstance(n, Pred)} - set(m.interpretation)
    if missing:
        raise UnknownPredicate(", ".join(sorted(missing)))
    return _eval(phi, m, dict(assignment or {}))


def _lookup(name, g):
    try:
        return g[name]
    except KeyError:
        raise ValueError(f"unassigned variable {name!r}") from None


def _eval(t: Term, m: Model, g: dict) -> bool:
    if isinstance(t, Pred):
        tup = tuple(_lookup(a.var, g) if isinstance(a, Proj) else a.value for a in t.args)
        return tup in m.interpretation[t.name]
    if isinstance(t, EQ):
        return _lookup(t.left, g) == _lookup(t.right, g)
    if isinstance(t, TrueT):
        return True
    if isinstance(t, Not):
        return not _eval(t.body, m, g)
    if isinstance(t, And):
        return _eval(t.left, m, g) and _eval(t.right, m, g)
    if isinstance(t, Implies):
        return (not _eval(t.left, m, g)) or _eval(t.right, m, g)
    if isinstance(t, Exists):
        return any(_eval(t.body, m, {**g, t.var: d}) for d in m.domain)
    if isinstance(t, Forall):
        return all(_eval(t.body, m, {**g, t.var: d}) for d in m.domain)
    if isinstance(t, (Lam, App, Var)):
        raise ValueError("higher-order terms cannot be model checked")
    raise TypeError(f"not a term: {t!r}")


def all_models(predicates: Mapping[str, int], max_size: int,
               min_size: int = 0) -> Iterator[Model]:
    """Every model over domains ``d0..d{n-1}`` for ``min_size <= n <= max_size``."""
    for n in range(min_size, max_size + 1):
        domain = tuple(f"d{i}" for i in range(n))
        names = sorted(predicates)
        spaces = []
        for name in names:
            tuples = list(itertools.product(domain, repeat=predicates[name]))
            spaces.append([frozenset(c) for r in range(len(tuples) + 1)
                           for c in itertools.combinations(tuples, r)])
        for choice in itertools.product(*spaces):
            yield Model(frozenset(domain), dict(zip(names, choice)))


def assignments(variables, domain) -> Iterator[dict]:
    variables = sorted(variables)
    for values in itertools.product(sorted(domain), repeat=len(variables)):
        yield dict(zip(variables, values))
