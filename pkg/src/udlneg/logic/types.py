"""Semantic types and a small unification-based type checker.

Terms carry no annotations, so types are inferred: each lambda parameter gets
a type variable and constraints are solved by first-order unification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Union

from .terms import (
    EQ, And, App, Exists, Forall, IllTyped, Implies, Lam, Not, Pred, Proj, Term,
    TrueT, Var,
)


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Fn:
    arg: "SemType"
    res: "SemType"

    def __str__(self):
        return f"<{self.arg},{self.res}>"


@dataclass(frozen=True)
class TVar:
    n: int

    def __str__(self):
        return f"?{self.n}"


SemType = Union[Base, Fn, TVar]

V = Base("v")
T = Base("t")
VT = Fn(V, T)
VT_T = Fn(VT, T)
EdgeType = Fn(VT_T, Fn(VT_T, VT_T))


class _Solver:
    def __init__(self):
        self.subst: Dict[int, SemType] = {}
        self.counter = itertools.count()

    def fresh(self) -> TVar:
        return TVar(next(self.counter))

    def resolve(self, ty: SemType) -> SemType:
        while isinstance(ty, TVar) and ty.n in self.subst:
            ty = self.subst[ty.n]
        return ty

    def zonk(self, ty: SemType) -> SemType:
        ty = self.resolve(ty)
        if isinstance(ty, Fn):
            return Fn(self.zonk(ty.arg), self.zonk(ty.res))
        return ty

    def occurs(self, n: int, ty: SemType) -> bool:
        ty = self.resolve(ty)
        if isinstance(ty, TVar):
            return ty.n == n
        if isinstance(ty, Fn):
            return self.occurs(n, ty.arg) or self.occurs(n, ty.res)
        return False

    def unify(self, a: SemType, b: SemType, where: Term):
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TVar):
            if self.occurs(a.n, b):
                raise IllTyped(f"infinite type in {where!r}")
            self.subst[a.n] = b
        elif isinstance(b, TVar):
            self.unify(b, a, where)
        elif isinstance(a, Fn) and isinstance(b, Fn):
            self.unify(a.arg, b.arg, where)
            self.unify(a.res, b.res, where)
        else:
            raise IllTyped(f"cannot match {self.zonk(a)} with {self.zonk(b)} in {where!r}")

    def infer(self, t: Term, env: dict) -> SemType:
        if isinstance(t, Var):
            if t.name not in env:
                env[t.name] = self.fresh()
            return env[t.name]
        if isinstance(t, Lam):
            inner = dict(env)
            inner[t.var] = self.fresh()
            res = self.infer(t.body, inner)
            self._leak_free(env, inner, t.var)
            return Fn(inner[t.var], res)
        if isinstance(t, App):
            fty = self.infer(t.fn, env)
            aty = self.infer(t.arg, env)
            res = self.fresh()
            self.unify(fty, Fn(aty, res), t)
            return res
        if isinstance(t, (And, Implies)):
            self.unify(self.infer(t.left, env), T, t)
            self.unify(self.infer(t.right, env), T, t)
            return T
        if isinstance(t, Not):
            self.unify(self.infer(t.body, env), T, t)
            return T
        if isinstance(t, (Exists, Forall)):
            inner = dict(env)
            inner[t.var] = V
            self.unify(self.infer(t.body, inner), T, t)
            self._leak_free(env, inner, t.var)
            return T
        if isinstance(t, Pred):
            for a in t.args:
                if isinstance(a, Proj):
                    self.unify(self._var(a.var, env), V, t)
            return T
        if isinstance(t, EQ):
            self.unify(self._var(t.left, env), V, t)
            self.unify(self._var(t.right, env), V, t)
            return T
        if isinstance(t, TrueT):
            return T
        raise IllTyped(f"not a term: {t!r}")

    def _var(self, name, env):
        if name not in env:
            env[name] = self.fresh()
        return env[name]

    @staticmethod
    def _leak_free(outer, inner, bound):
        # free variables first met under a binder are shared with the outer scope
        for k, v in inner.items():
            if k != bound and k not in outer:
                outer[k] = v


def infer_type(t: Term, env: Optional[dict] = None) -> SemType:
    """Most general type of ``t``. ``env`` may fix types of free variables."""
    s = _Solver()
    return s.zonk(s.infer(t, dict(env or {})))


def check_type(t: Term, expected: SemType, env: Optional[dict] = None) -> None:
    s = _Solver()
    got = s.infer(t, dict(env or {}))
    s.unify(got, expected, t)


def has_type(t: Term, expected: SemType, env: Optional[dict] = None) -> bool:
    try:
        check_type(t, expected, env)
    except IllTyped:
        return False
    return True
