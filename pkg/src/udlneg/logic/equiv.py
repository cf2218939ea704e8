"""Structural comparison of terms up to bound-variable renaming.

``alpha_equivalent`` is plain alpha-equivalence.  ``ac_equivalent`` also
ignores conjunct order and where an existential sits inside a conjunction
(``∃x.φ ∧ ψ`` versus ``∃x.(φ ∧ ψ)`` when ``x`` is not free in ``ψ``), and
treats a run of existentials as an unordered block.  Derivations written by
hand move conjuncts and quantifier prefixes around freely, so golden tests
compare with the latter.
"""

from __future__ import annotations

import itertools
import json

from .reduce import normalize_names
from .terms import (
    EQ, And, App, Const, Exists, Forall, Implies, Lam, Not, Pred, Term, TrueT, Var,
)


def _arg(a, env):
    if isinstance(a, Const):
        return json.dumps(a.value)
    return f"{env.get(a.var, '!' + a.var)}_{a.sort}"


def _name(n, env):
    return env.get(n, "!" + n)


def _plain(t: Term, env: dict, level: int) -> str:
    if isinstance(t, Var):
        return _name(t.name, env)
    if isinstance(t, (Lam, Exists, Forall)):
        tag = {Lam: "L", Exists: "E", Forall: "A"}[type(t)]
        inner = {**env, t.var: f"#{level}"}
        return f"{tag}.{_plain(t.body, inner, level + 1)}"
    if isinstance(t, App):
        return f"({_plain(t.fn, env, level)} {_plain(t.arg, env, level)})"
    if isinstance(t, And):
        return f"&({_plain(t.left, env, level)},{_plain(t.right, env, level)})"
    if isinstance(t, Implies):
        return f">({_plain(t.left, env, level)},{_plain(t.right, env, level)})"
    if isinstance(t, Not):
        return f"~{_plain(t.body, env, level)}"
    if isinstance(t, Pred):
        return f"{json.dumps(t.name)}({','.join(_arg(a, env) for a in t.args)})"
    if isinstance(t, EQ):
        return f"EQ({_name(t.left, env)},{_name(t.right, env)})"
    if isinstance(t, TrueT):
        return "T"
    raise TypeError(f"not a term: {t!r}")


def alpha_equivalent(a: Term, b: Term) -> bool:
    return _plain(a, {}, 0) == _plain(b, {}, 0)


def _flatten(t: Term):
    """Existential variables and conjuncts of an ∃/∧ cluster."""
    if isinstance(t, Exists):
        vs, parts = _flatten(t.body)
        return [t.var] + vs, parts
    if isinstance(t, And):
        lv, lp = _flatten(t.left)
        rv, rp = _flatten(t.right)
        return lv + rv, lp + rp
    return [], [t]


def _ac(t: Term, env: dict, level: int) -> str:
    if isinstance(t, (Exists, And)):
        vs, parts = _flatten(t)
        best = None
        for perm in itertools.permutations(vs):
            inner = dict(env)
            for i, v in enumerate(perm):
                inner[v] = f"#{level + i}"
            body = "&".join(sorted(_ac(p, inner, level + len(vs)) for p in parts))
            cand = f"E{len(vs)}[{body}]" if vs else f"&[{body}]"
            if best is None or cand < best:
                best = cand
        return best
    if isinstance(t, (Lam, Forall)):
        tag = "L" if isinstance(t, Lam) else "A"
        inner = {**env, t.var: f"#{level}"}
        return f"{tag}.{_ac(t.body, inner, level + 1)}"
    if isinstance(t, App):
        return f"({_ac(t.fn, env, level)} {_ac(t.arg, env, level)})"
    if isinstance(t, Implies):
        return f">({_ac(t.left, env, level)},{_ac(t.right, env, level)})"
    if isinstance(t, Not):
        return f"~{_ac(t.body, env, level)}"
    return _plain(t, env, level)


def canonical_form(t: Term) -> str:
    """A string equal for two terms iff they are ac-equivalent."""
    # unique binder names make lifting existentials out of conjunctions sound
    return _ac(normalize_names(t), {}, 0)


def ac_equivalent(a: Term, b: Term) -> bool:
    return canonical_form(a) == canonical_form(b)
