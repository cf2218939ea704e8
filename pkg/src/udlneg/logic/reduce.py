"""Alpha renaming, capture-avoiding beta reduction, EQ elimination, closure.

The reducer is a stepper: ``reduction_steps`` contracts one leftmost-outermost
redex at a time and reports every rewrite as a ``Step`` tagged ``α``, ``β`` or
``EQ``, mirroring a hand derivation.  TRUE-conjuncts are dropped as part of
each ``β`` step; EQ elimination runs after every ``β`` step.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator, List, Optional, Tuple

from .terms import (
    BINDERS, EQ, TRUE, And, App, Exists, IllTyped, Lam,
    NotClosable, Pred, Proj, Term, TrueT, Var, all_names, bound_names, children, conj, conjuncts,
    free_vars, fresh_name, rebuild, walk,
)

ALPHA, BETA, EQ_RULE, EX_CLOS = "α", "β", "EQ", "ex-clos"


@dataclass(frozen=True)
class Step:
    rule: str
    before: Term
    after: Term


def _rename_occurrence(t: Term, old: str, new: str) -> Term:
    """Rename free occurrences of ``old`` to ``new``; ``new`` must not be captured."""
    if isinstance(t, Var):
        return Var(new) if t.name == old else t
    if isinstance(t, Pred):
        if not any(isinstance(a, Proj) and a.var == old for a in t.args):
            return t
        args = tuple(Proj(new, a.sort) if isinstance(a, Proj) and a.var == old else a
                     for a in t.args)
        return replace(t, args=args)
    if isinstance(t, EQ):
        return EQ(new if t.left == old else t.left, new if t.right == old else t.right)
    if isinstance(t, BINDERS) and t.var == old:
        return t
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [_rename_occurrence(k, old, new) for k in kids])


def alpha_rename(t: Term, avoid=frozenset()) -> Term:
    """Rename binders so they are pairwise distinct and disjoint from ``avoid``.

    Free variables are never touched.  Binders that already satisfy both
    conditions keep their names.
    """
    used = set(avoid) | set(free_vars(t))
    pool = used | all_names(t)

    def go(t):
        if isinstance(t, BINDERS):
            name = t.var
            body = t.body
            if name in used:
                new = fresh_name(name, pool)
                pool.add(new)
                body = _rename_occurrence(body, name, new)
                name = new
            used.add(name)
            pool.add(name)
            return type(t)(name, go(body))
        kids = children(t)
        if not kids:
            return t
        return rebuild(t, [go(k) for k in kids])

    return go(t)


def rename_bound(t: Term, mapping: dict) -> Term:
    """Rename binders (and their occurrences) by name; assumes unique binder names."""
    if isinstance(t, BINDERS) and t.var in mapping:
        new = mapping[t.var]
        return type(t)(new, rename_bound(_rename_occurrence(t.body, t.var, new), mapping))
    kids = children(t)
    if not kids:
        return t
    return rebuild(t, [rename_bound(k, mapping) for k in kids])


def substitute(t: Term, name: str, value: Term) -> Term:
    """Capture-avoiding ``t[name := value]``."""
    fv = free_vars(value)

    def go(t):
        if isinstance(t, Var):
            return value if t.name == name else t
        if isinstance(t, (Pred, EQ)):
            if name not in _plain_occurrences(t):
                return t
            if not isinstance(value, Var):
                raise IllTyped(f"cannot project from non-variable {value!r}")
            return _rename_occurrence(t, name, value.name)
        if isinstance(t, BINDERS):
            if t.var == name:
                return t
            if t.var in fv and name in free_vars(t.body):
                new = fresh_name(t.var, fv | all_names(t.body) | {name})
                return type(t)(new, go(_rename_occurrence(t.body, t.var, new)))
            return type(t)(t.var, go(t.body))
        kids = children(t)
        if not kids:
            return t
        return rebuild(t, [go(k) for k in kids])

    return go(t)


def _plain_occurrences(t):
    if isinstance(t, Pred):
        return {a.var for a in t.args if isinstance(a, Proj)}
    return {t.left, t.right}


def simplify_true(t: Term) -> Term:
    """Drop TRUE conjuncts: ``TRUE ∧ φ`` and ``φ ∧ TRUE`` become ``φ``."""
    kids = children(t)
    if not kids:
        return t
    t = rebuild(t, [simplify_true(k) for k in kids])
    if isinstance(t, And):
        if isinstance(t.left, TrueT):
            return t.right
        if isinstance(t.right, TrueT):
            return t.left
    return t


def _eq_partner(eq: EQ, var: str) -> Optional[str]:
    if eq.left == var and eq.right != var:
        return eq.right
    if eq.right == var and eq.left != var:
        return eq.left
    return None


def _eliminate_here(t: Exists) -> Optional[Term]:
    parts = conjuncts(t.body)
    for i, part in enumerate(parts):
        if isinstance(part, EQ):
            other = _eq_partner(part, t.var)
            if other is None:
                continue
            rest = conj(*(parts[:i] + parts[i + 1:]))
            return substitute(rest, t.var, Var(other))
    return None


def eq_eliminate(t: Term) -> Term:
    """Rewrite ``∃z.(φ ∧ EQ(x,z))`` to ``φ[z := x]`` everywhere, bottom-up."""
    kids = children(t)
    if kids:
        t = rebuild(t, [eq_eliminate(k) for k in kids])
    if isinstance(t, Exists):
        out = _eliminate_here(t)
        if out is not None:
            return eq_eliminate(out)
    return t


# -- redex search -----------------------------------------------------------

def _find_redex(t: Term, path=()) -> Optional[Tuple[int, ...]]:
    """Path to the leftmost-outermost beta redex, or None."""
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return path
    for i, k in enumerate(children(t)):
        found = _find_redex(k, path + (i,))
        if found is not None:
            return found
    return None


def _get(t: Term, path) -> Term:
    for i in path:
        t = children(t)[i]
    return t


def _put(t: Term, path, new: Term) -> Term:
    if not path:
        return new
    kids = list(children(t))
    kids[path[0]] = _put(kids[path[0]], path[1:], new)
    return rebuild(t, kids)


def reduction_steps(t: Term) -> Iterator[Step]:
    """Yield every rewrite on the way to beta-normal form."""
    cur = t
    out = eq_eliminate(cur)
    if out != cur:
        yield Step(EQ_RULE, cur, out)
        cur = out
    while True:
        path = _find_redex(cur)
        if path is None:
            return
        redex = _get(cur, path)
        lam, arg = redex.fn, redex.arg

        # rename the argument's binders away from everything else in the term
        outside = all_names(_put(cur, path, App(lam, TRUE)))
        new_arg = alpha_rename(arg, outside)
        if new_arg != arg:
            nxt = _put(cur, path, App(lam, new_arg))
            yield Step(ALPHA, cur, nxt)
            cur, arg = nxt, new_arg

        # rename binders inside the function that would capture the argument
        fv = free_vars(arg)
        if fv & set(bound_names(lam.body)):
            new_lam = _avoid_capture(lam, fv, all_names(cur))
            if new_lam != lam:
                nxt = _put(cur, path, App(new_lam, arg))
                yield Step(ALPHA, cur, nxt)
                cur, lam = nxt, new_lam

        contracted = substitute(lam.body, lam.var, arg)
        nxt = simplify_true(_put(cur, path, contracted))
        yield Step(BETA, cur, nxt)
        cur = nxt

        out = eq_eliminate(cur)
        if out != cur:
            yield Step(EQ_RULE, cur, out)
            cur = out


def _avoid_capture(lam: Lam, fv, taken) -> Lam:
    pool = set(taken) | set(fv)

    def go(t):
        if isinstance(t, BINDERS):
            name, body = t.var, t.body
            if name in fv:
                new = fresh_name(name, pool)
                pool.add(new)
                body = _rename_occurrence(body, name, new)
                name = new
            return type(t)(name, go(body))
        kids = children(t)
        if not kids:
            return t
        return rebuild(t, [go(k) for k in kids])

    return Lam(lam.var, go(lam.body))


def _check_heads(t: Term) -> None:
    if isinstance(t, App):
        head = t.fn
        while isinstance(head, App):
            head = head.fn
        if not isinstance(head, Var):
            raise IllTyped(f"application of non-function {head!r}")
    for k in children(t):
        _check_heads(k)


def normalize_names(t: Term) -> Term:
    """Barendregt form: binder names unique and distinct from free names."""
    return alpha_rename(t, free_vars(t))


def beta_reduce(t: Term, trace: Optional[List[Step]] = None) -> Term:
    """Beta-normal form of ``t`` with TRUE/EQ simplification interleaved."""
    cur = t
    for step in reduction_steps(t):
        if trace is not None:
            trace.append(step)
        cur = step.after
    _check_heads(cur)
    out = normalize_names(cur)
    if trace is not None and out != cur:
        trace.append(Step(ALPHA, cur, out))
    return out


TRIVIAL_PROPERTY = Lam("x", TRUE)


def existential_closure(t: Term, trace: Optional[List[Step]] = None) -> Term:
    """Apply a one-handle term ``λf.φ`` to ``λx.TRUE`` and reduce."""
    if not isinstance(t, Lam):
        raise NotClosable(f"expected a one-handle abstraction, got {type(t).__name__}")
    out = beta_reduce(App(t, TRIVIAL_PROPERTY))
    if free_vars(out) or any(isinstance(n, (Lam, App)) for n in walk(out)):
        raise NotClosable("closure left free variables or unreduced abstractions")
    if trace is not None:
        trace.append(Step(EX_CLOS, t, out))
    return out
