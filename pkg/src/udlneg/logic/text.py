"""Text and JSON forms of terms.

The canonical text form is ASCII::

    forall x . (man(x_a) -> not exists e . came(e_e) & Actor(e_e, x_a))

``format_term(t, unicode=True)`` renders the same structure with logical
symbols, and the parser accepts either spelling.  Binders extend as far right
as possible, ``->`` is right associative, ``&`` left associative, and ``not``
binds tightest.  ``name(args)`` parses as an application when ``name`` is
lambda-bound (or the single argument is itself a term), and as a predicate
otherwise.
"""

from __future__ import annotations

import json
import re
from .terms import (
    EQ, EVENT, INDIVIDUAL, And, App, Const, Exists, Forall, Implies, Lam, Not, Pred,
    Proj, Term, TrueT, TRUE, Var,
)


class TermSyntaxError(ValueError):
    pass


KEYWORDS = {"lambda", "forall", "exists", "not", "TRUE", "EQ"}
_PLAIN = re.compile(r"^[^\W\d][\w′']*$", re.UNICODE)
_PROJ = re.compile(r"^(.+)_([ea])$")

_ASCII = {"lam": "lambda ", "all": "forall ", "ex": "exists ", "not": "not ",
          "and": " & ", "imp": " -> ", "dot": " . "}
_UNI = {"lam": "λ", "all": "∀", "ex": "∃", "not": "¬",
        "and": " ∧ ", "imp": " → ", "dot": ". "}

# precedence: binders 0, implication 1, conjunction 2, negation 3, atoms 4
_LEVEL = {Implies: 1, And: 2, Not: 3}


def _quote(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def _pred_name(name: str) -> str:
    if _PLAIN.match(name) and name not in KEYWORDS and not _PROJ.match(name):
        return name
    return _quote(name)


def format_term(t: Term, unicode: bool = False, bare: frozenset = frozenset()) -> str:
    """Render ``t``. Variables in ``bare`` print without a projection suffix."""
    sym = _UNI if unicode else _ASCII

    def arg(a):
        if isinstance(a, Const):
            return _quote(a.value)
        if a.var in bare:
            return a.var
        return f"{a.var}_{a.sort}"

    def head(fn):
        if isinstance(fn, Var):
            return fn.name
        if isinstance(fn, App):
            return go(fn, 4, True)
        return "(" + go(fn, 0, True) + ")"

    def go(t, prec, tail):
        if isinstance(t, (Lam, Exists, Forall)):
            kw = {Lam: "lam", Exists: "ex", Forall: "all"}[type(t)]
            body = go(t.body, 0, True)
            if isinstance(t.body, Implies):
                body = "(" + body + ")"
            s = sym[kw] + t.var + sym["dot"] + body
            return s if tail else "(" + s + ")"
        level = _LEVEL.get(type(t), 4)
        if level < prec:
            return "(" + go(t, 0, True) + ")"
        if isinstance(t, Implies):
            return go(t.left, 2, False) + sym["imp"] + go(t.right, 1, tail)
        if isinstance(t, And):
            return go(t.left, 2, False) + sym["and"] + go(t.right, 3, tail)
        if isinstance(t, Not):
            return sym["not"] + go(t.body, 3, tail)
        if isinstance(t, Var):
            return t.name
        if isinstance(t, App):
            return head(t.fn) + "(" + go(t.arg, 0, True) + ")"
        if isinstance(t, Pred):
            return _pred_name(t.name) + "(" + ", ".join(arg(a) for a in t.args) + ")"
        if isinstance(t, EQ):
            return f"EQ({t.left}, {t.right})"
        if isinstance(t, TrueT):
            return "TRUE"
        raise TypeError(f"not a term: {t!r}")

    return go(t, 0, True)


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<str>"(?:[^"\\]|\\.)*")
      | (?P<op>->|→|&|∧|¬|λ|∀|∃|\(|\)|,|\.|\\)
      | (?P<ident>[^\W\d][\w′']*)
    )""",
    re.VERBOSE | re.UNICODE,
)
_SYMBOL_KW = {"¬": "not", "λ": "lambda", "\\": "lambda", "∀": "forall", "∃": "exists"}
_SYMBOL_OP = {"→": "->", "∧": "&"}


def _tokenize(src: str):
    pos, out = 0, []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected character at {pos}: {src[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("str"):
            out.append(("str", json.loads(m.group("str"))))
        elif m.group("op"):
            op = m.group("op")
            if op in _SYMBOL_KW:
                out.append(("kw", _SYMBOL_KW[op]))
            else:
                out.append(("op", _SYMBOL_OP.get(op, op)))
        else:
            word = m.group("ident")
            out.append(("kw", word) if word in KEYWORDS else ("ident", word))
    out.append(("eof", None))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self, k=0):
        return self.toks[self.i + k]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            raise TermSyntaxError(f"expected {value or kind}, got {tok[1]!r}")
        return tok[1]

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def parse(self):
        t = self.expr(frozenset())
        if not self.at("eof"):
            raise TermSyntaxError(f"trailing input at {self.peek()[1]!r}")
        return t

    def expr(self, lams):
        if self.at("kw", "lambda") or self.at("kw", "forall") or self.at("kw", "exists"):
            return self.binder(lams)
        left = self.conj(lams)
        if self.at("op", "->"):
            self.next()
            return Implies(left, self.expr(lams))
        return left

    def binder(self, lams):
        kw = self.next()[1]
        name = self.expect("ident")
        self.expect("op", ".")
        if kw == "lambda":
            return Lam(name, self.expr(lams | {name}))
        body = self.expr(lams - {name})
        return Forall(name, body) if kw == "forall" else Exists(name, body)

    def operand(self, lams):
        if self.at("kw", "lambda") or self.at("kw", "forall") or self.at("kw", "exists"):
            return self.binder(lams)
        return self.unary(lams)

    def conj(self, lams):
        left = self.unary(lams)
        while self.at("op", "&"):
            self.next()
            left = And(left, self.operand(lams))
        return left

    def unary(self, lams):
        if self.at("kw", "not"):
            self.next()
            return Not(self.operand(lams))
        return self.atom(lams)

    def atom(self, lams):
        tok = self.next()
        if tok == ("op", "("):
            t = self.expr(lams)
            self.expect("op", ")")
            return self.calls(t, lams)
        if tok == ("kw", "TRUE"):
            return TRUE
        if tok == ("kw", "EQ"):
            self.expect("op", "(")
            a = self.expect("ident")
            self.expect("op", ",")
            b = self.expect("ident")
            self.expect("op", ")")
            return EQ(a, b)
        if tok[0] == "str" and self.at("op", "("):
            return Pred(tok[1], self.pred_args())
        if tok[0] == "ident":
            name = tok[1]
            if not self.at("op", "("):
                return Var(name)
            if name in lams:
                return self.calls(Var(name), lams)
            save = self.i
            try:
                return Pred(name, self.pred_args())
            except TermSyntaxError:
                self.i = save
                return self.calls(Var(name), lams)
        raise TermSyntaxError(f"unexpected token {tok[1]!r}")

    def pred_args(self):
        self.expect("op", "(")
        args = []
        while not self.at("op", ")"):
            tok = self.next()
            if tok[0] == "str":
                args.append(Const(tok[1]))
            elif tok[0] == "ident" and _PROJ.match(tok[1]):
                m = _PROJ.match(tok[1])
                args.append(Proj(m.group(1), m.group(2)))
            else:
                raise TermSyntaxError(f"bad predicate argument {tok[1]!r}")
            if not self.at("op", ")"):
                self.expect("op", ",")
                if self.at("op", ")"):
                    raise TermSyntaxError("dangling comma")
        self.expect("op", ")")
        return tuple(args)

    def calls(self, fn, lams):
        while self.at("op", "("):
            self.next()
            arg = self.expr(lams)
            self.expect("op", ")")
            fn = App(fn, arg)
        return fn


def parse_term(src: str) -> Term:
    return _Parser(src).parse()


def term_to_json(t: Term) -> dict:
    if isinstance(t, Var):
        return {"type": "Var", "name": t.name}
    if isinstance(t, (Lam, Exists, Forall)):
        return {"type": type(t).__name__, "var": t.var, "body": term_to_json(t.body)}
    if isinstance(t, App):
        return {"type": "App", "fn": term_to_json(t.fn), "arg": term_to_json(t.arg)}
    if isinstance(t, (And, Implies)):
        return {"type": type(t).__name__, "left": term_to_json(t.left),
                "right": term_to_json(t.right)}
    if isinstance(t, Not):
        return {"type": "Not", "body": term_to_json(t.body)}
    if isinstance(t, Pred):
        out = {"type": "Pred", "name": t.name, "args": [
            {"type": "Proj", "var": a.var, "sort": a.sort} if isinstance(a, Proj)
            else {"type": "Const", "value": a.value} for a in t.args]}
        if t.token is not None:
            out["token"] = t.token
        return out
    if isinstance(t, EQ):
        return {"type": "EQ", "left": t.left, "right": t.right}
    if isinstance(t, TrueT):
        return {"type": "True"}
    raise TypeError(f"not a term: {t!r}")


def term_from_json(d: dict) -> Term:
    kind = d["type"]
    if kind == "Var":
        return Var(d["name"])
    if kind in ("Lam", "Exists", "Forall"):
        cls = {"Lam": Lam, "Exists": Exists, "Forall": Forall}[kind]
        return cls(d["var"], term_from_json(d["body"]))
    if kind == "App":
        return App(term_from_json(d["fn"]), term_from_json(d["arg"]))
    if kind in ("And", "Implies"):
        cls = And if kind == "And" else Implies
        return cls(term_from_json(d["left"]), term_from_json(d["right"]))
    if kind == "Not":
        return Not(term_from_json(d["body"]))
    if kind == "Pred":
        args = tuple(Proj(a["var"], a["sort"]) if a["type"] == "Proj" else Const(a["value"])
                     for a in d["args"])
        return Pred(d["name"], args, token=d.get("token"))
    if kind == "EQ":
        return EQ(d["left"], d["right"])
    if kind == "True":
        return TRUE
    raise ValueError(f"unknown term type {kind!r}")


def sort_usage(t: Term) -> dict:
    """Map each projected variable name to the set of sorts it is read at."""
    from .terms import walk

    usage = {}
    for node in walk(t):
        if isinstance(node, Pred):
            for a in node.args:
                if isinstance(a, Proj):
                    usage.setdefault(a.var, set()).add(a.sort)
    return usage


_INDIVIDUAL_NAMES = ["x", "y", "z", "w", "u"]


def readable(t: Term, unicode: bool = True, rename: bool = True) -> str:
    """Hand-derivation style rendering.

    Bound variables read at a single sort are renamed in binding order to
    ``e, e′, e″ ...`` (events) or ``x, y, z ...`` (individuals) and printed
    without their projection suffix.  With ``rename=False`` names are kept and
    only the suffixes are dropped.
    """
    from .reduce import normalize_names, rename_bound
    from .terms import PRIME, free_vars, walk

    usage = sort_usage(t)
    if not rename:
        quantified = {n.var for n in walk(t) if isinstance(n, (Exists, Forall))}
        bare = frozenset(v for v in quantified if len(usage.get(v, ())) == 1)
        return format_term(t, unicode=unicode, bare=bare)
    t = normalize_names(t)
    usage = sort_usage(t)
    quantified = [n.var for n in walk(t) if isinstance(n, (Exists, Forall))]
    single = [v for v in quantified if len(usage.get(v, ())) == 1]
    taken = set(free_vars(t)) | {n.var for n in walk(t) if isinstance(n, Lam)}
    taken |= set(quantified) - set(single)
    mapping = {}
    counts = {EVENT: 0, INDIVIDUAL: 0}
    for var in single:
        sort = next(iter(usage[var]))
        while True:
            k = counts[sort]
            counts[sort] += 1
            if sort == EVENT:
                cand = "e" + PRIME * k if k < 4 else f"e{k}"
            else:
                base = _INDIVIDUAL_NAMES[k % len(_INDIVIDUAL_NAMES)]
                cand = base if k < len(_INDIVIDUAL_NAMES) else f"{base}{k // len(_INDIVIDUAL_NAMES)}"
            if cand not in taken:
                break
        taken.add(cand)
        mapping[var] = cand
    renamed = rename_bound(t, mapping)
    bare = frozenset(v for v in mapping.values())
    return format_term(renamed, unicode=unicode, bare=bare)
