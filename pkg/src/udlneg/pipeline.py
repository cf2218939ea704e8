"""parse -> enhance -> binarize -> substitute -> compose -> close -> scope."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, List, Optional

from .binarizer import Leaf, ObliquenessHierarchy, SExpr, binarize, format_sexpr, head_node
from .enhancer import DEFAULT_CUES, CueLexicon, enhance
from .lexicon import Lexicon, default_lexicon, word_term
from .logic import (
    App, IllTyped, ScopeReport, Step, Term, beta_reduce, existential_closure, extract_scope,
    format_term, readable, term_to_json,
)
from .ud import ConlluError, DepGraph, parse_sentence, split_sentences


@dataclass(frozen=True)
class Config:
    lexicon: Lexicon = field(default_factory=default_lexicon)
    cues: CueLexicon = DEFAULT_CUES
    hierarchy: ObliquenessHierarchy = ObliquenessHierarchy()
    predicate_source: str = "lemma"
    default_ner: str = "PER"
    trace: bool = False

    def __post_init__(self):
        if self.predicate_source not in ("lemma", "form"):
            raise ValueError("predicate_source must be 'lemma' or 'form'")


def compose_rule(label: str) -> str:
    return f"compose({label})"


@dataclass
class DerivationTrace:
    steps: List[Step] = field(default_factory=list)

    def append(self, step: Step) -> None:
        self.steps.append(step)

    def rules(self) -> List[str]:
        return [s.rule for s in self.steps]

    def lines(self, unicode: bool = True) -> List[str]:
        out = []
        for s in self.steps:
            if s.rule.startswith("compose("):
                out.append("")
                out.append(f"{s.rule}: {readable(s.after, unicode, rename=False)}")
            else:
                out.append(f"→_{s.rule} {readable(s.after, unicode, rename=False)}")
        return out[1:] if out and out[0] == "" else out


def compose(s: SExpr, graph: DepGraph, lexicon: Optional[Lexicon] = None,
            cues: CueLexicon = DEFAULT_CUES, predicate_source: str = "lemma",
            trace: Optional[DerivationTrace] = None) -> Term:
    """Reduce the s-expression bottom-up into a single generalized quantifier."""
    lexicon = lexicon or default_lexicon()
    if isinstance(s, Leaf):
        return word_term(graph.node(s.node), cues, predicate_source)
    head = compose(s.head, graph, lexicon, cues, predicate_source, trace)
    child = compose(s.child, graph, lexicon, cues, predicate_source, trace)
    edge = lexicon.edge_term(s.label, token=head_node(s.child))
    redex = App(App(edge, head), child)
    if trace is not None:
        trace.append(Step(compose_rule(s.label), head, redex))
    try:
        return beta_reduce(redex, trace.steps if trace is not None else None)
    except IllTyped as exc:
        raise IllTyped(str(exc), label=s.label) from None


@dataclass
class SentenceResult:
    sent_id: Optional[str]
    text: Optional[str]
    graph: Optional[DepGraph] = None
    sexpr: Optional[SExpr] = None
    formula: Optional[Term] = None
    scopes: List[ScopeReport] = field(default_factory=list)
    trace: Optional[DerivationTrace] = None
    error: Optional[str] = None
    error_type: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def to_json(self) -> dict:
        out = {"sent_id": self.sent_id, "text": self.text}
        if not self.ok:
            out["error"] = {"type": self.error_type, "message": self.error}
            return out
        g = self.graph
        out["edges"] = [{"head": e.head, "child": e.child, "label": e.label} for e in g.edges]
        out["sexpr"] = format_sexpr(self.sexpr, g)
        out["formula"] = format_term(self.formula)
        out["readable"] = readable(self.formula)
        out["formula_tree"] = term_to_json(self.formula)
        out["scopes"] = [{
            "negation_id": r.negation_id,
            "atoms": [format_term(a) for a in r.atoms],
            "token_indices": list(r.token_indices),
        } for r in self.scopes]
        if self.trace is not None:
            out["trace"] = [{"rule": s.rule, "before": format_term(s.before),
                             "after": format_term(s.after)} for s in self.trace.steps]
        return out


def run_sentence(g: DepGraph, config: Optional[Config] = None) -> SentenceResult:
    """Full conversion of one graph. Errors are recorded on the result, not raised."""
    config = config or Config()
    result = SentenceResult(g.sent_id, g.text)
    try:
        enhanced = enhance(g, config.cues)
        result.graph = enhanced
        result.sexpr = binarize(enhanced, config.hierarchy)
        trace = DerivationTrace() if config.trace else None
        gq = compose(result.sexpr, enhanced, config.lexicon, config.cues,
                     config.predicate_source, trace)
        result.formula = existential_closure(gq, trace.steps if trace is not None else None)
        result.scopes = extract_scope(result.formula)
        result.trace = trace
    except (ValueError, KeyError, IllTyped, RecursionError) as exc:
        result.error = str(exc)
        result.error_type = type(exc).__name__
    return result


def run_conllu(text: str, config: Optional[Config] = None) -> Iterator[SentenceResult]:
    """Convert every sentence of a CoNLL-U document, continuing past failures."""
    config = config or Config()
    for no, (start, lines) in enumerate(split_sentences(text), start=1):
        try:
            g = parse_sentence(lines, start, no, config.default_ner)
        except ConlluError as exc:
            res = SentenceResult(f"#{no}", None, error=str(exc), error_type=type(exc).__name__)
            yield res
            continue
        res = run_sentence(g, config)
        if res.sent_id is None:
            res.sent_id = f"#{no}"
        yield res
