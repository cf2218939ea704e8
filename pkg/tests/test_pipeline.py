import json
from pathlib import Path

import pytest

from udlneg.binarizer import Leaf, binarize
from udlneg.enhancer import enhance
from udlneg.lexicon import Lexicon, default_lexicon, word_term
from udlneg.logic import (
    EQ, App, IllTyped, Lam, Not, Pred, ac_equivalent, extract_scope, free_vars, is_closed,
    parse_term,
)
from udlneg.logic.terms import walk
from udlneg.pipeline import Config, DerivationTrace, compose, run_conllu, run_sentence
from udlneg.ud import parse_conllu

from goldens import WORKED_SENTENCES, FINAL, MALTA, PRE_CLOSURE

DATA = Path(__file__).parent / "data"
FORM = Config(predicate_source="form")


def load(name):
    [g] = parse_conllu((DATA / f"{name}.conllu").read_text())
    return g


def composed(name, **kw):
    g = enhance(load(name))
    return compose(binarize(g), g, predicate_source="form", **kw)


@pytest.mark.parametrize("name", sorted(PRE_CLOSURE))
def test_compose_pre_closure(name):
    assert ac_equivalent(composed(name), parse_term(PRE_CLOSURE[name]))


def test_compose_leaf():
    g = load("no_man_came")
    assert compose(Leaf(2), g) == word_term(g.node(2))


@pytest.mark.parametrize("name", WORKED_SENTENCES)
def test_final_formulas(name):
    res = run_sentence(load(name), FORM)
    assert res.ok, res.error
    assert ac_equivalent(res.formula, parse_term(FINAL[name]))


def test_malta():
    res = run_sentence(load("malta_borders_no_country"), FORM)
    assert ac_equivalent(res.formula, parse_term(MALTA))


def test_lemma_predicates_by_default():
    res = run_sentence(load("no_man_came"))
    names = {n.name for n in walk(res.formula) if isinstance(n, Pred)}
    assert names == {"man", "come", "Actor"}


def test_ner_override_from_config():
    text = (DATA / "malta_borders_no_country.conllu").read_text()
    [res] = run_conllu(text, Config(default_ner="ORG"))
    named = [n for n in walk(res.formula) if isinstance(n, Pred) and n.name == "named"]
    assert named[0].args[2].value == "ORG"


@pytest.mark.parametrize("name", WORKED_SENTENCES + ["malta_borders_no_country"])
def test_result_invariants(name):
    res = run_sentence(load(name), FORM)
    phi = res.formula
    assert is_closed(phi) and not free_vars(phi)
    assert not any(isinstance(n, (Lam, App, EQ)) for n in walk(phi))
    assert res.scopes == extract_scope(phi)
    nots = [n for n in walk(phi) if isinstance(n, Not)]
    assert len(res.scopes) == len(nots)


def test_malta_scope_after_inverted_object():
    res = run_sentence(load("malta_borders_no_country"), FORM)
    [scope] = res.scopes
    assert {"Actor", "named"} <= scope.predicate_names
    assert "country" not in scope.predicate_names


def test_adjunct_containment():
    res = run_sentence(load("john_came_with_nothing"), FORM)
    [scope] = res.scopes
    assert scope.predicate_names == {"thing", "with"}


def test_scope_token_indices():
    res = run_sentence(load("john_came_with_nothing"), FORM)
    # "thing" comes from token 4, the with-role from the nmod child (token 4)
    assert res.scopes[0].token_indices == (4,)
    res = run_sentence(load("no_man_came"), FORM)
    assert res.scopes[0].token_indices == (2, 3)


def test_trace_chains_within_composition_blocks():
    res = run_sentence(load("no_man_came"), Config(trace=True))
    steps = res.trace.steps
    assert steps[0].rule.startswith("compose(")
    assert steps[-1].rule == "ex-clos"
    assert is_closed(steps[-1].after)
    for a, b in zip(steps, steps[1:]):
        if not b.rule.startswith("compose(") and b.rule != "ex-clos":
            assert a.after == b.before
    assert set(res.trace.rules()) >= {"α", "β", "EQ", "ex-clos"}
    assert any(line.startswith("→_EQ ") for line in res.trace.lines())


def test_determinism():
    text = (DATA / "worked_sentences.conllu").read_text()
    cfg = Config(trace=True, predicate_source="form")
    a = [json.dumps(r.to_json(), ensure_ascii=False) for r in run_conllu(text, cfg)]
    b = [json.dumps(r.to_json(), ensure_ascii=False) for r in run_conllu(text, cfg)]
    assert a == b
    assert len(a) == 6


def test_batch_continues_past_failures():
    good = (DATA / "nobody_came.conllu").read_text()
    bad = "1\tx\tx\tX\t_\t_\t0\troot\n"
    results = list(run_conllu(good + "\n" + bad + "\n" + good))
    assert [r.ok for r in results] == [True, False, True]
    assert results[1].error_type == "MalformedLine"
    assert results[1].sent_id == "#2"
    assert results[1].to_json()["error"]["type"] == "MalformedLine"


def test_unknown_label_degrades_gracefully():
    text = ("1\tJohn\tJohn\tPROPN\t_\t_\t2\tnsubj\t_\t_\n"
            "2\tcame\tcome\tVERB\t_\t_\t0\troot\t_\t_\n"
            "3\twell\twell\tINTJ\t_\t_\t2\tdiscourse\t_\t_\n")
    [res] = run_conllu(text)
    assert res.ok
    names = {n.name for n in walk(res.formula) if isinstance(n, Pred)}
    assert names == {"come", "named", "Actor"}


class _BrokenLexicon(Lexicon):
    def edge_term(self, label, token=None):
        if label == "nsubj":
            return parse_term("lambda P . lambda Q . lambda f . (lambda x . man(x_a))(P)")
        return super().edge_term(label, token)


def test_ill_typed_edge_reports_label():
    g = enhance(load("john_does_not_eat"))
    broken = _BrokenLexicon(default_lexicon().records)
    with pytest.raises(IllTyped) as exc:
        compose(binarize(g), g, broken)
    assert exc.value.label == "nsubj"
    res = run_sentence(load("john_does_not_eat"), Config(lexicon=broken))
    assert not res.ok and res.error_type == "IllTyped"


def test_json_record_shape():
    res = run_sentence(load("no_man_came"), FORM)
    d = res.to_json()
    assert d["sent_id"] == "no_man_came"
    assert d["sexpr"] == "(nsubj:inv came (neg:univ man No))"
    assert parse_term(d["formula"]) == res.formula
    assert d["scopes"][0]["negation_id"] == 0
    assert "trace" not in d


def test_config_rejects_unknown_predicate_source():
    with pytest.raises(ValueError):
        Config(predicate_source="upos")


def test_trace_lines_render_steps():
    trace = DerivationTrace()
    g = enhance(load("no_man_came"))
    compose(binarize(g), g, trace=trace)
    lines = trace.lines(unicode=False)
    assert lines[0].startswith("compose(neg:univ): ")
    assert any(line.startswith("→_β ") for line in lines)
