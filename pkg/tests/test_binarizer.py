import random
from collections import Counter
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from udlneg.binarizer import (
    DEFAULT_ORDER, Comp, Leaf, ObliquenessHierarchy, binarize, comp_labels, format_sexpr,
)
from udlneg.enhancer import enhance
from udlneg.lexicon import data_dir
from udlneg.ud import DepEdge, DepGraph, DepNode, DisconnectedGraph, parse_conllu

from oracles import EXPECTED_RANK, check_binarization, random_tree_rows, rows_to_text

DATA = Path(__file__).parent / "data"


def load(name):
    [g] = parse_conllu((DATA / f"{name}.conllu").read_text())
    return enhance(g)


@pytest.mark.parametrize("name, expected", [
    ("john_does_not_eat", "(nsubj (aux (neg eat not) does) John)"),
    ("not_every_man_came", "(nsubj:inv came (neg (det:univ man every) Not))"),
    ("no_man_came", "(nsubj:inv came (neg:univ man No))"),
    ("malta_borders_no_country", "(nsubj (dobj:inv borders (neg:univ country no)) Malta)"),
    ("john_came_with_nothing", "(nsubj (nmod:with came (case nothing with)) John)"),
])
def test_worked_sexprs(name, expected):
    g = load(name)
    s = binarize(g)
    assert format_sexpr(s, g) == expected
    check_binarization(g, s)


def test_single_word():
    [g] = parse_conllu("1\tStop\tstop\tVERB\t_\t_\t0\troot\t_\t_\n")
    assert binarize(g) == Leaf(1)
    assert format_sexpr(binarize(g), g) == "Stop"


def test_disconnected():
    g = DepGraph((DepNode(1, "a", "a", "X"), DepNode(2, "b", "b", "X")), (), 1)
    with pytest.raises(DisconnectedGraph):
        binarize(g)


def test_default_ranks():
    h = ObliquenessHierarchy()
    for label, rank in EXPECTED_RANK.items():
        assert h.rank(label) == rank, label
    # an :inv label not listed on its own falls back to its base label
    assert h.rank("advmod:inv") == h.rank("advmod")


def test_same_label_ties_break_by_token_index():
    text = "\n".join([
        "1\tbig\tbig\tADJ\t_\t_\t3\tamod\t_\t_",
        "2\told\told\tADJ\t_\t_\t3\tamod\t_\t_",
        "3\thouse\thouse\tNOUN\t_\t_\t0\troot\t_\t_",
    ])
    [g] = parse_conllu(text)
    assert binarize(g) == Comp("amod", Comp("amod", Leaf(3), Leaf(1)), Leaf(2))


def test_loaded_hierarchy_reorders(tmp_path):
    p = tmp_path / "h.txt"
    p.write_text("# subjects first\nnsubj\naux\n\nneg\n")
    h = ObliquenessHierarchy.load(p)
    assert h.priority == ("nsubj", "aux", "neg")
    g = load("john_does_not_eat")
    assert format_sexpr(binarize(g, h), g) == "(neg (aux (nsubj eat John) does) not)"


def test_shipped_hierarchy_is_default():
    assert ObliquenessHierarchy.load(data_dir() / "hierarchy.txt").priority == DEFAULT_ORDER


def test_comp_labels_cover_edges():
    g = load("malta_borders_no_country")
    assert Counter(comp_labels(binarize(g))) == Counter(e.label for e in g.edges)


def test_deterministic():
    g = load("not_every_man_came")
    assert binarize(g) == binarize(g)


def test_cycle_in_hand_built_graph():
    nodes = (DepNode(1, "a", "a", "X"), DepNode(2, "b", "b", "X"))
    g = DepGraph(nodes, (DepEdge(1, 2, "dep"), DepEdge(2, 1, "dep")), 1)
    with pytest.raises(DisconnectedGraph):
        binarize(g)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10))
def test_random_graphs(seed, n):
    [g] = parse_conllu(rows_to_text(random_tree_rows(random.Random(seed), n)))
    check_binarization(g, binarize(g))
