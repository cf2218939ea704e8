"""CoNLL-U reading and writing, and the dependency graph model."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple


class ConlluError(ValueError):
    pass


class MalformedLine(ConlluError):
    def __init__(self, line_no: int, reason: str = "expected 10 tab-separated columns"):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no


class CyclicTree(ConlluError):
    def __init__(self, sentence_no: int):
        super().__init__(f"sentence {sentence_no}: head links form a cycle")
        self.sentence_no = sentence_no


class MultipleRoots(ConlluError):
    def __init__(self, sentence_no: int, roots=()):
        super().__init__(f"sentence {sentence_no}: several tokens attach to ROOT {list(roots)}")
        self.sentence_no = sentence_no


class DisconnectedGraph(ValueError):
    pass


@dataclass(frozen=True)
class DepNode:
    index: int
    form: str
    lemma: str
    upos: str
    ner: Optional[str] = None
    xpos: str = "_"
    feats: str = "_"
    deps: str = "_"
    misc: str = "_"
    flags: FrozenSet[str] = frozenset()

    def __post_init__(self):
        if not self.lemma:
            raise ValueError(f"token {self.index} has an empty lemma")


@dataclass(frozen=True)
class DepEdge:
    head: int
    child: int
    label: str

    def __post_init__(self):
        if self.head == self.child:
            raise ValueError(f"self loop on token {self.child}")

    @property
    def base(self) -> str:
        return self.label.split(":", 1)[0]


@dataclass(frozen=True)
class DepGraph:
    """Tokens plus head->child edges. The ROOT attachment is ``root``, not an edge."""

    nodes: Tuple[DepNode, ...]
    edges: Tuple[DepEdge, ...]
    root: int
    sent_id: Optional[str] = None
    text: Optional[str] = None
    comments: Tuple[str, ...] = ()
    root_label: str = "root"

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "comments", tuple(self.comments))
        seen = set()
        for n in self.nodes:
            if n.index in seen:
                raise ValueError(f"duplicate token index {n.index}")
            seen.add(n.index)

    def node(self, index: int) -> DepNode:
        for n in self.nodes:
            if n.index == index:
                return n
        raise KeyError(index)

    def out_edges(self, head: int) -> List[DepEdge]:
        return [e for e in self.edges if e.head == head]

    def in_edge(self, child: int) -> Optional[DepEdge]:
        for e in self.edges:
            if e.child == child:
                return e
        return None

    def reachable(self) -> set:
        seen, stack = set(), [self.root]
        while stack:
            i = stack.pop()
            if i in seen:
                continue
            seen.add(i)
            stack.extend(e.child for e in self.out_edges(i))
        return seen

    def check_connected(self) -> None:
        missing = {n.index for n in self.nodes} - self.reachable()
        if missing:
            raise DisconnectedGraph(f"tokens {sorted(missing)} are not reachable from the root")

    def with_labels(self, labels: Dict[int, str]) -> "DepGraph":
        """Copy with edge ``i`` relabeled to ``labels[i]``."""
        edges = tuple(replace(e, label=labels.get(i, e.label)) for i, e in enumerate(self.edges))
        return replace(self, edges=edges)


def _misc_get(misc: str, key: str) -> Optional[str]:
    if misc == "_":
        return None
    for item in misc.split("|"):
        k, _, v = item.partition("=")
        if k == key:
            return v
    return None


def split_sentences(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield ``(first_line_no, lines)`` for each blank-line separated block."""
    block, start = [], None
    for no, line in enumerate(text.splitlines(), start=1):
        if line.strip():
            if start is None:
                start = no
            block.append(line)
        elif block:
            yield start, block
            block, start = [], None
    if block:
        yield start, block


def parse_sentence(lines: List[str], first_line: int = 1, sentence_no: int = 1,
                   default_ner: str = "PER") -> DepGraph:
    comments, nodes, heads = [], [], {}
    sent_id = text = None
    for offset, line in enumerate(lines):
        line_no = first_line + offset
        if line.startswith("#"):
            body = line[1:].strip()
            comments.append(body)
            key, sep, value = body.partition("=")
            if sep and key.strip() == "sent_id":
                sent_id = value.strip()
            elif sep and key.strip() == "text":
                text = value.strip()
            continue
        cols = line.rstrip("\r\n").split("\t")
        if len(cols) != 10:
            raise MalformedLine(line_no)
        tok_id = cols[0]
        if "-" in tok_id or "." in tok_id:
            continue
        try:
            index, head = int(tok_id), int(cols[6])
        except ValueError:
            raise MalformedLine(line_no, "non-integer ID or HEAD") from None
        upos = cols[3]
        ner = _misc_get(cols[9], "NER")
        if ner is None and upos == "PROPN":
            ner = default_ner
        lemma = cols[2] if cols[2] != "_" or cols[1] == "_" else cols[1]
        try:
            nodes.append(DepNode(index, cols[1], lemma, upos, ner, cols[4], cols[5],
                                 cols[8], cols[9]))
        except ValueError as exc:
            raise MalformedLine(line_no, str(exc)) from None
        heads[index] = (head, cols[7].lower(), line_no)

    roots = [i for i, (h, _, _) in heads.items() if h == 0]
    if len(roots) > 1:
        raise MultipleRoots(sentence_no, roots)
    for i, (h, _, line_no) in heads.items():
        if h != 0 and h not in heads:
            raise MalformedLine(line_no, f"head {h} does not exist")
        if h == i:
            raise CyclicTree(sentence_no)
    if not roots:
        raise CyclicTree(sentence_no)
    for start in heads:
        seen, cur = set(), start
        while cur != 0:
            if cur in seen:
                raise CyclicTree(sentence_no)
            seen.add(cur)
            cur = heads[cur][0]
    edges = [DepEdge(h, i, label) for i, (h, label, _) in sorted(heads.items()) if h != 0]
    return DepGraph(tuple(nodes), tuple(edges), roots[0], sent_id, text, tuple(comments),
                    heads[roots[0]][1])


def parse_conllu(text: str, default_ner: str = "PER") -> List[DepGraph]:
    return [parse_sentence(lines, start, no, default_ner)
            for no, (start, lines) in enumerate(split_sentences(text), start=1)]


def write_conllu(graphs) -> str:
    out = []
    for g in graphs:
        for c in g.comments:
            out.append(f"# {c}")
        for n in sorted(g.nodes, key=lambda n: n.index):
            e = g.in_edge(n.index)
            head, label = (e.head, e.label) if e else (0, g.root_label)
            out.append("\t".join([str(n.index), n.form, n.lemma, n.upos, n.xpos, n.feats,
                                  str(head), label, n.deps, n.misc]))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")
