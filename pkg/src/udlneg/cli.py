"""Command line entry point: ``udlneg [options] [INPUT.conllu|-]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .binarizer import ObliquenessHierarchy, format_sexpr
from .enhancer import CueLexicon
from .lexicon import Lexicon, data_dir
from .logic import format_term, readable
from .pipeline import Config, SentenceResult, run_conllu

FORMATS = ("fol", "sexpr", "json", "scope")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="udlneg",
        description="Convert UD dependency trees (CoNLL-U) to first-order logic "
                    "with scoped negation.")
    p.add_argument("input", nargs="?", default="-", help="CoNLL-U file, or - for stdin")
    p.add_argument("--format", choices=FORMATS, default="fol")
    p.add_argument("--trace", action="store_true", help="show every reduction step")
    p.add_argument("--lexicon", metavar="FILE", help="edge lexicon (label, template, role)")
    p.add_argument("--cues", metavar="FILE", help="cue lexicon (JSON or sectioned text)")
    p.add_argument("--hierarchy", metavar="FILE", help="obliqueness hierarchy, one pattern per line")
    p.add_argument("--predicates", choices=("lemma", "form"), default="lemma",
                   help="name content predicates after the lemma or the lowercased form")
    p.add_argument("--ner", default="PER", help="entity class for PROPN without NER= in MISC")
    p.add_argument("--ascii", action="store_true", help="ASCII canonical text instead of symbols")
    return p


def load_config(args) -> Config:
    base = data_dir()
    lexicon = Lexicon.load(args.lexicon or base / "lexicon.tsv")
    cues_path = args.cues or base / "cues.json"
    hier_path = args.hierarchy or base / "hierarchy.txt"
    return Config(
        lexicon=lexicon,
        cues=CueLexicon.load(cues_path),
        hierarchy=ObliquenessHierarchy.load(hier_path),
        predicate_source=args.predicates,
        default_ner=args.ner,
        trace=args.trace,
    )


def render(res: SentenceResult, fmt: str, ascii_only: bool) -> str:
    if fmt == "json":
        return json.dumps(res.to_json(), ensure_ascii=False)
    label = res.sent_id or ""
    if not res.ok:
        return f"# {label}\tERROR {res.error_type}: {res.error}"
    lines = []
    if res.trace is not None:
        lines.extend(res.trace.lines(unicode=not ascii_only))
        lines.append("")
    if fmt == "fol":
        body = format_term(res.formula) if ascii_only else readable(res.formula)
        lines.append(f"{label}\t{body}")
    elif fmt == "sexpr":
        lines.append(f"{label}\t{format_sexpr(res.sexpr, res.graph)}")
    elif fmt == "scope":
        if not res.scopes:
            lines.append(f"{label}\t-")
        for r in res.scopes:
            atoms = " ".join(format_term(a) for a in r.atoms)
            tokens = ",".join(str(i) for i in r.token_indices)
            lines.append(f"{label}\t{r.negation_id}\t{atoms}\t{tokens}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="udlneg: %(message)s")
    try:
        config = load_config(args)
    except (OSError, ValueError) as exc:
        print(f"udlneg: {exc}", file=sys.stderr)
        return 2
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"udlneg: {exc}", file=sys.stderr)
            return 2

    failed = 0
    for res in run_conllu(text, config):
        if not res.ok:
            failed += 1
            print(f"udlneg: {res.sent_id}: {res.error_type}: {res.error}", file=sys.stderr)
        print(render(res, args.format, args.ascii))
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
