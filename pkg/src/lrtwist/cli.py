"""Command-line front end: ``lrtwist <command> ...``.

Every command prints a run report (text, or JSON with ``--json``) and exits
with status 0 iff every check it ran passed.  Input and output files use the
JSON container of :mod:`lrtwist.serialize`.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import kernels, serialize
from .algebra import Algebra, check_algebra, multiplication_table
from .catalog import (NEGATIVE_CONTROLS, CatalogError, build_entry, check_payload, entry_ids,
                      group_algebra, load_catalog, sign_algebra, truncated_poly)
from .exactfield import FieldError, SingularMatrixError, field_from_tag
from .hopf import (BicomoduleAlgebra, BimoduleAlgebra, build_lr_smash, iterated_smash, iterated_tables,
                   regular_bicomodule, smash_report)
from .invariance import (build_bullet_algebra, build_twisted_pair, check_invundtw, check_pregat,
                         invariance_iso, invariance_suite)
from .iterate import build_iterated
from .report import PreconditionError, Report
from .search import MODES, SearchLimitError, census_json, census_table, run_search
from .twisted import (LRPair, build_lr_product, build_q_product,
                      build_twisted_product, canonical_twistors, check_lr_suite, detwist)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CHECK_KINDS = ("algebra", "twisting", "qmap", "lrpair", "bialgebra", "hopf", "bimodule",
               "bicomodule", "ydl", "cocycle", "twistdata", "triple")
PRODUCTS = ("twisted", "q", "lr", "smash", "iterated", "bullet")


class UsageError(Exception):
    """Bad input: unreadable file, wrong kind, unknown id.  Exit status 2."""


@dataclass
class RunReport:
    command: list[str]
    reports: list[Report] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    outputs: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_USAGE
        return EXIT_OK if all(r.ok for r in self.reports) else EXIT_FAIL

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {"command": self.command, "exit_code": self.exit_code,
                               "reports": [r.to_dict() for r in self.reports]}
        if self.notes:
            out["notes"] = self.notes
        if self.outputs:
            out["outputs"] = self.outputs
        if self.error is not None:
            out["error"] = self.error
        if timing:
            out["timing"] = {k: round(v, 6) for k, v in self.timing.items()}
        return out

    def text(self, timing: bool = False) -> str:
        lines = ["$ lrtwist " + " ".join(self.command)]
        for rep in self.reports:
            lines.append(str(rep))
        lines.extend(self.notes)
        lines.extend(f"wrote {p}" for p in self.outputs)
        if self.error is not None:
            lines.append(f"error: {self.error}")
        if timing:
            lines.extend(f"time {k}: {v:.3f} s" for k, v in self.timing.items())
        status = {EXIT_OK: "ALL PASS", EXIT_FAIL: "FAILED", EXIT_USAGE: "ERROR"}[self.exit_code]
        lines.append(f"exit {self.exit_code} ({status})")
        return "\n".join(lines)


class _Timer:
    def __init__(self, run: RunReport, name: str):
        self.run, self.name = run, name

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.run.timing[self.name] = self.run.timing.get(self.name, 0.0) + time.perf_counter() - self.t0


# -- input helpers ----------------------------------------------------------------------


def _load(path: str, field_tag: str | None) -> serialize.Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        if field_tag is None:
            return serialize.loads(text)
        data = json.loads(text)
        if isinstance(data, dict):
            data["field"] = field_tag
        return serialize.from_data(data)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except serialize.SerializationError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _pick(doc: serialize.Document, kinds: Sequence[str], label: str | None = None):
    """The labelled block, else the root if its kind fits, else the first block of a fitting kind."""
    if label is not None:
        if label not in doc.objects:
            raise UsageError(f"no block labelled {label!r}")
        if doc.kinds[label] not in kinds:
            raise UsageError(f"block {label!r} is a {doc.kinds[label]}, expected {'/'.join(kinds)}")
        return doc.kinds[label], doc.objects[label]
    if doc.root in doc.objects and doc.kinds[doc.root] in kinds:
        return doc.kinds[doc.root], doc.objects[doc.root]
    for kind in kinds:
        for lab, k in doc.kinds.items():
            if k == kind:
                return k, doc.objects[lab]
    raise UsageError(f"document has no {'/'.join(kinds)} block")


def _as_pair(kind: str, obj) -> LRPair:
    if kind == "lrpair":
        return obj
    if kind == "twisting":
        return LRPair.twisted_only(obj)
    raise UsageError(f"expected an L-R pair, got a {kind}")


def _write_algebra(run: RunReport, alg: Algebra, out: str):
    """Algebra JSON plus an aligned table next to it, then re-check the written file."""
    path = Path(out)
    path.write_text(json.dumps(serialize.algebra_json(alg), indent=1, ensure_ascii=False) + "\n",
                    encoding="utf-8")
    table = path.with_suffix(".txt")
    table.write_text(f"{alg.label} over {alg.field.tag}, dimension {alg.dim}\n"
                     + multiplication_table(alg) + "\n", encoding="utf-8")
    run.outputs.extend([str(path), str(table)])
    recheck = check_algebra(serialize.load(path).get())
    recheck.subject = f"re-check of {path.name}"
    run.reports.append(recheck)


def _named_algebra(name: str, fld) -> Algebra:
    """``kC<n>``, ``trunc<n>``, ``sign`` or the path of an algebra file."""
    if name.startswith("kC") and name[2:].isdigit():
        return group_algebra(int(name[2:]), fld).alg
    if name.startswith("trunc") and name[5:].isdigit():
        return truncated_poly(int(name[5:]), fld)
    if name == "sign":
        return sign_algebra(fld)
    if Path(name).exists():
        kind, obj = _pick(_load(name, fld.tag), ("algebra", "hopf", "bialgebra"))
        return obj if kind == "algebra" else obj.alg
    raise UsageError(f"unknown algebra {name!r}: use kC<n>, trunc<n>, sign or a file path")


# -- commands ---------------------------------------------------------------------------


def cmd_check(args, run: RunReport):
    doc = _load(args.path, args.field)
    if args.kind is not None and args.kind not in CHECK_KINDS:
        raise UsageError(f"unknown kind {args.kind!r}; choose from {', '.join(CHECK_KINDS)}")
    kinds = (args.kind,) if args.kind else CHECK_KINDS
    kind, obj = _pick(doc, kinds, args.label)
    with _Timer(run, "check"):
        run.reports.append(check_payload(kind, obj, args.jobs))


def _build_product(args, doc) -> tuple[Algebra, Report | None]:
    force, product = args.force, args.product
    if product == "twisted":
        kind, obj = _pick(doc, ("twisting", "lrpair"), args.label)
        return build_twisted_product(obj if kind == "twisting" else obj.r, force), None
    if product == "q":
        kind, obj = _pick(doc, ("qmap", "lrpair"), args.label)
        return build_q_product(obj if kind == "qmap" else obj.q, force), None
    if product == "lr":
        kind, obj = _pick(doc, ("lrpair", "twisting"), args.label)
        return build_lr_product(_as_pair(kind, obj), force), None
    if product == "smash":
        _, m = _pick(doc, ("bimodule",), args.label)
        c = _bicomodule_for(doc, m)
        return build_lr_smash(m, c, force), None
    if product == "iterated":
        _, t = _pick(doc, ("triple",), args.label)
        left, _, rep = build_iterated(t, force)
        return left, rep
    _, d = _pick(doc, ("twistdata",), args.label)
    return build_bullet_algebra(d, force), None


def _bicomodule_for(doc, m: BimoduleAlgebra) -> BicomoduleAlgebra:
    """A bicomodule block of the document, else the regular bicomodule of m's Hopf algebra."""
    if "bicomodule" in doc.kinds.values():
        return _pick(doc, ("bicomodule",))[1]
    return regular_bicomodule(m.h)


def cmd_build(args, run: RunReport):
    doc = _load(args.path, args.field)
    with _Timer(run, "build"):
        alg, rep = _build_product(args, doc)
    if rep is not None:
        run.reports.append(rep)
    run.notes.append(f"built {alg.label} (dimension {alg.dim})")
    if args.out:
        with _Timer(run, "write"):
            _write_algebra(run, alg, args.out)
    else:
        run.notes.append(multiplication_table(alg))
        run.reports.append(check_algebra(alg, args.jobs))


def cmd_iterate(args, run: RunReport):
    _, t = _pick(_load(args.path, args.field), ("triple",), args.label)
    with _Timer(run, "iterate"):
        left, right, rep = build_iterated(t, args.force)
    run.reports.append(rep)
    if args.out:
        _write_algebra(run, left, args.out)


def cmd_smash(args, run: RunReport):
    doc = _load(args.path, args.field)
    if args.iterated:
        _, y = _pick(doc, ("ydl",))
        if args.label is not None:
            _, a_cal = _pick(doc, ("bimodule",), args.label)
        else:
            others = [doc.objects[lab] for lab, k in doc.kinds.items()
                      if k == "bimodule" and doc.objects[lab] is not y.bimod]
            if not others:
                raise UsageError("--iterated needs a ydl block and a separate bimodule block")
            a_cal = others[0]
        with _Timer(run, "iterated smash"):
            run.reports.append(iterated_smash(a_cal, y, args.force))
        if args.out:
            _write_algebra(run, iterated_tables(a_cal, y)[0], args.out)
        return
    _, m = _pick(doc, ("bimodule",), args.label)
    c = _bicomodule_for(doc, m)
    with _Timer(run, "smash"):
        run.reports.append(smash_report(m, c))
    if args.out:
        _write_algebra(run, build_lr_smash(m, c), args.out)


def cmd_invariance(args, run: RunReport):
    doc = _load(args.path, args.field)
    kinds = set(doc.kinds.values())
    with _Timer(run, "invariance"):
        if "bimodule" in kinds and "cocycle" in kinds and args.label is None:
            run.reports.append(invariance_suite(_pick(doc, ("bimodule",))[1], _pick(doc, ("cocycle",))[1]))
            return
        _, d = _pick(doc, ("twistdata",), args.label)
        rep = Report("twisting pipeline")
        rep.extend(check_pregat(d, args.jobs), "pregat")
        rep.extend(check_lr_suite(d.pair, args.jobs), "(R,Q)")
        rep.extend(check_invundtw(d, args.jobs), "invundtw")
        run.reports.append(rep)
        if not rep.ok and not args.force:
            run.notes.append("hypotheses fail; twisted pair and isomorphism skipped (use --force)")
            return
        pair, pair_rep = build_twisted_pair(d, force=True)
        rep.extend(pair_rep, "(R̃,Q̃)")
        _, iso_rep = invariance_iso(d, pair=pair)
        rep.extend(iso_rep, "iso")


def cmd_detwist(args, run: RunReport):
    kind, obj = _pick(_load(args.path, args.field), ("lrpair",), args.label)
    with _Timer(run, "detwist"):
        try:
            p, _, rep = detwist(obj)
        except SingularMatrixError:
            raise UsageError("Q is not invertible, so the pair cannot be detwisted") from None
    run.reports.append(rep)
    if args.twistors:
        run.reports.append(canonical_twistors(obj)[3])
    if args.out:
        Path(args.out).write_text(serialize.dumps(p, "P"), encoding="utf-8")
        run.outputs.append(args.out)


def cmd_search(args, run: RunReport):
    try:
        fld = field_from_tag(args.field or "F2")
    except FieldError as exc:
        raise UsageError(str(exc)) from None
    if args.algebras:
        names = args.algebras.split(",")
    elif args.dims:
        names = [f"kC{d}" for d in args.dims.split(",")]
    else:
        raise UsageError("give --dims m,n or --algebras A,B")
    if len(names) != 2:
        raise UsageError("search needs exactly two algebras")
    a, b = (_named_algebra(n.strip(), fld) for n in names)
    try:
        with _Timer(run, "search"):
            census = run_search(a, b, args.search_kind, args.mode, args.seed or 0, args.budget,
                                args.keep, args.jobs)
    except SearchLimitError as exc:
        raise UsageError(f"search refused: {exc}") from None
    rep = Report("search")
    rep.record("census", True)
    if census.get("budget_exhausted"):
        run.notes.append("budget exhausted: partial census")
    run.reports.append(rep)
    run.notes.append(census_table(census).rstrip())
    run.notes.append(f"kernel backend: {kernels.BACKEND}")
    if args.out:
        Path(args.out).write_text(census_json(census), encoding="utf-8")
        run.outputs.append(args.out)


def cmd_catalog(args, run: RunReport):
    if args.action == "list":
        for i in entry_ids():
            e = build_entry(i)
            run.notes.append(f"{i:<28}{e.kind:<12}{e.provenance_note}")
        for n in NEGATIVE_CONTROLS.values():
            run.notes.append(f"{n.id:<28}{'negative':<12}{n.note} (expect {n.advertised} to fail)")
        return
    if args.action == "export":
        if not args.ids:
            raise UsageError("catalog export needs at least one entry id")
        try:
            objs = [build_entry(i).payload for i in args.ids]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        text = serialize.dumps(objs if len(objs) > 1 else objs[0])
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            run.outputs.append(args.out)
        else:
            run.notes.append(text.rstrip())
        return
    if args.action == "negative":
        rep = Report("negative controls")
        for n in NEGATIVE_CONTROLS.values():
            if args.ids and n.id not in args.ids:
                continue
            inner = n.run(args.jobs)
            fail = inner.first_failure()
            rep.record(n.id, set(inner.failed) == {n.advertised},
                       f"({n.id}) expected exactly ({n.advertised}) to fail, got {inner.failed}")
            run.notes.append(f"{n.id}: {fail.witness if fail else 'no failure'}")
        run.reports.append(rep)
        return
    ids = args.ids or entry_ids()
    unknown = [i for i in ids if i not in entry_ids()]
    if unknown:
        raise UsageError(f"unknown catalog entries: {', '.join(unknown)}")
    with _Timer(run, "catalog check"):
        try:
            load_catalog(ids, args.jobs)
            ok, problem = True, None
        except CatalogError as exc:
            ok, problem = False, str(exc)
    rep = Report("catalog")
    rep.record("load", ok, problem)
    run.notes.append(f"{len(ids)} entries")
    run.reports.append(rep)


# -- argument parsing -------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", help="override the field: Q or F<p>")
    p.add_argument("--out", help="output file")
    p.add_argument("--force", action="store_true", help="build even if hypotheses fail")
    p.add_argument("--seed", type=int, default=None, help="random seed (search)")
    p.add_argument("--budget", type=int, default=None, help="candidate or sample budget (search)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--json", action="store_true", help="print the run report as JSON")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    p.add_argument("--label", help="block label to use instead of the root")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="lrtwist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run the checks for one structure")
    p.add_argument("path")
    p.add_argument("--kind", help="structure kind (default: inferred)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", parents=[common], help="build a product algebra")
    p.add_argument("path")
    p.add_argument("--product", required=True, choices=PRODUCTS)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("iterate", parents=[common], help="iterate a triple of L-R pairs")
    p.add_argument("path")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("smash", parents=[common], help="L-R-smash product checks")
    p.add_argument("path")
    p.add_argument("--iterated", action="store_true", help="iterated smash on a ydl block")
    p.set_defaults(func=cmd_smash)

    p = sub.add_parser("invariance", parents=[common], help="invariance under twisting")
    p.add_argument("path")
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("detwist", parents=[common], help="detwist an L-R pair with invertible Q")
    p.add_argument("path")
    p.add_argument("--twistors", action="store_true", help="also check the three twistors")
    p.set_defaults(func=cmd_detwist)

    p = sub.add_parser("search", parents=[common], help="census of twisting maps over GF(p)")
    p.add_argument("--dims", help="m,n: cyclic group algebras kC_m, kC_n")
    p.add_argument("--algebras", help="A,B: kC<n>, trunc<n>, sign or algebra files")
    p.add_argument("--kind", dest="search_kind", choices=("R", "RQ"), default="R")
    p.add_argument("--mode", choices=MODES, default="exhaustive")
    p.add_argument("--keep", type=int, default=32, help="representatives to keep")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("catalog", parents=[common], help="list, export or check catalog entries")
    p.add_argument("action", choices=("list", "export", "check", "negative"))
    p.add_argument("ids", nargs="*")
    p.set_defaults(func=cmd_catalog)
    return parser


def run(argv: Sequence[str]) -> tuple[RunReport, argparse.Namespace]:
    args = build_parser().parse_args(list(argv))
    report = RunReport(list(argv))
    if args.field is not None and args.command != "search":
        try:
            field_from_tag(args.field)
        except FieldError as exc:
            report.error = str(exc)
            return report, args
    try:
        args.func(args, report)
    except UsageError as exc:
        report.error = str(exc)
    except PreconditionError as exc:
        report.reports.append(exc.report)
        report.notes.append(str(exc))
    except (ValueError, FieldError) as exc:
        report.error = str(exc)
    return report, args


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    report, args = run(argv)
    if args.json:
        print(json.dumps(report.to_dict(args.timing), indent=1, ensure_ascii=False))
    else:
        print(report.text(args.timing))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
