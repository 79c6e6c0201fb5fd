"""Command-line interface: ``asmgroups <command> ...`` or ``python -m asmgroups``.

Exit status: 0 on success, 1 on invalid input, 2 when a resource guard
refuses the request.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Any, Callable, Sequence

from . import asm as asm_mod
from .config import ENV_PREFIX, RunConfig
from .constructions import (
    FrameError,
    FrameMeta,
    FramedAsm,
    build_E_k,
    build_frame,
    build_symmetric_group_generators,
    build_symmetric_group_low_rank,
    expand_center,
    recognize_frame,
    theta_embed,
)
from .enumeration import (
    ResourceGuardError,
    atlas_summary,
    classify,
    enumerate_asms,
    group_atlas,
    idempotent_census,
    square_root_census,
    _guard,
)
from .formats import MatrixFormatError, frame_to_obj, parse_matrices, parse_matrix, to_obj, to_text
from .matrix import IntMatrix, Permutation, kronecker, rank
from .order import (
    GroupError,
    asm_cyclic_order,
    closure,
    detect_order,
    fingerprint,
    is_idempotent,
)

SCHEMA_VERSION = 1


class InputError(ValueError):
    pass


class Output:
    """Collects text lines or one structured object, written at the end."""

    def __init__(self, cfg: RunConfig, command: str):
        self.cfg = cfg
        self.lines: list[str] = []
        self.data: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "command": command}

    @property
    def structured(self) -> bool:
        return self.cfg.output_format != "text"

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def matrix(self, m: IntMatrix, label: str | None = None) -> None:
        if label:
            self.lines.append(f"{label}:")
        self.lines.append(to_text(m))
        self.lines.append("")

    def render(self) -> str:
        if self.structured:
            return json.dumps(self.data, indent=2) + "\n"
        return "\n".join(self.lines).rstrip("\n") + "\n"


def _write_atomic(path: str, text: str) -> None:
    # a cancelled run must not leave a partial file behind
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".asmgroups-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise InputError(f"bad permutation {text!r}: {exc}") from exc


def _read_asm(path: str) -> IntMatrix:
    m = parse_matrix(_read(path))
    v = asm_mod.first_violation(m)
    if v is not None:
        raise InputError(f"{path}: not an ASM: {v}")
    return m


def _order_fields(m: IntMatrix, cfg: RunConfig) -> dict[str, Any]:
    v = detect_order(m, cfg.order_cap, cfg.magnitude_bound)
    r = rank(m)
    out: dict[str, Any] = {"rank": r, "nullity": m.n - r}
    if v.finite:
        out["order"] = v.order
        out["idempotent"] = v.order == 1
        out["cyclic_group_in_SA"] = asm_cyclic_order(m, cfg.order_cap).finite
    else:
        out["order"] = None
        out["no_finite_order"] = v.reason
    return out


def _describe(out: Output, m: IntMatrix, fields: dict[str, Any], label: str,
              frame: FrameMeta | None = None) -> None:
    if out.structured:
        obj = to_obj(m)
        obj.update(fields)
        if frame is not None:
            obj["frame"] = frame_to_obj(frame)
        out.data.setdefault("matrices", []).append(obj)
        out.data.setdefault("labels", []).append(label)
    else:
        out.matrix(m, label)
        out.line(", ".join(f"{k}: {_fmt(v)}" for k, v in fields.items()))
        out.line()


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    return str(v)


# -- commands ---------------------------------------------------------------

def cmd_verify(args, cfg: RunConfig, out: Output) -> int:
    m = parse_matrix(_read(args.file))
    v = asm_mod.first_violation(m)
    ok = v is None
    report: dict[str, Any] = {"asm": ok}
    if ok:
        report["reduced"] = asm_mod.is_reduced_form(m)
        report["negatives"] = asm_mod.negative_entry_count(m)
    else:
        report["violation"] = {"line": v.line, "index": v.index, "position": v.position,
                               "reason": v.reason}
    r = rank(m)
    report["rank"] = r
    report["nullity"] = m.n - r
    if out.structured:
        out.data.update(report)
    else:
        flat = dict(report)
        if not ok:
            flat["violation"] = str(v)
        out.line(", ".join(f"{k}: {_fmt(x)}" for k, x in flat.items()))
    return 0 if ok else 1


def cmd_order(args, cfg: RunConfig, out: Output) -> int:
    m = parse_matrix(_read(args.file))
    v = detect_order(m, cfg.order_cap, cfg.magnitude_bound)
    r = rank(m)
    report: dict[str, Any] = {"rank": r, "nullity": m.n - r}
    if v.finite:
        report.update(order=v.order, cyclic_group_in_SA=asm_cyclic_order(m, cfg.order_cap).finite)
    else:
        report.update(order=None, verdict=v.reason, iterations=v.iterations)
    if out.structured:
        out.data.update(report)
        if v.finite:
            out.data["identity"] = to_obj(v.identity)
    else:
        out.line(", ".join(f"{k}: {_fmt(x)}" for k, x in report.items()))
        if v.finite:
            out.matrix(v.identity, "identity")
    return 0


def _report_group(out: Output, g, label: str = "group") -> None:
    fp = fingerprint(g)
    if out.structured:
        out.data[label] = {
            "order": g.order,
            "fingerprint": fp.as_dict(),
            "all_asm": g.all_asm(),
            "identity": to_obj(g.identity_matrix),
            "elements": [to_obj(x) for x in g.elements],
            "cayley": [list(r) for r in g.cayley],
        }
    else:
        hist = ", ".join(f"{k}:{v}" for k, v in sorted(fp.element_order_histogram.items()))
        out.line(f"{label} order: {g.order}, abelian: {_fmt(fp.abelian)}, "
                 f"center: {fp.center_size}, all asm: {_fmt(g.all_asm())}")
        out.line(f"element orders: {hist}")
        out.line("cayley:")
        out.lines.extend(f"  {i}: " + " ".join(str(x) for x in r) for i, r in enumerate(g.cayley))
        out.line()
        out.matrix(g.identity_matrix, "identity")


def cmd_closure(args, cfg: RunConfig, out: Output) -> int:
    gens = parse_matrices(_read(args.file))
    if not gens:
        raise InputError("no matrices given")
    try:
        g = closure(gens, cfg.closure_max)
    except GroupError as exc:
        raise InputError(str(exc)) from exc
    _report_group(out, g)
    return 0


def _kron(args, cfg, out) -> int:
    a, b = _read_asm(args.left), _read_asm(args.right)
    k = kronecker(a, b)
    _describe(out, k, _order_fields(k, cfg) | {"asm": asm_mod.is_asm(k)}, "kronecker")
    return 0


def cmd_construct(args, cfg: RunConfig, out: Output) -> int:
    form = args.form
    if form == "frame":
        f = build_frame(_perm(args.perm), args.variant)
        _describe(out, f.asm, _order_fields(f.asm, cfg), f"frame {args.variant}", f.frame_meta)
    elif form == "ek":
        if args.k < 1:
            raise InputError("k must be >= 1")
        e = build_E_k(args.k)
        r = rank(e)
        _describe(out, e, {"idempotent": is_idempotent(e), "rank": r, "nullity": e.n - r,
                           "reduced": asm_mod.is_reduced_form(e)}, f"E_{args.k}")
    elif form == "symn":
        if args.n < 1:
            raise InputError("n must be >= 1")
        if args.family == "n-plus-4":
            s, t = (f.asm for f in build_symmetric_group_generators(args.n))
        else:
            s, t = build_symmetric_group_low_rank(args.n)
        _describe(out, s, _order_fields(s, cfg), "S")
        _describe(out, t, _order_fields(t, cfg), "T")
        try:
            g = closure([s, t], max(cfg.closure_max, 1))
        except GroupError as exc:
            raise InputError(f"closure failed: {exc}") from exc
        _report_group(out, g)
    elif form == "theta":
        p = _perm(args.perm)
        try:
            a = theta_embed(p, args.k)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        _describe(out, a, _order_fields(a, cfg), "theta")
    elif form == "kron":
        return _kron(args, cfg, out)
    elif form == "expand-center":
        base = _read_framed(args.base)
        f = expand_center(base, _perm(args.perm))
        _describe(out, f.asm, _order_fields(f.asm, cfg), "expanded", f.frame_meta)
    return 0


def _read_framed(path: str) -> FramedAsm:
    text = _read(path)
    m = parse_matrix(text)
    if asm_mod.first_violation(m) is not None:
        raise InputError(f"{path}: not an ASM: {asm_mod.first_violation(m)}")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        obj = json.loads(stripped)
        if isinstance(obj, dict) and "matrices" in obj:
            obj = obj["matrices"][0]
        if isinstance(obj, dict) and "frame" in obj:
            fr = obj["frame"]
            meta = FrameMeta(fr["outer_size"], fr["block_start"],
                             Permutation(tuple(fr["block"])), fr["x_col"])
            return FramedAsm(m, meta)
    f = recognize_frame(m)
    if f is None:
        raise InputError(f"{path}: no frame metadata and not a recognised construction")
    return f


def cmd_enumerate(args, cfg: RunConfig, out: Output) -> int:
    _guard(args.n)
    count = 0
    if args.emit:
        chunks = []
        structured = []
        for m in enumerate_asms(args.n):
            count += 1
            if out.structured:
                structured.append(to_obj(m))
            else:
                chunks.append(to_text(m) + "\n")
        body = (json.dumps({"schema_version": SCHEMA_VERSION, "n": args.n, "matrices": structured}) + "\n"
                if out.structured else "\n".join(chunks))
        _write_atomic(args.emit, body)
        out.data.update(n=args.n, count=count, emitted=args.emit)
        out.line(f"n: {args.n}, count: {count}")
        return 0
    if out.structured:
        mats = [to_obj(m) for m in enumerate_asms(args.n)]
        out.data.update(n=args.n, count=len(mats), matrices=mats)
        return 0
    write = sys.stdout.write
    for m in enumerate_asms(args.n):
        count += 1
        write(to_text(m) + "\n\n")
    out.line(f"count: {count}")
    return 0


def cmd_classify(args, cfg: RunConfig, out: Output) -> int:
    report = classify(args.n, cfg.effective_jobs, cfg.order_cap)
    if out.structured:
        out.data.update(report.as_dict())
        return 0
    out.line(f"n: {report.n}")
    out.line(f"asms: {report.total_asm_count}")
    out.line(f"singular: {report.singular_count}")
    out.line(f"idempotents: {report.idempotent_count}")
    out.line(f"Order | Number of singular {report.n}x{report.n} ASMs")
    for k, c in report.order_counts.items():
        out.line(f"{k}: {c}")
    for k, d in report.negative_stats.items():
        out.line(f"negative entries at order {k}: " + ", ".join(f"{neg}:{c}" for neg, c in d.items()))
    for w in report.warnings:
        out.line(f"warning: {w}")
    return 0


def cmd_atlas(args, cfg: RunConfig, out: Output) -> int:
    _guard(args.n, 7)
    atlas = group_atlas(args.n, cfg.closure_max, cfg.effective_jobs)
    maximal = atlas.maximal_groups()
    if out.structured:
        out.data.update(
            n=atlas.n,
            max_order=atlas.max_order,
            groups_by_order=atlas_summary(atlas),
            maximal_groups=[{"order": g.order, "fingerprint": fingerprint(g).as_dict(),
                             "identity": to_obj(g.identity_matrix),
                             "elements": [to_obj(x) for x in g.elements]} for g in maximal],
        )
        return 0
    out.line(f"n: {atlas.n}, groups: {len(atlas.groups)}, maximal: {len(maximal)}, "
             f"largest order: {atlas.max_order}")
    for k, d in atlas_summary(atlas).items():
        out.line(f"order {k}: " + ", ".join(f"{kind} {c}" for kind, c in sorted(d.items())))
    for i, g in enumerate(maximal, 1):
        fp = fingerprint(g)
        hist = ", ".join(f"{a}:{b}" for a, b in fp.element_order_histogram.items())
        out.line(f"maximal group {i}: order {g.order}, abelian: {_fmt(fp.abelian)}, "
                 f"center: {fp.center_size}, element orders: {hist}")
    return 0


def cmd_census(args, cfg: RunConfig, out: Output) -> int:
    _guard(args.n, 7)
    census = idempotent_census(args.n, cfg.effective_jobs)
    roots = square_root_census(args.n, cfg.effective_jobs)
    if out.structured:
        out.data.update(
            n=args.n,
            idempotents=[{**to_obj(e.matrix), "nullity": e.nullity,
                          "reduced_form": to_obj(e.reduced.reduced),
                          "deleted_indices": list(e.reduced.deleted_indices),
                          "square_roots": [to_obj(r) for r in roots.get(e.matrix, [])]}
                         for e in census.entries],
            violations=list(census.violations),
        )
        return 0
    out.line(f"n: {args.n}, idempotents: {len(census.entries)}, "
             f"order-2 square roots: {sum(len(v) for v in roots.values())}")
    for i, e in enumerate(census.entries, 1):
        out.matrix(e.matrix, f"idempotent {i}")
        out.line(f"nullity: {e.nullity}, deleted: {list(e.reduced.deleted_indices)}, "
                 f"square roots: {len(roots.get(e.matrix, []))}")
        out.matrix(e.reduced.reduced, "reduced form")
    for v in census.violations:
        out.line(f"violation: {v}")
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("text", "json", "structured"), default=None,
                        help="output format (env %sOUTPUT_FORMAT)" % ENV_PREFIX)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--order-cap", type=int, default=None)
    common.add_argument("--magnitude-bound", type=int, default=None)
    common.add_argument("--closure-max", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None)

    p = argparse.ArgumentParser(prog="asmgroups", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="check the ASM conditions")
    s.add_argument("file", help="matrix file, or - for stdin")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("order", parents=[common], help="multiplicative order of a matrix")
    s.add_argument("file")
    s.set_defaults(func=cmd_order)

    s = sub.add_parser("closure", parents=[common], help="group generated by matrices")
    s.add_argument("file")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("construct", parents=[common], help="build a construction")
    forms = s.add_subparsers(dest="form", required=True)
    f = forms.add_parser("frame", parents=[common])
    f.add_argument("--perm", required=True, help="one-line notation, e.g. '2 3 1'")
    f.add_argument("--variant", choices=("A", "B"), default="A")
    f = forms.add_parser("ek", parents=[common])
    f.add_argument("--k", type=int, required=True)
    f = forms.add_parser("symn", parents=[common])
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--family", choices=("n-plus-4", "low-rank"), default="n-plus-4")
    f = forms.add_parser("theta", parents=[common])
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--perm", required=True, help="permutation of 1..4k+1 fixing odd indices")
    f = forms.add_parser("kron", parents=[common])
    f.add_argument("--left", required=True)
    f.add_argument("--right", required=True)
    f = forms.add_parser("expand-center", parents=[common])
    f.add_argument("--base", required=True)
    f.add_argument("--perm", required=True)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("kron", parents=[common], help="Kronecker product of two ASMs")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.set_defaults(func=_kron)

    s = sub.add_parser("enumerate", parents=[common], help="list every n x n ASM")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--emit", help="write the matrices to this file")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("classify", parents=[common], help="count singular ASMs by order")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("atlas", parents=[common], help="groups of singular ASMs")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_atlas)

    s = sub.add_parser("census", parents=[common], help="idempotents and their square roots")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_census)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.resolve({
            "order_cap": args.order_cap,
            "magnitude_bound": args.magnitude_bound,
            "closure_max": args.closure_max,
            "jobs": args.jobs,
            "output_format": args.output_format,
        })
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    out = Output(cfg, args.command if args.command != "construct" else f"construct {args.form}")
    func: Callable = args.func
    try:
        code = func(args, cfg, out)
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except (InputError, MatrixFormatError, asm_mod.AsmError, FrameError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    text = out.render()
    if args.out:
        _write_atomic(args.out, text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
