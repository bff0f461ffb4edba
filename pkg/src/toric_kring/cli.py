"""Command line front end.

Exit status: 0 when every check passed, 1 on a failed validation or
verification, 2 on usage, schema or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import corpus
from .charpair import CharPair, euler_characteristic, validate_char_pair
from .fan import Fan, to_char_pair, validate_fan
from .poly import render_monomial
from .presentations import (
    adaptive_presentation,
    adaptive_verify,
    build_relations,
    cohomology_presentation,
    graded_ranks_of_kring,
    monomial_basis,
)
from .schema import SchemaError, dumps, loads

COMMANDS = ("validate", "relations", "kring", "cohomology", "gr-compare", "basis", "verify")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class JobSpec:
    input_path: str
    kind: str | None
    command: str
    max_u_radius: int = 3
    output_format: str = "text"


class Failure(Exception):
    """Validation failed; carries the report to print."""

    def __init__(self, payload: dict, text: str):
        super().__init__(text)
        self.payload = payload
        self.text = text


def _read_input(path: str) -> str:
    p = Path(path)
    if p.is_file():
        return p.read_text(encoding="utf-8")
    # fall back to the bundled corpus, addressed by name or file name
    try:
        entry = corpus.get(p.name)
    except KeyError:
        try:
            entry = corpus.get(p.name.split(".")[0])
        except KeyError:
            raise SchemaError(f"input file not found: {path}") from None
    return corpus.bundled_path(entry).read_text(encoding="utf-8")


def _validated_pair(obj) -> tuple[CharPair, dict]:
    """Validate the input and return the characteristic pair to work on."""
    if isinstance(obj, Fan):
        rep = validate_fan(obj)
        payload = {"input_kind": "fan", "fan": rep.to_json()}
        if not rep.ok:
            raise Failure(payload, _fan_text(rep))
        cp = to_char_pair(obj)
    else:
        cp = obj
        payload = {"input_kind": "charpair"}
    vr = validate_char_pair(cp)
    payload["charpair"] = vr.to_json()
    if not vr.ok:
        raise Failure(payload, _cp_text(vr))
    return cp, payload


def _fan_text(rep) -> str:
    lines = [f"fan: {rep.is_fan}  smooth: {rep.is_smooth}  complete: {rep.is_complete}"]
    lines += [f"  witness: {w}" for w in rep.witnesses]
    return "\n".join(lines)


def _cp_text(rep) -> str:
    lines = [f"pure: {rep.is_pure}  locally standard: {rep.is_locally_standard}"]
    lines += [f"  witness: {w}" for w in rep.witnesses]
    return "\n".join(lines)


def _fmt_tuple(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _cmd_validate(obj, job):
    cp, payload = _validated_pair(obj)
    payload["euler_characteristic"] = euler_characteristic(cp)
    text = []
    if "fan" in payload:
        text.append("fan: True  smooth: True  complete: True")
    text.append("pure: True  locally standard: True")
    text.append(f"euler characteristic: {payload['euler_characteristic']}")
    return payload, "\n".join(text)


def _cmd_relations(obj, job):
    cp, payload = _validated_pair(obj)
    rels = build_relations(cp, job.max_u_radius)
    payload["relations"] = rels.to_json()
    lines = [f"SR monomials: " + ", ".join(render_monomial(m) for m in rels.sr_monomials)]
    for (u, z), (_, h) in zip(rels.k_relations, rels.linear_relations):
        lines.append(f"u={list(u)}: z_u = {z}   h_u = {h}")
    return payload, "\n".join(lines)


def _cmd_kring(obj, job):
    cp, payload = _validated_pair(obj)
    rels, pres, _ = adaptive_presentation(cp, job.max_u_radius)
    payload["kring"] = pres.to_json()
    payload["kring"]["u_radius"] = rels.u_radius
    lines = [
        f"basis monomials ({len(pres.basis_monomials)}): "
        + " ".join(render_monomial(m) for m in pres.basis_monomials),
        f"relation rows: {pres.relation_matrix.rows} (lattice rank {pres.snf.rank})",
        f"quotient: free rank {pres.rank}, torsion {list(pres.torsion) or 'none'}"
        f" (chi {euler_characteristic(cp)}, u_radius {rels.u_radius})",
    ]
    text = "\n".join(lines)
    if pres.rank != euler_characteristic(cp) or not pres.torsion_free:
        raise Failure(payload, text)
    return payload, text


def _cmd_cohomology(obj, job):
    cp, payload = _validated_pair(obj)
    coh = cohomology_presentation(cp)
    payload["cohomology"] = coh.to_json()
    tors = "none" if coh.torsion_free else [list(t) for t in coh.torsion]
    return payload, f"cohomology ranks by degree: {_fmt_tuple(coh.per_degree)}, torsion {tors}"


def _cmd_gr_compare(obj, job):
    cp, payload = _validated_pair(obj)
    _, pres, _ = adaptive_presentation(cp, job.max_u_radius)
    coh = cohomology_presentation(cp)
    gr = graded_ranks_of_kring(cp, pres)
    same = gr.per_degree == coh.per_degree
    payload.update({"gr": gr.to_json(), "cohomology": coh.to_json(), "match": same})
    text = f"gr {_fmt_tuple(gr.per_degree)} {'=' if same else '!='} H* {_fmt_tuple(coh.per_degree)}"
    if not same:
        raise Failure(payload, text)
    return payload, text


def _cmd_basis(obj, job):
    cp, payload = _validated_pair(obj)
    _, pres, _ = adaptive_presentation(cp, job.max_u_radius)
    mb = monomial_basis(cp, pres)
    payload["basis"] = mb.to_json()
    mons = ["1" if not f else "*".join(f"y{i}" for i in sorted(f)) for f in mb.faces]
    text = (f"monomial basis ({len(mb.faces)}): {' '.join(mons)}\n"
            f"K-ring change of basis |det| = {mb.kring_abs_det}, verified: {mb.verified}")
    if not mb.verified:
        raise Failure(payload, text)
    return payload, text


def _cmd_verify(obj, job):
    cp, payload = _validated_pair(obj)
    rep = adaptive_verify(cp, job.max_u_radius)
    payload["verification"] = rep.to_json()
    lines = [
        f"rank {rep.kring_rank} {'=' if rep.ranks_match_chi else '!='} chi {rep.euler_characteristic}"
        f" (u_radius {rep.u_radius_used})",
        f"torsion: {list(rep.kring_torsion) or 'none'}"
        f" (quotient is Z^{rep.kring_rank}, factors {[1] * rep.kring_rank if rep.torsion_free else list(rep.kring_torsion)})",
        f"gr {_fmt_tuple(rep.gr_ranks)} {'=' if rep.gr_matches_cohomology else '!='} H* {_fmt_tuple(rep.cohomology_ranks)}",
        f"degree-{cp.dim + 1} absorption: {rep.absorption}",
        f"initial forms in(z_u) = -h_u: {rep.initial_forms_match}",
        f"monomial basis: {rep.monomial_basis_verified} "
        + " ".join("1" if not f else "*".join(f"y{i}" for i in sorted(f)) for f in rep.basis_faces),
    ]
    lines += [f"  witness: {w}" for w in rep.witnesses]
    lines.append("PASS" if rep.passed else "FAIL")
    text = "\n".join(lines)
    if not rep.passed:
        raise Failure(payload, text)
    return payload, text


HANDLERS = {
    "validate": _cmd_validate,
    "relations": _cmd_relations,
    "kring": _cmd_kring,
    "cohomology": _cmd_cohomology,
    "gr-compare": _cmd_gr_compare,
    "basis": _cmd_basis,
    "verify": _cmd_verify,
}


def _emit(payload, text, fmt, out):
    if fmt == "json":
        out.write(dumps(payload))
    else:
        out.write(text + "\n")


def run(job: JobSpec, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if job.command not in HANDLERS:
        err.write(f"error: unknown command {job.command!r}\n")
        return EXIT_USAGE
    if job.max_u_radius < 1:
        err.write("error: --max-u-radius must be at least 1\n")
        return EXIT_USAGE
    try:
        obj = loads(_read_input(job.input_path), job.kind)
    except SchemaError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: cannot read {job.input_path}: {exc}\n")
        return EXIT_USAGE
    try:
        payload, text = HANDLERS[job.command](obj, job)
    except Failure as f:
        _emit(f.payload, f.text, job.output_format, out)
        return EXIT_FAIL
    _emit(payload, text, job.output_format, out)
    return EXIT_OK


def list_examples(fmt: str = "text", out=None) -> int:
    out = out or sys.stdout
    if fmt == "json":
        out.write(dumps([
            {"name": e.name, "file": e.filename, "kind": e.kind, "positive": e.positive,
             "description": e.description, "chi": e.chi, "fails_at": e.fails_at,
             "witness_kind": e.witness_kind}
            for e in corpus.MANIFEST
        ]))
        return EXIT_OK
    for e in corpus.MANIFEST:
        tag = f"chi={e.chi}" if e.positive else f"negative: {e.witness_kind}"
        out.write(f"{e.filename:28} {e.kind:9} {tag:30} {e.description}\n")
    return EXIT_OK


def export_examples(directory: str, out=None) -> int:
    out = out or sys.stdout
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    for e in corpus.MANIFEST:
        target = d / e.filename
        target.write_text(corpus.bundled_path(e).read_text(encoding="utf-8"), encoding="utf-8")
        out.write(f"{target}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toric-kring",
        description="K-rings and cohomology rings of smooth complete fans and characteristic pairs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", help="fan or charpair JSON file (or a bundled example name)")
        p.add_argument("--kind", choices=("fan", "charpair"), default=None,
                       help="input kind (detected from the keys by default)")
        p.add_argument("--max-u-radius", type=int, default=3)
        p.add_argument("--format", choices=("text", "json"), default="text")
    p = sub.add_parser("list-examples")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p = sub.add_parser("export-examples", help="write the bundled corpus into a directory")
    p.add_argument("directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "list-examples":
        return list_examples(args.format)
    if args.command == "export-examples":
        return export_examples(args.directory)
    job = JobSpec(args.input, args.kind, args.command, args.max_u_radius, args.format)
    return run(job)


if __name__ == "__main__":
    sys.exit(main())
