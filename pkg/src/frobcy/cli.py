"""Command-line driver: ``frobcy <command> FILE... [options]``.

Every command prints a report document on stdout.  Exit code 0 means every
check passed, 1 that some check failed (its record carries a witness), 2 an
input error (the error is printed on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import io
from .algebra import validate_algebra
from .equivalence import reconstruct_frobenius, rep_fg, roundtrip_check
from .errors import DocumentError, FrobCYError, NotSemisimpleError
from .forms import FrobeniusForm, is_frobenius, pairing_gram, symmetry_witness
from .fuzz import fuzz
from .linalg import Field, Matrix, kernel_basis, rank
from .modules import LeftModule, decompose, hom_basis, validate_bimodule, validate_module
from .morita import (
    check_first_diagram,
    check_second_diagram,
    compatibility_values,
    cy_functor_discrepancies,
    validate_context,
)
from .report import Report
from .trace import certify_cy, hs_trace, hs_trace_via_dual_basis

MAX_WITNESSES = 20


class Outcome:
    """A report plus the bytes ``--output`` should receive (the report by default)."""

    def __init__(self, report: Report, product: bytes | None = None):
        self.report = report
        self.product = product


def _load(args) -> io.Bundle:
    sources = []
    for path in args.files:
        try:
            with open(path, "rb") as fh:
                sources.append(fh.read())
        except OSError as e:
            raise DocumentError("unreadable_input", f"{path}: {e.strerror}") from None
    return io.Bundle.load(*sources)


def _name(doc: dict) -> str:
    return doc.get("name", "<unnamed>")


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> Outcome:
    bundle = _load(args)
    rep = Report("validate")
    checkers: dict[str, Callable] = {
        "algebra": validate_algebra,
        "module": validate_module,
        "bimodule": validate_bimodule,
        "morita_context": validate_context,
    }
    for doc in bundle.docs:
        obj = bundle.resolve(doc)
        check = checkers.get(doc["kind"])
        failures = check(obj) if check else []
        rep.add(f"{doc['kind']}[{_name(doc)}]", not failures, {"failures": failures[:MAX_WITNESSES]} if failures else None)
    return Outcome(rep)


def cmd_check_frobenius(args) -> Outcome:
    bundle = _load(args)
    rep = Report("check-frobenius")
    for doc in bundle.of_kind("form"):
        form: FrobeniusForm = bundle.resolve(doc)
        ok = is_frobenius(form)
        witness = None
        if not ok:
            G = pairing_gram(form)
            # a nonzero a with lambda(a b) = 0 for every b
            witness = {"rank": rank(G), "radical_element": kernel_basis(G.T).column(0)}
        w = symmetry_witness(form)
        rep.add(f"frobenius[{_name(doc)}]", ok, witness, symmetric=w is None, asymmetric_pair=list(w) if w else None)
    return Outcome(rep)


def cmd_decompose(args) -> Outcome:
    bundle = _load(args)
    rep = Report("decompose", args.seed)
    for doc in bundle.of_kind("module"):
        m: LeftModule = bundle.resolve(doc)
        try:
            d = decompose(m)
        except FrobCYError as e:
            rep.add(f"decomposition[{_name(doc)}]", False, {"reason": str(e), "error": type(e).__name__})
            continue
        rep.add(
            f"decomposition[{_name(doc)}]",
            True,
            multiplicities=list(d.multiplicities),
            simple_dims=[v.dim for v in d.simples],
        )
    return Outcome(rep)


def _read_map(path: str, m: LeftModule) -> Matrix:
    try:
        with open(path, "rb") as fh:
            rows = json.loads(fh.read())
    except OSError as e:
        raise DocumentError("unreadable_input", f"{path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise DocumentError("malformed_json", str(e)) from None
    if isinstance(rows, dict):
        rows = rows.get("matrix")
    if not isinstance(rows, list):
        raise DocumentError("invalid_document", "a map file holds a matrix (list of rows)")
    return io._matrix(m.field, [[str(x) for x in r] for r in rows], (m.dim, m.dim), path)


def cmd_trace(args) -> Outcome:
    bundle = _load(args)
    m = bundle.resolve(bundle.find("module", args.module))
    form = bundle.resolve(bundle.find("form", args.form))
    f = _read_map(args.map, m) if args.map else m.identity()
    rep = Report("trace", args.seed)
    if not rep.add("endomorphism", hom_basis(m, m).contains(f)):
        return Outcome(rep)
    value = hs_trace(m, form, f)
    oracle = hs_trace_via_dual_basis(m, form, f, args.seed)
    rep.data["value"] = value
    rep.add("dual-basis-oracle", value == oracle, None if value == oracle else {"values": [value, oracle]})
    return Outcome(rep)


def cmd_certify_cy(args) -> Outcome:
    bundle = _load(args)
    form = bundle.resolve(bundle.find("form", args.form))
    modules = [x for x in bundle.objects("module") if x.algebra == form.algebra]
    return Outcome(certify_cy(form.algebra, form, modules, seed=args.seed, max_dim=args.max_dim))


def cmd_check_morita(args) -> Outcome:
    bundle = _load(args)
    ctx = bundle.resolve(bundle.find("morita_context", args.context))
    rep = Report("check-morita")
    failures = validate_context(ctx)
    rep.add("context-valid", not failures, {"failures": failures[:MAX_WITNESSES]} if failures else None)
    d1, d2 = check_first_diagram(ctx), check_second_diagram(ctx)
    rep.add("diagram-1", d1)
    rep.add("diagram-2", d2)
    rep.add("diagrams-agree", d1 == d2, None if d1 == d2 else {"diagram-1": d1, "diagram-2": d2})
    return Outcome(rep)


def _form_on(bundle: io.Bundle, algebra, name: str | None) -> FrobeniusForm:
    if name is not None:
        return bundle.resolve(bundle.find("form", name))
    forms = [f for f in bundle.objects("form") if f.algebra == algebra]
    if len(forms) != 1:
        raise DocumentError("invalid_document", f"expected one form on {algebra.name or 'the algebra'}, found {len(forms)}")
    return forms[0]


def cmd_check_compat(args) -> Outcome:
    bundle = _load(args)
    ctx = bundle.resolve(bundle.find("morita_context", args.context))
    fa = _form_on(bundle, ctx.A, args.form_a)
    fb = _form_on(bundle, ctx.B, args.form_b)
    rep = Report("check-compat", args.seed)
    la, pulled = compatibility_values(ctx, fa, fb)
    compat = la == pulled
    rep.add("compatible", compat, None if compat else {"lambda_A": la, "lambda_B_pulled_back": pulled})
    bad = cy_functor_discrepancies(ctx, fa, fb, seed=args.seed, max_dim=args.max_dim, stop_early=True)
    rep.add("cy-functor", not bad, bad[0] if bad else None)
    rep.add("verdicts-agree", compat == (not bad))
    return Outcome(rep)


def cmd_rep(args) -> Outcome:
    bundle = _load(args)
    form = bundle.resolve(bundle.find("form", args.form))
    rep = Report("rep", args.seed)
    w = symmetry_witness(form)
    if not rep.add("form-symmetric", w is None, None if w is None else {"basis_pair": list(w)}):
        return Outcome(rep)
    if not rep.add("form-frobenius", is_frobenius(form)):
        return Outcome(rep)
    try:
        cy = rep_fg(form.algebra, form)
    except NotSemisimpleError as e:
        rep.add("semisimple", False, {"reason": str(e)})
        return Outcome(rep)
    doc = io.cy_presentation_document(cy)
    rep.data["presentation"] = doc
    rep.add("weights-nonzero", all(cy.weights))
    return Outcome(rep, io.emit(doc))


def cmd_reconstruct(args) -> Outcome:
    bundle = _load(args)
    cy = bundle.resolve(bundle.find("cy_presentation", args.presentation))
    fa = reconstruct_frobenius(cy)
    rep = Report("reconstruct", args.seed)
    docs = [io.algebra_document(fa.algebra, "K^r"), io.form_document(fa.form, "K^r", "tr_P")]
    rep.data["documents"] = docs
    back = rep_fg(fa.algebra, fa.form)
    rep.add("dims-collapse", all(n == 1 for n in back.dims), {"dims": list(back.dims)})
    same = sorted(back.weights, key=cy.field.sort_key) == sorted(cy.weights, key=cy.field.sort_key)
    rep.add("weights-recovered", same, {"weights": list(back.weights)})
    rep.extend(certify_cy(fa.algebra, fa.form, seed=args.seed, max_dim=args.max_dim), prefix="certify:")
    return Outcome(rep, io.emit_bundle(docs))


def cmd_roundtrip(args) -> Outcome:
    bundle = _load(args)
    form = bundle.resolve(bundle.find("form", args.form))
    return Outcome(roundtrip_check(form.algebra, form, seed=args.seed))


def cmd_fuzz(args) -> Outcome:
    try:
        field = Field(args.field)
    except ValueError as e:
        raise DocumentError("invalid_argument", str(e)) from None
    return Outcome(fuzz(args.seed, args.count, field, args.max_dim))


COMMANDS: dict[str, tuple[Callable, str]] = {
    "validate": (cmd_validate, "check the axioms of every document in the bundle"),
    "check-frobenius": (cmd_check_frobenius, "non-degeneracy (and symmetry) of every form"),
    "decompose": (cmd_decompose, "multiplicities of the simple modules in every module"),
    "trace": (cmd_trace, "Hattori-Stallings trace of an endomorphism (identity by default)"),
    "certify-cy": (cmd_certify_cy, "certify that modules over (A, lambda) form a Calabi-Yau category"),
    "check-morita": (cmd_check_morita, "context axioms and the two triangle diagrams"),
    "check-compat": (cmd_check_compat, "compatibility of a context with two forms, against the functor test"),
    "rep": (cmd_rep, "dimensions and trace weights of the simple modules"),
    "reconstruct": (cmd_reconstruct, "the basic Frobenius algebra of a Calabi-Yau presentation"),
    "roundtrip": (cmd_roundtrip, "algebra -> category -> algebra round trip"),
    "fuzz": (cmd_fuzz, "seeded random instances of the trace identities"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--max-dim", type=int, default=8, help="largest random module (default 8)")
    common.add_argument("--output", help="also write the result to this path")
    parser = argparse.ArgumentParser(prog="frobcy", description="Exact checks for symmetric Frobenius algebras and their module categories.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "fuzz":
            p.add_argument("--count", type=int, default=20, help="number of instances (default 20)")
            p.add_argument("--field", type=int, default=0, help="0 for Q or a prime p (default 0)")
            continue
        p.add_argument("files", nargs="+", help="JSON document files forming one bundle")
        if name in ("trace",):
            p.add_argument("--module", help="module document name")
            p.add_argument("--map", help="JSON file with the endomorphism matrix")
        if name in ("trace", "certify-cy", "rep", "roundtrip"):
            p.add_argument("--form", help="form document name")
        if name in ("check-morita", "check-compat"):
            p.add_argument("--context", help="morita_context document name")
        if name == "check-compat":
            p.add_argument("--form-a", help="form on A")
            p.add_argument("--form-b", help="form on B")
        if name == "reconstruct":
            p.add_argument("--presentation", help="cy_presentation document name")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        outcome = COMMANDS[args.command][0](args)
    except DocumentError as e:
        print(json.dumps({"error": e.code, "message": str(e)}, sort_keys=True), file=sys.stderr)
        return 2
    except (FrobCYError, ValueError) as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e)}, sort_keys=True), file=sys.stderr)
        return 2
    text = io.emit(io.report_document(outcome.report))
    sys.stdout.buffer.write(text)
    sys.stdout.flush()
    if args.output:
        try:
            with open(args.output, "wb") as fh:
                fh.write(outcome.product if outcome.product is not None else text)
        except OSError as e:
            print(json.dumps({"error": "unwritable_output", "message": f"{args.output}: {e.strerror}"}), file=sys.stderr)
            return 2
    return 0 if outcome.report.verdict else 1


if __name__ == "__main__":
    sys.exit(main())
