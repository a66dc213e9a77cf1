"""JSON documents for algebras, forms, modules, contexts and reports.

Every document is an object with ``format_version``, ``kind``, a ``field``
descriptor ``{"characteristic": p}`` and a kind-specific payload.  Scalars
are strings (``"p/q"`` or ``"p"`` over Q, residues in ``[0, p)`` over F_p).
A bundle is a JSON array of documents, or a single document; documents refer
to each other by ``name``.

Maps between tensor products are stored on the ambient K-tensor product
``X (x)_K Y`` with basis ``x_p (x) y_q`` at index ``p * dim(Y) + q``, so a
document does not depend on how the balanced quotient is coordinatised.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from .algebra import Algebra
from .equivalence import CYPresentation
from .errors import DocumentError, FrobCYError
from .forms import FrobeniusForm
from .linalg import Field, Matrix
from .modules import Bimodule, LeftModule, right_module
from .morita import MoritaContext
from .report import Report

FORMAT_VERSION = 1
KINDS = ("algebra", "form", "module", "bimodule", "morita_context", "cy_presentation", "report")

# scalar-valued payload entries and their nesting depth, used for canonicalisation
_SCALARS = {
    "algebra": {"structure_constants": 3, "unit": 1},
    "form": {"values": 1},
    "module": {"actions": 3},
    "bimodule": {"left_actions": 3, "right_actions": 3},
    "morita_context": {},
    "cy_presentation": {"weights": 1},
    "report": {},
}

EPS_SOURCE, EPS_TARGET = "N (x)_K M", "A"
ETA_SOURCE, ETA_TARGET = "B", "M (x)_K N"


# ---------------------------------------------------------------------------
# parsing and canonical emission


def _field(doc: dict) -> Field:
    desc = doc.get("field")
    if not isinstance(desc, dict) or not isinstance(desc.get("characteristic"), int) or isinstance(desc.get("characteristic"), bool):
        raise DocumentError("invalid_document", f"{_label(doc)}: field descriptor must be {{'characteristic': int}}")
    try:
        return Field(desc["characteristic"])
    except ValueError as e:
        raise DocumentError("invalid_document", str(e)) from None


def _label(doc: dict) -> str:
    return f"{doc.get('kind', '?')} {doc.get('name', '<unnamed>')!r}"


def _scalars(F: Field, data: Any, depth: int, where: str) -> Any:
    if depth == 0:
        if isinstance(data, bool) or not isinstance(data, (str, int)):
            raise DocumentError("invalid_document", f"{where}: scalars must be strings")
        try:
            return F.format(F(data) if isinstance(data, int) else F.parse(data))
        except (ValueError, ZeroDivisionError) as e:
            raise DocumentError("invalid_document", f"{where}: {e}") from None
    if not isinstance(data, list):
        raise DocumentError("invalid_document", f"{where}: expected a list")
    return [_scalars(F, x, depth - 1, where) for x in data]


def _check_header(doc: Any) -> dict:
    if not isinstance(doc, dict):
        raise DocumentError("invalid_document", "a document must be a JSON object")
    if "format_version" not in doc:
        raise DocumentError("unknown_version", f"{_label(doc)}: format_version missing")
    if doc["format_version"] != FORMAT_VERSION:
        raise DocumentError("unknown_version", f"format_version {doc['format_version']!r} is not supported")
    if doc.get("kind") not in KINDS:
        raise DocumentError("unknown_kind", f"unknown document kind {doc.get('kind')!r}")
    return doc


def canonicalize(doc: dict) -> dict:
    """Reduced scalars as strings; key order is fixed at emission."""
    _check_header(doc)
    out = dict(doc)
    if doc["kind"] == "report":
        return out
    F = _field(doc)
    for key, depth in _SCALARS[doc["kind"]].items():
        if key in out:
            out[key] = _scalars(F, out[key], depth, f"{_label(doc)}.{key}")
    for key in ("eps", "eta"):
        if isinstance(out.get(key), dict) and "matrix" in out[key]:
            out[key] = dict(out[key], matrix=_scalars(F, out[key]["matrix"], 2, f"{_label(doc)}.{key}"))
    return out


def parse(data: bytes | str) -> list[dict]:
    """Bundle of documents from UTF-8 JSON (array or single object)."""
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise DocumentError("malformed_json", str(e)) from None
    docs = raw if isinstance(raw, list) else [raw]
    return [canonicalize(_check_header(d)) for d in docs]


def _dumps(obj: Any) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def emit(doc: dict) -> bytes:
    return _dumps(canonicalize(doc))


def emit_bundle(docs: Iterable[dict]) -> bytes:
    return _dumps([canonicalize(d) for d in docs])


# ---------------------------------------------------------------------------
# encoders


def _header(kind: str, field: Field, name: str | None) -> dict:
    doc = {"format_version": FORMAT_VERSION, "kind": kind, "field": {"characteristic": field.characteristic}}
    if name is not None:
        doc["name"] = name
    return doc


def _fmt(F: Field, xs: Sequence) -> list:
    return [F.format(x) for x in xs]


def _fmt_matrix(m: Matrix) -> list:
    return [_fmt(m.field, row) for row in m.rows]


def algebra_document(a: Algebra, name: str | None = None) -> dict:
    F = a.field
    doc = _header("algebra", F, name or a.name)
    doc["structure_constants"] = [[_fmt(F, cij) for cij in ci] for ci in a.structure_constants]
    doc["unit"] = _fmt(F, a.unit)
    return doc


def form_document(form: FrobeniusForm, algebra: str, name: str | None = None) -> dict:
    doc = _header("form", form.algebra.field, name or form.name)
    doc.update(algebra=algebra, values=_fmt(form.algebra.field, form.values))
    return doc


def module_document(m: LeftModule, algebra: str, name: str | None = None, side: str = "left") -> dict:
    doc = _header("module", m.field, name or m.name)
    doc.update(algebra=algebra, side=side, dim=m.dim, actions=[_fmt_matrix(x) for x in m.actions])
    return doc


def bimodule_document(x: Bimodule, left_algebra: str, right_algebra: str, name: str | None = None) -> dict:
    doc = _header("bimodule", x.field, name or x.name)
    doc.update(
        left_algebra=left_algebra,
        right_algebra=right_algebra,
        dim=x.dim,
        left_actions=[_fmt_matrix(m) for m in x.left.actions],
        right_actions=[_fmt_matrix(m) for m in x.right.actions],
    )
    return doc


def context_documents(ctx: MoritaContext, name: str = "ctx", a: str = "A", b: str = "B") -> list[dict]:
    """The context together with its two algebras and bimodules."""
    F = ctx.field
    m_name, n_name = f"{name}.M", f"{name}.N"
    doc = _header("morita_context", F, name)
    doc.update(
        A=a,
        B=b,
        M=m_name,
        N=n_name,
        eps={"source": EPS_SOURCE, "target": EPS_TARGET, "matrix": _fmt_matrix(ctx.eps @ ctx.t_nm.pi)},
        eta={"source": ETA_SOURCE, "target": ETA_TARGET, "matrix": _fmt_matrix(ctx.t_mn.iota @ ctx.eta)},
    )
    return [
        algebra_document(ctx.A, a),
        algebra_document(ctx.B, b),
        bimodule_document(ctx.M, b, a, m_name),
        bimodule_document(ctx.N, a, b, n_name),
        doc,
    ]


def cy_presentation_document(cy: CYPresentation, name: str | None = None) -> dict:
    doc = _header("cy_presentation", cy.field, name or cy.source)
    doc.update(r=cy.r, dims=list(cy.dims), weights=_fmt(cy.field, cy.weights))
    return doc


def report_document(rep: Report) -> dict:
    return {"format_version": FORMAT_VERSION, "kind": "report", **rep.to_dict()}


# ---------------------------------------------------------------------------
# resolution


def _matrix(F: Field, rows: list, shape: tuple[int, int], where: str) -> Matrix:
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        got = (len(rows), len(rows[0]) if rows else 0)
        raise DocumentError("dimension_mismatch", f"{where}: matrix is {got[0]}x{got[1]}, expected {shape[0]}x{shape[1]}")
    return Matrix(F, [[F.parse(x) for x in r] for r in rows], shape[1])


def _require(doc: dict, *keys: str) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise DocumentError("invalid_document", f"{_label(doc)}: missing {', '.join(missing)}")


def _dim(doc: dict, key: str = "dim") -> int:
    d = doc[key]
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise DocumentError("invalid_document", f"{_label(doc)}: {key} must be a non-negative integer")
    return d


class Bundle:
    """Documents indexed by name; objects are built on demand and memoised."""

    def __init__(self, docs: Sequence[dict]):
        self.docs = list(docs)
        self.by_name: dict[str, dict] = {}
        for d in self.docs:
            if "name" in d:
                if d["name"] in self.by_name:
                    raise DocumentError("duplicate_name", f"two documents named {d['name']!r}")
                self.by_name[d["name"]] = d
        self._objects: dict[int, Any] = {}

    @classmethod
    def load(cls, *sources: bytes | str) -> Bundle:
        docs = [d for s in sources for d in parse(s)]
        bundle = cls(docs)
        bundle.resolve_all()
        return bundle

    def resolve_all(self) -> None:
        for d in self.docs:
            self.resolve(d)

    def of_kind(self, kind: str) -> list[dict]:
        return [d for d in self.docs if d["kind"] == kind]

    def objects(self, kind: str) -> list:
        return [self.resolve(d) for d in self.of_kind(kind)]

    def find(self, kind: str, name: str | None = None) -> dict:
        """The document ``name`` (checked to be of ``kind``), or the only one of that kind."""
        if name is not None:
            d = self.by_name.get(name)
            if d is None or d["kind"] != kind:
                raise DocumentError("dangling_reference", f"no {kind} document named {name!r}")
            return d
        docs = self.of_kind(kind)
        if len(docs) != 1:
            raise DocumentError("invalid_document", f"expected exactly one {kind} document, found {len(docs)} (select one by name)")
        return docs[0]

    def ref(self, doc: dict, key: str, kind: str) -> Any:
        _require(doc, key)
        target = self.by_name.get(doc[key])
        if target is None or target["kind"] != kind:
            raise DocumentError("dangling_reference", f"{_label(doc)}: {key} refers to missing {kind} {doc[key]!r}")
        obj = self.resolve(target)
        if getattr(obj, "field", None) is not None and obj.field != _field(doc):
            raise DocumentError("field_mismatch", f"{_label(doc)}: {key} is over {obj.field}")
        return obj

    def resolve(self, doc: dict) -> Any:
        key = id(doc)
        if key not in self._objects:
            try:
                self._objects[key] = getattr(self, "_build_" + doc["kind"])(doc)
            except DocumentError:
                raise
            except FrobCYError as e:
                raise DocumentError("dimension_mismatch", f"{_label(doc)}: {e}") from None
        return self._objects[key]

    # -- builders

    def _build_algebra(self, doc: dict) -> Algebra:
        _require(doc, "structure_constants", "unit")
        F = _field(doc)
        d = len(doc["unit"])
        sc = doc["structure_constants"]
        if len(sc) != d or any(len(ci) != d or any(len(cij) != d for cij in ci) for ci in sc):
            raise DocumentError("dimension_mismatch", f"{_label(doc)}: structure constants must be {d}x{d}x{d}")
        return Algebra(F, [[[F.parse(x) for x in cij] for cij in ci] for ci in sc], [F.parse(x) for x in doc["unit"]], doc.get("name"))

    def _build_form(self, doc: dict) -> FrobeniusForm:
        a = self.ref(doc, "algebra", "algebra")
        _require(doc, "values")
        if len(doc["values"]) != a.dim:
            raise DocumentError("dimension_mismatch", f"{_label(doc)}: {len(doc['values'])} values for an algebra of dimension {a.dim}")
        return FrobeniusForm(a, [a.field.parse(x) for x in doc["values"]], doc.get("name"))

    def _actions(self, doc: dict, key: str, a: Algebra, n: int) -> list[Matrix]:
        acts = doc[key]
        if len(acts) != a.dim:
            raise DocumentError("dimension_mismatch", f"{_label(doc)}: {len(acts)} action matrices for an algebra of dimension {a.dim}")
        return [_matrix(a.field, m, (n, n), f"{_label(doc)}.{key}[{i}]") for i, m in enumerate(acts)]

    def _build_module(self, doc: dict) -> LeftModule:
        a = self.ref(doc, "algebra", "algebra")
        _require(doc, "dim", "actions")
        n = _dim(doc)
        acts = self._actions(doc, "actions", a, n)
        side = doc.get("side", "left")
        if side == "left":
            return LeftModule(a, acts, n, doc.get("name"))
        if side == "right":
            return right_module(a, acts, n, doc.get("name"))
        raise DocumentError("invalid_document", f"{_label(doc)}: side must be 'left' or 'right'")

    def _build_bimodule(self, doc: dict) -> Bimodule:
        b = self.ref(doc, "left_algebra", "algebra")
        a = self.ref(doc, "right_algebra", "algebra")
        _require(doc, "dim", "left_actions", "right_actions")
        n = _dim(doc)
        left = LeftModule(b, self._actions(doc, "left_actions", b, n), n)
        right = right_module(a, self._actions(doc, "right_actions", a, n), n)
        return Bimodule(left, right, doc.get("name"))

    def _build_morita_context(self, doc: dict) -> MoritaContext:
        A = self.ref(doc, "A", "algebra")
        B = self.ref(doc, "B", "algebra")
        M = self.ref(doc, "M", "bimodule")
        N = self.ref(doc, "N", "bimodule")
        _require(doc, "eps", "eta")
        if M.left_algebra != B or M.right_algebra != A or N.left_algebra != A or N.right_algebra != B:
            raise DocumentError("dimension_mismatch", f"{_label(doc)}: M must be a (B, A)- and N an (A, B)-bimodule")
        for key, src, tgt in (("eps", EPS_SOURCE, EPS_TARGET), ("eta", ETA_SOURCE, ETA_TARGET)):
            spec = doc[key]
            if not isinstance(spec, dict) or spec.get("source") != src or spec.get("target") != tgt or "matrix" not in spec:
                raise DocumentError("invalid_document", f"{_label(doc)}: {key} must declare source {src!r} and target {tgt!r}")
        F = A.field
        eps_amb = _matrix(F, doc["eps"]["matrix"], (A.dim, N.dim * M.dim), f"{_label(doc)}.eps")
        eta_amb = _matrix(F, doc["eta"]["matrix"], (M.dim * N.dim, B.dim), f"{_label(doc)}.eta")
        from .modules import tensor_over_A

        tnm = tensor_over_A(N.right, M.left)
        for rel in tnm.balanced_relations():
            if any(eps_amb.apply(rel)):
                raise DocumentError("unbalanced_map", f"{_label(doc)}: eps does not vanish on balanced relations")
        tmn = tensor_over_A(M.right, N.left)
        return MoritaContext(A, B, M, N, eps_amb @ tnm.iota, tmn.pi @ eta_amb)

    def _build_cy_presentation(self, doc: dict) -> CYPresentation:
        _require(doc, "dims", "weights")
        F = _field(doc)
        dims, weights = doc["dims"], doc["weights"]
        if not isinstance(dims, list) or any(not isinstance(n, int) or isinstance(n, bool) for n in dims):
            raise DocumentError("invalid_document", f"{_label(doc)}: dims must be integers")
        if len(dims) != len(weights) or doc.get("r", len(dims)) != len(dims):
            raise DocumentError("dimension_mismatch", f"{_label(doc)}: r, dims and weights disagree")
        try:
            return CYPresentation(F, tuple(dims), tuple(F.parse(w) for w in weights), doc.get("name"))
        except FrobCYError as e:
            raise DocumentError("invalid_document", f"{_label(doc)}: {e}") from None

    def _build_report(self, doc: dict) -> dict:
        return doc
