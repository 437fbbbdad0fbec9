"""Reading and writing ``.nilg`` group files (JSON with string rationals).

Example::

    {
      "name": "h3",
      "dimension": 3,
      "brackets": [{"i": 1, "j": 2, "c": [{"k": 3, "q": "1"}]}],
      "generators": [["1", "0", "0"], ["0", "1", "0"]]
    }

Optional blocks: ``layers`` (graded export), ``hom`` (``target`` file and a
target x source ``matrix``) and ``packing``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .carnot import GradedLieAlgebra
from .catalog import PRESETS, preset
from .exactlin import Q, fmt
from .lie import LieAlgebra
from .nilgroup import GeneratingSet
from .obstruction import NilpotentGroupSpec


class NilgError(ValueError):
    """Malformed group file; ``where`` locates the problem."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass(frozen=True)
class NilgDocument:
    """A parsed file before semantic validation of the algebra."""

    name: str
    algebra: LieAlgebra
    generators: tuple[tuple[Fraction, ...], ...] | None
    layers: tuple[int, ...] | None
    hom: dict | None
    packing: dict | None
    path: Path | None = None


def _rational(x, where: str) -> Fraction:
    if not isinstance(x, (str, int)) or isinstance(x, bool):
        raise NilgError("rationals must be strings like \"p/q\" or integers", where)
    try:
        return Q(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise NilgError(f"bad rational {x!r} ({exc})", where) from None


def _int(x, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool):
        raise NilgError("expected an integer", where)
    return x


def parse_document(data: dict, source: str = "<memory>", path: Path | None = None) -> NilgDocument:
    if not isinstance(data, dict):
        raise NilgError("top level must be a JSON object", source)
    name = data.get("name", "")
    if not isinstance(name, str):
        raise NilgError("name must be a string", f"{source}:name")
    if "dimension" not in data:
        raise NilgError("missing 'dimension'", source)
    n = _int(data["dimension"], f"{source}:dimension")
    if n < 0:
        raise NilgError("dimension must be non-negative", f"{source}:dimension")
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    raw = data.get("brackets", [])
    if not isinstance(raw, list):
        raise NilgError("brackets must be an array", f"{source}:brackets")
    for b, entry in enumerate(raw):
        where = f"{source}:brackets[{b}]"
        if not isinstance(entry, dict):
            raise NilgError("bracket entries must be objects", where)
        i, j = _int(entry.get("i"), f"{where}.i"), _int(entry.get("j"), f"{where}.j")
        if not (1 <= i < j <= n):
            raise NilgError(f"need 1 <= i < j <= {n}, got i={i}, j={j}", where)
        if (i, j) in brackets:
            raise NilgError(f"pair ({i}, {j}) listed twice", where)
        terms: dict[int, Fraction] = {}
        for t, term in enumerate(entry.get("c", [])):
            tw = f"{where}.c[{t}]"
            if not isinstance(term, dict):
                raise NilgError("terms must be objects {\"k\": int, \"q\": \"p/q\"}", tw)
            k = _int(term.get("k"), f"{tw}.k")
            if not 1 <= k <= n:
                raise NilgError(f"k={k} out of range 1..{n}", tw)
            terms[k] = terms.get(k, Fraction(0)) + _rational(term.get("q"), f"{tw}.q")
        brackets[(i, j)] = terms
    names = data.get("basis_names", ())
    algebra = LieAlgebra.from_brackets(n, brackets, name=name, basis_names=tuple(names), one_based=True)

    generators = None
    if "generators" in data:
        generators = []
        for g, row in enumerate(data["generators"]):
            where = f"{source}:generators[{g}]"
            if not isinstance(row, list) or len(row) != n:
                raise NilgError(f"generator must be an array of {n} rationals", where)
            generators.append(tuple(_rational(x, f"{where}[{c}]") for c, x in enumerate(row)))
        generators = tuple(generators)

    layers = None
    if "layers" in data:
        layers = tuple(_int(x, f"{source}:layers[{i}]") for i, x in enumerate(data["layers"]))
    hom = data.get("hom")
    if hom is not None and not isinstance(hom, dict):
        raise NilgError("hom must be an object", f"{source}:hom")
    packing = data.get("packing")
    if packing is not None and not isinstance(packing, dict):
        raise NilgError("packing must be an object", f"{source}:packing")
    return NilgDocument(name, algebra, generators, layers, hom, packing, path)


def read_document(ref: str | Path) -> NilgDocument:
    """Load a file, or a built-in preset given as ``preset:NAME`` or a bare preset name."""
    text_ref = str(ref)
    path = Path(text_ref)
    if text_ref.startswith("preset:") or (not path.exists() and text_ref in PRESETS):
        key = text_ref.split(":", 1)[-1]
        try:
            L = preset(key)
        except KeyError as exc:
            raise NilgError(str(exc.args[0]), text_ref) from None
        return NilgDocument(L.name, L, None, None, None, None, None)
    try:
        text = path.read_text()
    except OSError as exc:
        raise NilgError(f"cannot read file ({exc.strerror})", text_ref) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NilgError(exc.msg, f"{text_ref}:{exc.lineno}:{exc.colno}") from None
    return parse_document(data, text_ref, path)


def to_spec(doc: NilgDocument) -> NilpotentGroupSpec:
    gens = None
    if doc.generators:
        try:
            gens = GeneratingSet.symmetric_closure(doc.algebra, doc.generators)
        except ValueError as exc:
            raise NilgError(str(exc), "generators") from None
    name = doc.name or (doc.path.stem if doc.path else "group")
    return NilpotentGroupSpec(name, doc.algebra, gens, doc.hom, doc.packing, doc.layers)


def load_spec(ref: str | Path) -> NilpotentGroupSpec:
    return to_spec(read_document(ref))


def algebra_to_dict(L: LieAlgebra, *, layers=None, generators=None) -> dict:
    out: dict = {"name": L.name, "dimension": L.dim}
    default_names = tuple(f"e{i + 1}" for i in range(L.dim))
    if L.basis_names != default_names:
        out["basis_names"] = list(L.basis_names)
    out["brackets"] = [
        {
            "i": i + 1,
            "j": j + 1,
            "c": [{"k": k + 1, "q": fmt(c)} for k, c in enumerate(v) if c],
        }
        for (i, j), v in L.structure
    ]
    if layers is not None:
        out["layers"] = list(layers)
    if generators:
        out["generators"] = [[fmt(c) for c in g] for g in generators]
    return out


def dumps(L: LieAlgebra | GradedLieAlgebra, **kw) -> str:
    if isinstance(L, GradedLieAlgebra):
        kw.setdefault("layers", L.layer_dims)
        L = L.algebra
    return json.dumps(algebra_to_dict(L, **kw), indent=2) + "\n"


def loads(text: str) -> LieAlgebra:
    return parse_document(json.loads(text)).algebra
