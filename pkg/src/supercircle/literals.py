"""Self-describing text literals for the values the command line handles.

One JSON document per value.  Every document is an object carrying a
"kind" tag (grassmann | jet | point | points | germ | matrix | field),
the scalar backend under "field" (rational | f64), and the number of odd
constants under "gens".  Rational scalars travel as "p/q" strings so a
round-trip is bit exact; the floating backend uses plain JSON numbers.
A Grassmann monomial names its generators by an ascending index list,
the empty list being the body.  Term lists are emitted in a canonical
order, so equal values serialize to identical bytes.

Parse errors carry the path of the offending element inside the
document, e.g. ``terms[3].value``.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .grassmann import FLOAT64, RATIONAL, GrassmannAlgebra, GrassmannNumber
from .superjet import ORDER_INF, SuperJet
from .contactmap import MapGerm, SuperPoint
from .ospgroup import OspMatrix
from .cartan import ContactField

KINDS = ("grassmann", "jet", "point", "points", "germ", "matrix", "field")


class LiteralError(ValueError):
    """Malformed document; str() names the location inside the file."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        self.message = message
        where = f" at {path}" if path else ""
        super().__init__(f"{message}{where}")


# -- scalars ----------------------------------------------------------------

def _scalar_out(value, field):
    if field == FLOAT64:
        return float(value)
    f = Fraction(value)
    return str(f.numerator) if f.denominator == 1 else \
        f"{f.numerator}/{f.denominator}"


def _scalar_in(obj, field, path):
    if field == FLOAT64:
        if isinstance(obj, bool) or not isinstance(obj, (int, float, str)):
            raise LiteralError("expected a number", path)
        try:
            return float(Fraction(obj)) if isinstance(obj, str) else float(obj)
        except (ValueError, ZeroDivisionError):
            raise LiteralError(f"bad numeric string {obj!r}", path)
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise LiteralError('rational scalars are "p/q" strings or integers',
                           path)
    try:
        return Fraction(obj)
    except (ValueError, ZeroDivisionError):
        raise LiteralError(f"bad rational {obj!r}", path)


def _expect(obj, keys, path):
    if not isinstance(obj, dict):
        raise LiteralError("expected an object", path)
    missing = [k for k in keys if k not in obj]
    if missing:
        raise LiteralError(f"missing key {missing[0]!r}", path)


def _int_in(obj, path, minimum=0):
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise LiteralError("expected an integer", path)
    if obj < minimum:
        raise LiteralError(f"must be at least {minimum}", path)
    return obj


# -- masks ------------------------------------------------------------------

def _mask_out(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _mask_in(obj, limit: int, path, label: str):
    if not isinstance(obj, list):
        raise LiteralError(f"{label} must be an index list", path)
    mask = 0
    prev = -1
    for k, idx in enumerate(obj):
        if isinstance(idx, bool) or not isinstance(idx, int):
            raise LiteralError(f"{label} entries are integers",
                               f"{path}[{k}]")
        if idx <= prev:
            raise LiteralError(f"{label} must be strictly ascending",
                               f"{path}[{k}]")
        if idx >= limit:
            raise LiteralError(f"index {idx} out of range (limit {limit})",
                               f"{path}[{k}]")
        mask |= 1 << idx
        prev = idx
    return mask


# -- Grassmann numbers ------------------------------------------------------

def _grassmann_out(g: GrassmannNumber):
    field = g.alg.field
    return [{"mask": _mask_out(m), "value": _scalar_out(v, field)}
            for m, v in sorted(g.terms.items())]


def _grassmann_in(alg: GrassmannAlgebra, obj, path) -> GrassmannNumber:
    if not isinstance(obj, list):
        raise LiteralError("a Grassmann number is a list of terms", path)
    terms = {}
    for k, rec in enumerate(obj):
        here = f"{path}[{k}]"
        _expect(rec, ("mask", "value"), here)
        mask = _mask_in(rec["mask"], alg.gens, f"{here}.mask", "mask")
        if mask in terms:
            raise LiteralError("duplicate mask", f"{here}.mask")
        terms[mask] = _scalar_in(rec["value"], alg.field, f"{here}.value")
    return alg.from_terms(terms)


# -- jets ---------------------------------------------------------------------

def _jet_body(jet: SuperJet):
    terms = []
    for (mask, power), coeff in sorted(jet.terms.items(),
                                       key=lambda kv: (kv[0][1], kv[0][0])):
        terms.append({"xi_mask": _mask_out(mask), "h_power": power,
                      "value": _grassmann_out(coeff)})
    order = "exact" if jet.order == ORDER_INF else jet.order
    return {"n": jet.n_odd, "base_x": _scalar_out(jet.base_x, jet.alg.field),
            "order": order, "terms": terms}


def _jet_from_body(alg: GrassmannAlgebra, obj, path) -> SuperJet:
    _expect(obj, ("n", "base_x", "order", "terms"), path)
    n = _int_in(obj["n"], f"{path}.n")
    base = _scalar_in(obj["base_x"], alg.field, f"{path}.base_x")
    order = obj["order"]
    if order == "exact":
        order = ORDER_INF
    else:
        order = _int_in(order, f"{path}.order")
    if not isinstance(obj["terms"], list):
        raise LiteralError("terms must be a list", f"{path}.terms")
    terms = {}
    for k, rec in enumerate(obj["terms"]):
        here = f"{path}.terms[{k}]"
        _expect(rec, ("xi_mask", "h_power", "value"), here)
        mask = _mask_in(rec["xi_mask"], n, f"{here}.xi_mask", "xi_mask")
        power = _int_in(rec["h_power"], f"{here}.h_power")
        if (mask, power) in terms:
            raise LiteralError("duplicate (xi_mask, h_power)", here)
        terms[(mask, power)] = _grassmann_in(alg, rec["value"],
                                             f"{here}.value")
    return SuperJet.from_terms(alg, n, base, order, terms)


# -- points -------------------------------------------------------------------

def _point_body(p: SuperPoint):
    return {"n": len(p.xi), "x": _grassmann_out(p.x),
            "xi": [_grassmann_out(c) for c in p.xi]}


def _point_from_body(alg: GrassmannAlgebra, obj, path) -> SuperPoint:
    _expect(obj, ("n", "x", "xi"), path)
    n = _int_in(obj["n"], f"{path}.n")
    x = _grassmann_in(alg, obj["x"], f"{path}.x")
    if not isinstance(obj["xi"], list) or len(obj["xi"]) != n:
        raise LiteralError(f"xi must list {n} odd coordinates", f"{path}.xi")
    xi = [_grassmann_in(alg, c, f"{path}.xi[{k}]")
          for k, c in enumerate(obj["xi"])]
    return SuperPoint(alg, x, xi)


# -- germs ----------------------------------------------------------------

def _germ_body(germ: MapGerm):
    return {"n": germ.n_odd,
            "base_x": _scalar_out(germ.phi.base_x, germ.alg.field),
            "phi": _jet_body(germ.phi),
            "psis": [_jet_body(p) for p in germ.psis]}


def _germ_from_body(alg: GrassmannAlgebra, obj, path) -> MapGerm:
    _expect(obj, ("n", "base_x", "phi", "psis"), path)
    n = _int_in(obj["n"], f"{path}.n")
    base = _scalar_in(obj["base_x"], alg.field, f"{path}.base_x")
    phi = _jet_from_body(alg, obj["phi"], f"{path}.phi")
    if not isinstance(obj["psis"], list) or len(obj["psis"]) != n:
        raise LiteralError(f"psis must list {n} jets", f"{path}.psis")
    psis = [_jet_from_body(alg, b, f"{path}.psis[{k}]")
            for k, b in enumerate(obj["psis"])]
    for label, jet in [("phi", phi)] + list(zip(
            (f"psis[{k}]" for k in range(n)), psis)):
        if jet.n_odd != n:
            raise LiteralError(f"{label} carries n={jet.n_odd}, germ says {n}",
                               f"{path}.{label}")
        if jet.base_x != base:
            raise LiteralError(f"{label} is based at {jet.base_x}, "
                               f"germ says {base}", f"{path}.{label}")
    return MapGerm(phi, psis)


# -- orthosymplectic matrices -----------------------------------------------

def _matrix_body(m: OspMatrix):
    g = _grassmann_out
    return {"n": m.n_odd, "blocks": {
        "a": g(m.a), "b": g(m.b), "c": g(m.c), "d": g(m.d),
        "gamma": [g(v) for v in m.gamma],
        "delta": [g(v) for v in m.delta],
        "alpha": [g(v) for v in m.alpha],
        "beta": [g(v) for v in m.beta],
        "e": [[g(v) for v in row] for row in m.e_block],
    }}


def _row_in(alg, obj, n, path):
    if not isinstance(obj, list) or len(obj) != n:
        raise LiteralError(f"expected {n} entries", path)
    return [_grassmann_in(alg, v, f"{path}[{k}]") for k, v in enumerate(obj)]


def _matrix_from_body(alg: GrassmannAlgebra, obj, path) -> OspMatrix:
    _expect(obj, ("n", "blocks"), path)
    n = _int_in(obj["n"], f"{path}.n")
    blocks = obj["blocks"]
    _expect(blocks, ("a", "b", "c", "d", "gamma", "delta", "alpha", "beta",
                     "e"), f"{path}.blocks")
    bp = f"{path}.blocks"
    a = _grassmann_in(alg, blocks["a"], f"{bp}.a")
    b = _grassmann_in(alg, blocks["b"], f"{bp}.b")
    c = _grassmann_in(alg, blocks["c"], f"{bp}.c")
    d = _grassmann_in(alg, blocks["d"], f"{bp}.d")
    gamma = _row_in(alg, blocks["gamma"], n, f"{bp}.gamma")
    delta = _row_in(alg, blocks["delta"], n, f"{bp}.delta")
    alpha = _row_in(alg, blocks["alpha"], n, f"{bp}.alpha")
    beta = _row_in(alg, blocks["beta"], n, f"{bp}.beta")
    if not isinstance(blocks["e"], list) or len(blocks["e"]) != n:
        raise LiteralError(f"e must be {n} rows", f"{bp}.e")
    e = [_row_in(alg, row, n, f"{bp}.e[{i}]")
         for i, row in enumerate(blocks["e"])]
    mat = [[a, b] + gamma, [c, d] + delta]
    for i in range(n):
        mat.append([alpha[i], beta[i]] + e[i])
    return OspMatrix(alg, n, mat)


# -- vector fields ------------------------------------------------------------

def _field_body(X: ContactField):
    return {"n": X.n_odd, "a": _jet_body(X.a),
            "gs": [_jet_body(g) for g in X.gs]}


def _field_from_body(alg: GrassmannAlgebra, obj, path) -> ContactField:
    _expect(obj, ("n", "a", "gs"), path)
    n = _int_in(obj["n"], f"{path}.n")
    a = _jet_from_body(alg, obj["a"], f"{path}.a")
    if not isinstance(obj["gs"], list) or len(obj["gs"]) != n:
        raise LiteralError(f"gs must list {n} jets", f"{path}.gs")
    gs = [_jet_from_body(alg, b, f"{path}.gs[{k}]")
          for k, b in enumerate(obj["gs"])]
    return ContactField(a, gs)


# -- documents ----------------------------------------------------------------

def to_document(value):
    """The JSON-ready document for any supported value."""
    if isinstance(value, GrassmannNumber):
        alg, kind, body = value.alg, "grassmann", \
            {"terms": _grassmann_out(value)}
    elif isinstance(value, SuperJet):
        alg, kind, body = value.alg, "jet", _jet_body(value)
    elif isinstance(value, SuperPoint):
        alg, kind, body = value.alg, "point", _point_body(value)
    elif isinstance(value, MapGerm):
        alg, kind, body = value.alg, "germ", _germ_body(value)
    elif isinstance(value, OspMatrix):
        alg, kind, body = value.alg, "matrix", _matrix_body(value)
    elif isinstance(value, ContactField):
        alg, kind, body = value.alg, "field", _field_body(value)
    elif isinstance(value, (list, tuple)) and value and \
            all(isinstance(p, SuperPoint) for p in value):
        alg, kind = value[0].alg, "points"
        body = {"n": len(value[0].xi),
                "points": [_point_body(p) for p in value]}
    else:
        raise TypeError(f"no literal form for {type(value).__name__}")
    doc = {"kind": kind, "field": alg.field, "gens": alg.gens}
    doc.update(body)
    return doc


def from_document(doc, path: str = ""):
    """The value described by a parsed document."""
    _expect(doc, ("kind", "field", "gens"), path or "document")
    kind = doc["kind"]
    if kind not in KINDS:
        raise LiteralError(f"unknown kind {kind!r}", f"{path}.kind")
    field = doc["field"]
    if field not in (RATIONAL, FLOAT64):
        raise LiteralError(f'field must be "{RATIONAL}" or "{FLOAT64}"',
                           f"{path}.field")
    gens = _int_in(doc["gens"], f"{path}.gens")
    alg = GrassmannAlgebra(gens, field)
    if kind == "grassmann":
        _expect(doc, ("terms",), path or "document")
        return _grassmann_in(alg, doc["terms"], f"{path}.terms")
    if kind == "jet":
        return _jet_from_body(alg, doc, path)
    if kind == "point":
        return _point_from_body(alg, doc, path)
    if kind == "points":
        _expect(doc, ("n", "points"), path or "document")
        if not isinstance(doc["points"], list):
            raise LiteralError("points must be a list", f"{path}.points")
        return [_point_from_body(alg, p, f"{path}.points[{k}]")
                for k, p in enumerate(doc["points"])]
    if kind == "germ":
        return _germ_from_body(alg, doc, path)
    if kind == "matrix":
        return _matrix_from_body(alg, doc, path)
    return _field_from_body(alg, doc, path)


def dumps(value) -> str:
    return json.dumps(to_document(value), indent=1) + "\n"


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LiteralError(
            f"not valid JSON: {exc.msg} (line {exc.lineno} column {exc.colno})")
    return from_document(doc)


def read_path(filename: str):
    """Load one document from a file; errors name the file and location."""
    try:
        with open(filename, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise LiteralError(f"cannot read {filename}: {exc.strerror}")
    try:
        return loads(text)
    except LiteralError as exc:
        raise LiteralError(f"{filename}: {exc.message}", exc.path)


def write_path(filename: str, value) -> None:
    with open(filename, "w", encoding="utf-8") as fh:
        fh.write(dumps(value))


def scalar_text(g: GrassmannNumber):
    """The bare scalar when the value is soul-free, else None."""
    if any(m for m in g.terms):
        return None
    return _scalar_out(g.body, g.alg.field)
