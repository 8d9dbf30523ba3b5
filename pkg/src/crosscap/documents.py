"""
JSON documents for germs, metrics, jets and invariant tables, plus OBJ export.

Every document carries ``"schema": 1`` and a ``"mode"`` naming its content.
Series are stored as Taylor values under keys ``"k,l"`` (bivariate) or
``"r"`` (univariate); rational values are strings such as ``"-3/4"`` so that
they load back exactly.

Example germ document::

    {"schema": 1, "mode": "crosscap", "order": 4, "ring": "rational",
     "coefficients": {"z": {"2,0": "1", "0,2": "1"}, "b": {"3": "1"}}}
"""
import json

import numpy as np

from .geometry import CrossCapGerm, MapJet, MetricJet
from .rings import get_ring
from .series import TruncBiSeries, TruncUniSeries

SCHEMA_VERSION = 1

__all__ = [
    "DocumentError",
    "SCHEMA_VERSION",
    "load_document",
    "parse_document",
    "dump_document",
    "germ_to_doc",
    "metric_to_doc",
    "jet_to_doc",
    "table_to_doc",
    "doc_to_germ",
    "doc_to_metric",
    "doc_to_jet",
    "doc_to_beta",
    "mesh_obj",
]


class DocumentError(ValueError):
    """Malformed input document."""


def _sorted_pairs(keys):
    return sorted(keys, key=lambda kl: (kl[0] + kl[1], -kl[0]))


def _bi_to_json(P, ring):
    data = P.to_dict()
    return {f"{k},{l}": ring.format(data[k, l]) for k, l in _sorted_pairs(data)}


def _uni_to_json(B, ring):
    data = B.to_dict()
    return {str(r): ring.format(data[r]) for r in sorted(data)}


def _parse_value(ring, value, where):
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise DocumentError(f"{where}: expected a number or number string, got {value!r}")
    try:
        return ring.parse(value) if isinstance(value, str) else ring.convert(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: cannot parse {value!r} ({exc})") from None


def _parse_pairs(ring, mapping, where, max_order=None):
    if not isinstance(mapping, dict):
        raise DocumentError(f"{where}: expected an object of \"k,l\" keys")
    out = {}
    for key, value in mapping.items():
        try:
            k, l = (int(s) for s in key.split(","))
        except ValueError:
            raise DocumentError(f"{where}: bad index key {key!r}") from None
        if k < 0 or l < 0:
            raise DocumentError(f"{where}: negative index in {key!r}")
        if max_order is not None and k + l > max_order:
            raise DocumentError(f"{where}: index {key!r} exceeds order {max_order}")
        out[k, l] = _parse_value(ring, value, f"{where}[{key}]")
    return out


def _parse_singletons(ring, mapping, where, max_order=None):
    if not isinstance(mapping, dict):
        raise DocumentError(f"{where}: expected an object of integer keys")
    out = {}
    for key, value in mapping.items():
        try:
            r = int(key)
        except ValueError:
            raise DocumentError(f"{where}: bad index key {key!r}") from None
        if max_order is not None and not 0 <= r <= max_order:
            raise DocumentError(f"{where}: index {key!r} outside 0..{max_order}")
        out[r] = _parse_value(ring, value, f"{where}[{key}]")
    return out


def _check_b_indices(b, where):
    for r in b:
        if r < 3:
            raise DocumentError(f"{where}: characteristic coefficient index {r} must be >= 3")


def load_document(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}") from None
    return parse_document(text, source=str(path))


def parse_document(text, source="<document>"):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        raise DocumentError(f"{source}: top level must be an object")
    schema = doc.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise DocumentError(f"{source}: unsupported schema version {schema!r}")
    if "mode" not in doc:
        raise DocumentError(f"{source}: missing key 'mode'")
    return doc


def dump_document(doc):
    return json.dumps(doc, indent=2) + "\n"


def _header(mode, order, ring):
    return {"schema": SCHEMA_VERSION, "mode": mode, "order": order, "ring": ring.name}


def doc_ring(doc, ring=None):
    if ring is not None:
        return ring
    try:
        return get_ring(doc.get("ring", "rational"))
    except ValueError as exc:
        raise DocumentError(f"key 'ring': {exc}") from None


def _doc_order(doc):
    order = doc.get("order")
    if not isinstance(order, int) or isinstance(order, bool) or order < 0:
        raise DocumentError(f"key 'order': expected a non-negative integer, got {order!r}")
    return order


def _coefficients(doc):
    coeffs = doc.get("coefficients")
    if not isinstance(coeffs, dict):
        raise DocumentError("key 'coefficients': expected an object")
    return coeffs


# -- germs -------------------------------------------------------------------


def germ_to_doc(germ, target_b=None):
    ring = germ.ring
    z = {f"{j},{k}": ring.format(germ.a[j, k]) for j, k in _sorted_pairs(germ.a)}
    b = {str(i): ring.format(germ.b[i]) for i in sorted(germ.b)}
    doc = _header("crosscap", germ.order, ring)
    doc["coefficients"] = {"z": z, "b": b}
    if target_b is not None:
        doc["target_b"] = {str(i): ring.format(v) for i, v in sorted(target_b.items())}
    return doc


def doc_to_germ(doc, ring=None):
    if doc.get("mode") != "crosscap":
        raise DocumentError(f"expected mode 'crosscap', got {doc.get('mode')!r}")
    ring = doc_ring(doc, ring)
    order = _doc_order(doc)
    coeffs = _coefficients(doc)
    z = _parse_pairs(ring, coeffs.get("z", {}), "coefficients.z", order)
    for jk in z:
        if sum(jk) < 2:
            raise DocumentError(f"coefficients.z: index {jk} must have total order >= 2")
    b = _parse_singletons(ring, coeffs.get("b", {}), "coefficients.b", order)
    _check_b_indices(b, "coefficients.b")
    try:
        return CrossCapGerm(order, z, b, ring)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


# -- metrics -----------------------------------------------------------------


def metric_to_doc(metric):
    ring = metric.ring
    doc = _header("metric", metric.order, ring)
    doc["alphas"] = [ring.format(a) for a in metric.alphas]
    doc["coefficients"] = {
        "E": _bi_to_json(metric.E, ring),
        "F": _bi_to_json(metric.F, ring),
        "G": _bi_to_json(metric.G, ring),
    }
    return doc


def doc_to_metric(doc, ring=None):
    if doc.get("mode") != "metric":
        raise DocumentError(f"expected mode 'metric', got {doc.get('mode')!r}")
    ring = doc_ring(doc, ring)
    order = _doc_order(doc)
    coeffs = _coefficients(doc)
    forms = {}
    for name in "EFG":
        if name not in coeffs:
            raise DocumentError(f"coefficients: missing form {name!r}")
        forms[name] = TruncBiSeries(
            _parse_pairs(ring, coeffs[name], f"coefficients.{name}", order), order, ring
        )
    alphas = doc.get("alphas")
    if alphas is None:
        try:
            return MetricJet.from_forms(forms["E"], forms["F"], forms["G"])
        except (ValueError, ArithmeticError) as exc:
            raise DocumentError(f"key 'alphas' missing and not derivable: {exc}") from None
    if not isinstance(alphas, list) or len(alphas) != 3:
        raise DocumentError("key 'alphas': expected [a20, a11, a02]")
    alphas = [_parse_value(ring, a, f"alphas[{i}]") for i, a in enumerate(alphas)]
    if not ring.is_positive(alphas[2]):
        raise DocumentError(f"alphas[2]: a02 = {alphas[2]} must be positive")
    return MetricJet(forms["E"], forms["F"], forms["G"], tuple(alphas))


def doc_to_beta(doc, ring=None):
    """Target characteristic function of a document, as a dict r -> value.

    Looks at ``target_b``, then ``b``, then ``coefficients.b``.
    """
    ring = doc_ring(doc, ring)
    for where, mapping in (
        ("target_b", doc.get("target_b")),
        ("b", doc.get("b")),
        ("coefficients.b", (doc.get("coefficients") or {}).get("b")),
    ):
        if mapping is not None:
            b = _parse_singletons(ring, mapping, where)
            _check_b_indices(b, where)
            return b
    raise DocumentError("no characteristic function found (keys target_b, b, coefficients.b)")


# -- jets and tables ---------------------------------------------------------


def jet_to_doc(jet, verification=None):
    ring = jet.ring
    doc = _header("jet", jet.order, ring)
    doc["orders"] = {
        "X": jet.X.max_order,
        "Y": jet.Y.max_order,
        "Z": jet.Z.max_order,
        "beta": jet.beta.max_order,
    }
    doc["coefficients"] = {
        "X": _bi_to_json(jet.X, ring),
        "Y": _bi_to_json(jet.Y, ring),
        "Z": _bi_to_json(jet.Z, ring),
        "beta": _uni_to_json(jet.beta, ring),
    }
    if verification is not None:
        doc["verification"] = {
            "ok": verification.ok,
            "order": verification.order,
            "leading_terms_ok": verification.leading_terms_ok,
            "failures": list(verification.failures),
        }
    return doc


def doc_to_jet(doc, ring=None):
    if doc.get("mode") != "jet":
        raise DocumentError(f"expected mode 'jet', got {doc.get('mode')!r}")
    ring = doc_ring(doc, ring)
    order = _doc_order(doc)
    orders = doc.get("orders") or {}
    defaults = {"X": order + 1, "Y": max(order - 1, 0), "Z": order, "beta": order + 1}
    coeffs = _coefficients(doc)
    parts = {}
    for name in "XYZ":
        n = orders.get(name, defaults[name])
        parts[name] = TruncBiSeries(
            _parse_pairs(ring, coeffs.get(name, {}), f"coefficients.{name}", n), n, ring
        )
    n = orders.get("beta", defaults["beta"])
    beta = _parse_singletons(ring, coeffs.get("beta", {}), "coefficients.beta", n)
    return MapJet(parts["X"], parts["Y"], parts["Z"], TruncUniSeries.from_taylor(beta, n, ring))


def table_to_doc(table, closed_form=None):
    ring = table.ring
    doc = _header("invariants", table.order, ring)
    doc["A"] = {f"{i},{j}": ring.format(v) for (i, j), v in table.items()}
    if closed_form is not None:
        doc["closed_form_check"] = {
            "ok": closed_form.ok,
            "failures": list(closed_form.failures),
            "values": {
                f"{i},{j}": ring.format(v)
                for (i, j), v in sorted(closed_form.closed_form.items())
            },
        }
    return doc


# -- meshes ------------------------------------------------------------------


def mesh_obj(jet, radius, samples):
    """ASCII OBJ of the polynomial map over an n x n grid on [-r, r]^2.

    Vertices run row-major with v fixed along a row and u increasing; faces
    are quads ``(a, a+1, a+n+1, a+n)``.
    """
    if not radius > 0:
        raise ValueError("range must be positive")
    if samples < 2:
        raise ValueError("need at least 2 samples per direction")
    t = np.linspace(-radius, radius, samples)
    u, v = np.meshgrid(t, t)
    x = jet.X.evaluate(u, v) + 0 * u
    y_in = jet.Y.evaluate(u, v) + 0 * u
    y = x * y_in + jet.beta.evaluate(y_in)
    z = jet.Z.evaluate(u, v) + 0 * u
    lines = []
    for xi, yi, zi in zip(x.ravel(), y.ravel(), z.ravel()):
        lines.append(f"v {_fmt(xi)} {_fmt(yi)} {_fmt(zi)}")
    n = samples
    for i in range(n - 1):
        for j in range(n - 1):
            a = i * n + j + 1
            lines.append(f"f {a} {a + 1} {a + n + 1} {a + n}")
    return "\n".join(lines) + "\n"


def _fmt(value):
    value = float(value) + 0.0
    return f"{value:.12g}"
