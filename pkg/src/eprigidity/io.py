"""MatrixFile JSON reading and writing.

Layout::

    {"dim": m,
     "entries": [[[re, im], ...], ...],          # row-major, m x m
     "model": {"omegaEP": [re, im], "order": n,  # optional
               "hPrime": [[[re, im], ...], ...],
               "truncated": bool, "family": str,
               "epPoints": [[[re, im], n], ...], "params": {...}}}

Serialization is canonical (fixed key order, one row per line, ``repr``
floats) so that parse -> serialize reproduces a written file byte for byte.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EPRigidityError
from .models import NearEPModel


class ParseError(EPRigidityError):
    """Malformed MatrixFile; ``where`` is a line/column or a JSON path."""

    def __init__(self, msg, where=""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


@dataclass
class MatrixFile:
    entries: np.ndarray
    model: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def has_model(self) -> bool:
        return "hPrime" in self.model

    def to_model(self) -> NearEPModel:
        if not self.has_model():
            raise ParseError("no model block with hPrime", "model")
        md = self.model
        order = int(md.get("order", 2))
        omega = md.get("omegaEP", 0j)
        pts = md.get("epPoints") or [(omega, order)]
        return NearEPModel(
            h_at_ep=self.entries.copy(),
            h_prime=md["hPrime"].copy(),
            omega_ep=complex(omega),
            order=order,
            truncated=bool(md.get("truncated", False)),
            family=md.get("family", "custom"),
            params=dict(md.get("params", {})),
            ep_points=[(complex(w), int(k)) for w, k in pts],
        )


def _json_value(v):
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.integer):
        return int(v)
    if isinstance(v, np.floating):
        return float(v)
    return v


def from_model(model: NearEPModel) -> MatrixFile:
    md = {
        "omegaEP": complex(model.omega_ep),
        "order": int(model.order),
        "hPrime": np.asarray(model.h_prime, dtype=np.complex128),
        "truncated": bool(model.truncated),
        "family": model.family,
        "epPoints": [(complex(w), int(k)) for w, k in model.ep_points],
        "params": {k: _json_value(v) for k, v in model.params.items()},
    }
    return MatrixFile(np.asarray(model.h_at_ep, dtype=np.complex128), md)


# ----------------------------------------------------------------- serialize


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("MatrixFile numbers must be finite")
    return repr(x)


def _cnum(z) -> str:
    return f"[{_num(z.real)}, {_num(z.imag)}]"


def _grid(a, indent) -> str:
    pad = " " * indent
    rows = [pad + "  [" + ", ".join(_cnum(z) for z in row) + "]" for row in a]
    return "[\n" + ",\n".join(rows) + "\n" + pad + "]"


def dumps(mf: MatrixFile) -> str:
    parts = [f'  "dim": {mf.dim}', '  "entries": ' + _grid(mf.entries, 2)]
    md = mf.model
    if md:
        inner = []
        if "omegaEP" in md:
            inner.append('    "omegaEP": ' + _cnum(complex(md["omegaEP"])))
        if "order" in md:
            inner.append(f'    "order": {int(md["order"])}')
        if "hPrime" in md:
            inner.append('    "hPrime": ' + _grid(md["hPrime"], 4))
        if "truncated" in md:
            inner.append(f'    "truncated": {json.dumps(bool(md["truncated"]))}')
        if "family" in md:
            inner.append(f'    "family": {json.dumps(md["family"])}')
        if "epPoints" in md:
            pts = ", ".join(f"[{_cnum(complex(w))}, {int(k)}]" for w, k in md["epPoints"])
            inner.append(f'    "epPoints": [{pts}]')
        if "params" in md:
            inner.append('    "params": ' + json.dumps(md["params"], sort_keys=True))
        parts.append('  "model": {\n' + ",\n".join(inner) + "\n  }")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def write(mf: MatrixFile, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(mf))


# --------------------------------------------------------------------- parse


def _complex(v, where) -> complex:
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)
    ):
        raise ParseError("expected [re, im] pair of numbers", where)
    z = complex(float(v[0]), float(v[1]))
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParseError("non-finite number", where)
    return z


def _parse_grid(raw, m, where) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != m:
        raise ParseError(f"expected {m} rows", where)
    out = np.empty((m, m), dtype=np.complex128)
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != m:
            raise ParseError(f"expected {m} entries", f"{where}[{i}]")
        for j, v in enumerate(row):
            out[i, j] = _complex(v, f"{where}[{i}][{j}]")
    return out


def loads(text: str) -> MatrixFile:
    try:
        doc = json.loads(text, parse_constant=lambda c: float("nan"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")
    m = doc.get("dim")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ParseError("dim must be a positive integer", "dim")
    entries = _parse_grid(doc.get("entries"), m, "entries")
    md = {}
    raw = doc.get("model")
    if raw is not None:
        if not isinstance(raw, dict):
            raise ParseError("model must be an object", "model")
        if "omegaEP" in raw:
            md["omegaEP"] = _complex(raw["omegaEP"], "model.omegaEP")
        if "order" in raw:
            k = raw["order"]
            if not isinstance(k, int) or isinstance(k, bool) or not 2 <= k <= m:
                raise ParseError(f"order must be an integer in 2..{m}", "model.order")
            md["order"] = k
        if "hPrime" in raw:
            md["hPrime"] = _parse_grid(raw["hPrime"], m, "model.hPrime")
        if "truncated" in raw:
            if not isinstance(raw["truncated"], bool):
                raise ParseError("truncated must be a boolean", "model.truncated")
            md["truncated"] = raw["truncated"]
        if "family" in raw:
            if not isinstance(raw["family"], str):
                raise ParseError("family must be a string", "model.family")
            md["family"] = raw["family"]
        if "epPoints" in raw:
            pts = raw["epPoints"]
            if not isinstance(pts, list):
                raise ParseError("epPoints must be a list", "model.epPoints")
            parsed = []
            for i, p in enumerate(pts):
                w = f"model.epPoints[{i}]"
                if not isinstance(p, list) or len(p) != 2 or not isinstance(p[1], int):
                    raise ParseError("expected [[re, im], order]", w)
                parsed.append((_complex(p[0], w), p[1]))
            md["epPoints"] = parsed
        if "params" in raw:
            if not isinstance(raw["params"], dict):
                raise ParseError("params must be an object", "model.params")
            md["params"] = raw["params"]
    return MatrixFile(entries, md)


def read(path) -> MatrixFile:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), str(path)) from None
    return loads(text)
