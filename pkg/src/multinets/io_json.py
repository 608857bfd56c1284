"""Net serialization (JSON) and OBJ mesh export.

One top-level object per file: kind in {point_net, plane_net, line_grid},
an ambient tag, dims [nu, nv], and a row-major data array of coordinate
arrays.  Euclidean nets use ambient "E3" with null marking a vertex at
infinity.  Floats round-trip exactly (shortest repr), so write/read is
lossless and byte-deterministic.
"""

from __future__ import annotations

import json

import numpy as np

from .circular import EuclidNet
from .congruences import IsoLineGrid
from .errors import InfiniteVertex, SchemaViolation
from .projective import LIE, PLUECKER
from .qnets import PlaneNet, PointNet

_POINT_AMBIENTS = {"RP3": 4, "R41": 5, "R31": 4, "R42": 6, "R33": 6}
_LINE_AMBIENTS = {"R42": (LIE, 6), "R33": (PLUECKER, 6)}


def _as_float_list(arr):
    return [float(v) for v in np.asarray(arr).ravel()]


def net_to_document(net, meta=None) -> dict:
    """JSON-ready document for a PointNet, PlaneNet, EuclidNet or IsoLineGrid."""
    doc = {"meta": dict(meta)} if meta else {}
    if isinstance(net, PointNet):
        nu, nv = net.dims
        doc.update(
            kind="point_net",
            ambient=net.ambient,
            dims=[nu, nv],
            data=[_as_float_list(net.points[i, j]) for i in range(nu) for j in range(nv)],
        )
    elif isinstance(net, PlaneNet):
        nu, nv = net.dims
        doc.update(
            kind="plane_net",
            ambient="RP3",
            dims=[nu, nv],
            data=[
                _as_float_list(net.covectors[i, j]) for i in range(nu) for j in range(nv)
            ],
        )
    elif isinstance(net, EuclidNet):
        nu, nv = net.dims
        data = []
        for i in range(nu):
            for j in range(nv):
                data.append(
                    None if net.at_infinity[i, j] else _as_float_list(net.points[i, j])
                )
        doc.update(kind="point_net", ambient="E3", dims=[nu, nv], data=data)
    elif isinstance(net, IsoLineGrid):
        nu, nv = net.dims
        ambient = "R42" if net.form.signature == LIE.signature else "R33"
        doc.update(
            kind="line_grid",
            ambient=ambient,
            dims=[nu, nv],
            data=[
                [
                    _as_float_list(net.lines[i, j, 0]),
                    _as_float_list(net.lines[i, j, 1]),
                ]
                for i in range(nu)
                for j in range(nv)
            ],
        )
    else:
        raise SchemaViolation(f"cannot serialize object of type {type(net).__name__}")
    return doc


def document_to_net(doc: dict):
    """Decode a document, validating the schema with field diagnostics."""
    if not isinstance(doc, dict):
        raise SchemaViolation("top-level value must be an object")
    for key in ("kind", "ambient", "dims", "data"):
        if key not in doc:
            raise SchemaViolation(f"missing field '{key}'")
    kind = doc["kind"]
    ambient = doc["ambient"]
    dims = doc["dims"]
    data = doc["data"]
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(n, int) and n > 0 for n in dims)
    ):
        raise SchemaViolation("field 'dims' must be two positive integers")
    nu, nv = dims
    if not isinstance(data, list) or len(data) != nu * nv:
        raise SchemaViolation(
            f"field 'data' must hold dims[0]*dims[1] = {nu * nv} entries, got "
            f"{len(data) if isinstance(data, list) else type(data).__name__}"
        )

    def entry_array(entry, length, index):
        if not isinstance(entry, list) or len(entry) != length:
            raise SchemaViolation(f"data[{index}]: expected {length} coordinates")
        try:
            return np.asarray([float(v) for v in entry])
        except (TypeError, ValueError) as exc:
            raise SchemaViolation(f"data[{index}]: non-numeric coordinate") from exc

    if kind == "point_net" and ambient == "E3":
        pts = np.zeros((nu, nv, 3))
        mask = np.zeros((nu, nv), dtype=bool)
        for k, entry in enumerate(data):
            i, j = divmod(k, nv)
            if entry is None:
                mask[i, j] = True
            else:
                pts[i, j] = entry_array(entry, 3, k)
        return EuclidNet(pts, mask)
    if kind == "point_net":
        if ambient not in _POINT_AMBIENTS:
            raise SchemaViolation(f"unknown point ambient '{ambient}'")
        d = _POINT_AMBIENTS[ambient]
        pts = np.zeros((nu, nv, d))
        for k, entry in enumerate(data):
            i, j = divmod(k, nv)
            pts[i, j] = entry_array(entry, d, k)
        return PointNet(pts, ambient=ambient)
    if kind == "plane_net":
        cov = np.zeros((nu, nv, 4))
        for k, entry in enumerate(data):
            i, j = divmod(k, nv)
            cov[i, j] = entry_array(entry, 4, k)
        return PlaneNet(cov)
    if kind == "line_grid":
        if ambient not in _LINE_AMBIENTS:
            raise SchemaViolation(f"unknown line ambient '{ambient}'")
        form, d = _LINE_AMBIENTS[ambient]
        lines = np.zeros((nu, nv, 2, d))
        for k, entry in enumerate(data):
            i, j = divmod(k, nv)
            if not isinstance(entry, list) or len(entry) != 2:
                raise SchemaViolation(f"data[{k}]: expected a spanning pair")
            lines[i, j, 0] = entry_array(entry[0], d, k)
            lines[i, j, 1] = entry_array(entry[1], d, k)
        return IsoLineGrid(lines, form)
    raise SchemaViolation(f"unknown kind '{kind}'")


def write_net(net, target, meta=None):
    """Write a net to a path or text stream; lossless float round trip."""
    doc = net_to_document(net, meta)
    text = json.dumps(doc, indent=1, sort_keys=True)
    if hasattr(target, "write"):
        target.write(text + "\n")
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def read_net(source):
    """Read a net from a path, text stream, or JSON string."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and source.lstrip().startswith("{"):
        text = source
    else:
        with open(source, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return document_to_net(doc)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def export_obj(net, target):
    """ASCII OBJ export: one v line per vertex (affine coordinates), one quad
    f line per elementary face, vertices in row-major order."""
    if isinstance(net, EuclidNet):
        nu, nv = net.dims
        verts = []
        for i in range(nu):
            for j in range(nv):
                if net.at_infinity[i, j]:
                    raise InfiniteVertex(f"vertex ({i},{j}) is at infinity")
                verts.append(net.points[i, j])
    elif isinstance(net, PointNet):
        if net.ambient != "RP3":
            raise InfiniteVertex("OBJ export needs an RP3 or E3 net")
        nu, nv = net.dims
        verts = []
        for i in range(nu):
            for j in range(nv):
                p = net.points[i, j]
                if abs(p[3]) <= 1e-12 * np.linalg.norm(p):
                    raise InfiniteVertex(f"vertex ({i},{j}) is at infinity")
                verts.append(p[:3] / p[3])
    else:
        raise InfiniteVertex(f"cannot export object of type {type(net).__name__}")
    lines = []
    for v in verts:
        lines.append(f"v {_fmt(v[0])} {_fmt(v[1])} {_fmt(v[2])}")
    for i in range(nu - 1):
        for j in range(nv - 1):
            a = i * nv + j + 1
            b = i * nv + j + 2
            c = (i + 1) * nv + j + 2
            d = (i + 1) * nv + j + 1
            lines.append(f"f {a} {b} {c} {d}")
    text = "\n".join(lines) + "\n"
    if hasattr(target, "write"):
        target.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)
