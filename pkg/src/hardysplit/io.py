"""Plain JSON/CSV readers and writers for curves, boundary data and grids."""

import json
from pathlib import Path

import numpy as np

from .cauchy import BoundaryFunction
from .exceptions import CurveMismatchError, InvalidCurveError

FLOAT_FMT = "%.17g"


class ConfigError(ValueError):
    """An input file is missing or malformed."""


def _read_text(path, what):
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"{what} file not found: {p}")
    return p.read_text()


def read_json(path, what="JSON"):
    try:
        return json.loads(_read_text(path, what))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"cannot parse {what} file {path}: {exc}") from exc


def write_json(path, obj):
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n")


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def load_curve_spec(path):
    """Read a curve spec such as ``{"kind": "disc", "radius": 1.0, "n": 256}``."""
    from .geometry import CurveSpec

    d = read_json(path, "curve")
    if not isinstance(d, dict):
        raise ConfigError(f"curve file {path} must hold a JSON object")
    try:
        spec = CurveSpec.from_dict(d)
        spec.validate()
    except (InvalidCurveError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid curve in {path}: {exc}") from exc
    return spec


def write_csv(path, header, columns):
    """Write equal-length columns with 17 significant digits."""
    data = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    np.savetxt(path, data, delimiter=",", header=",".join(header), comments="", fmt=FLOAT_FMT)


def read_csv(path, what="data"):
    text = _read_text(path, what)
    lines = text.strip().splitlines()
    if not lines:
        raise ConfigError(f"{what} file {path} is empty")
    header = [h.strip() for h in lines[0].split(",")]
    try:
        body = np.loadtxt(lines[1:], delimiter=",", ndmin=2)
    except ValueError as exc:
        raise ConfigError(f"cannot parse {what} file {path}: {exc}") from exc
    return header, body


def read_boundary_csv(path, curve, rtol=1e-9):
    """Read ``t,re_u,im_u`` samples and check they sit on ``curve``'s nodes."""
    header, body = read_csv(path)
    need = ["t", "re_u", "im_u"]
    if header[:3] != need:
        raise ConfigError(f"data file {path} must start with columns {','.join(need)}")
    if body.shape[0] != curve.n:
        raise CurveMismatchError(f"{path} has {body.shape[0]} rows, curve has {curve.n} nodes")
    if np.max(np.abs(body[:, 0] - curve.t)) > rtol * 2 * np.pi:
        raise CurveMismatchError(f"parameter column of {path} does not match the curve nodes")
    return BoundaryFunction(curve.tag, body[:, 1] + 1j * body[:, 2], Path(path).stem)


def write_boundary_csv(path, curve, **named):
    """Write ``t`` followed by ``re_X, im_X`` for every named boundary function."""
    header, cols = ["t"], [curve.t]
    for name, f in named.items():
        v = np.asarray(f, dtype=complex)
        header += [f"re_{name}", f"im_{name}"]
        cols += [v.real, v.imag]
    write_csv(path, header, cols)


def write_curve_csv(path, curve):
    write_csv(path, ["t", "re_z", "im_z", "re_dz", "im_dz", "w"],
              [curve.t, curve.z.real, curve.z.imag, curve.dz.real, curve.dz.imag, curve.w])


def grid_points(d, center=0j, radius=1.0):
    """Points from a grid description.

    ``{"kind": "polar", "nr": 20, "ntheta": 64, "rmax": 0.95}`` gives radii
    ``rmax * i / nr`` (i = 1..nr) times ``ntheta`` equispaced angles, scaled
    to the disc; ``{"kind": "points", "points": [[x, y], ...]}`` lists them.
    """
    kind = d.get("kind")
    if kind == "polar":
        try:
            nr, nth, rmax = int(d["nr"]), int(d["ntheta"]), float(d["rmax"])
        except KeyError as exc:
            raise ConfigError(f"polar grid needs key {exc}") from exc
        if nr < 1 or nth < 1 or not 0 < rmax < 1:
            raise ConfigError("polar grid needs nr, ntheta >= 1 and 0 < rmax < 1")
        r = rmax * np.arange(1, nr + 1) / nr
        th = 2 * np.pi * np.arange(nth) / nth
        return center + radius * np.outer(r, np.exp(1j * th)).ravel()
    if kind == "points":
        pts = np.asarray(d.get("points", []), dtype=float).reshape(-1, 2)
        return pts[:, 0] + 1j * pts[:, 1]
    raise ConfigError(f"unknown grid kind {kind!r}")


def load_grid(path, center=0j, radius=1.0):
    d = read_json(path, "grid")
    if not isinstance(d, dict):
        raise ConfigError(f"grid file {path} must hold a JSON object")
    return grid_points(d, center, radius)
