"""Command-line front end.

Subcommands: spectrum | smatrix | classify | wavesymbol | verify, each
driven by a JSON config file (flux, boundary condition, grids, output
format). Matrices appear as 2x2 arrays of [re, im] pairs; complex numbers
are never strings. Floats are written with 17 significant digits so that
emitted JSON re-ingests bit-for-bit.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .extension import ExtensionPair, from_unitary, validate_pair
from .scattering import s_asymptotic, s_matrix, classify_energy_independent
from .spectrum import find_negative_eigenvalues
from .waveop import tanh_grid, wave_symbol

SCHEMA_VERSION = verify_mod.SCHEMA_VERSION
_OUTPUTS = ("spectrum", "smatrix", "classify", "wavesymbol", "verify")
_ALPHA_MARGIN = 1e-9


class ConfigError(ValueError):
    """Malformed or inadmissible run configuration."""


@dataclass
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: str

    def points(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        if self.spacing == "tanh":
            return tanh_grid(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class RunConfig:
    alpha: float
    pair: ExtensionPair
    kappa_grid: GridSpec
    x_grid: GridSpec
    outputs: tuple = _OUTPUTS
    fmt: str = "csv"
    extension_doc: dict = field(default_factory=dict)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _matrix_from_doc(doc, key: str) -> np.ndarray:
    try:
        rows = doc[key]
        arr = np.array([[complex(e[0], e[1]) for e in row] for row in rows])
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise ConfigError(
            f"field '{key}': expected a 2x2 array of [re, im] pairs ({exc})")
    if arr.shape != (2, 2):
        raise ConfigError(f"field '{key}': expected shape 2x2, got {arr.shape}")
    return arr


def _grid_from_doc(doc, key: str, spacings, default) -> GridSpec:
    raw = doc.get(key, default)
    try:
        g = GridSpec(float(raw["min"]), float(raw["max"]), int(raw["count"]),
                     str(raw["spacing"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"field '{key}': malformed grid ({exc})")
    if g.count < 1 or not g.lo < g.hi:
        raise ConfigError(f"field '{key}': empty or reversed grid")
    if g.spacing not in spacings:
        raise ConfigError(f"field '{key}': spacing must be one of {spacings}")
    if g.spacing == "log" and g.lo <= 0:
        raise ConfigError(f"field '{key}': log spacing needs min > 0")
    return g


def parse_config(text: str) -> RunConfig:
    """Parse and validate a JSON run configuration."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON: {exc}")
    if "alpha" not in doc:
        raise ConfigError("field 'alpha' is required")
    alpha = float(doc["alpha"])
    if not _ALPHA_MARGIN < alpha < 1.0 - _ALPHA_MARGIN:
        raise ConfigError(
            f"field 'alpha': {alpha} outside (0, 1); integer flux is "
            "equivalent to the free case and not supported")
    extension_doc = doc.get("extension")
    if not isinstance(extension_doc, dict):
        raise ConfigError("field 'extension' is required (object with 'u' "
                          "or with 'c' and 'd')")
    try:
        if "u" in extension_doc:
            pair = from_unitary(_matrix_from_doc(extension_doc, "u"))
        elif "c" in extension_doc and "d" in extension_doc:
            pair = validate_pair(_matrix_from_doc(extension_doc, "c"),
                                 _matrix_from_doc(extension_doc, "d"))
        else:
            raise ConfigError("field 'extension': provide 'u' or 'c'+'d'")
    except ConfigError:
        raise
    except Exception as exc:
        raise ConfigError(f"field 'extension': {exc}")
    kappa_grid = _grid_from_doc(doc, "kappa_grid", ("log", "linear"),
                                {"min": 1e-3, "max": 1e3, "count": 61,
                                 "spacing": "log"})
    x_grid = _grid_from_doc(doc, "x_grid", ("linear", "tanh"),
                            {"min": -8.0, "max": 8.0, "count": 201,
                             "spacing": "tanh"})
    outputs = tuple(doc.get("outputs", _OUTPUTS))
    for o in outputs:
        if o not in _OUTPUTS:
            raise ConfigError(f"field 'outputs': unknown output {o!r}")
    fmt = doc.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("field 'format': must be 'csv' or 'json'")
    return RunConfig(alpha, pair, kappa_grid, x_grid, outputs, fmt,
                     extension_doc)


# ---------------------------------------------------------------------------
# output assembly

def _complex_cols(prefix):
    return [f"{prefix}_re", f"{prefix}_im"]


def _write_table(path: Path, header, rows, fmt: str):
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n")
    else:
        doc = {"schema": SCHEMA_VERSION, "columns": header,
               "rows": [[float(v) for v in row] for row in rows]}
        path.write_text(json.dumps(doc, indent=1))


def run_spectrum(cfg: RunConfig, out_dir: Path) -> Path:
    states = find_negative_eigenvalues(cfg.pair, cfg.alpha)
    path = out_dir / ("spectrum.csv" if cfg.fmt == "csv" else "spectrum.json")
    rows = [(st.z, st.multiplicity) for st in states]
    _write_table(path, ["z", "multiplicity"], rows, cfg.fmt)
    return path


def _smatrix_row(cfg, kappa):
    sm = s_matrix(cfg.pair, cfg.alpha, float(kappa))
    s = sm.s
    return (kappa, s[0, 0].real, s[0, 0].imag, s[0, 1].real, s[0, 1].imag,
            s[1, 0].real, s[1, 0].imag, s[1, 1].real, s[1, 1].imag,
            sm.unitarity_defect)


def run_smatrix(cfg: RunConfig, out_dir: Path, threads: int = 1) -> Path:
    kappas = cfg.kappa_grid.points()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda k: _smatrix_row(cfg, k), kappas))
    else:
        rows = [_smatrix_row(cfg, k) for k in kappas]
    header = ["kappa"] + sum((_complex_cols(f"s{i}{j}")
                              for i in (1, 2) for j in (1, 2)), [])
    header += ["unitarity_defect"]
    path = out_dir / ("smatrix.csv" if cfg.fmt == "csv" else "smatrix.json")
    _write_table(path, header, rows, cfg.fmt)
    return path


def _matrix_doc(m: np.ndarray):
    return [[[float(e.real), float(e.imag)] for e in row] for row in m]


def run_classify(cfg: RunConfig, out_dir: Path) -> Path:
    zero = s_asymptotic(cfg.pair, cfg.alpha, "zero")
    inf = s_asymptotic(cfg.pair, cfg.alpha, "infinity")
    const = classify_energy_independent(cfg.pair, cfg.alpha)
    doc = {
        "schema": SCHEMA_VERSION,
        "zero": {"label": zero.label, "limit": _matrix_doc(zero.limit)},
        "infinity": {"label": inf.label, "limit": _matrix_doc(inf.limit)},
        "energy_independent": const is not None,
        "constant": None if const is None else _matrix_doc(const),
    }
    path = out_dir / "classify.json"
    path.write_text(json.dumps(doc, indent=1))
    return path


def run_wavesymbol(cfg: RunConfig, out_dir: Path) -> Path:
    rows = []
    for kappa in cfg.kappa_grid.points():
        for x in cfg.x_grid.points():
            w = wave_symbol(cfg.pair, cfg.alpha, float(x), float(kappa))
            rows.append((kappa, x,
                         w[0, 0].real, w[0, 0].imag, w[0, 1].real, w[0, 1].imag,
                         w[1, 0].real, w[1, 0].imag, w[1, 1].real, w[1, 1].imag))
    header = ["kappa", "x"] + sum((_complex_cols(f"w{i}{j}")
                                   for i in (1, 2) for j in (1, 2)), [])
    path = out_dir / ("wavesymbol.csv" if cfg.fmt == "csv"
                      else "wavesymbol.json")
    _write_table(path, header, rows, cfg.fmt)
    return path


def run_verify(cfg: RunConfig, out_dir: Path, threads: int = 1):
    checks = [
        lambda: verify_mod.hankel_norm_check(0.2),
        lambda: verify_mod.hankel_norm_check(0.5),
        lambda: verify_mod.hankel_norm_check(0.8),
        lambda: verify_mod.dirac_limit_check(0, 0.3, 1.0),
        lambda: verify_mod.dirac_limit_check(-1, 0.7, 2.0),
        lambda: verify_mod.mellin_pair_check("phi-minus", 0, cfg.alpha),
        lambda: verify_mod.mellin_pair_check("phi-tilde", 0, cfg.alpha),
        lambda: verify_mod.mellin_pair_check("phi-tilde", -1, cfg.alpha),
        lambda: verify_mod.boundary_value_check(cfg.alpha, 1.0),
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(c) for c in checks]
            reports = [f.result() for f in futures]
    else:
        reports = [c() for c in checks]
    reports.sort(key=lambda r: r.name)
    path = out_dir / "verify.json"
    path.write_text(verify_mod.reports_to_json(reports))
    return path, all(r.passed for r in reports)


# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="abflux",
        description="Bound states, scattering matrices and wave-operator "
                    "symbols of planar point-flux boundary conditions.")
    parser.add_argument("--version", action="version", version="abflux 0.1.0")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("spectrum", "negative bound states of the configured condition"),
        ("smatrix", "scattering matrix over the kappa grid"),
        ("classify", "asymptotic case labels and energy independence"),
        ("wavesymbol", "wave-operator symbol over the x and kappa grids"),
        ("verify", "run the quadrature oracle battery"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help="override the config's output format")
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for grid fan-out")
    args = parser.parse_args(argv)

    try:
        cfg = parse_config(Path(args.config).read_text())
    except (OSError, ConfigError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    if args.format:
        cfg.fmt = args.format
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    try:
        if args.command == "spectrum":
            path = run_spectrum(cfg, out_dir)
        elif args.command == "smatrix":
            path = run_smatrix(cfg, out_dir, args.threads)
        elif args.command == "classify":
            path = run_classify(cfg, out_dir)
        elif args.command == "wavesymbol":
            path = run_wavesymbol(cfg, out_dir)
        else:
            path, ok = run_verify(cfg, out_dir, args.threads)
            print(f"wrote {path}")
            if not ok:
                print("verification FAILED", file=sys.stderr)
                return 1
            return 0
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
