"""``spinstar`` command-line interface.

Every command writes one report to stdout (JSON by default, CSV where the
data is flat) and reports errors as a single JSON line on stderr.

Exit codes: 0 success, 1 invalid arguments, 2 size cap exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from math import sqrt

from . import analytic, oracle, qinfo, verify
from .errors import DomainError, ResourceError, SpinStarError
from .params import ModelParams

EXIT_OK, EXIT_INVALID, EXIT_RESOURCE, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_ORACLE_CAP = 8
COMMANDS = ("spectrum", "ground", "entanglement", "correlations", "window", "sweep", "verify")


class UsageError(Exception):
    def __init__(self, message, flag=None):
        super().__init__(message)
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    n_outer: int | None = None
    coupling: float = 1.0
    field: float = 0.0
    format: str = "json"
    oracle_cap_override: int | None = None
    n_min: int = 2
    n_max: int = 10
    scan: bool = False
    normalize: bool = False

    @property
    def oracle_cap(self) -> int:
        if self.oracle_cap_override is None:
            return DEFAULT_ORACLE_CAP
        return self.oracle_cap_override

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.command in ("sweep", "verify"):
            if self.command == "sweep":
                if self.n_min < 2:
                    raise UsageError("--n-min must be >= 2", "--n-min")
                if self.n_max < self.n_min:
                    raise UsageError("--n-max must be >= --n-min", "--n-max")
                if self.coupling <= 0:
                    raise UsageError("sweep needs --coupling > 0", "--coupling")
                if self.field != 0:
                    raise UsageError("sweep reports zero-field values; drop --field", "--field")
        elif self.n_outer is None or self.n_outer < 1:
            raise UsageError("--n must be a positive integer", "--n")
        if self.field < 0:
            raise UsageError("--field must be >= 0 (+Z direction)", "--field")
        if self.format not in ("json", "csv"):
            raise UsageError("--format must be json or csv", "--format")
        if self.format == "csv" and self.command not in ("spectrum", "sweep"):
            raise UsageError("csv output is only available for spectrum and sweep", "--format")
        if self.oracle_cap_override is not None:
            if self.oracle_cap_override < 1:
                raise UsageError("--oracle-cap must be >= 1", "--oracle-cap")
            if self.oracle_cap_override > oracle.MAX_DENSE_OUTER:
                raise ResourceError(
                    f"--oracle-cap {self.oracle_cap_override} needs dense matrices of dimension "
                    f"{1 << (self.oracle_cap_override + 1)}; hard limit is N={oracle.MAX_DENSE_OUTER}"
                )
        if self.normalize and self.coupling == 0:
            raise UsageError("--normalize needs a nonzero --coupling", "--coupling")
        if self.command == "window" and self.coupling <= 0:
            raise UsageError("window needs --coupling > 0", "--coupling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinstar", description="Exact results for the XX spin star.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name not in ("sweep", "verify"):
            p.add_argument("--n", type=int, required=True, dest="n_outer", help="number of outer spins")
        if name == "sweep":
            p.add_argument("--n-min", type=int, default=2)
            p.add_argument("--n-max", type=int, default=10)
        if name == "window":
            p.add_argument("--scan", action="store_true", help="verify the window by dense diagonalization")
        p.add_argument("--coupling", type=float, default=1.0)
        p.add_argument("--field", type=float, default=0.0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--normalize", action="store_true", help="report energies in units of |coupling|")
        p.add_argument("--oracle-cap", type=int, default=None, dest="oracle_cap_override",
                       help=f"largest N for dense numerics (default {DEFAULT_ORACLE_CAP})")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(**{k: v for k, v in vars(ns).items()})


def _num(x):
    if x is None:
        return None
    return float(f"{x:.12g}")


def _fmt(x) -> str:
    return "" if x is None else f"{x:.12g}"


def _level_dict(lv: analytic.EigenLevel, scale: float) -> dict:
    return {"j": str(lv.j), "m": str(lv.m), "sign": lv.sign,
            "energy": _num(lv.energy / scale), "degeneracy": lv.degeneracy}


def _amplitudes(psi, n_sites: int) -> list:
    out = []
    for idx in range(len(psi)):
        amp = psi[idx]
        if abs(amp) > 1e-14:
            out.append([format(idx, f"0{n_sites}b"), _num(amp.real), _num(amp.imag)])
    return out


def _dense_ground(cfg: RunConfig, n: int, coupling=None, field=None):
    params = ModelParams(n, cfg.coupling if coupling is None else coupling,
                         cfg.field if field is None else field)
    h = oracle.build_hamiltonian(params, max_outer=cfg.oracle_cap)
    return oracle.ground_space(h)


def _skip_notice(cfg: RunConfig, n: int) -> str:
    return f"N={n} exceeds the dense oracle cap N={cfg.oracle_cap}; numeric values skipped"


def cmd_spectrum(cfg: RunConfig):
    params = ModelParams(cfg.n_outer, cfg.coupling, cfg.field)
    scale = abs(cfg.coupling) if cfg.normalize else 1.0
    levels = [_level_dict(lv, scale) for lv in analytic.spectrum(params)]
    if cfg.format == "csv":
        return _csv(["j", "m", "sign", "energy", "degeneracy"],
                    [[d["j"], d["m"], d["sign"], _fmt(d["energy"]), d["degeneracy"]] for d in levels])
    return {"command": "spectrum", "n_outer": cfg.n_outer, "coupling": _num(cfg.coupling),
            "field": _num(cfg.field), "total_states": sum(d["degeneracy"] for d in levels),
            "levels": levels}


def cmd_ground(cfg: RunConfig):
    params = ModelParams(cfg.n_outer, cfg.coupling, cfg.field)
    scale = abs(cfg.coupling) if cfg.normalize else 1.0
    levels = analytic.ground_levels(params)
    report = {"command": "ground", "n_outer": cfg.n_outer, "coupling": _num(cfg.coupling),
              "field": _num(cfg.field), "energy": _num(levels[0].energy / scale),
              "degeneracy": sum(lv.degeneracy for lv in levels),
              "levels": [_level_dict(lv, scale) for lv in levels]}
    if cfg.n_outer > cfg.oracle_cap:
        report["states"] = None
        report["notice"] = _skip_notice(cfg, cfg.n_outer)
        return report
    states = analytic.ground_states(params)
    if states is None:
        report["states"] = None
        report["notice"] = "ground space extends below the j = N/2 sector; no explicit states"
    else:
        report["states"] = [_amplitudes(psi, cfg.n_outer + 1) for psi in states]
    return report


def _pair_concurrence(state) -> float:
    return qinfo.concurrence_x(qinfo.as_x_state(qinfo.pair_rdm(state, 0, 1)))


def cmd_entanglement(cfg: RunConfig):
    n = cfg.n_outer
    report = {"command": "entanglement", "n_outer": n, "coupling": _num(cfg.coupling),
              "field": _num(cfg.field)}
    zero_field = cfg.field == 0 and n >= 2
    report["concurrence_analytic"] = _num(analytic.pair_concurrence_analytic(n)) if zero_field else None
    alpha = {"central_outer_concurrence_optimal": _num(1 / sqrt(n)),
             "outer_pair_concurrence_after_measurement_optimal": _num(2 / n) if n >= 2 else None}
    if n <= cfg.oracle_cap:
        numeric = None
        if n >= 2:
            numeric = _num(_pair_concurrence(qinfo.equal_mixture(_dense_ground(cfg, n))))
        report["concurrence_numeric"] = numeric
        psi = analytic.alpha_state(n)
        rho = qinfo.pair_rdm(psi, oracle.central_site(n), 0)
        alpha["central_outer_concurrence_numeric"] = _num(qinfo.concurrence_x(qinfo.as_x_state(rho)))
        w = qinfo.measure_central(psi, 0).post_state
        alpha["outer_pair_concurrence_after_measurement_numeric"] = (
            _num(_pair_concurrence(w)) if n >= 2 else None)
    else:
        report["concurrence_numeric"] = None
        report["notice"] = _skip_notice(cfg, n)
    report["alpha"] = alpha
    return report


def cmd_correlations(cfg: RunConfig):
    n = cfg.n_outer
    if n < 2:
        raise UsageError("correlations need at least two outer spins", "--n")
    report = {"command": "correlations", "n_outer": n, "coupling": _num(cfg.coupling),
              "field": _num(cfg.field),
              "xx_analytic": _num(analytic.xx_correlation_analytic(n)) if cfg.field == 0 else None}
    if n <= cfg.oracle_cap:
        mix = qinfo.equal_mixture(_dense_ground(cfg, n))
        for axis in "xyz":
            report[f"{axis}{axis}_numeric"] = _num(qinfo.correlation(mix, axis, 0, 1))
    else:
        report.update(xx_numeric=None, yy_numeric=None, zz_numeric=None, notice=_skip_notice(cfg, n))
    return report


def cmd_window(cfg: RunConfig):
    n = cfg.n_outer
    b_low, b_high = analytic.alpha_field_window(n, cfg.coupling)
    scale = abs(cfg.coupling) if cfg.normalize else 1.0
    report = {"command": "window", "n_outer": n, "coupling": _num(cfg.coupling),
              "b_low": _num(b_low / scale), "b_high": _num(b_high / scale)}
    if not cfg.scan:
        return report
    if n > cfg.oracle_cap:
        report["scan"] = None
        report["notice"] = _skip_notice(cfg, n) + "; scan skipped"
        return report
    alpha = analytic.alpha_state(n)
    fields = ([0.99 * b_low] if b_low > 0 else []) + [(b_low + b_high) / 2, 0.99 * b_high, 1.01 * b_high]
    scan = []
    for field in fields:
        ground = _dense_ground(cfg, n, field=field)
        fid = qinfo.subspace_fidelity(ground, alpha)
        scan.append({"field": _num(field / scale), "ground_degeneracy": len(ground),
                     "alpha_fidelity": _num(fid),
                     "alpha_is_ground": bool(len(ground) == 1 and fid > 1 - 1e-9)})
    report["scan"] = scan
    return report


def cmd_sweep(cfg: RunConfig):
    header = ["N", "concurrence_analytic", "concurrence_numeric", "xx_analytic", "window_lo", "window_hi"]
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        numeric = None
        if n <= cfg.oracle_cap:
            numeric = _pair_concurrence(qinfo.equal_mixture(_dense_ground(cfg, n)))
        lo, hi = analytic.alpha_field_window(n, cfg.coupling)
        scale = abs(cfg.coupling) if cfg.normalize else 1.0
        rows.append([n, analytic.pair_concurrence_analytic(n), numeric,
                     analytic.xx_correlation_analytic(n), lo / scale, hi / scale])
    if cfg.format == "csv":
        return _csv(header, [[r[0]] + [_fmt(x) for x in r[1:]] for r in rows])
    return {"command": "sweep", "coupling": _num(cfg.coupling),
            "rows": [dict(zip(header, [r[0]] + [_num(x) for x in r[1:]])) for r in rows]}


def cmd_verify(cfg: RunConfig):
    results = verify.run_all(cfg.oracle_cap)
    passed = all(r.passed for r in results)
    report = {"command": "verify", "oracle_cap": cfg.oracle_cap, "passed": passed,
              "checks": [{"name": r.name, "passed": r.passed, "max_error": _num(r.max_error),
                          **({"detail": r.detail} if r.detail else {})} for r in results]}
    return report, (EXIT_OK if passed else EXIT_VERIFY)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


HANDLERS = {
    "spectrum": cmd_spectrum,
    "ground": cmd_ground,
    "entanglement": cmd_entanglement,
    "correlations": cmd_correlations,
    "window": cmd_window,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    """Execute a validated config, writing the report to ``out`` (stdout by default)."""
    out = sys.stdout if out is None else out
    result = HANDLERS[cfg.command](cfg)
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    if isinstance(result, str):
        out.write(result)
    else:
        out.write(json.dumps(result, indent=2) + "\n")
    return code


def _fail(kind: str, message: str, flag=None) -> None:
    payload = {"error": kind, "message": message}
    if flag:
        payload["flag"] = flag
    sys.stderr.write(json.dumps(payload) + "\n")


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        cfg.validate()
        return run(cfg)
    except UsageError as exc:
        _fail("validation", str(exc), exc.flag)
        return EXIT_INVALID
    except ResourceError as exc:
        _fail("resource", str(exc))
        return EXIT_RESOURCE
    except DomainError as exc:
        _fail("validation", str(exc))
        return EXIT_INVALID
    except SpinStarError as exc:
        _fail(type(exc).__name__, str(exc))
        return EXIT_INVALID
