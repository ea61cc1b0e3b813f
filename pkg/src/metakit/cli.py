"""Command-line interface.

Every command prints one report, JSON by default::

    {"command": ..., "inputs": {...}, "values": [...], "status": ..., "wall_time_ms": ...}

Exit codes: 0 success, 1 a residual exceeded its budget, 2 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict
from typing import List, Optional

from . import char_sums as cs
from . import coefficients as co
from . import eisenstein as ei
from .config import DEFAULT_EVAL, DEFAULT_PRECISION, EvalConfig, PrecisionConfig, load_config
from .errors import AccuracyError, DomainError, MetakitError
from .verify import run_suite

PROVENANCES = ("closed-form", "brute-force", "derived-FE", "quadrature")
EXIT_OK, EXIT_FAIL, EXIT_DOMAIN = 0, 1, 2


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.values: List[dict] = []
        self.failed = False

    def add(self, label: str, value, provenance: str, error_bound: Optional[float] = None):
        if provenance not in PROVENANCES:
            raise ValueError(f"bad provenance {provenance!r}")
        value = complex(value)
        self.values.append(
            {
                "label": label,
                "value": {"re": value.real, "im": value.imag},
                "provenance": provenance,
                "error_bound": None if error_bound is None else float(error_bound),
            }
        )

    def compare(self, label: str, first, second, budget: float, provenance: str):
        """Record ``|first - second|`` against ``budget``; fail if exceeded."""
        disc = abs(complex(first) - complex(second))
        self.add(label, disc, provenance, budget)
        if not disc <= budget:
            self.failed = True


# ---------------------------------------------------------------------------
# serialization

def _num(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def _to_json(obj) -> str:
    # json.dumps uses the shortest round-trip repr; reports fix 17 digits
    tokens = {}

    def walk(o):
        if isinstance(o, float):
            key = f"\x00{len(tokens)}\x00"
            tokens[key] = _num(o)
            return key
        if isinstance(o, dict):
            return {k: walk(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [walk(v) for v in o]
        return o

    text = json.dumps(walk(obj), indent=2)
    for key, num in tokens.items():
        text = text.replace(json.dumps(key), num)
    return text


def _to_csv(values: List[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "re", "im", "provenance", "error_bound"])
    for v in values:
        eb = v["error_bound"]
        w.writerow(
            [v["label"], _num(v["value"]["re"]), _num(v["value"]["im"]), v["provenance"], "" if eb is None else _num(eb)]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands

def _cmd_kronecker(args, rep: Report, prec, cfg):
    rep.add(f"kronecker({args.a}/{args.n})", cs.kronecker(args.a, args.n), "closed-form")


def _cmd_gauss(args, rep: Report, prec, cfg):
    label = f"G({args.n}, {args.c})"
    brute = closed = None
    if args.mode in ("brute", "both"):
        brute = cs.gauss_sum_bruteforce(args.n, args.c)
        rep.add(label + " brute", brute, "brute-force")
    if args.mode in ("closed", "both"):
        closed = cs.gauss_sum_closed(args.n, args.c)
        rep.add(label + " closed", closed, "closed-form")
    if args.mode == "both":
        rep.compare(label + " discrepancy", brute, closed, args.tol, "brute-force")


def _kloosterman_closed(kappa: int, n: int, fourc: int) -> complex:
    if fourc % 4:
        raise DomainError("the modulus must be divisible by 4")
    if kappa == -1:
        return cs.kloosterman_factored(n, fourc // 4)
    k = fourc.bit_length() - 3
    if fourc == 1 << (k + 2) and kappa % 2:
        c = (-kappa) % fourc
        return cs.kloosterman_2power_closed(c, n * c, k)
    raise DomainError("a closed form is available for kappa = -1, or odd kappa with a 2-power modulus")


def _cmd_kloosterman(args, rep: Report, prec, cfg):
    label = f"K_{args.kappa}({args.n}; {args.fourc})"
    brute = closed = None
    if args.mode in ("brute", "both"):
        brute = cs.kloosterman_bruteforce(args.kappa, args.n, args.fourc)
        rep.add(label + " brute", brute, "brute-force")
    if args.mode in ("closed", "both"):
        closed = _kloosterman_closed(args.kappa, args.n, args.fourc)
        rep.add(label + " closed", closed, "closed-form")
    if args.mode == "both":
        rep.compare(label + " discrepancy", brute, closed, args.tol, "brute-force")


def _cmd_coeff(args, rep: Report, prec: PrecisionConfig, cfg: EvalConfig):
    nu = complex(args.nu_re, args.nu_im)
    fam, eps = args.family, args.eps
    ns = range(args.n_min, args.n_max + 1)
    if args.source == "both" and fam in ("c", "d"):
        raise DomainError(f"family {fam} has a single source; use --source closed")
    src = {"closed": "closed", "brute": "bruteforce", "derived": "derived"}.get(args.source, "closed")
    if args.source == "brute" and fam in ("c", "d"):
        raise DomainError(f"family {fam} has no brute-force series")
    tab = co.build_coefficient_table(eps, nu, ns, fam, src, prec, cfg.a_truncation, cfg.b_truncation)
    rep.add(f"{fam}(inf)", tab.inf_coeff, "closed-form")
    for n in ns:
        rep.add(f"{fam}({n})", tab[n], tab.provenance[n], tab.errors[n] or None)
    if args.source != "both":
        return
    other = co.build_coefficient_table(eps, nu, ns, fam, "bruteforce", prec, cfg.a_truncation, cfg.b_truncation)
    for n in ns:
        rep.add(f"{fam}({n}) brute", other[n], "brute-force", other.errors[n])
        rel = abs(tab[n]) if n == 0 else 0.0
        budget = max(1e-4 * max(rel, 1.0), other.errors[n])
        rep.compare(f"{fam}({n}) discrepancy", tab[n], other[n], budget, "brute-force")


def _cmd_verify(args, rep: Report, prec, cfg):
    for chk in run_suite(args.suite, cfg, prec):
        rep.compare(chk.label, chk.error, 0.0, chk.budget, chk.provenance)


def _cmd_eisenstein(args, rep: Report, prec: PrecisionConfig, cfg: EvalConfig):
    z = complex(args.z_re, args.z_im)
    s = complex(args.s_re, args.s_im)
    label = f"E_{args.cusp}"
    est_d = est_f = None
    if args.route in ("direct", "both"):
        fn = ei.eisenstein_inf_direct_est if args.cusp == "inf" else ei.eisenstein_zero_direct_est
        est_d = fn(z, s, args.ell, cfg)
        rep.add(label + " direct", est_d.value, "quadrature", est_d.error)
    if args.route in ("fourier", "both"):
        if args.cusp == "inf":
            est_f = ei.eisenstein_inf_fourier_est(z, s, args.ell, cfg, prec)
        else:
            b_src = args.b_source
            if b_src == "auto":
                b_src = "bruteforce" if (2 * s - 1).real > 1.2 else "derived"
            est_f = ei.eisenstein_zero_fourier_est(z, s, args.ell, b_src, cfg, prec)
        rep.add(label + " fourier", est_f.value, est_f.detail.get("provenance", "closed-form"), est_f.error)
    if args.route == "both":
        rep.compare(label + " discrepancy", est_d.value, est_f.value, est_d.error + est_f.error, "quadrature")


COMMANDS = {
    "kronecker": _cmd_kronecker,
    "gauss": _cmd_gauss,
    "kloosterman": _cmd_kloosterman,
    "coeff": _cmd_coeff,
    "verify": _cmd_verify,
    "eisenstein": _cmd_eisenstein,
}

CONFIG_KEYS = [f for f in asdict(DEFAULT_PRECISION)] + [f for f in asdict(DEFAULT_EVAL)]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--config", help="key=value config file (default: $METAKIT_CONFIG)")
    for key in dict.fromkeys(CONFIG_KEYS):
        common.add_argument("--" + key.replace("_", "-"), dest="cfg_" + key, default=None, metavar="VALUE")

    p = argparse.ArgumentParser(prog="metakit", description="Metaplectic Eisenstein series toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("kronecker", parents=[common], help="Kronecker symbol (a/n)")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--n", type=int, required=True)

    q = sub.add_parser("gauss", parents=[common], help="quadratic Gauss sum G(n, c), c odd")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--c", type=int, required=True)
    q.add_argument("--mode", choices=("brute", "closed", "both"), default="both")
    q.add_argument("--tol", type=float, default=1e-8)

    q = sub.add_parser("kloosterman", parents=[common], help="twisted Kloosterman sum K_kappa(n; 4c)")
    q.add_argument("--kappa", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--fourc", type=int, required=True)
    q.add_argument("--mode", choices=("brute", "closed", "both"), default="brute")
    q.add_argument("--tol", type=float, default=1e-6)

    q = sub.add_parser("coeff", parents=[common], help="Fourier coefficient tables")
    q.add_argument("--family", choices=("a", "b", "c", "d"), required=True)
    q.add_argument("--eps", type=int, choices=(1, -1), default=1)
    q.add_argument("--nu-re", type=float, required=True)
    q.add_argument("--nu-im", type=float, default=0.0)
    q.add_argument("--n-min", type=int, default=-8)
    q.add_argument("--n-max", type=int, default=8)
    q.add_argument("--source", choices=("closed", "brute", "derived", "both"), default="closed")

    q = sub.add_parser("verify", parents=[common], help="run a verification suite")
    q.add_argument("--suite", choices=("group", "sums", "gamma", "coeffs", "fe-dist", "fe-classical", "all"), default="all")

    q = sub.add_parser("eisenstein", parents=[common], help="evaluate an Eisenstein series")
    q.add_argument("--cusp", choices=("inf", "zero"), default="inf")
    q.add_argument("--z-re", type=float, default=0.0)
    q.add_argument("--z-im", type=float, default=1.0)
    q.add_argument("--s-re", type=float, required=True)
    q.add_argument("--s-im", type=float, default=0.0)
    q.add_argument("--ell", type=int, default=0)
    q.add_argument("--route", choices=("direct", "fourier", "both"), default="both")
    q.add_argument("--b-source", choices=("auto", "bruteforce", "derived"), default="auto")
    return p


def run(argv: Optional[List[str]] = None):
    """Parse ``argv`` and return ``(exit_code, output_text, report)``."""
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in sorted(vars(args).items()) if not k.startswith("cfg_") and k not in ("format", "config", "command")}
    overrides = {k[4:]: v for k, v in vars(args).items() if k.startswith("cfg_") and v is not None}
    rep = Report(args.command, inputs)
    t0 = time.perf_counter()
    status, code, error = "pass", EXIT_OK, None
    try:
        prec, cfg = load_config(args.config, overrides)
        inputs["config"] = {**asdict(prec), **asdict(cfg)}
        COMMANDS[args.command](args, rep, prec, cfg)
        if rep.failed:
            status, code = "fail", EXIT_FAIL
    except AccuracyError as exc:
        status, code, error = "fail", EXIT_FAIL, str(exc)
    except (MetakitError, ValueError, ArithmeticError, OSError) as exc:
        status, code, error = "error", EXIT_DOMAIN, str(exc)
    inputs.setdefault("config", None)
    inputs["config_defaults"] = {**asdict(DEFAULT_PRECISION), **asdict(DEFAULT_EVAL)}
    report = {
        "command": args.command,
        "inputs": inputs,
        "values": rep.values,
        "status": status,
        "wall_time_ms": int(round(1000 * (time.perf_counter() - t0))),
    }
    if error is not None:
        report["error"] = error
    if args.format == "csv":
        return code, _to_csv(rep.values), report
    return code, _to_json(report), report


def main(argv: Optional[List[str]] = None) -> int:
    code, text, report = run(argv)
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    if "error" in report:
        sys.stderr.write(f"metakit {report['command']}: {report['status']}: {report['error']}\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
