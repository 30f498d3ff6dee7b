"""Command-line surface.

    tlft specfn      --fn barnes_g --z 2.5+1i
    tlft coeff       --case zero --n 2 --oracle mc --samples 1e6 --seed 42
    tlft correlator  --case one --alpha -0.3 --mu 1 --c 0,0.2
    tlft zeromode    --case zero --mu 2.0 --schedule default
    tlft pair        --op two_point --center 0.3,-0.3 --radius 0.4 --eps 0.02
    tlft verify      --suite theorems --mu 1.0

Reports go to stdout (or --out) as JSON (default) or CSV.  Exit status is
0 on success, 1 when an assertion fails, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import coulomb, correlator, specfun, zeromode
from .coulomb import SQRT2, CorrelatorCase, SphereOracleSpec
from .errors import TlftError

SCHEMA = 1
DEFAULT_SEED = 20240611
PROVENANCE = ("closed-form", "quadrature", "extrapolation", "oracle")
COMMANDS = ("specfn", "coeff", "correlator", "zeromode", "pair", "verify")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# config and report

@dataclass(frozen=True)
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED
    output: str = "json"
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.output not in ("json", "csv"):
            raise UsageError("output is json or csv")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise UsageError("seed must be a 64-bit unsigned integer")
        allowed = _PARAM_KEYS[self.command]
        unknown = sorted(set(self.params) - allowed)
        if unknown:
            raise UsageError(f"unknown keys for {self.command}: {', '.join(unknown)}")


def _cjson(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _plain(v):
    if isinstance(v, (complex, np.complexfloating)):
        return _cjson(v)
    if isinstance(v, np.generic):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


class Report:
    def __init__(self, config: RunConfig):
        self.config = config
        self.rows = []
        self.assertions = []
        self.wall_time = None

    def add(self, name, value, provenance, error=None, **params):
        if provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {provenance!r}")
        self.rows.append({"name": name, "params": {k: _plain(v) for k, v in params.items()},
                          "value": complex(value), "provenance": provenance,
                          "error": None if error is None else float(error)})

    def check(self, name, passed, **detail):
        self.assertions.append({"name": name, "passed": bool(passed),
                                "detail": {k: _plain(v) for k, v in detail.items()}})
        return bool(passed)

    @property
    def ok(self):
        return all(a["passed"] for a in self.assertions)

    def as_dict(self):
        cfg = self.config
        out = {
            "schema": SCHEMA,
            "command": cfg.command,
            "inputs": {"params": {k: _plain(v) for k, v in cfg.params.items()},
                       "seed": cfg.seed, "tolerances": dict(cfg.tolerances)},
            "values": [dict(r, value=_cjson(r["value"])) for r in self.rows],
            "assertions": self.assertions,
            "passed": self.ok,
        }
        if self.wall_time is not None:
            out["wall_time_s"] = self.wall_time
        return out


def emit(report: Report, fmt: str = "json") -> bytes:
    """Serialize a report; field order is fixed so output is reproducible."""
    if fmt == "json":
        return (json.dumps(report.as_dict(), indent=2) + "\n").encode()
    if fmt != "csv":
        raise UsageError("format is json or csv")
    keys = []
    for r in report.rows:
        for k in r["params"]:
            if k not in keys:
                keys.append(k)
    header = ["name"]
    for k in keys:
        header += [f"{k}_re", f"{k}_im"] if _is_complex_param(report, k) else [k]
    header += ["value_re", "value_im", "provenance", "error"]
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in report.rows:
        line = [r["name"]]
        for k in keys:
            v = r["params"].get(k, "")
            if _is_complex_param(report, k):
                line += [v["re"], v["im"]] if isinstance(v, dict) else ["", ""]
            else:
                line.append(json.dumps(v) if isinstance(v, list) else v)
        z = r["value"]
        line += [repr(z.real), repr(z.imag), r["provenance"], "" if r["error"] is None else repr(r["error"])]
        wr.writerow(line)
    return buf.getvalue().encode()


def _is_complex_param(report, key):
    return any(isinstance(r["params"].get(key), dict) for r in report.rows)


def read_report(data: bytes) -> dict:
    """Inverse of the JSON emitter (complex values come back as complex)."""
    d = json.loads(data)
    for r in d["values"]:
        r["value"] = complex(r["value"]["re"], r["value"]["im"])
    return d


# ---------------------------------------------------------------------------
# parsing helpers

def parse_complex(text) -> complex:
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a complex number") from None


def parse_list(text, conv=float):
    if text is None:
        return []
    try:
        return [conv(t) for t in str(text).split(",") if t != ""]
    except (ValueError, UsageError):
        raise UsageError(f"cannot read list {text!r}") from None


def load_panel() -> dict:
    """The checked-in verification panel."""
    with resources.files("tlft").joinpath("data/panel.json").open() as fh:
        return json.load(fh)


def panel_cases(panel: dict | None = None) -> dict:
    p = panel or load_panel()
    one = [CorrelatorCase.one(complex(*a)) for a in p["one_point"]]
    two = [CorrelatorCase.two(complex(*a1), complex(*a2)) for a1, a2 in p["two_point"]]
    deg = CorrelatorCase.two(*(complex(*a) for a in p["two_point_degenerate"]))
    cft = CorrelatorCase.two_cft(p["two_point_cft"]["p1"], p["two_point_cft"]["p2"])
    three = CorrelatorCase.three(*(complex(*a) / SQRT2 for a in p["three_point_sqrt2_alpha"]))
    return {"zero": CorrelatorCase.zero(), "one": one, "two": two, "two_degenerate": deg,
            "two_cft": cft, "three": three}


def build_case(args) -> CorrelatorCase:
    kind = args.case
    alphas = [parse_complex(a) for a in (args.alpha or [])]
    try:
        if kind == "cft":
            if args.p1 is None or args.p2 is None:
                raise UsageError("--case cft needs --p1 and --p2")
            return CorrelatorCase.two_cft(args.p1, args.p2)
        return CorrelatorCase(kind, tuple(alphas))
    except TlftError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands

def _specfn(args, rep):
    fn = args.fn
    z = parse_complex(args.z) if args.z is not None else None
    need = {"hyp2f1": ("a", "b", "c", "z"), "gamma_power": ("z", "w")}.get(fn, ("z",))
    for k in need:
        if getattr(args, k) is None:
            raise UsageError(f"--fn {fn} needs --{k}")
    if fn == "hyp2f1":
        a, b, c = (parse_complex(v) for v in (args.a, args.b, args.c))
        val = specfun.hyp2f1(a, b, c, z)
        rep.add(fn, val, "closed-form", a=a, b=b, c=c, z=z)
    elif fn == "gamma_power":
        w = parse_complex(args.w)
        rep.add(fn, specfun.gamma_power(z, w), "closed-form", z=z, w=w)
    else:
        rep.add(fn, getattr(specfun, fn)(z), "closed-form", z=z)


def _coeff(args, rep):
    op = args.op
    if op == "green_sphere":
        x = parse_list(args.x)
        y = parse_list(args.y)
        rep.add(op, coulomb.green_sphere(np.array(x), np.array(y)), "closed-form", x=x, y=y)
        return
    if op == "disk_moment":
        a, b = parse_complex(args.a), parse_complex(args.b)
        rep.add(op, coulomb.disk_moment(a, b), "closed-form", alpha=a, beta=b)
        return
    if op == "gamma_sum_identity":
        a, b = parse_complex(args.a), parse_complex(args.b)
        lhs, rhs = coulomb.gamma_sum_identity(args.n, a, b)
        rep.add("lhs", lhs, "closed-form", n=args.n, a=a, b=b)
        rep.add("rhs", rhs, "closed-form", n=args.n, a=a, b=b)
        tol = rep.config.tolerances.get("rtol", 1e-10)
        rep.check("gamma_sum_identity", abs(lhs - rhs) <= tol * max(abs(lhs), 1e-300),
                  abs_diff=abs(lhs - rhs), rtol=tol)
        return
    case = build_case(args)
    exact = coulomb.coeff(case, args.n)
    rep.add("coeff", exact, "closed-form", case=case.label(), n=args.n)
    if args.oracle != "none":
        method = "mc" if args.oracle == "mc" else "grid"
        spec = SphereOracleSpec(method=method, samples=int(float(args.samples)),
                                seed=rep.config.seed, grid=tuple(args.grid))
        est, err = coulomb.oracle_coeff(case, args.n, spec)
        rep.add("oracle_coeff", est, "oracle", err, case=case.label(), n=args.n, method=method)
        tol = max(3 * err, 0.01 * abs(exact))
        rep.check("coeff_vs_oracle", abs(est - exact) <= tol, abs_diff=abs(est - exact), allowed=tol)


def _correlator(args, rep):
    case = build_case(args)
    op = args.op
    if op == "f_eval":
        z = parse_complex(args.z)
        rep.add(op, correlator.f_eval(case, z), "closed-form", case=case.label(), z=z)
        return
    if op == "integrand_bound":
        x0 = correlator.default_line(case) if args.x0 is None else args.x0
        for y in parse_list(args.y):
            rep.add(op, correlator.integrand_bound(case, x0, y), "closed-form",
                    case=case.label(), x0=x0, y=y)
        return
    mus = parse_list(args.mu)
    cs = parse_list(args.c, parse_complex) if op == "series" else parse_list(args.c)
    tol = rep.config.tolerances.get("rtol", 1e-7)
    for mu in mus:
        for c in cs:
            s = co = None
            if op in ("series", "compare"):
                s = correlator.series_correlator(case, mu, c)
                rep.add("series", s, "closed-form", case=case.label(), mu=mu, c=c)
            if op in ("contour", "compare"):
                co = correlator.contour_correlator(case, mu, c)
                rep.add("contour", co, "quadrature", case=case.label(), mu=mu, c=c)
            if op == "compare":
                rel = abs(s - co) / abs(s)
                rep.check(f"series_vs_contour mu={mu} c={c}", rel < tol, rel_diff=rel, rtol=tol)


def _schedule(args):
    if args.schedule == "default":
        return zeromode.RegularizationSchedule.default()
    eps = parse_list(args.schedule)
    try:
        return zeromode.RegularizationSchedule(tuple(eps))
    except TlftError as exc:
        raise UsageError(str(exc)) from None


def _zeromode(args, rep):
    op = args.op
    if op == "half_gaussian_moment":
        w = parse_complex(args.w)
        rep.add(op, zeromode.half_gaussian_moment(w), "closed-form", w=w)
        return
    if op == "ac_zero_point":
        for mu in parse_list(args.mu):
            rep.add(op, zeromode.ac_zero_point(args.b, mu, args.sign), "closed-form",
                    b=args.b, mu=mu, branch="+i" if args.sign > 0 else "-i",
                    power_branch="principal log, arg = pi")
        return
    case = build_case(args)
    for mu in parse_list(args.mu):
        if op == "regularized":
            for e in parse_list(args.eps):
                rep.add(op, zeromode.regularized_correlator(case, mu, e), "quadrature",
                        case=case.label(), mu=mu, eps=e)
        elif op == "hankel":
            for e in parse_list(args.eps):
                rep.add(op, zeromode.hankel_correlator(case, mu, e), "quadrature",
                        case=case.label(), mu=mu, eps=e)
        elif op == "vertical_segment":
            rep.add(op, zeromode.vertical_segment(case, mu), "closed-form", case=case.label(), mu=mu)
            q = zeromode.vertical_segment_quadrature(case, mu)
            rep.add("vertical_segment_quadrature", q, "quadrature", case=case.label(), mu=mu)
        else:
            sched = _schedule(args)
            pres = zeromode.ContourPrescription(args.prescription)
            lim, spread = zeromode.renormalized_limit(case, mu, sched, pres, return_spread=True)
            exact = zeromode.closed_form_limit(case, mu)
            if pres.kind == "hankel":
                exact = zeromode.hankel_factor(case.w) * exact
            rep.add("renormalized_limit", lim, "extrapolation", spread, case=case.label(), mu=mu,
                    prescription=pres.kind)
            rep.add("closed_form_limit", exact, "closed-form", case=case.label(), mu=mu,
                    prescription=pres.kind)
            tol = rep.config.tolerances.get("rtol", 1e-4 if case.kind == "zero" else 1e-3)
            diff = abs(lim - exact)
            scale = abs(exact) if exact != 0 else 1.0
            rep.check(f"limit mu={mu}", diff <= tol * scale, abs_diff=diff, rtol=tol)


def _bump(args, dim):
    center = parse_list(args.center)
    if len(center) != dim:
        raise UsageError(f"--center needs {dim} coordinates")
    try:
        return zeromode.TestFunction.bump(tuple(center), args.radius, args.scale)
    except TlftError as exc:
        raise UsageError(str(exc)) from None


def _pair(args, rep):
    if args.op == "heaviside":
        phi = _bump(args, 1)
        for e in parse_list(args.eps):
            rep.add("heaviside_pairing", zeromode.heaviside_pairing(phi, e), "quadrature", eps=e)
        rep.add("heaviside_limit", zeromode.heaviside_limit(phi), "quadrature")
        rep.add("fourier_abs_integral", zeromode.fourier_abs_integral(phi), "quadrature")
        return
    phi = _bump(args, 2)
    target = 0.0 if args.hankel else zeromode.delta_target(phi)
    rep.add("delta_target", target, "quadrature")
    for e in parse_list(args.eps):
        v = zeromode.two_point_pairing(phi, e, args.mu, hankel=args.hankel)
        rep.add("two_point_pairing", v, "quadrature", eps=e, mu=args.mu, hankel=args.hankel)


def _verify(args, rep):
    from . import verification
    suite = getattr(verification, f"suite_{args.suite}")
    suite(rep, mu=args.mu, tolerances=rep.config.tolerances)


HANDLERS = {"specfn": _specfn, "coeff": _coeff, "correlator": _correlator,
            "zeromode": _zeromode, "pair": _pair, "verify": _verify}

# public operation -> an invocation that reaches it
REGISTRY = {
    "specfun.log_gamma": ["specfn", "--fn", "log_gamma", "--z", "3.7+2.1i"],
    "specfun.gamma_power": ["specfn", "--fn", "gamma_power", "--z", "0.5", "--w", "2"],
    "specfun.digamma": ["specfn", "--fn", "digamma", "--z", "2"],
    "specfun.log_barnes_g": ["specfn", "--fn", "log_barnes_g", "--z", "6"],
    "specfun.barnes_g": ["specfn", "--fn", "barnes_g", "--z", "4"],
    "specfun.hyp2f1": ["specfn", "--fn", "hyp2f1", "--a", "1", "--b", "-1", "--c", "3", "--z", "0.5"],
    "specfun.gamma": ["specfn", "--fn", "gamma", "--z", "0.5"],
    "specfun.rgamma": ["specfn", "--fn", "rgamma", "--z", "-2"],
    "specfun.sinpi": ["specfn", "--fn", "sinpi", "--z", "0.5"],
    "coulomb.green_sphere": ["coeff", "--op", "green_sphere", "--x", "0,0,1", "--y", "0,0,-1"],
    "coulomb.coeff": ["coeff", "--case", "zero", "--n", "2"],
    "coulomb.oracle_coeff": ["coeff", "--case", "zero", "--n", "1", "--oracle", "mc",
                             "--samples", "2000"],
    "coulomb.disk_moment": ["coeff", "--op", "disk_moment", "--a", "2", "--b", "3"],
    "coulomb.gamma_sum_identity": ["coeff", "--op", "gamma_sum_identity", "--n", "3",
                                   "--a", "1.3+0.4i", "--b", "0.7"],
    "correlator.f_eval": ["correlator", "--op", "f_eval", "--case", "zero", "--z", "1"],
    "correlator.series_correlator": ["correlator", "--op", "series", "--case", "zero", "--mu", "1",
                                     "--c", "0"],
    "correlator.contour_correlator": ["correlator", "--op", "contour", "--case", "zero", "--mu", "1",
                                      "--c", "0"],
    "correlator.integrand_bound": ["correlator", "--op", "integrand_bound", "--case", "zero",
                                   "--y", "0,10"],
    "zeromode.regularized_correlator": ["zeromode", "--op", "regularized", "--case", "zero",
                                        "--mu", "1", "--eps", "0.05"],
    "zeromode.closed_form_limit": ["zeromode", "--case", "zero", "--mu", "2.0"],
    "zeromode.renormalized_limit": ["zeromode", "--case", "zero", "--mu", "2.0",
                                    "--schedule", "default"],
    "zeromode.hankel_correlator": ["zeromode", "--op", "hankel", "--case", "zero", "--mu", "1",
                                   "--eps", "0.02"],
    "zeromode.vertical_segment": ["zeromode", "--op", "vertical_segment", "--case", "one",
                                  "--alpha", "-0.3", "--mu", "0.2"],
    "zeromode.vertical_segment_quadrature": ["zeromode", "--op", "vertical_segment", "--case", "one",
                                             "--alpha", "-0.3", "--mu", "0.2"],
    "zeromode.half_gaussian_moment": ["zeromode", "--op", "half_gaussian_moment", "--w", "2"],
    "zeromode.heaviside_pairing": ["pair", "--op", "heaviside", "--center", "0", "--radius", "0.5",
                                   "--eps", "0.05"],
    "zeromode.heaviside_limit": ["pair", "--op", "heaviside", "--center", "0", "--radius", "0.5",
                                 "--eps", "0.05"],
    "zeromode.fourier_abs_integral": ["pair", "--op", "heaviside", "--center", "0", "--radius",
                                      "0.5", "--eps", "0.05"],
    "zeromode.two_point_pairing": ["pair", "--center", "0.3,0.4", "--radius", "0.1", "--eps", "0.1",
                                   "--mu", "1"],
    "zeromode.delta_target": ["pair", "--center", "0.3,0.4", "--radius", "0.1", "--eps", "0.1",
                              "--mu", "1"],
    "zeromode.ac_zero_point": ["zeromode", "--op", "ac_zero_point", "--b", "0.6", "--mu", "1"],
}


# ---------------------------------------------------------------------------
# argument parsing

def _add_case(p):
    p.add_argument("--case", choices=["zero", "one", "two", "three", "cft"], default="zero")
    p.add_argument("--alpha", action="append", help="insertion charge (repeat for two/three)")
    p.add_argument("--p1", type=float)
    p.add_argument("--p2", type=float)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tlft", description="Timelike Liouville correlators at b = 1/sqrt2.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--rtol", type=float, help="override the assertion tolerance")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("specfn", parents=[common], help="special functions")
    p.add_argument("--fn", required=True, choices=["log_gamma", "gamma_power", "digamma", "log_barnes_g",
                                                   "barnes_g", "hyp2f1", "gamma", "rgamma", "sinpi"])
    for k in ("z", "w", "a", "b", "c"):
        p.add_argument(f"--{k}")

    p = sub.add_parser("coeff", parents=[common], help="Coulomb-gas coefficients and oracles")
    p.add_argument("--op", choices=["coeff", "green_sphere", "disk_moment", "gamma_sum_identity"],
                   default="coeff")
    _add_case(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--oracle", choices=["none", "mc", "grid"], default="none")
    p.add_argument("--samples", default="200000")
    p.add_argument("--grid", type=int, nargs=2, default=[64, 64], metavar=("NR", "NT"))
    for k in ("x", "y", "a", "b"):
        p.add_argument(f"--{k}")

    p = sub.add_parser("correlator", parents=[common], help="fixed zero-mode correlator")
    p.add_argument("--op", choices=["compare", "series", "contour", "f_eval", "integrand_bound"],
                   default="compare")
    _add_case(p)
    p.add_argument("--mu", default="1.0", help="comma-separated list")
    p.add_argument("--c", default="0.0", help="comma-separated list")
    p.add_argument("--z")
    p.add_argument("--x0", type=float)
    p.add_argument("--y", default="0")

    p = sub.add_parser("zeromode", parents=[common], help="zero-mode integration")
    p.add_argument("--op", choices=["limit", "regularized", "hankel", "vertical_segment",
                                    "half_gaussian_moment", "ac_zero_point"], default="limit")
    _add_case(p)
    p.add_argument("--mu", default="1.0", help="comma-separated list")
    p.add_argument("--eps", default="0.05", help="comma-separated list")
    p.add_argument("--schedule", default="default", help="'default' or a descending eps list")
    p.add_argument("--prescription", choices=["real", "hankel"], default="real")
    p.add_argument("--w")
    p.add_argument("--b", type=float, default=1 / SQRT2)
    p.add_argument("--sign", type=int, choices=[1, -1], default=1)

    p = sub.add_parser("pair", parents=[common], help="distributional pairings")
    p.add_argument("--op", choices=["two_point", "heaviside"], default="two_point")
    p.add_argument("--center", required=True)
    p.add_argument("--radius", type=float, default=0.4)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--eps", default="0.02")
    p.add_argument("--mu", type=float, default=1e-8)
    p.add_argument("--hankel", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=["theorems", "identities", "specfun", "distributions"],
                   default="theorems")
    p.add_argument("--mu", type=float, help="default: 1.0, or the panel value for distributions")
    return ap


_COMMON = {"format", "out", "seed", "rtol", "timing", "command"}
_PARAM_KEYS = {name: set() for name in COMMANDS}


def _init_keys():
    for action in build_parser()._subparsers._group_actions:
        for name, sp in action.choices.items():
            _PARAM_KEYS[name] = {a.dest for a in sp._actions if a.dest != "help"} - _COMMON


_init_keys()


def run(argv=None, stdout=None) -> int:
    """Parse, execute, emit.  Returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout.buffer
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    params = {k: v for k, v in vars(args).items() if k not in _COMMON and v is not None}
    tol = {} if args.rtol is None else {"rtol": args.rtol}
    t0 = time.perf_counter()
    try:
        cfg = RunConfig(args.command, params, args.seed, args.format, tol)
        rep = Report(cfg)
        HANDLERS[args.command](args, rep)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tlft: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:  # domain errors from the library: bad input
        print(f"tlft: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except TlftError as exc:
        print(f"tlft: failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.timing:
        rep.wall_time = round(time.perf_counter() - t0, 3)
    data = emit(rep, args.format)
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            print(f"tlft: error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 2
    else:
        stdout.write(data)
        stdout.flush()
    return 0 if rep.ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
