"""``cue-lab`` command line: each subcommand emits a verification table and exits nonzero on failure.

Exit codes: 0 all asserted equalities hold, 1 some equality failed,
2 usage error, 3 an enumeration or resource bound was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import __version__
from .contingency import count_matrices, count_via_kostka, count_via_sn_average
from .cue import Kind, MomentSpec, mc_moment_estimate, moment_exact, range_verdict, Verdict
from .errors import CueLabError, SizeLimitError
from .ffield import polynomiality_check
from .lfunc import char_moment, odd_primitive_characters, parse_modulus, solution_count, theta_checks
from .partitions import Partition, enumerate_partitions

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3


class UsageError(CueLabError):
    pass


@dataclass
class RunConfig:
    """Everything a run depends on; equal configs give byte-identical output."""

    command: str
    params: dict[str, Any] = field(default_factory=dict)
    fmt: str = "csv"
    out: str | None = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        params = {k: v for k, v in vars(ns).items() if k not in ("command", "format", "out", "handler")}
        return cls(ns.command, params, ns.format, ns.out)


@dataclass
class Table:
    columns: list[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    failures: int = 0

    def add(self, ok: bool = True, **row):
        self.rows.append(row)
        if not ok:
            self.failures += 1


# --- argument parsing ---------------------------------------------------------------

def parse_int_range(text: str) -> list[int]:
    """"4..6" -> [4, 5, 6]; "5" -> [5]; "1,3" -> [1, 3]; "6..4" -> []."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"cannot read integer range {text!r}") from None


def parse_int_list(text: str) -> list[int]:
    return parse_int_range(text)


def parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError:
        raise UsageError(f"cannot read partition {text!r}") from None


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.strip("()").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot read multiplicity vector {text!r}") from None


# --- serialization ------------------------------------------------------------------

def _cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, complex):
        return f"{v.real!r}{v.imag:+.17g}j"
    if isinstance(v, (list, tuple)) and not isinstance(v, Partition):
        return "[" + ";".join(_cell(x) for x in v) + "]"
    return str(v)


def _json_cell(v: Any):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, float):
        return v
    return _cell(v)


def _sort_key(v: Any):
    if isinstance(v, (int, Fraction, float)) and not isinstance(v, bool):
        return (0, v, "")
    if isinstance(v, Partition):
        return (1, 0, tuple(v))
    return (2, 0, _cell(v))


def render(table: Table, fmt: str) -> str:
    rows = sorted(table.rows, key=lambda r: tuple(_sort_key(r.get(c)) for c in table.columns))
    buf = io.StringIO()
    if fmt == "json":
        for r in rows:
            buf.write(json.dumps({c: _json_cell(r.get(c)) for c in table.columns}) + "\n")
    else:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in table.columns])
    return buf.getvalue()


# --- commands -----------------------------------------------------------------------

def _moment_suite(cfg: RunConfig, kind: Kind) -> Table:
    n_max = cfg.params["n_max"]
    Ns = parse_int_range(cfg.params["N"] or f"1..{max(n_max, 1)}")
    t = Table(["n", "mu", "mu_tilde", "N", "exact", "target", "verdict", "match"])
    for n in range(1, n_max + 1):
        parts = enumerate_partitions(n)
        for mu in parts:
            for mu_t in parts:
                target = count_matrices(mu, mu_t)
                for N in Ns:
                    if N < 1:
                        raise UsageError("N must be positive")
                    spec = MomentSpec(mu.multiplicity_vector(), mu_t.multiplicity_vector(), N, kind)
                    exact = moment_exact(spec)
                    verdict = range_verdict(spec)
                    match = exact == target
                    t.add(
                        ok=match or verdict is Verdict.OUT_OF_RANGE,
                        n=n, mu=mu, mu_tilde=mu_t, N=N, exact=exact, target=target,
                        verdict=verdict.value, match=match,
                    )
    return t


def cmd_verify_dg(cfg: RunConfig) -> Table:
    return _moment_suite(cfg, Kind.SECULAR)


def cmd_verify_trsym(cfg: RunConfig) -> Table:
    return _moment_suite(cfg, Kind.SYMMETRIC_POWER)


def cmd_verify_kostka(cfg: RunConfig) -> Table:
    t = Table(["n", "mu", "mu_tilde", "backtrack", "kostka", "sn_average", "symmetric", "verdict"])
    for n in range(0, cfg.params["n_max"] + 1):
        parts = enumerate_partitions(n)
        for mu in parts:
            for mu_t in parts:
                a = count_matrices(mu, mu_t)
                b = count_via_kostka(mu, mu_t)
                c = int(count_via_sn_average(mu, mu_t))
                sym = a == count_matrices(mu_t, mu)
                ok = a == b == c and sym
                t.add(ok, n=n, mu=mu, mu_tilde=mu_t, backtrack=a, kostka=b, sn_average=c,
                      symmetric=sym, verdict="pass" if ok else "fail")
    return t


def cmd_ff_scan(cfg: RunConfig) -> Table:
    p = cfg.params
    n = p["n"]
    primes = parse_int_list(p["primes"])
    if len(primes) < 2:
        raise UsageError("ff-scan needs at least two values of q")
    if p["mu"]:
        mu = parse_partition(p["mu"])
        pairs = [(mu, parse_partition(p["mu_tilde"]) if p["mu_tilde"] else mu)]
        n = mu.n if n is None else n
    else:
        if n is None:
            raise UsageError("give --n or --mu")
        parts = enumerate_partitions(n)
        pairs = [(a, b) for a in parts for b in parts]
    t = Table(["mu", "mu_tilde", "n", "primes", "values", "coefficients", "degree", "leading",
               "target", "holdout_q", "predicted", "holdout_value", "verdict"])
    for mu, mu_t in pairs:
        if mu.n != n or mu_t.n != n:
            raise UsageError(f"{mu} and {mu_t} must be partitions of n = {n}")
        try:
            fit = polynomiality_check(mu, mu_t, n, primes, p["holdout"])
        except CueLabError as exc:
            if isinstance(exc, SizeLimitError):
                raise
            raise UsageError(str(exc)) from None
        t.add(fit.verdict, mu=mu, mu_tilde=mu_t, n=n, primes=sorted(fit.values),
              values=[fit.values[q] for q in sorted(fit.values)], coefficients=list(fit.coefficients),
              degree=fit.degree, leading=fit.leading, target=fit.target, holdout_q=fit.holdout_q,
              predicted=fit.predicted, holdout_value=fit.holdout_value,
              verdict="pass" if fit.verdict else "fail")
    return t


def _modulus(cfg: RunConfig):
    if not cfg.params["Q"]:
        raise UsageError("--Q is required, e.g. --Q 1,0,1@q=2")
    try:
        Q = parse_modulus(cfg.params["Q"])
    except (ValueError, CueLabError) as exc:
        if isinstance(exc, SizeLimitError):
            raise
        raise UsageError(str(exc)) from None
    if not Q.is_monic:
        raise UsageError(f"modulus {Q} must be monic")
    return Q


def cmd_char_moments(cfg: RunConfig) -> Table:
    p = cfg.params
    Q = _modulus(cfg)
    q = Q.field.q
    twists = ["none", "moebius"] if p["twist"] == "both" else [p["twist"]]
    t = Table(["q", "Q", "deg_Q", "n", "k", "twist", "moment", "solution_count", "target",
               "ratio", "in_range", "verdict"])
    for n in parse_int_list(p["n"]):
        for k in parse_int_list(p["k"]):
            target = count_matrices(Partition([n] * k), Partition([n] * k))
            for twist in twists:
                m = char_moment(Q, n, k, twist)
                in_range = n * k <= Q.degree
                sc = solution_count(n, k, Q, "none" if twist == "none" else "squarefree") if in_range else None
                ok = not in_range or m == sc
                verdict = ("pass" if ok else "fail") if in_range else "report"
                t.add(ok, q=q, Q=repr(Q), deg_Q=Q.degree, n=n, k=k, twist=twist, moment=m,
                      solution_count=sc, target=target, ratio=m / (q ** (n * k) * target) if target else None,
                      in_range=in_range, verdict=verdict)
    return t


def cmd_theta(cfg: RunConfig) -> Table:
    Q = _modulus(cfg)
    t = Table(["q", "Q", "chi", "n_roots", "degree_ok", "max_modulus_dev", "max_sc_dev",
               "max_trsym_dev", "max_moebius_series_dev", "weil", "verdict"])
    for chi in odd_primitive_characters(Q):
        r = theta_checks(chi)
        t.add(r.passed, q=r.q, Q=repr(Q), chi=list(r.chi), n_roots=len(r.roots), degree_ok=r.degree_ok,
              max_modulus_dev=r.max_modulus_dev, max_sc_dev=r.max_sc_dev, max_trsym_dev=r.max_trsym_dev,
              max_moebius_series_dev=r.max_moebius_series_dev, weil=r.weil_ok,
              verdict="pass" if r.passed else "fail")
    return t


def cmd_mc(cfg: RunConfig) -> Table:
    p = cfg.params
    Ns = parse_int_range(p["N"] or "1")
    if len(Ns) != 1 or Ns[0] < 1:
        raise UsageError("mc takes a single positive --N")
    spec = MomentSpec(parse_vector(p["a"]), parse_vector(p["b"] or p["a"]), Ns[0], Kind(p["kind"]))
    if p["samples"] < 1000:
        raise UsageError("--samples must be at least 1000")
    est, se = mc_moment_estimate(spec, p["samples"], p["seed"])
    exact = moment_exact(spec)
    err = abs(est - exact)
    z = err / se if se > 0 else (0.0 if err <= 1e-9 else float("inf"))
    ok = z <= 4.0
    t = Table(["kind", "a", "b", "N", "samples", "seed", "estimate", "stderr", "exact", "z", "verdict"])
    t.add(ok, kind=spec.kind.value, a=list(spec.a), b=list(spec.b), N=spec.N, samples=p["samples"],
          seed=p["seed"], estimate=est, stderr=se, exact=exact, z=float(z), verdict="pass" if ok else "fail")
    return t


COMMANDS: dict[str, Callable[[RunConfig], Table]] = {
    "verify-dg": cmd_verify_dg,
    "verify-trsym": cmd_verify_trsym,
    "verify-kostka": cmd_verify_kostka,
    "ff-scan": cmd_ff_scan,
    "char-moments": cmd_char_moments,
    "theta": cmd_theta,
    "mc": cmd_mc,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cue-lab", description="Verify CUE moment / contingency table identities.")
    parser.add_argument("--version", action="version", version=f"cue-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None, help="write the table here instead of stdout")

    for name in ("verify-dg", "verify-trsym"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--n-max", type=int, default=4)
        sp.add_argument("--N", default=None, help='"4..6", "5" or "1,3"; default 1..n-max')

    sp = sub.add_parser("verify-kostka", parents=[common])
    sp.add_argument("--n-max", type=int, default=4)

    sp = sub.add_parser("ff-scan", parents=[common])
    sp.add_argument("--mu", default=None, help='e.g. "1,1"; omit to scan all pairs of partitions of --n')
    sp.add_argument("--mu-tilde", default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--primes", default="2,3,5")
    sp.add_argument("--holdout", type=int, default=None)

    sp = sub.add_parser("char-moments", parents=[common])
    sp.add_argument("--Q", default=None, help='coefficients low to high, e.g. "0,0,1@q=3" for T^2 over F_3')
    sp.add_argument("--n", default="1")
    sp.add_argument("--k", default="1")
    sp.add_argument("--twist", choices=["none", "moebius", "both"], default="both")

    sp = sub.add_parser("theta", parents=[common])
    sp.add_argument("--Q", default=None)

    sp = sub.add_parser("mc", parents=[common])
    sp.add_argument("--kind", choices=[k.value for k in Kind], default=Kind.SECULAR.value)
    sp.add_argument("--a", required=True, help='multiplicity vector, e.g. "0,1"')
    sp.add_argument("--b", default=None, help="defaults to --a")
    sp.add_argument("--N", default="1")
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    return parser


def run(cfg: RunConfig) -> tuple[int, str]:
    table = COMMANDS[cfg.command](cfg)
    return (EXIT_FAIL if table.failures else EXIT_OK), render(table, cfg.fmt)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig.from_namespace(ns)
    try:
        code, text = run(cfg)
    except UsageError as exc:
        print(f"cue-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeLimitError as exc:
        print(f"cue-lab: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code:
        print(f"cue-lab: {cfg.command}: some asserted equalities failed", file=sys.stderr)
    return code
