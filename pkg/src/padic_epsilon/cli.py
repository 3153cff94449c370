"""Command-line entry point: ``padic-epsilon {gauss,verify,lfunc}``.

Output is JSON lines: a header record, one record per case and a summary.
Exit codes: 0 when everything passes, 1 on a verification failure, 2 on
usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from .characters import gauss_sum, gross_koblitz_check, stickelberger_valuation
from .epsilon import RationalForm, determinant_formula_check
from .finite_geometry import is_prime
from .global_modules import (
    RankOneGlobalModule,
    TailNonvanishing,
    functional_equation_check,
    l_polynomial,
    verify_lastcor,
    verify_product_formula,
)
from .local_field import PadicNumber, make_context
from .local_modules import UnsupportedModule, kummer, tensor, unramified
from .reports import serialize

SCHEMA = "padic-epsilon/report/1"
VERIFIERS = ("pf", "lastcor", "detformula", "funceq")
DEFAULT_PRECISION = 20

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration


@dataclass
class CaseConfig:
    kummer: list[tuple[int, int]]
    dwork_c: int = 0
    scalar: Any = 1
    twist: int = 0
    omegas: list[tuple[list[int], list[int]]] = field(default_factory=lambda: [([1], [1])])
    remove_infinity: bool = False
    max_degree_override: int | None = None

    def to_dict(self) -> dict:
        return {
            "kummer": [{"point": s, "a": a} for s, a in self.kummer],
            "dwork_c": self.dwork_c,
            "scalar": self.scalar,
            "twist": self.twist,
            "omega": [{"num": n, "den": d} for n, d in self.omegas],
            "remove_infinity": self.remove_infinity,
            "max_degree_override": self.max_degree_override,
        }


@dataclass
class RunConfig:
    """Validated parameters of one invocation; echoed in the output header."""

    command: str
    p: int
    f: int = 1
    precision: int = DEFAULT_PRECISION
    cases: list[CaseConfig] = field(default_factory=list)
    detformula_a: list[int] | None = None
    threshold_digits: int | None = None
    workers: int = 1
    out: str | None = None

    def validate(self) -> "RunConfig":
        if not is_prime(self.p):
            raise ConfigError(f"p = {self.p} is not a prime")
        if self.f < 1:
            raise ConfigError("f must be >= 1")
        if self.precision < 6:
            raise ConfigError("precision must be at least 6 pi-digits")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        q = self.p**self.f
        for case in self.cases:
            pts = [s for s, _ in case.kummer]
            if len(set(pts)) != len(pts):
                raise ConfigError("singular points must be distinct")
            for s in pts + [case.dwork_c]:
                if not 0 <= s < q:
                    raise ConfigError(f"{s} is not an element code of F_{q}")
            for num, den in case.omegas:
                if not any(num) or not any(den):
                    raise ConfigError("omega must be nonzero")
                if any(not 0 <= c < q for c in num + den):
                    raise ConfigError("omega coefficients must be element codes")
        return self

    def header(self) -> dict:
        return {
            "schema": SCHEMA,
            "record": "header",
            "command": self.command,
            "p": self.p,
            "f": self.f,
            "precision": self.precision,
            "threshold_digits": self.required,
            "workers": self.workers,
            "cases": [c.to_dict() for c in self.cases],
        }

    @property
    def required(self) -> int:
        return self.precision - 4 if self.threshold_digits is None else self.threshold_digits


def _int(d: dict, key: str, default=None) -> int:
    v = d.get(key, default)
    if v is None:
        raise ConfigError(f"missing field {key!r}")
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"field {key!r} must be an integer")
    return v


def _int_list(v, key: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in v):
        raise ConfigError(f"{key} must be a list of integers")
    return v


def _parse_omega(v) -> tuple[list[int], list[int]]:
    if not isinstance(v, dict):
        raise ConfigError("omega must be an object with num and den")
    return _int_list(v.get("num", [1]), "omega.num"), _int_list(v.get("den", [1]), "omega.den")


def _parse_case(d: dict) -> CaseConfig:
    kum = d.get("kummer", [])
    if not isinstance(kum, list):
        raise ConfigError("kummer must be a list")
    pairs = []
    for item in kum:
        if not isinstance(item, dict):
            raise ConfigError("kummer entries must be objects {point, a}")
        pairs.append((_int(item, "point"), _int(item, "a")))
    omega = d.get("omega", {"num": [1], "den": [1]})
    omegas = [_parse_omega(o) for o in omega] if isinstance(omega, list) else [_parse_omega(omega)]
    scalar = d.get("scalar", 1)
    if not isinstance(scalar, (int, str)) or isinstance(scalar, bool):
        raise ConfigError("scalar must be an integer or a serialized p-adic number")
    mdo = d.get("max_degree_override")
    if mdo is not None and (not isinstance(mdo, int) or mdo < 0):
        raise ConfigError("max_degree_override must be a non-negative integer")
    return CaseConfig(pairs, _int(d, "dwork_c", 0), scalar, _int(d, "twist", 0), omegas,
                      bool(d.get("remove_infinity", False)), mdo)


def load_config(args: argparse.Namespace) -> RunConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed config: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
    p = args.p if args.p is not None else raw.get("p")
    if p is None:
        raise ConfigError("p is required (flag or config)")
    f = args.f if args.f is not None else raw.get("f", 1)
    precision = args.precision if args.precision is not None else raw.get("precision", DEFAULT_PRECISION)
    for name, v in (("p", p), ("f", f), ("precision", precision)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{name} must be an integer")
    base = {k: v for k, v in raw.items() if k not in ("p", "f", "precision", "cases", "detformula_a")}
    cases_raw = raw.get("cases")
    if cases_raw is None:
        cases = [_parse_case(base)]
    else:
        if not isinstance(cases_raw, list) or not all(isinstance(c, dict) for c in cases_raw):
            raise ConfigError("cases must be a list of objects")
        cases = [_parse_case({**base, **c}) for c in cases_raw]
    det_a = raw.get("detformula_a")
    if det_a is not None:
        det_a = _int_list(det_a, "detformula_a")
    cfg = RunConfig(args.command, p, f, precision, cases, det_a, getattr(args, "threshold_digits", None),
                    getattr(args, "workers", 1) or 1, getattr(args, "out", None))
    return cfg.validate()


def build_module(ctx, case: CaseConfig) -> RankOneGlobalModule:
    scalar = case.scalar
    if isinstance(scalar, str):
        try:
            scalar = PadicNumber.from_string(ctx, scalar)
        except ValueError as exc:
            raise ConfigError(f"bad scalar: {exc}") from exc
    try:
        return RankOneGlobalModule(ctx, case.kummer, case.dwork_c, scalar, case.twist, case.remove_infinity)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------------------
# output


class Emitter:
    def __init__(self, path: str | None):
        self.fh = open(path, "w", encoding="utf-8") if path else sys.stdout

    def emit(self, record: dict) -> None:
        self.fh.write(json.dumps(record, sort_keys=True) + "\n")
        self.fh.flush()

    def close(self) -> None:
        if self.fh is not sys.stdout:
            self.fh.close()


def _record(kind: str, case_index: int | None, rep) -> dict:
    d = rep.to_dict()
    d.pop("runtime", None)  # keeps output byte-identical across runs
    d.update({"schema": SCHEMA, "record": "case", "verifier": kind})
    if case_index is not None:
        d["case"] = case_index
    return d


def _error_record(kind: str, case_index: int | None, reason: str) -> dict:
    d = {"schema": SCHEMA, "record": "case", "verifier": kind, "pass": False, "error": reason}
    if case_index is not None:
        d["case"] = case_index
    return d


# ---------------------------------------------------------------------------
# commands


def cmd_gauss(args: argparse.Namespace) -> int:
    if not is_prime(args.p):
        print(f"error: p = {args.p} is not a prime", file=sys.stderr)
        return EXIT_USAGE
    if args.f < 1 or args.precision < 6:
        print("error: need f >= 1 and precision >= 6", file=sys.stderr)
        return EXIT_USAGE
    ctx = make_context(args.p, args.f, N=args.precision)
    a = args.a % (ctx.q - 1)
    value = gauss_sum(ctx, a)
    gk = gross_koblitz_check(ctx, a, args.threshold_digits)
    predicted = stickelberger_valuation(ctx, a)
    actual = value.valuation
    out = {
        "schema": SCHEMA,
        "record": "gauss",
        "p": ctx.p,
        "f": ctx.f,
        "a": a,
        "precision": ctx.N,
        "value": value.to_string(),
        "stickelberger": {"predicted": str(predicted), "actual": str(actual), "pass": predicted == actual},
        "gross_koblitz": gk.to_dict(),
    }
    em = Emitter(args.out)
    em.emit(out)
    em.close()
    return EXIT_OK if gk.passed and predicted == actual else EXIT_FAIL


def _run_case(which: str, ctx, cfg: RunConfig, i: int, case: CaseConfig) -> list[dict]:
    G = build_module(ctx, case)
    req = cfg.required
    out = []
    try:
        if which in ("pf", "funceq"):
            L = l_polynomial(G, cfg.workers, case.max_degree_override)
        if which == "pf":
            for num, den in case.omegas:
                omega = RationalForm(ctx.residue_field, tuple(num), tuple(den))
                out.append(_record("pf", i, verify_product_formula(G, omega, L, req)))
        elif which == "lastcor":
            out.append(_record("lastcor", i, verify_lastcor(G, req)))
        elif which == "funceq":
            out.append(_record("funceq", i, functional_equation_check(G, req, cfg.workers)))
    except TailNonvanishing as exc:
        out.append(_error_record(which, i, f"precision exhausted or degree bound wrong: tail residual "
                                           f"{serialize(exc.lpoly.tail_residual)} < {exc.lpoly.tail_required}"))
    except UnsupportedModule as exc:
        out.append(_error_record(which, i, f"unsupported input: {exc}"))
    return out


def _run_detformula(ctx, cfg: RunConfig) -> list[dict]:
    a_values = cfg.detformula_a if cfg.detformula_a is not None else list(range(ctx.q - 1))
    scalar = cfg.cases[0].scalar if cfg.cases else 1
    out = []
    for a in a_values:
        M = kummer(ctx, a)
        if scalar != 1:
            M = tensor(M, unramified(ctx, build_module(ctx, cfg.cases[0]).scalar))
        rep = determinant_formula_check(M, cfg.required)
        d = rep.to_dict()
        d.update({"schema": SCHEMA, "record": "case", "verifier": "detformula", "a": a % (ctx.q - 1)})
        out.append(d)
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args)
        ctx = make_context(cfg.p, cfg.f, N=cfg.precision)
        for case in cfg.cases:
            build_module(ctx, case)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    which = VERIFIERS if args.which == "all" else (args.which,)
    em = Emitter(cfg.out)
    em.emit(cfg.header())
    passed = failed = 0
    for kind in which:
        if kind == "detformula":
            records = _run_detformula(ctx, cfg)
        else:
            records = []
            for i, case in enumerate(cfg.cases):
                G = build_module(ctx, case)
                if kind == "lastcor" and G.ramified_at_infinity and args.which == "all":
                    continue  # not applicable; only reported when asked for explicitly
                records.extend(_run_case(kind, ctx, cfg, i, case))
        for r in records:
            em.emit(r)
            if r["pass"]:
                passed += 1
            else:
                failed += 1
    em.emit({"schema": SCHEMA, "record": "summary", "total": passed + failed, "passed": passed,
             "failed": failed, "pass": failed == 0})
    em.close()
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_lfunc(args: argparse.Namespace) -> int:
    try:
        cfg = load_config(args)
        ctx = make_context(cfg.p, cfg.f, N=cfg.precision)
        if len(cfg.cases) != 1:
            raise ConfigError("lfunc takes a single module (no cases list)")
        case = cfg.cases[0]
        G = build_module(ctx, case)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        L = l_polynomial(G, cfg.workers, case.max_degree_override)
    except TailNonvanishing as exc:
        print(f"error: L-polynomial tail does not vanish (residual pi-order "
              f"{serialize(exc.lpoly.tail_residual)}, required {exc.lpoly.tail_required})", file=sys.stderr)
        return EXIT_FAIL
    h0, h1, h2 = L.h_dims
    text = f"# schema\t{SCHEMA}\n# h_dims\t{h0}\t{h1}\t{h2}\n" + L.to_tsv()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-epsilon", description="p-adic Gauss sums, L-functions and epsilon factors")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p_required=False):
        sp.add_argument("--p", type=int, required=p_required)
        sp.add_argument("--f", type=int, default=None if not p_required else 1)
        sp.add_argument("--precision", type=int, default=None if not p_required else DEFAULT_PRECISION)
        sp.add_argument("--out", default=None, help="write output here instead of stdout")
        sp.add_argument("--threshold-digits", type=int, default=None,
                        help="required agreement in pi-digits (default: precision - 4)")

    g = sub.add_parser("gauss", help="Gauss sum with Stickelberger and Gross-Koblitz checks")
    common(g, p_required=True)
    g.add_argument("--a", type=int, required=True)
    g.set_defaults(func=cmd_gauss)

    v = sub.add_parser("verify", help="run verifiers on a JSON config")
    v.add_argument("which", choices=VERIFIERS + ("all",))
    v.add_argument("--config", required=True)
    common(v)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    lf = sub.add_parser("lfunc", help="L-polynomial as TSV")
    lf.add_argument("--config", required=True)
    common(lf)
    lf.add_argument("--workers", type=int, default=1)
    lf.set_defaults(func=cmd_lfunc)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
