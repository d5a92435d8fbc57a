"""Command-line front end: ``lieverma <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import platform
import random
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .enveloping import UEA
from .ideals import (
    build_T_module,
    controller_check,
    duflo_check,
    kernel_chi_ideal,
    module_annihilator,
    phi_property_check,
    sl2_finite_ideal,
)
from .padic import GaugeStaircase, format_rational, valuation
from .roots import CARTAN_MATRICES, Weight, build_root_system
from .suite import run_all
from .verma import (
    TruncationError,
    VermaModule,
    VermaVector,
    random_affinoid_vector,
)


class UsageError(Exception):
    pass


@dataclass
class Config:
    p: int = 5
    n: int = 1
    height_cap: int = 12
    degree_cap: int = 8
    seed: int = 0
    output: str = "text"

    def validate(self) -> None:
        if self.p < 2 or any(self.p % q == 0 for q in range(2, math.isqrt(self.p) + 1)):
            raise UsageError(f"p = {self.p} is not prime")
        if self.height_cap < 1 or self.degree_cap < 1:
            raise UsageError("caps must be at least 1")
        if self.n < 0:
            raise UsageError("deformation level must be nonnegative")
        if self.output not in ("text", "json"):
            raise UsageError("output must be text or json")


CONFIG_KEYS = {"p": int, "n": int, "height_cap": int, "degree_cap": int, "seed": int, "output": str}


def read_config_file(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = CONFIG_KEYS[key](value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def build_config(args) -> Config:
    values = read_config_file(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "json", False):
        values["output"] = "json"
    cfg = Config(**values)
    cfg.validate()
    return cfg


# rendering -----------------------------------------------------------------


def rational(x, p: int) -> dict:
    """Exact rational as ``num/den`` plus its p-adic valuation."""
    x = Fraction(x)
    v = valuation(x, p)
    return {"value": format_rational(x), "valuation": "inf" if v == math.inf else v}


def jsonable(obj, p: int):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj, p)
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        # only infinities reach here (gauges of zero vectors)
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, dict):
        return {str(k): jsonable(v, p) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v, p) for v in obj]
    return str(obj)


def vector_terms(v: VermaVector, p: int) -> list:
    M = v.module
    return [
        {"exponents": list(B), "height": M.height(B), "coefficient": rational(c, p)}
        for B, c in sorted(v.terms.items(), key=lambda kv: (M.height(kv[0]), kv[0]))
    ]


def parse_weight(text: str | None, rank: int) -> Weight:
    if text is None:
        return Weight(tuple(Fraction(0) for _ in range(rank)))
    try:
        parts = tuple(Fraction(s.strip()) for s in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse weight {text!r}") from None
    if len(parts) != rank:
        raise UsageError(f"weight needs {rank} coroot pairings")
    return Weight(parts)


def emit(report: dict, cfg: Config, out) -> None:
    if cfg.output == "json":
        payload = jsonable(report, cfg.p)
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return
    out.write(f"{report['operation']}\n")
    for key in sorted(report.get("result", {})):
        out.write(f"  {key}: {_text(report['result'][key])}\n")
    for check in report.get("checks", []):
        out.write(f"  [{check['status']}] {check['name']}\n")


def _text(obj) -> str:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{k}: {_text(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_text(v) for v in obj) + "]"
    return str(obj)


def base_report(operation: str, cfg: Config, extra: dict) -> dict:
    params = asdict(cfg)
    params.update({k: v for k, v in extra.items() if v is not None})
    return {
        "schema": 1,
        "operation": operation,
        "parameters": params,
        "versions": {"lieverma": __version__, "python": platform.python_version()},
        "checks": [],
    }


# commands ------------------------------------------------------------------


def cmd_root_system(args, cfg):
    rs = build_root_system(args.type)
    report = base_report("root-system", cfg, {"type": args.type})
    report["result"] = {
        "type": rs.type_label,
        "rank": rs.rank,
        "cartan_matrix": [list(r) for r in rs.cartan_matrix],
        "positive_roots": [
            {"root": str(r), "coeffs": list(r.coeffs), "height": r.height}
            for r in rs.positive_roots
        ],
        "rho": list(rs.rho),
        "delta": list(rs.delta),
        "weyl_order": len(rs.weyl_group),
    }
    return report, True


def _verma(args, cfg) -> VermaModule:
    rs = build_root_system(args.type)
    return VermaModule(UEA.of(rs, cfg.p), parse_weight(args.lam, rs.rank), cfg.height_cap)


def _parse_word(M: VermaModule, text: str) -> list[int]:
    labels = {lab: pos for pos, lab in enumerate(M.lie.label)}
    word = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok not in labels:
            raise UsageError(f"unknown basis element {tok!r}; choose from {sorted(labels)}")
        word.append(labels[tok])
    return word


def cmd_verma(args, cfg):
    M = _verma(args, cfg)
    p = cfg.p
    extra = {"type": args.type, "lambda": str(M.weight), "action": args.action}
    report = base_report(f"verma {args.action}", cfg, extra)
    ok = True
    if args.action == "act":
        word = _parse_word(M, args.word or "")
        start = M.basis_vector(tuple(int(b) for b in args.vector.split(","))) if args.vector else M.highest()
        res = M.act(M.U.pbw_normalize(word), start)
        report["result"] = {
            "word": args.word or "",
            "vector": vector_terms(res, p),
            "truncated": res.truncated,
        }
    elif args.action == "weights":
        spaces = M.weight_spaces()
        report["result"] = {
            "Lambda": M.Lambda,
            "weight_spaces": [
                {"beta": list(beta), "height": sum(beta), "weight": str(M.weight_of_beta(beta)),
                 "dimension": len(Bs)}
                for beta, Bs in sorted(spaces.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }
    elif args.action == "singular":
        vecs = M.singular_vectors()
        report["result"] = {"singular_vectors": [vector_terms(v, p) for v in vecs]}
    elif args.action == "submodules":
        N = M.maximal_submodule()
        quotient = N.quotient_dimensions()
        report["result"] = {
            "status": N.status,
            "rounds": N.rounds,
            "maximal_submodule_dimension": N.dimension(),
            "simple_quotient": [
                {"beta": list(b), "dimension": d}
                for b, d in sorted(quotient.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            ],
        }
    elif args.action == "extract":
        rng = random.Random(cfg.seed)
        tail = GaugeStaircase.linear(1)
        u = random_affinoid_vector(M, rng, cfg.n, tail, density=1.0)
        L = args.mu_height
        betas = sorted(b for b in M.weight_spaces() if sum(b) == L)
        if not betas:
            raise UsageError(f"no weights at height {L} below the cap")
        comps = []
        for beta in betas:
            ex = M.extract_weight_component(u, M.weight_of_beta(beta))
            same = ex.component == M.projection(u.explicit, ex.weight)
            ok = ok and same
            comps.append({
                "weight": str(ex.weight),
                "component": vector_terms(ex.component, p),
                "normalizer": ex.normalizer,
                "residual_gauges": ex.residual_gauges,
                "frontier_height": ex.frontier,
                "frontier_gauge": ex.frontier_gauge,
            })
            report["checks"].append({"name": f"extraction equals projection at {ex.weight}",
                                     "status": "pass" if same else "fail",
                                     "witness": None if same else list(beta)})
        report["result"] = {"mu_height": L, "certified": bool(u.certificate()), "components": comps}
    return report, ok


def _ideal(U, rs, args, cfg):
    weight = parse_weight(args.lam, rs.rank)
    kind = args.kind
    if kind == "finite-codim":
        m = weight[0]
        if rs.rank != 1 or m.denominator != 1 or m < 0:
            raise UsageError("finite-codim ideals need sl2 and a dominant integral weight")
        return sl2_finite_ideal(U, int(m), cfg.degree_cap), weight
    return kernel_chi_ideal(U, weight, cfg.degree_cap), weight


def cmd_ideals(args, cfg):
    rs = build_root_system(args.type)
    U = UEA.of(rs, cfg.p)
    extra = {"type": args.type, "lambda": args.lam, "action": args.action, "kind": args.kind}
    report = base_report(f"ideals {args.action}", cfg, extra)
    ok = True
    if args.action == "closure":
        I, _ = _ideal(U, rs, args, cfg)
        report["per_degree_dims"] = I.per_degree_dims()
        report["result"] = {"status": I.status, "generators": [[t, str(g)] for t, g in I.generators]}
    elif args.action == "annihilator":
        weight = parse_weight(args.lam, rs.rank)
        M = VermaModule(U, weight, cfg.height_cap)
        ann = module_annihilator(M, M.maximal_submodule(), cfg.degree_cap)
        report["per_degree_dims"] = ann.per_degree_dims()
        report["result"] = {"status": ann.status, "notes": ann.notes}
    elif args.action == "duflo-check":
        weight = parse_weight(args.lam, rs.rank)
        res = duflo_check(weight, cfg.n, p=cfg.p)
        ok = res["ok"]
        report["result"] = res
        report["checks"].append({"name": "every candidate is an annihilator of a simple",
                                 "status": "pass" if ok else "fail",
                                 "witness": None if ok else res["candidates"]})
    elif args.action == "controller-check":
        I, _ = _ideal(U, rs, args, cfg)
        res = controller_check(I, cfg.n)
        ok = res["ok"]
        report["per_degree_dims"] = I.per_degree_dims()
        report["result"] = res
        report["checks"].append({"name": "left generation absorbs right multiplication",
                                 "status": "pass" if ok else "fail",
                                 "witness": None if ok else res["membership_failures"][:1]})
    elif args.action == "phi-check":
        weight = parse_weight(args.lam, rs.rank)
        T = build_T_module(U, weight, cfg.height_cap)
        res = phi_property_check(T, random.Random(cfg.seed), 50, ideal_generators=[U.casimir()])
        ok = res["ok"]
        report["result"] = res
        report["checks"].append({"name": "phi(tu) = sigma(u) phi(t) and bijective",
                                 "status": "pass" if ok else "fail",
                                 "witness": None if ok else res})
    return report, ok


def cmd_verify_all(args, cfg):
    report = base_report("verify-all", cfg, {})
    results = run_all(cfg.seed)
    report["checks"] = [
        {"name": r.name, "status": "pass" if r.ok else "fail",
         "witness": None if r.ok else str(r.witness)}
        for r in results
    ]
    report["result"] = {"passed": sum(r.ok for r in results), "total": len(results)}
    return report, all(r.ok for r in results)


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file (flags win)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int)
    common.add_argument("--p", type=int, dest="p", help="prime (default 5)")
    common.add_argument("--n", type=int, dest="n", help="deformation level (default 1)")
    common.add_argument("--height-cap", type=int, dest="height_cap")
    common.add_argument("--degree-cap", type=int, dest="degree_cap")
    types = sorted(CARTAN_MATRICES)

    parser = argparse.ArgumentParser(prog="lieverma", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lieverma {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    rs = sub.add_parser("root-system", parents=[common], help="roots, heights, rho, delta")
    rs.add_argument("--type", choices=types, default="A1")

    vm = sub.add_parser("verma", parents=[common], help="Verma module computations")
    vm.add_argument("action", choices=["act", "weights", "singular", "submodules", "extract"])
    vm.add_argument("--type", choices=types, default="A1")
    vm.add_argument("--lambda", dest="lam", help="coroot pairings, comma separated")
    vm.add_argument("--word", help="basis labels applied right to left, e.g. e1,f1")
    vm.add_argument("--vector", help="f-exponents of the starting basis vector")
    vm.add_argument("--mu-height", type=int, default=0, dest="mu_height")

    idl = sub.add_parser("ideals", parents=[common], help="two-sided ideal computations")
    idl.add_argument("action", choices=["closure", "annihilator", "duflo-check",
                                        "controller-check", "phi-check"])
    idl.add_argument("--type", choices=types, default="A1")
    idl.add_argument("--lambda", dest="lam", help="coroot pairings, comma separated")
    idl.add_argument("--kind", choices=["kernel-chi", "finite-codim"], default="kernel-chi")

    sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    return parser


COMMANDS = {
    "root-system": cmd_root_system,
    "verma": cmd_verma,
    "ideals": cmd_ideals,
    "verify-all": cmd_verify_all,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = build_config(args)
        report, ok = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError, TruncationError, OSError) as exc:
        print(f"lieverma: error: {exc}", file=sys.stderr)
        return 2
    emit(report, cfg, out)
    if not ok:
        first = next((c for c in report["checks"] if c["status"] == "fail"), None)
        if first is not None:
            print(f"lieverma: check failed: {first['name']}: {first['witness']}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
