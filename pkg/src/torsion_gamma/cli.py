"""Command-line front end.

    torsion-gamma [--json | --tsv] gamma CONFIG
    torsion-gamma verify SUITE [--seed N]
    torsion-gamma sigma --max N
    torsion-gamma groups order --g G (--q Q | --ell L --n N) [--family F]
    torsion-gamma groups codim --r R --s S --g G
    torsion-gamma groups index --g G --ell L --chain "P(1,1)@1,P(1,0)@2" [--n N]
    torsion-gamma groups lift --family SL|Sp --g G --ell L --n N [--gens full|upper|MATRICES]

Reports are deterministic: fractions print as reduced "p/q", integers as
decimal strings, keys in a fixed order and no timestamps.  Exit status is
0 on success, 1 when a verification suite has failures and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import load_config
from .errors import TorsionGammaError
from .exact.matrix import Matrix
from .exact.rings import ModRing, ff_make
from .gamma import gamma_product, gamma_simple, masser_bound, mt_hypothesis_check, psi_bruteforce, sigma_members
from .groups import (
    CongruenceChain,
    GroupSpec,
    PrsSpec,
    _prime_power,
    congruence_index,
    group_order,
    lift_check_report,
    parse_chain,
    prs_codim,
    sp_order,
)
from .verify import run_suite

VERSION_TAG = f"torsion-gamma {__version__}"


def serialize(value):
    """Fractions to "p/q", integers to decimal strings, containers recursively."""
    if isinstance(value, bool):
        return value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    return value


def make_report(command: str, inputs: dict, results: dict) -> dict:
    return serialize({"command": command, "inputs": inputs, "results": results, "version": VERSION_TAG})


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=True) + "\n"


def _flatten(prefix: str, value, out: list):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list):
        if not value:
            out.append((prefix, ""))
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, "true" if value is True else "false" if value is False else str(value)))


def render_tsv(report: dict) -> str:
    rows: list = []
    _flatten("", report, rows)
    return "".join(f"{k}\t{v}\n" for k, v in rows)


# commands

def cmd_gamma(config_path: str) -> dict:
    cfg = load_config(config_path)
    data = cfg.data
    rep = gamma_product(data)
    table = [
        {"subset": list(sub), "value": val,
         "mt_dimension": 1 + sum(data.factors[i - 1].mt_contribution for i in sub)}
        for sub, val in rep.per_subset_table.items()
    ]
    factors = []
    for k, (fac, pl, toric) in enumerate(zip(data.factors, cfg.profile.places, cfg.toric_place)):
        single = type(data)((fac,))
        psi, _ = psi_bruteforce(single, type(cfg.profile)((pl,)))
        factors.append({
            "index": k + 1,
            "gamma_simple": gamma_simple(fac.albert_type, fac.e, fac.h),
            "psi_max": psi,
            "mt_conditions": sorted(mt_hypothesis_check(fac, toric)),
        })
    inputs = {
        "config": Path(config_path).name,
        "factors": [{"type": f.albert_type, "e": f.e, "h": f.h, "multiplicity": f.multiplicity}
                    for f in data.factors],
        "profiles": [[list(p) for p in pl] for pl in cfg.profile.places],
        "toric_place": list(cfg.toric_place),
    }
    results = {
        "gamma": rep.gamma,
        "achieving_subset": list(rep.achieving_subset),
        "mt_dimension": rep.mt_dimension,
        "masser_bound": masser_bound(data),
        "per_subset_table": table,
        "factors": factors,
    }
    return make_report("gamma", inputs, results)


def cmd_verify(suite: str, seed: int = 0) -> tuple[dict, bool]:
    results = run_suite(suite, seed)
    ok = all(r.ok for r in results)
    props = [{"suite": r.suite, "property": r.name, "passed": r.passed, "failed": r.failed} for r in results]
    report = make_report("verify", {"suite": suite, "seed": seed}, {
        "all_passed": ok,
        "passed": sum(r.passed for r in results),
        "failed": sum(r.failed for r in results),
        "properties": props,
    })
    return report, ok


def cmd_sigma(max_g: int) -> dict:
    members = sigma_members(max_g)
    return make_report("sigma", {"max": max_g}, {"count": len(members), "members": members})


def _field_or_ring(q, ell, n):
    if q is not None:
        pf = _prime_power(q)
        if pf is None:
            raise ValueError(f"q={q} is not a prime power")
        return ff_make(*pf)
    if ell is None:
        raise ValueError("give either --q or --ell (with --n)")
    return ModRing(ell, n or 1)


def cmd_groups_order(family: str, g: int, q=None, ell=None, n=None) -> dict:
    if family == "Sp" and q is not None:
        order = sp_order(g, q)
    else:
        order = group_order(GroupSpec(family, g, _field_or_ring(q, ell, n)))
    inputs = {"family": family, "g": g}
    if q is not None:
        inputs["q"] = q
    else:
        inputs.update({"ell": ell, "n": n or 1})
    return make_report("groups order", inputs, {"order": order})


def cmd_groups_codim(r: int, s: int, g: int) -> dict:
    return make_report("groups codim", {"r": r, "s": s, "g": g}, {"codim": prs_codim(PrsSpec(r, s, g))})


def cmd_groups_index(g: int, ell: int, chain_text: str, n=None) -> dict:
    cons = parse_chain(chain_text, g)
    top = max(m for _, m in cons)
    n = n or top
    chain = CongruenceChain(GroupSpec("Sp", g, ModRing(ell, n)), tuple(cons))
    index, pred = congruence_index(chain)
    results = {
        "index": index,
        "predicted": f"{ell}^{pred}",
        "predicted_value": ell**pred,
        "ratio": Fraction(index, ell**pred),
    }
    return make_report("groups index", {"g": g, "ell": ell, "n": n, "chain": chain_text}, results)


def _preset_generators(family: str, g: int, ell: int, which: str) -> list:
    R = ModRing(ell, 1)
    size = g if family == "SL" else 2 * g
    if family == "Sp" and g != 1:
        raise ValueError("generator presets cover SL_m and Sp_2; pass explicit matrices for larger Sp")
    def elem(i, j):
        rows = [[int(a == b) for b in range(size)] for a in range(size)]
        rows[i][j] = 1
        return Matrix.from_rows(R, rows, size)
    if which == "full":
        return [elem(i, j) for i in range(size) for j in range(size) if i != j]
    if which == "upper":
        if ell == 2:
            return [elem(i, j) for i in range(size) for j in range(size) if i < j]
        diag = [[0] * size for _ in range(size)]
        for i in range(size):
            diag[i][i] = 1
        diag[0][0], diag[-1][-1] = 2, R.inv(2)
        return [elem(i, j) for i in range(size) for j in range(size) if i < j] + [Matrix.from_rows(R, diag, size)]
    raise ValueError(f"unknown generator preset {which!r}")


def parse_matrices(text: str, ring, size: int) -> list:
    """'1,1;0,1|1,0;1,1' -> matrices (rows split by ';', matrices by '|')."""
    out = []
    for chunk in text.split("|"):
        rows = [[int(x) for x in r.split(",")] for r in chunk.strip().split(";")]
        if len(rows) != size or any(len(r) != size for r in rows):
            raise ValueError(f"each generator must be {size}x{size}")
        out.append(Matrix.from_rows(ring, rows, size))
    return out


def cmd_groups_lift(family: str, g: int, ell: int, n: int, gens: str = "full") -> dict:
    spec = GroupSpec(family, g, ModRing(ell, n))
    if gens in ("full", "upper"):
        mats = _preset_generators(family, g, ell, gens)
    else:
        mats = parse_matrices(gens, ModRing(ell, 1), spec.size)
    rep = lift_check_report(spec, mats)
    results = {
        "generates_full": rep.generates_full,
        "lemma_applies": rep.lemma_applies,
        "surjective_mod_ell": rep.surjective_mod_ell,
        "closure_order": rep.closure_order,
        "group_order": rep.group_order,
    }
    return make_report("groups lift", {"family": family, "g": g, "ell": ell, "n": n, "generators": gens}, results)


# argument parsing

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    grp = fmt.add_mutually_exclusive_group()
    grp.add_argument("--json", dest="fmt", action="store_const", const="json", default=argparse.SUPPRESS,
                     help="JSON output (default)")
    grp.add_argument("--tsv", dest="fmt", action="store_const", const="tsv", default=argparse.SUPPRESS,
                     help="tab-separated key/value output")

    p = argparse.ArgumentParser(prog="torsion-gamma", parents=[fmt],
                                description="Exact torsion-growth exponents and their group-theoretic checks.")
    p.add_argument("--version", action="version", version=VERSION_TAG)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gamma", parents=[fmt], help="optimal exponent of a variety configuration")
    s.add_argument("config")

    s = sub.add_parser("verify", parents=[fmt], help="run an invariant suite")
    s.add_argument("suite")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("sigma", parents=[fmt], help="list the exceptional set up to a bound")
    s.add_argument("--max", type=int, required=True, dest="max_g")

    s = sub.add_parser("groups", parents=[fmt], help="orders, codimensions, indices and lifting")
    gsub = s.add_subparsers(dest="groups_command", required=True)
    o = gsub.add_parser("order", parents=[fmt])
    o.add_argument("--family", choices=("Sp", "GSp", "SL"), default="Sp")
    o.add_argument("--g", type=int, required=True)
    o.add_argument("--q", type=int)
    o.add_argument("--ell", type=int)
    o.add_argument("--n", type=int)
    c = gsub.add_parser("codim", parents=[fmt])
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--g", type=int, required=True)
    i = gsub.add_parser("index", parents=[fmt])
    i.add_argument("--g", type=int, required=True)
    i.add_argument("--ell", type=int, required=True)
    i.add_argument("--chain", required=True)
    i.add_argument("--n", type=int)
    lf = gsub.add_parser("lift", parents=[fmt])
    lf.add_argument("--family", choices=("Sp", "SL"), default="SL")
    lf.add_argument("--g", type=int, required=True)
    lf.add_argument("--ell", type=int, required=True)
    lf.add_argument("--n", type=int, required=True)
    lf.add_argument("--gens", default="full", help="'full', 'upper' or matrices like '1,1;0,1|1,0;1,1'")
    return p


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    status = 0
    if args.command == "gamma":
        report = cmd_gamma(args.config)
    elif args.command == "verify":
        report, ok = cmd_verify(args.suite, args.seed)
        status = 0 if ok else 1
    elif args.command == "sigma":
        report = cmd_sigma(args.max_g)
    else:
        gc = args.groups_command
        if gc == "order":
            report = cmd_groups_order(args.family, args.g, args.q, args.ell, args.n)
        elif gc == "codim":
            report = cmd_groups_codim(args.r, args.s, args.g)
        elif gc == "index":
            report = cmd_groups_index(args.g, args.ell, args.chain, args.n)
        else:
            report = cmd_groups_lift(args.family, args.g, args.ell, args.n, args.gens)
    fmt = getattr(args, "fmt", "json")
    return status, render_tsv(report) if fmt == "tsv" else render_json(report)


def main(argv=None) -> int:
    try:
        status, text = run(argv)
    except (TorsionGammaError, ValueError, ArithmeticError) as exc:
        print(f"torsion-gamma: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
