"""Command-line entry point: analyze | survey | volumes | formulas | decimal | report-merge.

Data goes to standard output, progress and errors to standard error.
Exit codes: 0 ok, 2 configuration error, 3 computation error, 4 mismatch
against the published tables in ``--check`` mode.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import golden
from .errors import ConfigError, SplitRootsError

EXIT_OK, EXIT_CONFIG, EXIT_COMPUTE, EXIT_MISMATCH = 0, 2, 3, 4

# every key a config file may set, per command, with its default
DEFAULTS = {
    "analyze": {"poly": None, "numbering": None, "max_coeff_bits": 16, "degree_bound": "auto",
                "volumes": None, "out": None},
    "survey": {"poly": None, "m": None, "X": None, "L": [], "region": [], "bands": 0,
               "rows": None, "basis": None, "workers": 1, "chunk_width": 1 << 20,
               "checkpoint": None, "checkpoint_every": 0, "resume": False, "csv": None,
               "json": None, "artin_bound": 100_000, "root_expressions": None,
               "max_coeff_bits": 16, "degree_bound": "auto", "check": False},
    "volumes": {"poly": None, "rows": None, "sigma": [], "region": [], "max_coeff_bits": 16,
                "degree_bound": "auto", "out": None},
    "formulas": {"dtable": None, "identities": False, "n_max": 12, "eulerian": None,
                 "d": None, "grid": None},
    "decimal": {"fraction": None, "n": None, "k_stat": None, "k_dist": None, "X": None},
    "report_merge": {"files": [], "out": None},
}


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _emit(payload, out: Optional[str]) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _int_list(text) -> list[int]:
    if isinstance(text, list):
        return [int(v) for v in text]
    return [int(v) for v in str(text).replace(" ", "").split(",") if v]


def _m_range(text) -> list[int]:
    """"5..7" or "5,6,7" or a list."""
    if isinstance(text, list):
        return [int(v) for v in text]
    text = str(text)
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return _int_list(text)


def _number(text) -> int:
    """Integers written as 10000000, 1e7 or 10^7."""
    if isinstance(text, int):
        return text
    text = str(text).strip()
    if "^" in text:
        base, exp = text.split("^")
        return int(base) ** int(exp)
    if "e" in text.lower():
        mant, exp = text.lower().split("e")
        value = Fraction(mant) * 10 ** int(exp)
        if value.denominator != 1:
            raise ConfigError(f"{text} is not an integer")
        return int(value)
    return int(text)


# ---------------------------------------------------------------- shared pipeline

def _polynomial(cfg):
    from .poly import IntPolynomial

    if not cfg.get("poly"):
        raise ConfigError("a polynomial is required")
    return IntPolynomial.parse(cfg["poly"])


def _basis(cfg, f):
    """Relation basis from explicit rows, an analyze report, or detection."""
    from .relations import RelationBasis, detect_relations
    from .roots import complex_roots

    if cfg.get("rows"):
        rows = json.loads(cfg["rows"]) if isinstance(cfg["rows"], str) else cfg["rows"]
        return RelationBasis(f.degree, tuple(tuple(r) for r in rows))
    if cfg.get("basis"):
        data = json.loads(Path(cfg["basis"]).read_text())
        return RelationBasis.from_json(data.get("basis", data))
    rootset = complex_roots(f)
    if cfg.get("numbering"):
        rootset = rootset.with_numbering(_int_list(cfg["numbering"]))
    bound = cfg.get("degree_bound", "auto")
    bound = bound if bound in (None, "auto") else int(bound)
    return detect_relations(rootset, max_coeff_bits=int(cfg.get("max_coeff_bits", 16)),
                            degree_bound=bound)


def _perm_list(perms) -> list[list[int]]:
    return [list(p) for p in sorted(perms)]


# ---------------------------------------------------------------- analyze

def cmd_analyze(cfg) -> int:
    from .geometry import (conjectured_c, domain_volume, relation_gram_det,
                           volume_sum_over_all_permutations)
    from .perms import compute_g, compute_ghat, coset_reps
    from .surd import SurdValue

    f = _polynomial(cfg)
    basis = _basis(cfg, f)
    _progress(f"relations: t = {basis.t}")
    ghat, g = compute_ghat(basis), compute_g(basis)
    report = {
        "polynomial": str(f),
        "n": f.degree,
        "basis": basis.to_json(),
        "certification": [c.to_json() for c in basis.certification],
        "ghat": _perm_list(ghat),
        "g": _perm_list(g),
        "index_g_over_ghat": len(g) // len(ghat),
        "gram_det": relation_gram_det(basis),
    }
    c = conjectured_c(basis, ghat)
    report["conjectured_c"] = None if c is None else str(c)
    want_volumes = cfg.get("volumes")
    if want_volumes is None:
        want_volumes = f.degree <= 6
    if want_volumes:
        _progress("volumes over all cosets")
        decomposition = coset_reps(itertools.permutations(range(1, f.degree + 1)), ghat)
        cosets = []
        total = SurdValue.zero()
        for rep in decomposition.representatives:
            vol = domain_volume(basis, rep)
            total = total + vol * len(ghat)
            cosets.append({"rep": list(rep), "volume": str(vol), "in_g": rep in g})
        report["cosets"] = cosets
        root_det = SurdValue.sqrt(relation_gram_det(basis))
        report["volume_sum"] = str(total)
        report["sqrt_gram_det"] = str(root_det)
        report["volume_sum_matches"] = total == root_det
    _emit(report, cfg.get("out"))
    return EXIT_OK


# ---------------------------------------------------------------- volumes

def cmd_volumes(cfg) -> int:
    from .geometry import RegionSpec, domain_volume, k_slice_volumes, region_volume
    from .perms import compute_ghat, coset_reps, parse_perm

    f = _polynomial(cfg)
    basis = _basis(cfg, f)
    n = f.degree
    if cfg.get("sigma"):
        sigmas = [parse_perm(s, n) for s in cfg["sigma"]]
    else:
        ghat = compute_ghat(basis)
        sigmas = coset_reps(itertools.permutations(range(1, n + 1)), ghat).representatives
    regions = [RegionSpec.parse(n, text) for text in cfg.get("region", [])]
    rows = []
    for s in sigmas:
        entry = {"sigma": list(s), "volume": str(domain_volume(basis, s)),
                 "slices": {json.dumps(list(k)): str(v)
                            for k, v in sorted(k_slice_volumes(basis, s).items())}}
        for region in regions:
            entry.setdefault("regions", {})[region.label] = str(region_volume(basis, s, region))
        rows.append(entry)
    _emit({"basis": basis.to_json(), "volumes": rows}, cfg.get("out"))
    return EXIT_OK


# ---------------------------------------------------------------- survey

def _thresholds(cfg, f) -> list[tuple[str, int]]:
    from .split import smallest_split_prime_above

    if cfg.get("m") is not None and cfg.get("X") is not None:
        raise ConfigError("give either m or X, not both")
    if cfg.get("m") is not None:
        return [(f"m={m}", smallest_split_prime_above(f, 10 ** m)) for m in _m_range(cfg["m"])]
    if cfg.get("X") is not None:
        return [(f"X={_number(x)}", _number(x)) for x in str(cfg["X"]).split(",")]
    raise ConfigError("a threshold is required: --m or --X")


def _volume_tables(basis, reps, regions):
    from .geometry import domain_volume, k_slice_volumes, region_volume

    volumes, slices, region_vols = {}, {}, {}
    for rep in reps:
        volumes[rep] = domain_volume(basis, rep)
        slices[rep] = k_slice_volumes(basis, rep)
        for rid, region in regions:
            region_vols[(rep, rid)] = region_volume(basis, rep, region)
    return volumes, slices, region_vols


def cmd_survey(cfg) -> int:
    from .geometry import RegionSpec
    from .perms import compute_g, compute_ghat
    from .survey import (MAX_PATTERNS, SurveyConfig, artin_subgroup, conjecture3_report,
                         conjecture_report, diff_metric, r_set, report_rows,
                         required_moduli, rows_to_csv, run_survey)

    f = _polynomial(cfg)
    n = f.degree
    basis = _basis(cfg, f)
    ghat, g = compute_ghat(basis), compute_g(basis)
    regions = tuple(RegionSpec.parse(n, text) for text in cfg.get("region", []))
    moduli = tuple(_int_list(cfg.get("L") or []))
    expressions = cfg.get("root_expressions")
    if isinstance(expressions, str):
        expressions = json.loads(expressions)
    expressions = tuple(tuple(e) for e in expressions or ())
    thresholds = _thresholds(cfg, f)

    all_rows, summaries = [], []
    counters = None
    previous = 0
    artin_cache: dict = {}
    mismatches = []
    for label, X in thresholds:
        base = SurveyConfig(
            f=f, basis=basis, ghat=ghat, g=g, X=X, start=previous, moduli=moduli, regions=regions,
            bands=int(cfg.get("bands") or 0), root_expressions=expressions,
            chunk_width=int(cfg.get("chunk_width") or 1 << 20),
            workers=int(cfg.get("workers") or 1),
            checkpoint_every=int(cfg.get("checkpoint_every") or 0),
            checkpoint_path=f"{cfg['checkpoint']}.{label}" if cfg.get("checkpoint") else None)
        _progress(f"survey {label}: primes in ({previous}, {X}]")
        part = run_survey(base, resume=bool(cfg.get("resume")),
                          progress=lambda hi, top: _progress(f"  reached {hi} of {top}"))
        counters = part if counters is None else counters.merge(part)
        previous = X

        reps = sorted(counters.per_coset)
        volumes, slices, region_vols = _volume_tables(
            basis, reps, list(zip(base.region_ids(), regions)))
        report = conjecture_report(counters, basis, ghat, g, volumes, slices, region_vols)
        patterns = []
        for L in moduli:
            if L ** n > MAX_PATTERNS:
                _progress(f"  skipping L={L}: {L}^{n} patterns")
                continue
            r_sets = {}
            for rep, k in sorted(counters.per_coset_k):
                for mod in required_moduli(k, L):
                    if mod not in artin_cache:
                        artin_cache[mod] = artin_subgroup(f, mod, int(cfg.get("artin_bound")))
                r_sets[(rep, k, L)] = r_set(basis, rep, k, L, artin_cache)
            patterns.extend(conjecture3_report(counters, r_sets))
        all_rows.extend(report_rows(label, counters, base, report, patterns))
        summary = {"threshold": label, "X": X, "total_split": counters.total_split,
                   "failed": len(counters.failed),
                   "coset_shares": {json.dumps(list(r.rep)): float(r.share)
                                    for r in report.cosets},
                   "share_sum_times_ghat": report.share_sum_times_ghat,
                   "notes": report.notes}
        if basis.t == 1:
            summary["diff"] = diff_metric(counters, n, base.bands)
        summaries.append(summary)
        if cfg.get("check"):
            mismatches.extend(_check_survey(f, label, counters, base, report, patterns))

    csv_text = rows_to_csv(all_rows)
    if cfg.get("csv"):
        Path(cfg["csv"]).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if cfg.get("json"):
        Path(cfg["json"]).write_text(json.dumps(
            {"summaries": summaries, "counters": counters.to_json()}, indent=2, sort_keys=True))
    if mismatches:
        for line in mismatches:
            _progress(f"MISMATCH {line}")
        return EXIT_MISMATCH
    return EXIT_OK


def _same_poly(f, text: str) -> bool:
    from .poly import IntPolynomial

    return f == IntPolynomial.parse(text)


def _check_survey(f, label, counters, config, report, patterns) -> list[str]:
    """Compare against the published tables where one exists for f and m."""
    from .survey import diff_metric

    if not label.startswith("m="):
        return []
    m = int(label[2:])
    out = []
    if _same_poly(f, golden.QUADRATIC):
        want = golden.QUADRATIC_DIFF.get(m)
        got = diff_metric(counters, f.degree, config.bands)
        if want is not None and abs(got - want) > golden.DIFF_TOLERANCE:
            out.append(f"{label} diff {got:.5f} vs {want}")
        for pr in patterns:
            want = golden.QUADRATIC_PATTERN_ERROR.get((pr.L, m))
            if want is not None and pr.k == (1,) and \
                    abs(pr.max_error - want) > golden.PATTERN_TOLERANCE:
                out.append(f"{label} L={pr.L} pattern error {pr.max_error:.5f} vs {want}")
    if _same_poly(f, golden.SEXTIC) and m in golden.SEXTIC_SHARE_GAP:
        top = max(report.cosets, key=lambda r: r.share)
        got = float(top.share) - golden.SEXTIC_SHARES[0]
        want = golden.SEXTIC_SHARE_GAP[m]
        if abs(got - want) > golden.DIFF_TOLERANCE:
            out.append(f"{label} share gap {got:.5f} vs {want}")
    if _same_poly(f, golden.QUARTIC_CYCLOTOMIC):
        for pr in patterns:
            want = golden.QUARTIC_CYCLOTOMIC_PATTERN_ERROR.get((pr.L, m))
            if want is not None and abs(pr.max_error - want) > golden.PATTERN_TOLERANCE:
                out.append(f"{label} L={pr.L} pattern error {pr.max_error:.5f} vs {want}")
    return out


# ---------------------------------------------------------------- formulas

def cmd_formulas(cfg) -> int:
    from .formulas import d_closed, d_piecewise, eulerian, identity_suite

    out: dict = {}
    if cfg.get("dtable") is not None:
        n = int(str(cfg["dtable"]).replace("n=", ""))
        table = {}
        for i in range(1, n + 1):
            table[str(i)] = [{"lo": str(p.lo), "hi": str(p.hi), "value": str(p)}
                             for p in d_piecewise(i, n)]
        out["dtable"] = {"n": n, "pieces": table}
    if cfg.get("identities"):
        checks = identity_suite(int(cfg.get("n_max") or 12))
        failed = [c for c in checks if not c.passed]
        out["identities"] = {"checks": len(checks), "failed": [c.__dict__ for c in failed]}
    if cfg.get("eulerian") is not None:
        n = int(cfg["eulerian"])
        out["eulerian"] = {str(m): [eulerian(m, k) for k in range(1, m + 1)]
                           for m in range(1, n + 1)}
    if cfg.get("d") is not None:
        a, i, n = str(cfg["d"]).split(",")
        out["d"] = str(d_closed(Fraction(a), int(i), int(n)))
    if cfg.get("grid") is not None:
        n = int(cfg["grid"])
        out["grid"] = {str(i): [str(d_closed(Fraction(k, 10 * n), i, n)) for k in range(10 * n)]
                       for i in range(1, n + 1)}
    if not out:
        raise ConfigError("nothing to do: pass --dtable, --identities, --eulerian, --d or --grid")
    _emit(out, None)
    if "identities" in out and out["identities"]["failed"]:
        return EXIT_COMPUTE
    return EXIT_OK


# ---------------------------------------------------------------- decimal

def cmd_decimal(cfg) -> int:
    from .decimal_periods import k_distribution, k_statistic, period_split

    lines = []
    if cfg.get("fraction"):
        a, b = (int(v) for v in str(cfg["fraction"]).split("/"))
        if cfg.get("n") is None:
            raise ConfigError("--n is required with a fraction")
        lines.append(period_split(a, b, int(cfg["n"])).display())
    if cfg.get("k_stat") is not None:
        p = int(cfg["k_stat"])
        lines.append(f"p={p} n={cfg['n']} k={k_statistic(p, int(cfg['n']))}")
    if cfg.get("k_dist") is not None:
        n = int(cfg["k_dist"])
        X = _number(cfg.get("X") or 10 ** 6)
        dist = k_distribution(n, X)
        lines.append(json.dumps({str(k): float(v) for k, v in dist.items()}, sort_keys=True))
    if not lines:
        raise ConfigError("nothing to do: pass a fraction, --k-stat or --k-dist")
    _emit("\n".join(lines), None)
    return EXIT_OK


# ---------------------------------------------------------------- report-merge

def cmd_report_merge(cfg) -> int:
    from .survey import SurveyCounters, merge_all

    parts = []
    for path in cfg.get("files") or []:
        data = json.loads(Path(path).read_text())
        parts.append(SurveyCounters.from_json(data.get("counters", data)))
    if not parts:
        raise ConfigError("no counter files given")
    _emit(merge_all(parts).to_json(), cfg.get("out"))
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "survey": cmd_survey, "volumes": cmd_volumes,
            "formulas": cmd_formulas, "decimal": cmd_decimal, "report_merge": cmd_report_merge}


# ---------------------------------------------------------------- parsing

def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    parser = argparse.ArgumentParser(prog="splitroots", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file of option values; flags override it")
    parser.add_argument("--emit-fixture", action="store_true",
                        help="print the resolved configuration as JSON and exit")
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_options(p):
        p.add_argument("poly", nargs="?", default=S, help='e.g. "x^4+1" or "[1,0,0,0,1]"')
        p.add_argument("--max-coeff-bits", type=int, default=S)
        p.add_argument("--degree-bound", default=S)

    p = sub.add_parser("analyze", help="relations, groups, volumes")
    poly_options(p)
    p.add_argument("--numbering", default=S, help="reorder the canonical roots, e.g. 2,1,3")
    p.add_argument("--volumes", action="store_true", default=S)
    p.add_argument("--out", default=S)

    p = sub.add_parser("survey", help="split-prime statistics")
    poly_options(p)
    p.add_argument("--m", default=S, help='thresholds X_m, e.g. "5..7"')
    p.add_argument("--X", default=S, help="explicit thresholds, e.g. 1e7")
    p.add_argument("--L", default=S, help="moduli, e.g. 2,3,4")
    p.add_argument("--region", action="append", default=S, help='e.g. "x1<1/3"')
    p.add_argument("--bands", type=int, default=S)
    p.add_argument("--rows", default=S, help="relation rows as JSON")
    p.add_argument("--basis", default=S, help="analyze report to take the basis from")
    p.add_argument("--workers", type=int, default=S)
    p.add_argument("--chunk-width", type=int, default=S)
    p.add_argument("--checkpoint", default=S)
    p.add_argument("--checkpoint-every", type=int, default=S)
    p.add_argument("--resume", action="store_true", default=S)
    p.add_argument("--csv", default=S)
    p.add_argument("--json", default=S)
    p.add_argument("--artin-bound", type=int, default=S)
    p.add_argument("--root-expressions", default=S, help="JSON list of coefficient lists")
    p.add_argument("--check", action="store_true", default=S,
                   help="exit 4 if a published table value is missed")

    p = sub.add_parser("volumes", help="exact domain volumes")
    poly_options(p)
    p.add_argument("--rows", default=S)
    p.add_argument("--sigma", action="append", default=S)
    p.add_argument("--region", action="append", default=S)
    p.add_argument("--out", default=S)

    p = sub.add_parser("formulas", help="closed forms and identities")
    p.add_argument("--dtable", default=S, help="n or n=3")
    p.add_argument("--identities", action="store_true", default=S)
    p.add_argument("--n-max", type=int, default=S)
    p.add_argument("--eulerian", type=int, default=S)
    p.add_argument("--d", default=S, help="a,i,n")
    p.add_argument("--grid", type=int, default=S, help="n")

    p = sub.add_parser("decimal", help="decimal period splitting")
    p.add_argument("fraction", nargs="?", default=S, help="a/b")
    p.add_argument("--n", type=int, default=S)
    p.add_argument("--k-stat", type=int, default=S, help="prime p")
    p.add_argument("--k-dist", type=int, default=S, help="n")
    p.add_argument("--X", default=S)

    p = sub.add_parser("report-merge", help="add counter files together")
    p.add_argument("files", nargs="*", default=S)
    p.add_argument("--out", default=S)
    return parser


def resolve(argv=None) -> tuple[str, dict, bool]:
    """(command, resolved options, emit_fixture); raises ConfigError on unknown keys."""
    args = build_parser().parse_args(argv)
    command = args.command.replace("-", "_")
    cfg = dict(DEFAULTS[command])
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        data.pop("command", None)
        unknown = sorted(set(data) - set(cfg))
        if unknown:
            raise ConfigError(f"unknown config keys for {command}: {', '.join(unknown)}")
        cfg.update(data)
    explicit = {k: v for k, v in vars(args).items()
                if k not in ("command", "config", "emit_fixture")}
    cfg.update(explicit)
    return command, cfg, args.emit_fixture


def main(argv=None) -> int:
    try:
        command, cfg, emit = resolve(argv)
    except ConfigError as exc:
        print(json.dumps({"error": "ConfigError", "message": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    if emit:
        _emit({"command": command, **cfg}, None)
        return EXIT_OK
    try:
        return COMMANDS[command](cfg)
    except (ConfigError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_CONFIG
    except SplitRootsError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
