"""Command-line front end.

    twyang VERB [flags]

Every verb writes one JSON report (stdout, or --out) and a one-line summary on
stderr.  Exit status: 0 when nothing failed, 1 when some instance failed,
2 for usage or configuration errors.  A JSON config file (--config) may hold
any flag under its long name; flags given on the command line win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone

from .conventions import AI, AII

VERBS = ("verify", "gauss", "sdet", "qdet", "pyramid", "shapes", "ideal",
         "deltaR", "miura", "center", "pfaffian", "grcheck")

# flag name -> (type, help)
FLAGS = {
    "type": (str, "AI or AII"),
    "n": (int, "matrix size N"),
    "shape": (str, "composition of N, e.g. 2,1"),
    "sigma": (str, "shift matrix, rows separated by ';'"),
    "level": (int, "truncation level l"),
    "bound": (int, "superscript bound"),
    "cutoff": (int, "series cutoff"),
    "jobs": (int, "worker processes"),
    "out": (str, "report path (default stdout)"),
    "format": (str, "report format (json)"),
    "s12": (int, "shift s_12 for N = 2"),
    "check": (str, "extra check (central)"),
    "families": (str, "comma-separated relation families"),
    "window": (int, "Pfaffian window index k"),
    "pairs": (int, "number of sampled pairs"),
    "seed": (int, "random seed"),
}


class UsageError(Exception):
    pass


# -- configuration --------------------------------------------------------------------------

def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    out = {}
    for key, val in data.items():
        k = key.replace("-", "_")
        if k not in FLAGS:
            raise UsageError(f"unknown config key {key!r}")
        typ = FLAGS[k][0]
        if val is not None and not isinstance(val, typ):
            if typ is str and isinstance(val, list):
                val = ",".join(str(v) for v in val)
            else:
                try:
                    val = typ(val)
                except (TypeError, ValueError):
                    raise UsageError(f"config key {key!r} should be {typ.__name__}") from None
        out[k] = val
    return out


def merged_config(args: argparse.Namespace) -> dict:
    cfg = load_config(args.config) if args.config else {}
    for k in FLAGS:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    if cfg.get("format", "json") != "json":
        raise UsageError("only --format json is supported")
    if cfg.get("type", AI) not in (AI, AII):
        raise UsageError("--type must be AI or AII")
    for k in ("bound", "cutoff", "jobs", "level", "n"):
        if k in cfg and cfg[k] is not None and cfg[k] < 1:
            raise UsageError(f"--{k} must be at least 1")
    return cfg


def _sign(cfg) -> str:
    return cfg.get("type") or AI


def _sigma(cfg, N=None):
    from .shifted import ShiftMatrix
    if cfg.get("sigma"):
        sig = ShiftMatrix.parse(cfg["sigma"])
        if N is not None and sig.N != N:
            raise UsageError(f"sigma is {sig.N}x{sig.N} but --n is {N}")
        return sig
    if cfg.get("s12") is not None:
        if N not in (None, 2):
            raise UsageError("--s12 needs N = 2")
        s = cfg["s12"]
        return ShiftMatrix([[0, s], [s, 0]])
    return None


def _N(cfg, required=True):
    N = cfg.get("n")
    if N is None:
        sig = _sigma(cfg)
        if sig is not None:
            return sig.N
        if cfg.get("s12") is not None:
            return 2
        if required:
            raise UsageError("--n is required")
    return N


def _shape(cfg, sign, N, default=None):
    from .parabolic import Shape
    if cfg.get("shape"):
        return Shape.parse(cfg["shape"]).check(sign, N)
    if default is not None:
        return default
    return Shape([1] * N) if sign == AI else Shape([2] * (N // 2))


def _truncation(cfg):
    from .shifted import TruncatedCtx
    sign, N = _sign(cfg), _N(cfg)
    if cfg.get("level") is None:
        raise UsageError("--level is required")
    sig = _sigma(cfg, N)
    return TruncatedCtx.build(sign, N, sig.rows if sig is not None else None, cfg["level"],
                              cfg.get("shape"))


# -- verbs --------------------------------------------------------------------------------

def _verify_family(cfg: dict, family: str) -> list:
    from .morphisms import yangian_shifted
    from .relations import DrinfeldImages, run_drinfeld, run_suite
    from .twisted import TwistedCtx
    sign, N = _sign(cfg), _N(cfg)
    tctx = TwistedCtx(sign, N)
    shape = _shape(cfg, sign, N)
    sig = _sigma(cfg, N)
    bound = cfg.get("bound") or 4
    P = yangian_shifted(tctx, shape, sig, max(cfg.get("cutoff") or 0, bound + 1))
    if family == "drinfeld":
        reps = run_drinfeld(DrinfeldImages(P), min(bound, 3))
    else:
        reps = run_suite(P, [family], bound, shifted_z=sig is not None)
    return [r.to_json() for r in reps]


def cmd_verify(cfg):
    from .relations import RELATIONS, default_families
    from .twisted import TwistedCtx
    sign, N = _sign(cfg), _N(cfg)
    TwistedCtx(sign, N)
    shape = _shape(cfg, sign, N)
    fams = cfg["families"].split(",") if cfg.get("families") else default_families(sign)
    for f in fams:
        if f not in RELATIONS and f != "drinfeld":
            raise UsageError(f"unknown relation family {f!r}")
    jobs = cfg.get("jobs") or 1
    if jobs > 1 and len(fams) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_verify_family, [cfg] * len(fams), fams))
    else:
        parts = [_verify_family(cfg, f) for f in fams]
    results = [r for part in parts for r in part]
    return results, {"shape": list(shape.parts), "families": fams, "bound": cfg.get("bound") or 4}


def cmd_gauss(cfg):
    from .consistency import gauss_suite
    sign, N = _sign(cfg), _N(cfg)
    shape = _shape(cfg, sign, N)
    cutoff = cfg.get("cutoff") or 6
    reps = gauss_suite(sign, N, shape, cutoff, min(cutoff, 5))
    return [r.to_json() for r in reps], {"shape": list(shape.parts), "cutoff": cutoff}


def cmd_sdet(cfg):
    from .consistency import check_sdetdecomp
    from .twisted import TwistedCtx, centrality_check, sdet
    sign, N = _sign(cfg), _N(cfg)
    tctx = TwistedCtx(sign, N)
    cutoff = cfg.get("cutoff") or 6
    c = sdet(tctx, cutoff)
    out = []
    if cfg.get("check") == "central":
        bound = cfg.get("bound") or 3
        for r in range(1, cutoff + 1):
            t0 = time.perf_counter()
            rep = centrality_check(c.coeff(r), tctx, bound, label=f"c{r}-central")
            rep.seconds = time.perf_counter() - t0
            out.append(rep.to_json())
    elif cfg.get("check"):
        raise UsageError("--check accepts only 'central'")
    if cfg.get("shape"):
        out += [r.to_json() for r in check_sdetdecomp(tctx, _shape(cfg, sign, N), cutoff)]
    data = {"coefficients": {str(r): str(c.coeff(r)) for r in range(cutoff + 1)}, "cutoff": cutoff}
    return out, data


def cmd_qdet(cfg):
    from .ncpoly import NCPoly, YangianCtx
    from .twisted import Report, qdet
    N = _N(cfg)
    Y = YangianCtx(N)
    cutoff = cfg.get("cutoff") or 4
    q = qdet(Y, cutoff)
    out = []
    if cfg.get("check") == "central":
        bound = cfg.get("bound") or 2
        for r in range(1, cutoff + 1):
            t0 = time.perf_counter()
            z, bad = q.coeff(r), None
            for i in range(1, N + 1):
                for j in range(1, N + 1):
                    for s in range(1, bound + 1):
                        w = z.bracket(NCPoly(Y, Y.t(i, j, s)))
                        if bad is None and not w.is_zero():
                            bad = w
            out.append(Report(f"qdet{r}-central", {"level_bound": bound}, "fail" if bad else "pass",
                              bad, time.perf_counter() - t0).to_json())
    elif cfg.get("check"):
        raise UsageError("--check accepts only 'central'")
    return out, {"coefficients": {str(r): str(q.coeff(r)) for r in range(cutoff + 1)}, "cutoff": cutoff}


def cmd_pyramid(cfg):
    from .shifted import pyramid_to_sigma, sigma_to_pyramid
    from .twisted import Report
    sig = _sigma(cfg)
    if sig is None or cfg.get("level") is None:
        raise UsageError("pyramid needs --sigma and --level")
    t0 = time.perf_counter()
    P = sigma_to_pyramid(sig, cfg["level"])
    back, level = pyramid_to_sigma(P)
    ok = back.rows == sig.rows and level == cfg["level"]
    rep = Report("pyramid-roundtrip", {"sigma": sig.format(), "level": level}, "pass" if ok else "fail",
                 None if ok else back.format(), time.perf_counter() - t0)
    data = {"rows": P.format(), "columns": P.columns(), "N": P.N, "level": P.level}
    return [rep.to_json()], data


def cmd_shapes(cfg):
    from .shifted import ShiftMatrix, admissible_shapes, dot_sigma, minimal_shape
    sign = _sign(cfg)
    sig = _sigma(cfg, cfg.get("n"))
    if sig is None:
        sig = ShiftMatrix.zero(_N(cfg))
    mu = minimal_shape(sig)
    data = {"minimal": list(mu.parts),
            "admissible": [list(s.parts) for s in admissible_shapes(sig, sign=sign)],
            "sigma_dot": None if sig.is_zero() else dot_sigma(sig, mu).format()}
    return [], data


def cmd_ideal(cfg):
    from .shifted import centralizer_dimension, label_str, truncated_pbw_generators, truncation_ideal_generators
    from .twisted import Report
    tr = _truncation(cfg)
    ceiling = tr.p_block(1) + (cfg.get("bound") or 4)
    gens = truncation_ideal_generators(tr, ceiling)
    inv = truncated_pbw_generators(tr)
    dim = centralizer_dimension(tr)
    rep = Report("inventory-dimension", {"generators": len(inv), "dimension": dim},
                 "pass" if len(inv) == dim else "fail")
    data = {"context": tr.describe(), "ceiling": ceiling,
            "ideal": [{"name": name, "expr": str(e)} for name, e in gens],
            "inventory": [label_str(g) for g in inv]}
    return [rep.to_json()], data


def cmd_deltaR(cfg):
    from .morphisms import delta_R_setup, delta_R_verify
    sign = _sign(cfg)
    sig = _sigma(cfg, cfg.get("n"))
    if sig is None:
        raise UsageError("deltaR needs --sigma or --s12")
    bound = cfg.get("bound") or 4
    counit = max(bound + 1, 5)
    setup = delta_R_setup(sign, sig, cfg.get("shape"), cutoff=max(cfg.get("cutoff") or 0, 2 * bound, counit))
    reps = delta_R_verify(setup, bound, counit_level=counit)
    data = {"shape": list(setup.shape.parts), "t": setup.t, "sigma_dot": setup.sigma_dot.format()}
    return [r.to_json() for r in reps], data


def cmd_miura(cfg):
    from .morphisms import miura_verify, MiuraPlan
    tr = _truncation(cfg)
    reps = miura_verify(tr, cfg.get("bound") or 4)
    return [r.to_json() for r in reps], {"context": tr.describe(), "plan": MiuraPlan(tr).describe()}


def cmd_center(cfg):
    from .center import center_series, center_verify, prefactor
    tr = _truncation(cfg)
    cs = center_series(tr, cfg.get("bound") or 3)
    reps = center_verify(tr, cs.extra, cs)
    data = {"context": tr.describe(), "M": tr.M, "m": tr.m, "qtilde": tr.qtilde(),
            "prefactor": [str(c) for c in prefactor(tr)], "sign_normalization": cs.sign_normalization}
    return [r.to_json() for r in reps], data


def cmd_pfaffian(cfg):
    from .center import pfaffian_candidate, pfaffian_verify
    cfg = dict(cfg)
    cfg.setdefault("n", 2)
    cfg["type"] = cfg.get("type") or AI
    tr = _truncation(cfg)
    reps = pfaffian_verify(tr, cfg.get("window"))
    pf = pfaffian_candidate(tr, 1, cfg.get("window"))
    data = {"context": tr.describe(), "pf": str(pf)}
    if tr.sigma.is_zero() and any(r.relation == "pf-equals-minus-s12" and r.ok for r in reps):
        data["equals"] = f"-s12^({tr.level})"
    return [r.to_json() for r in reps], data


def cmd_grcheck(cfg):
    from .gr import current_lie, gr_bracket_check
    from .twisted import Report
    sign, N = _sign(cfg), _N(cfg)
    bound = cfg.get("bound") or 4
    t0 = time.perf_counter()
    lie = current_lie(sign, N, 2 * bound - 1)
    bad = lie.check_jacobi() + lie.check_antisymmetry()
    out = [Report("current-jacobi", {"D": lie.D, "dimension": lie.dimension}, "fail" if bad else "pass",
                  None, time.perf_counter() - t0, f"{len(bad)} failing triples" if bad else "").to_json()]
    reps = gr_bracket_check(N, sign, _sigma(cfg, N), bound, shape=cfg.get("shape"),
                            pairs=cfg.get("pairs"), seed=cfg.get("seed") or 0)
    return out + [r.to_json() for r in reps], {"bound": bound}


HANDLERS = {v: globals()[f"cmd_{v}"] for v in VERBS}


# -- entry point -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override it")
    for name, (typ, hlp) in FLAGS.items():
        common.add_argument(f"--{name}", type=typ, default=None, help=hlp)
    p = argparse.ArgumentParser(prog="twyang", description="Exact checks for twisted Yangians and their truncations.")
    sub = p.add_subparsers(dest="verb", required=True)
    for v in VERBS:
        sub.add_parser(v, parents=[common], help=HANDLERS[v].__name__.replace("cmd_", ""))
    return p


def summarize(results) -> dict:
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        out[r["status"]] += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = merged_config(args)
        t0 = time.perf_counter()
        results, data = HANDLERS[args.verb](cfg)
    except UsageError as exc:
        print(f"twyang {args.verb}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, NotImplementedError) as exc:
        print(f"twyang {args.verb}: invalid input: {exc}", file=sys.stderr)
        return 2
    summary = summarize(results)
    status = "fail" if summary["fail"] else "pass"
    report = {"verb": args.verb, "config": cfg, "status": status, "summary": summary,
              "data": data, "results": results,
              "seconds": round(time.perf_counter() - t0, 4),
              "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds")}
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if cfg.get("out"):
        with open(cfg["out"], "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    line = f"twyang {args.verb}: {status} ({summary['pass']} pass, {summary['fail']} fail, {summary['skipped']} skipped)"
    print(line, file=sys.stderr)
    for r in results:
        if r["status"] == "fail":
            print(f"  first failure: {r['relation']} {json.dumps(r['assignment'], sort_keys=True)}", file=sys.stderr)
            break
    if os.environ.get("TWYANG_CORRUPT") and summary["fail"]:
        print("  (a relation was corrupted through TWYANG_CORRUPT)", file=sys.stderr)
    return 1 if summary["fail"] else 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
