"""Command-line entry point.

Usage::

    harrisar {sample,simulate,verify,report} [--config FILE] [--seed N] [--out DIR]
             [--check NAME] [--paths N] [--steps N] [--samples N]

The config is a JSON object; flags override its fields. Exit status is 0 on
success, 1 when a verification check fails and 2 for usage or config errors.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from harrisar import processes, verify
from harrisar.exponent import DomainError, ParameterError, RangeError, Tail, make_exponent
from harrisar.laws import (
    DiscreteGenSemiMLLaw,
    GammaMaxSemiStableLaw,
    GenSemiAlphaLaplaceLaw,
    GenSemiMLLaw,
    GenSemiParetoLaw,
    HarrisCompoundLaw,
    HarrisLaw,
    MaxSemiStableLaw,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG = 0, 1, 2
COMMANDS = ("sample", "simulate", "verify", "report")

TOP_KEYS = {"command", "law", "scheme", "n_steps", "n_paths", "n_samples", "seed", "out", "check", "grid", "inputs"}
LAW_KEYS = {"family", "lam", "alpha", "beta", "b", "k", "m", "a"}
SCHEME_KEYS = {"combiner", "b", "p", "k", "randomized", "coin_mode", "burn_in", "innovation"}
GRID_KEYS = {"points_per_decade", "decades"}

# family -> (class, tail of the exponent)
FAMILIES = {
    "semi_alpha_laplace": (GenSemiAlphaLaplaceLaw, Tail.INCREASING),
    "semi_mittag_leffler": (GenSemiMLLaw, Tail.INCREASING),
    "discrete_semi_mittag_leffler": (DiscreteGenSemiMLLaw, Tail.INCREASING),
    "semi_pareto": (GenSemiParetoLaw, Tail.INCREASING),
    "gamma_max_semi_stable": (GammaMaxSemiStableLaw, Tail.DECREASING),
    "max_semi_stable": (MaxSemiStableLaw, Tail.DECREASING),
    "harris": (HarrisLaw, None),
}
_FOLD_OF = {"add": "sum", "max": "max", "min": "min"}


class ConfigError(Exception):
    """Invalid configuration; ``str`` carries a location prefix."""


class _Source:
    """Config text kept around to point errors at lines."""

    def __init__(self, name="<flags>", text=""):
        self.name = name
        self.text = text

    def where(self, key):
        if self.text:
            for i, line in enumerate(self.text.splitlines(), 1):
                if f'"{key}"' in line:
                    return f"{self.name}:{i}"
            return f"{self.name}:1"
        return self.name

    def error(self, key, msg):
        return ConfigError(f"{self.where(key)}: {msg}")


# ---------------------------------------------------------------- config


def load_config(path):
    """Parse a JSON config file. Returns ``(dict, source)``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"{path}: cannot read config ({err.strerror})") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}:{err.lineno}: invalid JSON ({err.msg})") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}:1: config must be a JSON object")
    return data, _Source(str(path), text)


def _reject_unknown(obj, allowed, src, section):
    if not isinstance(obj, dict):
        raise src.error(section, f"'{section}' must be an object")
    for key in obj:
        if key not in allowed:
            raise src.error(key, f"unknown key '{key}' in {section} (allowed: {', '.join(sorted(allowed))})")


def _number(obj, key, src, default=None, integer=False, lo=None, hi=None, lo_open=False, hi_open=False):
    val = obj.get(key, default)
    if val is None:
        raise src.error(key, f"missing required key '{key}'")
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise src.error(key, f"'{key}' must be a number, got {val!r}")
    if integer and int(val) != val:
        raise src.error(key, f"'{key}' must be an integer, got {val!r}")
    if not math.isfinite(val):
        raise src.error(key, f"'{key}' must be finite")
    if lo is not None and (val <= lo if lo_open else val < lo):
        raise src.error(key, f"'{key}' must be {'>' if lo_open else '>='} {lo}, got {val!r}")
    if hi is not None and (val >= hi if hi_open else val > hi):
        raise src.error(key, f"'{key}' must be {'<' if hi_open else '<='} {hi}, got {val!r}")
    return int(val) if integer else float(val)


def resolve_config(command, data, src, flags):
    """Merge flags over the file, validate ranges and fill defaults."""
    _reject_unknown(data, TOP_KEYS, src, "config")
    if "command" in data and data["command"] != command:
        raise src.error("command", f"config is for '{data['command']}' but '{command}' was requested")
    cfg = dict(data)
    cfg["command"] = command
    flag_src = _Source()
    cfg.update({k: v for k, v in flags.items() if v is not None})

    def which(key):
        return flag_src if flags.get(key) is not None else src

    out = {"command": command}
    out["seed"] = _number(cfg, "seed", which("seed"), 0, integer=True, lo=0)
    out["out"] = str(cfg.get("out", "."))
    if command == "sample":
        out["n_samples"] = _number(cfg, "n_samples", which("n_samples"), 1000, integer=True, lo=1)
        out["law"] = _law_config(cfg.get("law"), src)
    elif command == "simulate":
        out["n_steps"] = _number(cfg, "n_steps", which("n_steps"), 100, integer=True, lo=1)
        out["n_paths"] = _number(cfg, "n_paths", which("n_paths"), 1, integer=True, lo=1)
        out["law"] = _law_config(cfg.get("law"), src)
        out["scheme"] = _scheme_config(cfg.get("scheme"), out["law"], src)
    elif command == "verify":
        check = cfg.get("check", "all")
        if check != "all" and check not in verify.SUITE:
            raise which("check").error(
                "check", f"unknown check '{check}' (known: all, {', '.join(verify.SUITE)})"
            )
        out["check"] = check
        grid = cfg.get("grid", {})
        _reject_unknown(grid, GRID_KEYS, src, "grid")
        out["grid"] = {
            "points_per_decade": _number(grid, "points_per_decade", src, 256, integer=True, lo=2),
            "decades": _number(grid, "decades", src, 4, integer=True, lo=1, hi=12),
        }
    else:
        inputs = cfg.get("inputs", [os.path.join(out["out"], "report.json")])
        if isinstance(inputs, str):
            inputs = [inputs]
        if not isinstance(inputs, list) or not all(isinstance(p, str) for p in inputs) or not inputs:
            raise src.error("inputs", "'inputs' must be a nonempty list of report paths")
        out["inputs"] = inputs
    for key in ("law", "scheme", "n_steps", "n_paths", "n_samples", "check", "grid", "inputs"):
        if key in cfg and key not in out:
            raise which(key).error(key, f"'{key}' is not used by the '{command}' command")
    return out


def _law_config(law, src):
    if law is None:
        raise src.error("law", "missing required section 'law'")
    _reject_unknown(law, LAW_KEYS, src, "law")
    family = law.get("family")
    if family not in FAMILIES:
        raise src.error("family", f"unknown family {family!r} (known: {', '.join(FAMILIES)})")
    out = {"family": family}
    if family == "harris":
        out["a"] = _number(law, "a", src, lo=1.0, lo_open=True)
        out["k"] = _number(law, "k", src, 1, integer=True, lo=1)
        extra = set(law) - {"family", "a", "k"}
    else:
        out["lam"] = _number(law, "lam", src, 1.0, lo=0.0, lo_open=True)
        out["alpha"] = _number(law, "alpha", src, lo=0.0, lo_open=True)
        out["beta"] = _number(law, "beta", src, 0.0)
        out["b"] = _number(law, "b", src, 0.5, lo=0.0, hi=1.0, lo_open=True, hi_open=True)
        allowed = {"family", "lam", "alpha", "beta", "b"}
        if family != "max_semi_stable":
            out["k"] = _number(law, "k", src, 1, integer=True, lo=1)
            allowed.add("k")
        if family == "discrete_semi_mittag_leffler":
            out["m"] = _number(law, "m", src, 1, integer=True, lo=1)
            allowed.add("m")
        extra = set(law) - allowed
    if extra:
        key = sorted(extra)[0]
        raise src.error(key, f"'{key}' does not apply to family '{family}'")
    try:
        build_law(out)
    except (ParameterError, DomainError, RangeError) as err:
        raise src.error("family", f"invalid law parameters: {err}") from None
    return out


def build_law(cfg):
    cls, tail = FAMILIES[cfg["family"]]
    if tail is None:
        return cls(cfg["a"], cfg["k"])
    exp = make_exponent(cfg["lam"], cfg["alpha"], cfg["beta"], cfg["b"], tail)
    if cls is MaxSemiStableLaw:
        return cls(exp)
    if cls is DiscreteGenSemiMLLaw:
        return cls(exp, cfg["k"], cfg["m"])
    return cls(exp, cfg["k"])


def _scheme_config(scheme, law_cfg, src):
    if scheme is None:
        raise src.error("scheme", "missing required section 'scheme'")
    _reject_unknown(scheme, SCHEME_KEYS, src, "scheme")
    comb = scheme.get("combiner")
    try:
        comb = processes.Combiner(comb).value
    except ValueError:
        raise src.error("combiner", f"unknown combiner {comb!r} (known: add, max, min, thinned_add)") from None
    if law_cfg["family"] == "harris":
        raise src.error("family", "the harris law is a counting law, not an innovation")
    out = {"combiner": comb}
    out["randomized"] = bool(scheme.get("randomized", True))
    if not isinstance(scheme.get("randomized", True), bool):
        raise src.error("randomized", "'randomized' must be true or false")
    b_exp = law_cfg["b"]
    matched_b = 1.0 / b_exp if comb == "min" else b_exp
    alpha = law_cfg["alpha"]
    b = scheme.get("b", "matched")
    out["b"] = matched_b if b == "matched" else _number(scheme, "b", src)
    if out["randomized"]:
        p = scheme.get("p", "matched")
        out["p"] = b_exp**alpha if p == "matched" else _number(scheme, "p", src, lo=0.0, hi=1.0, lo_open=True, hi_open=True)
    elif "p" in scheme:
        raise src.error("p", "'p' requires \"randomized\": true")
    out["k"] = _number(scheme, "k", src, law_cfg.get("k", 1), integer=True, lo=1)
    coin = scheme.get("coin_mode", "shared")
    if coin not in ("shared", "per_component"):
        raise src.error("coin_mode", f"unknown coin_mode {coin!r} (known: shared, per_component)")
    out["coin_mode"] = coin
    out["burn_in"] = _number(scheme, "burn_in", src, 0, integer=True, lo=0)
    innov = scheme.get("innovation", "law" if out["randomized"] else "residual")
    if innov not in ("law", "residual"):
        raise src.error("innovation", f"innovation must be 'law' or 'residual', got {innov!r}")
    if innov == "residual" and comb == "thinned_add":
        raise src.error("innovation", "residual innovations are not available for thinned schemes")
    out["innovation"] = innov
    try:
        build_scheme(out, build_law(law_cfg))
    except (ParameterError, DomainError) as err:
        raise src.error("combiner", f"invalid scheme: {err}") from None
    return out


def build_scheme(cfg, law):
    innov = law
    if cfg["innovation"] == "residual":
        a = law.exponent.a
        k = getattr(law, "k", 1)
        innov = HarrisCompoundLaw(law, a, k, cfg["b"], _FOLD_OF[cfg["combiner"]])
    return processes.SchemeSpec(
        cfg["combiner"], cfg["b"], innov, k=cfg["k"], randomized=cfg["randomized"],
        p=cfg.get("p"), coin_mode=cfg["coin_mode"], burn_in=cfg["burn_in"],
    )


def config_hash(cfg):
    """SHA-256 of the resolved config without the output location."""
    body = {k: v for k, v in cfg.items() if k != "out"}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


# ---------------------------------------------------------------- output


def atomic_write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _header(cfg):
    return f"# config_sha256={config_hash(cfg)} seed={cfg['seed']}\n"


def _fmt(v):
    if isinstance(v, (int, np.integer)) or (isinstance(v, float) and v.is_integer() and abs(v) < 2**53):
        return str(int(v))
    return "%.17g" % v


def run_sample(cfg):
    law = build_law(cfg["law"])
    rng = np.random.default_rng(np.random.SeedSequence(cfg["seed"]))
    draws = np.asarray(law.sample(rng, cfg["n_samples"]))
    integer = np.issubdtype(draws.dtype, np.integer)
    buf = io.StringIO()
    buf.write(_header(cfg))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value"])
    for i, v in enumerate(draws):
        w.writerow([i, str(int(v)) if integer else "%.17g" % v])
    atomic_write(Path(cfg["out"]) / "samples.csv", buf.getvalue())
    return EXIT_OK


def run_simulate(cfg):
    spec = build_scheme(cfg["scheme"], build_law(cfg["law"]))
    ens = processes.simulate_ensemble(spec, cfg["n_steps"], cfg["n_paths"], cfg["seed"])
    target = Path(cfg["out"]) / "trajectories.csv"
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=".trajectories.", suffix=".tmp")
    os.close(fd)
    try:
        processes.write_trajectories_csv(ens, tmp, comment=_header(cfg)[2:-1])
        os.replace(tmp, target)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return EXIT_OK


def run_verify(cfg):
    names = None if cfg["check"] == "all" else [cfg["check"]]
    reports = verify.run_suite(names, grid=cfg["grid"])
    n_failed = sum(not r.passed for r in reports)
    doc = {
        "header": {"config_sha256": config_hash(cfg), "seed": cfg["seed"]},
        "summary": {"n_checks": len(reports), "n_failed": n_failed, "passed": n_failed == 0},
        "reports": [r.to_dict() for r in reports],
    }
    atomic_write(Path(cfg["out"]) / "report.json", json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    for r in reports:
        if not r.passed:
            print(f"FAIL {r.check_name}: residual {r.max_residual:.3e} vs threshold {r.threshold:.1e}", file=sys.stderr)
    print(f"{len(reports) - n_failed}/{len(reports)} checks passed")
    return EXIT_OK if n_failed == 0 else EXIT_CHECK_FAILED


def run_report(cfg):
    rows = []
    for path in cfg["inputs"]:
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
            reports = doc["reports"] if isinstance(doc, dict) else doc
        except OSError as err:
            raise ConfigError(f"{path}: cannot read report ({err.strerror})") from None
        except (json.JSONDecodeError, KeyError, TypeError) as err:
            raise ConfigError(f"{path}: not a report file ({err})") from None
        for r in reports:
            rows.append([path, r["check_name"], r["max_residual"], r["threshold"], r.get("expect", "below"), r["passed"]])
    buf = io.StringIO()
    buf.write(_header(cfg))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "check_name", "max_residual", "threshold", "expect", "passed"])
    w.writerows(rows)
    atomic_write(Path(cfg["out"]) / "summary.csv", buf.getvalue())
    return EXIT_OK if all(r[-1] for r in rows) else EXIT_CHECK_FAILED


RUNNERS = {"sample": run_sample, "simulate": run_simulate, "verify": run_verify, "report": run_report}


def build_parser():
    ap = argparse.ArgumentParser(prog="harrisar", description="Harris-stable laws and AR(1) schemes.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", help="JSON config file")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--out", help="output directory")
    ap.add_argument("--check", help="verification group (default: all)")
    ap.add_argument("--paths", type=int, dest="n_paths")
    ap.add_argument("--steps", type=int, dest="n_steps")
    ap.add_argument("--samples", type=int, dest="n_samples")
    return ap


def run(command, data=None, src=None, **flags):
    """Validate a config dict and execute it. Returns the exit status."""
    src = src or _Source("<config>", json.dumps(data or {}, indent=1))
    cfg = resolve_config(command, data or {}, src, flags)
    return RUNNERS[command](cfg)


def main(argv=None):
    args = build_parser().parse_args(argv)
    flags = {k: getattr(args, k) for k in ("seed", "out", "check", "n_paths", "n_steps", "n_samples")}
    try:
        if args.config:
            data, src = load_config(args.config)
        else:
            data, src = {}, _Source()
        cfg = resolve_config(args.command, data, src, flags)
        return RUNNERS[args.command](cfg)
    except ConfigError as err:
        print(f"harrisar: config error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
