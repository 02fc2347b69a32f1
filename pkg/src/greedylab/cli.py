"""Command-line front end: ``greedylab <subcommand> [options]``.

Every option can also be given in a JSON config file (``--config``) whose
keys match the long option names; explicit flags win over the file. JSON
reports embed the fully resolved config and floats are written with 17
significant digits so identical configs give identical bytes.

Exit codes: 0 success or pass, 1 verification failure, 2 usage or config
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import classes, democracy, errors, greedy, lorentz, verify, weights
from .greedy import TieOverflowError
from .spaces import Space, SparseVector, parse_space

__all__ = ["RunConfig", "dumps", "main", "run"]

SUBCOMMANDS = (
    "norm",
    "tga",
    "errors",
    "classnorm",
    "sweep",
    "lorentz",
    "weight",
    "democracy",
    "constants",
    "verify",
    "witness",
)
THEOREMS = ("ap", "bernstein", "jackson", "equivalence", "witness")

DEFAULTS = {
    "space": "lp:2",
    "vector": None,
    "w": "power:0.25",
    "q": "2",
    "N": None,
    "seed": 0,
    "trials": 200,
    "format": "json",
    "output": None,
    "cap": greedy.DEFAULT_CAP,
    "budget": 256,
    "sizes": "4,8,16",
    "generator": "mixed",
    "kind": "all",
    "theorem": None,
    "side": "left_h_l",
    "k": 2,
    "ks": "2,3,4",
    "delta": 1e-6,
    "eta": "power:0.5",
    "kappa": 2,
}


class ConfigError(Exception):
    """Usage or configuration problem; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.options[key]

    def resolved(self) -> dict:
        return {"command": self.command, **self.options}


# ---------------------------------------------------------------- output


def _plain(obj):
    if isinstance(obj, SparseVector):
        return {str(k): v for k, v in obj.to_dict().items()}
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _num(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with floats written as ``%.17g``."""
    obj = _plain(obj) if _level == 0 else obj
    pad, inner = " " * (indent * _level), " " * (indent * (_level + 1))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(dumps(v, indent, _level + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + dumps(v, indent, _level + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, float):
        return _num(obj)
    return json.dumps(obj)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([format(v, ".17g") if isinstance(v, (float, np.floating)) else _csv_cell(v) for v in row])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (list, tuple)):
        return " ".join(str(x) for x in v)
    return v


# ---------------------------------------------------------------- parsing


def _parse_q(text) -> float:
    s = str(text).strip().lower()
    if s in ("inf", "infinity"):
        return math.inf
    try:
        q = float(s)
    except ValueError:
        raise ConfigError(f"q must be a positive number or 'inf', got {text!r}") from None
    if not q > 0:
        raise ConfigError(f"q must be > 0, got {text!r}")
    return q


def _parse_ints(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    try:
        return tuple(int(x) for x in str(text).split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from None


def _load_json(text: str, where: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON in {where}: {e.msg} at line {e.lineno}, column {e.colno}") from None


def _parse_vector(spec) -> SparseVector:
    if spec is None:
        raise ConfigError("this subcommand needs --vector")
    if isinstance(spec, dict):
        data = spec
    elif str(spec).lstrip().startswith("{"):
        data = _load_json(spec, "--vector")
    else:
        path = str(spec)
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as e:
            raise ConfigError(f"cannot read vector file {path}: {e.strerror}") from None
        if path.endswith(".json"):
            data = _load_json(text, path)
        else:
            data = {}
            for row in csv.reader(io.StringIO(text)):
                if not row or not row[0].strip():
                    continue
                try:
                    data[int(row[0])] = float(row[1])
                except (ValueError, IndexError):
                    if data:
                        raise ConfigError(f"bad CSV row in {path}: {row}") from None
                    # header row
    try:
        return SparseVector.from_dict(data)
    except (ValueError, TypeError) as e:
        raise ConfigError(f"invalid vector: {e}") from None


def _space(cfg) -> Space:
    try:
        return parse_space(cfg["space"])
    except (ValueError, TypeError) as e:
        raise ConfigError(f"invalid space {cfg['space']!r}: {e}") from None


def _weight(spec) -> weights.Weight:
    try:
        return weights.parse_weight(spec)
    except (ValueError, TypeError) as e:
        raise ConfigError(f"invalid weight {spec!r}: {e}") from None


def _threads() -> int:
    raw = os.environ.get("GREEDYLAB_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"GREEDYLAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"GREEDYLAB_THREADS must be a positive integer, got {raw!r}")
    return n


# ---------------------------------------------------------------- commands


def _h_r_table(space, N):
    tab = democracy.democracy_table(space, N)
    return tab.h_r


def cmd_norm(cfg):
    sp, f = _space(cfg), _parse_vector(cfg["vector"])
    val = sp.norm(f)
    return {"norm": val}, (["norm"], [[val]]), 0


def cmd_tga(cfg):
    sp, f = _space(cfg), _parse_vector(cfg["vector"])
    N = cfg["N"] if cfg["N"] is not None else len(f)
    order = greedy.greedy_ordering(f)
    rows = []
    for m in range(N + 1):
        A = sorted(order[:m])
        approx = f.restrict(A)
        rows.append([m, A, sp.norm(approx), sp.norm(f - approx)])
    header = ["m", "greedy_set", "approximant_norm", "residual_norm"]
    return {"rows": [dict(zip(header, r)) for r in rows]}, (header, rows), 0


def cmd_errors(cfg):
    sp, f = _space(cfg), _parse_vector(cfg["vector"])
    N = cfg["N"] if cfg["N"] is not None else len(f)
    prof = errors.error_profile(sp, f, N, cfg["cap"], cfg["seed"])
    header = ["n", "sigma", "sigma_tilde", "gamma", "theta", "gamma_status", "theta_status"]
    rows = [list(r) for r in prof.rows()]
    return {"rows": [dict(zip(header, r)) for r in rows], "certificates": prof.certificates}, (header, rows), 0


def cmd_classnorm(cfg):
    sp, f = _space(cfg), _parse_vector(cfg["vector"])
    params = classes.ClassParams(_weight(cfg["w"]), _parse_q(cfg["q"]))
    h_r = None
    if sp.family != "summing_c0":
        h_r = _h_r_table(sp, max(len(f), 1))
    cn = classes.class_norms(sp, f, params, h_r=h_r, cap=cfg["cap"], seed=cfg["seed"])
    out = {"A": cn.a_norm, "G": cn.g_norm, "CG": cn.cg_norm, "lorentz_ref": cn.lorentz_ref, "sampled": cn.sampled}
    out["chain_holds"] = cn.chain_holds()
    header = list(out)
    return out, (header, [[out[k] for k in header]]), 0


def cmd_sweep(cfg):
    sp = _space(cfg)
    params = classes.ClassParams(_weight(cfg["w"]), _parse_q(cfg["q"]))
    sizes = _parse_ints(cfg["sizes"])
    if cfg["generator"] not in classes.GENERATORS + ("mixed",):
        raise ConfigError(f"unknown generator {cfg['generator']!r}")
    tab = democracy.democracy_table(sp, max(sizes), budget=cfg["budget"], seed=cfg["seed"])
    rep = classes.ratio_sweep(sp, params, tab.h_r, sizes, cfg["trials"], cfg["seed"], cfg["generator"], cfg["cap"])
    header = ["size", "ratio", "max_value"]
    return rep.to_dict(), (header, [list(r) for r in rep.rows()]), 0


def cmd_lorentz(cfg):
    f = _parse_vector(cfg["vector"])
    lp = lorentz.LorentzParams(_weight(cfg["eta"]), _parse_q(cfg["q"]), int(cfg["kappa"]))
    full, dy = lorentz.lorentz_norm(f, lp), lorentz.dyadic_lorentz_norm(f, lp)
    out = {"lorentz": full, "dyadic": dy}
    return out, (["lorentz", "dyadic"], [[full, dy]]), 0


def cmd_weight(cfg):
    w = _weight(cfg["w"])
    N = cfg["N"] if cfg["N"] is not None else 1024
    wa = weights.classify_weight(w, N)
    d = wa.to_dict()
    header = [k for k, v in d.items() if not isinstance(v, (dict, list)) or k.endswith("witness")]
    return d, (header, [[d[k] if d[k] is not None else "" for k in header]]), 0


def cmd_democracy(cfg):
    sp = _space(cfg)
    N = cfg["N"] if cfg["N"] is not None else 16
    tab = democracy.democracy_table(sp, N, budget=cfg["budget"], seed=cfg["seed"])
    header = ["n", "h_l", "h_r", "method"]
    rows = [list(r) for r in tab.rows()]
    return {"rows": [dict(zip(header, r)) for r in rows], "witnesses": tab.witnesses}, (header, rows), 0


def cmd_constants(cfg):
    sp = _space(cfg)
    N = cfg["N"] if cfg["N"] is not None else 16
    kinds = democracy.KINDS if cfg["kind"] == "all" else tuple(str(cfg["kind"]).split(","))
    for k in kinds:
        if k not in democracy.KINDS:
            raise ConfigError(f"unknown constant kind {k!r}; choose from {', '.join(democracy.KINDS)}")
    ests = [democracy.constant_estimate(sp, k, N, cfg["budget"], cfg["seed"]) for k in kinds]
    header = ["kind", "value", "method", "budget_used", "horizon"]
    rows = [[e.kind, e.value, e.method, e.budget_used, e.horizon] for e in ests]
    return {"estimates": [e.to_dict() for e in ests]}, (header, rows), 0


def _verify_report(cfg):
    th = cfg["theorem"]
    if th not in THEOREMS:
        raise ConfigError(f"--theorem must be one of {', '.join(THEOREMS)}")
    sp = _space(cfg)
    seed, trials = cfg["seed"], cfg["trials"]
    if th == "ap":
        return verify.check_ap_inequality(sp, trials, seed)
    w, q = _weight(cfg["w"]), _parse_q(cfg["q"])
    if th == "bernstein":
        return verify.check_bernstein(sp, w, q, cfg["side"], trials, seed)
    if th == "jackson":
        return verify.check_jackson(sp, w, q, trials, seed, _parse_ints(cfg["sizes"]))
    if th == "equivalence":
        return verify.check_equivalence(sp, w, q, _parse_ints(cfg["sizes"]), trials, seed, cfg["generator"])
    return verify.check_witness_trend(sp, w, q, _parse_ints(cfg["ks"]), float(cfg["delta"]))


def cmd_verify(cfg):
    rep = _verify_report(cfg)
    d = rep.to_dict()
    header = ["theorem", "empirical_constant", "formula_constant", "pass"]
    row = [d["theorem"], d["empirical_constant"], d["formula_constant"], d["pass"]]
    return d, (header, [row]), 0 if rep.passed else 1


def cmd_witness(cfg):
    sp = _space(cfg)
    rep = verify.witness_nondemocracy(sp, _weight(cfg["w"]), _parse_q(cfg["q"]), int(cfg["k"]), float(cfg["delta"]))
    d = rep.to_dict()
    header = ["k", "size_A", "size_B", "norm_1A", "norm_1B", "a_norm", "g_norm", "ratio", "lower_bound"]
    return d, (header, [[d[h] for h in header]]), 0


COMMANDS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="greedylab", description="Greedy approximation in quasi-Banach sequence spaces.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with option values")
        p.add_argument("--space", help="lp:P | lorentz_d:S:P | interleaved:P1:P2 | summing_c0")
        p.add_argument("--vector", help='JSON map such as {"1": 3, "2": -1} or a .json/.csv file')
        p.add_argument("--w", help="weight spec, e.g. power:0.25 or power_log:0.5:1")
        p.add_argument("--q", help="Lorentz / class exponent, a number or inf")
        p.add_argument("--N", type=int, help="horizon")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--cap", type=int, help="greedy-set enumeration cap")
        p.add_argument("--budget", type=int, help="random candidates for constant searches")
        p.add_argument("--sizes", help="comma-separated support sizes")
        p.add_argument("--generator", help="vector generator for sweeps (or 'mixed')")
        p.add_argument("--kind", help="constant kind(s), comma-separated, or 'all'")
        p.add_argument("--theorem", choices=THEOREMS)
        p.add_argument("--side", choices=("left_h_l", "right_h_r"))
        p.add_argument("--k", type=int)
        p.add_argument("--ks", help="comma-separated k values for the witness trend")
        p.add_argument("--delta", type=float)
        p.add_argument("--eta", help="Lorentz weight spec")
        p.add_argument("--kappa", type=int)
    return ap


def resolve(args: argparse.Namespace) -> RunConfig:
    opts = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as e:
            raise ConfigError(f"cannot read config {args.config}: {e.strerror}") from None
        data = _load_json(text, args.config)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        opts.update(data)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            opts[key] = val
    if opts["format"] not in ("json", "csv"):
        raise ConfigError("format must be json or csv")
    for key in ("seed", "trials", "cap", "budget"):
        if not isinstance(opts[key], int) or opts[key] < (0 if key == "seed" else 1):
            raise ConfigError(f"{key} must be a {'non-negative' if key == 'seed' else 'positive'} integer")
    if opts["N"] is not None and (not isinstance(opts["N"], int) or opts["N"] < 0):
        raise ConfigError("N must be a non-negative integer")
    return RunConfig(args.command, opts)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        _threads()
        cfg = resolve(args)
        payload, (header, rows), code = COMMANDS[cfg.command](cfg)
    except ConfigError as e:
        print(f"greedylab: error: {e}", file=sys.stderr)
        return 2
    except TieOverflowError as e:
        print(f"greedylab: error: budget infeasible: {e}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError, IndexError, NotImplementedError) as e:
        print(f"greedylab: error: {e}", file=sys.stderr)
        return 2
    if cfg["format"] == "json":
        text = dumps({"config": cfg.resolved(), "result": payload}) + "\n"
    else:
        text = _csv_text(header, rows)
    if cfg["output"]:
        with open(cfg["output"], "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
