"""The ``tt`` command line.

Every command prints JSON. ``verify`` suites stream one JSON line per item,
in item order, followed by a summary line; the exit status is 0 when every
item passed, 1 when a check failed and 2 on usage or domain errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from . import dr, hain, intersect, lemmas, socle, vz
from .arith import DomainError, a_g, rat_str

SCHEMA = "tt/1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj: dict, out) -> None:
    out.write(json.dumps({"schema": SCHEMA, **obj}, separators=(",", ":")) + "\n")
    out.flush()


# ---------------------------------------------------------------------------
# single-shot commands

def cmd_ag(args, out) -> int:
    _emit({"A_g": rat_str(a_g(args.g))}, out)
    return 0


def cmd_faber(args, out) -> int:
    _emit({"coeff": rat_str(intersect.faber_coeff(args.g, _ints(args.l)))}, out)
    return 0


def cmd_gentop(args, out) -> int:
    p = intersect.TopProfile(args.g, _ints(args.d), _ints(args.k))
    _emit({"coeffs": [rat_str(c) for c in intersect.gen_top_coeffs(p)]}, out)
    return 0


def cmd_hain(args, out) -> int:
    a = None if args.symbolic else _ints(args.a)
    cls = hain.hain_class(args.g, args.n, a)
    _emit({"g": args.g, "n": args.n, "symbolic": bool(args.symbolic), "poly": cls.poly.to_json()}, out)
    return 0


def cmd_dr_psi(args, out) -> int:
    sym = dr.normalize(args.g, _ints(args.m), _ints(args.t))
    v = dr.psi1_rhs(args.g, _ints(args.m), _ints(args.t))
    _emit({"input": sym.to_json() if sym else None, "psi1": v.to_json()}, out)
    return 0


def cmd_vz_expand(args, out) -> int:
    s = vz.VzSymbol(args.kind, args.g, _ints(args.f))
    _emit({"symbol": s.to_json(), "expansion": vz.expand(s).to_json()}, out)
    return 0


# ---------------------------------------------------------------------------
# verify suites: each returns a list of (function, argument tuple)

def _derivation_instances(g: int, n: int, trials: int, seed: int, spread: int = 4):
    rng = random.Random(seed)
    vals = [x for x in range(-spread, spread + 1) if x]
    out = []
    while len(out) < trials:
        b = [rng.choice(vals) for _ in range(3)]
        a = [rng.choice(vals) for _ in range(n - 1)]
        kind = len(out) % 5
        if kind == 1:
            b[1] = -b[0]  # a vanishing V term
        elif kind == 2:
            b[1] = -(b[0] + sum(a))  # forces b4 = -b3: a vanishing Z term
            if b[1] == 0:
                continue
        b4 = -(sum(b) + sum(a))
        if b4 == 0:
            continue
        out.append((g, b, b4, a))
    return out


def item_derivation(g, b, b4, a):
    status = vz.derivation_status(g, b, b4, a)
    inter = [vz.intermediate_status(g, b, b4, a, p) for p in range(len(a))]
    ok = status != vz.MISMATCH and vz.MISMATCH not in inter
    return {"g": g, "b": b, "b4": b4, "a": a, "status": status, "intermediate": inter}, ok


def item_gmatrix(g, n, f):
    _, _, det = vz.g_matrices(g, n, f)
    want = vz.det_g_tilde_formula(g, n)
    return {"g": g, "n": n, "f": f, "det": rat_str(det), "formula": rat_str(want)}, det == want


def item_lemma(name, param, seed=0):
    if name == "lemma51":
        rep = lemmas.lemma51_check(param)
    elif name == "lemma53":
        rep = lemmas.lemma53_check(param)
    else:
        rep = lemmas.lemma52_check(param, seed)
    return rep.to_json(), rep.match


def item_certificate(kind, *params):
    fn = {
        "first": socle.first_step_certificate,
        "n1": socle.n1_certificate,
        "n2": socle.n2_certificate,
        "nk": socle.n3_certificate,
    }[kind]
    cert = fn(*params)
    return cert.to_json(), cert.passed


def item_symmetry(g, a, b):
    return {"g": g, "a": a, "b": b}, socle.symmetry_sample_check(g, a, b)


def item_faber(g, l):
    lhs = intersect.faber_coeff(g, l)
    rhs = intersect.string_recursion_rhs(g, l)
    return {"g": g, "l": l, "value": rat_str(lhs)}, lhs == rhs


def item_pairing(g, n, m):
    ok = all(intersect.verify_pairing_consistency(p) for p in intersect.profiles(g, n, m))
    mat, nondeg = intersect.matrix_m(g, n)
    from .exactla import determinant

    det_ok = determinant(mat) == intersect.det_m_formula(g, n)
    return {"g": g, "n": n, "m": m, "pairing": ok, "det": det_ok}, ok and det_ok and nondeg


def item_hain(g, n, expand):
    out = {"g": g, "n": n}
    ok = True
    if expand:
        poly = hain.hain_class(g, n).poly
        out["homogeneous"] = poly.is_homogeneous([hain.a_name(i) for i in range(1, n + 1)], 2 * g)
        ok = out["homogeneous"]
    if n >= 3:
        out["restriction"] = hain.restriction_identity(g, n)
        ok = ok and out["restriction"]
        if expand and g <= 3:
            out["class_restriction"] = hain.class_restriction_identity(g, n)
            ok = ok and out["class_restriction"]
    return out, ok


def item_intpsi(g, a, b):
    return {"g": g, "a": a, "b": b}, dr.intpsi_top_vanishing(g, a, b)


def _faber_profiles(max_g: int, max_len: int):
    from itertools import product

    for g in range(2, max_g + 1):
        for n in range(1, max_len):
            for rest in product(range(g), repeat=n):
                if sum(rest) == g - 1:
                    yield (g, [-1, *rest])


def _intpsi_instances(trials: int, seed: int, max_g: int):
    rng = random.Random(seed)
    vals = [x for x in range(-5, 6) if x]
    out = []
    while len(out) < trials:
        g = rng.randint(1, max_g)
        n = rng.randint(1, 3)
        a = [rng.choice(vals) for _ in range(n)]
        b = [rng.choice(vals) for _ in range(g)]
        last = -(sum(a) + sum(b))
        if last == 0:
            continue
        b.append(last)
        out.append((g, a, b))
    return out


def _pick(value, default):
    return default if value is None else value


def build_suite(args) -> list[tuple[Callable, tuple]]:
    s = args.suite
    if s == "lemma51":
        return [(item_lemma, ("lemma51", p)) for p in range(3, args.max_p + 1)]
    if s == "lemma53":
        return [(item_lemma, ("lemma53", d)) for d in range(3, args.max_d + 1)]
    if s == "lemma52":
        return [(item_lemma, ("lemma52", _pick(args.bound, 10), args.seed))]
    if s == "derivation":
        return [(item_derivation, t) for t in _derivation_instances(args.g, _pick(args.n, 2), args.trials, args.seed)]
    if s == "gmatrix":
        rng = random.Random(args.seed)
        items = []
        while len(items) < args.trials:
            f = [rng.choice([x for x in range(-6, 7) if x]) for _ in range(_pick(args.n, 2) + 1)]
            if sum(f):
                items.append((item_gmatrix, (args.g, _pick(args.n, 2), f)))
        return items
    if s == "socle-first":
        return [(item_certificate, ("first", args.g, _pick(args.n, 2), args.dmax))]
    if s == "socle-n1":
        return [(item_certificate, ("n1", args.g, _pick(args.bound, 10)))]
    if s == "socle-n2":
        return [(item_certificate, ("n2", args.g, _pick(args.bound, 8)))]
    if s == "socle-nk":
        n = _pick(args.n, 3)
        return [(item_certificate, ("nk", args.g, n, _pick(args.bound, n + 5)))]
    if s == "symmetry":
        return [(item_symmetry, (args.g, a, b)) for a, b in socle.symmetry_samples(_pick(args.n, 2), args.trials, args.seed)]
    if s == "faber":
        return [(item_faber, t) for t in _faber_profiles(_pick(args.max_g, 8), 6)]
    if s == "pairing":
        return [
            (item_pairing, (g, n, m))
            for g in range(2, _pick(args.max_g, 8) + 1)
            for n in range(1, _pick(args.max_n, 5) + 1)
            for m in range(0, args.max_m + 1)
        ]
    if s == "hain":
        max_g = _pick(args.max_g, 4)
        max_n = _pick(args.max_n, 5)
        return [
            (item_hain, (g, n, n <= max_n))
            for g in range(1, max_g + 1)
            for n in range(2, max(max_n, 6) + 1)
        ]
    if s == "intpsi":
        return [(item_intpsi, t) for t in _intpsi_instances(args.trials, args.seed, _pick(args.max_g, 5))]
    raise UsageError(f"unknown suite {s!r}")


SUITES = (
    "lemma51", "lemma52", "lemma53", "derivation", "gmatrix", "socle-first", "socle-n1",
    "socle-n2", "socle-nk", "symmetry", "faber", "pairing", "hain", "intpsi",
)


def _run_item(job):
    fn, params = job
    return fn(*params)


def run_suite(items: Sequence[tuple[Callable, tuple]], workers: int) -> Iterable[tuple[dict, bool]]:
    if workers <= 1 or len(items) <= 1:
        for job in items:
            yield _run_item(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves item order regardless of completion order
        yield from pool.map(_run_item, items)


def cmd_verify(args, out) -> int:
    items = build_suite(args)
    failed = 0
    count = 0
    for index, (result, ok) in enumerate(run_suite(items, args.max_threads)):
        count += 1
        failed += not ok
        _emit({"suite": args.suite, "index": index, "ok": bool(ok), "result": result}, out)
    _emit({"suite": args.suite, "seed": args.seed, "items": count, "failed": failed, "pass": failed == 0}, out)
    return 0 if failed == 0 else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tt", description="Exact checks around the top tautological group of M_{g,n}.")
    p.add_argument("--config", help="JSON file with default values for any flag")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-threads", type=int, default=1)
    p.add_argument("--json", action="store_true", help="JSON output (the default and only format)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ag")
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_ag)

    s = sub.add_parser("faber")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--l", required=True)
    s.set_defaults(func=cmd_faber)

    s = sub.add_parser("gentop")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--d", required=True)
    s.add_argument("--k", default="")
    s.set_defaults(func=cmd_gentop)

    s = sub.add_parser("hain")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--a", default="")
    s.add_argument("--symbolic", action="store_true")
    s.set_defaults(func=cmd_hain)

    s = sub.add_parser("dr-psi")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--m", required=True)
    s.add_argument("--t", required=True)
    s.set_defaults(func=cmd_dr_psi)

    s = sub.add_parser("vz-expand")
    s.add_argument("--kind", choices=["V", "Z"], required=True)
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--f", required=True)
    s.set_defaults(func=cmd_vz_expand)

    s = sub.add_parser("verify")
    s.add_argument("suite", choices=SUITES)
    s.add_argument("--g", type=int, default=2)
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    s.add_argument("--max-threads", type=int, default=argparse.SUPPRESS)
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--dmax", type=int, default=6)
    s.add_argument("--max-p", type=int, default=40)
    s.add_argument("--max-d", type=int, default=25)
    s.add_argument("--max-g", type=int, default=None)
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--max-m", type=int, default=4)
    s.set_defaults(func=cmd_verify)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        with open(args.config) as fh:
            conf = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    if not isinstance(conf, dict):
        raise UsageError("config must be a JSON object")
    given = {a.split("=")[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
    for key, value in conf.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise UsageError(f"unknown config key {key!r}")
        if attr not in given:
            setattr(args, attr, value)
    return args


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = _apply_config(build_parser(), argv)
        if args.max_threads < 1:
            raise UsageError("--max-threads must be positive")
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"tt: {exc}\n")
        return 2
    except (DomainError, ValueError) as exc:
        err.write(f"tt: domain error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
