"""Command-line interface.

Exit codes: 0 success, 1 mathematical rejection, 2 usage or I/O error.
Bounds come from flags, then from CHAINRING_* environment variables, then
from the library defaults.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from .finring import (
    ELEMENT_CAP,
    LATTICE_CAP,
    BoundExceededError,
    FiniteRing,
    NotLocalError,
    NotPrincipalError,
    TableRing,
    all_ideals,
    is_pir,
    lemma21_stats,
    to_table,
)
from .iso import (
    HypothesisError,
    Prop44Instance,
    Prop45Instance,
    brute_force_iso,
    match_shape,
    prop44_verdict,
    prop45_test,
)
from .presentation import (
    InvalidPresentationError,
    Presentation,
    QuotientRing,
    certify,
    validate,
)
from .structure import (
    ORACLE_CAP,
    catalog,
    char_p_canonical_iso,
    coefficient_field,
    local_data,
    recover,
)

BOUNDS = {
    # flag name: (environment variable, default)
    "table_cap": ("CHAINRING_TABLE_CAP", ELEMENT_CAP),
    "lattice_cap": ("CHAINRING_LATTICE_CAP", LATTICE_CAP),
    "oracle_cap": ("CHAINRING_ORACLE_CAP", ORACLE_CAP),
    "samples": ("CHAINRING_SAMPLES", 100_000),
}


class UsageError(Exception):
    pass


class Rejection(Exception):
    """A well-formed input that fails a mathematical requirement."""


@dataclass
class Loaded:
    ring: FiniteRing
    presentation: Presentation | None


def _read_json(source: str) -> Any:
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip().startswith("{"):
            text = source
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {source!r}: {exc}") from exc


def load_ring(source: str, check: bool = True) -> Loaded:
    obj = _read_json(source)
    if not isinstance(obj, dict):
        raise UsageError("input must be a JSON object")
    if "add" in obj and "mul" in obj:
        try:
            return Loaded(TableRing.from_json(obj), None)
        except (ValueError, TypeError, IndexError) as exc:
            raise UsageError(f"malformed table ring: {exc}") from exc
    if "p" in obj and "g" in obj:
        try:
            P = Presentation.from_json(obj)
        except (KeyError, ValueError, TypeError) as exc:
            raise UsageError(f"malformed presentation: {exc}") from exc
        rep = validate(P)
        if not rep.ok:
            raise Rejection(json.dumps(rep.to_json()))
        return Loaded(QuotientRing(P, check=False), P)
    raise UsageError("input is neither a presentation nor a table ring")


def _bounds(args) -> dict[str, int]:
    out = {}
    for name, (env, default) in BOUNDS.items():
        val = getattr(args, name, None)
        if val is None:
            raw = os.environ.get(env)
            try:
                val = int(raw) if raw is not None else default
            except ValueError as exc:
                raise UsageError(f"{env} must be an integer") from exc
        out[name] = val
    return out


def _ensure_size(ring: FiniteRing, cap: int) -> None:
    if ring.order > cap:
        raise BoundExceededError(f"ring has {ring.order} elements, above the cap {cap}")


# --------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)


def cmd_new(args, b):
    L = load_ring(args.input)
    if L.presentation is None:
        T = L.ring
        checks = T.check_axioms(triple_bound=min(b["lattice_cap"], 64), samples=b["samples"])
        return {"order": T.order, "checks": checks, "passed": all(checks.values())}, 0 if all(checks.values()) else 1
    P = L.presentation
    pair = min(b["table_cap"], 256)
    rep = certify(P, ring=L.ring, pair_bound=pair, triple_bound=min(b["lattice_cap"], 64), samples=b["samples"])
    payload = {"presentation": P.to_json(), "describe": P.describe(), "order": P.order, **rep.to_json()}
    return payload, 0 if rep.passed else 1


def cmd_elements(args, b):
    L = load_ring(args.input)
    ring = L.ring
    limit = ring.order if args.limit is None else min(args.limit, ring.order)
    _ensure_size(ring, max(b["table_cap"], limit) if args.limit else b["table_cap"])
    rows = [{"index": i, "label": ring.label(i)} for i in range(limit)]
    return {"order": ring.order, "elements": rows}, 0


def _chain_text(ring: FiniteRing, data) -> tuple[str, list[dict]]:
    alpha = data.alpha
    parts, rows = ["0"], []
    for j in range(data.sigma - 1, 0, -1):
        gen = int(ring.pow(np.int64(alpha), j))
        lab = ring.label(gen)
        parts.append(f"({lab})")
        rows.append({"generator": lab, "power": j, "size": len(data.chain[data.sigma - j])})
    parts.append("R")
    return " ⊂ ".join(parts), rows


def cmd_ideals(args, b):
    L = load_ring(args.input)
    ring = L.ring
    if isinstance(ring, QuotientRing):
        data = local_data(ring)
        text, rows = _chain_text(ring, data)
        return {"chain": text, "nontrivial": len(rows), "ideals": rows}, 0
    _ensure_size(ring, b["lattice_cap"])
    ideals = [i for i in all_ideals(ring, bound=b["lattice_cap"]) if 1 < len(i) < ring.order]
    payload: dict = {"nontrivial": len(ideals), "ideals": [sorted(int(x) for x in i.members) for i in ideals]}
    try:
        data = local_data(ring)
        if data.is_chain:
            payload["chain"] = _chain_text(ring, data)[0]
    except (NotLocalError, NotPrincipalError):
        pass
    return payload, 0


def cmd_check_pir(args, b):
    L = load_ring(args.input)
    ring = L.ring
    if isinstance(ring, QuotientRing):
        data = local_data(ring)
        return {"pir": data.is_chain, "method": "chain certificate"}, 0
    _ensure_size(ring, b["lattice_cap"])
    return {"pir": is_pir(ring, bound=b["lattice_cap"]), "method": "ideal lattice"}, 0


def cmd_stats(args, b):
    L = load_ring(args.input)
    data = local_data(L.ring)
    st = lemma21_stats(L.ring, data.maximal)
    return {"p": st.p, "r": st.r, "s": st.s, "t": st.t, "holds": st.r <= st.s <= st.t}, 0


def cmd_coeff_field(args, b):
    L = load_ring(args.input)
    try:
        A = coefficient_field(L.ring)
    except ValueError as exc:
        raise Rejection(str(exc)) from exc
    return A.to_json(L.ring), 0


def cmd_canon(args, b):
    L = load_ring(args.input)
    try:
        ci = char_p_canonical_iso(L.ring, pointwise_bound=min(b["table_cap"], 256), samples=min(b["samples"], 4096))
    except ValueError as exc:
        raise Rejection(str(exc)) from exc
    payload = ci.to_json(L.ring)
    payload["image"] = [L.ring.label(int(x)) for x in ci.image]
    return payload, 0 if ci.ok else 1


def cmd_present(args, b):
    L = load_ring(args.input)
    try:
        rec = recover(L.ring)
    except ValueError as exc:
        raise Rejection(str(exc)) from exc
    payload = rec.to_json(L.ring)
    payload["describe"] = rec.presentation.describe()
    return payload, 0


def _instance(P1: Presentation, P2: Presentation):
    s1, s2 = match_shape(P1), match_shape(P2)
    if s1 is None or s2 is None or P1.p != P2.p or s1[0] != s2[0]:
        return None
    if s1[0] == "4.4":
        return Prop44Instance(P1.p, s1[1], s2[1], s1[2], s2[2])
    return Prop45Instance(P1.p, s1[1], s2[1], s1[2], s2[2], s1[3], s2[3])


def cmd_iso(args, b):
    A, B = load_ring(args.first), load_ring(args.second)
    cap = b["oracle_cap"]
    inst = None
    if A.presentation is not None and B.presentation is not None:
        inst = _instance(A.presentation, B.presentation)
    if inst is not None:
        if isinstance(inst, Prop45Instance):
            verdict = prop45_test(inst, bound=cap, v1_squared=args.v1_squared)
        else:
            verdict = prop44_verdict(inst, bound=cap)
        payload = verdict.to_json()
    else:
        payload = {"necessary": None, "sufficient": None, "oracle": "skipped", "witness": {}}
        if max(A.ring.order, B.ring.order) <= cap:
            T1, T2 = to_table(A.ring, cap), to_table(B.ring, cap)
            payload["oracle"] = "iso" if brute_force_iso(T1, T2, bound=cap) is not None else "non-iso"
    if payload["oracle"] == "iso":
        payload["result"] = "isomorphic"
    elif payload["oracle"] == "non-iso":
        payload["result"] = "non-isomorphic"
    else:
        payload["result"] = "undecided"
    if payload["necessary"] is not None and payload["oracle"] != "skipped":
        iso = payload["oracle"] == "iso"
        # necessary must hold on every isomorphic pair, sufficient must fail on every non-isomorphic one
        payload["criterion_agrees"] = (payload["necessary"] or not iso) and (iso or not payload["sufficient"])
    return payload, 0


def cmd_catalog(args, b):
    try:
        rows = catalog(args.p, args.d, args.ideals, bound=b["oracle_cap"], dedup=args.dedup)
    except ValueError as exc:
        if isinstance(exc, BoundExceededError):
            raise
        raise UsageError(str(exc)) from exc
    out = []
    for e in rows:
        row = e.row()
        row["checks"] = e.checks
        out.append(row)
    ok = all(all(e.checks.values()) for e in rows)
    return {"p": args.p, "d": args.d, "ideals": args.ideals, "rows": out, "passed": ok}, 0 if ok else 1


def cmd_selftest(args, b):
    from . import selftest

    report = selftest.run(full=args.full)
    return report, 0 if report["passed"] else 1


# --------------------------------------------------------------------------
# rendering


def _csv(payload: Any) -> str:
    buf = io.StringIO()
    rows = None
    if isinstance(payload, dict):
        for key in ("rows", "elements", "ideals"):
            if isinstance(payload.get(key), list) and payload[key] and isinstance(payload[key][0], dict):
                rows = payload[key]
                break
    if rows is None:
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in (payload.items() if isinstance(payload, dict) else enumerate(payload)):
            w.writerow([k, v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v)])
        return buf.getvalue()
    fields = list(rows[0].keys())
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: v if isinstance(v, (str, int, float, bool)) or v is None else json.dumps(v) for k, v in r.items()})
    return buf.getvalue()


def _text(payload: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(payload, dict):
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if not isinstance(v, str) else v}")
        return "\n".join(lines)
    if isinstance(payload, list):
        return "\n".join(f"{pad}- {json.dumps(x) if not isinstance(x, str) else x}" for x in payload)
    return f"{pad}{payload}"


def render(payload: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, ensure_ascii=False)
    if fmt == "csv":
        return _csv(payload).rstrip("\n")
    return _text(payload)


# --------------------------------------------------------------------------
# argument parsing


def _add_bounds(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("bounds")
    for name, (env, default) in BOUNDS.items():
        g.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int, default=None, help=f"default {default}, env {env}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chainring", description="Finite chain rings from bivariate presentations.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="json")
    _add_bounds(common)
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", help="operations on one ring (or two, for iso)")
    rsub = ring.add_subparsers(dest="ring_command", required=True)
    single = {
        "new": (cmd_new, "validate and certify a presentation"),
        "elements": (cmd_elements, "list elements with their labels"),
        "ideals": (cmd_ideals, "report the ideal chain"),
        "check-pir": (cmd_check_pir, "decide whether every ideal is principal"),
        "stats": (cmd_stats, "the tuple (p, r, s, t)"),
        "coeff-field": (cmd_coeff_field, "coefficient field of a characteristic-p ring"),
        "canon": (cmd_canon, "canonical map from F_q[T]/(T^sigma)"),
        "present": (cmd_present, "recover a presentation"),
    }
    for name, (fn, help_) in single.items():
        sp = rsub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("input", help="JSON file, '-' for stdin, or inline JSON")
        if name == "elements":
            sp.add_argument("--limit", type=int, default=None)
        sp.set_defaults(func=fn)
    sp = rsub.add_parser("iso", parents=[common], help="compare two rings")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--v1-squared", action="store_true", help="read the third congruence with v1 squared")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("catalog", parents=[common], help="chain rings with a given number of ideals")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--ideals", type=int, required=True)
    sp.add_argument("--dedup", action="store_true", help="assign isomorphism-class ids")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("selftest", parents=[common], help="run the invariant suite")
    sp.add_argument("--full", action="store_true", help="sweep every presentation instead of a sample")
    sp.set_defaults(func=cmd_selftest)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    fmt = getattr(args, "format", "json")
    try:
        bounds = _bounds(args)
        payload, code = args.func(args, bounds)
    except Rejection as exc:
        payload, code = {"error": "rejected", "detail": _maybe_json(str(exc))}, 1
    except (InvalidPresentationError, NotLocalError, NotPrincipalError, HypothesisError) as exc:
        payload, code = {"error": "rejected", "detail": str(exc)}, 1
    except (UsageError, BoundExceededError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    print(render(payload, fmt), file=out)
    return code


def _maybe_json(s: str):
    try:
        return json.loads(s)
    except json.JSONDecodeError:
        return s


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
