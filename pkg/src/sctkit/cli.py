"""Command-line front end.

Exit codes: 0 success, 1 when a check or report fails, 2 for usage and
input errors.  Groups are given as built-in names (C6, D4, Q8, S3, A4,
C2^3, C4xC2, Dic12, ...) or paths to JSON descriptions; algebras as
``ut:n:q`` or JSON structure-constant specs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .errors import SCTError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(SCTError):
    def __init__(self, message: str, token: Optional[str] = None):
        super().__init__(message)
        self.token = token


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        token = None
        if "unrecognized arguments:" in message:
            token = message.split("unrecognized arguments:", 1)[1].split()[0]
        elif "invalid choice:" in message:
            token = message.split("invalid choice:", 1)[1].split()[0].strip("'")
        raise UsageError(f"{self.prog}: {message}", token)


@dataclass
class CommandInvocation:
    command: str
    flags: dict[str, Any] = field(default_factory=dict)
    inputs: list[str] = field(default_factory=list)
    fmt: str = "json"


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--cap", type=int, default=None, help="enumeration cap on conjugacy classes")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--figures", metavar="DIR", default=None, help="write figures into DIR")


def _theory_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("group", help="built-in group name or JSON file")
    p.add_argument("--classes", help="superclasses as a JSON list of lists, or a JSON file")
    p.add_argument("--theory", default="min", help="min, max, or an index into the enumeration")


def build_parser() -> argparse.ArgumentParser:
    root = _Parser(prog="sctkit", description="Supercharacter theory toolkit")
    top = root.add_subparsers(dest="area", metavar="{group,sct,alg,suite}", required=True, parser_class=_Parser)

    g = top.add_parser("group", help="group queries")
    gs = g.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    info = gs.add_parser("info")
    info.add_argument("group")
    _common(info)

    s = top.add_parser("sct", help="supercharacter theory commands")
    ss = s.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("enumerate",):
        p = ss.add_parser(name)
        p.add_argument("group")
        _common(p)
    for name in ("validate", "center", "nilpotent"):
        p = ss.add_parser(name)
        _theory_args(p)
        _common(p)
    for name in ("join", "meet"):
        p = ss.add_parser(name)
        p.add_argument("group")
        p.add_argument("--classes", action="append", required=True, help="give twice")
        _common(p)
    p = ss.add_parser("commutator")
    _theory_args(p)
    p.add_argument("--subgroup", help="JSON list of generators (default: the whole group)")
    _common(p)
    p = ss.add_parser("series")
    _theory_args(p)
    p.add_argument("--kind", choices=("lower", "upper", "chief"), default="lower")
    _common(p)
    p = ss.add_parser("pcore")
    _theory_args(p)
    p.add_argument("-p", type=int, required=True)
    _common(p)
    p = ss.add_parser("report")
    p.add_argument("kind", choices=("divisibility", "column", "coherence"))
    _theory_args(p)
    _common(p)

    a = top.add_parser("alg", help="algebra group commands")
    As = a.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("build", "group", "sct", "series", "ideals"):
        p = As.add_parser(name)
        p.add_argument("algebra", help="ut:n:q or a JSON structure-constant spec")
        _common(p)
    p = As.add_parser("builtin")
    p.add_argument("name", choices=("ut",))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _common(p)

    su = top.add_parser("suite", help="verification suites")
    sus = su.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    p = sus.add_parser("run")
    p.add_argument("name", choices=("axioms", "divisibility", "lattice", "nilpotence", "algebra", "example"))
    p.add_argument("corpus", nargs="*", help="group names, files, or a directory of JSON files")
    p.add_argument("--empty", action="store_true", help="run on an empty corpus")
    _common(p)
    return root


def _option_strings(parser: argparse.ArgumentParser) -> set[str]:
    out = set()
    for action in parser._actions:
        out.update(action.option_strings)
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                out |= _option_strings(sub)
    return out


def parse_invocation(argv: Sequence[str]) -> CommandInvocation:
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except UsageError as exc:
        if exc.token is None:
            known = _option_strings(parser)
            exc.token = next((t for t in argv if t.startswith("-") and t.split("=")[0] not in known), None)
            if exc.token is not None:
                exc.args = (f"{exc.args[0]} (unrecognized token {exc.token!r})",)
        raise
    flags = {k: v for k, v in vars(ns).items() if k not in ("area", "cmd", "format")}
    inputs = [v for k, v in flags.items() if k in ("group", "algebra") and v]
    inputs += list(flags.get("corpus") or [])
    return CommandInvocation(f"{ns.area} {ns.cmd}", flags, inputs, ns.format)


# ---------------------------------------------------------------------------
# output


def _render(data: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2) + "\n"
    width = max((len(k) for k in data), default=0)
    lines = []
    for k, v in data.items():
        text = v if isinstance(v, str) else json.dumps(v)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines) + "\n"


def _subgroup_json(H) -> dict:
    return {"order": H.order, "members": list(H.members)}


# ---------------------------------------------------------------------------
# commands


def _load_classes(text: str):
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--classes is neither a file nor JSON: {exc}", text) from exc


def _cap(inv: CommandInvocation) -> int:
    from .theory import DEFAULT_ENUMERATION_CAP

    return inv.flags.get("cap") or DEFAULT_ENUMERATION_CAP


def _theory(inv: CommandInvocation, classes: Optional[str] = None):
    from .characters import character_table
    from .library import load_group
    from .theory import enumerate_scts, maximal_sct, minimal_sct, theory_from_classes

    G = load_group(inv.flags["group"])
    text = classes if classes is not None else inv.flags.get("classes")
    if text is not None:
        return theory_from_classes(G, _load_classes(text))
    T = character_table(G)
    which = inv.flags.get("theory", "min")
    if which == "min":
        return minimal_sct(T)
    if which == "max":
        return maximal_sct(T)
    try:
        idx = int(which)
    except ValueError as exc:
        raise UsageError(f"--theory must be min, max or an index, got {which!r}", which) from exc
    scts = enumerate_scts(T, _cap(inv))
    if not 0 <= idx < len(scts):
        raise UsageError(f"theory index {idx} out of range (0..{len(scts) - 1})", which)
    return scts[idx]


def _fig(inv: CommandInvocation, name: str) -> Optional[str]:
    d = inv.flags.get("figures")
    return os.path.join(d, name) if d else None


def _cmd_group_info(inv):
    from .characters import character_table
    from .groups import conjugacy_classes, derived_subgroup, group_center, is_nilpotent_group
    from .library import load_group

    G = load_group(inv.flags["group"])
    T = character_table(G)
    data = {
        "order": G.order,
        "abelian": G.is_abelian(),
        "nilpotent": is_nilpotent_group(G),
        "exponent": G.exponent,
        "classes": [list(b) for b in conjugacy_classes(G).blocks],
        "degrees": list(T.degrees),
        "center": _subgroup_json(group_center(G)),
        "derived": _subgroup_json(derived_subgroup(G)),
    }
    return data, True


def _cmd_sct_enumerate(inv):
    from .characters import character_table
    from .library import load_group
    from .theory import enumerate_scts

    G = load_group(inv.flags["group"])
    scts = enumerate_scts(character_table(G), _cap(inv))
    path = _fig(inv, "lattice.png")
    if path:
        from .plotting import plot_lattice

        plot_lattice(scts, path)
    data = {"order": G.order, "count": len(scts), "theories": [[list(b) for b in S.classes] for S in scts]}
    return data, True


def _cmd_sct_validate(inv):
    from .characters import character_table
    from .library import load_group
    from .theory import Rejection, validate_sct

    if inv.flags.get("classes") is None:
        raise UsageError("sct validate needs --classes")
    G = load_group(inv.flags["group"])
    res = validate_sct(character_table(G), _load_classes(inv.flags["classes"]))
    if isinstance(res, Rejection):
        return {"valid": False, "axiom": res.axiom, "message": res.message, "witness": res.witness}, False
    path = _fig(inv, "theory.png")
    if path:
        from .plotting import plot_theory

        plot_theory(res, path)
    return {"valid": True, **res.to_json()}, True


def _cmd_sct_lattice(inv):
    from .theory import join, meet

    A, B = inv.flags["classes"][:2] if len(inv.flags["classes"]) >= 2 else (None, None)
    if A is None:
        raise UsageError(f"sct {inv.command.split()[1]} needs --classes twice")
    S, T = _theory(inv, A), _theory(inv, B)
    U = join(S, T) if inv.command.endswith("join") else meet(S, T, _cap(inv))
    return {"classes": [list(b) for b in U.classes]}, True


def _cmd_sct_center(inv):
    from .structure import sct_center

    return {"center": _subgroup_json(sct_center(_theory(inv)))}, True


def _cmd_sct_commutator(inv):
    from .groups import generated_subgroup, whole_group
    from .structure import sct_commutator

    S = _theory(inv)
    H = whole_group(S.group)
    if inv.flags.get("subgroup"):
        H = generated_subgroup(S.group, _load_classes(inv.flags["subgroup"]))
    return {"subgroup": _subgroup_json(H), "commutator": _subgroup_json(sct_commutator(S, H))}, True


def _cmd_sct_series(inv):
    from .structure import lower_central_series, s_chief_series, upper_central_series

    S = _theory(inv)
    kind = inv.flags["kind"]
    if kind == "chief":
        C = s_chief_series(S, inv.flags.get("seed"))
        data = {
            "kind": "chief",
            "terms": [_subgroup_json(t) for t in C.terms],
            "factor_orders": list(C.factor_orders),
            "simple": list(C.simple),
        }
        ok = all(C.simple)
    else:
        C = lower_central_series(S) if kind == "lower" else upper_central_series(S)
        data = {
            "kind": kind,
            "terms": [_subgroup_json(t) for t in C.terms],
            "certificates": list(C.certificates),
            "reaches_target": C.reaches_target,
            "stabilization_index": C.stabilization_index,
        }
        ok = all(C.certificates)
    path = _fig(inv, f"series-{kind}.png")
    if path:
        from .plotting import plot_series

        plot_series({kind: [t.order for t in C.terms]}, path)
    return data, ok


def _cmd_sct_nilpotent(inv):
    from .structure import is_s_nilpotent

    cert = is_s_nilpotent(_theory(inv))
    data = {
        "nilpotent": cert.value,
        "conditions": cert.conditions,
        "lower": [t.order for t in cert.lower.terms],
        "upper": [t.order for t in cert.upper.terms],
    }
    return data, cert.consistent


def _cmd_sct_pcore(inv):
    from .structure import s_normal_p_core

    return {"p": inv.flags["p"], "core": _subgroup_json(s_normal_p_core(_theory(inv), inv.flags["p"]))}, True


def _cmd_sct_report(inv):
    from .structure import divisibility_report
    from .suites import coherence_report, column_report

    S = _theory(inv)
    kind = inv.flags["kind"]
    if kind == "divisibility":
        rep = divisibility_report(S)
    elif kind == "column":
        rep = column_report(S, inv.flags["group"])
    else:
        rep = coherence_report(S, inv.flags["group"])
    rep.suite = rep.suite or kind
    return rep, rep.ok


def _cmd_alg(inv):
    from .algebra import (
        algebra_group,
        algebra_to_spec,
        annihilator_series,
        compare_series,
        double_orbit_sct,
        ideal_subgroups_by_order,
        load_algebra,
        power_ideals,
    )

    J = load_algebra(inv.flags["algebra"])
    cmd = inv.command.split()[1]
    if cmd == "build":
        return {**algebra_to_spec(J), "nilpotency_class": J.nilpotency_class}, True
    if cmd == "group":
        AG = algebra_group(J)
        return {"order": AG.group.order, "abelian": AG.group.is_abelian()}, True
    if cmd == "sct":
        S = double_orbit_sct(J)
        path = _fig(inv, "theory.png")
        if path:
            from .plotting import plot_theory

            plot_theory(S, path)
        return {
            "superclass_sizes": sorted(S.class_sizes),
            "degrees": sorted(S.degrees),
            "classes": [list(b) for b in S.classes],
        }, True
    if cmd == "series":
        rep = compare_series(J)
        path = _fig(inv, "series.png")
        if path:
            from .plotting import plot_series

            q = J.q
            plot_series(
                {
                    "1+J^i": [q**I.dim for I in power_ideals(J)],
                    "1+Ann_i (reversed)": [q**I.dim for I in annihilator_series(J)][::-1],
                },
                path,
            )
        return rep, rep.ok
    # ideals
    out = [{"order": o, "dim": I.dim, "basis": [list(b) for b in I.basis]} for o, _, I in ideal_subgroups_by_order(J)]
    return {"ideal_subgroups": out}, True


def _cmd_alg_builtin(inv):
    from .algebra import builtin_algebra

    return builtin_algebra(inv.flags["name"], inv.flags["n"], inv.flags["q"]), True


def _corpus_items(items: Sequence[str]) -> list[str]:
    out = []
    for item in items:
        if os.path.isdir(item):
            out.extend(sorted(os.path.join(item, f) for f in os.listdir(item) if f.endswith(".json")))
        else:
            out.append(item)
    return out


def _cmd_suite_run(inv):
    from .suites import run_suite

    items = inv.flags.get("corpus") or []
    corpus = [] if inv.flags.get("empty") else (_corpus_items(items) if items else None)
    rep = run_suite(inv.flags["name"], corpus, _cap(inv))
    path = _fig(inv, f"suite-{inv.flags['name']}.png")
    if path:
        from .plotting import plot_report

        plot_report(rep, path)
    return rep, rep.ok


COMMANDS = {
    "group info": _cmd_group_info,
    "sct enumerate": _cmd_sct_enumerate,
    "sct validate": _cmd_sct_validate,
    "sct join": _cmd_sct_lattice,
    "sct meet": _cmd_sct_lattice,
    "sct center": _cmd_sct_center,
    "sct commutator": _cmd_sct_commutator,
    "sct series": _cmd_sct_series,
    "sct nilpotent": _cmd_sct_nilpotent,
    "sct pcore": _cmd_sct_pcore,
    "sct report": _cmd_sct_report,
    "alg build": _cmd_alg,
    "alg group": _cmd_alg,
    "alg sct": _cmd_alg,
    "alg series": _cmd_alg,
    "alg ideals": _cmd_alg,
    "alg builtin": _cmd_alg_builtin,
    "suite run": _cmd_suite_run,
}


def run(argv: Sequence[str], out=None, err=None) -> int:
    from .report import Report, emit_report

    out = out or sys.stdout
    err = err or sys.stderr
    try:
        inv = parse_invocation(argv)
        result, ok = COMMANDS[inv.command](inv)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except SCTError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
    if isinstance(result, Report):
        out.write(emit_report(result, inv.fmt))
        if inv.flags.get("figures") and inv.command != "suite run":
            from .plotting import plot_report

            plot_report(result, os.path.join(inv.flags["figures"], "report.png"))
        return EXIT_OK if result.ok else EXIT_FAIL
    out.write(_render(result, inv.fmt))
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
