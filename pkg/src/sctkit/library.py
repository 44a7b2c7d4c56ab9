"""Named small groups used by the corpus and the command line."""

from __future__ import annotations

import json
import re
from functools import lru_cache
from itertools import product

from .errors import InputError
from .groups import FiniteGroup, build_group_from_cayley, build_group_from_permutations


def cyclic(n: int) -> FiniteGroup:
    labels = ["1"] + [f"x^{i}" if i > 1 else "x" for i in range(1, n)]
    return build_group_from_cayley([[(a + b) % n for b in range(n)] for a in range(n)], labels)


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    if not factors:
        return cyclic(1)
    orders = [F.order for F in factors]
    elems = list(product(*(range(o) for o in orders)))
    index = {e: i for i, e in enumerate(elems)}
    table = [
        [index[tuple(F.mult[x][y] for F, x, y in zip(factors, a, b))] for b in elems]
        for a in elems
    ]
    labels = ["(" + ",".join(F.label(x) for F, x in zip(factors, e)) + ")" for e in elems]
    return build_group_from_cayley(table, labels)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    return direct_product(*[cyclic(p)] * k)


def dihedral(m: int) -> FiniteGroup:
    """Symmetries of the regular m-gon (order 2m)."""
    if m == 1:
        return cyclic(2)
    if m == 2:
        return elementary_abelian(2, 2)
    rot = [(i + 1) % m for i in range(m)]
    ref = [(-i) % m for i in range(m)]
    return build_group_from_permutations(m, [rot, ref])


def dicyclic(n: int) -> FiniteGroup:
    """Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>."""
    m = 2 * n
    elems = [(i, j) for j in range(2) for i in range(m)]
    index = {e: t for t, e in enumerate(elems)}

    def mul(u, v):
        (i, j), (k, l) = u, v
        if j == 0:
            return ((i + k) % m, l)
        if l == 0:
            return ((i - k) % m, 1)
        return ((i - k + n) % m, 0)

    table = [[index[mul(u, v)] for v in elems] for u in elems]
    labels = [("a^%d" % i if i else "1") if j == 0 else ("a^%dx" % i if i else "x") for i, j in elems]
    return build_group_from_cayley(table, labels)


def quaternion8() -> FiniteGroup:
    return dicyclic(2)


def symmetric(d: int) -> FiniteGroup:
    if d < 2:
        return cyclic(1)
    cycle = [(i + 1) % d for i in range(d)]
    swap = [1, 0] + list(range(2, d))
    return build_group_from_permutations(d, [cycle, swap] if d > 2 else [swap])


def alternating(d: int) -> FiniteGroup:
    if d < 3:
        return cyclic(1)
    gens = []
    for i in range(d - 2):
        g = list(range(d))
        g[i], g[i + 1], g[i + 2] = i + 1, i + 2, i
        gens.append(g)
    return build_group_from_permutations(d, gens)


_PATTERNS = [
    (r"(?:cyclic:|C)(\d+)", lambda m: cyclic(int(m[1]))),
    (r"(?:dihedral:|D)(\d+)", lambda m: dihedral(int(m[1]))),
    (r"(?:dicyclic:|Dic)(\d+)", lambda m: _dicyclic_of_order(int(m[1]))),
    (r"Q8|quaternion:?8", lambda m: quaternion8()),
    (r"(?:symmetric:|S)(\d+)", lambda m: symmetric(int(m[1]))),
    (r"(?:alternating:|A)(\d+)", lambda m: alternating(int(m[1]))),
    (r"C(\d+)\^(\d+)", lambda m: elementary_abelian(int(m[1]), int(m[2]))),
    (r"elemab:(\d+):(\d+)", lambda m: elementary_abelian(int(m[1]), int(m[2]))),
    (r"C(\d+)(?:x|×)C(\d+)", lambda m: direct_product(cyclic(int(m[1])), cyclic(int(m[2])))),
]


def _dicyclic_of_order(order: int) -> FiniteGroup:
    if order % 4 or order < 8:
        raise InputError(f"dicyclic groups have order 4n with n >= 2, got {order}")
    return dicyclic(order // 4)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    """Look up a named group, e.g. ``C6``, ``D4`` (order 8), ``Q8``, ``C2^3``, ``C4xC2``, ``Dic12``.

    Results are cached, so the same name always gives the same object and
    character tables and enumerations computed on it are shared.
    """
    name = name.strip()
    for pat, make in _PATTERNS:
        m = re.fullmatch(pat, name)
        if m:
            return make(m)
    raise InputError(f"unknown built-in group {name!r}")


AXIOM_CORPUS = tuple(
    [f"C{n}" for n in range(2, 13)]
    + ["C2^2", "C2^3", "C4xC2", "C3^2", "S3", "D4", "Q8", "D5", "D6", "A4", "Dic12"]
)
P_GROUP_CORPUS = ("C4", "C8", "D4", "Q8", "C2^2", "C2^3", "C4xC2", "C9", "C3^2")
LATTICE_CORPUS = ("C6", "C8", "D4", "Q8")
ALGEBRA_CORPUS = ("ut:3:2", "ut:3:3", "ut:4:2")


def group_from_json(data: dict) -> FiniteGroup:
    """``{"type": "cayley", "table": [...]}`` or ``{"type": "perm", "degree": d, "generators": [...]}``."""
    kind = data.get("type")
    if kind == "cayley":
        return build_group_from_cayley(data["table"], data.get("labels"))
    if kind == "perm":
        return build_group_from_permutations(int(data["degree"]), data["generators"])
    raise InputError(f"unknown group type {kind!r}")


def load_group(source: str) -> FiniteGroup:
    """A built-in name or a path to a JSON group description."""
    try:
        return builtin_group(source)
    except InputError:
        pass
    try:
        with open(source) as fh:
            data = json.load(fh)
    except FileNotFoundError as exc:
        raise InputError(f"{source!r} is neither a built-in group nor a readable file") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from exc
    try:
        return group_from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed group description in {source}: {exc}") from exc
