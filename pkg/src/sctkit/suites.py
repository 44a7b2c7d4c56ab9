"""Verification suites run over a corpus of groups or algebras.

Each suite returns a :class:`Report` with one entry per (subject, check).
Checks that range over many instances (pairs of elements, S-normal
subgroups, characters) are folded into a single entry whose witness
counts the instances and records the first failure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .characters import character_center, character_table, induce, kernel_mask, restrict
from .errors import SCTError
from .groups import (
    Subgroup,
    conjugacy_classes,
    generated_subgroup,
    quotient_group,
    subgroup_intersection,
    subgroup_product,
    whole_group,
)
from .library import (
    ALGEBRA_CORPUS,
    AXIOM_CORPUS,
    LATTICE_CORPUS,
    P_GROUP_CORPUS,
    load_group,
)
from .report import Report
from .structure import (
    column_orthogonality_sum,
    deflate_theory,
    divisibility_report,
    factor_theory,
    is_s_nilpotent,
    is_s_normal,
    lower_central_series,
    restrict_theory,
    s_chief_series,
    s_normal_subgroups,
    sct_center,
    sct_commutator,
)
from .theory import (
    DEFAULT_ENUMERATION_CAP,
    SupercharacterTheory,
    enumerate_scts,
    join,
    meet,
    refines,
    sigma_character,
    theory_from_classes,
    validate_sct,
)

SUITES = ("axioms", "divisibility", "lattice", "nilpotence", "algebra", "example")

DEFAULT_CORPORA = {
    "axioms": AXIOM_CORPUS,
    "divisibility": AXIOM_CORPUS,
    "lattice": LATTICE_CORPUS,
    "nilpotence": AXIOM_CORPUS,
    "algebra": ALGEBRA_CORPUS,
    "example": ("C6",),
}

JORDAN_HOLDER_SEEDS = (1, 2, 3, 4, 5)


class _Tally:
    """Fold many instance checks into one report entry."""

    def __init__(self):
        self.count = 0
        self.failed = 0
        self.first = None

    def __call__(self, ok: bool, witness=None) -> bool:
        self.count += 1
        if not ok:
            self.failed += 1
            if self.first is None:
                self.first = witness
        return ok

    def emit(self, rep: Report, check: str, anchor: str, subject: str) -> None:
        w = {"instances": self.count}
        if self.failed:
            w["failed"] = self.failed
            w["first_failure"] = self.first
        rep.add(check, anchor, self.failed == 0, subject, w)


def _theories(name: str, cap: int):
    G = load_group(name)
    T = character_table(G)
    return G, T, enumerate_scts(T, cap)


def _label(name: str, i: int) -> str:
    return f"{name} S#{i}"


# ---------------------------------------------------------------------------
# axioms


def theory_invariant_failures(S: SupercharacterTheory) -> list[str]:
    """Names of the theory invariants that fail, recomputed from scratch."""
    G = S.group
    T = S.table
    bad = []
    if len(S.char_partition) != len(S.class_partition):
        bad.append("equal-count")
    if S.cl(0) != (0,):
        bad.append("identity-superclass")
    if S.char_partition.block(0) != (0,):
        bad.append("trivial-character-block")
    cls = conjugacy_classes(G)
    if not all(set(cls.block(g)) <= set(b) for b in S.classes for g in b):
        bad.append("union-of-classes")
    blocks = set(S.classes)
    if not all(tuple(sorted(G.inv[g] for g in b)) in blocks for b in S.classes):
        bad.append("inverse-permutes-superclasses")
    for X, sigma in zip(S.char_partition.blocks, S.supercharacters):
        if sigma != sigma_character(T, X):
            bad.append("supercharacter-formula")
            break
        if any(sigma(g) != sigma(b[0]) for b in S.classes for g in b):
            bad.append("supercharacter-constant")
            break
    return bad


def axioms_suite(corpus: Sequence[str], cap: int = DEFAULT_ENUMERATION_CAP) -> Report:
    rep = Report("axioms")
    for name in corpus:
        G, T, scts = _theories(name, cap)
        rep.add("theory-count", "exhaustive enumeration", len(scts) > 0, name, len(scts))
        for i, S in enumerate(scts):
            sub = _label(name, i)
            bad = theory_invariant_failures(S)
            rep.add("theory-invariants", "axioms of a supercharacter theory", not bad, sub, bad or None)
            again = validate_sct(T, S.class_partition)
            rep.add(
                "validate-round-trip",
                "validation recovers the same theory",
                isinstance(again, SupercharacterTheory) and again.char_partition == S.char_partition,
                sub,
            )
            rep.extend(column_report(S, sub))
    return rep


def column_report(S: SupercharacterTheory, subject: str) -> Report:
    """Column orthogonality over every pair of elements.

    The sum is a class function in both arguments and superclasses are
    unions of conjugacy classes, so pairs of class representatives cover
    every element pair.
    """
    rep = Report("column")
    G = S.group
    tally = _Tally()
    reps = [b[0] for b in conjugacy_classes(G).blocks]
    for g in reps:
        K = set(S.cl(g))
        for h in reps:
            got = column_orthogonality_sum(S, g, h)
            want = Fraction(G.order, len(K)) if h in K else 0
            tally(got == want, [g, h, str(got), str(want)])
    tally.emit(rep, "column-orthogonality", "|G|/|cl_S(g)| on-class, 0 off-class", subject)
    return rep


# ---------------------------------------------------------------------------
# divisibility and induced theories


def _fold(rep: Report, inner: Report, subject: str) -> None:
    tallies: dict[str, tuple[str, _Tally]] = {}
    for e in inner.entries:
        anchor, t = tallies.setdefault(e.check, (e.anchor, _Tally()))
        t(e.passed, [e.subject, e.witness])
    for check in sorted(tallies):
        anchor, t = tallies[check]
        t.emit(rep, check, anchor, subject)


def coherence_report(S: SupercharacterTheory, subject: str) -> Report:
    """S_{H/N} computed both ways for every nested pair of S-normal N <= H."""
    rep = Report("coherence")
    tally = _Tally()
    subs = s_normal_subgroups(S)
    for N in subs:
        D = deflate_theory(S, N)
        _, q = quotient_group(S.group, N)
        for H in subs:
            if not N <= H:
                continue
            first = factor_theory(S, H, N)
            image = Subgroup.from_members(D.group, {q(h) for h in H.members})
            second = restrict_theory(D, image)
            tally(first.canonical_form() == second.canonical_form(), [N.order, H.order, list(N.members), list(H.members)])
    tally.emit(rep, "induced-theory-coherence", "restrict-then-deflate equals deflate-then-restrict", subject)
    return rep


def induction_report(S: SupercharacterTheory, subject: str) -> Report:
    """Inducing an S_N-character gives sigma of the irreducibles lying over it."""
    rep = Report("induction")
    T = S.table
    tally = _Tally()
    for N in s_normal_subgroups(S):
        SN = restrict_theory(S, N)
        over = [SN.table.constituents(restrict(chi, N)) for chi in T.irreducibles]
        for j, psi in enumerate(SN.supercharacters):
            X = [i for i, c in enumerate(over) if c & SN.table.constituents(psi)]
            tally(induce(psi, N) == sigma_character(T, X), [list(N.members), j])
    tally.emit(rep, "induced-supercharacter", "Ind of an S_N-character is sigma of Irr(G | psi)", subject)
    return rep


def _restricts_to_linear(chi, Z: Subgroup) -> bool:
    """Whether chi restricted to Z is chi(1) times a linear character."""
    G = chi.group
    d = chi.degree
    d2 = d * d
    for a in Z.members:
        ca = chi(a)
        if ca.abs2() != d2:
            return False
        for b in Z.members:
            if ca * chi(b) != d * chi(G.mult[a][b]):
                return False
    return True


def _cyclic_quotient(N: Subgroup, K: Subgroup) -> bool:
    """Whether N/K is cyclic, for K <= N normal."""
    G = N.parent
    index = N.order // K.order
    for g in N.members:
        x, k = g, 1
        while x not in K:
            x = G.mult[x][g]
            k += 1
        if k == index:
            return True
    return False


def _padded(terms: Sequence[Subgroup], n: int) -> list[Subgroup]:
    return list(terms) + [terms[-1]] * (n - len(terms))


def structure_report(S: SupercharacterTheory, subject: str) -> Report:
    """Center, commutator and quotient identities of one theory."""
    rep = Report("structure")
    G = S.group
    Z = sct_center(S)

    t = _Tally()
    for z in Z.members:
        for g in range(G.order):
            t({G.mult[z][k] for k in S.cl(g)} == set(S.cl(G.mult[z][g])), [z, g])
    t.emit(rep, "center-translates-superclasses", "z cl(g) = cl(zg) for z in Z(S)", subject)

    t = _Tally()
    for j, chi in enumerate(S.supercharacters):
        t(_restricts_to_linear(chi, Z), j)
    t.emit(rep, "center-restriction-linear", "S-characters restrict to Z(S) as degree times linear", subject)

    t = _Tally()
    for j, chi in enumerate(S.supercharacters):
        C = character_center(chi)
        K = Subgroup.from_members(G, [g for g in range(G.order) if kernel_mask(chi) >> g & 1])
        t(is_s_normal(S, C) and _restricts_to_linear(chi, C) and _cyclic_quotient(C, K), j)
    t.emit(rep, "character-center", "Z(chi) is S-normal, chi is central on it, Z(chi)/ker chi is cyclic", subject)

    subs = s_normal_subgroups(S)
    comm = {N: sct_commutator(S, N) for N in subs}
    nil = {N: is_s_nilpotent(restrict_theory(S, N)).value for N in subs}
    t_lat, t_split, t_fit = _Tally(), _Tally(), _Tally()
    for a, H in enumerate(subs):
        for N in subs[a:]:
            HN = subgroup_product(H, N)
            w = [list(H.members), list(N.members)]
            t_lat(is_s_normal(S, HN) and is_s_normal(S, subgroup_intersection(H, N)), w)
            t_split(comm[HN] == subgroup_product(comm[H], comm[N]), w)
            if nil[H] and nil[N]:
                t_fit(is_s_nilpotent(restrict_theory(S, HN)).value, w)
    t_lat.emit(rep, "s-normal-lattice", "HN and the intersection of H and N are S-normal", subject)
    t_split.emit(rep, "commutator-splits", "[HN, S] = [H, S][N, S]", subject)
    t_fit.emit(rep, "nilpotent-products", "S_H and S_N nilpotent imply S_HN nilpotent", subject)

    lower = lower_central_series(S).terms
    whole_nil = is_s_nilpotent(S).value
    t_gs, t_q, t_iso, t_ext = _Tally(), _Tally(), _Tally(), _Tally()
    for N in subs:
        D = deflate_theory(S, N)
        _, q = quotient_group(G, N)
        w = list(N.members)
        t_gs((comm[whole_group(G)] <= N) == sct_center(D).is_whole(), w)
        dl = lower_central_series(D).terms
        n = max(len(lower), len(dl))
        images = [{q(g) for g in L.members} for L in _padded(lower, n)]
        t_q(images == [set(L.members) for L in _padded(dl, n)], w)
        above = {frozenset(q(g) for g in M.members) for M in subs if N <= M}
        t_iso(above == {frozenset(M.members) for M in s_normal_subgroups(D)}, w)
        t_ext(whole_nil == (nil[N] and is_s_nilpotent(D).value), w)
    t_gs.emit(rep, "commutator-below-normal", "[G, S] <= N iff the quotient theory by N has center G/N", subject)
    t_q.emit(rep, "quotient-lower-series", "the lower series of S_{G/N} is the image of that of S", subject)
    t_iso.emit(rep, "correspondence", "S-normal M containing N match the S_{G/N}-normal subgroups", subject)
    t_ext.emit(rep, "nilpotent-extension", "S nilpotent iff S_N and S_{G/N} are nilpotent", subject)
    return rep


def divisibility_suite(corpus: Sequence[str], cap: int = DEFAULT_ENUMERATION_CAP) -> Report:
    rep = Report("divisibility")
    for name in corpus:
        _, _, scts = _theories(name, cap)
        for i, S in enumerate(scts):
            sub = _label(name, i)
            _fold(rep, divisibility_report(S), sub)
            rep.extend(coherence_report(S, sub))
            rep.extend(induction_report(S, sub))
    return rep


# ---------------------------------------------------------------------------
# lattice


def _product(A: Subgroup, B: Subgroup) -> Subgroup:
    return generated_subgroup(A.parent, list(A.members) + list(B.members))


def lattice_suite(corpus: Sequence[str], cap: int = DEFAULT_ENUMERATION_CAP) -> Report:
    rep = Report("lattice")
    for name in corpus:
        G, T, scts = _theories(name, cap)
        W = whole_group(G)
        Z = [sct_center(S) for S in scts]
        C = [sct_commutator(S, W) for S in scts]
        monotone, meets, joins, bounds, by_chars = _Tally(), _Tally(), _Tally(), _Tally(), _Tally()
        for i, S in enumerate(scts):
            for j, U in enumerate(scts):
                if refines(S, U):
                    monotone(Z[j] <= Z[i] and C[i] <= C[j], [i, j])
                by_chars(refines(S, U) == characters_are_sums(U, S), [i, j])
                if j < i:
                    continue
                V = join(S, U)
                M = meet(S, U, cap)
                bounds(refines(S, V) and refines(U, V) and refines(M, S) and refines(M, U), [i, j])
                meets(
                    _product(Z[i], Z[j]) <= sct_center(M)
                    and sct_commutator(M, W).mask & ~(C[i].mask & C[j].mask) == 0,
                    [i, j],
                )
                joins(
                    sct_center(V).mask == Z[i].mask & Z[j].mask
                    and sct_commutator(V, W) == _product(C[i], C[j]),
                    [i, j],
                )
        monotone.emit(rep, "monotone-center-commutator", "S <= T gives Z(T) <= Z(S) and [G,S] <= [G,T]", name)
        meets.emit(rep, "meet-inequalities", "Z(S)Z(T) <= Z(S meet T), [G,S meet T] <= [G,S] cap [G,T]", name)
        joins.emit(rep, "join-equalities", "Z(S join T) = Z(S) cap Z(T), [G,S join T] = [G,S][G,T]", name)
        bounds.emit(rep, "join-meet-bounds", "join is an upper bound and meet a lower bound", name)
        by_chars.emit(rep, "refinement-by-characters", "S <= T iff every T-character is a sum of S-characters", name)
    return rep


def characters_are_sums(T: SupercharacterTheory, S: SupercharacterTheory) -> bool:
    """Whether every supercharacter of T is a sum of supercharacters of S.

    S-characters have disjoint constituents, so the only candidate sum for
    a T-character is the sum of the S-characters whose constituents it
    contains.
    """
    parts = [(frozenset(X), chi) for X, chi in zip(S.char_partition.blocks, S.supercharacters)]
    for Y, tau in zip(T.char_partition.blocks, T.supercharacters):
        Y = frozenset(Y)
        total = None
        for X, chi in parts:
            if X <= Y:
                total = chi if total is None else total + chi
        if total is None or total != tau:
            return False
    return True


# ---------------------------------------------------------------------------
# nilpotence


def _p_of(n: int) -> Optional[int]:
    from .structure import is_p_group_order

    return is_p_group_order(n)


def nilpotence_suite(corpus: Sequence[str], cap: int = DEFAULT_ENUMERATION_CAP) -> Report:
    rep = Report("nilpotence")
    for name in corpus:
        G, T, scts = _theories(name, cap)
        p = _p_of(G.order)
        for i, S in enumerate(scts):
            sub = _label(name, i)
            cert = is_s_nilpotent(S)
            rep.add(
                "nilpotence-conditions-agree",
                "central series, lower and upper series, chief factors",
                cert.consistent,
                sub,
                {"nilpotent": cert.value, **cert.conditions},
            )
            series = [s_chief_series(S)] + [s_chief_series(S, seed) for seed in JORDAN_HOLDER_SEEDS]
            orders = {tuple(sorted(c.factor_orders)) for c in series}
            prints = {tuple(sorted(c.fingerprints)) for c in series}
            rep.add(
                "jordan-holder",
                "chief factors agree across chief series",
                len(orders) == 1 and len(prints) == 1 and all(all(c.simple) for c in series),
                sub,
                sorted(orders),
            )
            if p is not None:
                degs = all(G.order % d == 0 for d in S.degrees)
                sizes = all(G.order % s == 0 for s in S.class_sizes)
                rep.add(
                    "p-group-degree-criterion",
                    "on p-groups: nilpotent iff degrees divide |G| iff superclass sizes divide |G|",
                    cert.value == degs == sizes,
                    sub,
                    {"nilpotent": cert.value, "degrees": degs, "class_sizes": sizes},
                )
            rep.extend(structure_report(S, sub))
    return rep


# ---------------------------------------------------------------------------
# the order-6 worked example


def example_suite(corpus: Sequence[str] = ("C6",), cap: int = DEFAULT_ENUMERATION_CAP) -> Report:
    """The cyclic group of order 6 with superclasses {1}, {x^3}, {x^2, x^5}, {x, x^4}."""
    from .structure import s_chief_series

    rep = Report("example")
    if "C6" not in corpus:
        return rep
    G = load_group("C6")
    T = character_table(G)
    blocks = [[0], [3], [2, 5], [1, 4]]
    V = validate_sct(T, blocks)
    ok = isinstance(V, SupercharacterTheory)
    rep.add("example-validates", "worked example on the cyclic group of order 6", ok, "C6")
    if not ok:
        return rep
    S = theory_from_classes(G, blocks)
    P = Subgroup.from_members(G, [0, 3])
    Q = Subgroup.from_members(G, [0, 2, 4])
    from .structure import is_s_normal
    from .theory import minimal_sct

    rep.add("example-q-not-s-normal", "Q is not S-normal", not is_s_normal(S, Q), "C6")
    rep.add("example-p-s-normal", "P is S-normal", is_s_normal(S, P), "C6")
    SP = restrict_theory(S, P)
    rep.add("example-restriction-minimal", "S_P = m(P)", SP == minimal_sct(SP.table), "C6")
    SQ = deflate_theory(S, P)
    rep.add("example-quotient-minimal", "S_{G/P} = m(G/P)", SQ == minimal_sct(SQ.table), "C6")
    chief = s_chief_series(S)
    rep.add("example-chief-series", "G > P > 1 is an S-chief series", [t.order for t in chief.terms] == [6, 2, 1], "C6")
    rep.add("example-nilpotent", "the example theory is nilpotent", bool(is_s_nilpotent(S)), "C6")
    rep.add("example-center", "Z(S) = P", sct_center(S) == P, "C6")
    rep.add("example-commutator", "[G,S] = P", sct_commutator(S, whole_group(G)) == P, "C6")
    rep.add("example-column-sum", "column sum at g = h = x is 3", column_orthogonality_sum(S, 1, 1) == 3, "C6")
    return rep


# ---------------------------------------------------------------------------
# algebra


def algebra_suite(corpus: Sequence[str]) -> Report:
    from .algebra import (
        annihilator_series,
        compare_series,
        double_orbit_sct,
        ideal_subgroups_by_order,
        load_algebra,
        power_ideals,
        quotient_theory_matches,
        s_normal_sets_closed,
    )

    rep = Report("algebra")
    for name in corpus:
        J = load_algebra(name)
        q, n = J.q, J.dim
        S = double_orbit_sct(J)
        rep.add("double-orbit-validates", "double orbits form a supercharacter theory", True, name, len(S))

        def q_power(x: int) -> bool:
            while x % q == 0:
                x //= q
            return x == 1

        rep.add(
            "superclass-sizes-q-powers",
            "double-orbit sizes are q-powers",
            all(q_power(s) for s in S.class_sizes),
            name,
            sorted(S.class_sizes),
        )
        rep.add(
            "degrees-q-powers",
            "supercharacter degrees are q-powers",
            all(q_power(d) for d in S.degrees),
            name,
            sorted(S.degrees),
        )
        rep.extend(_renamed(compare_series(J), name))
        orders = [o for o, _, _ in ideal_subgroups_by_order(J)]
        rep.add(
            "ideal-subgroups-every-order",
            "an S-normal ideal subgroup of every q-power order",
            orders == [q**m for m in range(n + 1)],
            name,
            orders,
        )
        ideals = power_ideals(J) + annihilator_series(J)
        rep.add(
            "quotient-is-double-orbit",
            "the quotient theory by 1 + I is the double-orbit theory of 1 + J/I",
            all(quotient_theory_matches(J, I) for I in ideals),
            name,
            len(ideals),
        )
        rep.add(
            "s-normal-multiplicatively-closed",
            "every S-normal subgroup is 1 + M with M closed",
            all(ok for _, ok in s_normal_sets_closed(J)),
            name,
        )
        rep.add("double-orbit-nilpotent", "the double-orbit theory is nilpotent", bool(is_s_nilpotent(S)), name)
    return rep


def _renamed(inner: Report, name: str) -> Report:
    out = Report(inner.suite)
    for e in inner.entries:
        out.add(e.check, e.anchor, e.passed, f"{name} {e.subject}", e.witness)
    return out


# ---------------------------------------------------------------------------


def run_suite(name: str, corpus: Optional[Iterable[str]] = None, cap: int = DEFAULT_ENUMERATION_CAP) -> Report:
    """Run one suite; ``corpus`` defaults to the suite's built-in corpus.

    A corpus item that cannot be loaded becomes a failed "input" entry and
    the suite carries on with the rest.
    """
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    items = list(DEFAULT_CORPORA[name] if corpus is None else corpus)
    runners: dict[str, Callable[[list[str]], Report]] = {
        "axioms": lambda c: axioms_suite(c, cap),
        "divisibility": lambda c: divisibility_suite(c, cap),
        "lattice": lambda c: lattice_suite(c, cap),
        "nilpotence": lambda c: nilpotence_suite(c, cap),
        "algebra": algebra_suite,
        "example": lambda c: example_suite(c, cap),
    }
    rep = Report(name)
    for item in items:
        try:
            rep.extend(runners[name]([item]))
        except SCTError as exc:
            rep.add("input", "plumbing", False, item, f"{type(exc).__name__}: {exc}")
    return rep

