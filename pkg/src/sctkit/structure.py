"""Normal structure of a supercharacter theory.

S-normal subgroups (unions of superclasses), the center Z(S), the
commutator [H, S], theories induced on an S-normal subgroup and on its
quotient, central and chief series, nilpotence, and the divisibility
facts that tie degrees of supercharacters to indices of S-normal
subgroups.

Throughout, ``cl_S(g)`` is the superclass of ``g`` and, for an S-normal
``N``, the image of a superclass in ``G/N`` is a superclass of the
quotient theory.  So ``gN`` is central in the quotient theory exactly
when ``cl_S(g)`` lies inside the coset ``gN``, which is how the upper
series and the step certificates are computed without building
quotients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .characters import (
    ClassFunction,
    character_center,
    character_table,
    deflate,
    kernel_mask,
    restrict,
)
from .cyclotomic import ZERO, Cyclotomic
from .errors import (
    InternalAxiomFailure,
    InternalClosureFailure,
    NotASubgroup,
    NotSNormal,
    PreconditionFailed,
)
from .groups import (
    Subgroup,
    _closure_mask,
    generated_subgroup,
    is_normal,
    is_subgroup,
    quotient_group,
    subgroup_as_group,
    subgroup_from_mask,
    trivial_subgroup,
    whole_group,
)
from .report import Report
from .theory import SupercharacterTheory, validate_sct


def _check_parent(S: SupercharacterTheory, H: Subgroup) -> None:
    if H.parent is not S.group:
        raise NotASubgroup("subgroup does not belong to the theory's group")


def _block_masks(S: SupercharacterTheory) -> list[int]:
    masks = S._cache.get("block_masks")
    if masks is None:
        masks = []
        for b in S.classes:
            m = 0
            for g in b:
                m |= 1 << g
            masks.append(m)
        S._cache["block_masks"] = masks
    return masks


def _saturate(S: SupercharacterTheory, mask: int) -> int:
    """Union of the superclasses meeting ``mask``."""
    out = 0
    for bm in _block_masks(S):
        if bm & mask:
            out |= bm
    return out


def _s_normal_closure_mask(S: SupercharacterTheory, mask: int) -> int:
    G = S.group
    while True:
        sub = _closure_mask(G, [g for g in range(G.order) if mask >> g & 1])
        sat = _saturate(S, sub)
        if sat == mask:
            return mask
        mask = sat


# ---------------------------------------------------------------------------
# S-normal subgroups


def is_s_normal(S: SupercharacterTheory, N: Subgroup) -> bool:
    """Whether ``N`` is a union of superclasses."""
    _check_parent(S, N)
    return _saturate(S, N.mask) == N.mask


def s_normal_subgroups(S: SupercharacterTheory) -> list[Subgroup]:
    """All S-normal subgroups, sorted by order then members.

    Grows the family from {1} by adjoining one superclass at a time and
    closing under products and superclasses.  Every S-normal M above a
    found N is reached: adjoin a superclass of M outside N and repeat.
    """
    if "s_normal" in S._cache:
        return S._cache["s_normal"]
    G = S.group
    blocks = _block_masks(S)
    seen = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for mask in frontier:
            for bm in blocks:
                if bm & ~mask:
                    m = _s_normal_closure_mask(S, mask | bm)
                    if m not in seen:
                        seen.add(m)
                        nxt.append(m)
        frontier = nxt
    subs = [subgroup_from_mask(G, m) for m in seen]
    subs.sort(key=lambda H: (H.order, H.members))
    S._cache["s_normal"] = subs
    return subs


def sct_center(S: SupercharacterTheory) -> Subgroup:
    """Z(S): the elements whose superclass is a singleton."""
    if "center" not in S._cache:
        members = [b[0] for b in S.classes if len(b) == 1]
        if not is_subgroup(S.group, members):
            raise InternalClosureFailure("singleton superclasses do not form a subgroup")
        S._cache["center"] = Subgroup.from_members(S.group, members)
    return S._cache["center"]


def sct_commutator(S: SupercharacterTheory, H: Subgroup) -> Subgroup:
    """[H, S], generated by g^-1 k for g in H and k in cl_S(g)."""
    _check_parent(S, H)
    G = S.group
    gens = set()
    for g in H.members:
        gi = G.inv[g]
        for k in S.cl(g):
            gens.add(G.mult[gi][k])
    C = generated_subgroup(G, gens)
    if not is_normal(G, C):
        raise InternalClosureFailure("[H, S] is not normal in G")
    return C


def s_closure(S: SupercharacterTheory, H: Subgroup, check: bool = True) -> Subgroup:
    """Smallest S-normal subgroup containing ``H``, computed as H[H, S]."""
    _check_parent(S, H)
    C = sct_commutator(S, H)
    out = generated_subgroup(S.group, list(H.members) + list(C.members))
    if check:
        mask = (1 << S.group.order) - 1
        for N in s_normal_subgroups(S):
            if H.mask & ~N.mask == 0:
                mask &= N.mask
        if mask != out.mask:
            raise InternalClosureFailure("H[H,S] differs from the intersection of S-normal overgroups")
    return out


def _require_s_normal(S: SupercharacterTheory, N: Subgroup) -> None:
    if not is_s_normal(S, N):
        raise NotSNormal(f"subgroup of order {N.order} is not a union of superclasses")


# ---------------------------------------------------------------------------
# induced theories


def restrict_theory(S: SupercharacterTheory, N: Subgroup) -> SupercharacterTheory:
    """The theory S_N on N: superclasses of S inside N, characters Irr(Res chi)."""
    _check_parent(S, N)
    _require_s_normal(S, N)
    key = ("restrict", N.mask)
    if key in S._cache:
        return S._cache[key]
    if N.is_whole():
        S._cache[key] = S
        return S
    H, emb = subgroup_as_group(N)
    T = character_table(H)
    pos = {g: i for i, g in enumerate(emb)}
    blocks = [[pos[g] for g in b] for b in S.classes if b[0] in N]
    expected = {T.constituents(restrict(chi, N)) for chi in S.supercharacters}
    U = validate_sct(T, blocks)
    if not isinstance(U, SupercharacterTheory):
        raise InternalAxiomFailure(f"restricted theory rejected: {U.axiom} {U.message}")
    if set(map(frozenset, U.char_partition.blocks)) != expected:
        raise InternalAxiomFailure("restricted character partition disagrees with Irr(Res chi)")
    S._cache[key] = U
    return U


def deflate_theory(S: SupercharacterTheory, N: Subgroup) -> SupercharacterTheory:
    """The theory S^{G/N}: images of superclasses, characters with N in the kernel."""
    _check_parent(S, N)
    _require_s_normal(S, N)
    key = ("deflate", N.mask)
    if key in S._cache:
        return S._cache[key]
    if N.is_trivial():
        S._cache[key] = S
        return S
    Q, q = quotient_group(S.group, N)
    T = character_table(Q)
    blocks = sorted({tuple(sorted({q(g) for g in b})) for b in S.classes})
    expected = {
        T.constituents(deflate(chi, q))
        for chi in S.supercharacters
        if N.mask & ~kernel_mask(chi) == 0
    }
    U = validate_sct(T, blocks)
    if not isinstance(U, SupercharacterTheory):
        raise InternalAxiomFailure(f"quotient theory rejected: {U.axiom} {U.message}")
    if set(map(frozenset, U.char_partition.blocks)) != expected:
        raise InternalAxiomFailure("quotient character partition disagrees with deflated S-characters")
    S._cache[key] = U
    return U


def factor_theory(S: SupercharacterTheory, N: Subgroup, H: Subgroup) -> SupercharacterTheory:
    """S_{N/H} = (S_N)^{N/H} for S-normal H <= N."""
    _require_s_normal(S, H)
    SN = restrict_theory(S, N)
    if N.is_whole():
        return deflate_theory(SN, H)
    _, emb = subgroup_as_group(N)
    pos = {g: i for i, g in enumerate(emb)}
    Hn = Subgroup.from_members(SN.group, [pos[h] for h in H.members])
    return deflate_theory(SN, Hn)


# ---------------------------------------------------------------------------
# central series


def _central_step(S: SupercharacterTheory, upper: Subgroup, lower: Subgroup) -> bool:
    """Whether upper/lower lies in the center of the quotient theory by ``lower``."""
    G = S.group
    for g in upper.members:
        gi = G.inv[g]
        for k in S.cl(g):
            if G.mult[gi][k] not in lower:
                return False
    return True


@dataclass(frozen=True)
class CentralSeries:
    theory: SupercharacterTheory
    terms: tuple[Subgroup, ...]
    kind: str
    certificates: tuple[bool, ...]
    reaches_target: bool
    stabilization_index: int

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(t.order for t in self.terms)

    def is_central(self) -> bool:
        return self.reaches_target and all(self.certificates)


def _certify(S: SupercharacterTheory, terms: list[Subgroup]) -> tuple[bool, ...]:
    return tuple(_central_step(S, a, b) for a, b in zip(terms, terms[1:]))


def lower_central_series(S: SupercharacterTheory) -> CentralSeries:
    """G = gamma_1 >= gamma_2 >= ... with gamma_{i+1} = [gamma_i, S], cut where it stabilizes."""
    if "lower" in S._cache:
        return S._cache["lower"]
    terms = [whole_group(S.group)]
    while True:
        nxt = sct_commutator(S, terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    out = CentralSeries(S, tuple(terms), "lower", _certify(S, terms), terms[-1].is_trivial(), len(terms))
    S._cache["lower"] = out
    return out


def upper_central_series(S: SupercharacterTheory) -> CentralSeries:
    """1 = zeta_0 <= zeta_1 <= ..., stored in descending order like the lower series."""
    if "upper" in S._cache:
        return S._cache["upper"]
    G = S.group
    asc = [trivial_subgroup(G)]
    while True:
        prev = asc[-1]
        members = []
        for g in range(G.order):
            gi = G.inv[g]
            if all(G.mult[gi][k] in prev for k in S.cl(g)):
                members.append(g)
        nxt = Subgroup.from_members(G, members)
        if nxt == prev:
            break
        asc.append(nxt)
    terms = asc[::-1]
    out = CentralSeries(S, tuple(terms), "upper", _certify(S, terms), terms[0].is_whole(), len(asc))
    S._cache["upper"] = out
    return out


def custom_central_series(S: SupercharacterTheory, terms: list[Subgroup]) -> CentralSeries:
    """Certify a user-supplied descending chain of S-normal subgroups."""
    for t in terms:
        _check_parent(S, t)
        _require_s_normal(S, t)
    for a, b in zip(terms, terms[1:]):
        if not b <= a:
            raise PreconditionFailed("series terms must descend")
    ok = bool(terms) and terms[0].is_whole() and terms[-1].is_trivial()
    return CentralSeries(S, tuple(terms), "custom", _certify(S, list(terms)), ok, len(terms))


# ---------------------------------------------------------------------------
# chief series


def _maximal_below(S: SupercharacterTheory, N: Subgroup) -> list[Subgroup]:
    """S-normal subgroups covered by ``N`` in the lattice of S-normal subgroups."""
    below = [M for M in s_normal_subgroups(S) if M < N]
    return [M for M in below if not any(M < L for L in below)]


def s_normal_covers(S: SupercharacterTheory) -> list[tuple[Subgroup, Subgroup]]:
    """All pairs (N, H) of S-normal subgroups with H maximal S-normal inside N.

    These are exactly the factors that occur in some S-chief series.
    """
    if "covers" not in S._cache:
        S._cache["covers"] = [(N, H) for N in s_normal_subgroups(S) for H in _maximal_below(S, N)]
    return S._cache["covers"]


@dataclass(frozen=True)
class ChiefSeries:
    theory: SupercharacterTheory
    terms: tuple[Subgroup, ...]
    factor_orders: tuple[int, ...]
    fingerprints: tuple[tuple[int, bool], ...]
    simple: tuple[bool, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def _factor_fingerprint(N: Subgroup, H: Subgroup) -> tuple[int, bool]:
    from .groups import is_abelian_quotient

    return N.order // H.order, is_abelian_quotient(N, H)


def s_chief_series(S: SupercharacterTheory, seed: Optional[int] = None) -> ChiefSeries:
    """Descend through maximal S-normal subgroups.

    Without a seed the least candidate (by sorted member list) is taken at
    every step; with a seed the choice is pseudo-random but reproducible.
    """
    rng = random.Random(seed) if seed is not None else None
    terms = [whole_group(S.group)]
    while not terms[-1].is_trivial():
        cands = sorted(_maximal_below(S, terms[-1]), key=lambda M: M.members)
        terms.append(rng.choice(cands) if rng else cands[0])
    simple = []
    for a, b in zip(terms, terms[1:]):
        between = [M for M in s_normal_subgroups(S) if b < M < a]
        simple.append(not between)
    return ChiefSeries(
        S,
        tuple(terms),
        tuple(a.order // b.order for a, b in zip(terms, terms[1:])),
        tuple(_factor_fingerprint(a, b) for a, b in zip(terms, terms[1:])),
        tuple(simple),
    )


# ---------------------------------------------------------------------------
# nilpotence


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


@dataclass(frozen=True)
class NilpotenceCertificate:
    value: bool
    lower: CentralSeries
    upper: CentralSeries
    conditions: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.value

    @property
    def consistent(self) -> bool:
        return all(v == self.value for v in self.conditions.values())


def is_s_nilpotent(S: SupercharacterTheory) -> NilpotenceCertificate:
    """Whether G has an S-central series, with the equivalent conditions cross-checked.

    The conditions recorded are: the lower series reaches 1; the upper
    series reaches G with the same length; every chief factor has prime
    order and trivial induced fusion; every chief factor is central.
    Chief factors are exactly the covering pairs of S-normal subgroups,
    so "every chief series" is checked through all covers at once.
    """
    if "nilpotent" in S._cache:
        return S._cache["nilpotent"]
    low = lower_central_series(S)
    up = upper_central_series(S)
    covers = s_normal_covers(S)
    central = {(N.mask, H.mask): _central_step(S, N, H) for N, H in covers}
    conditions = {
        "lower-reaches-1": low.reaches_target,
        "upper-reaches-G": up.reaches_target and (not low.reaches_target or up.length == low.length),
        "chief-factors-prime": all(
            _is_prime(N.order // H.order) and central[(N.mask, H.mask)] for N, H in covers
        ),
        "chief-series-central": all(central.values()),
    }
    cert = NilpotenceCertificate(low.reaches_target, low, up, conditions)
    S._cache["nilpotent"] = cert
    return cert


def s_normal_p_core(S: SupercharacterTheory, p: int) -> Subgroup:
    """Largest S-normal p-subgroup P with P nilpotent for S_P."""
    if not _is_prime(p):
        raise PreconditionFailed(f"{p} is not prime")
    good = []
    for P in s_normal_subgroups(S):
        n = P.order
        while n % p == 0:
            n //= p
        if n == 1 and is_s_nilpotent(restrict_theory(S, P)):
            good.append(P)
    mask = 0
    for P in good:
        mask |= P.mask
    core = generated_subgroup(S.group, [g for g in range(S.group.order) if mask >> g & 1])
    if core not in good:
        raise InternalClosureFailure("the S-normal nilpotent p-subgroups have no largest member")
    return core


# ---------------------------------------------------------------------------
# characters


def column_orthogonality_sum(S: SupercharacterTheory, g: int, h: int) -> Cyclotomic:
    """sum over supercharacters of chi(g) conj(chi(h)) / chi(1)."""
    s = ZERO
    for chi in S.supercharacters:
        s = s + chi(g) * chi(h).conjugate() / chi.degree
    return s


def multiply_by_linear(S: SupercharacterTheory, chi: ClassFunction, lam: ClassFunction) -> ClassFunction:
    """The product of an S-character with a linear S-character trivial on [G, S]."""
    if lam.degree != 1 or lam not in S.supercharacters:
        raise PreconditionFailed("the multiplier is not a linear S-character")
    if chi not in S.supercharacters:
        raise PreconditionFailed("the first factor is not an S-character")
    C = sct_commutator(S, whole_group(S.group))
    if C.mask & ~kernel_mask(lam):
        raise PreconditionFailed("[G, S] is not contained in the kernel of the linear character")
    out = chi * lam
    if out not in S.supercharacters:
        raise InternalAxiomFailure("product with a linear S-character left Ch(S)")
    return out


def lower_series_from_characters(S: SupercharacterTheory) -> list[Subgroup]:
    """Rebuild the lower series from S-characters alone.

    [N, S] for S-normal N is the intersection of the kernels (in N) of the
    restrictions Res_N(chi) whose character center is all of N.
    """
    G = S.group
    terms = [whole_group(G)]
    while True:
        N = terms[-1]
        H, emb = subgroup_as_group(N)
        mask = (1 << G.order) - 1
        for chi in S.supercharacters:
            psi = restrict(chi, N)
            if character_center(psi).is_whole():
                km = kernel_mask(psi)
                sub = 0
                for i, g in enumerate(emb):
                    if km >> i & 1:
                        sub |= 1 << g
                mask &= sub
        nxt = subgroup_from_mask(G, mask & N.mask)
        if nxt == N:
            return terms
        terms.append(nxt)


# ---------------------------------------------------------------------------
# divisibility


def _divides(a: int, b: int) -> bool:
    return a != 0 and b % a == 0


def _ratio(a: Cyclotomic, b: Cyclotomic) -> Fraction:
    return a.to_fraction() / b.to_fraction()


def _subject(N: Subgroup) -> str:
    return f"|N|={N.order} N={list(N.members)}"


def divisibility_report(S: SupercharacterTheory) -> Report:
    """Degree and class-size divisibility across every S-normal subgroup."""
    G = S.group
    rep = Report("divisibility")
    comm = sct_commutator(S, whole_group(G))
    center = sct_center(S)
    for N in s_normal_subgroups(S):
        SN = restrict_theory(S, N)
        sub = _subject(N)
        for i, chi in enumerate(S.supercharacters):
            psi_set = SN.table.constituents(restrict(chi, N))
            idx = [j for j, X in enumerate(SN.char_partition.blocks) if frozenset(X) == psi_set]
            ok = len(idx) == 1
            alpha = None
            if ok:
                psi = SN.supercharacters[idx[0]]
                alpha = _ratio(chi.degree, psi.degree)
                ok = alpha.denominator == 1 and restrict(chi, N) == psi * alpha
            rep.add(
                "restriction-degree-divides",
                "restriction is a multiple of a restricted supercharacter",
                ok,
                f"{sub} chi#{i}",
                {"chi(1)": str(chi.degree), "ratio": str(alpha)},
            )
            if ok and comm.mask & ~N.mask == 0 and N.mask & ~kernel_mask(chi):
                rep.add(
                    "action-ratio-divides-index",
                    "chi(1)/psi(1) divides |G:N| when [G,S] <= N",
                    _divides(int(alpha), G.order // N.order),
                    f"{sub} chi#{i}",
                    {"ratio": str(alpha), "index": G.order // N.order},
                )
        Q, q = quotient_group(G, N)
        for b in S.classes:
            img = len({q(g) for g in b})
            rep.add(
                "quotient-class-size-divides",
                "|cl of gN in G/N| divides |cl_S(g)|",
                _divides(img, len(b)),
                f"{sub} g={b[0]}",
                {"class": len(b), "image": img},
            )
            if N.mask & ~center.mask == 0:
                rep.add(
                    "central-fiber-divides",
                    "|cl_S(g)| / |cl of gN| divides |N| when N <= Z(S)",
                    _divides(len(b) // img, N.order) and len(b) % img == 0,
                    f"{sub} g={b[0]}",
                    {"class": len(b), "image": img, "|N|": N.order},
                )
    cert = is_s_nilpotent(S)
    for i, chi in enumerate(S.supercharacters):
        d = int(chi.degree.to_fraction())
        K = kernel_mask(chi)
        ker_order = bin(K).count("1")
        if cert:
            rep.add(
                "degree-divides-kernel-index",
                "chi(1) divides |G:ker chi| for nilpotent theories",
                _divides(d, G.order // ker_order),
                f"chi#{i}",
                {"chi(1)": d, "index": G.order // ker_order},
            )
            rep.add(
                "degree-divides-order",
                "chi(1) divides |G| for nilpotent theories",
                _divides(d, G.order),
                f"chi#{i}",
                {"chi(1)": d, "|G|": G.order},
            )
    if cert:
        for b in S.classes:
            rep.add(
                "class-size-divides-order",
                "|cl_S(g)| divides |G| for nilpotent theories",
                _divides(len(b), G.order),
                f"g={b[0]}",
                {"class": len(b), "|G|": G.order},
            )
    return rep


def is_p_group_order(n: int) -> Optional[int]:
    """The prime p if n is a power of p (n > 1), else None."""
    for p in range(2, n + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return None

