"""Deciding realizability of two-stage systems, with machine-checkable certificates.

The criterion: the data (A_n, A_{n+k}, eta) is realizable iff eta factors
through the comparison map gamma into the Eilenberg-MacLane homology. In
the stable range the comparison lands in the tensor summand
``A_n ⊗ HZ_{k+1}HZ`` (the Tor summand is split off non-naturally and gamma
misses it), so the checker factors through that summand; a factoring found
there extends by zero on the complement and, conversely, restricts.

gamma is only partially known, so verdicts quantify over every admissible
completion of the tables:

    Realizable      eta factors for every completion (witness retained)
    NonRealizable   eta factors for no completion (obstruction reported)
    Undetermined    some completions factor, some do not (blockers listed)

When the codomain table for a stem is absent, or the stem is only
partially tabulated, enumeration is impossible; the checker then falls
back to certificate mode: elements that every admissible gamma must kill
(zero entries, order bounds, exact orders) form a subgroup, and a nonzero
eta-value on it is a sound non-realizability certificate. Verdicts never
claim Realizable from partial data, except for the zero structure map,
which a product of Eilenberg-MacLane spaces always realizes.

k = 1 and k = 2 are unconditionally realizable once the structure map is
well-formed; the three-stage checker computes the composite obstruction
through the two-torsion and decides by its vanishing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import Dict, Optional, Sequence

from .errors import (
    BoundExceeded,
    InconsistentTables,
    MalformedStructureMap,
    MissingTableData,
    NotStableRange,
    UnsupportedRegime,
)
from .fgab import (
    FgAbGroup,
    GroupHom,
    CongruenceSystem,
    factor_through,
    from_cyclic_orders,
    hom_group,
    hom_solve,
    is_split_injective,
    kernel,
    mod_reduction,
    stack_homs,
    subgroup,
    tensor,
    tensor_induced,
    two_torsion_subgroup,
)
from .intlinalg import IntMatrix
from .pi_functors import GammaTildeResult, gamma_tilde
from .tables import GammaCompletion, StableTables, admissible_gamma_completions


class Status(str, Enum):
    REALIZABLE = "realizable"
    NON_REALIZABLE = "non-realizable"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TwoStagePiAlgebra:
    """Input problem: degrees n and n+k, the two groups, and the structure map.

    ``eta`` is a homomorphism out of gamma_tilde(n, k, A_n) in canonical
    coordinates; build it from semantic generator columns with
    ``build_structure_map``.
    """

    n: int
    k: int
    a_n: FgAbGroup
    a_nk: FgAbGroup
    eta: GroupHom

    def __post_init__(self):
        if self.n < 2 or self.k < 1:
            raise ValueError("need n >= 2 and k >= 1")
        if self.eta.target != self.a_nk:
            raise MalformedStructureMap("eta must land in A_{n+k}")


@dataclass(frozen=True)
class Obstruction:
    """Why no factorization exists.

    ``element`` (when present) satisfies eta(element) != 0 while every
    admissible completion of gamma kills it; ``label`` spells it over the
    semantic generators. When no single element witnesses the failure the
    element is None and the failing completions stand as the certificate.
    """

    element: Optional[tuple] = None
    label: str = ""
    note: str = ""


@dataclass(frozen=True)
class CompletionOutcome:
    assignment: tuple  # ((generator name, image coords), ...)
    factorable: bool
    witness: Optional[GroupHom] = None
    gamma_hom: Optional[GroupHom] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: Optional[GroupHom] = None
    obstruction: Optional[Obstruction] = None
    blocking: tuple = ()
    completions: tuple = ()
    note: str = ""

    def exit_code(self) -> int:
        return {Status.REALIZABLE: 0, Status.NON_REALIZABLE: 1, Status.UNDETERMINED: 2}[self.status]


# -- structure maps from semantic generator columns ----------------------


def build_structure_map(gt: GammaTildeResult, columns: Sequence[Sequence[int]],
                        target: FgAbGroup) -> GroupHom:
    """The homomorphism sending each semantic generator to its column.

    Columns are target coordinates, one per generator in ``gt.generators``
    order. Raises MalformedStructureMap when the requested values violate
    the relations of the domain (e.g. order mismatch).
    """
    if len(columns) != len(gt.generators):
        raise MalformedStructureMap(
            f"expected {len(gt.generators)} columns ({', '.join(gt.labels())}), "
            f"got {len(columns)}")
    h = hom_solve(list(columns), gt.generator_hom(), target)
    if h is None:
        raise MalformedStructureMap(
            "requested generator images do not define a homomorphism on "
            f"{gt.group} (generators {', '.join(gt.labels())})")
    return h


def format_semantic(gt: GammaTildeResult, element: Sequence[int]) -> str:
    """Spell an element of gamma_tilde over the semantic generators."""
    elem = gt.group.reduce(element)
    if all(x == 0 for x in elem):
        return "0"
    m = len(gt.generators)
    sys = CongruenceSystem(m)
    for i in range(gt.group.dim):
        coeffs = {j: gt.generators[j].element[i] for j in range(m)
                  if gt.generators[j].element[i]}
        sys.add(coeffs, elem[i], gt.group.coord_order(i))
    sol = sys.solve()
    if sol is None:
        return str(list(elem))
    terms = []
    for c, g in zip(sol, gt.generators):
        if g.order:
            c %= g.order
        if not c:
            continue
        label = g.label[2:] if g.label.startswith("1⊗") else g.label
        terms.append(label if c == 1 else f"{c}·{label}")
    return " + ".join(terms) if terms else "0"


# -- stable checker -------------------------------------------------------


def _forced_kill_generators(entry, tables: StableTables, k: int):
    """(multiplier, name, element) for generators gamma must annihilate."""
    cod = tables.em(k + 1)
    out = []
    for d, name in entry.summands:
        know = tables.gamma.get((k, name))
        if know is None:
            continue
        m = know.kill_multiplier(cod)
        eff = gcd(m, d) if d else m
        if d and eff == d:
            continue  # kills only the whole cyclic summand's zero
        out.append((eff, name, entry.element_of(name)))
    return out


def _unknown_blockers(entry, tables: StableTables, k: int) -> list:
    out = []
    for _, name in entry.summands:
        know = tables.gamma.get((k, name))
        if know is None or know.state == "unknown":
            out.append(f"stem{k}.{name}")
    return out


def _obstruction_from_dead(pa: TwoStagePiAlgebra, gt: GammaTildeResult,
                           dead_incl: GroupHom, note: str) -> Optional[Obstruction]:
    """An element of the forced-dead subgroup with nonzero eta, if any."""
    composite = pa.eta @ dead_incl
    if composite.is_zero():
        return None
    dead = dead_incl.source
    best = None
    if dead.rank == 0 and (dead.order() or 0) <= 4096:
        for x in dead.elements():
            if any(composite.apply(x)):
                y = dead_incl.apply(x)
                weight = sum(abs(c) for c in y)
                if best is None or weight < best[0]:
                    best = (weight, y)
    else:
        for j in range(dead.dim):
            unit = [1 if r == j else 0 for r in range(dead.dim)]
            if any(composite.apply(unit)):
                best = (0, dead_incl.apply(unit))
                break
    assert best is not None
    elem = best[1]
    return Obstruction(element=elem, label=format_semantic(gt, elem), note=note)


def check_stable(pa: TwoStagePiAlgebra, tables: StableTables,
                 parallel: int = 1) -> Verdict:
    """Decide a stable problem (k <= n - 2) by quantifying over completions."""
    n, k = pa.n, pa.k
    if k > n - 2:
        raise NotStableRange(f"k = {k} is not <= n - 2 = {n - 2}")
    entry = tables.q_stable_entry(k)
    gt = gamma_tilde(n, k, pa.a_n, tables)
    if pa.eta.source != gt.group:
        raise MalformedStructureMap(
            f"eta is defined on {pa.eta.source}, but gamma_tilde is {gt.group}")
    cod = tables.em(k + 1)

    if pa.eta.is_zero():
        witness = None
        if cod is not None:
            witness = GroupHom.zero(tensor(pa.a_n, cod).group, pa.a_nk)
        return Verdict(Status.REALIZABLE, witness=witness,
                       note="zero structure map; a product of Eilenberg-MacLane "
                            "spaces realizes it")

    if entry.complete and cod is not None:
        return _check_stable_enumerating(pa, gt, tables, parallel)

    # Certificate mode: the codomain is not tabulated (or the stem is
    # partial), so only forced non-realizability is decidable.
    forced = _forced_kill_generators(entry, tables, k)
    dead_gens = []
    for mult, _, q_elem in forced:
        scaled = entry.group.smul(mult, q_elem)
        if not any(scaled):
            continue
        tp = gt._tensor
        for i in range(pa.a_n.dim):
            unit = [1 if r == i else 0 for r in range(pa.a_n.dim)]
            dead_gens.append(tp.pure(unit, scaled))
    if dead_gens:
        dead, incl = subgroup(gt.group, dead_gens)
        obs = _obstruction_from_dead(pa, gt, incl,
                                     note="killed by every admissible completion")
        if obs is not None:
            return Verdict(Status.NON_REALIZABLE, obstruction=obs)
    blockers = _unknown_blockers(entry, tables, k)
    if cod is None:
        blockers.append(f"em_homology[{k + 1}] untabulated")
    if not entry.complete:
        blockers.append(f"Q_{k}^S partially tabulated")
    return Verdict(Status.UNDETERMINED, blocking=tuple(blockers),
                   note="cannot enumerate gamma completions from the available tables")


def _check_stable_enumerating(pa: TwoStagePiAlgebra, gt: GammaTildeResult,
                              tables: StableTables, parallel: int) -> Verdict:
    k = pa.k
    cod = tables.em(k + 1)
    completions = admissible_gamma_completions(k, tables)
    if not completions:
        raise InconsistentTables(
            f"no admissible gamma completion exists in stem {k}; the tables are contradictory")
    src_tp = gt._tensor
    tgt_tp = tensor(pa.a_n, cod)
    id_a = GroupHom.identity(pa.a_n)

    def examine(comp: GammaCompletion) -> CompletionOutcome:
        gamma_a = tensor_induced(id_a, comp.hom, source=src_tp, target=tgt_tp)
        h = factor_through(pa.eta, gamma_a)
        return CompletionOutcome(comp.assignment, h is not None, h, gamma_hom=gamma_a)

    if parallel > 1 and len(completions) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            outcomes = tuple(pool.map(examine, completions))
    else:
        outcomes = tuple(examine(c) for c in completions)

    if all(o.factorable for o in outcomes):
        return Verdict(Status.REALIZABLE,
                       witness=outcomes[0].witness if outcomes else None,
                       completions=outcomes)
    if not any(o.factorable for o in outcomes):
        obs = None
        if outcomes:
            stacked, _ = stack_homs([o.gamma_hom for o in outcomes])
            _, incl = kernel(stacked)
            obs = _obstruction_from_dead(
                pa, gt, incl, note="killed by every admissible completion")
        if obs is None:
            obs = Obstruction(note="no completion admits a factorization")
        return Verdict(Status.NON_REALIZABLE, obstruction=obs, completions=outcomes)
    entry = tables.q_stable_entry(k)
    return Verdict(Status.UNDETERMINED,
                   blocking=tuple(_unknown_blockers(entry, tables, k)),
                   completions=outcomes,
                   note="factorability depends on unknown gamma entries")


# -- low stems and dispatch ----------------------------------------------


def _validated_gt(pa: TwoStagePiAlgebra, tables: StableTables) -> GammaTildeResult:
    gt = gamma_tilde(pa.n, pa.k, pa.a_n, tables)
    if pa.eta.source != gt.group:
        raise MalformedStructureMap(
            f"eta is defined on {pa.eta.source}, but gamma_tilde is {gt.group}")
    return gt


def check_k1(pa: TwoStagePiAlgebra, tables: StableTables) -> Verdict:
    """Degrees (n, n+1): always realizable once eta is well-formed."""
    if pa.k != 1:
        raise ValueError("check_k1 expects k = 1")
    _validated_gt(pa, tables)
    return Verdict(Status.REALIZABLE,
                   note="all systems concentrated in consecutive degrees are realizable")


def check_k2(pa: TwoStagePiAlgebra, tables: StableTables) -> Verdict:
    """Degrees (n, n+2): always realizable once eta is well-formed."""
    if pa.k != 2:
        raise ValueError("check_k2 expects k = 2")
    _validated_gt(pa, tables)
    return Verdict(Status.REALIZABLE,
                   note="all systems concentrated in degrees n, n+2 are realizable")


def check(pa: TwoStagePiAlgebra, tables: StableTables, parallel: int = 1) -> Verdict:
    """Dispatch on the regime of (n, k)."""
    if pa.k == 1:
        return check_k1(pa, tables)
    if pa.k == 2:
        return check_k2(pa, tables)
    if pa.k <= pa.n - 2:
        return check_stable(pa, tables, parallel=parallel)
    gt = _validated_gt(pa, tables)
    if gt.group.is_trivial:
        return Verdict(Status.REALIZABLE, note="trivial operations; a product of "
                                               "Eilenberg-MacLane spaces realizes it")
    if pa.eta.is_zero():
        return Verdict(Status.REALIZABLE, note="zero structure map; a product of "
                                               "Eilenberg-MacLane spaces realizes it")
    raise UnsupportedRegime(
        "the realizability criterion requires unstable gamma data for K(A_n, n), "
        "which the tables do not carry; only gamma_tilde is computable here")


# -- whole-stem answers ---------------------------------------------------


class StemAnswer(str, Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class StemVerdict:
    stem: int
    answer: StemAnswer
    note: str = ""
    completions: tuple = ()  # ((assignment, split), ...)
    blocking: tuple = ()


def all_realizable_in_stem(k: int, tables: StableTables) -> StemVerdict:
    """Is every stable 2-stage system in stem k realizable, for every A_n?

    Equivalent to split injectivity of gamma on Q_k^S, quantified over the
    admissible completions. Without a tabulated codomain the answer is
    still decidable in two situations: a forced order drop on a named
    generator (gamma not injective, hence No) and exact prime orders at
    distinct primes under the single-power-of-p rule (split, hence Yes).
    """
    if k < 1:
        raise ValueError("stems start at k = 1")
    entry = tables.q_stable_entry(k)
    if entry.group.is_trivial:
        return StemVerdict(k, StemAnswer.YES, note="trivial operations in this stem")
    cod = tables.em(k + 1)
    if entry.complete and cod is not None:
        comps = admissible_gamma_completions(k, tables)
        if not comps:
            raise InconsistentTables(
                f"no admissible gamma completion exists in stem {k}; the tables are contradictory")
        results = []
        for c in comps:
            split, _ = is_split_injective(c.hom)
            results.append((c.assignment, split))
        if all(s for _, s in results):
            return StemVerdict(k, StemAnswer.YES, completions=tuple(results))
        if not any(s for _, s in results):
            return StemVerdict(k, StemAnswer.NO, completions=tuple(results),
                               note="gamma is split injective under no admissible completion")
        return StemVerdict(k, StemAnswer.UNDETERMINED, completions=tuple(results),
                           blocking=tuple(_unknown_blockers(entry, tables, k)))

    # Rule-based fallbacks when the codomain is unknown.
    for d, name in entry.summands:
        know = tables.gamma.get((k, name))
        if know is None:
            continue
        mult = know.kill_multiplier(cod)
        eff = gcd(mult, d) if d else mult
        if d == 0 or eff < d:
            return StemVerdict(
                k, StemAnswer.NO,
                note=f"gamma kills {eff}·{name} != 0, so it is not injective; "
                     f"the projection onto <{name}> is a non-realizable instance")
    if entry.complete and tables.exponent_rule_enabled:
        orders = [d for d, _ in entry.summands]
        exact = all(
            (know := tables.gamma.get((k, name))) is not None
            and know.state == "nonzero" and know.order == d and _is_prime(d)
            for d, name in entry.summands)
        coprime = all(gcd(a, b) == 1 for a, b in itertools.combinations(orders, 2))
        if exact and coprime:
            return StemVerdict(
                k, StemAnswer.YES,
                note="each generator lands with full prime order in elementary "
                     "abelian torsion, which splits off")
    raise MissingTableData(
        f"cannot settle stem {k}: HZ_{k + 1}HZ is untabulated and no rule applies")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


# -- three-stage obstruction ----------------------------------------------


@dataclass(frozen=True)
class ThreeStageProblem:
    n: int
    a_n: FgAbGroup
    a_n1: FgAbGroup
    a_n2: FgAbGroup
    eta1: GroupHom  # A_n ⊗ Z/2 -> A_{n+1}
    eta2: GroupHom  # A_{n+1} ⊗ Z/2 -> A_{n+2}


def three_stage_obstruction(problem: ThreeStageProblem) -> tuple:
    """(O, verdict) for a stable three-stage system in degrees n, n+1, n+2.

    O is the composite of the two structure maps through the two-torsion
    subgroup and the mod-2 reductions; the system is realizable iff O = 0.
    Stable degrees only (n >= 4), matching where the composite formula for
    the suspension map holds.
    """
    n = problem.n
    if n < 4:
        raise ValueError("the three-stage obstruction requires stable degrees n >= 4")
    tp1, q1 = mod_reduction(problem.a_n, 2)
    tp2, q2 = mod_reduction(problem.a_n1, 2)
    if problem.eta1.source != tp1.group or problem.eta1.target != problem.a_n1:
        raise MalformedStructureMap("eta1 must map A_n ⊗ Z/2 to A_{n+1}")
    if problem.eta2.source != tp2.group or problem.eta2.target != problem.a_n2:
        raise MalformedStructureMap("eta2 must map A_{n+1} ⊗ Z/2 to A_{n+2}")
    tor, incl = two_torsion_subgroup(problem.a_n)
    o = problem.eta2 @ q2 @ problem.eta1 @ q1 @ incl
    if o.is_zero():
        return o, Verdict(Status.REALIZABLE, note="obstruction vanishes")
    for j in range(tor.dim):
        unit = [1 if r == j else 0 for r in range(tor.dim)]
        if any(o.apply(unit)):
            elem = tor.reduce(unit)
            break
    obs = Obstruction(element=elem,
                      label=f"two-torsion generator {list(incl.apply(elem))} of A_n",
                      note="the composite obstruction is nonzero on it")
    return o, Verdict(Status.NON_REALIZABLE, obstruction=obs)


# -- stem surveys ----------------------------------------------------------


@dataclass(frozen=True)
class SurveyRow:
    a_n: FgAbGroup
    target: FgAbGroup
    counts: tuple  # ((status value, count), ...)


@dataclass(frozen=True)
class SurveyReport:
    stem: int
    n_used: int
    rows: tuple
    totals: tuple

    def total_cases(self) -> int:
        return sum(c for _, c in self.totals)


def survey_stem(k: int, tables: StableTables, max_cyclic_order: int,
                max_summands: int, targets: Sequence[FgAbGroup],
                include_free: bool = True, max_checks: int = 20000,
                parallel: int = 1) -> SurveyReport:
    """Sweep small groups and every structure map, tallying verdicts.

    A_n ranges over direct sums of at most ``max_summands`` cyclic groups
    of order up to ``max_cyclic_order`` (plus Z summands unless disabled);
    eta ranges over all of Hom(gamma_tilde, target) for each target. Raises
    BoundExceeded when more than ``max_checks`` checks would run.
    """
    n = k + 2  # minimal stable dimension; stable verdicts do not depend on n
    orders = ([0] if include_free else []) + list(range(2, max_cyclic_order + 1))
    groups = []
    for size in range(1, max_summands + 1):
        for combo in itertools.combinations_with_replacement(orders, size):
            g = from_cyclic_orders(list(combo))
            if g not in groups:
                groups.append(g)
    rows = []
    totals: Dict[str, int] = {}
    budget = 0
    for a_n in groups:
        gt = gamma_tilde(n, k, a_n, tables)
        for target in targets:
            homs = hom_group(gt.group, target)
            if not homs.is_finite:
                continue
            count = homs.group.order()
            budget += count
            if budget > max_checks:
                raise BoundExceeded(
                    f"survey needs more than {max_checks} checks; tighten the bounds")
            counts: Dict[str, int] = {}
            for eta in homs:
                pa = TwoStagePiAlgebra(n, k, a_n, target, eta)
                v = check_stable(pa, tables, parallel=parallel)
                counts[v.status.value] = counts.get(v.status.value, 0) + 1
                totals[v.status.value] = totals.get(v.status.value, 0) + 1
            rows.append(SurveyRow(a_n, target, tuple(sorted(counts.items()))))
    return SurveyReport(k, n, tuple(rows), tuple(sorted(totals.items())))


# -- JSON (de)serialization ------------------------------------------------


def group_to_json(g: FgAbGroup) -> dict:
    doc = {"rank": g.rank, "torsion": list(g.torsion)}
    if g.gen_labels is not None:
        doc["labels"] = list(g.gen_labels)
    return doc


def group_from_json(doc: dict) -> FgAbGroup:
    return FgAbGroup(int(doc.get("rank", 0)),
                     tuple(int(d) for d in doc.get("torsion", ())),
                     tuple(doc["labels"]) if "labels" in doc else None)


def hom_to_json(h: GroupHom) -> dict:
    return {"source": group_to_json(h.source), "target": group_to_json(h.target),
            "matrix": h.matrix.to_lists()}


def hom_from_json(doc: dict) -> GroupHom:
    src = group_from_json(doc["source"])
    tgt = group_from_json(doc["target"])
    return GroupHom(src, tgt, IntMatrix(tgt.dim, src.dim, doc["matrix"]))


def verdict_to_json(v: Verdict) -> dict:
    doc: dict = {"status": v.status.value}
    if v.witness is not None:
        doc["witness"] = hom_to_json(v.witness)
    if v.obstruction is not None:
        doc["obstruction"] = {
            "element": list(v.obstruction.element) if v.obstruction.element is not None else None,
            "label": v.obstruction.label,
            "note": v.obstruction.note,
        }
    if v.blocking:
        doc["blocking"] = list(v.blocking)
    if v.completions:
        doc["completions"] = [
            {"assignment": [[name, list(coords)] for name, coords in o.assignment],
             "factorable": o.factorable,
             "witness": hom_to_json(o.witness) if o.witness is not None else None}
            for o in v.completions
        ]
    if v.note:
        doc["note"] = v.note
    return doc


def verdict_from_json(doc: dict) -> Verdict:
    status = Status(doc["status"])
    witness = hom_from_json(doc["witness"]) if doc.get("witness") else None
    obstruction = None
    if "obstruction" in doc:
        o = doc["obstruction"]
        obstruction = Obstruction(
            element=tuple(o["element"]) if o.get("element") is not None else None,
            label=o.get("label", ""), note=o.get("note", ""))
    completions = tuple(
        CompletionOutcome(
            assignment=tuple((name, tuple(coords)) for name, coords in c["assignment"]),
            factorable=c["factorable"],
            witness=hom_from_json(c["witness"]) if c.get("witness") else None)
        for c in doc.get("completions", ()))
    return Verdict(status, witness=witness, obstruction=obstruction,
                   blocking=tuple(doc.get("blocking", ())),
                   completions=completions, note=doc.get("note", ""))


def problem_from_json(doc: dict, tables: StableTables):
    """Parse a problem file into a two- or three-stage problem.

    Two-stage files: {"n", "k", "A_n", "A_nk", "eta"} with eta columns
    indexed by the documented gamma_tilde generator order. Three-stage
    files: {"n", "A_n", "A_n1", "A_n2", "eta1", "eta2"} with the columns
    indexed by the mod-2 reductions of A_n and A_{n+1}.
    """
    if "A_n2" in doc or "eta2" in doc:
        a_n = group_from_json(doc["A_n"])
        a_n1 = group_from_json(doc["A_n1"])
        a_n2 = group_from_json(doc["A_n2"])
        n = int(doc["n"])
        tp1, _ = mod_reduction(a_n, 2)
        tp2, _ = mod_reduction(a_n1, 2)
        eta1 = _hom_from_columns_json(doc["eta1"], tp1.group, a_n1)
        eta2 = _hom_from_columns_json(doc["eta2"], tp2.group, a_n2)
        return ThreeStageProblem(n, a_n, a_n1, a_n2, eta1, eta2)
    n = int(doc["n"])
    k = int(doc["k"])
    a_n = group_from_json(doc["A_n"])
    a_nk = group_from_json(doc["A_nk"])
    gt = gamma_tilde(n, k, a_n, tables)
    try:
        m = IntMatrix(a_nk.dim, len(gt.generators), doc["eta"])
    except ValueError as exc:
        raise MalformedStructureMap(
            f"eta must be a {a_nk.dim}x{len(gt.generators)} matrix with columns "
            f"{', '.join(gt.labels())}: {exc}")
    eta = build_structure_map(gt, [list(m.col(j)) for j in range(m.cols)], a_nk)
    return TwoStagePiAlgebra(n, k, a_n, a_nk, eta)


def _hom_from_columns_json(matrix, source: FgAbGroup, target: FgAbGroup) -> GroupHom:
    try:
        return GroupHom(source, target, IntMatrix(target.dim, source.dim, matrix))
    except ValueError as exc:
        raise MalformedStructureMap(str(exc))
