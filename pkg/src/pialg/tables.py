"""Curated stable homotopy tables with explicit partial-knowledge states.

The shipped defaults hold exactly the values the realizability machinery
is entitled to assume: stable stems and their indecomposables through
dimension 6 with generator names and ring products, the degree-4 homotopy
of the smashed integral Eilenberg-MacLane spectrum, the two metastable
quadratic modules, the alpha-family entries at the prime 3, and a partial
comparison map ``gamma`` recorded per generator as one of

    known [coords] | zero | nonzero(order) | unknown(bound)

Everything else arrives by overlay file. Overlays use a small line-based
text format::

    # comment
    [q_stable]
    7 = Z/3<alpha_2> (partial)

    [em_homology]
    4 = Z/2 + Z/6        # any cyclic sum; canonicalized on load

    [metastable_qm]
    2 = Z_Gamma          # builtin name or inline JSON {"Me": ..., "H": ...}

    [gamma]
    3.nu = unknown(2)
    3.alpha = nonzero(3)

    [q_unstable]
    2,2 = 0

    [pi_products]
    1.eta * 1.eta = [1]

    [options]
    torsion_exponent_rule = on

Group literals are sums of ``Z``, ``Z^r`` and ``Z/d`` terms, each optionally
carrying a generator name in angle brackets. Sections may appear in any
order; later keys override earlier ones; ``merge`` gives overlay entries
priority and re-validates all consistency invariants, including the
single-power-of-p rule for the torsion of the Eilenberg-MacLane columns.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Optional, Tuple

from .errors import InconsistentTables, MissingTableData, TableFormatError
from .fgab import (
    FgAbGroup,
    GroupHom,
    Presentation,
    TRIVIAL,
    canonicalize_full,
    free_group,
    from_cyclic_orders,
    hom_solve,
)
from .intlinalg import IntMatrix
from .quadratic import (
    BUILTIN_QUADRATIC_MODULES,
    QuadraticModule,
    Z_GAMMA,
    Z_LAMBDA,
    quadratic_module_from_json,
    quadratic_module_to_json,
)


@dataclass(frozen=True)
class TabulatedGroup:
    """A group tabulated as named cyclic summands, canonicalized on demand.

    ``summands`` are (order, name) pairs, order 0 meaning Z. The canonical
    group may look quite different (Z/4 + Z/3 becomes Z/12); ``element_of``
    recovers where each named generator sits in canonical coordinates.
    ``complete`` is False when the literature pins only part of the group,
    e.g. single alpha-family generators in an otherwise uncomputed stem.
    """

    summands: tuple
    complete: bool = True

    def __post_init__(self):
        names = [n for _, n in self.summands]
        if len(set(names)) != len(names):
            raise InconsistentTables(f"duplicate generator names in {names}")
        for d, n in self.summands:
            if d < 0 or d == 1:
                raise InconsistentTables(f"bad summand order {d}")
            if not re.fullmatch(r"[A-Za-z0-9_^/()]+", n):
                raise InconsistentTables(f"bad generator name {n!r}")

    @cached_property
    def _canon(self):
        orders = [d for d, _ in self.summands]
        return canonicalize_full(
            Presentation(len(orders), IntMatrix.diagonal(orders, rows=len(orders), cols=len(orders))))

    @property
    def group(self) -> FgAbGroup:
        return self._canon.group

    @property
    def names(self) -> tuple:
        return tuple(n for _, n in self.summands)

    def order_of(self, name: str) -> int:
        for d, n in self.summands:
            if n == name:
                return d
        raise KeyError(name)

    def element_of(self, name: str) -> tuple:
        for j, (_, n) in enumerate(self.summands):
            if n == name:
                return self.group.reduce(self._canon.quotient.matrix.col(j))
        raise KeyError(name)

    def generator_hom(self) -> GroupHom:
        """The map from the free group on the named generators onto the group."""
        return GroupHom(free_group(len(self.summands)), self.group, self._canon.quotient.matrix)

    def express(self, element) -> Optional[tuple]:
        """Coefficients over the named generators hitting ``element``, if any."""
        from .intlinalg import solve_linear
        elem = self.group.reduce(element)
        m = self._canon.quotient.matrix
        tt = len(self.group.torsion)
        if tt:
            slack = IntMatrix.from_columns(
                [[self.group.torsion[i] if r == i else 0 for r in range(self.group.dim)]
                 for i in range(tt)], rows=self.group.dim)
            m = m.hstack(slack)
        sol = solve_linear(m, list(elem))
        if sol is None:
            return None
        coeffs = sol[: len(self.summands)]
        return tuple(c % d if d else c for c, (d, _) in zip(coeffs, self.summands))

    def __str__(self) -> str:
        if not self.summands:
            return "0"
        parts = []
        for d, n in self.summands:
            base = "Z" if d == 0 else f"Z/{d}"
            parts.append(f"{base}<{n}>")
        return " + ".join(parts) + ("" if self.complete else " (partial)")


@dataclass(frozen=True)
class GammaKnowledge:
    """What is known about gamma on one indecomposable generator."""

    state: str  # "known" | "zero" | "nonzero" | "unknown"
    value: Optional[tuple] = None
    order: Optional[int] = None
    bound: Optional[int] = None

    @staticmethod
    def known(coords) -> "GammaKnowledge":
        return GammaKnowledge("known", value=tuple(int(c) for c in coords))

    @staticmethod
    def zero() -> "GammaKnowledge":
        return GammaKnowledge("zero")

    @staticmethod
    def nonzero(order: int) -> "GammaKnowledge":
        if order < 2:
            raise InconsistentTables("nonzero(q) needs q >= 2")
        return GammaKnowledge("nonzero", order=int(order))

    @staticmethod
    def unknown(bound: int) -> "GammaKnowledge":
        if bound < 1:
            raise InconsistentTables("unknown(b) needs b >= 1")
        return GammaKnowledge("unknown", bound=int(bound))

    def kill_multiplier(self, codomain: Optional[FgAbGroup]) -> int:
        """Smallest m such that m * gamma(gen) = 0 in every admissible world."""
        if self.state == "zero":
            return 1
        if self.state == "nonzero":
            return self.order
        if self.state == "unknown":
            return self.bound
        assert self.state == "known" and codomain is not None
        return codomain.element_order(self.value) or 1

    def __str__(self) -> str:
        if self.state == "known":
            return f"known [{', '.join(map(str, self.value))}]"
        if self.state == "zero":
            return "zero"
        if self.state == "nonzero":
            return f"nonzero({self.order})"
        return f"unknown({self.bound})"


@dataclass(frozen=True)
class StableTables:
    pi_stable: Dict[int, TabulatedGroup] = field(default_factory=dict)
    q_stable: Dict[int, TabulatedGroup] = field(default_factory=dict)
    q_unstable: Dict[Tuple[int, int], FgAbGroup] = field(default_factory=dict)
    em_homology: Dict[int, FgAbGroup] = field(default_factory=dict)
    metastable_qm: Dict[int, QuadraticModule] = field(default_factory=dict)
    gamma: Dict[Tuple[int, str], GammaKnowledge] = field(default_factory=dict)
    pi_products: Dict[Tuple[Tuple[int, str], Tuple[int, str]], tuple] = field(default_factory=dict)
    torsion_exponent_rule: Optional[bool] = None
    provenance: tuple = field(default=(), compare=False)

    @property
    def exponent_rule_enabled(self) -> bool:
        return True if self.torsion_exponent_rule is None else self.torsion_exponent_rule

    # -- lookups ----------------------------------------------------------

    def q_stable_entry(self, k: int) -> TabulatedGroup:
        if k not in self.q_stable:
            raise MissingTableData(f"Q_{k}^S is not tabulated")
        return self.q_stable[k]

    def q_unstable_group(self, k: int, n: int) -> Optional[FgAbGroup]:
        if (k, n) in self.q_unstable:
            return self.q_unstable[(k, n)]
        if n == 2 and k >= 2:
            # eta: S^3 -> S^2 identifies pi_{2+k} of the two spheres, so every
            # class is a composite through dimension 3 and Q_{k,2} = 0.
            return TRIVIAL
        return None

    def em(self, m: int) -> Optional[FgAbGroup]:
        return self.em_homology.get(m)

    def metastable_module(self, n: int) -> QuadraticModule:
        if n not in self.metastable_qm:
            raise MissingTableData(f"the quadratic module Q_{n - 1}{{S^{n}}} is not tabulated")
        return self.metastable_qm[n]


def merge(base: StableTables, overlay: StableTables) -> StableTables:
    """Overlay entries override base entries; the result is re-validated."""
    out = StableTables(
        pi_stable={**base.pi_stable, **overlay.pi_stable},
        q_stable={**base.q_stable, **overlay.q_stable},
        q_unstable={**base.q_unstable, **overlay.q_unstable},
        em_homology={**base.em_homology, **overlay.em_homology},
        metastable_qm={**base.metastable_qm, **overlay.metastable_qm},
        gamma={**base.gamma, **overlay.gamma},
        pi_products={**base.pi_products, **overlay.pi_products},
        torsion_exponent_rule=(overlay.torsion_exponent_rule
                               if overlay.torsion_exponent_rule is not None
                               else base.torsion_exponent_rule),
        provenance=base.provenance + overlay.provenance,
    )
    validate_tables(out)
    return out


def validate_tables(t: StableTables) -> None:
    if t.exponent_rule_enabled:
        for m, g in t.em_homology.items():
            if g.torsion:
                e = g.torsion[-1]
                for p in _prime_factors(e):
                    if e % (p * p) == 0:
                        raise InconsistentTables(
                            f"em_homology[{m}] = {g} has p^2-torsion at p={p}; "
                            "the single-power-of-p rule forbids that")
    for (stem, gen), know in t.gamma.items():
        if stem not in t.q_stable:
            raise InconsistentTables(f"gamma entry {stem}.{gen} has no Q_{stem}^S table")
        entry = t.q_stable[stem]
        if gen not in entry.names:
            raise InconsistentTables(f"gamma entry {stem}.{gen}: unknown generator")
        d = entry.order_of(gen)
        cod = t.em(stem + 1)
        if know.state == "nonzero":
            if d and know.order and d % know.order:
                raise InconsistentTables(
                    f"gamma({gen}) of order {know.order} but the generator has order {d}")
            if cod is not None:
                e = cod.exponent()
                if e and know.order and e % know.order:
                    raise InconsistentTables(
                        f"gamma({gen}) order {know.order} exceeds the codomain exponent {e}")
        if know.state == "unknown" and cod is not None:
            e = cod.exponent()
            if e and e % know.bound:
                raise InconsistentTables(
                    f"gamma({gen}) order bound {know.bound} does not divide "
                    f"the codomain exponent {e}")
        if know.state == "known":
            if cod is None:
                raise InconsistentTables(
                    f"gamma entry {stem}.{gen} is known but HZ_{stem + 1}HZ is not tabulated")
            val = cod.reduce(know.value)
            o = cod.element_order(val)
            if d and o and d % o:
                raise InconsistentTables(
                    f"gamma({gen}) = {val} has order {o}, incompatible with generator order {d}")
    for ((i, ga), (j, gb)), coords in t.pi_products.items():
        for stem, g in ((i, ga), (j, gb)):
            if stem not in t.pi_stable or g not in t.pi_stable[stem].names:
                raise InconsistentTables(f"pi product references unknown generator {stem}.{g}")
        tgt = t.pi_stable.get(i + j)
        if tgt is None or len(coords) != len(tgt.summands):
            raise InconsistentTables(
                f"pi product {i}.{ga} * {j}.{gb} needs {i + j}-stem coordinates")


def _prime_factors(n: int) -> Iterator[int]:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % p == 0:
            yield p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        yield n


# -- defaults -----------------------------------------------------------


def load_defaults() -> StableTables:
    """Tables holding exactly the published values the checker relies on.

    Stems 7, 11 and 15 carry only their 3-primary alpha-family generators
    and are marked partial; nothing else about those stems is assumed.
    """
    tg = TabulatedGroup
    t = StableTables(
        pi_stable={
            0: tg(((0, "iota"),)),
            1: tg(((2, "eta"),)),
            2: tg(((2, "eta^2"),)),
            3: tg(((8, "nu"), (3, "alpha"))),
            4: tg(()),
            5: tg(()),
            6: tg(((2, "nu^2"),)),
        },
        q_stable={
            0: tg(((0, "iota"),)),
            1: tg(((2, "eta"),)),
            2: tg(()),
            3: tg(((4, "nu"), (3, "alpha"))),
            4: tg(()),
            5: tg(()),
            6: tg(()),
            7: tg(((3, "alpha_2"),), complete=False),
            11: tg(((9, "alpha_3/2"),), complete=False),
            15: tg(((3, "alpha_4"),), complete=False),
        },
        q_unstable={(2, 2): TRIVIAL},
        em_homology={4: from_cyclic_orders([2, 3])},
        metastable_qm={2: Z_GAMMA, 3: Z_LAMBDA},
        gamma={
            (1, "eta"): GammaKnowledge.nonzero(2),
            (3, "nu"): GammaKnowledge.unknown(2),
            (3, "alpha"): GammaKnowledge.nonzero(3),
            (7, "alpha_2"): GammaKnowledge.zero(),
            (11, "alpha_3/2"): GammaKnowledge.unknown(3),
            (15, "alpha_4"): GammaKnowledge.zero(),
        },
        pi_products={
            ((1, "eta"), (1, "eta")): (1,),
            ((1, "eta"), (2, "eta^2")): (4, 0),
            ((1, "eta"), (3, "nu")): (),
            ((3, "nu"), (3, "nu")): (1,),
            ((3, "alpha"), (3, "alpha")): (0,),
        },
        torsion_exponent_rule=True,
        provenance=("defaults",),
    )
    validate_tables(t)
    return t


def _p_adic_valuation(p: int, n: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def alpha_family_overlay(p: int, i_max: int) -> StableTables:
    """Overlay adding the p-primary alpha family for a prime p >= 5.

    For each i the stem is 2i(p-1)-1 and the recorded generator is
    alpha_{i/j} with the maximal j <= v_p(i)+1; its image is nonzero of
    order p for i = 1, zero for i >= 2 with j = 1, and otherwise unknown
    with bound p (p times it must die since the Eilenberg-MacLane torsion
    is annihilated by a single power of p).
    """
    if p < 5 or any(p % q == 0 for q in range(2, p)):
        raise InconsistentTables("alpha_family_overlay expects a prime p >= 5; "
                                 "the 3-primary family ships with the defaults")
    defaults = load_defaults()
    q_stable = {}
    gamma = {}
    for i in range(1, i_max + 1):
        stem = 2 * i * (p - 1) - 1
        jmax = _p_adic_valuation(p, i) + 1
        name = f"alpha_{i}_p{p}" if jmax == 1 else f"alpha_{i}/{jmax}_p{p}"
        # A stem can host alpha generators at several primes (e.g. stem 7 at
        # p = 3 and p = 5); since merge() replaces whole entries, colliding
        # partial entries absorb the default generators instead.
        prior = q_stable.get(stem) or defaults.q_stable.get(stem)
        summands = ((p ** jmax, name),)
        if prior is not None:
            if prior.complete:
                raise InconsistentTables(
                    f"stem {stem} is fully tabulated; refusing to extend it")
            if name in prior.names:
                raise InconsistentTables(f"generator {name} already present in stem {stem}")
            summands = prior.summands + summands
        q_stable[stem] = TabulatedGroup(summands, complete=False)
        if i == 1:
            gamma[(stem, name)] = GammaKnowledge.nonzero(p)
        elif jmax == 1:
            gamma[(stem, name)] = GammaKnowledge.zero()
        else:
            gamma[(stem, name)] = GammaKnowledge.unknown(p)
    return StableTables(q_stable=q_stable, gamma=gamma,
                        provenance=(f"alpha-family(p={p})",))


# -- admissible completions ---------------------------------------------


@dataclass(frozen=True)
class GammaCompletion:
    """One total homomorphism gamma: Q_k^S -> HZ_{k+1}HZ consistent with the tables."""

    stem: int
    assignment: tuple  # ((generator name, element coords in the codomain), ...)
    hom: GroupHom

    def describe(self) -> str:
        return ", ".join(f"γ({n}) = {list(v)}" for n, v in self.assignment) or "γ = 0"


def _candidate_images(know: Optional[GammaKnowledge], d: int, cod: FgAbGroup) -> list:
    elems = list(cod.elements_killed_by(d))
    if know is None:
        return elems
    if know.state == "known":
        v = cod.reduce(know.value)
        return [v] if v in elems else []
    if know.state == "zero":
        return [cod.zero()]
    if know.state == "nonzero":
        return [e for e in elems if cod.element_order(e) == know.order]
    # unknown with order bound
    return [e for e in elems if (know.bound % (cod.element_order(e) or 1)) == 0]


def admissible_gamma_completions(k: int, tables: StableTables) -> list:
    """All total maps gamma consistent with every knowledge state, in a fixed order.

    Known entries appear unaltered in every completion. Requires a complete
    Q_k^S table and the codomain HZ_{k+1}HZ.
    """
    entry = tables.q_stable_entry(k)
    if not entry.complete:
        raise MissingTableData(f"Q_{k}^S is only partially tabulated; cannot enumerate completions")
    cod = tables.em(k + 1)
    if entry.group.is_trivial:
        # The empty map is the unique completion whatever the codomain is.
        target = cod if cod is not None else TRIVIAL
        return [GammaCompletion(k, (), GroupHom.zero(entry.group, target))]
    if cod is None:
        raise MissingTableData(f"HZ_{k + 1}HZ is not tabulated")
    per_gen = []
    for d, name in entry.summands:
        know = tables.gamma.get((k, name))
        per_gen.append(_candidate_images(know, d, cod))
    out = []
    for combo in itertools.product(*per_gen):
        hom = hom_solve(list(combo), entry.generator_hom(), cod)
        if hom is None:  # cannot happen: image orders divide generator orders
            continue
        out.append(GammaCompletion(k, tuple(zip(entry.names, combo)), hom))
    return out


# -- text format ---------------------------------------------------------


_TERM_RE = re.compile(r"^(Z(?:\^(\d+))?|Z/(\d+))(?:<([A-Za-z0-9_^/()]+)>)?$")


def parse_group_text(text: str):
    """Parse a group literal into (order, name) summands.

    Accepts the text grammar ("Z/4<nu> + Z/3<alpha>", "Z^2", "0") and, for
    convenience, the JSON object form {"rank": r, "torsion": [...]}.
    """
    text = text.strip()
    if text.startswith("{"):
        doc = json.loads(text)
        return [(0, None)] * int(doc.get("rank", 0)) + [(int(d), None) for d in doc.get("torsion", ())]
    if text == "0":
        return []
    summands = []
    for raw in text.split("+"):
        term = raw.strip()
        m = _TERM_RE.match(term)
        if not m:
            raise TableFormatError(f"cannot parse group term {term!r}")
        if m.group(3) is not None:
            order = int(m.group(3))
            if order < 2:
                raise TableFormatError(f"cyclic order must be >= 2 in {term!r}")
        elif m.group(2) is not None:
            if m.group(4):
                raise TableFormatError(f"cannot name a Z^r block in {term!r}")
            summands.extend([(0, None)] * int(m.group(2)))
            continue
        else:
            order = 0
        summands.append((order, m.group(4)))
    return summands


def group_from_text(text: str) -> FgAbGroup:
    summands = parse_group_text(text)
    labels = [n for _, n in summands]
    return from_cyclic_orders([d for d, _ in summands],
                              labels if all(labels) and labels else None)


def _auto_named(summands) -> tuple:
    out = []
    for i, (d, n) in enumerate(summands):
        out.append((d, n if n else f"g{i + 1}"))
    return tuple(out)


_GAMMA_VALUE_RE = re.compile(
    r"^(?:zero|nonzero\((\d+)\)|unknown\((\d+)\)|known\s*\[([-\d,\s]*)\])$")


def parse_gamma_value(text: str) -> GammaKnowledge:
    m = _GAMMA_VALUE_RE.match(text.strip())
    if not m:
        raise TableFormatError(f"cannot parse gamma value {text!r}")
    if m.group(1) is not None:
        return GammaKnowledge.nonzero(int(m.group(1)))
    if m.group(2) is not None:
        return GammaKnowledge.unknown(int(m.group(2)))
    if m.group(3) is not None:
        coords = [int(x) for x in m.group(3).split(",") if x.strip()] if m.group(3).strip() else []
        return GammaKnowledge.known(coords)
    return GammaKnowledge.zero()


def loads_tables(text: str, name: str = "<string>") -> StableTables:
    """Parse overlay text into a (possibly partial) StableTables."""
    fields: dict = dict(pi_stable={}, q_stable={}, q_unstable={}, em_homology={},
                        metastable_qm={}, gamma={}, pi_products={},
                        torsion_exponent_rule=None)
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg):
            raise TableFormatError(f"{name}:{lineno}: {msg}")

        if line.startswith("["):
            if not line.endswith("]"):
                fail("unterminated section header")
            section = line[1:-1].strip()
            if section not in ("pi_stable", "q_stable", "q_unstable", "em_homology",
                               "metastable_qm", "gamma", "pi_products", "options"):
                fail(f"unknown section {section!r}")
            continue
        if section is None:
            fail("entry before any [section] header")
        if "=" not in line:
            fail("expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        try:
            if section in ("pi_stable", "q_stable"):
                partial = value.endswith("(partial)")
                if partial:
                    value = value[: -len("(partial)")].strip()
                summands = _auto_named(parse_group_text(value))
                fields[section][int(key)] = TabulatedGroup(summands, complete=not partial)
            elif section == "q_unstable":
                k_str, n_str = key.split(",")
                fields["q_unstable"][(int(k_str), int(n_str))] = group_from_text(value)
            elif section == "em_homology":
                fields["em_homology"][int(key)] = group_from_text(value)
            elif section == "metastable_qm":
                if value in BUILTIN_QUADRATIC_MODULES:
                    qm = BUILTIN_QUADRATIC_MODULES[value]
                else:
                    qm = quadratic_module_from_json(json.loads(value))
                fields["metastable_qm"][int(key)] = qm
            elif section == "gamma":
                stem_str, _, gen = key.partition(".")
                if not gen:
                    fail("gamma keys look like '<stem>.<generator>'")
                fields["gamma"][(int(stem_str), gen)] = parse_gamma_value(value)
            elif section == "pi_products":
                lhs, _, rhs = key.partition("*")
                a_stem, _, a_gen = lhs.strip().partition(".")
                b_stem, _, b_gen = rhs.strip().partition(".")
                coords = tuple(int(x) for x in value.strip("[]").split(",") if x.strip())
                fields["pi_products"][((int(a_stem), a_gen), (int(b_stem), b_gen))] = coords
            elif section == "options":
                if key != "torsion_exponent_rule":
                    fail(f"unknown option {key!r}")
                if value not in ("on", "off"):
                    fail("torsion_exponent_rule must be 'on' or 'off'")
                fields["torsion_exponent_rule"] = value == "on"
        except TableFormatError as exc:
            if str(exc).startswith(f"{name}:"):
                raise
            fail(str(exc))
        except (ValueError, KeyError) as exc:
            fail(str(exc))
    return StableTables(provenance=(name,), **fields)


def dumps_tables(t: StableTables) -> str:
    """Serialize tables in the overlay format; loads_tables round-trips it."""
    lines = []
    if t.torsion_exponent_rule is not None:
        lines += ["[options]",
                  f"torsion_exponent_rule = {'on' if t.torsion_exponent_rule else 'off'}", ""]
    for section in ("pi_stable", "q_stable"):
        table = getattr(t, section)
        if table:
            lines.append(f"[{section}]")
            for k in sorted(table):
                lines.append(f"{k} = {table[k]}")
            lines.append("")
    if t.q_unstable:
        lines.append("[q_unstable]")
        for (k, n) in sorted(t.q_unstable):
            lines.append(f"{k},{n} = {_group_text(t.q_unstable[(k, n)])}")
        lines.append("")
    if t.em_homology:
        lines.append("[em_homology]")
        for m in sorted(t.em_homology):
            lines.append(f"{m} = {_group_text(t.em_homology[m])}")
        lines.append("")
    if t.metastable_qm:
        lines.append("[metastable_qm]")
        for n in sorted(t.metastable_qm):
            qm = t.metastable_qm[n]
            for bname, bqm in BUILTIN_QUADRATIC_MODULES.items():
                if bqm == qm:
                    lines.append(f"{n} = {bname}")
                    break
            else:
                lines.append(f"{n} = {json.dumps(quadratic_module_to_json(qm))}")
        lines.append("")
    if t.gamma:
        lines.append("[gamma]")
        for (stem, gen) in sorted(t.gamma):
            lines.append(f"{stem}.{gen} = {t.gamma[(stem, gen)]}")
        lines.append("")
    if t.pi_products:
        lines.append("[pi_products]")
        for ((i, ga), (j, gb)) in sorted(t.pi_products):
            coords = t.pi_products[((i, ga), (j, gb))]
            lines.append(f"{i}.{ga} * {j}.{gb} = [{', '.join(map(str, coords))}]")
        lines.append("")
    return "\n".join(lines)


def _group_text(g: FgAbGroup) -> str:
    if g.is_trivial:
        return "0"
    parts = [f"Z/{d}" for d in g.torsion]
    if g.rank == 1:
        parts.append("Z")
    elif g.rank > 1:
        parts.append(f"Z^{g.rank}")
    return " + ".join(parts)


def verify_pi_ring_relations(t: StableTables) -> list:
    """Check the stored stem generators against the stated ring relations.

    Returns a list of human-readable failures; empty means every relation
    (2·eta = 0, eta³ = 4·nu, eta·nu = 0, 2·nu² = 0, 3·alpha = 0,
    alpha² = 0) holds under the tabulated generator arithmetic.
    """
    bad = []

    def named_element(stem, coeffs):
        entry = t.pi_stable[stem]
        vec = entry.group.zero()
        for (name, c) in coeffs:
            vec = entry.group.add(vec, entry.group.smul(c, entry.element_of(name)))
        return entry.group.reduce(vec)

    def product(i, ga, j, gb):
        coords = t.pi_products[((i, ga), (j, gb))]
        entry = t.pi_stable[i + j]
        return named_element(i + j, list(zip(entry.names, coords)))

    try:
        if t.pi_stable[1].order_of("eta") != 2:
            bad.append("2·eta = 0 fails: eta does not have order 2")
        eta_cubed = product(1, "eta", 2, "eta^2")
        if eta_cubed != named_element(3, [("nu", 4)]):
            bad.append("eta^3 = 4·nu fails")
        if any(named_element(3, [("nu", 4)]) == t.pi_stable[3].group.zero() for _ in (0,)):
            bad.append("4·nu should be nonzero (eta^3 detects it)")
        if any(product(1, "eta", 3, "nu")):
            bad.append("eta·nu = 0 fails")
        nu_sq = product(3, "nu", 3, "nu")
        if any(t.pi_stable[6].group.smul(2, nu_sq)):
            bad.append("2·nu^2 = 0 fails")
        if not any(nu_sq):
            bad.append("nu^2 should generate the 6-stem")
        if t.pi_stable[3].order_of("alpha") != 3:
            bad.append("3·alpha = 0 fails: alpha does not have order 3")
        if any(product(3, "alpha", 3, "alpha")):
            bad.append("alpha^2 = 0 fails")
    except KeyError as exc:
        bad.append(f"missing table entry: {exc}")
    return bad


def load_from_file(path) -> StableTables:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise TableFormatError(str(exc))
    t = loads_tables(text, name=str(path))
    return t


def load_tables(overlay_paths=()) -> StableTables:
    """Defaults merged with overlay files, left to right."""
    t = load_defaults()
    for p in overlay_paths:
        t = merge(t, load_from_file(p))
    return t
