"""Finitely generated abelian groups and their homomorphisms, exactly.

Groups live in canonical invariant-factor form: ``Z^rank + Z/d1 + ... + Z/dt``
with ``d1 | d2 | ... | dt`` and every ``di >= 2``. Canonical form is unique,
so two groups are isomorphic iff they are equal (labels aside). Elements are
coordinate vectors over the canonical generators, torsion coordinates first,
reduced modulo the invariant factors.

Every operation here reduces to Smith normal form over Z: presentations are
canonicalized by diagonalizing the relation matrix, and questions like "does
eta factor through gamma" become integer linear systems with congruence rows,
solved exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Iterator, Optional, Sequence

from .intlinalg import IntMatrix, kernel_columns, smith_normal_form, solve_linear


class InfiniteEnumerationError(ValueError):
    """Raised when asked to enumerate an infinite set of elements or maps."""


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in canonical invariant-factor form.

    >>> G = FgAbGroup(rank=1, torsion=(2,))
    >>> str(G)
    'Z/2 ⊕ Z'
    >>> G.dim, G.order()
    (2, None)
    >>> FgAbGroup(0, (6,)) == from_cyclic_orders([2, 3])
    True
    """

    rank: int
    torsion: tuple = ()
    gen_labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        tor = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", tor)
        for d in tor:
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
        for a, b in zip(tor, tor[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain, got {tor}")
        if self.gen_labels is not None:
            labels = tuple(str(x) for x in self.gen_labels)
            if len(labels) != self.rank + len(tor):
                raise ValueError("one label per canonical generator required")
            object.__setattr__(self, "gen_labels", labels)

    # -- structure ------------------------------------------------------

    @property
    def dim(self) -> int:
        """Number of canonical generators (torsion ones first, then free)."""
        return len(self.torsion) + self.rank

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        return prod(self.torsion) if self.rank == 0 else None

    def exponent(self) -> int:
        """Smallest e >= 1 with e*x = 0 for all x; 0 when the group is infinite."""
        if self.rank > 0:
            return 0
        return self.torsion[-1] if self.torsion else 1

    def coord_order(self, i: int) -> int:
        """Order of the i-th canonical generator (0 means infinite)."""
        return self.torsion[i] if i < len(self.torsion) else 0

    def labels(self) -> tuple:
        if self.gen_labels is not None:
            return self.gen_labels
        if self.dim == 1 and self.rank == 1:
            return ("1",)
        if self.rank == self.dim:
            return tuple(f"e{i + 1}" for i in range(self.dim))
        return tuple(f"a{i + 1}" for i in range(self.dim))

    def with_labels(self, labels: Sequence[str]) -> "FgAbGroup":
        return FgAbGroup(self.rank, self.torsion, tuple(labels))

    # -- elements -------------------------------------------------------

    def zero(self) -> tuple:
        return (0,) * self.dim

    def reduce(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.dim:
            raise ValueError(f"element has {len(vec)} coordinates, expected {self.dim}")
        t = len(self.torsion)
        return tuple(int(x) % self.torsion[i] if i < t else int(x) for i, x in enumerate(vec))

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x: Sequence[int]) -> tuple:
        return self.reduce([-a for a in x])

    def smul(self, c: int, x: Sequence[int]) -> tuple:
        return self.reduce([c * a for a in x])

    def element_order(self, x: Sequence[int]) -> int:
        """Additive order of x; 0 means infinite."""
        x = self.reduce(x)
        t = len(self.torsion)
        if any(x[i] for i in range(t, self.dim)):
            return 0
        o = 1
        for i in range(t):
            if x[i]:
                d = self.torsion[i]
                oi = d // gcd(d, x[i])
                o = o * oi // gcd(o, oi)
        return o

    def elements(self) -> Iterator:
        """All elements, lexicographically by coordinates. Finite groups only."""
        if self.rank > 0:
            raise InfiniteEnumerationError(f"{self} is infinite")
        return (tuple(c) for c in itertools.product(*[range(d) for d in self.torsion]))

    def elements_killed_by(self, n: int) -> Iterator:
        """Elements x with n*x = 0, in deterministic order. n = 0 means all."""
        if n == 0:
            yield from self.elements()
            return
        if self.rank > 0:
            # n*x = 0 forces free coordinates to vanish, so this stays finite.
            pass
        ranges = []
        for d in self.torsion:
            step = d // gcd(d, n)
            ranges.append(range(0, d, step))
        for tor_part in itertools.product(*ranges):
            yield tuple(tor_part) + (0,) * self.rank

    def __str__(self) -> str:
        if self.is_trivial:
            return "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        return " ⊕ ".join(parts)


def free_group(rank: int, labels: Optional[Sequence[str]] = None) -> FgAbGroup:
    return FgAbGroup(rank, (), tuple(labels) if labels is not None else None)


def cyclic(n: int, label: Optional[str] = None) -> FgAbGroup:
    """Z/n for n >= 2, Z for n = 0, and the trivial group for n = 1."""
    if n == 0:
        return FgAbGroup(1, (), (label,) if label else None)
    if n == 1:
        return TRIVIAL
    return FgAbGroup(0, (n,), (label,) if label else None)


TRIVIAL = FgAbGroup(0, ())
Z = FgAbGroup(1, ())


def from_cyclic_orders(orders: Sequence[int], labels: Optional[Sequence[str]] = None) -> FgAbGroup:
    """Canonical form of a direct sum of cyclic groups (order 0 meaning Z).

    The summand orders need not form a chain; Z/4 + Z/3 comes back as Z/12.
    Labels, if given, are discarded unless the canonical generators happen to
    coincide with the given summands (use TabulatedGroup in tables to keep
    named non-canonical summands).
    """
    pres = Presentation(len(orders), IntMatrix.diagonal(list(orders), rows=len(orders), cols=len(orders)))
    grp, _ = canonicalize(pres)
    if labels is not None:
        chain = [d for d in orders if d >= 2]
        free = [d for d in orders if d == 0]
        if tuple(chain) == grp.torsion and len(free) == grp.rank and not any(d == 1 for d in orders):
            tor_labels = [l for d, l in zip(orders, labels) if d >= 2]
            free_labels = [l for d, l in zip(orders, labels) if d == 0]
            return grp.with_labels(tor_labels + free_labels)
    return grp


def direct_sum_group(*groups: FgAbGroup) -> FgAbGroup:
    return from_cyclic_orders([d for g in groups for d in g.torsion] + [0] * sum(g.rank for g in groups))


# -- presentations ------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """A free presentation: Z^n_generators modulo the rows of ``relations``."""

    n_generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.cols != self.n_generators:
            raise ValueError("relation rows must have one entry per generator")


@dataclass(frozen=True)
class Canonicalized:
    """A presentation together with its canonical quotient and a section.

    ``quotient`` maps the free group on the presentation's generators onto
    the canonical group; ``section`` is an integer matrix picking one
    preimage per canonical generator (quotient ∘ section = id).
    """

    group: FgAbGroup
    quotient: "GroupHom"
    section: IntMatrix


def canonicalize(p: Presentation) -> tuple:
    """Canonical form of coker(relations) plus the quotient map.

    >>> g, q = canonicalize(Presentation(2, IntMatrix.from_rows([[2, 0]], cols=2)))
    >>> str(g)
    'Z/2 ⊕ Z'
    """
    c = canonicalize_full(p)
    return c.group, c.quotient


def canonicalize_full(p: Presentation) -> Canonicalized:
    n = p.n_generators
    m = p.relations.transpose()  # columns = relators inside Z^n
    s = smith_normal_form(m)
    diag = s.diagonal()
    kept = [i for i in range(n) if i >= len(diag) or diag[i] != 1]
    torsion = [diag[i] for i in kept if i < len(diag) and diag[i] >= 2]
    rank = len(kept) - len(torsion)
    # Torsion positions always precede free ones in `kept` because the SNF
    # diagonal is sorted by divisibility (1s, then >=2s, then 0s).
    group = FgAbGroup(rank, tuple(torsion))
    qmatrix = IntMatrix.from_rows([s.u.row(i) for i in kept], cols=n) if kept else IntMatrix.zeros(0, n)
    quotient = GroupHom(free_group(n), group, qmatrix)
    section = IntMatrix.from_columns([s.u_inv.col(i) for i in kept], rows=n) if kept \
        else IntMatrix.zeros(n, 0)
    return Canonicalized(group, quotient, section)


# -- homomorphisms ------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism as an integer matrix on canonical generators.

    Column j holds the image of the j-th source generator in target
    coordinates. The matrix is stored reduced modulo the target's invariant
    factors, so two equal homomorphisms are field-equal. Construction checks
    well-definedness: a source generator of finite order d must map to an
    element killed by d.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != self.target.dim or m.cols != self.source.dim:
            raise ValueError(
                f"matrix is {m.rows}x{m.cols}, expected {self.target.dim}x{self.source.dim}")
        tt = len(self.target.torsion)
        reduced = [
            [x % self.target.torsion[i] if i < tt else x for x in m.row(i)]
            for i in range(m.rows)
        ]
        rm = IntMatrix(m.rows, m.cols, reduced)
        object.__setattr__(self, "matrix", rm)
        for j in range(self.source.dim):
            d = self.source.coord_order(j)
            if d == 0:
                continue
            for i in range(rm.rows):
                e = self.target.coord_order(i)
                v = d * rm[i, j]
                if (v % e if e else v) != 0:
                    raise ValueError(
                        f"not a homomorphism: generator {j} has order {d} but its "
                        f"image is not killed by {d}")

    @staticmethod
    def identity(g: FgAbGroup) -> "GroupHom":
        return GroupHom(g, g, IntMatrix.identity(g.dim))

    @staticmethod
    def zero(source: FgAbGroup, target: FgAbGroup) -> "GroupHom":
        return GroupHom(source, target, IntMatrix.zeros(target.dim, source.dim))

    @staticmethod
    def from_columns(source: FgAbGroup, target: FgAbGroup, cols: Sequence[Sequence[int]]) -> "GroupHom":
        return GroupHom(source, target, IntMatrix.from_columns(cols, rows=target.dim))

    def apply(self, x: Sequence[int]) -> tuple:
        return self.target.reduce(self.matrix.mul_vec(self.source.reduce(x)))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return GroupHom(other.source, self.target, self.matrix * other.matrix)

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        return self.compose(other)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_identity(self) -> bool:
        return self.source == self.target and self == GroupHom.identity(self.source)

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} via {self.matrix.to_lists()}"


def multiplication_by(n: int, g: FgAbGroup) -> GroupHom:
    return GroupHom(g, g, IntMatrix.identity(g.dim).scale(n))


# -- congruence systems -------------------------------------------------


class CongruenceSystem:
    """Linear equations over Z in fixed unknowns, some rows modulo an integer.

    Modular rows get their own slack unknown, after which everything is one
    exact integer system decided by Smith normal form.
    """

    def __init__(self, n_unknowns: int):
        self.n = n_unknowns
        self.rows: list = []

    def add(self, coeffs: dict, rhs: int, modulus: int = 0) -> None:
        self.rows.append((dict(coeffs), int(rhs), int(modulus)))

    def solve(self) -> Optional[list]:
        n_slack = sum(1 for _, _, m in self.rows if m)
        width = self.n + n_slack
        data = []
        rhs = []
        slack = self.n
        for coeffs, b, m in self.rows:
            row = [0] * width
            for j, c in coeffs.items():
                row[j] += c
            if m:
                row[slack] = m
                slack += 1
            data.append(row)
            rhs.append(b)
        mat = IntMatrix(len(data), width, data) if data else IntMatrix.zeros(0, width)
        sol = solve_linear(mat, rhs)
        if sol is None:
            return None
        return list(sol[: self.n])


def hom_solve(targets: Sequence, through: "GroupHom", target: FgAbGroup) -> Optional["GroupHom"]:
    """Find h: through.target -> target with h(through(e_j)) = targets[j].

    ``targets`` holds one element of ``target`` per source generator of
    ``through``. Returns None when no such homomorphism exists. This is the
    one integer linear system behind factorization, retraction search and
    structure-map validation.
    """
    b = through.target
    c = target
    nb, nc = b.dim, c.dim
    sys = CongruenceSystem(nc * nb)

    def hvar(i, j):
        return i * nb + j

    # h ∘ through = targets, one congruence per (source generator, target coord)
    for a in range(through.source.dim):
        col = through.matrix.col(a)
        want = c.reduce(targets[a])
        for i in range(nc):
            coeffs = {hvar(i, j): col[j] for j in range(nb) if col[j]}
            sys.add(coeffs, want[i], c.coord_order(i))
    # well-definedness of h on B's torsion generators
    for j in range(nb):
        d = b.coord_order(j)
        if d == 0:
            continue
        for i in range(nc):
            sys.add({hvar(i, j): d}, 0, c.coord_order(i))
    sol = sys.solve()
    if sol is None:
        return None
    rows = [[sol[hvar(i, j)] for j in range(nb)] for i in range(nc)]
    return GroupHom(b, c, IntMatrix(nc, nb, rows))


def factor_through(f: GroupHom, g: GroupHom) -> Optional[GroupHom]:
    """Some h with h ∘ g = f, or None when no such h exists.

    f: A -> C and g: A -> B must share their source. The witness is the
    particular solution of the underlying linear system; callers must not
    rely on which one they get.

    >>> f = GroupHom.from_columns(cyclic(12), cyclic(3), [(1,)])
    >>> g = GroupHom.from_columns(cyclic(12), cyclic(6), [(1,)])
    >>> factor_through(f, g).matrix.to_lists()
    [[1]]
    """
    if f.source != g.source:
        raise ValueError("factor_through requires a shared source")
    h = hom_solve([f.matrix.col(j) for j in range(f.source.dim)], g, f.target)
    if h is not None:
        assert h @ g == f, "solver returned a non-witness"
    return h


def is_split_injective(f: GroupHom) -> tuple:
    """(True, retraction) when some r with r ∘ f = id exists, else (False, None)."""
    r = factor_through(GroupHom.identity(f.source), f)
    if r is None:
        return False, None
    assert (r @ f).is_identity()
    return True, r


# -- subgroups, kernels, images, cokernels ------------------------------


def hom_kernel_lattice(f: GroupHom) -> IntMatrix:
    """Columns generating {x in Z^dim(A) : f(x) = 0 in B}."""
    a, b = f.source, f.target
    tt = len(b.torsion)
    m = f.matrix
    if tt:
        slack = IntMatrix.from_columns(
            [[b.torsion[i] if r == i else 0 for r in range(b.dim)] for i in range(tt)],
            rows=b.dim)
        m = m.hstack(slack)
    ker = kernel_columns(m)
    return IntMatrix.from_rows([ker.row(i) for i in range(a.dim)], cols=ker.cols) if ker.cols \
        else IntMatrix.zeros(a.dim, 0)


def subgroup(ambient: FgAbGroup, generators: Sequence) -> tuple:
    """(S, inclusion) for the subgroup of ``ambient`` the elements generate."""
    cols = [ambient.reduce(g) for g in generators]
    phi = GroupHom.from_columns(free_group(len(cols)), ambient, cols) if cols \
        else GroupHom.zero(TRIVIAL, ambient)
    lat = hom_kernel_lattice(phi)
    pres = Presentation(len(cols), lat.transpose())
    c = canonicalize_full(pres)
    gen_mat = IntMatrix.from_columns(cols, rows=ambient.dim) if cols else IntMatrix.zeros(ambient.dim, 0)
    incl = GroupHom(c.group, ambient, gen_mat * c.section)
    return c.group, incl


def kernel(f: GroupHom) -> tuple:
    """(K, inclusion K -> source) of the kernel subgroup."""
    lat = hom_kernel_lattice(f)
    return subgroup(f.source, [lat.col(j) for j in range(lat.cols)])


def image(f: GroupHom) -> tuple:
    """(I, inclusion I -> target) of the image subgroup."""
    return subgroup(f.target, [f.matrix.col(j) for j in range(f.source.dim)])


def cokernel(f: GroupHom) -> tuple:
    """(C, projection target -> C) of the cokernel."""
    b = f.target
    tt = len(b.torsion)
    rel_rows = [[b.torsion[i] if j == i else 0 for j in range(b.dim)] for i in range(tt)]
    rel_rows += [list(f.matrix.col(j)) for j in range(f.source.dim)]
    pres = Presentation(b.dim, IntMatrix.from_rows(rel_rows, cols=b.dim) if rel_rows
                        else IntMatrix.zeros(0, b.dim))
    c = canonicalize_full(pres)
    proj = GroupHom(b, c.group, c.quotient.matrix)
    return c.group, proj


def two_torsion_subgroup(a: FgAbGroup) -> tuple:
    """({x : 2x = 0}, inclusion); isomorphic to Tor(A, Z/2)."""
    return kernel(multiplication_by(2, a))


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    injections: tuple
    projections: tuple


def direct_sum(*groups: FgAbGroup) -> DirectSum:
    """Canonical direct sum with its injections and projections."""
    dims = [g.dim for g in groups]
    total = sum(dims)
    orders = [d for g in groups for d in g.torsion + (0,) * g.rank]
    # reorder so all torsion coordinates precede free ones? No: keep the block
    # layout of the presentation; canonicalize_full handles mixed diagonals.
    pres = Presentation(total, IntMatrix.diagonal(orders, rows=total, cols=total))
    c = canonicalize_full(pres)
    injections = []
    projections = []
    off = 0
    for g, d in zip(groups, dims):
        block_cols = [c.quotient.matrix.col(off + j) for j in range(d)]
        injections.append(GroupHom.from_columns(g, c.group, block_cols)
                          if d else GroupHom.zero(g, c.group))
        proj_rows = [c.section.row(off + j) for j in range(d)]
        projections.append(GroupHom(c.group, g,
                                    IntMatrix.from_rows(proj_rows, cols=c.group.dim) if d
                                    else IntMatrix.zeros(0, c.group.dim)))
        off += d
    return DirectSum(c.group, tuple(injections), tuple(projections))


def stack_homs(fs: Sequence[GroupHom]) -> tuple:
    """Combine maps with a common source into one map to the direct sum.

    Returns (stacked hom, DirectSum of the targets).
    """
    if not fs:
        raise ValueError("need at least one homomorphism")
    src = fs[0].source
    ds = direct_sum(*[f.target for f in fs])
    total = GroupHom.zero(src, ds.group)
    m = IntMatrix.zeros(ds.group.dim, src.dim)
    for f, inj in zip(fs, ds.injections):
        if f.source != src:
            raise ValueError("stack_homs requires a common source")
        m = m + (inj.matrix * f.matrix)
    return GroupHom(src, ds.group, m), ds


# -- tensor, tor, hom ----------------------------------------------------


@dataclass(frozen=True)
class TensorProduct:
    """A ⊗ B in canonical form with bilinear-generator bookkeeping.

    ``pairs`` lists the (i, j) generator pairs in column order of the
    underlying presentation (left-generator major); ``pure(a, b)`` lands the
    elementary tensor of two elements in the canonical group.
    """

    left: FgAbGroup
    right: FgAbGroup
    group: FgAbGroup
    pairs: tuple
    _canon: Canonicalized = field(compare=False, repr=False)

    def pure(self, a: Sequence[int], b: Sequence[int]) -> tuple:
        a = self.left.reduce(a)
        b = self.right.reduce(b)
        vec = [a[i] * b[j] for (i, j) in self.pairs]
        return self.group.reduce(self._canon.quotient.matrix.mul_vec(vec))

    def gen_pair_element(self, i: int, j: int) -> tuple:
        vec = [1 if (i, j) == p else 0 for p in self.pairs]
        return self.group.reduce(self._canon.quotient.matrix.mul_vec(vec))


def tensor(a: FgAbGroup, b: FgAbGroup) -> TensorProduct:
    """Canonical A ⊗ B.

    >>> str(tensor(cyclic(4), cyclic(6)).group)
    'Z/2'
    """
    pairs = [(i, j) for i in range(a.dim) for j in range(b.dim)]
    idx = {p: k for k, p in enumerate(pairs)}
    rows = []
    for (i, j) in pairs:
        d = a.coord_order(i)
        e = b.coord_order(j)
        if d:
            rows.append([d if idx[(i, j)] == k else 0 for k in range(len(pairs))])
        if e:
            rows.append([e if idx[(i, j)] == k else 0 for k in range(len(pairs))])
    pres = Presentation(len(pairs), IntMatrix.from_rows(rows, cols=len(pairs)) if rows
                        else IntMatrix.zeros(0, len(pairs)))
    c = canonicalize_full(pres)
    return TensorProduct(a, b, c.group, tuple(pairs), c)


def tensor_induced(f: GroupHom, g: GroupHom,
                   source: Optional[TensorProduct] = None,
                   target: Optional[TensorProduct] = None) -> GroupHom:
    """The map f ⊗ g between tensor products."""
    src = source if source is not None else tensor(f.source, g.source)
    tgt = target if target is not None else tensor(f.target, g.target)
    cols = []
    for cgen in range(src.group.dim):
        lift = src._canon.section.col(cgen)
        out = tgt.group.zero()
        for k, (i, j) in enumerate(src.pairs):
            c = lift[k]
            if not c:
                continue
            fi = f.matrix.col(i)
            gj = g.matrix.col(j)
            for ki, a in enumerate(fi):
                if not a:
                    continue
                for kj, bb in enumerate(gj):
                    if not bb:
                        continue
                    out = tgt.group.add(out, tgt.group.smul(c * a * bb, tgt.gen_pair_element(ki, kj)))
        cols.append(out)
    return GroupHom.from_columns(src.group, tgt.group, cols)


def mod_reduction(a: FgAbGroup, n: int) -> tuple:
    """(A ⊗ Z/n, natural quotient A -> A ⊗ Z/n)."""
    tp = tensor(a, cyclic(n))
    cols = [tp.pure([1 if k == j else 0 for k in range(a.dim)], (1,)) for j in range(a.dim)]
    return tp, GroupHom.from_columns(a, tp.group, cols)


def tor(a: FgAbGroup, b: FgAbGroup) -> FgAbGroup:
    """Tor_1(A, B) in canonical form: the direct sum of Z/gcd(di, ej).

    >>> str(tor(cyclic(4), cyclic(6)))
    'Z/2'
    """
    orders = [gcd(d, e) for d in a.torsion for e in b.torsion]
    return from_cyclic_orders([o for o in orders if o > 1])


@dataclass(frozen=True)
class HomGroup:
    """Hom(A, B) as a group, with enumeration of the maps when finite."""

    source: FgAbGroup
    target: FgAbGroup
    group: FgAbGroup

    @property
    def is_finite(self) -> bool:
        return self.group.rank == 0

    def __iter__(self) -> Iterator[GroupHom]:
        a, b = self.source, self.target
        if not self.is_finite:
            raise InfiniteEnumerationError(f"Hom({a}, {b}) is infinite")
        per_gen = []
        for j in range(a.dim):
            d = a.coord_order(j)
            per_gen.append(list(b.elements_killed_by(d)))
        for combo in itertools.product(*per_gen):
            yield GroupHom.from_columns(a, b, list(combo))

    def count(self) -> Optional[int]:
        return self.group.order()


def hom_group(a: FgAbGroup, b: FgAbGroup) -> HomGroup:
    """The abelian group Hom(A, B).

    >>> str(hom_group(cyclic(4), cyclic(6)).group)
    'Z/2'
    >>> len(list(hom_group(cyclic(4), cyclic(6))))
    2
    """
    orders = []
    for d in a.torsion:
        for e in b.torsion:
            orders.append(gcd(d, e))
        # Hom(Z/d, Z) = 0
    for _ in range(a.rank):
        orders.extend(b.torsion)
        orders.extend([0] * b.rank)
    return HomGroup(a, b, from_cyclic_orders([o for o in orders if o != 1]))
