"""Skew braces as pairs of Cayley tables on a shared carrier.

``add`` is the additive group (A, .) and ``mul`` the multiplicative group
(A, o). The gamma function is tabulated as ``gamma[a][b] = a^-1 . (a o b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import groups as grp
from .errors import (
    AddInvalid,
    BraceEquationFails,
    GroupError,
    InternalConsistencyError,
    MulInvalid,
    NotAnIdeal,
    NotBiSkew,
)
from .groups import FiniteGroup, GroupMap, Subgroup

SERIES_KINDS = ("right", "left", "strong", "soluble")


def brace_equation_witness(add: FiniteGroup, mul: FiniteGroup) -> tuple[int, int, int] | None:
    """First triple violating a o (b . c) = (a o b) . a^-1 . (a o c), if any."""
    A, M, inv = add.array, mul.array, add.inverse_array
    lhs = M[:, A]  # lhs[a, b, c] = M[a, A[b, c]]
    left = A[M[:, :, None], inv[:, None, None]]  # (a o b) . a^-1
    rhs = A[left, M[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


class SkewBrace:
    """A validated skew brace. Build with :func:`brace_from_tables`."""

    def __init__(self, add: FiniteGroup, mul: FiniteGroup):
        self.add = add
        self.mul = mul
        self.order = add.order

    def __repr__(self) -> str:
        return f"SkewBrace(order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SkewBrace) and self.add == other.add and self.mul == other.mul

    def __hash__(self) -> int:
        return hash((self.add.table, self.mul.table))

    @cached_property
    def gamma_table(self) -> tuple[tuple[int, ...], ...]:
        ta, tm, inv = self.add.table, self.mul.table, self.add.inverse
        n = self.order
        return tuple(tuple(ta[inv[a]][tm[a][b]] for b in range(n)) for a in range(n))

    @cached_property
    def gamma_array(self) -> np.ndarray:
        arr = np.array(self.gamma_table, dtype=np.int64).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    def star(self, a: int, b: int) -> int:
        ta = self.add.table
        return ta[self.gamma_table[a][b]][self.add.inverse[b]]

    def star_op(self, a: int, b: int) -> int:
        ta, inv = self.add.table, self.add.inverse
        return ta[ta[inv[b]][self.mul.table[a][b]]][inv[a]]

    @cached_property
    def star_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        return tuple(tuple(self.star(a, b) for b in range(n)) for a in range(n))

    @cached_property
    def star_op_table(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        return tuple(tuple(self.star_op(a, b) for b in range(n)) for a in range(n))

    @cached_property
    def fingerprint(self) -> tuple:
        return (
            self.add.invariant,
            self.mul.invariant,
            len(socle(self)),
            len(a_squared(self)),
            tuple(series(self, k).class_value for k in ("right", "left", "soluble")),
        )


def brace_from_tables(add_table, mul_table, *, paranoid: bool = True) -> SkewBrace:
    """Validate both tables and the brace equation.

    ``add_table``/``mul_table`` may be raw tables or already-built groups;
    groups are re-validated unless ``paranoid`` is off.
    """
    try:
        add = _group(add_table, paranoid)
    except GroupError as exc:
        raise AddInvalid(f"additive table invalid: {exc}", exc.witness) from exc
    try:
        mul = _group(mul_table, paranoid)
    except GroupError as exc:
        raise MulInvalid(f"multiplicative table invalid: {exc}", exc.witness) from exc
    if add.order != mul.order:
        raise MulInvalid(f"orders differ: {add.order} vs {mul.order}")
    w = brace_equation_witness(add, mul)
    if w is not None:
        raise BraceEquationFails("left brace equation fails", w)
    return SkewBrace(add, mul)


def _group(table, paranoid: bool) -> FiniteGroup:
    if isinstance(table, FiniteGroup):
        return grp.group_from_table(table.table) if paranoid else table
    return grp.group_from_table(table)


def _trusted(add: FiniteGroup, mul: FiniteGroup) -> SkewBrace:
    return SkewBrace(add, mul)


# --- gamma -------------------------------------------------------------------


@dataclass(frozen=True)
class GammaFunction:
    """Element -> additive automorphism, stored as permutation rows."""

    group: FiniteGroup
    maps: tuple[tuple[int, ...], ...]

    def __call__(self, a: int) -> GroupMap:
        return GroupMap(self.group, self.group, self.maps[a])

    def image(self) -> list[tuple[int, ...]]:
        """Distinct automorphisms in order of first appearance (identity first)."""
        seen = {tuple(range(self.group.order)): None}
        for m in self.maps:
            seen.setdefault(m, None)
        return list(seen)


def _check_gamma(add: FiniteGroup, mul: FiniteGroup, maps) -> None:
    G = np.array(maps, dtype=np.int64)
    A = add.array
    # each gamma(a) is an additive automorphism
    auto = G[:, A] == A[G[:, :, None], G[:, None, :]]
    if not auto.all():
        a, b, c = (int(x) for x in np.argwhere(~auto)[0])
        raise InternalConsistencyError(f"gamma({a}) is not an automorphism at ({b},{c})")
    # gamma(a o b) = gamma(a) gamma(b)
    M = mul.array
    lhs = G[M]  # lhs[a, b, x] = G[M[a,b], x]
    rhs = G[np.arange(len(G))[:, None, None], G[None, :, :]]
    if not (lhs == rhs).all():
        a, b, _ = (int(v) for v in np.argwhere(lhs != rhs)[0])
        raise InternalConsistencyError(f"gamma is not multiplicative at ({a},{b})")


def gamma(A: SkewBrace) -> GammaFunction:
    g = A.__dict__.get("_gamma_fn")
    if g is None:
        _check_gamma(A.add, A.mul, A.gamma_table)
        g = GammaFunction(A.add, A.gamma_table)
        A.__dict__["_gamma_fn"] = g
    return g


def gamma_op(A: SkewBrace) -> GammaFunction:
    """Gamma function of the opposite brace: b -> (a o b) . a^-1."""
    return gamma(opposite(A))


# --- star subgroups and ideals ---------------------------------------------------


def _additive_closure(A: SkewBrace, elements: Iterable[int]) -> Subgroup:
    return grp.subgroup_generated(A.add, elements)


def star_subgroup(A: SkewBrace, X: Iterable[int], Y: Iterable[int]) -> Subgroup:
    st = A.star_table
    Y = list(Y)
    return _additive_closure(A, {st[x][y] for x in X for y in Y})


def star_op_subgroup(A: SkewBrace, X: Iterable[int], Y: Iterable[int]) -> Subgroup:
    st = A.star_op_table
    Y = list(Y)
    return _additive_closure(A, {st[x][y] for x in X for y in Y})


def whole(A: SkewBrace) -> Subgroup:
    return grp.whole(A.add)


def a_squared(A: SkewBrace) -> Subgroup:
    r = range(A.order)
    return star_subgroup(A, r, r)


def a_op_squared(A: SkewBrace) -> Subgroup:
    r = range(A.order)
    return star_op_subgroup(A, r, r)


def ker_gamma(A: SkewBrace) -> Subgroup:
    ident = tuple(range(A.order))
    return Subgroup(A.add, tuple(a for a in range(A.order) if A.gamma_table[a] == ident))


def socle(A: SkewBrace) -> Subgroup:
    Z = grp.center(A.add)
    return Subgroup(A.add, tuple(a for a in ker_gamma(A) if a in Z))


def _as_subgroup(A: SkewBrace, S) -> Subgroup | None:
    members = S.members if isinstance(S, Subgroup) else S
    return grp.subgroup_from_members(A.add, members)


def is_left_ideal(A: SkewBrace, S) -> bool:
    sub = _as_subgroup(A, S)
    if sub is None:
        return False
    gt = A.gamma_table
    return all(gt[a][s] in sub for a in range(A.order) for s in sub)


def is_ideal(A: SkewBrace, S) -> bool:
    if not is_left_ideal(A, S):
        return False
    sub = _as_subgroup(A, S)
    if grp.normality_witness(A.add, sub) is not None:
        return False
    mul_sub = grp.subgroup_from_members(A.mul, sub.members)
    return mul_sub is not None and grp.normality_witness(A.mul, mul_sub) is None


# --- predicates ----------------------------------------------------------------------


@dataclass(frozen=True)
class BiSkewReport:
    verdict: bool
    by_definition: bool
    by_antihom: bool
    by_ideal_containment: bool
    by_remark: bool


@dataclass(frozen=True)
class GammaHomReport:
    verdict: bool
    by_hom_law: bool
    by_A2_in_ker: bool
    by_class_le_2: bool


def gamma_antihom_holds(A: SkewBrace) -> bool:
    """gamma(a . b) == gamma(b) gamma(a) for all a, b."""
    G, Ad = A.gamma_array, A.add.array
    lhs = G[Ad]  # [a, b, x] = gamma(a.b)(x)
    rhs = G[np.arange(A.order)[None, :, None], G[:, None, :]]  # gamma(b)(gamma(a)(x))
    return bool((lhs == rhs).all())


def gamma_hom_holds(A: SkewBrace) -> bool:
    """gamma(a . b) == gamma(a) gamma(b) for all a, b."""
    G, Ad = A.gamma_array, A.add.array
    lhs = G[Ad]
    rhs = G[np.arange(A.order)[:, None, None], G[None, :, :]]  # gamma(a)(gamma(b)(x))
    return bool((lhs == rhs).all())


def image_is_abelian(A: SkewBrace) -> bool:
    img = gamma(A).image()
    return all(
        grp.compose_perms(p, q) == grp.compose_perms(q, p) for i, p in enumerate(img) for q in img[i + 1 :]
    )


def image_group(A: SkewBrace) -> FiniteGroup:
    """im(gamma) as an abstract group under composition."""
    G, _ = grp.group_from_elements(gamma(A).image(), grp.compose_perms, tuple(range(A.order)))
    return G


def is_bi_skew(A: SkewBrace) -> BiSkewReport:
    by_def = brace_equation_witness(A.mul, A.add) is None
    by_antihom = gamma_antihom_holds(A)
    op2 = a_op_squared(A)
    by_ideal = op2 <= ker_gamma(A)
    by_remark = star_subgroup(A, op2, range(A.order)).is_trivial()
    flags = {by_def, by_antihom, by_ideal, by_remark}
    if len(flags) != 1:
        raise InternalConsistencyError(
            f"bi-skew characterisations disagree: definition={by_def}, antihom={by_antihom}, "
            f"ideal={by_ideal}, remark={by_remark}"
        )
    return BiSkewReport(by_def, by_def, by_antihom, by_ideal, by_remark)


def is_gamma_homomorphic(A: SkewBrace) -> GammaHomReport:
    by_hom = gamma_hom_holds(A)
    by_ker = a_squared(A) <= ker_gamma(A)
    rc = series(A, "right").class_value
    by_class = rc is not None and rc <= 2
    if len({by_hom, by_ker, by_class}) != 1:
        raise InternalConsistencyError(
            f"gamma-homomorphic characterisations disagree: hom={by_hom}, A2<=ker={by_ker}, class<=2={by_class}"
        )
    return GammaHomReport(by_hom, by_hom, by_ker, by_class)


# --- series -----------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    chain: tuple[Subgroup, ...]
    terminated: bool
    class_value: int | None


def series(A: SkewBrace, kind: str) -> SeriesReport:
    """Iterate one of the four star recursions until {1} or a fixpoint."""
    if kind not in SERIES_KINDS:
        raise ValueError(f"unknown series kind {kind!r}")
    cache = A.__dict__.setdefault("_series", {})
    if kind in cache:
        return cache[kind]
    full = whole(A)
    terms = [full]
    cap = A.order + 1
    terminated = full.is_trivial()
    while not terminated and len(terms) <= cap:
        prev = terms[-1]
        if kind == "right":
            nxt = star_subgroup(A, prev, full)
        elif kind == "left":
            nxt = star_subgroup(A, full, prev)
        elif kind == "soluble":
            nxt = star_subgroup(A, prev, prev)
        else:
            k = len(terms) + 1
            gens: set[int] = set()
            for i in range(1, k):
                gens.update(star_subgroup(A, terms[i - 1], terms[k - i - 1]))
            nxt = _additive_closure(A, gens)
        terms.append(nxt)
        if nxt.is_trivial():
            terminated = True
        elif nxt == prev and kind != "strong":
            break
    chain: list[Subgroup] = []
    for t in terms:
        if not chain or chain[-1] != t:
            chain.append(t)
    class_value = None
    if terminated:
        # class is n - 1 for the first n with the n-th term trivial
        class_value = next(i for i, t in enumerate(terms, start=1) if t.is_trivial()) - 1
    report = SeriesReport(kind, tuple(chain), terminated, class_value)
    cache[kind] = report
    return report


# --- derived braces ----------------------------------------------------------


def _transpose(G: FiniteGroup) -> FiniteGroup:
    return FiniteGroup(tuple(zip(*G.table)), G.inverse)


def opposite(A: SkewBrace) -> SkewBrace:
    return _trusted(_transpose(A.add), A.mul)


def swapped(A: SkewBrace) -> SkewBrace:
    if brace_equation_witness(A.mul, A.add) is not None:
        raise NotBiSkew("brace is not bi-skew; swapped tables do not form a skew brace")
    return _trusted(A.mul, A.add)


def quotient_brace(A: SkewBrace, I) -> tuple[SkewBrace, GroupMap]:
    if not is_ideal(A, I):
        raise NotAnIdeal("subset is not an ideal")
    sub = _as_subgroup(A, I)
    Q, proj = grp.quotient_group(A.add, sub)
    label = proj.images
    reps = [label.index(k) for k in range(Q.order)]
    tm = A.mul.table
    mul_table = [[label[tm[reps[i]][reps[j]]] for j in range(Q.order)] for i in range(Q.order)]
    # well-definedness on cosets
    for a in range(A.order):
        for b in range(A.order):
            if label[tm[a][b]] != mul_table[label[a]][label[b]]:
                raise InternalConsistencyError(f"quotient multiplication ill-defined at ({a},{b})")
    return _trusted(Q, FiniteGroup(mul_table)), proj


def find_brace_isomorphism(A: SkewBrace, B: SkewBrace) -> tuple[int, ...] | None:
    """Bijection f with f(a.b)=f(a).f(b) and f(aob)=f(a)of(b), or None."""
    if A.order != B.order or A.fingerprint != B.fingerprint:
        return None
    ta, tb = A.mul.table, B.mul.table
    n = A.order
    for f in grp.homomorphisms(A.add, B.add, bijective=True):
        im = f.images
        if all(im[ta[a][b]] == tb[im[a]][im[b]] for a in range(n) for b in range(n)):
            return im
    return None


def relabel(A: SkewBrace, perm: Sequence[int]) -> SkewBrace:
    """Transport both tables along the bijection ``perm`` (perm[0] must be 0)."""
    n = A.order
    inv = grp.invert_perm(perm)

    def move(t):
        return [[perm[t[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]

    return _trusted(FiniteGroup(move(A.add.table)), FiniteGroup(move(A.mul.table)))
