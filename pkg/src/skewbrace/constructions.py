"""Named skew brace constructions and brace blocks.

A brace block is stored as explicit multiplicative tables on one carrier.
Position 0 always holds the designated base operation, i.e. the additive
group the gamma functions of the other operations are measured against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import braces as br
from . import groups as grp
from .braces import SkewBrace
from .errors import (
    ActionNotBraceAutomorphism,
    ActionNotHomomorphism,
    CompatibilityFails,
    ConditionFails,
    GammaLawFails,
    HBNotAbelian,
    InternalConsistencyError,
    MNotAbelian,
    NotAutomorphism,
    NotBiSkew,
    NotEndomorphism,
    NotGammaHomomorphic,
    NotHomomorphism,
    NotIntoM,
    NotMInvariant,
    PairNotBiSkew,
)
from .groups import FiniteGroup, GroupMap, Subgroup

Perm = tuple[int, ...]


def _perm(p) -> Perm:
    return tuple(p.images) if isinstance(p, GroupMap) else tuple(int(x) for x in p)


def is_automorphism(G: FiniteGroup, p: Sequence[int]) -> bool:
    if sorted(p) != list(range(G.order)) or p[0] != 0:
        return False
    t = G.table
    n = G.order
    return all(p[t[a][b]] == t[p[a]][p[b]] for a in range(n) for b in range(n))


# --- skew braces -------------------------------------------------------------


def trivial(G: FiniteGroup) -> SkewBrace:
    return br._trusted(G, G)


def op_trivial(G: FiniteGroup) -> SkewBrace:
    return br._trusted(br._transpose(G), G)


def from_gamma(G: FiniteGroup, gamma_maps: Sequence) -> SkewBrace:
    """Skew brace with a o b = a . gamma(a)(b)."""
    maps = [_perm(p) for p in gamma_maps]
    n = G.order
    if len(maps) != n:
        raise ValueError(f"need {n} gamma values, got {len(maps)}")
    for a, p in enumerate(maps):
        if len(p) != n or not is_automorphism(G, p):
            raise NotAutomorphism(f"gamma({a}) is not an automorphism", a)
    t = G.table
    for a in range(n):
        ga = maps[a]
        for b in range(n):
            c = t[a][ga[b]]
            if maps[c] != grp.compose_perms(ga, maps[b]):
                raise GammaLawFails("gamma(a . gamma(a)(b)) != gamma(a) gamma(b)", (a, b))
    mul = [[t[a][maps[a][b]] for b in range(n)] for a in range(n)]
    return br.brace_from_tables(G, mul, paranoid=False)


def semidirect(A: SkewBrace, B: SkewBrace, alpha: Sequence) -> SkewBrace:
    """A x| B for an action alpha: (A, o) -> Aut(B, ., o), one permutation per element of A.

    (a,b).(a',b') = (a.a', b.b') and (a,b)o(a',b') = (a o a', b o alpha(a)(b')),
    with (a, b) encoded as a * |B| + b.
    """
    alpha = [_perm(p) for p in alpha]
    if len(alpha) != A.order:
        raise ValueError("action needs one automorphism per element of A")
    for a, p in enumerate(alpha):
        if not (is_automorphism(B.add, p) and is_automorphism(B.mul, p)):
            raise ActionNotBraceAutomorphism(f"alpha({a}) is not a brace automorphism of B", a)
    tm = A.mul.table
    for a in range(A.order):
        for b in range(A.order):
            if alpha[tm[a][b]] != grp.compose_perms(alpha[a], alpha[b]):
                raise ActionNotHomomorphism("alpha(a o b) != alpha(a) alpha(b)", (a, b))
    m = B.order
    n = A.order * m
    aa, am, ba, bm = A.add.table, A.mul.table, B.add.table, B.mul.table
    add = [[aa[x // m][y // m] * m + ba[x % m][y % m] for y in range(n)] for x in range(n)]
    mul = [[am[x // m][y // m] * m + bm[x % m][alpha[x // m][y % m]] for y in range(n)] for x in range(n)]
    return br.brace_from_tables(add, mul)


def ring_brace(m: int, x: int) -> SkewBrace:
    """(Z/m)^2 with (r,s) o (r',s') = (r+r', s+s'+x r r'); (r, s) encoded r*m + s."""
    add = grp.abelian(m, m)
    return br._trusted(add, FiniteGroup(_ring_table(m, x)))


def _ring_table(m: int, x: int) -> list[list[int]]:
    n = m * m
    return [
        [((u // m + v // m) % m) * m + (u % m + v % m + x * (u // m) * (v // m)) % m for v in range(n)]
        for u in range(n)
    ]


def _c2_action(H: FiniteGroup, auto: Perm) -> list[Perm]:
    return [tuple(range(H.order)), auto]


def counterexample_a() -> SkewBrace:
    """Triv(C2) x| Triv(C2 x C8), the generator acting by inversion (order 32)."""
    H = grp.abelian(2, 8)
    return semidirect(trivial(grp.cyclic(2)), trivial(H), _c2_action(H, H.inverse))


def coordinate_swap_c2_4() -> Perm:
    """(a,b,c,d) -> (b,a,d,c) on C2^4 encoded a*8 + b*4 + c*2 + d."""

    def swap(x: int) -> int:
        a, b, c, d = (x >> 3) & 1, (x >> 2) & 1, (x >> 1) & 1, x & 1
        return (b << 3) | (a << 2) | (d << 1) | c

    return tuple(swap(x) for x in range(16))


def counterexample_b() -> SkewBrace:
    """Triv(C2) x| Triv(C2^4), the generator swapping coordinates pairwise (order 32)."""
    H = grp.abelian(2, 2, 2, 2)
    return semidirect(trivial(grp.cyclic(2)), trivial(H), _c2_action(H, coordinate_swap_c2_4()))


# --- actions and homomorphism helpers -----------------------------------------


def automorphism_perms(G: FiniteGroup, bound: int = grp.AUT_ORDER_BOUND) -> list[Perm]:
    return [f.images for f in grp.automorphism_group(G, bound)]


def perm_group(perms: Iterable[Sequence[int]], degree: int) -> tuple[FiniteGroup, list[Perm]]:
    """Tabulate the group generated by permutations (closure under composition)."""
    return grp.permutation_group([tuple(p) for p in perms], degree)


def homomorphisms_into_perms(G: FiniteGroup, perms: Sequence[Perm], degree: int) -> list[list[Perm]]:
    """Every homomorphism from G into the group generated by ``perms``, as lists of permutations."""
    M, elems = perm_group(perms, degree)
    return [[elems[i] for i in f.images] for f in grp.homomorphisms(G, M)]


def characters_c2(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Homomorphisms G -> C2 as 0/1 vectors, trivial one first."""
    return [f.images for f in grp.homomorphisms(G, grp.cyclic(2))]


def power_action(G: FiniteGroup, chi: Sequence[int], auto: Perm) -> list[Perm]:
    """g -> auto^chi(g) for a 0/1 character chi and an involutive automorphism."""
    ident = tuple(range(len(auto)))
    return [auto if c else ident for c in chi]


# --- brace blocks --------------------------------------------------------------


@dataclass(frozen=True)
class BlockReport:
    valid: bool
    by_definition: bool
    by_conditions: bool
    pairs_checked: int
    definition_witness: tuple | None = None
    condition_witness: tuple | None = None


@dataclass(frozen=True, eq=False)
class BraceBlock:
    order: int
    base_add: FiniteGroup
    ops: tuple[FiniteGroup, ...]
    labels: tuple[str, ...]
    report: BlockReport | None = field(default=None, compare=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, BraceBlock) and [o.table for o in self.ops] == [o.table for o in other.ops]

    def __hash__(self) -> int:
        return hash(tuple(o.table for o in self.ops))

    def brace(self, i: int, j: int) -> SkewBrace:
        """The bi-skew brace (A, o_i, o_j)."""
        return br._trusted(self.ops[i], self.ops[j])


def _gamma_rows(base: FiniteGroup, op: FiniteGroup) -> np.ndarray:
    return base.array[base.inverse_array[:, None], op.array]


def _definition_route(ops: Sequence[FiniteGroup]) -> tuple[bool, tuple | None, int]:
    checked = 0
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            checked += 1
            for x, y in ((i, j), (j, i)):
                w = br.brace_equation_witness(ops[x], ops[y])
                if w is not None:
                    return False, (x, y, w), checked
    return True, None, checked


def _conditions_route(ops: Sequence[FiniteGroup]) -> tuple[bool, tuple | None]:
    base = ops[0]
    n = base.order
    A = base.array
    idx = np.arange(n)
    gammas = [_gamma_rows(base, op) for op in ops]
    for i, G in enumerate(gammas):
        # each gamma_i(a) an automorphism of the base group
        auto = G[:, A] == A[G[:, :, None], G[:, None, :]]
        if not auto.all():
            a, b, c = (int(v) for v in np.argwhere(~auto)[0])
            return False, (i, i, ("not an automorphism", a, b, c))
        # antihomomorphism: gamma_i(a.b) = gamma_i(b) gamma_i(a)
        lhs = G[A]
        rhs = G[idx[None, :, None], G[:, None, :]]
        if not (lhs == rhs).all():
            a, b, _ = (int(v) for v in np.argwhere(lhs != rhs)[0])
            return False, (i, i, ("not an antihomomorphism", a, b))
    ident = np.broadcast_to(idx, (n, n))
    if not any((G == ident).all() for G in gammas):
        return False, (None, None, "no constant identity gamma")
    inverses = []
    for G in gammas:
        inv = np.empty_like(G)
        np.put_along_axis(inv, G, ident, axis=1)
        inverses.append(inv)
    for i, Gi in enumerate(gammas):
        for j, Gj in enumerate(gammas):
            # gamma_i(a) gamma_j(b) gamma_i(a)^-1 == gamma_j(gamma_i(a)(b))
            inner = inverses[i][:, None, :]  # [a, 1, x]
            mid = Gj[idx[None, :, None], inner]  # gamma_j(b)(gamma_i(a)^-1 x)
            lhs = Gi[idx[:, None, None], mid]
            rhs = Gj[Gi][:, :, :]  # [a, b, x] = gamma_j(gamma_i(a)(b))(x)
            if not (lhs == rhs).all():
                a, b, _ = (int(v) for v in np.argwhere(lhs != rhs)[0])
                return False, (i, j, (a, b))
    return True, None


def block_report(ops: Sequence[FiniteGroup]) -> BlockReport:
    """Evaluate both block criteria without raising on invalid input."""
    by_def, wdef, checked = _definition_route(ops)
    by_cond, wcond = _conditions_route(ops)
    if by_def != by_cond:
        raise InternalConsistencyError(
            f"block routes disagree: definition={by_def} ({wdef}), conditions={by_cond} ({wcond})"
        )
    return BlockReport(by_def, by_def, by_cond, checked, wdef, wcond)


def validate_block(block: BraceBlock | Sequence[FiniteGroup]) -> BlockReport:
    """Check every pair is bi-skew and the gamma-family conditions relative to ops[0].

    Raises :class:`PairNotBiSkew` when the family is not a brace block.
    """
    ops = block.ops if isinstance(block, BraceBlock) else list(block)
    report = block_report(ops)
    if not report.valid:
        i, j, w = report.definition_witness
        raise PairNotBiSkew(i, j, w)
    return report


def condition_failure(ops: Sequence[FiniteGroup]) -> None:
    """Raise ConditionFails if the gamma-family conditions fail (no definitional check)."""
    ok, w = _conditions_route(ops)
    if not ok:
        i, j, rest = w
        raise ConditionFails(i if i is not None else -1, j if j is not None else -1, rest)


def make_block(base: FiniteGroup, labelled_ops: Sequence[tuple[str, FiniteGroup]]) -> BraceBlock:
    """Assemble a block, putting the operation equal to ``base`` at position 0.

    If no supplied operation equals the base group it is prepended with label
    ``base``.
    """
    ops = list(labelled_ops)
    pos = next((k for k, (_, op) in enumerate(ops) if op.table == base.table), None)
    if pos is None:
        ops.insert(0, ("base", base))
    else:
        ops.insert(0, ops.pop(pos))
    tables = tuple(op for _, op in ops)
    labels = tuple(str(lab) for lab, _ in ops)
    report = validate_block(tables)
    return BraceBlock(base.order, tables[0], tables, labels, report)


def block_from_tables(tables: Sequence[Sequence[Sequence[int]]], labels: Sequence[str] | None = None) -> BraceBlock:
    """Validate raw tables as a block with table 0 as the base operation."""
    ops = tuple(grp.group_from_table(t) for t in tables)
    if len({op.order for op in ops}) != 1:
        raise ValueError("block operations have different orders")
    report = validate_block(ops)
    labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(ops)))
    return BraceBlock(ops[0].order, ops[0], ops, labels, report)


def _gamma_op(G: FiniteGroup, gamma_of: Callable[[int], Perm]) -> FiniteGroup:
    t = G.table
    n = G.order
    rows = []
    for a in range(n):
        g = gamma_of(a)
        rows.append([t[a][g[b]] for b in range(n)])
    return FiniteGroup(rows)


def ring_block(m: int, xs: Sequence[int], ring_mul: Sequence[Sequence[int]] | None = None) -> BraceBlock:
    """Block on R^2 with (r,s) o_x (r',s') = (r+r', s+s'+x r r').

    R is Z/m unless ``ring_mul`` gives the multiplication table of a finite
    ring whose addition is Z/m (elements 0..m-1, 1 not required).
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    add = grp.abelian(m, m)
    if ring_mul is None:
        rmul = [[(a * b) % m for b in range(m)] for a in range(m)]
    else:
        rmul = [list(row) for row in ring_mul]
    n = m * m

    def op_for(x: int) -> FiniteGroup:
        x %= m
        return FiniteGroup(
            [
                [((u // m + v // m) % m) * m + (u % m + v % m + rmul[rmul[x][u // m]][v // m]) % m for v in range(n)]
                for u in range(n)
            ]
        )

    return make_block(add, [(str(x), op_for(x)) for x in xs])


def _check_abelian_closed(M: Sequence[Perm]) -> None:
    Ms = set(M)
    for p in M:
        for q in M:
            pq, qp = grp.compose_perms(p, q), grp.compose_perms(q, p)
            if pq != qp:
                raise MNotAbelian("M is not abelian", (M.index(p), M.index(q)))
            if pq not in Ms:
                raise MNotAbelian("M is not closed under composition", (M.index(p), M.index(q)))


def intermediate_block(G: FiniteGroup, M: Sequence, gammas: Sequence[Sequence]) -> BraceBlock:
    """One operation a o b = a . gamma(a)(b) per homomorphism gamma: G -> M.

    M is an abelian subgroup of Aut(G) (a list of permutations) and each gamma
    must satisfy gamma(psi(a)) = gamma(a) for every psi in M.
    """
    Mp = [_perm(p) for p in M]
    _check_abelian_closed(Mp)
    Ms = set(Mp)
    for p in Mp:
        if not is_automorphism(G, p):
            raise NotAutomorphism("element of M is not an automorphism", Mp.index(p))
    t = G.table
    n = G.order
    ops = []
    for k, gm in enumerate(gammas):
        gm = [_perm(p) for p in gm]
        for a in range(n):
            if gm[a] not in Ms:
                raise NotIntoM(f"gamma {k} leaves M", (k, a))
        for a in range(n):
            for b in range(n):
                if gm[t[a][b]] != grp.compose_perms(gm[a], gm[b]):
                    raise NotHomomorphism(f"gamma {k} is not a homomorphism", (k, a, b))
        for psi in Mp:
            for a in range(n):
                if gm[psi[a]] != gm[a]:
                    raise NotMInvariant(f"gamma {k} is not M-invariant", (k, Mp.index(psi), a))
        ops.append((str(k), _gamma_op(G, gm.__getitem__)))
    block = make_block(G, ops)
    _assert_pairs_gamma_homomorphic(block)
    return block


def _assert_pairs_gamma_homomorphic(block: BraceBlock) -> None:
    for i in range(len(block.ops)):
        for j in range(len(block.ops)):
            if i != j and not br.is_gamma_homomorphic(block.brace(i, j)).verdict:
                raise InternalConsistencyError(f"pair ({i},{j}) of an intermediate block is not gamma-homomorphic")


def invariant_homomorphisms(G: FiniteGroup, M: Sequence) -> list[list[Perm]]:
    """All homomorphisms G -> M with gamma(psi(a)) = gamma(a) for psi in M."""
    Mp = [_perm(p) for p in M]
    out = []
    for gm in homomorphisms_into_perms(G, Mp, G.order):
        if all(gm[psi[a]] == gm[a] for psi in Mp for a in range(G.order)):
            out.append(gm)
    return out


def unitriangular(m: int) -> list[Perm]:
    """Automorphisms (r, s) -> (r, s + k r) of (Z/m)^2, k = 0..m-1."""
    return [tuple(r * m + (s + k * r) % m for r in range(m) for s in range(m)) for k in range(m)]


def semidirect_block(G: FiniteGroup, H: FiniteGroup, M: Sequence, alphas: Sequence[Sequence]) -> BraceBlock:
    """Operations (g,h) o (g',h') = (g g', h alpha(g)(h')) on G x H, one per alpha: G -> M."""
    Mp = [_perm(p) for p in M]
    _check_abelian_closed(Mp)
    Ms = set(Mp)
    for p in Mp:
        if not is_automorphism(H, p):
            raise NotAutomorphism("element of M is not an automorphism of H", Mp.index(p))
    tg, th = G.table, H.table
    m = H.order
    n = G.order * m
    ops = []
    for k, al in enumerate(alphas):
        al = [_perm(p) for p in al]
        for g in range(G.order):
            if al[g] not in Ms:
                raise NotIntoM(f"alpha {k} leaves M", (k, g))
        for a in range(G.order):
            for b in range(G.order):
                if al[tg[a][b]] != grp.compose_perms(al[a], al[b]):
                    raise NotHomomorphism(f"alpha {k} is not a homomorphism", (k, a, b))
        table = [[tg[x // m][y // m] * m + th[x % m][al[x // m][y % m]] for y in range(n)] for x in range(n)]
        ops.append((str(k), FiniteGroup(table)))
    return make_block(grp.direct_product(G, H), ops)


def inner_automorphism(A: FiniteGroup, b: int) -> Perm:
    """x -> b x b^-1."""
    return tuple(A.conjugate(b, x) for x in range(A.order))


def inner_block(A: FiniteGroup, B: Subgroup | Iterable[int], homs: Sequence[Sequence[int]]) -> BraceBlock:
    """Operations a o b = a . psi(a) b psi(a)^-1, where a -> conj(psi(a)) is a homomorphism A -> H(B).

    Each entry of ``homs`` lists psi(a) in B for every a.
    """
    Bm = B.members if isinstance(B, Subgroup) else tuple(sorted(set(B)))
    Bset = set(Bm)
    Z = grp.center(A)
    for x in Bm:
        for y in Bm:
            c = A.commutator(x, y)
            if c not in Z:
                raise HBNotAbelian("[B,B] is not central", (x, y))
    t = A.table
    n = A.order
    ops = []
    for k, psi in enumerate(homs):
        if any(psi[a] not in Bset for a in range(n)):
            a = next(a for a in range(n) if psi[a] not in Bset)
            raise NotIntoM(f"map {k} leaves B", (k, a))
        conj = [inner_automorphism(A, psi[a]) for a in range(n)]
        for a in range(n):
            for b in range(n):
                if conj[t[a][b]] != grp.compose_perms(conj[a], conj[b]):
                    raise NotHomomorphism(f"map {k} does not induce a homomorphism into H(B)", (k, a, b))
        ops.append((str(k), _gamma_op(A, conj.__getitem__)))
    return make_block(A, ops)


def inner_homomorphisms(A: FiniteGroup, B: Subgroup | Iterable[int]) -> list[list[int]]:
    """Every homomorphism A -> H(B), each given by a choice of conjugating elements."""
    Bm = B.members if isinstance(B, Subgroup) else tuple(sorted(set(B)))
    rep: dict[Perm, int] = {}
    for b in Bm:
        rep.setdefault(inner_automorphism(A, b), b)
    perms = list(rep)
    out = []
    for gm in homomorphisms_into_perms(A, perms, A.order):
        out.append([rep[p] for p in gm])
    return out


def _perm_power(p: Perm, k: int) -> Perm:
    if k < 0:
        p, k = grp.invert_perm(p), -k
    result = tuple(range(len(p)))
    for _ in range(k):
        result = grp.compose_perms(p, result)
    return result


def iterate_block(A: SkewBrace, n_range: Iterable[int]) -> BraceBlock:
    """Operations a o_n b = a . gamma(a)^n (b) for a bi-skew gamma-homomorphic brace."""
    if not br.is_bi_skew(A).verdict:
        raise NotBiSkew("iterate_block needs a bi-skew brace")
    if not br.is_gamma_homomorphic(A).verdict:
        raise NotGammaHomomorphic("iterate_block needs a gamma-homomorphic brace")
    gt = A.gamma_table
    ops = []
    for k in n_range:
        powers = [_perm_power(gt[a], k) for a in range(A.order)]
        ops.append((str(k), _gamma_op(A.add, powers.__getitem__)))
    return make_block(A.add, ops)


def psi_deform(A: SkewBrace, psi: Sequence[int]) -> SkewBrace:
    """Skew brace with a o b = a . gamma(psi(a))(b) for a compatible additive endomorphism psi."""
    psi = _perm(psi)
    n = A.order
    t = A.add.table
    if len(psi) != n or psi[0] != 0:
        raise NotEndomorphism("psi must fix the identity", 0)
    for a in range(n):
        for b in range(n):
            if psi[t[a][b]] != t[psi[a]][psi[b]]:
                raise NotEndomorphism("psi is not an additive endomorphism", (a, b))
    gt = A.gamma_table
    for a in range(n):
        g = gt[psi[a]]
        for b in range(n):
            if psi[g[b]] != g[psi[b]]:
                raise CompatibilityFails("psi(gamma(psi(a))(b)) != gamma(psi(a))(psi(b))", (a, b))
    mul = [[t[a][gt[psi[a]][b]] for b in range(n)] for a in range(n)]
    return br.brace_from_tables(A.add, mul, paranoid=False)


def power_map(G: FiniteGroup, k: int) -> Perm:
    return tuple(G.power(a, k) for a in range(G.order))
