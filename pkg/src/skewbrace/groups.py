"""Finite groups given by Cayley tables on the indices 0..n-1.

Element 0 is always the identity. Tables are stored as tuples of tuples so
that groups are hashable and cheap to index from pure Python loops; a numpy
copy is kept for vectorised checks.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    NoIdentityAtZero,
    NoInverse,
    NotAssociative,
    NotNormal,
    OrderBoundExceeded,
    TableShapeError,
)

AUT_ORDER_BOUND = 64

Table = tuple[tuple[int, ...], ...]


class FiniteGroup:
    """A finite group on 0..n-1 with identity 0.

    Do not call the constructor on untrusted data; use :func:`group_from_table`.
    """

    def __init__(self, table: Sequence[Sequence[int]], inverse: Sequence[int] | None = None):
        self.table: Table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        if inverse is None:
            inverse = [0] * self.order
            for a, row in enumerate(self.table):
                inverse[a] = row.index(0)
        self.inverse = tuple(inverse)

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64).reshape(self.order, self.order)
        arr.setflags(write=False)
        return arr

    @cached_property
    def inverse_array(self) -> np.ndarray:
        arr = np.array(self.inverse, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        result = 0
        for _ in range(k):
            result = self.table[result][a]
        return result

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    def commutator(self, a: int, b: int) -> int:
        """Return a^-1 b^-1 a b."""
        t, i = self.table, self.inverse
        return t[t[t[i[a]][i[b]]][a]][b]

    def conjugate(self, g: int, x: int) -> int:
        """Return g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    @cached_property
    def is_abelian(self) -> bool:
        arr = self.array
        return bool((arr == arr.T).all())

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        by_order = sorted(range(1, self.order), key=lambda a: (-self.element_orders[a], a))
        gens: list[int] = []
        members = {0}
        while len(members) < self.order:
            a = next(x for x in by_order if x not in members)
            gens.append(a)
            members = _closure(self, gens)
        return tuple(gens)

    @cached_property
    def invariant(self) -> tuple:
        """Isomorphism invariant: order statistics plus centre and derived sizes."""
        s = group_structure(self)
        return (
            self.order,
            tuple(sorted(Counter(self.element_orders).items())),
            len(s.center),
            len(s.derived),
            s.nilpotency_class,
            s.derived_length,
        )


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __eq__(self, other) -> bool:
        if isinstance(other, Subgroup):
            return self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order

    def is_normal(self) -> bool:
        return normality_witness(self.parent, self) is None

    def __repr__(self) -> str:
        return f"Subgroup({list(self.members)})"


@dataclass(frozen=True)
class GroupMap:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, a: int) -> int:
        return self.images[a]

    def compose(self, other: "GroupMap") -> "GroupMap":
        """Return self after other."""
        return GroupMap(other.source, self.target, tuple(self.images[x] for x in other.images))

    def is_homomorphism(self) -> bool:
        s, t, f = self.source.table, self.target.table, self.images
        if f[0] != 0:
            return False
        return all(f[s[a][b]] == t[f[a]][f[b]] for a in range(self.source.order) for b in range(self.source.order))

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, tuple(a for a, x in enumerate(self.images) if x == 0))

    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.target.order == self.source.order


def _closure(G: FiniteGroup, gens: Iterable[int]) -> set[int]:
    gens = [g for g in set(gens) if g != 0]
    members = {0}
    queue = deque([0])
    t = G.table
    while queue:
        x = queue.popleft()
        for g in gens:
            y = t[x][g]
            if y not in members:
                members.add(y)
                queue.append(y)
    return members


def group_from_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a Cayley table and return the group it defines."""
    n = len(table)
    if n == 0:
        raise TableShapeError("empty table")
    rows = []
    for a, row in enumerate(table):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise TableShapeError(f"row {a} has length {len(row)}, expected {n}", a)
        for x in row:
            if not 0 <= x < n:
                raise TableShapeError(f"entry {x} out of range in row {a}", a)
        rows.append(row)
    for a in range(n):
        if rows[0][a] != a:
            raise NoIdentityAtZero(f"0*{a} = {rows[0][a]}", a)
        if rows[a][0] != a:
            raise NoIdentityAtZero(f"{a}*0 = {rows[a][0]}", a)
    inverse = []
    for a in range(n):
        right = [b for b in range(n) if rows[a][b] == 0]
        b = next((b for b in right if rows[b][a] == 0), None)
        if b is None:
            raise NoInverse(f"element {a} has no two-sided inverse", a)
        inverse.append(b)
    arr = np.array(rows, dtype=np.int64)
    ab_c = arr[arr[:, :, None], np.arange(n)[None, None, :]]
    a_bc = arr[np.arange(n)[:, None, None], arr[None, :, :]]
    bad = np.argwhere(ab_c != a_bc)
    if len(bad):
        a, b, c = (int(x) for x in bad[0])
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", (a, b, c))
    return FiniteGroup(rows, inverse)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], [0])


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, tuple(sorted(_closure(G, gens))))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def subgroup_from_members(G: FiniteGroup, members: Iterable[int]) -> Subgroup | None:
    """Return the subgroup with exactly these members, or None if not closed."""
    members = sorted(set(members))
    if not members or members[0] != 0:
        return None
    s = set(members)
    t = G.table
    if any(t[a][b] not in s for a in members for b in members):
        return None
    return Subgroup(G, tuple(members))


def commutator_subgroup(G: FiniteGroup, H: Iterable[int], K: Iterable[int]) -> Subgroup:
    K = list(K)
    return subgroup_generated(G, {G.commutator(h, k) for h in H for k in K})


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    n = G.order
    return Subgroup(G, tuple(z for z in range(n) if all(t[z][g] == t[g][z] for g in range(n))))


@dataclass(frozen=True)
class GroupStructure:
    center: Subgroup
    derived: Subgroup
    nilpotency_class: int | None
    derived_length: int | None
    abelian: bool


def group_structure(G: FiniteGroup) -> GroupStructure:
    Z = center(G)
    D = commutator_subgroup(G, range(G.order), range(G.order))

    # lower central series
    term = whole(G)
    nil_class: int | None = 0
    while not term.is_trivial():
        nxt = commutator_subgroup(G, term, range(G.order))
        if nxt == term:
            nil_class = None
            break
        term = nxt
        nil_class += 1

    term = whole(G)
    length: int | None = 0
    while not term.is_trivial():
        nxt = commutator_subgroup(G, term, term)
        if nxt == term:
            length = None
            break
        term = nxt
        length += 1

    return GroupStructure(Z, D, nil_class, length, Z.is_whole())


def is_soluble(G: FiniteGroup) -> bool:
    return group_structure(G).derived_length is not None


def normality_witness(G: FiniteGroup, N: Subgroup) -> tuple[int, int] | None:
    for g in range(G.order):
        for x in N:
            if G.conjugate(g, x) not in N:
                return (g, x)
    return None


def quotient_group(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupMap]:
    """Return G/N with cosets labelled by smallest representative order."""
    w = normality_witness(G, N)
    if w is not None:
        raise NotNormal("subgroup is not normal", w)
    t = G.table
    label = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if label[g] < 0:
            k = len(reps)
            reps.append(g)
            for x in N:
                label[t[g][x]] = k
    m = len(reps)
    table = [[label[t[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    Q = FiniteGroup(table)
    return Q, GroupMap(G, Q, tuple(label))


# --- homomorphism search -------------------------------------------------


def _extend(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Extend generator images to the generated subgroup, or None on conflict."""
    f = [-1] * G.order
    f[0] = 0
    queue = deque([0])
    tg, th = G.table, H.table
    pairs = list(zip(gens, images))
    while queue:
        x = queue.popleft()
        fx = f[x]
        for g, h in pairs:
            y = tg[x][g]
            v = th[fx][h]
            if f[y] < 0:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    return f


def homomorphisms(
    G: FiniteGroup,
    H: FiniteGroup,
    *,
    injective: bool = False,
    bijective: bool = False,
    gens: Sequence[int] | None = None,
) -> Iterator[GroupMap]:
    """Yield every homomorphism G -> H (optionally injective or bijective).

    Backtracks over images of a generating set, pruning on element orders and
    on relation violations detected while extending to generated subgroups.
    """
    if bijective:
        if G.order != H.order:
            return
        injective = True
    if injective and G.order > H.order:
        return
    gens = tuple(G.generators if gens is None else gens)
    go, ho = G.element_orders, H.element_orders
    candidates = []
    for g in gens:
        if injective:
            candidates.append([h for h in range(H.order) if ho[h] == go[g]])
        else:
            candidates.append([h for h in range(H.order) if go[g] % ho[h] == 0])

    def rec(k: int, chosen: list[int]) -> Iterator[GroupMap]:
        if k == len(gens):
            f = _extend(G, H, gens, chosen)
            if f is None:
                return
            if injective and len(set(f)) != G.order:
                return
            yield GroupMap(G, H, tuple(f))
            return
        for h in candidates[k]:
            chosen.append(h)
            f = _extend(G, H, gens[: k + 1], chosen)
            ok = f is not None
            if ok and injective:
                vals = [v for v in f if v >= 0]
                ok = len(set(vals)) == len(vals)
            if ok:
                yield from rec(k + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def automorphism_group(G: FiniteGroup, bound: int = AUT_ORDER_BOUND) -> list[GroupMap]:
    if G.order > bound:
        raise OrderBoundExceeded(f"order {G.order} exceeds automorphism bound {bound}", G.order)
    return list(homomorphisms(G, G, bijective=True))


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupMap | None:
    if G.order != H.order:
        return None
    if G.invariant != H.invariant:
        return None
    return next(homomorphisms(G, H, bijective=True), None)


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


# --- permutation helpers -------------------------------------------------


def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Return p after q."""
    return tuple(p[x] for x in q)


def invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_order(p: Sequence[int]) -> int:
    from math import lcm

    seen = [False] * len(p)
    result = 1
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            result = lcm(result, k)
    return result


def group_from_elements(elements: Sequence, op, identity) -> tuple[FiniteGroup, list]:
    """Tabulate a group given closed elements and a binary operation.

    The identity is moved to index 0; returns the group and the element list
    in index order.
    """
    elems = [identity] + [e for e in elements if e != identity]
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[op(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table), elems


def permutation_group(perms: Iterable[Sequence[int]], degree: int) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """Close a set of permutations under composition and tabulate the result."""
    identity = tuple(range(degree))
    gens = {tuple(p) for p in perms}
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose_perms(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return group_from_elements(sorted(seen), compose_perms, identity)


# --- named groups ---------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with (g, h) encoded as g * |H| + h."""
    m = H.order
    tg, th = G.table, H.table
    n = G.order * m
    table = [
        [tg[a // m][b // m] * m + th[a % m][b % m] for b in range(n)]
        for a in range(n)
    ]
    return FiniteGroup(table)


def abelian(*factors: int) -> FiniteGroup:
    G = cyclic(1)
    for k in factors:
        G = direct_product(G, cyclic(k))
    return G


def symmetric(k: int) -> tuple[FiniteGroup, list[tuple[int, ...]]]:
    """S_k with permutations as elements (identity first, then lexicographic).

    The product is composition ``p*q = p after q``.
    """
    perms = list(itertools.permutations(range(k)))
    return group_from_elements(perms, compose_perms, tuple(range(k)))


def dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order 2m; r^i s^j is encoded as j*m + i."""
    n = 2 * m

    def mul(a: int, b: int) -> int:
        i, j = a % m, a // m
        k, l = b % m, b // m
        # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j+l)
        return ((j + l) % 2) * m + (i + (k if j == 0 else -k)) % m

    return FiniteGroup([[mul(a, b) for b in range(n)] for a in range(n)])


def quaternion() -> FiniteGroup:
    """Q8 encoded as s*4 + i for elements i^... with 0,1,2,3 = 1,i,-1,-i and 4.. = j times those."""
    # elements x^a y^b with x^4 = 1, y^2 = x^2, y x y^-1 = x^-1; encoded b*4 + a
    def mul(u: int, v: int) -> int:
        a, b = u % 4, u // 4
        c, d = v % 4, v // 4
        # x^a y^b x^c y^d = x^(a + (-1)^b c) y^(b+d); y^2 = x^2
        e = (a + (c if b == 0 else -c)) % 4
        f = b + d
        if f == 2:
            e, f = (e + 2) % 4, 0
        return f * 4 + e

    return FiniteGroup([[mul(u, v) for v in range(8)] for u in range(8)])


def heisenberg(p: int = 3) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over Z/p; (a, b, c) encoded a*p*p + b*p + c."""
    n = p**3

    def dec(x: int) -> tuple[int, int, int]:
        return x // (p * p), (x // p) % p, x % p

    def mul(u: int, v: int) -> int:
        a, b, c = dec(u)
        d, e, f = dec(v)
        return ((a + d) % p) * p * p + ((b + e) % p) * p + (c + f + a * e) % p

    return FiniteGroup([[mul(u, v) for v in range(n)] for u in range(n)])


def named_group(name: str) -> FiniteGroup:
    """Parse names like ``C4``, ``C2xC8``, ``S3``, ``D4``, ``Q8``, ``Heis3``.

    ``Dn`` is the dihedral group of order 2n.
    """
    raw = name.strip()
    parts = [p for p in raw.replace("×", "x").split("x") if p]
    if len(parts) > 1:
        G = named_group(parts[0])
        for p in parts[1:]:
            G = direct_product(G, named_group(p))
        return G
    key = raw.lower()
    try:
        if key == "q8":
            return quaternion()
        if key.startswith("heis"):
            return heisenberg(int(key[4:] or 3))
        if key.startswith("c"):
            return cyclic(int(key[1:]))
        if key.startswith("s"):
            k = int(key[1:])
            if not 1 <= k <= 5:
                raise ValueError(f"S{k} not supported (k <= 5)")
            return symmetric(k)[0]
        if key.startswith("d"):
            k = int(key[1:])
            if not 1 <= k <= 12:
                raise ValueError(f"D{k} not supported (k <= 12)")
            return dihedral(k)
    except ValueError as exc:
        raise ValueError(f"bad group name {name!r}: {exc}") from None
    raise ValueError(f"unknown group name {name!r}")


def inversion_map(G: FiniteGroup) -> tuple[int, ...]:
    return G.inverse
