"""Exhaustive enumeration of finite skew braces via gamma functions.

A gamma function on G is determined by the set of pairs (a, gamma(a)); the
gamma law says exactly that this set is closed under

    (a, alpha) * (b, beta) = (a . alpha(b), alpha beta).

The search assigns gamma elementwise (smallest unassigned element first) and
after every assignment closes the assigned pairs under this product, failing
as soon as one element receives two different automorphisms.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import braces as br
from . import groups as grp
from .braces import SkewBrace
from .errors import GroupError, InternalConsistencyError, OrderBoundExceeded
from .groups import FiniteGroup

SWEEP_BOUND = 16
SINGLE_BOUND = 32
FILTERS = ("bi_skew", "gamma_homomorphic", "brace")


# --- groups of a given order ---------------------------------------------


def _prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _cyclic_extension(N: FiniteGroup, p: int, phi: Sequence[int], z: int) -> list[list[int]]:
    """Table of <N, t> with t x t^-1 = phi(x), t^p = z; a t^i is encoded i*|N| + a."""
    m = N.order
    tn = N.table
    powers = [tuple(range(m))]
    for _ in range(p - 1):
        powers.append(grp.compose_perms(phi, powers[-1]))
    n = m * p
    table = [[0] * n for _ in range(n)]
    for i in range(p):
        phi_i = powers[i]
        for a in range(m):
            row = table[i * m + a]
            for j in range(p):
                for b in range(m):
                    c = tn[a][phi_i[b]]
                    k = i + j
                    if k >= p:
                        c, k = tn[c][z], k - p
                    row[j * m + b] = k * m + c
    return table


def _extensions(N: FiniteGroup, p: int) -> Iterator[list[list[int]]]:
    m = N.order
    auts = [f.images for f in grp.automorphism_group(N, bound=max(grp.AUT_ORDER_BOUND, m))]
    ident = tuple(range(m))
    for phi in auts:
        phi_p = ident
        for _ in range(p):
            phi_p = grp.compose_perms(phi, phi_p)
        for z in range(m):
            if phi[z] != z:
                continue
            if any(phi_p[x] != N.conjugate(z, x) for x in range(m)):
                continue
            yield _cyclic_extension(N, p, phi, z)


def _dedupe_groups(groups: Iterable[FiniteGroup]) -> list[FiniteGroup]:
    buckets: dict[tuple, list[FiniteGroup]] = defaultdict(list)
    out = []
    for G in groups:
        bucket = buckets[G.invariant]
        if any(grp.find_isomorphism(G, H) is not None for H in bucket):
            continue
        bucket.append(G)
        out.append(G)
    return out


_GROUP_CACHE: dict[int, list[FiniteGroup]] = {1: [grp.trivial_group()]}


def all_groups_of_order(n: int, bound: int = SWEEP_BOUND) -> list[FiniteGroup]:
    """One group per isomorphism class, for soluble orders (every order below 60).

    Groups of order n are built as cyclic extensions of groups of order n/p by
    C_p (each soluble group has a normal subgroup of prime index), then
    deduplicated by isomorphism.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if n > bound:
        raise OrderBoundExceeded(f"order {n} exceeds sweep bound {bound}", n)
    if n in _GROUP_CACHE:
        return list(_GROUP_CACHE[n])
    candidates = []
    for p in _prime_divisors(n):
        for N in all_groups_of_order(n // p, bound):
            for table in _extensions(N, p):
                try:
                    candidates.append(grp.group_from_table(table))
                except GroupError as exc:
                    raise InternalConsistencyError(f"cyclic extension is not a group: {exc}") from exc
    found = _dedupe_groups(candidates)
    found.sort(key=lambda G: _sortable(G.invariant))
    _GROUP_CACHE[n] = found
    return list(found)


def _sortable(x):
    if x is None:
        return (0,)
    if isinstance(x, tuple):
        return (1, tuple(_sortable(v) for v in x))
    return (1, x)


# --- gamma search ----------------------------------------------------------


def _automorphisms_identity_first(G: FiniteGroup) -> list[tuple[int, ...]]:
    auts = sorted(f.images for f in grp.automorphism_group(G, bound=max(grp.AUT_ORDER_BOUND, G.order)))
    ident = tuple(range(G.order))
    auts.remove(ident)
    return [ident] + auts


class _Search:
    def __init__(self, table: Sequence[Sequence[int]], auts: Sequence[Sequence[int]]):
        self.table = table
        self.auts = auts
        index = {a: i for i, a in enumerate(auts)}
        self.aut_mul = [[index[grp.compose_perms(p, q)] for q in auts] for p in auts]
        self.n = len(table)

    def add(self, assign: list[int], members: list[int], a: int, al: int) -> bool:
        t, A, M = self.table, self.auts, self.aut_mul
        queue = [(a, al)]
        while queue:
            a, al = queue.pop()
            cur = assign[a]
            if cur >= 0:
                if cur != al:
                    return False
                continue
            assign[a] = al
            members.append(a)
            pa = A[al]
            for b in tuple(members):
                be = assign[b]
                queue.append((t[a][pa[b]], M[al][be]))
                queue.append((t[b][A[be][a]], M[be][al]))
        return True

    def start(self) -> tuple[list[int], list[int]]:
        assign = [-1] * self.n
        members: list[int] = []
        self.add(assign, members, 0, 0)
        return assign, members

    def run(self, assign: list[int], members: list[int]) -> Iterator[tuple[int, ...]]:
        try:
            a = assign.index(-1)
        except ValueError:
            yield tuple(assign)
            return
        for al in range(len(self.auts)):
            a2, m2 = assign[:], members[:]
            if self.add(a2, m2, a, al):
                yield from self.run(a2, m2)

    def branch(self, al: int) -> list[tuple[int, ...]]:
        """All gamma functions whose value on the first unassigned element is auts[al]."""
        assign, members = self.start()
        if -1 not in assign:
            return [tuple(assign)] if al == 0 else []
        if not self.add(assign, members, assign.index(-1), al):
            return []
        return list(self.run(assign, members))


def _branch_worker(args) -> list[tuple[int, ...]]:
    table, auts, branch_ids = args
    s = _Search(table, auts)
    return [g for al in branch_ids for g in s.branch(al)]


def gamma_index_functions(G: FiniteGroup, jobs: int = 1) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """(automorphisms, gamma functions as tuples of automorphism indices), sorted."""
    auts = _automorphisms_identity_first(G)
    k = len(auts)
    if jobs <= 1 or k == 1:
        found = _branch_worker((G.table, auts, range(k)))
    else:
        chunks = [list(range(i, k, jobs)) for i in range(jobs)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = pool.map(_branch_worker, [(G.table, auts, c) for c in chunks])
            found = [g for part in parts for g in part]
    found.sort()
    return auts, found


def _mul_table(G: FiniteGroup, auts, gam: Sequence[int]) -> np.ndarray:
    n = G.order
    P = np.array([auts[i] for i in gam], dtype=np.int64)
    return G.array[np.arange(n)[:, None], P]


def enumerate_gammas(G: FiniteGroup, jobs: int = 1, bound: int = SINGLE_BOUND) -> Iterator[SkewBrace]:
    """Every skew brace with additive group G (one per gamma function)."""
    if G.order > bound:
        raise OrderBoundExceeded(f"order {G.order} exceeds bound {bound}", G.order)
    auts, found = gamma_index_functions(G, jobs)
    for gam in found:
        yield br._trusted(G, grp.FiniteGroup(_mul_table(G, auts, gam).tolist()))


# --- canonical forms ---------------------------------------------------------


def canonical_mul(M: np.ndarray, perms: np.ndarray) -> bytes:
    """Least relabelled table p[M[p^-1, p^-1]] over the permutations p (rows of ``perms``)."""
    k, n = perms.shape
    inv = np.argsort(perms, axis=1)
    moved = M[inv[:, :, None], inv[:, None, :]]
    relabelled = perms[np.arange(k)[:, None, None], moved].astype(np.uint8).reshape(k, n * n)
    return min(row.tobytes() for row in relabelled)


def _from_bytes(G: FiniteGroup, key: bytes) -> SkewBrace:
    n = G.order
    M = np.frombuffer(key, dtype=np.uint8).reshape(n, n).astype(np.int64)
    return br._trusted(G, grp.FiniteGroup(M.tolist()))


def dedupe(braces: Iterable[SkewBrace]) -> list[SkewBrace]:
    """Keep the first member of each isomorphism class (general isomorphism search)."""
    buckets: dict[tuple, list[SkewBrace]] = defaultdict(list)
    out = []
    for A in braces:
        bucket = buckets[A.fingerprint]
        if any(br.find_brace_isomorphism(A, B) is not None for B in bucket):
            continue
        bucket.append(A)
        out.append(A)
    return out


# --- tasks -------------------------------------------------------------------


@dataclass(frozen=True)
class EnumerationTask:
    additive_group: FiniteGroup | None = None
    order: int | None = None
    filters: frozenset[str] = frozenset()
    up_to_iso: bool = True
    jobs: int = 1

    def __post_init__(self):
        if (self.additive_group is None) == (self.order is None):
            raise ValueError("give exactly one of additive_group or order")
        object.__setattr__(self, "filters", frozenset(self.filters))
        unknown = self.filters - set(FILTERS)
        if unknown:
            raise ValueError(f"unknown filters: {sorted(unknown)}")


@dataclass
class EnumerationResult:
    representatives: list[SkewBrace]
    total_count: int
    class_count: int
    tallies: dict[str, int] = field(default_factory=dict)
    class_tallies: dict[str, int] = field(default_factory=dict)


def _predicates(A: SkewBrace) -> dict[str, bool]:
    return {
        "bi_skew": br.is_bi_skew(A).verdict,
        "gamma_homomorphic": br.is_gamma_homomorphic(A).verdict,
        "brace": A.add.is_abelian,
    }


def _classes(G: FiniteGroup, jobs: int) -> list[tuple[bytes, int]]:
    """(canonical table, number of labelled braces in the class) for every class on G."""
    auts, found = gamma_index_functions(G, jobs)
    perms = np.array(auts, dtype=np.int64)
    counts: dict[bytes, int] = defaultdict(int)
    for gam in found:
        counts[canonical_mul(_mul_table(G, auts, gam), perms)] += 1
    return sorted(counts.items())


def enumerate_braces(task: EnumerationTask) -> EnumerationResult:
    if task.additive_group is not None:
        G = task.additive_group
        if G.order > SINGLE_BOUND:
            raise OrderBoundExceeded(f"order {G.order} exceeds bound {SINGLE_BOUND}", G.order)
        groups = [G]
    else:
        groups = all_groups_of_order(task.order, SWEEP_BOUND)
    jobs = max(1, task.jobs or os.cpu_count() or 1)

    tallies = {"all": 0, **{f: 0 for f in FILTERS}}
    class_tallies = {"all": 0, **{f: 0 for f in FILTERS}}
    kept: list[tuple[tuple, int, bytes, SkewBrace, int]] = []
    labelled_kept: list[SkewBrace] = []
    for gi, G in enumerate(groups):
        if task.up_to_iso:
            for key, size in _classes(G, jobs):
                A = _from_bytes(G, key)
                preds = _predicates(A)
                tallies["all"] += size
                class_tallies["all"] += 1
                for f in FILTERS:
                    if preds[f]:
                        tallies[f] += size
                        class_tallies[f] += 1
                if all(preds[f] for f in task.filters):
                    kept.append((_sortable(A.fingerprint), gi, key, A, size))
        else:
            for A in enumerate_gammas(G, jobs):
                preds = _predicates(A)
                tallies["all"] += 1
                for f in FILTERS:
                    tallies[f] += preds[f]
                if all(preds[f] for f in task.filters):
                    labelled_kept.append(A)

    if task.up_to_iso:
        kept.sort(key=lambda r: r[:3])
        reps = [r[3] for r in kept]
        total = sum(r[4] for r in kept)
        return EnumerationResult(reps, total, len(reps), tallies, class_tallies)
    return EnumerationResult(labelled_kept, len(labelled_kept), len(labelled_kept), tallies, {})


def enumerate_order(n: int, filters: Iterable[str] = (), jobs: int = 1) -> EnumerationResult:
    return enumerate_braces(EnumerationTask(order=n, filters=frozenset(filters), jobs=jobs))


def all_braces_up_to(n_max: int, jobs: int = 1) -> list[SkewBrace]:
    """Class representatives of every skew brace of order 1..n_max."""
    out = []
    for n in range(1, n_max + 1):
        out.extend(enumerate_order(n, jobs=jobs).representatives)
    return out
