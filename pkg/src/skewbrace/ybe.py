"""Finite set-theoretic solutions of the Yang-Baxter equation.

A solution r(x, y) = (sigma_x(y), tau_y(x)) is stored as two n x n tables:
``sigma[x][y] = sigma_x(y)`` (row = first argument of r) and
``tau[y][x] = tau_y(x)`` (row = second argument of r).
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import braces as br
from . import groups as grp
from .braces import SkewBrace
from .errors import (
    BraidFails,
    ClosureBoundExceeded,
    DegenerateSigma,
    DegenerateTau,
    InternalConsistencyError,
    NotBijectivePairMap,
    RetractIllDefined,
    SolutionError,
)
from .groups import FiniteGroup

CLOSURE_BOUND = 10**6

Rows = tuple[tuple[int, ...], ...]


class Solution:
    """A validated non-degenerate solution; build with :func:`validate_solution`."""

    def __init__(self, sigma: Rows, tau: Rows):
        self.sigma = sigma
        self.tau = tau
        self.size = len(sigma)

    def __repr__(self) -> str:
        return f"Solution(size={self.size}, involutive={self.involutive})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Solution) and self.sigma == other.sigma and self.tau == other.tau

    def __hash__(self) -> int:
        return hash((self.sigma, self.tau))

    def r(self, x: int, y: int) -> tuple[int, int]:
        return self.sigma[x][y], self.tau[y][x]

    @cached_property
    def _inverse_tables(self) -> tuple[Rows, Rows]:
        n = self.size
        sh = [[0] * n for _ in range(n)]
        th = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                u, v = self.r(x, y)
                # r^-1(u, v) = (x, y) = (sigma_hat_u(v), tau_hat_v(u))
                sh[u][v] = x
                th[v][u] = y
        return tuple(map(tuple, sh)), tuple(map(tuple, th))

    @property
    def sigma_hat(self) -> Rows:
        return self._inverse_tables[0]

    @property
    def tau_hat(self) -> Rows:
        return self._inverse_tables[1]

    @cached_property
    def involutive(self) -> bool:
        return all(self.r(*self.r(x, y)) == (x, y) for x in range(self.size) for y in range(self.size))

    def is_trivial(self) -> bool:
        """True for the flip (x, y) -> (y, x)."""
        ident = tuple(range(self.size))
        return all(row == ident for row in self.sigma) and all(row == ident for row in self.tau)


def _rows(t: Sequence[Sequence[int]]) -> Rows:
    return tuple(tuple(int(v) for v in row) for row in t)


def braid_witness(sigma: Rows, tau: Rows) -> tuple[int, int, int] | None:
    """First triple where r1 r2 r1 != r2 r1 r2, or None."""
    S = np.array(sigma, dtype=np.int64)
    T = np.array(tau, dtype=np.int64)
    n = len(sigma)
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")

    def r(a, b):
        return S[a, b], T[b, a]

    def r1(a, b, c):
        a, b = r(a, b)
        return a, b, c

    def r2(a, b, c):
        b, c = r(b, c)
        return a, b, c

    left = r1(*r2(*r1(x, y, z)))
    right = r2(*r1(*r2(x, y, z)))
    bad = (left[0] != right[0]) | (left[1] != right[1]) | (left[2] != right[2])
    if bad.any():
        return tuple(int(v) for v in np.argwhere(bad)[0])
    return None


def validate_solution(sigma: Sequence[Sequence[int]], tau: Sequence[Sequence[int]]) -> Solution:
    sigma, tau = _rows(sigma), _rows(tau)
    n = len(sigma)
    if len(tau) != n or any(len(row) != n for row in sigma + tau):
        raise SolutionError(f"sigma and tau must both be {n} x {n}")
    for row in sigma + tau:
        for v in row:
            if not 0 <= v < n:
                raise SolutionError(f"entry {v} out of range")
    full = list(range(n))
    for x, row in enumerate(sigma):
        if sorted(row) != full:
            raise DegenerateSigma(f"sigma_{x} is not a permutation", x)
    for y, row in enumerate(tau):
        if sorted(row) != full:
            raise DegenerateTau(f"tau_{y} is not a permutation", y)
    images: dict[tuple[int, int], tuple[int, int]] = {}
    for x in range(n):
        for y in range(n):
            img = (sigma[x][y], tau[y][x])
            if img in images:
                raise NotBijectivePairMap("r is not injective on pairs", (images[img], (x, y)))
            images[img] = (x, y)
    w = braid_witness(sigma, tau)
    if w is not None:
        raise BraidFails("braid equation fails", w)
    return Solution(sigma, tau)


def trivial_solution(n: int) -> Solution:
    ident = tuple(range(n))
    return Solution(tuple(ident for _ in range(n)), tuple(ident for _ in range(n)))


def solution_from_brace(A: SkewBrace, *, check: bool = True) -> Solution:
    """r_A(a, b) = (gamma(a)(b), inv_o(gamma(a)(b)) o a o b)."""
    n = A.order
    gt = A.gamma_table
    tm, minv = A.mul.table, A.mul.inverse
    sigma = gt
    tau = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            s = gt[a][b]
            tau[b][a] = tm[tm[minv[s]][a]][b]
    tau = _rows(tau)
    if not check:
        return Solution(sigma, tau)
    try:
        return validate_solution(sigma, tau)
    except SolutionError as exc:
        raise InternalConsistencyError(f"brace solution failed validation: {exc}") from exc


def inverse_solution(S: Solution) -> Solution:
    return Solution(S.sigma_hat, S.tau_hat)


def bi_skew_criterion(S: Solution) -> bool:
    """sigma_{sigma_hat_x(y)} == sigma_y for all x, y."""
    sh, s = S.sigma_hat, S.sigma
    return all(s[sh[x][y]] == s[y] for x in range(S.size) for y in range(S.size))


@dataclass(frozen=True)
class PermutationGroupResult:
    group: FiniteGroup
    elements: list  # pairs (sigma, tau^-1) indexed like the group
    generator_index: tuple[int, ...]  # x -> index of (sigma_x, tau_x^-1)

    @property
    def order(self) -> int:
        return self.group.order


def permutation_group(S: Solution, bound: int = CLOSURE_BOUND) -> PermutationGroupResult:
    """Closure of {(sigma_x, tau_x^-1)} under componentwise composition."""
    n = S.size
    ident = (tuple(range(n)), tuple(range(n)))
    gens = [(S.sigma[x], grp.invert_perm(S.tau[x])) for x in range(n)]

    def mul(p, q):
        return grp.compose_perms(p[0], q[0]), grp.compose_perms(p[1], q[1])

    seen = {ident}
    queue = deque([ident])
    distinct = list(dict.fromkeys(gens))
    while queue:
        x = queue.popleft()
        for g in distinct:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise ClosureBoundExceeded(f"permutation group exceeds {bound} elements", len(seen))
                queue.append(y)
    G, elems = grp.group_from_elements(sorted(seen), mul, ident)
    index = {e: i for i, e in enumerate(elems)}
    return PermutationGroupResult(G, elems, tuple(index[g] for g in gens))


def retract(S: Solution) -> tuple[Solution, tuple[int, ...]]:
    """Quotient by x ~ y iff sigma_x = sigma_y and tau_x = tau_y; returns (Ret, class map)."""
    n = S.size
    keys: dict[tuple, int] = {}
    cls = []
    for x in range(n):
        k = (S.sigma[x], S.tau[x])
        cls.append(keys.setdefault(k, len(keys)))
    m = len(keys)
    reps = [cls.index(c) for c in range(m)]
    sigma = [[cls[S.sigma[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
    tau = [[cls[S.tau[reps[j]][reps[i]]] for i in range(m)] for j in range(m)]
    for x in range(n):
        for y in range(n):
            if cls[S.sigma[x][y]] != sigma[cls[x]][cls[y]]:
                raise RetractIllDefined("induced sigma is not well defined", (x, y))
            if cls[S.tau[y][x]] != tau[cls[y]][cls[x]]:
                raise RetractIllDefined("induced tau is not well defined", (x, y))
    return validate_solution(sigma, tau), tuple(cls)


def multipermutation_level(S: Solution, cap: int = 16) -> int | None:
    """Least k such that the k-fold retract has one point, or None if above cap."""
    cur = S
    for k in range(cap + 1):
        if cur.size == 1:
            return k
        nxt, _ = retract(cur)
        if nxt.size == cur.size:
            return None
        cur = nxt
    return None


def tau_order_multiset(S: Solution) -> Counter:
    return Counter(grp.perm_order(row) for row in S.tau)


def sigma_order_multiset(S: Solution) -> Counter:
    return Counter(grp.perm_order(row) for row in S.sigma)


def _point_invariants(S: Solution) -> list[tuple]:
    n = S.size
    sig_o = [grp.perm_order(S.sigma[x]) for x in range(n)]
    tau_o = [grp.perm_order(S.tau[x]) for x in range(n)]
    sig_f = [sum(S.sigma[x][y] == y for y in range(n)) for x in range(n)]
    tau_f = [sum(S.tau[x][y] == y for y in range(n)) for x in range(n)]
    classes = Counter((S.sigma[x], S.tau[x]) for x in range(n))
    diag = [S.r(x, x) == (x, x) for x in range(n)]
    return [
        (sig_o[x], tau_o[x], sig_f[x], tau_f[x], classes[(S.sigma[x], S.tau[x])], diag[x]) for x in range(n)
    ]


def solution_invariant(S: Solution) -> tuple:
    return (
        S.size,
        S.involutive,
        tuple(sorted(sigma_order_multiset(S).items())),
        tuple(sorted(tau_order_multiset(S).items())),
        tuple(sorted(Counter(_point_invariants(S)).items())),
    )


def is_solution_homomorphism(S: Solution, T: Solution, f: Sequence[int]) -> bool:
    return all(
        (f[S.sigma[x][y]], f[S.tau[y][x]]) == T.r(f[x], f[y]) for x in range(S.size) for y in range(S.size)
    )


def find_solution_isomorphism(S: Solution, T: Solution) -> tuple[int, ...] | None:
    """Bijection f with f(sigma_x(y)) = sigma'_f(x)(f(y)) and likewise for tau, or None."""
    if S.size != T.size or solution_invariant(S) != solution_invariant(T):
        return None
    n = S.size
    inv_s, inv_t = _point_invariants(S), _point_invariants(T)
    cand = [[u for u in range(n) if inv_t[u] == inv_s[x]] for x in range(n)]

    def propagate(f: list[int], finv: list[int], x: int, u: int) -> bool:
        stack = [(x, u)]
        while stack:
            x, u = stack.pop()
            if f[x] >= 0:
                if f[x] != u:
                    return False
                continue
            if finv[u] >= 0 or inv_s[x] != inv_t[u]:
                return False
            f[x], finv[u] = u, x
            mapped = [y for y in range(n) if f[y] >= 0]
            for y in mapped:
                v = f[y]
                stack.append((S.sigma[x][y], T.sigma[u][v]))
                stack.append((S.sigma[y][x], T.sigma[v][u]))
                stack.append((S.tau[x][y], T.tau[u][v]))
                stack.append((S.tau[y][x], T.tau[v][u]))
        return True

    order = sorted(range(n), key=lambda x: len(cand[x]))

    def search(f: list[int], finv: list[int]) -> tuple[int, ...] | None:
        x = next((x for x in order if f[x] < 0), None)
        if x is None:
            return tuple(f)
        for u in cand[x]:
            if finv[u] >= 0:
                continue
            f2, finv2 = f[:], finv[:]
            if propagate(f2, finv2, x, u):
                res = search(f2, finv2)
                if res is not None:
                    return res
        return None

    result = search([-1] * n, [-1] * n)
    if result is not None and not is_solution_homomorphism(S, T, result):
        raise InternalConsistencyError("isomorphism search returned a non-homomorphism")
    return result


def brace_solution_pair(A: SkewBrace) -> tuple[Solution, Solution]:
    """(r_A, r_{A_op})."""
    return solution_from_brace(A), solution_from_brace(br.opposite(A))
