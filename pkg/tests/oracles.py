"""Brute-force reference implementations, deliberately independent of the package.

Everything here works on plain nested lists with explicit loops so that the
tests compare the library against code sharing none of its shortcuts.
"""

from __future__ import annotations

import itertools


def is_group(t) -> bool:
    n = len(t)
    if any(t[0][x] != x or t[x][0] != x for x in range(n)):
        return False
    for a in range(n):
        if sorted(t[a]) != list(range(n)) or sorted(t[x][a] for x in range(n)) != list(range(n)):
            return False
    return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))


def inverse(t, a: int) -> int:
    return next(b for b in range(len(t)) if t[a][b] == 0)


def brace_equation_holds(add, mul) -> bool:
    n = len(add)
    for a in range(n):
        ia = inverse(add, a)
        for b in range(n):
            for c in range(n):
                if mul[a][add[b][c]] != add[add[mul[a][b]][ia]][mul[a][c]]:
                    return False
    return True


def is_skew_brace(add, mul) -> bool:
    return is_group(add) and is_group(mul) and brace_equation_holds(add, mul)


def automorphisms(t) -> list[tuple[int, ...]]:
    """Every permutation fixing 0 that preserves the table."""
    n = len(t)
    out = []
    for rest in itertools.permutations(range(1, n)):
        p = (0,) + rest
        if all(p[t[a][b]] == t[p[a]][p[b]] for a in range(n) for b in range(n)):
            out.append(p)
    return out


def isomorphic_tables(t, u) -> bool:
    n = len(t)
    if len(u) != n:
        return False
    for rest in itertools.permutations(range(1, n)):
        p = (0,) + rest
        if all(p[t[a][b]] == u[p[a]][p[b]] for a in range(n) for b in range(n)):
            return True
    return False


def skew_brace_muls(add):
    """Every multiplicative table forming a skew brace with ``add``.

    Such a table has rows a . lambda_a with lambda_a an automorphism, so it
    suffices to range over those tables and test the group axioms plus the
    brace equation.
    """
    n = len(add)
    auts = automorphisms(add)
    for choice in itertools.product(auts, repeat=n - 1):
        lam = [tuple(range(n))] + list(choice)
        mul = [[add[a][lam[a][b]] for b in range(n)] for a in range(n)]
        if is_skew_brace(add, mul):
            yield mul


def count_braces(add) -> int:
    """Labelled skew braces with additive table ``add``."""
    return sum(1 for _ in skew_brace_muls(add))


def group_tables(n: int) -> list[list[list[int]]]:
    """All group tables on 0..n-1 with identity 0 (Latin-square backtracking)."""
    t = [[-1] * n for _ in range(n)]
    for x in range(n):
        t[0][x] = x
        t[x][0] = x
    cells = [(a, b) for a in range(1, n) for b in range(1, n)]
    out = []

    def rec(k: int) -> None:
        if k == len(cells):
            if is_group(t):
                out.append([row[:] for row in t])
            return
        a, b = cells[k]
        used_row = set(t[a])
        used_col = {t[x][b] for x in range(n)}
        for v in range(n):
            if v in used_row or v in used_col:
                continue
            t[a][b] = v
            rec(k + 1)
            t[a][b] = -1

    rec(0)
    return out


def groups_up_to_iso(n: int) -> list[list[list[int]]]:
    reps: list = []
    for t in group_tables(n):
        if not any(isomorphic_tables(t, r) for r in reps):
            reps.append(t)
    return reps


def braid_holds(sigma, tau) -> bool:
    n = len(sigma)

    def r(x, y):
        return sigma[x][y], tau[y][x]

    for x in range(n):
        for y in range(n):
            for z in range(n):
                a, b = r(x, y)
                b, c = r(b, z)
                a, b = r(a, b)
                p, q = r(y, z)
                u, p = r(x, p)
                p, q = r(p, q)
                if (a, b, c) != (u, p, q):
                    return False
    return True


def brace_solution(add, mul):
    """sigma[a][b] = a^-1 (a o b); tau[b][a] = (sigma_a(b))^-o o a o b."""
    n = len(add)
    sigma = [[add[inverse(add, a)][mul[a][b]] for b in range(n)] for a in range(n)]
    tau = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            s = sigma[a][b]
            tau[b][a] = mul[mul[inverse(mul, s)][a]][b]
    return sigma, tau
