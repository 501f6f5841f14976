"""Formula-defined skew braces on Z and Z^2, checked exhaustively on boxes.

Z variants (exponents of a generator x):

* ``z_trivial``: i + j
* ``z_mult2``:   i + (-1)^i j
* ``z_mult3``:   j + (-1)^j i

The classification of skew braces with multiplicative group Z uses these as
the *additive* operation with ordinary addition as the multiplicative one.
``z_mult2`` with the roles exchanged is the Rump brace (Z, +, mult2), whose
multiplicative group is infinite dihedral; both orientations are checked.

Z^2 family: (r, s) o_x (r', s') = (r + r', s + s' + x r r') over (Z^2, +).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import WindowFailure

Z_VARIANTS = ("z_trivial", "z_mult2", "z_mult3")
PROPERTIES = (
    "group_axioms",
    "brace_equation",
    "bi_skew_antihom",
    "gamma_hom",
    "dihedral_relations",
    "star_formula",
    "right_class_le_2",
    "gamma_formula",
)
DEFAULT_BOUND = 25


def _sign(i):
    return 1 - 2 * (np.asarray(i) % 2)


def _variant(v: str) -> str:
    name = v if v.startswith("z_") else f"z_{v}"
    if name not in Z_VARIANTS:
        raise ValueError(f"unknown variant {v!r}")
    return name


def z_op(variant: str, i: int, j: int) -> int:
    variant = _variant(variant)
    if variant == "z_trivial":
        return i + j
    if variant == "z_mult2":
        return i + (-1) ** (i % 2) * j
    return j + (-1) ** (j % 2) * i


def z_gamma(i: int, j: int) -> int:
    """gamma(x^i)(x^j) exponent in the Rump brace (Z, +, mult2)."""
    return (-1) ** (i % 2) * j


def z2_op(x: int, p: Sequence[int], q: Sequence[int]) -> tuple[int, int]:
    (r, s), (r2, s2) = p, q
    return r + r2, s + s2 + x * r * r2


def z2_star(x: int, p: Sequence[int], q: Sequence[int]) -> tuple[int, int]:
    return 0, x * p[0] * q[0]


# --- vectorised structures ---------------------------------------------------
# an element is a tuple of integer arrays, one per coordinate; arrays broadcast
# lazily so intermediate results stay small

Elem = tuple
Op = Callable[[Elem, Elem], Elem]


@dataclass(frozen=True)
class Structure:
    name: str
    dim: int
    add: Op
    mul: Op
    add_inv: Callable[[Elem], Elem]
    mul_inv: Callable[[Elem], Elem]

    def gamma(self, a, b):
        return self.add(self.add_inv(a), self.mul(a, b))

    def star(self, a, b):
        return self.add(self.gamma(a, b), self.add_inv(b))


def _plus(a, b):
    return tuple(u + v for u, v in zip(a, b))


def _neg(a):
    return tuple(-u for u in a)


def _zv_op(variant: str) -> Op:
    def op(a, b):
        (i,), (j,) = a, b
        if variant == "z_trivial":
            return (i + j,)
        if variant == "z_mult2":
            return (i + _sign(i) * j,)
        return (j + _sign(j) * i,)

    return op


def _zv_inv(variant: str):
    def inv(a):
        (i,) = a
        if variant == "z_trivial":
            return (-i,)
        # twisted variants: odd elements are involutions, even ones are negated
        return (np.where(i % 2 == 1, i, -i),)

    return inv


def z_structures(variant: str) -> list[Structure]:
    """Brace structures carried by a Z variant (one or two orientations)."""
    variant = _variant(variant)
    op, inv = _zv_op(variant), _zv_inv(variant)
    out = [Structure(f"(Z, {variant}, +)", 1, op, _plus, inv, _neg)]
    if variant == "z_mult2":
        out.append(Structure("(Z, +, z_mult2)", 1, _plus, op, _neg, inv))
    return out


def z2_structure(x: int) -> Structure:
    def mul(a, b):
        (r, s), (r2, s2) = a, b
        return r + r2, s + s2 + x * r * r2

    def mul_inv(a):
        r, s = a
        return -r, -s + x * r * r

    return Structure(f"(Z^2, +, o_{x})", 2, _plus, mul, _neg, mul_inv)


def _z2_star(x: int, a, b):
    return 0, x * a[0] * b[0]


def window(dim: int, B: int, x: int = 1) -> np.ndarray:
    """All points of [-B, B]^dim as rows (int32 when no evaluation can overflow)."""
    dtype = np.int32 if (abs(x) + 1) ** 2 * (4 * B) ** 4 < 2**31 else np.int64
    axis = np.arange(-B, B + 1, dtype=dtype)
    grids = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=-1)


# --- checks --------------------------------------------------------------------


def _first_bad(mask: np.ndarray) -> tuple[int, ...] | None:
    if mask.any():
        return tuple(int(v) for v in np.argwhere(mask)[0])
    return None


def _differs(u: Elem, v: Elem) -> np.ndarray:
    out = np.asarray(u[0] != v[0])
    for p, q in zip(u[1:], v[1:]):
        out = out | (p != q)
    return out


def _shaped(W: np.ndarray, shape: tuple[int, ...], sl=slice(None)) -> Elem:
    return tuple(W[sl, k].reshape(shape) for k in range(W.shape[1]))


def _point(W: np.ndarray, k: int) -> tuple[int, ...]:
    return tuple(int(t) for t in W[k])


def _pairs(S: Structure, W: np.ndarray, test) -> tuple | None:
    a, b = _shaped(W, (-1, 1)), _shaped(W, (1, -1))
    mask = np.broadcast_to(test(S, a, b), (len(W), len(W)))
    idx = _first_bad(mask)
    return None if idx is None else tuple(_point(W, k) for k in idx)


def _triples(S: Structure, W: np.ndarray, test, chunk: int = 32) -> tuple | None:
    m = len(W)
    b, c = _shaped(W, (1, -1, 1)), _shaped(W, (1, 1, -1))
    for start in range(0, m, chunk):
        a = _shaped(W, (-1, 1, 1), slice(start, start + chunk))
        mask = test(S, a, b, c)
        idx = _first_bad(np.broadcast_to(mask, (len(a[0]), m, m)))
        if idx is not None:
            ia, ib, ic = idx
            return tuple(_point(W, k) for k in (start + ia, ib, ic))
    return None


def _identity_inverse(S: Structure, W: np.ndarray) -> tuple | None:
    w = _shaped(W, (-1,))
    zero = tuple(0 for _ in w)
    bad = np.zeros(len(W), dtype=bool)
    for op, inv in ((S.add, S.add_inv), (S.mul, S.mul_inv)):
        for got, want in ((op(w, zero), w), (op(zero, w), w), (op(w, inv(w)), zero), (op(inv(w), w), zero)):
            bad |= _differs(got, want)
    idx = _first_bad(bad)
    return None if idx is None else (_point(W, idx[0]),)


def _assoc(S, a, b, c):
    bad = _differs(S.add(S.add(a, b), c), S.add(a, S.add(b, c)))
    return bad | _differs(S.mul(S.mul(a, b), c), S.mul(a, S.mul(b, c)))


def _brace_eq(S, a, b, c):
    lhs = S.mul(a, S.add(b, c))
    rhs = S.add(S.add(S.mul(a, b), S.add_inv(a)), S.mul(a, c))
    return _differs(lhs, rhs)


def _antihom(S, a, b, c):
    return _differs(S.gamma(S.add(a, b), c), S.gamma(b, S.gamma(a, c)))


def _hom(S, a, b, c):
    return _differs(S.gamma(S.add(a, b), c), S.gamma(a, S.gamma(b, c)))


def _double_star(S, a, b, c):
    return _differs(S.star(S.star(a, b), c), tuple(0 for _ in a))


@dataclass
class WindowReport:
    family: str
    bound: int
    properties: tuple[str, ...]
    failures: dict[str, tuple] = field(default_factory=dict)
    checks: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def raise_if_failed(self) -> None:
        if self.failures:
            prop, w = next(iter(self.failures.items()))
            raise WindowFailure(f"{self.family}: {prop} fails on window [-{self.bound}, {self.bound}]", w)

    def lines(self) -> list[str]:
        out = [f"family: {self.family}", f"bound: {self.bound}"]
        for p in self.properties:
            if p in self.failures:
                out.append(f"{p}: FAIL witness {self.failures[p]}")
            else:
                out.append(f"{p}: pass")
        out.append("PASS" if self.passed else "FAIL")
        return out


def applicable_properties(family: str) -> tuple[str, ...]:
    if family.startswith("z2"):
        return ("group_axioms", "brace_equation", "bi_skew_antihom", "gamma_hom", "star_formula", "right_class_le_2")
    if _variant(family) == "z_trivial":
        return ("group_axioms", "brace_equation")
    if _variant(family) == "z_mult2":
        return ("group_axioms", "brace_equation", "dihedral_relations", "gamma_formula")
    return ("group_axioms", "brace_equation", "dihedral_relations")


def _family_name(family: str | int, x: int | None) -> tuple[str, int | None]:
    if isinstance(family, int):
        return "z2", family
    if family in ("z2", "z2_ring"):
        if x is None:
            raise ValueError("the Z^2 family needs a parameter x")
        return "z2", x
    if family.startswith("z2_ring(") and family.endswith(")"):
        return "z2", int(family[len("z2_ring(") : -1])
    return _variant(family), None


def window_verify(
    family: str | int,
    B: int = DEFAULT_BOUND,
    properties: Iterable[str] | None = None,
    *,
    x: int | None = None,
    strict: bool = False,
) -> WindowReport:
    """Check the listed identities on every tuple with coordinates in [-B, B].

    ``family`` is a Z variant name, ``"z2"`` together with ``x``, or an integer
    x meaning the Z^2 family.
    """
    if B < 1:
        raise ValueError("bound must be at least 1")
    fam, x = _family_name(family, x)
    label = fam if x is None else f"z2_ring({x})"
    props = tuple(applicable_properties(fam) if properties is None else properties)
    unknown = set(props) - set(PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    structures = [z2_structure(x)] if fam == "z2" else z_structures(fam)
    dim = structures[0].dim
    W = window(dim, B, x or 1)
    report = WindowReport(label, B, props)

    def note(prop: str, w):
        if w is not None and prop not in report.failures:
            report.failures[prop] = w

    for p in props:
        if p == "dihedral_relations":
            note(p, _dihedral(fam, B))
        elif p == "gamma_formula":
            note(p, _gamma_formula(fam, B))
        elif p == "star_formula":
            if fam != "z2":
                raise ValueError("star_formula applies to the Z^2 family")
            S = structures[0]
            note(p, _pairs(S, W, lambda S, a, b: _differs(S.star(a, b), _z2_star(x, a, b))))
        else:
            for S in structures:
                if p == "group_axioms":
                    note(p, _identity_inverse(S, W))
                    note(p, _triples(S, W, _assoc))
                elif p == "brace_equation":
                    note(p, _triples(S, W, _brace_eq))
                elif p == "bi_skew_antihom":
                    note(p, _triples(S, W, _antihom))
                elif p == "gamma_hom":
                    note(p, _triples(S, W, _hom))
                elif p == "right_class_le_2":
                    note(p, _triples(S, W, _double_star))
                    if fam == "z2":
                        note(p, _triples(S, W, lambda S, a, b, c: _differs(
                            _z2_star(x, _z2_star(x, a, b), c), (0, 0))))
        report.checks[p] = ", ".join(S.name for S in structures)
    if strict:
        report.raise_if_failed()
    return report


def _dihedral(fam: str, B: int) -> tuple | None:
    """x o x = 1 and x o x^{2k} o x = x^{-2k} for |k| <= B."""
    if z_op(fam, 1, 1) != 0:
        return (1, 1)
    for k in range(-B, B + 1):
        if z_op(fam, 1, z_op(fam, 2 * k, 1)) != -2 * k:
            return (k,)
    return None


def _gamma_formula(fam: str, B: int) -> tuple | None:
    """In (Z, +, mult2): gamma(i)(j) = -i + (i o j) = (-1)^i j."""
    if fam != "z_mult2":
        raise ValueError("gamma_formula applies to z_mult2")
    for i in range(-B, B + 1):
        for j in range(-B, B + 1):
            if -i + z_op(fam, i, j) != z_gamma(i, j):
                return (i, j)
    return None


def variants_transposed(B: int = DEFAULT_BOUND) -> tuple | None:
    """First (i, j) in the box with z_mult3(i, j) != z_mult2(j, i), or None."""
    W = np.arange(-B, B + 1)
    i, j = (W[:, None],), (W[None, :],)
    idx = _first_bad(_differs(_zv_op("z_mult3")(i, j), _zv_op("z_mult2")(j, i)))
    return None if idx is None else (int(W[idx[0]]), int(W[idx[1]]))


def brace_automorphism_on_window(variant: str, f: Callable[[int], int], B: int = DEFAULT_BOUND) -> tuple | None:
    """First pair where f fails to respect both operations of (Z, +, variant)."""
    for i in range(-B, B + 1):
        for j in range(-B, B + 1):
            if f(i + j) != f(i) + f(j) or f(z_op(variant, i, j)) != z_op(variant, f(i), f(j)):
                return (i, j)
    return None
