"""Exact arithmetic in Z[q, t], in Z[q] (x) Z[t]/Phi_l(t), and on monomial expansions.

Coefficients are Python ints throughout, so nothing can overflow.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Union


class QTPoly:
    """Sparse polynomial in ``q`` and ``t`` with integer coefficients.

    ``terms`` maps ``(q_exponent, t_exponent)`` to a non-zero coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        for (a, b), c in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in term q^{a} t^{b}")
            if c:
                clean[(a, b)] = int(c)
        self.terms: dict[tuple[int, int], int] = clean

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, coeff: int = 1) -> QTPoly:
        return cls({(a, b): coeff})

    @classmethod
    def constant(cls, c: int) -> QTPoly:
        return cls({(0, 0): c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = QTPoly.constant(other)
        if not isinstance(other, QTPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: QTPoly | int) -> QTPoly:
        if isinstance(other, int):
            other = QTPoly.constant(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return QTPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QTPoly:
        return QTPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other: QTPoly | int) -> QTPoly:
        return self + (-other)

    def __mul__(self, other: QTPoly | int) -> QTPoly:
        if isinstance(other, int):
            return QTPoly({key: c * other for key, c in self.terms.items()})
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                out[(a1 + a2, b1 + b2)] += c1 * c2
        return QTPoly(out)

    __rmul__ = __mul__

    def swap_qt(self) -> QTPoly:
        return QTPoly({(b, a): c for (a, b), c in self.terms.items()})

    def evaluate(self, q: int, t: int) -> int:
        return sum(c * q**a * t**b for (a, b), c in self.terms.items())

    def __repr__(self) -> str:
        return f"QTPoly({render_terms(self.terms)!r})"

    def __str__(self) -> str:
        return render_terms(self.terms)


def _render_term(c: int, a: int, b: int) -> str:
    factors = []
    if abs(c) != 1 or (a == 0 and b == 0):
        factors.append(str(abs(c)))
    if a:
        factors.append("q" if a == 1 else f"q^{a}")
    if b:
        factors.append("t" if b == 1 else f"t^{b}")
    return "*".join(factors)


def render_terms(terms: Mapping[tuple[int, int], int]) -> str:
    """Render ``{(a, b): c}`` ascending in q, then t: ``1 + q - 2*q*t^3``."""
    keys = sorted(k for k, c in terms.items() if c)
    if not keys:
        return "0"
    out = []
    for n, (a, b) in enumerate(keys):
        c = terms[(a, b)]
        body = _render_term(c, a, b)
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


# -- cyclotomic polynomials -------------------------------------------------

IntPoly = tuple[int, ...]  # coefficients, constant term first


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_mul(f: IntPoly, g: IntPoly) -> IntPoly:
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x:
            for j, y in enumerate(g):
                out[i + j] += x * y
    return tuple(out)


def _exact_div(f: IntPoly, g: IntPoly) -> IntPoly:
    # g monic
    rem = list(f)
    dg = len(g) - 1
    quot = [0] * (len(f) - dg)
    for i in range(len(quot) - 1, -1, -1):
        c = rem[i + dg]
        quot[i] = c
        if c:
            for j, y in enumerate(g):
                rem[i + j] -= c * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return tuple(quot)


@lru_cache(maxsize=None)
def cyclotomic(l: int) -> IntPoly:
    """Coefficients of the l-th cyclotomic polynomial, constant term first.

    Obtained by dividing ``t^l - 1`` by the cyclotomic polynomials of the
    proper divisors of ``l``.
    """
    if l < 1:
        raise ValueError(f"cyclotomic index must be positive, got {l}")
    f: IntPoly = (-1,) + (0,) * (l - 1) + (1,)
    for d in _divisors(l)[:-1]:
        f = _exact_div(f, cyclotomic(d))
    return f


def euler_phi(l: int) -> int:
    return len(cyclotomic(l)) - 1


def reduce_mod_cyclotomic(coeffs: Iterable[int], l: int) -> IntPoly:
    """Reduce a t-polynomial modulo Phi_l; result has length phi(l)."""
    phi = cyclotomic(l)
    d = len(phi) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i]
        if c:
            # t^i = t^(i-d) * t^d and t^d = -(phi[0] + ... + phi[d-1] t^(d-1))
            for j in range(d + 1):
                rem[i - d + j] -= c * phi[j]
    rem = rem[:d] + [0] * (d - len(rem))
    return tuple(rem)


class CycElement:
    """Polynomial in q whose coefficients live in Z[t]/Phi_l(t).

    ``rep`` maps a q-exponent to the length-phi(l) coefficient vector of the
    reduced t-polynomial; all-zero vectors are never stored.
    """

    __slots__ = ("l", "rep")

    def __init__(self, l: int, rep: Mapping[int, Iterable[int]] | None = None):
        self.l = l
        d = euler_phi(l)
        clean = {}
        for a, coeffs in (rep or {}).items():
            v = tuple(coeffs)
            if len(v) != d:
                v = reduce_mod_cyclotomic(v, l)
            if any(v):
                clean[a] = v
        self.rep: dict[int, IntPoly] = clean

    def _coerce(self, other: CycElement) -> None:
        if not isinstance(other, CycElement) or other.l != self.l:
            raise TypeError("cyclotomic elements must share the same l")

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycElement):
            return NotImplemented
        return self.l == other.l and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.l, frozenset(self.rep.items())))

    def __add__(self, other: CycElement) -> CycElement:
        self._coerce(other)
        d = euler_phi(self.l)
        out = dict(self.rep)
        for a, v in other.rep.items():
            w = out.get(a, (0,) * d)
            out[a] = tuple(x + y for x, y in zip(w, v))
        return CycElement(self.l, out)

    def __neg__(self) -> CycElement:
        return CycElement(self.l, {a: tuple(-x for x in v) for a, v in self.rep.items()})

    def __sub__(self, other: CycElement) -> CycElement:
        return self + (-other)

    def __mul__(self, other: CycElement) -> CycElement:
        self._coerce(other)
        out: dict[int, list[int]] = {}
        for a1, v1 in self.rep.items():
            for a2, v2 in other.rep.items():
                acc = out.setdefault(a1 + a2, [0] * (2 * len(v1) - 1))
                for i, x in enumerate(_poly_mul(v1, v2)):
                    acc[i] += x
        return CycElement(self.l, {a: reduce_mod_cyclotomic(v, self.l) for a, v in out.items()})

    def __repr__(self) -> str:
        return f"CycElement({self.l}, {str(self)!r})"

    def __str__(self) -> str:
        terms = {(a, b): c for a, v in self.rep.items() for b, c in enumerate(v) if c}
        return f"{render_terms(terms)} (mod Phi_{self.l})"


def specialize_t(p: QTPoly, l: int) -> CycElement:
    """Value of ``p`` at t = a primitive l-th root of unity."""
    by_q: dict[int, dict[int, int]] = defaultdict(dict)
    for (a, b), c in p.terms.items():
        by_q[a][b] = c
    rep = {}
    for a, tpoly in by_q.items():
        coeffs = [0] * (max(tpoly) + 1)
        for b, c in tpoly.items():
            coeffs[b] = c
        rep[a] = reduce_mod_cyclotomic(coeffs, l)
    return CycElement(l, rep)


# -- monomial expansions ----------------------------------------------------

Coefficient = Union[QTPoly, CycElement]


class SymmetryError(ValueError):
    """Coefficients differ on two compositions of the same permutation orbit."""

    def __init__(self, first: tuple[int, ...], second: tuple[int, ...], c1, c2):
        super().__init__(f"not symmetric: coefficient of {first} is {c1} but of {second} is {c2}")
        self.first, self.second = first, second


class MonomialExpansion:
    """Finite map from exponent vectors of length ``nvars`` to coefficients.

    ``ring`` is ``None`` for Z[q, t] coefficients and ``l`` for coefficients
    specialized at a primitive l-th root of unity. Zero coefficients are
    pruned on construction.
    """

    def __init__(self, nvars: int, coeffs: Mapping[tuple[int, ...], Coefficient] | None = None,
                 ring: int | None = None):
        if nvars < 1:
            raise ValueError("number of variables must be positive")
        self.nvars = nvars
        self.ring = ring
        clean = {}
        for nu, c in (coeffs or {}).items():
            nu = tuple(nu)
            if len(nu) != nvars:
                raise ValueError(f"exponent vector {nu} does not have length {nvars}")
            if (ring is None) != isinstance(c, QTPoly) or (ring is not None and c.l != ring):
                raise TypeError(f"coefficient {c!r} does not belong to ring {ring}")
            if c:
                clean[nu] = c
        self.coeffs: dict[tuple[int, ...], Coefficient] = clean

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, nu: tuple[int, ...]) -> Coefficient:
        return self.coeffs.get(tuple(nu), self._zero())

    def _zero(self) -> Coefficient:
        return QTPoly() if self.ring is None else CycElement(self.ring)

    def _check_compatible(self, other: MonomialExpansion) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"expansions in {self.nvars} and {other.nvars} variables")
        if self.ring != other.ring:
            raise TypeError(f"expansions over different rings ({self.ring} vs {other.ring})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialExpansion):
            return NotImplemented
        return expansion_equal(self, other)

    def __mul__(self, other: MonomialExpansion) -> MonomialExpansion:
        return expansion_mul(self, other)

    def map(self, f, ring: int | None) -> MonomialExpansion:
        return MonomialExpansion(self.nvars, {nu: f(c) for nu, c in self.coeffs.items()}, ring)

    def __repr__(self) -> str:
        return f"MonomialExpansion(nvars={self.nvars}, ring={self.ring}, terms={len(self)})"


def expansion_mul(A: MonomialExpansion, B: MonomialExpansion) -> MonomialExpansion:
    A._check_compatible(B)
    out: dict[tuple[int, ...], Coefficient] = {}
    for nu1, c1 in A.coeffs.items():
        for nu2, c2 in B.coeffs.items():
            nu = tuple(x + y for x, y in zip(nu1, nu2))
            prod = c1 * c2
            out[nu] = out[nu] + prod if nu in out else prod
    return MonomialExpansion(A.nvars, out, A.ring)


def expansion_equal(A: MonomialExpansion, B: MonomialExpansion) -> bool:
    A._check_compatible(B)
    return A.coeffs == B.coeffs


def expansion_diff(A: MonomialExpansion, B: MonomialExpansion) -> list[tuple[tuple[int, ...], Coefficient, Coefficient]]:
    """Exponent vectors where ``A`` and ``B`` differ, sorted, with both values."""
    A._check_compatible(B)
    keys = sorted(set(A.coeffs) | set(B.coeffs))
    return [(nu, A[nu], B[nu]) for nu in keys if A[nu] != B[nu]]


def symmetry_canonicalize(A: MonomialExpansion) -> dict[tuple[int, ...], Coefficient]:
    """Collapse a symmetric expansion to one coefficient per partition.

    Raises:
        SymmetryError: naming the first pair of compositions in one orbit
            whose coefficients differ.
    """
    out: dict[tuple[int, ...], Coefficient] = {}
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for nu in sorted(A.coeffs):
        lam = tuple(sorted((x for x in nu if x), reverse=True))
        if lam in seen:
            continue
        seen[lam] = nu
        c = A.coeffs[nu]
        for other in set(permutations(nu)):
            if A[other] != c:
                raise SymmetryError(nu, other, c, A[other])
        out[lam] = c
    return out
