"""Universal enveloping algebra in a PBW basis.

A monomial is an exponent tuple over the Chevalley basis in PBW order
(``f`` block, ``h`` block, ``e`` block), read as the ordered product
``x_0^{a_0} x_1^{a_1} ...``.  Elements are dicts ``monomial -> Fraction``.
Straightening uses the single rewrite ``x_k x_j = x_j x_k + [x_k, x_j]`` for
``j < k`` and is memoised per algebra.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .lie import LieAlgebra, build_structure_constants
from .linalg import Echelon, solve_square
from .padic import INF, valuation
from .roots import RootSystem, Weight


class NotCentralError(ValueError):
    def __init__(self, generator, commutator):
        super().__init__(f"element does not commute with {generator}")
        self.generator = generator
        self.commutator = commutator


class UEA:
    def __init__(self, lie: LieAlgebra, p: int = 5):
        self.lie = lie
        self.rs = lie.rs
        self.p = p
        self.N = lie.dim
        self._left: dict = {}
        self._mono: dict = {}
        self._sigma: dict = {}

    @classmethod
    def of(cls, rs: RootSystem, p: int = 5) -> "UEA":
        return cls(build_structure_constants(rs), p)

    # constructors ----------------------------------------------------------

    def element(self, terms: dict | None = None) -> "UEAElement":
        return UEAElement(self, terms or {})

    def one(self) -> "UEAElement":
        return self.scalar(1)

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def scalar(self, c) -> "UEAElement":
        c = Fraction(c)
        return UEAElement(self, {(0,) * self.N: c} if c else {})

    def gen(self, pos: int, coeff=1) -> "UEAElement":
        mono = [0] * self.N
        mono[pos] = 1
        return UEAElement(self, {tuple(mono): Fraction(coeff)})

    def e(self, k: int) -> "UEAElement":
        return self.gen(self.lie.e(k))

    def f(self, k: int) -> "UEAElement":
        return self.gen(self.lie.f(k))

    def h(self, i: int) -> "UEAElement":
        return self.gen(self.lie.h(i))

    def cartan(self, coords: Sequence) -> "UEAElement":
        """Element of the Cartan given in simple-coroot coordinates."""
        return UEAElement(
            self,
            {self._unit(self.lie.h(i)): Fraction(c) for i, c in enumerate(coords) if c},
        )

    def delta(self) -> "UEAElement":
        return self.cartan(self.rs.delta)

    def _unit(self, pos: int) -> tuple:
        mono = [0] * self.N
        mono[pos] = 1
        return tuple(mono)

    # straightening ---------------------------------------------------------

    def left_mul_gen(self, k: int, mono: tuple) -> dict:
        """``x_k * mono`` in PBW form, integer coefficients."""
        key = (k, mono)
        hit = self._left.get(key)
        if hit is not None:
            return hit
        j = next((i for i, a in enumerate(mono) if a), None)
        if j is None or k <= j:
            new = list(mono)
            new[k] += 1
            out = {tuple(new): 1}
        else:
            rest = list(mono)
            rest[j] -= 1
            rest = tuple(rest)
            out = {}
            for t, c in self.left_mul_gen(k, rest).items():
                for t2, c2 in self.left_mul_gen(j, t).items():
                    out[t2] = out.get(t2, 0) + c * c2
            for pos, c in self.lie.bracket(k, j).items():
                for t2, c2 in self.left_mul_gen(pos, rest).items():
                    out[t2] = out.get(t2, 0) + c * c2
            out = {t: c for t, c in out.items() if c}
        self._left[key] = out
        return out

    def word(self, mono: tuple) -> list[int]:
        out = []
        for pos, a in enumerate(mono):
            out.extend([pos] * a)
        return out

    def normalize_word(self, word: Sequence[int], start: dict | None = None) -> dict:
        cur = start if start is not None else {(0,) * self.N: 1}
        for k in reversed(word):
            nxt: dict = {}
            for t, c in cur.items():
                for t2, c2 in self.left_mul_gen(k, t).items():
                    nxt[t2] = nxt.get(t2, 0) + c * c2
            cur = {t: c for t, c in nxt.items() if c}
        return cur

    def mul_mono(self, a: tuple, b: tuple) -> dict:
        key = (a, b)
        hit = self._mono.get(key)
        if hit is None:
            hit = self.normalize_word(self.word(a), {b: 1})
            self._mono[key] = hit
        return hit

    def pbw_normalize(self, word: Sequence[int], coeff=1) -> "UEAElement":
        terms = self.normalize_word(list(word))
        c = Fraction(coeff)
        return UEAElement(self, {t: v * c for t, v in terms.items()})

    def multiply(self, a: "UEAElement", b: "UEAElement") -> "UEAElement":
        out: dict = {}
        for ta, ca in a.terms.items():
            for tb, cb in b.terms.items():
                c = ca * cb
                for t, v in self.mul_mono(ta, tb).items():
                    out[t] = out.get(t, 0) + c * v
        return UEAElement(self, {t: c for t, c in out.items() if c})

    # involutions -----------------------------------------------------------

    def tau(self, a: "UEAElement") -> "UEAElement":
        """Principal anti-automorphism, ``x -> -x`` on the Lie algebra."""
        out: dict = {}
        for t, c in a.terms.items():
            w = self.word(t)
            sign = -1 if len(w) % 2 else 1
            for t2, v in self.normalize_word(w[::-1]).items():
                out[t2] = out.get(t2, 0) + sign * c * v
        return UEAElement(self, {t: c for t, c in out.items() if c})

    def sigma(self, a: "UEAElement") -> "UEAElement":
        """Anti-automorphism swapping ``e_alpha`` and ``f_alpha``, fixing ``h``."""
        out: dict = {}
        for t, c in a.terms.items():
            img = self._sigma.get(t)
            if img is None:
                w = [self.lie.chevalley_involution(x) for x in self.word(t)]
                img = self.normalize_word(w[::-1])
                self._sigma[t] = img
            for t2, v in img.items():
                out[t2] = out.get(t2, 0) + c * v
        return UEAElement(self, {t: c for t, c in out.items() if c})

    # adjoint action --------------------------------------------------------

    def ad(self, x: "UEAElement", a: "UEAElement") -> "UEAElement":
        return x * a - a * x

    def adjoint_group_action(self, root: int, r, a: "UEAElement", negative=False,
                             budget: int | None = None) -> "UEAElement":
        """``x_alpha(r) . a = sum_m ad(r e_alpha)^m / m! (a)``.

        ``negative`` selects the root group of ``-alpha`` (``f_alpha``).
        """
        x = (self.f(root) if negative else self.e(root)) * Fraction(r)
        if budget is None:
            budget = 2 * max(a.degree, 0) * self.rs.max_root_height + 2
        total = a
        term = a
        m = 0
        while True:
            m += 1
            term = self.ad(x, term) * Fraction(1, m)
            if term.is_zero():
                return total
            if m > budget:
                raise RuntimeError("ad-nilpotency budget exceeded; table bug?")
            total = total + term

    # deformation -----------------------------------------------------------

    def gauge(self, a: "UEAElement", n: int) -> float:
        if a.is_zero():
            return INF
        return min(valuation(c, self.p) - n * sum(t) for t, c in a.terms.items())

    def is_in_deformation(self, a: "UEAElement", n: int) -> bool:
        return self.gauge(a, n) >= 0

    # centre ----------------------------------------------------------------

    def commutator_with_basis(self, z: "UEAElement"):
        for pos in range(self.N):
            g = self.gen(pos)
            c = g * z - z * g
            if not c.is_zero():
                return self.lie.label[pos], c
        return None

    def is_central(self, z: "UEAElement") -> bool:
        return self.commutator_with_basis(z) is None

    def cartan_projection(self, z: "UEAElement") -> dict:
        """Component in ``U(h)`` along ``n^- U + U n^+``; keys are h-exponents."""
        m, r = self.lie.m, self.lie.r
        out = {}
        for t, c in z.terms.items():
            if any(t[:m]) or any(t[m + r:]):
                continue
            out[t[m:m + r]] = c
        return out

    def evaluate_cartan(self, hexp: dict, weight: Weight) -> Fraction:
        total = Fraction(0)
        for expo, c in hexp.items():
            term = c
            for i, a in enumerate(expo):
                if a:
                    term *= weight[i] ** a
            total += term
        return total

    def central_character(self, z: "UEAElement", weight: Weight, check=True) -> Fraction:
        if check:
            bad = self.commutator_with_basis(z)
            if bad is not None:
                raise NotCentralError(*bad)
        return self.evaluate_cartan(self.cartan_projection(z), weight)

    def casimir(self) -> "UEAElement":
        """Quadratic Casimir from dual bases of the invariant form with
        ``(e_alpha, f_alpha) = 2 / (alpha, alpha)``."""
        rs = self.rs
        r = rs.rank
        d = rs.root_lengths
        A = rs.cartan_matrix
        gram = [[Fraction(2 * A[j][i], d[i]) for j in range(r)] for i in range(r)]
        inv = [solve_square(gram, [Fraction(int(i == k)) for i in range(r)]) for k in range(r)]
        out = self.zero()
        for i in range(r):
            for j in range(r):
                c = inv[j][i]
                if c:
                    out = out + self.h(i) * self.h(j) * c
        for k, root in enumerate(rs.positive_roots):
            half = rs.form(root.coeffs, root.coeffs) / 2
            out = out + (self.e(k) * self.f(k) + self.f(k) * self.e(k)) * half
        return out

    # bases -----------------------------------------------------------------

    def monomials(self, max_degree: int, min_degree: int = 0) -> list[tuple]:
        """All PBW monomials with degree in ``[min_degree, max_degree]``."""
        out = []

        def rec(pos, left, cur):
            if pos == self.N:
                if self.N and sum(cur) >= min_degree:
                    out.append(tuple(cur))
                return
            for a in range(left + 1):
                cur.append(a)
                rec(pos + 1, left - a, cur)
                cur.pop()

        rec(0, max_degree, [])
        return sorted(out, key=lambda t: (sum(t), t))

    def weight_of(self, mono: tuple) -> tuple[int, ...]:
        """Adjoint weight (root lattice coefficients) of a monomial."""
        w = [0] * self.rs.rank
        for pos, a in enumerate(mono):
            if a:
                for i, c in enumerate(self.lie.root_of(pos)):
                    w[i] += a * c
        return tuple(w)


def monomial_order(mono: tuple):
    """Sort key for filtration-compatible echelon forms: degree first."""
    return (sum(mono), mono)


class UEAElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: UEA, terms: dict):
        self.algebra = algebra
        self.terms = {t: Fraction(c) for t, c in terms.items() if c}

    @property
    def degree(self) -> int:
        return max((sum(t) for t in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def _coerce(self, other) -> "UEAElement":
        if isinstance(other, UEAElement):
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return UEAElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.algebra, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return self.algebra.multiply(self, other)
        c = Fraction(other)
        return UEAElement(self.algebra, {t: v * c for t, v in self.terms.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return UEAElement(self.algebra, {t: v * c for t, v in self.terms.items()})

    def __pow__(self, k: int):
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            other = self._coerce(other)
        return self.terms == other.terms

    __hash__ = None

    def as_vector(self) -> dict:
        return dict(self.terms)

    def __repr__(self) -> str:
        return f"UEAElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        labels = self.algebra.lie.label
        parts = []
        for t in sorted(self.terms, key=monomial_order):
            c = self.terms[t]
            factors = []
            for pos, a in enumerate(t):
                if a == 1:
                    factors.append(labels[pos])
                elif a:
                    factors.append(f"{labels[pos]}^{a}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def binomial_operator(x: UEAElement, i: int) -> UEAElement:
    """``binom(x, i) = x (x-1) ... (x-i+1) / i!`` inside ``U(h)``."""
    out = x.algebra.one()
    for l in range(i):
        out = out * (x - l)
    return out * Fraction(1, math.factorial(i))


def span_echelon(elements: Iterable[UEAElement]) -> Echelon:
    ech = Echelon(monomial_order)
    for el in elements:
        ech.add(el.terms)
    return ech
