"""Split root systems of small rank.

Conventions: the Cartan matrix has entries ``A[i][j] = alpha_j(h_i)`` and
weights are stored by their pairings with the simple coroots ``h_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .linalg import solve_square
from .padic import valuation

CARTAN_MATRICES = {
    "A1": ((2,),),
    "A2": ((2, -1), (-1, 2)),
    "A3": ((2, -1, 0), (-1, 2, -1), (0, -1, 2)),
    # alpha_1 long, alpha_2 short
    "B2": ((2, -1), (-2, 2)),
    # alpha_1 short, alpha_2 long; highest root 3a1 + 2a2
    "G2": ((2, -3), (-1, 2)),
}

WEYL_ORDERS = {"A1": 2, "A2": 6, "A3": 24, "B2": 8, "G2": 12}


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Root:
    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs, 1):
            if c == 1:
                parts.append(f"a{i}")
            elif c:
                parts.append(f"{c}a{i}")
        return "+".join(parts) or "0"


def height(root: Root) -> int:
    return root.height


@dataclass(frozen=True)
class Weight:
    """Linear form on the Cartan, given by its values on simple coroots.

    ``deformation_level`` n records that the form is integral on
    ``p^n`` times the integral Cartan; the prime is only needed to check it.
    """

    coroot_pairings: tuple[Fraction, ...]
    deformation_level: int = 0

    def __post_init__(self):
        object.__setattr__(
            self, "coroot_pairings", tuple(Fraction(x) for x in self.coroot_pairings)
        )

    @classmethod
    def of(cls, *pairings, n: int = 0) -> "Weight":
        return cls(tuple(pairings), n)

    def __len__(self) -> int:
        return len(self.coroot_pairings)

    def __getitem__(self, i):
        return self.coroot_pairings[i]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self, other)),
            max(self.deformation_level, other.deformation_level),
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a - b for a, b in zip(self, other)),
            max(self.deformation_level, other.deformation_level),
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self), self.deformation_level)

    def key(self) -> tuple:
        return self.coroot_pairings

    def admissible(self, p: int) -> bool:
        return all(valuation(x, p) >= -self.deformation_level for x in self)

    def __str__(self) -> str:
        return "(" + ", ".join(str(x) for x in self) + ")"


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    root_lengths: tuple[Fraction, ...] = field(repr=False)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return self.positive_roots[: self.rank]

    @cached_property
    def root_index(self) -> dict:
        return {r.coeffs: i for i, r in enumerate(self.positive_roots)}

    @property
    def max_root_height(self) -> int:
        return max(r.height for r in self.positive_roots)

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def is_root(self, coeffs: Sequence[int]) -> bool:
        c = tuple(coeffs)
        return c in self.root_index or tuple(-x for x in c) in self.root_index

    def pairing(self, coeffs: Sequence[int], i: int) -> int:
        """``beta(h_i)`` for an element of the root lattice."""
        A = self.cartan_matrix
        return sum(c * A[i][k] for k, c in enumerate(coeffs))

    def form(self, a: Sequence, b: Sequence) -> Fraction:
        """Invariant form on the root lattice, short simple roots of length 2."""
        d = self.root_lengths
        A = self.cartan_matrix
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    total += ai * bj * A[i][j] * d[i] / 2
        return total

    def coroot(self, root: Root) -> tuple[Fraction, ...]:
        """Coroot ``h_root`` in the basis of simple coroots."""
        norm = self.form(root.coeffs, root.coeffs)
        return tuple(c * self.root_lengths[i] / norm for i, c in enumerate(root.coeffs))

    @cached_property
    def positive_coroots(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.coroot(r) for r in self.positive_roots)

    def evaluate(self, weight: Weight, coroot: Sequence) -> Fraction:
        """``weight(h)`` for ``h`` given in simple-coroot coordinates."""
        return sum((Fraction(c) * x for c, x in zip(coroot, weight)), Fraction(0))

    def root_as_weight(self, coeffs: Sequence[int]) -> Weight:
        return Weight(tuple(self.pairing(coeffs, i) for i in range(self.rank)))

    def shift(self, weight: Weight, coeffs: Sequence[int]) -> Weight:
        """``weight - sum c_i alpha_i``."""
        return Weight(
            tuple(weight[i] - self.pairing(coeffs, i) for i in range(self.rank)),
            weight.deformation_level,
        )

    @cached_property
    def rho(self) -> Weight:
        return Weight(tuple(Fraction(1) for _ in range(self.rank)))

    @cached_property
    def delta(self) -> tuple[Fraction, ...]:
        """Coweight ``d`` in simple-coroot coordinates with ``alpha(d) = ht(alpha)``.

        Solves ``sum_i d_i alpha_j(h_i) = 1`` for every simple root.
        """
        A = self.cartan_matrix
        r = self.rank
        At = [[Fraction(A[i][j]) for i in range(r)] for j in range(r)]
        return tuple(solve_square(At, [Fraction(1)] * r))

    # Weyl group -----------------------------------------------------------

    def reflect(self, weight: Weight, i: int) -> Weight:
        """Ordinary action of the simple reflection ``s_i``."""
        a = weight[i]
        A = self.cartan_matrix
        return Weight(
            tuple(weight[j] - a * A[j][i] for j in range(self.rank)),
            weight.deformation_level,
        )

    def dot(self, word: Sequence[int], weight: Weight) -> Weight:
        w = weight + self.rho
        for i in reversed(word):
            w = self.reflect(w, i)
        return w - self.rho

    @cached_property
    def weyl_group(self) -> tuple[tuple[int, ...], ...]:
        """Reduced words of all elements, found by BFS on the orbit of a
        regular weight (the action on a regular orbit is free)."""
        start = Weight(tuple(Fraction(1) for _ in range(self.rank)))
        seen = {start.key(): ()}
        frontier = [(start, ())]
        while frontier:
            nxt = []
            for w, word in frontier:
                for i in range(self.rank):
                    u = self.reflect(w, i)
                    if u.key() not in seen:
                        seen[u.key()] = (i,) + word
                        nxt.append((u, (i,) + word))
            frontier = nxt
        return tuple(seen.values())

    def act_word(self, word: Sequence[int], weight: Weight) -> Weight:
        for i in reversed(word):
            weight = self.reflect(weight, i)
        return weight

    @cached_property
    def longest_element(self) -> tuple[int, ...]:
        return max(self.weyl_group, key=len)

    def dot_orbit(self, weight: Weight) -> list[Weight]:
        seen = {}
        for word in self.weyl_group:
            w = self.dot(word, weight)
            seen.setdefault(w.key(), w)
        return [seen[k] for k in sorted(seen)]


def _symmetrizer(A) -> tuple[Fraction, ...]:
    """Squared lengths ``d_i`` of simple roots with ``d_i A_ij = d_j A_ji``,
    normalised so the shortest is 2."""
    r = len(A)
    d = [None] * r
    d[0] = Fraction(1)
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(r):
                if d[i] is not None and d[j] is None and A[i][j]:
                    d[j] = d[i] * A[i][j] / A[j][i]
                    changed = True
    if any(x is None for x in d):
        raise ConfigurationError("Cartan matrix is not indecomposable")
    scale = 2 / min(d)
    return tuple(x * scale for x in d)


def enumerate_positive_roots(A) -> list[tuple[int, ...]]:
    """Close the simple roots under simple reflections, keep positive ones."""
    r = len(A)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                pair = sum(c * A[i][k] for k, c in enumerate(beta))
                gamma = tuple(c - pair * (k == i) for k, c in enumerate(beta))
                if all(c >= 0 for c in gamma) and any(gamma) and gamma not in found:
                    found.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    # within a height, alpha_1 before alpha_2: simple roots keep their index
    return sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    if type_label not in CARTAN_MATRICES:
        raise ConfigurationError(f"unsupported root system type {type_label!r}")
    A = CARTAN_MATRICES[type_label]
    if rank is not None and rank != len(A):
        raise ConfigurationError(f"type {type_label} has rank {len(A)}, not {rank}")
    roots = tuple(Root(c) for c in enumerate_positive_roots(A))
    return RootSystem(type_label, len(A), A, roots, _symmetrizer(A))


def rho_and_delta(rs: RootSystem):
    return rs.rho, rs.delta


def is_dominant(rs: RootSystem, weight: Weight) -> bool:
    shifted = weight + rs.rho
    return all(rs.evaluate(shifted, h) >= 0 for h in rs.positive_coroots)


def is_regular(rs: RootSystem, weight: Weight) -> bool:
    shifted = weight + rs.rho
    return all(rs.evaluate(shifted, h) != 0 for h in rs.positive_coroots)


def lambda_star(rs: RootSystem, weight: Weight) -> Weight:
    """``-w0(weight)`` for the longest Weyl group element ``w0``."""
    return -rs.act_word(rs.longest_element, weight)
