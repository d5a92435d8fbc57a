"""Sparse exact Gaussian elimination over the rationals.

Vectors are plain dicts ``key -> Fraction`` with no stored zeros.  Pivots are
chosen as the largest key under a caller supplied sort key, so an echelon
basis is compatible with a filtration by that key (e.g. PBW degree).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable

Vector = dict


def add_scaled(target: dict, source: dict, scale) -> None:
    """In place ``target += scale * source``."""
    if not scale:
        return
    for k, v in source.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def scaled(vec: dict, scale) -> dict:
    if not scale:
        return {}
    return {k: v * scale for k, v in vec.items()}


class Echelon:
    """Incrementally maintained semi-echelon basis of a subspace.

    Every stored row has a distinct pivot (its leading key) with coefficient
    one.  With ``track=True`` each row also remembers which input vectors it
    is a combination of, which gives kernels and coordinates for free.
    """

    def __init__(self, order: Callable[[Hashable], object] | None = None, track=False):
        self.order = order if order is not None else (lambda k: k)
        self.track = track
        self.rows: dict = {}  # pivot -> row
        self.combos: dict = {}  # pivot -> combination of input labels
        self.kernel: list = []

    def __len__(self) -> int:
        return len(self.rows)

    def _lead(self, vec: dict):
        return max(vec, key=self.order)

    def reduce(self, vec: dict, combo: dict | None = None):
        vec = dict(vec)
        combo = dict(combo) if combo is not None else None
        rows = self.rows
        while vec:
            hits = [k for k in vec if k in rows]
            if not hits:
                break
            # leading-first keeps the loop short for triangular inputs
            k = max(hits, key=self.order)
            c = vec[k]
            add_scaled(vec, rows[k], -c)
            if combo is not None:
                add_scaled(combo, self.combos[k], -c)
        return vec, combo

    def contains(self, vec: dict) -> bool:
        residual, _ = self.reduce(vec)
        return not residual

    def add(self, vec: dict, label=None) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        combo = {label: Fraction(1)} if self.track else None
        residual, combo = self.reduce(vec, combo)
        if not residual:
            if self.track and combo:
                self.kernel.append(combo)
            return False
        lead = self._lead(residual)
        inv = 1 / Fraction(residual[lead])
        row = {k: v * inv for k, v in residual.items()}
        self.rows[lead] = row
        if self.track:
            self.combos[lead] = {k: v * inv for k, v in combo.items()}
        return True

    def extend(self, vecs: Iterable[dict]) -> int:
        return sum(1 for v in vecs if self.add(v))

    def basis(self) -> list[dict]:
        return [self.rows[k] for k in sorted(self.rows, key=self.order)]

    def coordinates(self, vec: dict):
        """Express ``vec`` through the tracked input labels, or None."""
        if not self.track:
            raise ValueError("coordinates need a tracking echelon")
        residual, combo = self.reduce(vec, {})
        if residual:
            return None
        return {k: -v for k, v in combo.items() if v}

    def copy(self) -> "Echelon":
        other = Echelon(self.order, self.track)
        other.rows = dict(self.rows)
        other.combos = dict(self.combos)
        other.kernel = list(self.kernel)
        return other


def rank(vectors: Iterable[dict], order=None) -> int:
    ech = Echelon(order)
    return ech.extend(vectors)


def span_equal(a: Iterable[dict], b: Iterable[dict], order=None) -> bool:
    ea, eb = Echelon(order), Echelon(order)
    a, b = list(a), list(b)
    ea.extend(a)
    eb.extend(b)
    if len(ea) != len(eb):
        return False
    return all(eb.contains(v) for v in a)


def kernel(columns: dict, order=None) -> list[dict]:
    """Kernel of the linear map ``label -> columns[label]``.

    Returns combinations ``{label: coeff}`` forming a basis of the kernel;
    labels are processed in ``order`` so that the basis respects it.
    """
    ech = Echelon(track=True)
    labels = sorted(columns, key=order) if order else list(columns)
    for lab in labels:
        ech.add(columns[lab], lab)
    return ech.kernel


def solve_square(M, b):
    """Solve a small dense nonsingular system exactly."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(M, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]
