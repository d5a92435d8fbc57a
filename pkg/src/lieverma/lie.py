"""Chevalley bases and structure constants.

The structure constants are not typed in from tables.  Instead the adjoint
representation is built from the Cartan matrix alone, as the irreducible
quotient of the Verma module with highest weight the highest root.  Root
vectors are then produced by recursive brackets normalised by the Chevalley
rule ``[e_i, e_beta] = (p+1) e_{beta+alpha_i}``, and everything is validated
(Jacobi, Serre, ``[e_a, f_a] = h_a``, integrality) before use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .linalg import Echelon
from .roots import RootSystem

F, H, E = "F", "H", "E"


class StructureError(RuntimeError):
    """The generated structure constants failed an identity check."""


@dataclass(frozen=True, order=True)
class BasisIndex:
    kind: str  # "F", "H" or "E"
    index: int  # positive root index for E/F, simple index for H

    def __str__(self) -> str:
        return f"{self.kind.lower()}{self.index + 1}"


# sparse matrices: dict (row, col) -> Fraction


def _mat_mul(a: dict, b: dict) -> dict:
    by_row: dict = {}
    for (k, j), v in b.items():
        by_row.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), v in a.items():
        for j, w in by_row.get(k, ()):
            out[i, j] = out.get((i, j), 0) + v * w
    return {k: v for k, v in out.items() if v}


def _mat_comb(terms) -> dict:
    out: dict = {}
    for c, m in terms:
        for k, v in m.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def _bracket(a: dict, b: dict) -> dict:
    return _mat_comb([(1, _mat_mul(a, b)), (-1, _mat_mul(b, a))])


def highest_weight_module(rs: RootSystem, highest: tuple[int, ...]):
    """Matrices of ``e_i, f_i, h_i`` on the irreducible module ``L(highest)``.

    Works purely from the Cartan matrix: weight spaces of ``L`` are spanned by
    ``f_i`` applied to lower-height weight spaces, and a vector is zero in
    ``L`` exactly when every ``e_j`` sends it to zero.
    """
    r = rs.rank
    zero = (0,) * r
    dims = {zero: 1}
    # emat[j][beta]: basis of L_beta -> coords in L_{beta - a_j}
    # fmat[i][beta]: basis of L_beta -> coords in L_{beta + a_i}
    emat = [dict() for _ in range(r)]
    fmat = [dict() for _ in range(r)]
    level = [zero]
    while level:
        targets = sorted(
            {tuple(b[k] + (k == i) for k in range(r)) for b in level for i in range(r)}
        )
        nxt = []
        for beta in targets:
            cands = []
            for i in range(r):
                src = tuple(beta[k] - (k == i) for k in range(r))
                for b in range(dims.get(src, 0)):
                    cands.append((i, src, b))
            ech = Echelon(track=True)
            images = {}
            basis = []
            for cand in cands:
                i, src, b = cand
                img = {}
                for j in range(r):
                    # e_j f_i b = f_i e_j b + [i == j] (lam - src)(h_i) b
                    low = tuple(src[k] - (k == j) for k in range(r))
                    for idx, c in emat[j].get(src, {}).get(b, {}).items():
                        for idx2, c2 in fmat[i].get(low, {}).get(idx, {}).items():
                            key = (j, idx2)
                            img[key] = img.get(key, 0) + c * c2
                    if i == j:
                        coef = highest[i] - rs.pairing(src, i)
                        if coef:
                            img[(j, b)] = img.get((j, b), 0) + coef
                img = {k: v for k, v in img.items() if v}
                images[cand] = img
                if ech.add(img, cand):
                    basis.append(cand)
            if not basis:
                continue
            pos = {c: n for n, c in enumerate(basis)}
            dims[beta] = len(basis)
            nxt.append(beta)
            for cand in cands:
                i, src, b = cand
                coords = ech.coordinates(images[cand]) if images[cand] else {}
                col = {pos[lab]: v for lab, v in coords.items()}
                fmat[i].setdefault(src, {})[b] = col
            for n, cand in enumerate(basis):
                for (j, idx), v in images[cand].items():
                    emat[j].setdefault(beta, {}).setdefault(n, {})[idx] = v
        level = nxt
    order = sorted(dims, key=lambda b: (sum(b), b))
    offset = {}
    total = 0
    for beta in order:
        offset[beta] = total
        total += dims[beta]
    es, fs, hs = [], [], []
    for j in range(r):
        m = {}
        for beta, cols in emat[j].items():
            low = tuple(beta[k] - (k == j) for k in range(r))
            for n, col in cols.items():
                for idx, v in col.items():
                    m[offset[low] + idx, offset[beta] + n] = Fraction(v)
        es.append(m)
        m = {}
        for src, cols in fmat[j].items():
            up = tuple(src[k] + (k == j) for k in range(r))
            if up not in offset:
                continue
            for b, col in cols.items():
                for idx, v in col.items():
                    m[offset[up] + idx, offset[src] + b] = Fraction(v)
        fs.append(m)
        m = {}
        for beta in order:
            val = highest[j] - rs.pairing(beta, j)
            if val:
                for n in range(dims[beta]):
                    m[offset[beta] + n, offset[beta] + n] = Fraction(val)
        hs.append(m)
    return es, fs, hs, total


class LieAlgebra:
    """Split semisimple Lie algebra with a Chevalley basis.

    Basis positions follow the PBW order: ``f`` root vectors (root order),
    then ``h_1..h_r``, then ``e`` root vectors.
    """

    def __init__(self, rs: RootSystem, validate: bool = True):
        self.rs = rs
        self.m = m = len(rs.positive_roots)
        self.r = r = rs.rank
        self.dim = 2 * m + r
        self.basis = (
            [BasisIndex(F, k) for k in range(m)]
            + [BasisIndex(H, i) for i in range(r)]
            + [BasisIndex(E, k) for k in range(m)]
        )
        self.position = {b: n for n, b in enumerate(self.basis)}
        self.matrices = self._chevalley_matrices()
        self.table = self._structure_constants()
        if validate:
            self.validate()

    # positions -------------------------------------------------------------

    def f(self, k: int) -> int:
        return k

    def h(self, i: int) -> int:
        return self.m + i

    def e(self, k: int) -> int:
        return self.m + self.r + k

    def kind(self, pos: int) -> str:
        return self.basis[pos].kind

    def root_of(self, pos: int) -> tuple[int, ...]:
        """Weight (root-lattice coefficients) of a basis element."""
        b = self.basis[pos]
        if b.kind == H:
            return (0,) * self.r
        c = self.rs.positive_roots[b.index].coeffs
        return c if b.kind == E else tuple(-x for x in c)

    # construction ----------------------------------------------------------

    def _chevalley_matrices(self) -> list[dict]:
        rs = self.rs
        theta = rs.highest_root.coeffs
        highest = tuple(rs.pairing(theta, i) for i in range(self.r))
        es, fs, hs, _ = highest_weight_module(rs, highest)
        idx = rs.root_index
        e_mats: dict = {}
        f_mats: dict = {}
        for i in range(self.r):
            e_mats[i] = es[i]
            f_mats[i] = fs[i]
        for k in range(self.r, self.m):
            gamma = rs.positive_roots[k].coeffs
            for i in range(self.r):
                beta = tuple(c - (j == i) for j, c in enumerate(gamma))
                if beta in idx:
                    break
            else:  # pragma: no cover - every non-simple root has such an i
                raise StructureError(f"no simple decomposition of {gamma}")
            p = 0
            while tuple(c - (p + 1) * (j == i) for j, c in enumerate(beta)) in idx:
                p += 1
            b = idx[beta]
            e_mats[k] = _mat_comb([(Fraction(1, p + 1), _bracket(e_mats[i], e_mats[b]))])
            f_mats[k] = _mat_comb([(Fraction(1, p + 1), _bracket(f_mats[b], f_mats[i]))])
        return (
            [f_mats[k] for k in range(self.m)]
            + list(hs)
            + [e_mats[k] for k in range(self.m)]
        )

    def _structure_constants(self) -> dict:
        ech = Echelon(track=True)
        for n, mat in enumerate(self.matrices):
            if not ech.add(mat, n):
                raise StructureError("Chevalley basis matrices are dependent")
        table = {}
        for a in range(self.dim):
            for b in range(self.dim):
                if a == b:
                    continue
                br = _bracket(self.matrices[a], self.matrices[b])
                coords = ech.coordinates(br)
                if coords is None:
                    raise StructureError("bracket leaves the span")
                out = {}
                for c, v in coords.items():
                    if v.denominator != 1:
                        raise StructureError(f"non-integral constant in [{a},{b}]")
                    out[c] = int(v)
                if out:
                    table[a, b] = out
        return table

    # arithmetic ------------------------------------------------------------

    def bracket(self, a: int, b: int) -> dict:
        return self.table.get((a, b), {})

    def bracket_vec(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.bracket(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def coroot_vec(self, k: int) -> dict:
        """``h_alpha`` for the k-th positive root, over positions of h_i."""
        return {
            self.h(i): c for i, c in enumerate(self.rs.positive_coroots[k]) if c
        }

    def chevalley_involution(self, pos: int) -> int:
        """Position of the image of a basis vector under e <-> f swap."""
        b = self.basis[pos]
        if b.kind == H:
            return pos
        return self.e(b.index) if b.kind == F else self.f(b.index)

    # validation ------------------------------------------------------------

    def jacobi_residuals(self) -> list:
        bad = []
        n = self.dim
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    total: dict = {}
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        inner = self.bracket(y, z)
                        for k, v in self.bracket_vec({x: 1}, inner).items():
                            total[k] = total.get(k, 0) + v
                    if any(total.values()):
                        bad.append((a, b, c))
        return bad

    def antisymmetry_violations(self) -> list:
        return [
            (a, b)
            for (a, b), v in self.table.items()
            if {k: -x for k, x in v.items()} != self.bracket(b, a)
        ]

    def serre_violations(self) -> list:
        A = self.rs.cartan_matrix
        bad = []
        for i in range(self.r):
            for j in range(self.r):
                if i == j:
                    continue
                power = 1 - A[i][j]
                for gen in (self.e, self.f):
                    vec = {gen(j): 1}
                    for _ in range(power):
                        vec = self.bracket_vec({gen(i): 1}, vec)
                    if vec:
                        bad.append((gen.__name__, i, j))
        return bad

    def chevalley_violations(self) -> list:
        bad = []
        rs = self.rs
        for k in range(self.m):
            if self.bracket(self.e(k), self.f(k)) != {
                key: int(v) for key, v in self.coroot_vec(k).items()
            }:
                bad.append(("coroot", k))
        for a in range(self.m):
            for b in range(self.m):
                s = tuple(x + y for x, y in zip(rs.positive_roots[a].coeffs, rs.positive_roots[b].coeffs))
                if s not in rs.root_index:
                    continue
                p = 0
                while True:
                    t = tuple(
                        y - (p + 1) * x
                        for x, y in zip(rs.positive_roots[a].coeffs, rs.positive_roots[b].coeffs)
                    )
                    if rs.is_root(t):
                        p += 1
                    else:
                        break
                v = self.bracket(self.e(a), self.e(b))
                if list(v) != [self.e(rs.root_index[s])] or abs(next(iter(v.values()))) != p + 1:
                    bad.append(("N", a, b))
        return bad

    def validate(self) -> None:
        problems = {
            "antisymmetry": self.antisymmetry_violations(),
            "jacobi": self.jacobi_residuals(),
            "serre": self.serre_violations(),
            "chevalley": self.chevalley_violations(),
        }
        problems = {k: v for k, v in problems.items() if v}
        if problems:
            raise StructureError(f"structure constants invalid: {problems}")

    @cached_property
    def label(self) -> list[str]:
        return [str(b) for b in self.basis]


_CACHE: dict = {}


def build_structure_constants(rs: RootSystem) -> LieAlgebra:
    key = rs.type_label
    if key not in _CACHE:
        _CACHE[key] = LieAlgebra(rs)
    return _CACHE[key]
