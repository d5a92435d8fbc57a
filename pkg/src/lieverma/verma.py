"""Verma modules at a height cap, and their affinoid completions.

Vectors of ``M(lam)`` are dicts from f-exponent tuples ``B`` (one entry per
positive root, in root order) to rationals; ``f^B v`` is the ordered product
applied to the highest weight vector.  Weight spaces are keyed by
``beta = sum_k B_k alpha_k`` (coefficients over the simple roots), so the
weight of ``f^B v`` is ``lam - beta`` and its height is ``sum(beta)``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .enveloping import UEA, UEAElement, binomial_operator
from .linalg import Echelon, add_scaled, kernel, solve_square
from .padic import INF, GaugeStaircase, certify_convergence, coefficient_gauge, valuation
from .roots import RootSystem, Weight


class TruncationError(RuntimeError):
    pass


class WeightDomainError(ValueError):
    pass


@dataclass
class VermaVector:
    module: "VermaModule"
    terms: dict = field(default_factory=dict)
    truncated: bool = False
    dropped_gauge: float = INF

    def __post_init__(self):
        self.terms = {B: Fraction(c) for B, c in self.terms.items() if c}

    @property
    def highest_weight(self) -> Weight:
        return self.module.weight

    @property
    def height_cap(self) -> int:
        return self.module.height_cap

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "VermaVector") -> "VermaVector":
        out = dict(self.terms)
        add_scaled(out, other.terms, 1)
        return VermaVector(self.module, out, self.truncated or other.truncated,
                           min(self.dropped_gauge, other.dropped_gauge))

    def __sub__(self, other: "VermaVector") -> "VermaVector":
        return self + other * -1

    def __mul__(self, c) -> "VermaVector":
        c = Fraction(c)
        return VermaVector(self.module, {B: v * c for B, v in self.terms.items()},
                           self.truncated, self.dropped_gauge)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, VermaVector) and self.terms == other.terms

    @property
    def max_height(self) -> int:
        return max((self.module.height(B) for B in self.terms), default=-1)

    def components(self) -> dict:
        """Weight components keyed by ``beta``."""
        out: dict = {}
        for B, c in self.terms.items():
            out.setdefault(self.module.beta(B), {})[B] = c
        return {k: VermaVector(self.module, v) for k, v in out.items()}

    def gauge(self, n: int) -> float:
        p = self.module.p
        return min((coefficient_gauge(c, sum(B), n, p) for B, c in self.terms.items()),
                   default=INF)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for B in sorted(self.terms, key=lambda b: (self.module.height(b), b)):
            c = self.terms[B]
            mono = "*".join(
                f"f{k + 1}" + (f"^{b}" if b > 1 else "") for k, b in enumerate(B) if b
            )
            parts.append(f"{c}*{mono}v" if mono else f"{c}*v")
        return " + ".join(parts)


@dataclass
class AffinoidVector:
    """Finite explicit part plus a staircase bounding the unseen tail."""

    explicit: VermaVector
    tail: GaugeStaircase
    deformation_level: int = 1

    def certificate(self):
        m = self.explicit.module
        return certify_convergence(
            self.explicit.terms, self.deformation_level, self.tail, m.p, m.height
        )


class VermaModule:
    def __init__(self, algebra: UEA, weight: Weight, height_cap: int = 12):
        self.U = algebra
        self.lie = algebra.lie
        self.rs: RootSystem = algebra.rs
        self.p = algebra.p
        self.weight = weight
        self.height_cap = height_cap
        self.m = self.lie.m
        self.r = self.rs.rank
        self.root_heights = tuple(r.height for r in self.rs.positive_roots)
        self._gen: dict = {}
        self._spaces: dict | None = None

    @classmethod
    def of(cls, rs: RootSystem, weight, height_cap: int = 12, p: int = 5):
        if not isinstance(weight, Weight):
            weight = Weight(tuple(weight))
        return cls(UEA.of(rs, p), weight, height_cap)

    # bookkeeping -----------------------------------------------------------

    @property
    def Lambda(self) -> Fraction:
        """``lam(delta)``."""
        return self.rs.evaluate(self.weight, self.rs.delta)

    def height(self, B: Sequence[int]) -> int:
        return sum(b * h for b, h in zip(B, self.root_heights))

    def beta(self, B: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.r
        for k, b in enumerate(B):
            if b:
                for i, c in enumerate(self.rs.positive_roots[k].coeffs):
                    out[i] += b * c
        return tuple(out)

    def weight_of(self, B) -> Weight:
        return self.rs.shift(self.weight, self.beta(B))

    def weight_of_beta(self, beta) -> Weight:
        return self.rs.shift(self.weight, beta)

    def beta_of_weight(self, mu: Weight) -> tuple[int, ...]:
        """Solve ``lam - mu = sum beta_i alpha_i``; domain error unless
        ``beta`` is a nonnegative integer vector."""
        A = self.rs.cartan_matrix
        diff = [self.weight[j] - mu[j] for j in range(self.r)]
        sol = solve_square([[A[j][i] for i in range(self.r)] for j in range(self.r)], diff)
        if any(x.denominator != 1 or x < 0 for x in sol):
            raise WeightDomainError(f"{mu} is not a weight of M({self.weight})")
        return tuple(int(x) for x in sol)

    def vector(self, terms: dict) -> VermaVector:
        return VermaVector(self, terms)

    def highest(self) -> VermaVector:
        return VermaVector(self, {(0,) * self.m: Fraction(1)})

    def basis_vector(self, B) -> VermaVector:
        return VermaVector(self, {tuple(B): Fraction(1)})

    def exponents(self, max_height: int | None = None) -> list[tuple]:
        H = self.height_cap if max_height is None else max_height
        out = []

        def rec(k, left, cur):
            if k == self.m:
                out.append(tuple(cur))
                return
            h = self.root_heights[k]
            for b in range(left // h + 1):
                cur.append(b)
                rec(k + 1, left - b * h, cur)
                cur.pop()

        rec(0, H, [])
        return sorted(out, key=lambda B: (self.height(B), B))

    def weight_spaces(self) -> dict:
        """``beta -> sorted list of B`` for all heights up to the cap."""
        if self._spaces is None:
            spaces: dict = {}
            for B in self.exponents():
                spaces.setdefault(self.beta(B), []).append(B)
            self._spaces = spaces
        return self._spaces

    def space(self, beta) -> list:
        if sum(beta) <= self.height_cap:
            return self.weight_spaces().get(tuple(beta), [])
        out = [B for B in self.exponents(sum(beta)) if self.beta(B) == tuple(beta)]
        return out

    # action ----------------------------------------------------------------

    def _pad(self, B) -> tuple:
        return tuple(B) + (0,) * (self.lie.dim - self.m)

    def gen_act(self, pos: int, B: tuple) -> dict:
        """Basis element ``pos`` of the Lie algebra applied to ``f^B v``."""
        key = (pos, B)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        kind = self.lie.kind(pos)
        if kind == "F":
            out = {
                t[: self.m]: Fraction(c)
                for t, c in self.U.left_mul_gen(pos, self._pad(B)).items()
            }
        elif kind == "H":
            i = pos - self.m
            val = self.weight[i] - self.rs.pairing(self.beta(B), i)
            out = {B: val} if val else {}
        else:
            j = next((k for k, b in enumerate(B) if b), None)
            if j is None:
                out = {}
            else:
                rest = list(B)
                rest[j] -= 1
                rest = tuple(rest)
                out = {}
                # e f_j w = f_j (e w) + [e, f_j] w
                for B2, c in self.gen_act(pos, rest).items():
                    add_scaled(out, self.gen_act(self.lie.f(j), B2), c)
                for q, c in self.lie.bracket(pos, self.lie.f(j)).items():
                    add_scaled(out, self.gen_act(q, rest), c)
        self._gen[key] = out
        return out

    def _act_mono(self, mono: tuple, B: tuple) -> dict:
        m, r = self.m, self.r
        cur = {B: Fraction(1)}
        # e block, rightmost factor first
        for pos in range(self.lie.dim - 1, m + r - 1, -1):
            for _ in range(mono[pos]):
                nxt: dict = {}
                for B2, c in cur.items():
                    add_scaled(nxt, self.gen_act(pos, B2), c)
                cur = nxt
                if not cur:
                    return cur
        hexp = mono[m:m + r]
        if any(hexp):
            nxt = {}
            for B2, c in cur.items():
                beta = self.beta(B2)
                val = c
                for i, a in enumerate(hexp):
                    if a:
                        val *= (self.weight[i] - self.rs.pairing(beta, i)) ** a
                if val:
                    nxt[B2] = val
            cur = nxt
        fpart = mono[:m]
        if any(fpart):
            fm = self._pad(fpart)
            nxt = {}
            for B2, c in cur.items():
                for t, v in self.U.mul_mono(fm, self._pad(B2)).items():
                    add_scaled(nxt, {t[:m]: v}, c)
            cur = nxt
        return cur

    def act(self, u: UEAElement, v: VermaVector, truncate: bool = True) -> VermaVector:
        """``u . v``; terms above the cap are dropped and flagged."""
        out: dict = {}
        for mono, cu in u.terms.items():
            for B, cv in v.terms.items():
                add_scaled(out, self._act_mono(mono, B), cu * cv)
        res = VermaVector(self, out, v.truncated, v.dropped_gauge)
        if truncate:
            res = self.truncate(res)
        return res

    def truncate(self, v: VermaVector) -> VermaVector:
        """Drop terms above the cap, recording their least gauge at the
        weight's deformation level."""
        keep, dropped = {}, []
        for B, c in v.terms.items():
            if self.height(B) <= self.height_cap:
                keep[B] = c
            else:
                dropped.append(coefficient_gauge(c, sum(B), self.weight.deformation_level, self.p))
        if not dropped:
            return v
        return VermaVector(self, keep, True, min([v.dropped_gauge] + dropped))

    # height / delta / epsilon calculus -------------------------------------

    def delta_eigenvalue(self, B) -> Fraction:
        return self.Lambda - self.height(B)

    def apply_delta(self, v: VermaVector) -> VermaVector:
        return VermaVector(
            self, {B: c * self.delta_eigenvalue(B) for B, c in v.terms.items()}
        )

    def delta_operator(self) -> UEAElement:
        return self.U.delta()

    def epsilon_operator(self, i: int, j: int) -> UEAElement:
        """``binom(delta - Lambda + i + j, i)`` as an element of ``U(h)``."""
        x = self.U.delta() - self.Lambda + (i + j)
        return binomial_operator(x, i)

    def epsilon_apply(self, i: int, j: int, v: VermaVector) -> VermaVector:
        return VermaVector(
            self,
            {B: c * binomial(i + j - self.height(B), i) for B, c in v.terms.items()},
        )

    def separating_operator(self, mu: Weight, others: Iterable[Weight]):
        """``prod_s (h_s - nu_s(h_s))`` killing the weights in ``others``.

        Returns ``(operator, factor, choices)`` where ``factor`` is the scalar
        by which the operator acts on the ``mu`` weight space.  Each ``h_s`` is
        ``delta`` or a simple coroot; among those separating ``mu`` from
        ``nu_s`` the one whose difference has least p-adic valuation wins,
        earlier candidates breaking ties.
        """
        others = list(others)
        if any(nu.key() == mu.key() for nu in others):
            raise ValueError("target weight occurs among the weights to kill")
        candidates = [tuple(self.rs.delta)] + [
            tuple(Fraction(int(i == k)) for k in range(self.r)) for i in range(self.r)
        ]
        op = self.U.one()
        factor = Fraction(1)
        choices = []
        for nu in sorted(others, key=lambda w: w.key()):
            best = None
            for n, h in enumerate(candidates):
                diff = self.rs.evaluate(mu, h) - self.rs.evaluate(nu, h)
                if diff == 0:
                    continue
                score = valuation(diff, self.p)
                if best is None or score < best[0]:
                    best = (score, n, h, diff)
            _, n, h, diff = best
            op = op * (self.U.cartan(h) - self.rs.evaluate(nu, h))
            factor *= diff
            choices.append(("delta" if n == 0 else f"h{n}", nu, diff))
        return op, factor, choices

    # extraction ------------------------------------------------------------

    def projection(self, v: VermaVector, mu: Weight) -> VermaVector:
        beta = self.beta_of_weight(mu)
        return VermaVector(self, {B: c for B, c in v.terms.items() if self.beta(B) == beta})

    def extract_weight_component(self, u: AffinoidVector, mu: Weight) -> "Extraction":
        beta = self.beta_of_weight(mu)
        L = sum(beta)
        H = self.height_cap
        if L > H:
            raise TruncationError(f"weight at height {L} is above the cap {H}")
        v = u.explicit
        others = []
        for beta2 in sorted({self.beta(B) for B in v.terms}):
            if sum(beta2) == L and beta2 != beta:
                others.append(self.weight_of_beta(beta2))
        op, factor, choices = self.separating_operator(mu, others)
        stage = self.act(op, v) * (1 / factor)
        if L >= 1:
            stage = self.act(self.epsilon_operator(L - 1, 0), stage)
            shift = (self.U.delta() - self.Lambda) * Fraction((-1) ** L, L)
            stage = self.act(shift, stage)
        residual_gauges = []
        n = u.deformation_level
        for i in range(H - L + 1):
            ui = self.epsilon_apply(i, L, stage)
            rest = {B: c for B, c in ui.terms.items() if self.height(B) != L}
            residual_gauges.append(VermaVector(self, rest).gauge(n))
        final = self.act(self.epsilon_operator(H - L, L), stage)
        leftover = {B: c for B, c in final.terms.items() if self.height(B) != L}
        if leftover:  # pragma: no cover - contradicts the binomial identities
            raise RuntimeError("epsilon operators failed to isolate the component")
        shift = -valuation(factor, self.p)
        residual_tail = u.tail.shifted(shift) if shift else u.tail
        return Extraction(
            component=final,
            weight=mu,
            height=L,
            normalizer=factor,
            choices=choices,
            residual_gauges=residual_gauges,
            residual_tail=residual_tail,
            frontier=H + 1,
        )

    # singular vectors and submodules ---------------------------------------

    def simple_e_positions(self) -> list[int]:
        return [self.lie.e(i) for i in range(self.r)]

    def simple_f_positions(self) -> list[int]:
        return [self.lie.f(i) for i in range(self.r)]

    def apply_gen(self, pos: int, v: dict) -> dict:
        out: dict = {}
        for B, c in v.items():
            add_scaled(out, self.gen_act(pos, B), c)
        return out

    def singular_vectors(self, quotient_by: "SubmoduleBasis | None" = None) -> list[VermaVector]:
        """Vectors of positive height killed by every ``e_i`` (modulo
        ``quotient_by`` when given), one basis per weight space, not lying in
        ``quotient_by``."""
        out = []
        for beta, Bs in sorted(self.weight_spaces().items(), key=lambda kv: (sum(kv[0]), kv[0])):
            if sum(beta) == 0:
                continue
            cols = {}
            for B in Bs:
                img = {}
                for i, pos in enumerate(self.simple_e_positions()):
                    w = self.gen_act(pos, B)
                    if quotient_by is not None:
                        low = tuple(b - (k == i) for k, b in enumerate(beta))
                        w = quotient_by.reduce(low, w)
                    for B2, c in w.items():
                        img[(i, B2)] = img.get((i, B2), 0) + c
                cols[B] = {k: v for k, v in img.items() if v}
            ker = kernel(cols)
            if quotient_by is not None:
                kept = Echelon()
                for vec in quotient_by.basis(beta):
                    kept.add(vec)
                fresh = []
                for vec in ker:
                    if kept.add(vec):
                        fresh.append(vec)
                ker = fresh
            out.extend(VermaVector(self, vec) for vec in ker)
        return out

    def submodule(self, generators: Iterable[VermaVector] = ()) -> "SubmoduleBasis":
        sub = SubmoduleBasis(self)
        sub.generate(generators)
        return sub

    def maximal_submodule(self) -> "SubmoduleBasis":
        """Largest proper submodule below the cap, as a fixpoint of adding
        vectors that are singular modulo the current submodule."""
        N = SubmoduleBasis(self)
        rounds = 0
        while True:
            new = self.singular_vectors(quotient_by=N)
            if not new:
                break
            rounds += 1
            N.generate(new, provenance="singular")
        N.status = "exact-below-cap"
        N.rounds = rounds
        return N

    def whole(self) -> "SubmoduleBasis":
        return self.submodule([self.highest()])

    def submodule_lattice(self) -> list["SubmoduleBasis"]:
        """All submodules below the cap, for multiplicity-free weight spaces.

        Every submodule is a sum of cyclic submodules of weight vectors, and
        with one-dimensional weight spaces those are the basis vectors.
        """
        if any(len(Bs) > 1 for Bs in self.weight_spaces().values()):
            raise ValueError("lattice enumeration needs one-dimensional weight spaces")
        cyclic = [SubmoduleBasis(self)]
        for B in self.exponents():
            cyclic.append(self.submodule([self.basis_vector(B)]))
        lattice: list = []
        for S in cyclic:
            if not any(S == T for T in lattice):
                lattice.append(S)
        changed = True
        while changed:
            changed = False
            for a in list(lattice):
                for b in list(lattice):
                    s = a.sum(b)
                    if not any(s == T for T in lattice):
                        lattice.append(s)
                        changed = True
        return sorted(lattice, key=lambda S: S.dimension())


def binomial(x: int, i: int) -> Fraction:
    """Generalised binomial ``x (x-1) ... (x-i+1) / i!`` for integer ``x``."""
    num = 1
    for l in range(i):
        num *= x - l
    return Fraction(num, math.factorial(i))


@dataclass
class Extraction:
    component: VermaVector
    weight: Weight
    height: int
    normalizer: Fraction
    choices: list
    residual_gauges: list
    residual_tail: GaugeStaircase
    frontier: int

    @property
    def frontier_gauge(self) -> float:
        return self.residual_tail(self.frontier)


class SubmoduleBasis:
    """Per-weight-space echelon bases of a subspace of ``M(lam)`` below the cap."""

    def __init__(self, module: VermaModule):
        self.module = module
        self.spaces: dict = {}
        self.generators: list = []
        self.status = "exact-below-cap"
        self.rounds = 0

    def _space(self, beta) -> Echelon:
        ech = self.spaces.get(beta)
        if ech is None:
            ech = self.spaces[beta] = Echelon()
        return ech

    def basis(self, beta) -> list[dict]:
        ech = self.spaces.get(tuple(beta))
        return ech.basis() if ech else []

    def reduce(self, beta, vec: dict) -> dict:
        ech = self.spaces.get(tuple(beta))
        if ech is None:
            return vec
        return ech.reduce(vec)[0]

    def contains(self, v: VermaVector) -> bool:
        for beta, comp in v.components().items():
            if self.reduce(beta, comp.terms):
                return False
        return True

    def add_vector(self, v: VermaVector) -> list:
        new = []
        for beta, comp in v.components().items():
            if sum(beta) > self.module.height_cap:
                continue
            ech = self._space(beta)
            if ech.add(comp.terms):
                new.append((beta, comp.terms))
        return new

    def generate(self, generators: Iterable[VermaVector], provenance: str = "user") -> None:
        M = self.module
        queue = []
        for g in generators:
            self.generators.append((provenance, g))
            queue.extend(self.add_vector(g))
        positions = M.simple_e_positions() + M.simple_f_positions()
        while queue:
            beta, vec = queue.pop()
            for pos in positions:
                img = M.apply_gen(pos, vec)
                if img:
                    queue.extend(self.add_vector(VermaVector(M, img)))

    def dimensions(self) -> dict:
        return {beta: len(e) for beta, e in sorted(self.spaces.items()) if len(e)}

    def dimension(self) -> int:
        return sum(len(e) for e in self.spaces.values())

    def vectors(self) -> list[VermaVector]:
        out = []
        for beta in sorted(self.spaces, key=lambda b: (sum(b), b)):
            out.extend(VermaVector(self.module, vec) for vec in self.spaces[beta].basis())
        return out

    def __le__(self, other: "SubmoduleBasis") -> bool:
        return all(other.contains(v) for v in self.vectors())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubmoduleBasis):
            return NotImplemented
        return self.dimensions() == other.dimensions() and self <= other

    def sum(self, other: "SubmoduleBasis") -> "SubmoduleBasis":
        out = SubmoduleBasis(self.module)
        for v in self.vectors() + other.vectors():
            out.add_vector(v)
        return out

    def quotient_dimensions(self) -> dict:
        M = self.module
        out = {}
        for beta, Bs in M.weight_spaces().items():
            d = len(Bs) - len(self.spaces.get(beta, ()))
            if d:
                out[beta] = d
        return out


def composition_length_classical(rs: RootSystem, weight: Weight) -> int:
    """Number of dot-linked weights ``mu <= lam`` (multiplicity free case);
    for rank one this is the classical length of ``M(lam)``."""
    count = 0
    for mu in rs.dot_orbit(weight):
        diff = weight - mu
        A = rs.cartan_matrix
        sol = solve_square([[A[j][i] for i in range(rs.rank)] for j in range(rs.rank)], list(diff))
        if all(x.denominator == 1 and x >= 0 for x in sol):
            count += 1
    return count


# random samples ------------------------------------------------------------


def random_affinoid_vector(module: VermaModule, rng: random.Random, n: int = 1,
                           tail: GaugeStaircase | None = None, density: float = 0.7,
                           support: Iterable[tuple] | None = None) -> AffinoidVector:
    """Random explicit part whose gauges sit on or above ``tail``."""
    tail = tail or GaugeStaircase.linear(1)
    p = module.p
    terms = {}
    for B in support if support is not None else module.exponents():
        if rng.random() > density:
            continue
        c = Fraction(rng.randint(1, 4 * p), rng.choice([1, 1, 2, 3]))
        need = tail(module.height(B)) + n * sum(B) - valuation(c, p)
        if need > 0:
            c *= Fraction(p) ** math.ceil(need)
        terms[B] = c
    return AffinoidVector(VermaVector(module, terms), tail, n)


def simple_quotient(module: VermaModule) -> dict:
    """Weight multiplicities of ``L(lam) = M(lam)/N(lam)`` below the cap."""
    return module.maximal_submodule().quotient_dimensions()


def lattice_length(lattice: list[SubmoduleBasis]) -> int:
    """Length of the longest strict chain in a finite lattice of submodules."""
    ordered = sorted(lattice, key=lambda S: S.dimension())
    depth: list[int] = []
    for k, S in enumerate(ordered):
        below = [depth[j] for j, T in enumerate(ordered[:k])
                 if T.dimension() < S.dimension() and T <= S]
        depth.append(1 + max(below, default=-1))
    return max(depth, default=0)


def random_submodule_element(N: SubmoduleBasis, rng: random.Random, n: int = 1,
                             tail: GaugeStaircase | None = None, terms: int = 4) -> AffinoidVector:
    """Random element of the completion of ``N``: a combination of
    ``u . g`` for generators ``g`` and random PBW monomials ``u``, rescaled per
    weight space so the explicit part meets ``tail``."""
    M = N.module
    tail = tail or GaugeStaircase.linear(1)
    gens = [g for _, g in N.generators] or N.vectors()
    total = VermaVector(M, {})
    if gens:
        monos = M.U.monomials(2)
        for _ in range(terms):
            g = rng.choice(gens)
            u = M.U.element({rng.choice(monos): Fraction(rng.randint(1, 9), rng.choice([1, 2, 3]))})
            total = total + M.act(u, g)
        for vec in rng.sample(N.vectors(), min(terms, len(N.vectors()))):
            total = total + vec * rng.randint(1, 9)
    out: dict = {}
    for beta, comp in total.components().items():
        need = max(
            (tail(M.height(B)) + n * sum(B) - valuation(c, M.p) for B, c in comp.terms.items()),
            default=0,
        )
        scale = Fraction(M.p) ** max(0, math.ceil(need))
        out.update({B: c * scale for B, c in comp.terms.items()})
    return AffinoidVector(VermaVector(M, out), tail, n)


def correspondence_roundtrip(N: SubmoduleBasis, samples: int, staircase: GaugeStaircase,
                             rng: random.Random, n: int = 1) -> dict:
    """Extract every weight component of random elements of ``N``'s
    completion and check that each lies in ``N`` and equals the projection."""
    M = N.module
    report = {"samples": [], "ok": True}
    for s in range(samples):
        u = random_submodule_element(N, rng, n, staircase)
        cert = u.certificate()
        entry = {"certified": bool(cert), "components": 0, "failures": [], "frontier": []}
        for beta in sorted(u.explicit.components()):
            mu = M.weight_of_beta(beta)
            ex = M.extract_weight_component(u, mu)
            entry["components"] += 1
            entry["frontier"].append(ex.frontier_gauge)
            if not N.contains(ex.component):
                entry["failures"].append((beta, "not in submodule"))
            if ex.component != M.projection(u.explicit, mu):
                entry["failures"].append((beta, "differs from projection"))
        if not cert or entry["failures"]:
            report["ok"] = False
        report["samples"].append(entry)
    return report
