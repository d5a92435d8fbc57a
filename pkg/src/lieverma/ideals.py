"""Two-sided ideals of U(g) at a PBW-degree cap and the checks built on them.

An :class:`IdealBasis` stores ``I`` intersected with ``U_{<=d}`` as an echelon
form whose pivots are leading monomials under (degree, exponent) order, so the
part of degree at most ``k`` is spanned by the rows of leading degree ``<= k``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .enveloping import UEA, UEAElement, monomial_order
from .linalg import Echelon, add_scaled
from .padic import valuation
from .roots import Weight, build_root_system
from .verma import SubmoduleBasis, TruncationError, VermaModule, VermaVector


class UnsupportedScopeError(ValueError):
    pass


def _deg(mono) -> int:
    return sum(mono)


class IdealBasis:
    def __init__(self, algebra: UEA, degree_cap: int, status: str = "exact"):
        self.U = algebra
        self.degree_cap = degree_cap
        self.echelon = Echelon(monomial_order)
        self.generators: list[tuple[str, UEAElement]] = []
        self.status = status
        self.notes: list[str] = []

    @classmethod
    def from_elements(cls, algebra: UEA, elements: Iterable, degree_cap: int,
                      status: str = "exact") -> "IdealBasis":
        out = cls(algebra, degree_cap, status)
        for el in elements:
            terms = el.terms if isinstance(el, UEAElement) else el
            if terms and max(map(_deg, terms)) <= degree_cap:
                out.echelon.add(terms)
        return out

    def rows(self, max_degree: int | None = None) -> list[UEAElement]:
        k = self.degree_cap if max_degree is None else max_degree
        return [
            self.U.element(dict(row)) for row in self.echelon.basis()
            if _deg(max(row, key=monomial_order)) <= k
        ]

    def per_degree_dims(self) -> list[int]:
        """``dim(I cap U_{<=k})`` for ``k = 0..d``."""
        counts = [0] * (self.degree_cap + 1)
        for pivot in self.echelon.rows:
            counts[_deg(pivot)] += 1
        out, total = [], 0
        for c in counts:
            total += c
            out.append(total)
        return out

    def contains(self, a: UEAElement) -> bool:
        if a.degree > self.degree_cap:
            raise TruncationError(f"degree {a.degree} is above the cap {self.degree_cap}")
        return self.echelon.contains(a.terms)

    def contains_ideal(self, other: "IdealBasis") -> bool:
        k = min(self.degree_cap, other.degree_cap)
        return all(self.echelon.contains(r.terms) for r in other.rows(k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealBasis):
            return NotImplemented
        k = min(self.degree_cap, other.degree_cap)
        return (self.per_degree_dims()[: k + 1] == other.per_degree_dims()[: k + 1]
                and other.contains_ideal(self))

    def restricted(self, degree_cap: int) -> "IdealBasis":
        out = IdealBasis.from_elements(self.U, self.rows(degree_cap), degree_cap, self.status)
        out.generators = list(self.generators)
        return out

    def __repr__(self) -> str:
        return f"IdealBasis(d={self.degree_cap}, dims={self.per_degree_dims()}, {self.status})"


# construction -----------------------------------------------------------------


def two_sided_closure(algebra: UEA, gens: Iterable[UEAElement], degree_cap: int,
                      slack: int = 2, provenance: str = "user") -> IdealBasis:
    """Saturate ``span(gens)`` under left and right multiplication by Lie
    generators inside ``U_{<=d+slack}``, then keep the part of degree ``<= d``.

    Without slack this is a lower bound for ``I cap U_{<=d}``; products that
    pass above ``d`` and cancel back down are caught up to ``slack`` extra
    degrees.
    """
    U = algebra
    gens = [g if isinstance(g, UEAElement) else U.scalar(g) for g in gens]
    D = degree_cap + slack
    work = Echelon(monomial_order)
    queue = []

    def insert(vec: dict) -> None:
        residual, _ = work.reduce(vec)
        if residual:
            work.add(residual)
            queue.append(work.rows[max(residual, key=monomial_order)])

    for g in gens:
        if g.terms and g.degree <= D:
            insert(g.terms)
    unit = [U._unit(pos) for pos in range(U.N)]
    while queue:
        row = queue.pop()
        if max(map(_deg, row)) + 1 > D:
            continue
        for pos in range(U.N):
            left: dict = {}
            right: dict = {}
            for mono, c in row.items():
                add_scaled(left, U.left_mul_gen(pos, mono), c)
                add_scaled(right, U.mul_mono(mono, unit[pos]), c)
            for prod in (left, right):
                if prod:
                    insert(prod)
    out = IdealBasis(U, degree_cap, "saturated" if gens else "exact")
    for row in work.basis():
        if _deg(max(row, key=monomial_order)) <= degree_cap:
            out.echelon.add(row)
    out.generators = [(provenance, g) for g in gens]
    if gens and out.per_degree_dims()[0]:
        out.status = "exact"  # contains 1
    out.notes.append(f"saturation cap {D}")
    return out


def annihilator(algebra: UEA, action: Callable[[tuple], dict], degree_cap: int,
                status: str = "exact") -> IdealBasis:
    """Kernel of ``U_{<=d} -> End(V)``; ``action(mono)`` returns the image of a
    PBW monomial as one vector over all test vectors of ``V``."""
    U = algebra
    ech = Echelon(track=True)
    for mono in U.monomials(degree_cap):
        ech.add(action(mono), mono)
    out = IdealBasis.from_elements(U, ech.kernel, degree_cap, status)
    return out


class QuotientModule:
    """``M(lam)/N`` below the cap, with test vectors of height ``<= probe``."""

    def __init__(self, module: VermaModule, sub: SubmoduleBasis | None, probe: int):
        self.M = module
        self.N = sub
        self.probe = probe
        self.tests = [B for B in module.exponents(probe)
                      if self.reduce_vector({B: Fraction(1)})]

    def reduce_vector(self, vec: dict) -> dict:
        if self.N is None:
            return vec
        out: dict = {}
        for beta, comp in VermaVector(self.M, vec).components().items():
            add_scaled(out, self.N.reduce(beta, comp.terms), 1)
        return out

    def finite_within_cap(self) -> bool:
        """True when the quotient vanishes on a band of heights wide enough
        that nothing survives above the probe."""
        M = self.M
        if M.height_cap - self.probe < M.rs.max_root_height:
            return False
        for B in M.exponents():
            if M.height(B) > self.probe and self.reduce_vector({B: Fraction(1)}):
                return False
        return True

    def action(self, mono: tuple) -> dict:
        M = self.M
        out: dict = {}
        u = M.U.element({mono: Fraction(1)})
        for B in self.tests:
            img = M.act(u, M.basis_vector(B))
            if img.truncated:
                raise TruncationError("probe vectors leave the height cap")
            for B2, c in self.reduce_vector(img.terms).items():
                out[(B, B2)] = c
        return out

    def annihilator(self, degree_cap: int) -> IdealBasis:
        exact = self.finite_within_cap()
        ann = annihilator(self.M.U, self.action, degree_cap,
                          "exact" if exact else "truncated-superset")
        ann.notes.append(f"height cap {self.M.height_cap}, probe height {self.probe}")
        return ann


def module_annihilator(module: VermaModule, sub: SubmoduleBasis | None, degree_cap: int) -> IdealBasis:
    """Annihilator of ``M/sub`` using every probe vector whose orbit under
    ``U_{<=d}`` stays below the cap."""
    probe = module.height_cap - degree_cap * module.rs.max_root_height
    if probe < 0:
        raise TruncationError("height cap too small for the degree cap")
    return QuotientModule(module, sub, probe).annihilator(degree_cap)


# central-character ideals -----------------------------------------------------


def central_character_generators(algebra: UEA, weight: Weight) -> list[UEAElement]:
    omega = algebra.casimir()
    return [omega - algebra.central_character(omega, weight)]


def kernel_chi_ideal(algebra: UEA, weight: Weight, degree_cap: int, slack: int = 2) -> IdealBasis:
    return two_sided_closure(algebra, central_character_generators(algebra, weight),
                             degree_cap, slack, provenance="central-character")


def sl2_finite_ideal(algebra: UEA, m: int, degree_cap: int, slack: int = 2) -> IdealBasis:
    """Ideal generated by the central-character kernel and ``e^(m+1)``."""
    weight = Weight.of(m)
    gens = central_character_generators(algebra, weight)
    gens.append(algebra.e(0) ** (m + 1))
    out = two_sided_closure(algebra, gens, degree_cap, slack)
    out.generators = [("central-character", gens[0]), ("user", gens[1])]
    return out


# Joseph map -------------------------------------------------------------------


def joseph_map(ideal: IdealBasis, module: VermaModule) -> SubmoduleBasis:
    """``I . M(lam)`` below the cap, i.e. the submodule generated by ``I . v``."""
    if ideal.degree_cap > module.height_cap:
        raise TruncationError("degree cap exceeds height cap")
    v = module.highest()
    images = [module.act(row, v) for row in ideal.rows()]
    return module.submodule([w for w in images if not w.is_zero()])


def injectivity_check(I1: IdealBasis, I2: IdealBasis, module: VermaModule) -> dict:
    same_ideal = I1 == I2
    J1, J2 = joseph_map(I1, module), joseph_map(I2, module)
    same_image = J1 == J2
    return {
        "ideals_equal": same_ideal,
        "images_equal": same_image,
        "image_dims": [J1.dimension(), J2.dimension()],
        "ok": same_ideal or not same_image,
    }


def ann_quotient_check(ideal: IdealBasis, module: VermaModule, degree_cap: int) -> dict:
    """Compare ``I`` with ``Ann(M/IM)`` at the caps."""
    J = joseph_map(ideal, module)
    ann = module_annihilator(module, J, degree_cap)
    I = ideal.restricted(degree_cap)
    contained = ann.contains_ideal(I)
    equal = contained and I.contains_ideal(ann)
    exact = ann.status == "exact"
    return {
        "annihilator_dims": ann.per_degree_dims(),
        "ideal_dims": I.per_degree_dims(),
        "contained": contained,
        "equal": equal,
        "annihilator_status": ann.status,
        "ok": equal if exact else contained,
        "note": "" if exact else "quotient infinite below the cap; containment only",
    }


# Duflo check ------------------------------------------------------------------


def _as_integer(x: Fraction):
    return int(x) if x.denominator == 1 else None


def duflo_check(weight: Weight, n: int = 1, degree_cap: int | None = None,
                height_cap: int | None = None, p: int = 5) -> dict:
    """Match the candidate ideals over the central character of ``weight``
    (sl2 only) against annihilators of simple highest weight modules in the
    dot orbit."""
    if len(weight) != 1:
        raise UnsupportedScopeError("duflo_check is implemented for sl2 only")
    rs = build_root_system("A1")
    U = UEA.of(rs, p)
    lam = weight[0]
    m = _as_integer(lam)
    d = degree_cap if degree_cap is not None else 2 * max(m or 0, 0) + 4
    candidates = [("kernel-chi", kernel_chi_ideal(U, weight, d))]
    if m is not None and m >= 0:
        candidates.append(("finite-codim", sl2_finite_ideal(U, m, d)))
    orbit = rs.dot_orbit(weight)
    annihilators = {}
    for mu in orbit:
        H = height_cap if height_cap is not None else 3 * d + 2
        M = VermaModule(U, mu, H)
        N = M.maximal_submodule()
        annihilators[str(mu)] = module_annihilator(M, N, d)
    table = []
    ok = True
    for name, I in candidates:
        matches = [key for key, ann in annihilators.items() if ann == I]
        gauge = min((U.gauge(g, n) for _, g in I.generators), default=math.inf)
        table.append({
            "candidate": name,
            "dims": I.per_degree_dims(),
            "matches": matches,
            "generator_gauge": gauge,
        })
        ok = ok and bool(matches)
    return {
        "weight": str(weight),
        "degree_cap": d,
        "orbit": [str(mu) for mu in orbit],
        "annihilators": {k: {"dims": a.per_degree_dims(), "status": a.status}
                         for k, a in annihilators.items()},
        "candidates": table,
        "ok": ok,
    }


# controller check -------------------------------------------------------------


def left_span(algebra: UEA, gens: list[UEAElement], degree_cap: int, n: int = 0) -> Echelon:
    """Span of ``p^{n deg x} x . p^{n deg j} j`` over PBW monomials ``x``."""
    U = algebra
    ech = Echelon(monomial_order, track=True)
    for gi, j in enumerate(gens):
        jj = j * Fraction(U.p) ** (n * j.degree)
        for mono in U.monomials(degree_cap - j.degree):
            prod: dict = {}
            for t, c in jj.terms.items():
                add_scaled(prod, U.mul_mono(mono, t), c)
            ech.add({k: v * Fraction(U.p) ** (n * _deg(mono)) for k, v in prod.items()},
                    (gi, mono))
    return ech


def controller_generators(J: IdealBasis, degree_cap: int) -> tuple[int, list[UEAElement]]:
    """Smallest ``k`` such that a basis of ``J cap U_{<=k}`` generates
    ``J cap U_{<=d}`` as a left ideal at the cap."""
    target = J.per_degree_dims()[degree_cap] if J.echelon.rows else 0
    for k in range(degree_cap + 1):
        gens = J.rows(k)
        if len(left_span(J.U, gens, degree_cap)) == target:
            return k, gens
    return degree_cap, J.rows(degree_cap)


def controller_check(J: IdealBasis, n: int, degree_cap: int | None = None) -> dict:
    d = J.degree_cap if degree_cap is None else degree_cap
    U = J.U
    k0, gens = controller_generators(J, d)
    span = left_span(U, gens, d, n)
    failures = []
    worst = math.inf
    checked = 0
    for gi, i in enumerate(gens):
        for mono in U.monomials(d - i.degree):
            prod: dict = {}
            for t, c in i.terms.items():
                add_scaled(prod, U.mul_mono(t, mono), c)
            prod = {t: c * Fraction(U.p) ** (n * (i.degree + _deg(mono))) for t, c in prod.items()}
            checked += 1
            coords = span.coordinates(prod)
            if coords is None:
                failures.append((gi, mono))
            elif coords:
                worst = min(worst, min(valuation(c, U.p) for c in coords.values()))
    recovered = IdealBasis.from_elements(U, span.basis(), d)
    same = recovered == J.restricted(d)
    return {
        "generator_degree": k0,
        "generators": len(gens),
        "products_checked": checked,
        "membership_failures": failures,
        "trace_recovered": same,
        "coordinate_valuation": worst,
        "ok": not failures and same,
    }


# adjoint invariance -----------------------------------------------------------


def adjoint_invariance_check(I: IdealBasis, radii=(1, 5), generators=None) -> dict:
    U = I.U
    gens = generators if generators is not None else [g for _, g in I.generators] or I.rows()
    failures = []
    checked = 0
    for g in gens:
        for k in range(len(U.rs.positive_roots)):
            for negative in (False, True):
                for r in radii:
                    img = U.adjoint_group_action(k, r, g, negative=negative)
                    checked += 1
                    if not I.contains(img):
                        failures.append((str(g), k, negative, r))
    return {"checked": checked, "failures": failures, "ok": not failures}


def casimir_fixed_check(algebra: UEA, radii=(1, 5)) -> dict:
    omega = algebra.casimir()
    bad = []
    for k in range(len(algebra.rs.positive_roots)):
        for negative in (False, True):
            for r in radii:
                if algebra.adjoint_group_action(k, r, omega, negative=negative) != omega:
                    bad.append((k, negative, r))
    return {"failures": bad, "ok": not bad}


# torsion ----------------------------------------------------------------------


def random_element(algebra: UEA, rng: random.Random, max_degree: int = 3, terms: int = 4,
                   bound: int = 25) -> UEAElement:
    monos = algebra.monomials(max_degree)
    out = {}
    for _ in range(terms):
        c = rng.randint(-bound, bound)
        if c:
            out[rng.choice(monos)] = Fraction(c)
    return algebra.element(out)


def torsion_check(module: VermaModule, samples: Iterable[UEAElement],
                  N: SubmoduleBasis | None = None) -> dict:
    """``(1 + p z)(v + N) != 0`` with unit top coefficient ``1 + p lam(y)``."""
    M = module
    U = M.U
    N = N if N is not None else M.maximal_submodule()
    quotient = QuotientModule(M, N, 0)
    top = (0,) * M.m
    failures = []
    count = 0
    for z in samples:
        count += 1
        img = M.act(U.one() + z * U.p, M.highest())
        reduced = quotient.reduce_vector(img.terms)
        coeff = reduced.get(top, Fraction(0))
        expected = 1 + U.p * U.evaluate_cartan(U.cartan_projection(z), M.weight)
        if not reduced or coeff != expected or valuation(coeff, U.p) != 0:
            failures.append({"z": str(z), "coefficient": coeff, "expected": expected})
    return {"samples": count, "failures": failures, "ok": not failures}


# T-module and phi ---------------------------------------------------------------


@dataclass
class TModule:
    """``K_lam (x)_{U(b^-)} U(g)`` with basis ``1 (x) e^A`` below the cap."""

    algebra: UEA
    weight: Weight
    height_cap: int
    basis: list = field(default_factory=list)

    def __post_init__(self):
        rs = self.algebra.rs
        self.m = self.algebra.lie.m
        self.r = rs.rank
        self.heights = tuple(root.height for root in rs.positive_roots)
        self._verma = VermaModule(self.algebra, self.weight, self.height_cap)
        self.basis = self._verma.exponents()

    def height(self, A) -> int:
        return sum(a * h for a, h in zip(A, self.heights))

    def _pad(self, A) -> tuple:
        return (0,) * (self.m + self.r) + tuple(A)

    def right_act(self, t: dict, u: UEAElement) -> tuple[dict, bool]:
        """``t . u``; returns the truncated result and an overflow flag."""
        U = self.algebra
        m, r = self.m, self.r
        out: dict = {}
        for A, c in t.items():
            for mono, cu in u.terms.items():
                for t2, v in U.mul_mono(self._pad(A), mono).items():
                    if any(t2[:m]):
                        continue
                    val = Fraction(v) * c * cu
                    for i, a in enumerate(t2[m:m + r]):
                        if a:
                            val *= self.weight[i] ** a
                    if val:
                        add_scaled(out, {t2[m + r:]: val}, 1)
        keep = {A: c for A, c in out.items() if self.height(A) <= self.height_cap}
        return keep, len(keep) != len(out)

    def phi(self, t: dict) -> VermaVector:
        """``1 (x) x -> sigma(x) v_lam``."""
        U = self.algebra
        M = self._verma
        out = VermaVector(M, {})
        for A, c in t.items():
            img = M.act(U.sigma(U.element({self._pad(A): Fraction(1)})), M.highest())
            out = out + img * c
        return out

    @property
    def verma(self) -> VermaModule:
        return self._verma


def build_T_module(algebra: UEA, weight: Weight, height_cap: int) -> TModule:
    return TModule(algebra, weight, height_cap)


def phi_property_check(T: TModule, rng: random.Random, samples: int = 50,
                       max_degree: int = 3, ideal_generators: Iterable[UEAElement] = ()) -> dict:
    U = T.algebra
    M = T.verma
    # bijectivity per weight space
    spaces: dict = {}
    for A in T.basis:
        spaces.setdefault(M.beta(A), []).append(A)
    rank_failures = []
    for beta, As in spaces.items():
        ech = Echelon()
        for A in As:
            ech.add(T.phi({A: Fraction(1)}).terms)
        if len(ech) != len(M.space(beta)) or len(As) != len(M.space(beta)):
            rank_failures.append(beta)
    # phi(t u) = sigma(u) phi(t)
    law_failures = []
    low = [A for A in T.basis if T.height(A) <= max(1, T.height_cap // 3)]
    for s in range(samples):
        t = {rng.choice(low): Fraction(rng.randint(1, 9)) for _ in range(2)}
        u = random_element(U, rng, max_degree, terms=3, bound=9)
        tu, _ = T.right_act(t, u)
        left = T.phi(tu)
        right = M.act(U.sigma(u), T.phi(t))
        if left != right:
            law_failures.append(s)
    # phi(T I) = sigma(I) M
    span_ok = True
    gens = list(ideal_generators)
    if gens:
        a, b = Echelon(), Echelon()
        for g in gens:
            sg = U.sigma(g)
            for A in T.basis:
                tu, _ = T.right_act({A: Fraction(1)}, g)
                a.add(T.phi(tu).terms)
                b.add(M.act(sg, M.basis_vector(A)).terms)
        span_ok = len(a) == len(b) and all(b.contains(r) for r in a.basis())
    return {
        "weight_spaces": len(spaces),
        "rank_failures": rank_failures,
        "law_failures": law_failures,
        "ideal_image_equal": span_ok,
        "ok": not rank_failures and not law_failures and span_ok,
    }
