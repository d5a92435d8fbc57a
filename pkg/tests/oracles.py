"""Independent reference computations used by the tests."""

from fractions import Fraction
import itertools


def reflection_closure(cartan):
    """Positive roots by repeatedly reflecting simple roots, written from
    scratch (no sorting conventions, returns a set)."""
    r = len(cartan)
    simple = [tuple(int(i == k) for i in range(r)) for k in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for root in frontier:
            for i in range(r):
                pair = sum(root[j] * cartan[i][j] for j in range(r))
                new = tuple(root[j] - pair * (i == j) for j in range(r))
                if new not in seen and all(x >= 0 for x in new) and any(new):
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return seen


def mat_zero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def unit(n, i, j):
    m = mat_zero(n)
    m[i][j] = Fraction(1)
    return m


def mat_mul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def mat_add(a, b, s=1):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def commutator(a, b):
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def sl_realization(lie):
    """Matrices of every Chevalley basis element of sl_{r+1}: simple
    generators are the elementary matrices, the rest follow from the table's
    own brackets ``[e_i, e_beta] = N e_gamma``."""
    rs = lie.rs
    r = rs.rank
    n = r + 1
    img = {}
    for i in range(r):
        img[lie.e(i)] = unit(n, i, i + 1)
        img[lie.f(i)] = unit(n, i + 1, i)
        img[lie.h(i)] = mat_add(unit(n, i, i), unit(n, i + 1, i + 1), -1)
    for k, root in enumerate(rs.positive_roots):
        if root.height == 1:
            continue
        for i in range(r):
            prev = tuple(c - (j == i) for j, c in enumerate(root.coeffs))
            if prev in rs.root_index and lie.e(rs.root_index[prev]) in img:
                kb = rs.root_index[prev]
                coeff = lie.bracket(lie.e(i), lie.e(kb))[lie.e(k)]
                img[lie.e(k)] = mat_scale(commutator(img[lie.e(i)], img[lie.e(kb)]), Fraction(1, coeff))
                coeff = lie.bracket(lie.f(kb), lie.f(i))[lie.f(k)]
                img[lie.f(k)] = mat_scale(commutator(img[lie.f(kb)], img[lie.f(i)]), Fraction(1, coeff))
                break
    return img


def represent(U, element, img):
    """Image of a PBW element under the matrix representation ``img``."""
    n = len(next(iter(img.values())))
    total = mat_zero(n)
    for mono, c in element.terms.items():
        m = identity(n)
        for pos, a in enumerate(mono):
            for _ in range(a):
                m = mat_mul(m, img[pos])
        total = mat_add(total, mat_scale(m, c))
    return total


def sl2_verma_matrix_action(m, word, k):
    """Apply a word in e, f, h (letters) to f^k v in M(m) using the textbook
    formulas f.f^k v = f^{k+1} v, h.f^k v = (m-2k) f^k v,
    e.f^k v = k(m-k+1) f^{k-1} v."""
    vec = {k: Fraction(1)}
    for letter in reversed(word):
        out = {}
        for j, c in vec.items():
            if letter == "f":
                out[j + 1] = out.get(j + 1, 0) + c
            elif letter == "h":
                out[j] = out.get(j, 0) + c * (m - 2 * j)
            elif letter == "e" and j > 0:
                out[j - 1] = out.get(j - 1, 0) + c * j * (m - j + 1)
        vec = {j: c for j, c in out.items() if c}
    return vec


def sl2_casimir_dims(d):
    """dim of (U(Omega - c)) cap U_{<=d}, from the Hilbert function of
    S(sl2)/(Casimir symbol): dim S_{<=d} - dim S_{<=d-2} is the quotient."""
    from math import comb
    return [comb(k + 1, 3) for k in range(d + 1)]


def all_words(letters, max_len):
    for L in range(max_len + 1):
        yield from itertools.product(letters, repeat=L)
