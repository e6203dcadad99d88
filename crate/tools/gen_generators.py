#!/usr/bin/env python3
"""Emit generator files for the shipped exceptional reflection groups.

Each group is described by a set of root vectors with entries in Q(zeta_n).
A small generating subset is chosen numerically (closure of root lines under
the reflections), then the corresponding reflection matrices
s = I - 2 a a^* / (a^* a) are written exactly, reduced modulo the n-th
cyclotomic polynomial.

Usage: python3 tools/gen_generators.py crates/core/data
"""
import itertools
import json
import sys
from fractions import Fraction

import numpy as np
import sympy


class Cyc:
    """Element of Q(zeta_n) stored as {exponent mod n: Fraction}."""

    def __init__(self, n, terms=None):
        self.n = n
        self.t = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                e %= n
                self.t[e] = self.t.get(e, 0) + c
        self.t = {e: c for e, c in self.t.items() if c}

    @staticmethod
    def rat(n, q):
        return Cyc(n, {0: q})

    @staticmethod
    def zeta(n, k=1):
        return Cyc(n, {k: 1})

    def __add__(self, o):
        o = self._lift(o)
        r = dict(self.t)
        for e, c in o.t.items():
            r[e] = r.get(e, 0) + c
        return Cyc(self.n, r)

    def __neg__(self):
        return Cyc(self.n, {e: -c for e, c in self.t.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __mul__(self, o):
        o = self._lift(o)
        r = {}
        for e1, c1 in self.t.items():
            for e2, c2 in o.t.items():
                k = (e1 + e2) % self.n
                r[k] = r.get(k, 0) + c1 * c2
        return Cyc(self.n, r)

    __rmul__ = __mul__
    __radd__ = __add__

    def _lift(self, o):
        if isinstance(o, Cyc):
            assert o.n == self.n
            return o
        return Cyc.rat(self.n, o)

    def conj(self):
        return Cyc(self.n, {-e: c for e, c in self.t.items()})

    def reduced(self):
        """Coefficients in the power basis 1..zeta^(phi-1)."""
        x = sympy.Symbol("x")
        phi = sympy.Poly(sympy.cyclotomic_poly(self.n, x), x)
        poly = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * x**e
                              for e, c in self.t.items()) + 0 * x, x, domain="QQ")
        rem = poly.rem(phi.set_domain("QQ"))
        deg = phi.degree()
        coeffs = [Fraction(0)] * deg
        for (e,), c in rem.terms():
            coeffs[e] = Fraction(int(c.p), int(c.q))
        return coeffs

    def as_rational(self):
        c = self.reduced()
        assert all(v == 0 for v in c[1:]), c
        return c[0]

    def to_complex(self):
        return sum(complex(c) * np.exp(2j * np.pi * e / self.n) for e, c in self.t.items())


def entry_json(z):
    coeffs = z.reduced()
    den = 1
    for c in coeffs:
        den = den * c.denominator // np.gcd(den, c.denominator)
    return {"den": int(den), "num": [int(c * den) for c in coeffs]}


def reflection(root):
    n = root[0].n
    dim = len(root)
    norm = sum((a * a.conj() for a in root), Cyc(n)).as_rational()
    scale = Fraction(2) / norm
    return [[Cyc.rat(n, 1 if i == j else 0) - scale * root[i] * root[j].conj()
             for j in range(dim)] for i in range(dim)]


def numeric_line_closure(roots, cap):
    def canon(v):
        v = v / np.linalg.norm(v)
        i = int(np.argmax(np.abs(v) > 1e-9))
        return v / (v[i] / abs(v[i]))

    def key(v):
        return tuple(np.round(np.concatenate([v.real, v.imag]), 6))

    lines = {}
    for r in roots:
        c = canon(r)
        lines[key(c)] = c
    changed = True
    while changed and len(lines) <= cap:
        changed = False
        cur = list(lines.values())
        for a in cur:
            refl = np.eye(len(a)) - 2 * np.outer(a, a.conj())
            for b in cur:
                c = canon(refl @ b)
                k = key(c)
                if k not in lines:
                    lines[k] = c
                    changed = True
    return len(lines)


def choose_generators(roots, expected):
    numeric = [np.array([z.to_complex() for z in r]) for r in roots]
    chosen = []
    best = 0
    for i, v in enumerate(numeric):
        size = numeric_line_closure([numeric[j] for j in chosen] + [v], expected)
        if size > best:
            chosen.append(i)
            best = size
        if best == expected:
            break
    assert best == expected, (best, expected)
    return [roots[i] for i in chosen]


def restrict_to_sum_zero(mat):
    """Matrix of an operator preserving {sum x = 0} in the basis e_k - e_last."""
    dim = len(mat)
    out = []
    for j in range(dim - 1):
        row = []
        for k in range(dim - 1):
            # image of b_k = e_k - e_last, coordinate j
            row.append(mat[j][k] - mat[j][dim - 1])
        out.append(row)
    return out


def write(path, name, rank, conductor, expected, order, mats):
    data = {
        "name": name,
        "rank": rank,
        "conductor": conductor,
        "expected_reflection_count": expected,
        "order": order,
        "generators": [[[entry_json(z) for z in row] for row in m] for m in mats],
    }
    with open(path, "w") as f:
        json.dump(data, f, indent=1)
        f.write("\n")


def vec(n, *xs):
    return [x if isinstance(x, Cyc) else Cyc.rat(n, x) for x in xs]


def pauli(n, i_unit, nx, ny, nz):
    """n . sigma for a unit axis (nx, ny, nz) with entries in Q(zeta_n)."""
    return [[nz, nx - i_unit * ny], [nx + i_unit * ny, -nz]]


def main(outdir):
    # G12, G13: half-turn axes of the octahedral group lifted to U(2).
    n = 8
    i8 = Cyc.zeta(8, 2)
    sqrt2 = Cyc.zeta(8, 1) + Cyc.zeta(8, 7)
    h = sqrt2 * Fraction(1, 2)
    z = Cyc.rat(8, 0)
    one = Cyc.rat(8, 1)
    edge = [(h, h, z), (h, z, h), (z, h, h)]
    g12 = [pauli(8, i8, *a) for a in edge]
    write(f"{outdir}/G12.json", "G12", 2, 8, 12, 48, g12)
    g13 = [pauli(8, i8, *edge[0]), pauli(8, i8, *edge[1]), pauli(8, i8, one, z, z)]
    write(f"{outdir}/G13.json", "G13", 2, 8, 18, 96, g13)

    # G22: half-turn axes of the icosahedral group.
    n = 20
    i20 = Cyc.zeta(20, 5)
    tau = -(Cyc.zeta(20, 8) + Cyc.zeta(20, 12))
    tinv = tau - 1
    half = Fraction(1, 2)
    z = Cyc.rat(20, 0)
    one = Cyc.rat(20, 1)
    g22 = [pauli(20, i20, one, z, z),
           pauli(20, i20, half * one, half * tau, half * tinv),
           pauli(20, i20, z, one, z)]
    write(f"{outdir}/G22.json", "G22", 2, 20, 30, 240, g22)

    # G24: Klein configuration over Q(sqrt(-7)).
    n = 7
    lam = Cyc.zeta(7, 1) + Cyc.zeta(7, 2) + Cyc.zeta(7, 4)
    lamc = lam.conj()
    roots = []
    for p in range(3):
        v = [Cyc.rat(n, 0)] * 3
        v[p] = Cyc.rat(n, 2)
        roots.append(v)
    for p in range(3):
        for s in (1, -1):
            v = [lam, lam, lam]
            v[p] = Cyc.rat(n, 0)
            v[(p + 2) % 3] = v[(p + 2) % 3] * s
            roots.append(v)
    for p in range(3):
        for s1, s2 in itertools.product((1, -1), repeat=2):
            v = [Cyc.rat(n, 1)] * 3
            v[p] = lamc
            v[(p + 1) % 3] = v[(p + 1) % 3] * s1
            v[(p + 2) % 3] = v[(p + 2) % 3] * s2
            roots.append(v)
    gens = choose_generators(roots, 21)
    write(f"{outdir}/G24.json", "G24", 3, 7, 21, 336, [reflection(r) for r in gens])

    # G27: icosahedral H3 roots plus one root over Q(zeta_3).
    n = 15
    w = Cyc.zeta(15, 5)
    tau = -(Cyc.zeta(15, 6) + Cyc.zeta(15, 9))
    tinv = tau - 1
    roots = [vec(n, 1, 0, 0), vec(n, 0, 1, 0), vec(n, 0, 0, 1)]
    for p in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
        for s0, s1 in itertools.product((1, -1), repeat=2):
            base = [Cyc.rat(n, Fraction(1, 2)), tau * Fraction(s0, 2), tinv * Fraction(s1, 2)]
            v = [None] * 3
            for idx, pi in enumerate(p):
                v[pi] = base[idx]
            roots.append(v)
    roots.append(vec(n, 0, 1, w))
    gens = choose_generators(roots[::-1], 45)
    write(f"{outdir}/G27.json", "G27", 3, 15, 45, 2160, [reflection(r) for r in gens])

    # G29, G31 over Z[i].
    n = 4
    iu = Cyc.zeta(4, 1)
    monomial = []
    for a, b in itertools.combinations(range(4), 2):
        for k in range(4):
            v = [Cyc.rat(n, 0)] * 4
            v[a] = Cyc.rat(n, 1)
            v[b] = -Cyc.zeta(4, k)
            monomial.append(v)
    coord = [[Cyc.rat(n, 1 if j == i else 0) for j in range(4)] for i in range(4)]

    def quarter(cond):
        out = []
        for a, b, c in itertools.product(range(4), repeat=3):
            if cond(a + b + c):
                out.append([Cyc.rat(n, 1), Cyc.zeta(4, a), Cyc.zeta(4, b), Cyc.zeta(4, c)])
        return out

    roots29 = quarter(lambda s: s % 4 == 0) + monomial
    gens = choose_generators(roots29, 40)
    write(f"{outdir}/G29.json", "G29", 4, 4, 40, 7680, [reflection(r) for r in gens])
    roots31 = quarter(lambda s: s % 2 == 0) + coord + monomial
    gens = choose_generators(roots31, 60)
    write(f"{outdir}/G31.json", "G31", 4, 4, 60, 46080, [reflection(r) for r in gens])

    # G34 over Z[omega]; G33 is the parabolic fixing the root (1,...,1).
    n = 3
    monomial = []
    for a, b in itertools.combinations(range(6), 2):
        for k in range(3):
            v = [Cyc.rat(n, 0)] * 6
            v[a] = Cyc.rat(n, 1)
            v[b] = -Cyc.zeta(3, k)
            monomial.append(v)
    phases = []
    for exps in itertools.product(range(3), repeat=6):
        if sum(exps) % 3 == 0:
            phases.append([Cyc.zeta(3, e) for e in exps])
    roots34 = phases + monomial
    gens = choose_generators(roots34, 126)
    write(f"{outdir}/G34.json", "G34", 6, 3, 126, 39191040, [reflection(r) for r in gens])

    def perp_to_ones(v):
        s = Cyc.rat(n, 0)
        for x in v:
            s = s + x
        return not any(s.reduced())

    roots33 = [r for r in roots34 if perp_to_ones(r)]
    gens = choose_generators(roots33, 45)
    mats = [restrict_to_sum_zero(reflection(r)) for r in gens]
    write(f"{outdir}/G33.json", "G33", 5, 3, 45, 51840, mats)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/data")
