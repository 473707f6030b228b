"""Horizontal realization: boson Fock space, vertex-operator modes, vacuum
matrix coefficients, and their stable-subalgebra membership.

The quarter-power of the third parameter is kept rational by construction:
the parameter pack is built from a generic rational rho with q3 = rho^4.
Boson states are monomials in the creation modes, labelled by partitions;
all vertex-operator modes are finite-rank between graded pieces, so every
computation here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import comb, factorial

from .multipoly import MPoly
from .params import ToroidalParams
from .partitions import enum_partitions
from .shuffle import ShuffleElement

__all__ = [
    "horizontal_params",
    "boson_kappa",
    "boson_apply",
    "VertexSpec",
    "etilde_spec",
    "ftilde_spec",
    "psitilde_spec",
    "apply_vertex_mode",
    "tt3_check",
    "matrix_coeff_series",
    "closed_form_series",
    "horizontal_tensor_coeff",
    "single_factor_closed_form",
]


def horizontal_params(rho=Fraction(2), q1=Fraction(3), G=12):
    """Parameters with a rational fourth root of q3 = rho^4 adjoined from
    the start (q2 is then forced by q1 q2 q3 = 1)."""
    rho = Fraction(rho)
    q3 = rho ** 4
    q2 = 1 / (Fraction(q1) * q3)
    p = ToroidalParams(Fraction(q1), q2, (), G=G)
    p.rho = rho
    return p


def boson_kappa(params, n):
    """[a_n, a_-n] = n (1 - q1^n)/(1 - q2^-n) on the vacuum module."""
    n = abs(n)
    return n * (1 - params.q1 ** n) / (1 - params.q2 ** (-n))


def boson_apply(params, n, vec):
    """Apply a single boson mode to a state dict partition -> scalar."""
    out = {}
    if n == 0:
        return dict(vec)
    for mu, c in vec.items():
        if n < 0:
            new = tuple(sorted(mu + (-n,), reverse=True))
            out[new] = out.get(new, Fraction(0)) + c
        else:
            mult = mu.count(n)
            if mult:
                lst = list(mu)
                lst.remove(n)
                new = tuple(lst)
                out[new] = out.get(new, Fraction(0)) + c * mult * boson_kappa(params, n)
    return {k: v for k, v in out.items() if v}


class VertexSpec:
    """c * exp(sum u_n a_{-n} z^n) * exp(sum v_n a_n z^{-n})."""

    def __init__(self, c, u, v):
        self.c = c
        self.u = u  # creation coefficients, keyed by n >= 1
        self.v = v  # annihilation coefficients


def etilde_spec(params, c):
    q2 = params.q2
    return VertexSpec(c,
                      lambda n: (1 - q2 ** n) / n,
                      lambda n: -(1 - q2 ** (-n)) / n)


def ftilde_spec(params, c):
    q2, rho = params.q2, params.rho
    return VertexSpec(1 / c,
                      lambda n: -(1 - q2 ** n) * rho ** (2 * n) / n,
                      lambda n: (1 - q2 ** (-n)) * rho ** (2 * n) / n)


def psitilde_spec(params, sign):
    q2, q3, rho = params.q2, params.q3, params.rho
    if sign > 0:
        return VertexSpec(Fraction(1),
                          lambda n: Fraction(0),
                          lambda n: -(1 - q2 ** (-n)) * (1 - q3 ** n) / (rho ** n * n))
    return VertexSpec(Fraction(1),
                      lambda n: (1 - q2 ** n) * (1 - q3 ** n) / (rho ** n * n),
                      lambda n: Fraction(0))


def apply_vertex_mode(params, spec, k, vec):
    """Mode z^{-k} of the vertex operator applied to a state dict; exact."""
    from collections import Counter

    out = {}
    for mu, c0 in vec.items():
        counts = sorted(Counter(mu).items())
        choices = [[(n, t) for t in range(m + 1)] for n, m in counts]
        for pick in iproduct(*choices) if choices else [()]:
            acoef = c0 * spec.c
            removed = 0
            rest = []
            for (n, t) in pick:
                m = dict(counts)[n]
                if t:
                    acoef = acoef * comb(m, t) * (spec.v(n) * boson_kappa(params, n)) ** t
                removed += n * t
                rest.extend([n] * (m - t))
            if not acoef:
                continue
            created_weight = removed - k
            if created_weight < 0:
                continue
            base = tuple(sorted(rest, reverse=True))
            if created_weight == 0:
                out[base] = out.get(base, Fraction(0)) + acoef
                continue
            for nu in enum_partitions(created_weight):
                ccoef = acoef
                for n, t in sorted(Counter(nu).items()):
                    ccoef = ccoef * spec.u(n) ** t / factorial(t)
                new = tuple(sorted(base + nu, reverse=True))
                out[new] = out.get(new, Fraction(0)) + ccoef
    return {kk: v for kk, v in out.items() if v}


def tt3_check(params, c, window=2, degree_cap=2):
    """Modewise degree-truncated audit of the raising/lowering bracket
    against the shifted diagonal families:

        N [e~_i, f~_j] = gamma^{(i-j)/2} psi+_{i+j} - gamma^{(j-i)/2} psi-_{-(i+j)}

    The normalization N = (1 - q3^-1)/((1-q1)(1-q2)) is pinned by the
    vacuum matrix element of the bracket (the contraction kernel has
    residues (1-1/q1)(1-1/q2)/(1-q3) at its two poles); it differs from the
    three-factor prefactor one might expect by the unit
    (1-q1)(1-1/q1)(1-q2)(1-1/q2).
    """
    e = etilde_spec(params, c)
    f = ftilde_spec(params, c)
    pp = psitilde_spec(params, +1)
    pm = psitilde_spec(params, -1)
    q1, q2, q3 = params.qs
    rho = params.rho
    beta1 = (1 - 1 / q3) / ((1 - q1) * (1 - q2))
    fails = []
    for d in range(degree_cap + 1):
        for mu in enum_partitions(d):
            vec = {mu: Fraction(1)}
            for i in range(-window, window + 1):
                for j in range(-window, window + 1):
                    lhs = _vsub(apply_vertex_mode(params, e, i, apply_vertex_mode(params, f, j, vec)),
                                apply_vertex_mode(params, f, j, apply_vertex_mode(params, e, i, vec)))
                    lhs = {kk: v * beta1 for kk, v in lhs.items()}
                    k = i + j
                    rhs = {}
                    # the central square root acts by rho, so gamma acts
                    # by rho^2 and gamma^{(i-j)/2} by rho^{i-j}
                    if k >= 0:
                        r1 = apply_vertex_mode(params, pp, k, vec)
                        g = rho ** (i - j)
                        rhs = _vadd(rhs, {kk: v * g for kk, v in r1.items()})
                    if k <= 0:
                        r2 = apply_vertex_mode(params, pm, k, vec)
                        g = rho ** (j - i)
                        rhs = _vsub(rhs, {kk: v * g for kk, v in r2.items()})
                    resid = _vsub(lhs, rhs)
                    if resid:
                        fails.append((mu, i, j))
    return fails


def _vadd(u, v):
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, Fraction(0)) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _vsub(u, v):
    return _vadd(u, {k: -c for k, c in v.items()})


def matrix_coeff_series(params, c, n, order):
    """Vacuum expectation of n raising currents, times the pairwise kernel,
    as a truncated series in the consecutive ratios (n-1 variables)."""
    e = etilde_spec(params, c)
    vac = ()
    results = {}

    # walk operators right to left; d = degree before the current operator,
    # ds = intermediate degrees (d_1 .. d_{n-1}) collected so far
    def rec(pos, d, vec, ds, budget):
        if pos == 0:
            if d == 0 and vac in vec:
                results[ds] = results.get(ds, Fraction(0)) + vec[vac]
            return
        lo, hi = (0, 0) if pos == 1 else (0, order - budget)
        for d_next in range(lo, hi + 1):
            nv = apply_vertex_mode(params, e, d - d_next, vec)
            nv = {mu: cc for mu, cc in nv.items() if sum(mu) == d_next}
            if nv:
                nds = ((d_next,) + ds) if pos > 1 else ds
                rec(pos - 1, d_next, nv, nds,
                    budget + (d_next if pos > 1 else 0))

    rec(n, 0, {vac: Fraction(1)}, (), 0)
    out = MPoly.zero(n - 1)
    for ds, val in results.items():
        out = out + MPoly.monomial(n - 1, ds, val)
    kern = _kernel_series_product(params, n, order)
    return _truncate_total(out * kern, order)


def _kernel_series_product(params, n, order):
    q1, q2, q3 = params.qs
    # omega-series S(y) = (1-q1 y)(1-q2 y)(1-q3 y)/(1-y)^3 to the order
    coef = [Fraction(0)] * (order + 1)
    e1, e2, e3 = q1 + q2 + q3, q1 * q2 + q1 * q3 + q2 * q3, Fraction(1)
    num = [Fraction(1), -e1, e2, -e3]
    for k in range(order + 1):
        tot = Fraction(0)
        for t in range(0, min(3, k) + 1):
            tot += num[t] * comb(k - t + 2, 2)
        coef[k] = tot
    out = MPoly.const(n - 1, 1)
    for i in range(n):
        for j in range(i + 1, n):
            # y = z_j / z_i = u_i u_{i+1} ... u_{j-1}
            ser = MPoly.zero(n - 1)
            for k in range(order + 1):
                e = [0] * (n - 1)
                for t in range(i, j):
                    e[t] = k
                ser = ser + MPoly.monomial(n - 1, e, coef[k])
            out = _truncate_total(out * ser, order)
    return out


def _truncate_total(p, order):
    return MPoly(p.n, {e: c for e, c in p.d.items() if sum(e) <= order})


def closed_form_series(params, c, n, order):
    """The product formula for the vacuum coefficient, expanded in ratios."""
    q3 = params.q3
    pref = (-q3) ** (-(n * (n - 1) // 2))
    out = MPoly.const(n - 1, pref * c ** n)
    for i in range(n):
        for j in range(i + 1, n):
            # (1 - q3 y)(y - q3)/(1 - y)^2 expanded in y = z_j/z_i
            coef = []
            for k in range(order + 1):
                tot = Fraction(0)
                for t, numc in ((0, -q3), (1, 1 + q3 ** 2), (2, -q3)):
                    if k - t >= 0:
                        tot += numc * (k - t + 1)
                coef.append(tot)
            ser = MPoly.zero(n - 1)
            for k in range(order + 1):
                e = [0] * (n - 1)
                for t in range(i, j):
                    e[t] = k
                ser = ser + MPoly.monomial(n - 1, e, coef[k])
            out = _truncate_total(out * ser, order)
    return out


def single_factor_closed_form(params, c, n):
    """The vacuum coefficient of one factor as an exact shuffle element."""
    q3 = params.q3
    num = MPoly.const(n, (-q3) ** (-(n * (n - 1) // 2)) * c ** n)
    for i in range(n):
        for j in range(i + 1, n):
            zi, zj = MPoly.var(n, i), MPoly.var(n, j)
            num = num * (zi - q3 * zj) * (zj - q3 * zi)
    return ShuffleElement("m", n, num)


def horizontal_tensor_coeff(cs, n, params):
    """Vacuum coefficient of n raising currents on an m-fold product of
    vertex modules, as an exact shuffle element (sum over slot assignments)."""
    m = len(cs)
    q1, q2, q3 = params.qs
    total = MPoly.zero(n)
    for f in iproduct(range(m), repeat=n):
        term = MPoly.const(n, Fraction(1))
        for i in f:
            term = term * cs[i]
        for i in range(n):
            for j in range(i + 1, n):
                zi, zj = MPoly.var(n, i), MPoly.var(n, j)
                if f[i] == f[j]:
                    term = term * (zi - q3 * zj) * (zi - zj / q3) * (zi - zj)
                elif f[i] > f[j]:
                    term = term * (zi - q1 * zj) * (zi - q2 * zj) * (zi - q3 * zj)
                else:
                    term = term * (-1) * (zj - q1 * zi) * (zj - q2 * zi) * (zj - q3 * zi)
        total = total + term
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    num = total.div_vandermonde(pairs)
    return ShuffleElement("m", n, num)
