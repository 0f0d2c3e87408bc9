"""Rank-two false theta families and their hypergeometric companions.

All builders return one-variable PuiseuxSeries over exact rationals.
Lattice sums are enumerated inside an a priori box computed from the
positive-definite quadratic part: if E(n) = n^T A n + b.n + c with
smallest eigenvalue lam of A, every lattice point with E(n) < order has
Euclidean norm at most (|b| + sqrt(|b|^2 + 4 lam (order - c))) / (2 lam).
The bound is evaluated in floating point and padded, the series itself
stays exact.
"""

import math
from functools import lru_cache

from .rat import Rat, rat, rat_floor
from .series import PuiseuxSeries, zero as q_zero, monomial as q_monomial, pochhammer
from .bilaurent import Region
from .thetas import t2t_factor, s01_factor, eta5_over_eta2

__all__ = [
    "sgn_star",
    "rho",
    "quad_Q",
    "quad_Qstar",
    "G_frak",
    "G_frak_rewrite_p2",
    "G_frak_closed_p2",
    "coeff_F",
    "F_constant_term",
    "partial_theta_A2",
    "G_hyper",
    "H_frak",
    "F0_series",
    "rank_one_coeff",
    "rogers_false_theta",
]


def sgn_star(n):
    """Sign with sgn_star(0) = 1."""
    return 1 if n >= 0 else -1


def rho(a, b):
    """(sgn_star(a) + sgn_star(b)) / 2, taking values in {-1, 0, 1}."""
    return Rat(sgn_star(a) + sgn_star(b), 2)


def quad_Q(x, y):
    """The A2 quadratic form x^2 + y^2 - x y."""
    return x * x + y * y - x * y


def quad_Qstar(x, y):
    """The dual quadratic form x^2 + y^2 + x y."""
    return x * x + y * y + x * y


def _lattice_radius(A, b, c, order):
    """Integer box radius covering {n : n^T A n + b.n + c < order}.

    A is the symmetric matrix (a11, a12, a22); raises if A is not
    positive definite.
    """
    a11, a12, a22 = (float(x) for x in A)
    lam = (a11 + a22) / 2 - math.sqrt(((a11 - a22) / 2) ** 2 + a12 * a12)
    if lam <= 0:
        raise ValueError("quadratic part is not positive definite")
    nb = math.hypot(float(b[0]), float(b[1]))
    rhs = max(float(order) - float(c), 0.0)
    r = (nb + math.sqrt(nb * nb + 4 * lam * rhs)) / (2 * lam)
    return int(math.ceil(r)) + 2


def _check_lambda(lam, p):
    l1, l2 = rat(lam[0]), rat(lam[1])
    if not (isinstance(p, int) and p >= 2):
        raise ValueError("p must be an integer >= 2")
    return l1, l2


# the six bracket summands: sign and the gradient g of the linear term
# L(n) = g . (n + lambda)
_BRACKET = (
    (1, (0, 0)),
    (-1, (2, -1)),
    (-1, (-1, 2)),
    (1, (3, 0)),
    (1, (0, 3)),
    (-1, (2, 2)),
)


def G_frak(lam, p, order):
    """Weighted positive-cone lattice sum with the six-term bracket.

    sum over n in Z_{>=1}^2 of min(n1, n2) q^(p Q(n + lam - 1/p)) times
    the alternating bracket of q-powers linear in n + lam.
    """
    l1, l2 = _check_lambda(lam, p)
    order = rat(order)
    mu1 = l1 - Rat(1, p)
    mu2 = l2 - Rat(1, p)
    A = (Rat(p), -Rat(p, 2), Rat(p))
    terms = {}
    rad = 0
    for sign, (g1, g2) in _BRACKET:
        b = (2 * A[0] * mu1 + 2 * A[1] * mu2 + g1, 2 * A[1] * mu1 + 2 * A[2] * mu2 + g2)
        c = Rat(p) * quad_Q(mu1, mu2) + g1 * l1 + g2 * l2
        rad = max(rad, _lattice_radius(A, b, c, order))
    for n1 in range(1, rad + 1):
        for n2 in range(1, rad + 1):
            w = min(n1, n2)
            # no early skip on the quadratic part alone: brackets with a
            # negative gradient can pull the exponent back below the order
            base = Rat(p) * quad_Q(n1 + mu1, n2 + mu2)
            a1 = n1 + l1
            a2 = n2 + l2
            for sign, (g1, g2) in _BRACKET:
                e = base + g1 * a1 + g2 * a2
                if e < order:
                    terms[e] = terms.get(e, Rat(0)) + sign * w
    return PuiseuxSeries(terms, order)


def G_frak_rewrite_p2(lam, order):
    """p = 2 rewrite as three signed shifted A2 partial thetas."""
    l1, l2 = _check_lambda(lam, 2)
    order = rat(order)
    half = Rat(1, 2)
    terms = {}

    def add(sign, s1, s2, cond):
        rad = _lattice_radius(
            (Rat(2), Rat(-1), Rat(2)),
            (4 * s1 - 2 * s2, 4 * s2 - 2 * s1),
            2 * quad_Q(s1, s2),
            order,
        )
        for n1 in range(0, rad + 1):
            for n2 in range(0, rad + 1):
                if not cond(n1, n2):
                    continue
                e = 2 * quad_Q(n1 + s1, n2 + s2)
                if e < order:
                    terms[e] = terms.get(e, Rat(0)) + sign

    add(1, l1 + half, l2 + half, lambda n1, n2: True)
    add(-1, l1 + half, l2, lambda n1, n2: n2 > n1)
    add(-1, l1, l2 + half, lambda n1, n2: n1 > n2)
    return PuiseuxSeries(terms, order)


def G_frak_closed_p2(r, order):
    """p = 2 half-plane closed form indexed by an integer pair r.

    sum over n1 >= 0, n2 in Z of rho(n2, n2 + r2) (-1)^n1
    q^(E(n1, n2)) with E the shifted quadratic exponent.
    """
    r1, r2 = r
    if not (isinstance(r1, int) and isinstance(r2, int)):
        raise ValueError("r must be a pair of integers")
    order = rat(order)
    A = (Rat(1, 2), Rat(1, 2), Rat(2))
    b = (Rat(r1) + Rat(1, 2), 2 * Rat(r2) + 2)
    c = Rat(r2) + Rat(1, 2)
    rad = _lattice_radius(A, b, c, order)
    terms = {}
    for n1 in range(0, rad + 1):
        for n2 in range(-rad, rad + 1):
            w = rho(n2, n2 + r2)
            if not w:
                continue
            e = (
                A[0] * n1 * n1
                + 2 * A[1] * n1 * n2
                + A[2] * n2 * n2
                + b[0] * n1
                + b[1] * n2
                + c
            )
            if e < order:
                s = terms.get(e, Rat(0)) + (w if n1 % 2 == 0 else -w)
                terms[e] = s
    return PuiseuxSeries(terms, order)


# per-summand integer offsets (l1, l2) of the Weyl-orbit expansion of the
# Fourier coefficient, as affine functions of the lattice point n and the
# index r; a summand contributes min(l1+1, l2+1) when both are >= 0
def _orbit_offsets(n1, n2, r1, r2):
    return (
        (1, n1 - 1 - r1, n2 - 1 - r2),
        (-1, n2 - n1 - 1 - r1, n2 - 1 - r2),
        (-1, n1 - 1 - r1, n1 - n2 - 1 - r2),
        (1, -n2 - 1 - r1, n1 - n2 - 1 - r2),
        (1, n2 - n1 - 1 - r1, -n1 - 1 - r2),
        (-1, -n2 - 1 - r1, -n1 - 1 - r2),
    )


def coeff_F(r, p, order):
    """Fourier coefficient family attached to the index pair r.

    Enumerates the full lattice with exponent p Q(n - 1/p) and weights
    each point by the six signed Weyl-orbit contributions.
    """
    r1, r2 = r
    if not (isinstance(r1, int) and isinstance(r2, int)):
        raise ValueError("r must be a pair of integers")
    if not (isinstance(p, int) and p >= 2):
        raise ValueError("p must be an integer >= 2")
    order = rat(order)
    s = Rat(1, p)
    A = (Rat(p), -Rat(p, 2), Rat(p))
    rad = _lattice_radius(A, (-1, -1), s, order)
    terms = {}
    for n1 in range(-rad, rad + 1):
        for n2 in range(-rad, rad + 1):
            e = Rat(p) * quad_Q(n1 - s, n2 - s)
            if e >= order:
                continue
            w = Rat(0)
            for sign, l1, l2 in _orbit_offsets(n1, n2, r1, r2):
                if l1 >= 0 and l2 >= 0:
                    w += sign * min(l1 + 1, l2 + 1)
            if w:
                terms[e] = terms.get(e, Rat(0)) + w
    return PuiseuxSeries(terms, order)


def F_constant_term(p, order):
    """The (0, 0) Fourier coefficient as a congruence-restricted sum.

    sum over n1, n2 >= 1 with n1 = n2 mod 3 of min(n1, n2) times
    q^((p/3) Q*(n) - n1 - n2 + 1/p) (1 - q^n1)(1 - q^n2)(1 - q^(n1+n2)).
    """
    if not (isinstance(p, int) and p >= 2):
        raise ValueError("p must be an integer >= 2")
    order = rat(order)
    A = (Rat(p, 3), Rat(p, 6), Rat(p, 3))
    rad = _lattice_radius(A, (-1, -1), Rat(1, p), order)
    terms = {}
    for n1 in range(1, rad + 1):
        for n2 in range(1, rad + 1):
            if (n1 - n2) % 3:
                continue
            base = Rat(p, 3) * quad_Qstar(n1, n2) - n1 - n2 + Rat(1, p)
            if base >= order:
                continue
            w = min(n1, n2)
            # (1-a)(1-b)(1-ab) expanded; the -ab and +ab terms cancel
            for sign, off in (
                (1, 0),
                (-1, n1),
                (-1, n2),
                (1, 2 * n1 + n2),
                (1, n1 + 2 * n2),
                (-1, 2 * n1 + 2 * n2),
            ):
                e = base + off
                if e < order:
                    terms[e] = terms.get(e, Rat(0)) + sign * w
    return PuiseuxSeries(terms, order)


def partial_theta_A2(lam, p, order):
    """Weighted partial theta sum over the closed positive cone:

    sum over n in Z_{>=0}^2 of min(n1, n2) q^(p Q(n + lam - 1/p)).
    """
    l1, l2 = _check_lambda(lam, p)
    order = rat(order)
    mu1 = l1 - Rat(1, p)
    mu2 = l2 - Rat(1, p)
    A = (Rat(p), -Rat(p, 2), Rat(p))
    b = (2 * A[0] * mu1 + 2 * A[1] * mu2, 2 * A[1] * mu1 + 2 * A[2] * mu2)
    rad = _lattice_radius(A, b, Rat(p) * quad_Q(mu1, mu2), order)
    terms = {}
    for n1 in range(0, rad + 1):
        for n2 in range(0, rad + 1):
            w = min(n1, n2)
            if not w:
                continue
            e = Rat(p) * quad_Q(n1 + mu1, n2 + mu2)
            if e < order:
                terms[e] = terms.get(e, Rat(0)) + w
    return PuiseuxSeries(terms, order)


@lru_cache(maxsize=None)
def _inv_poch(n, order):
    """1 / (q; q)_n as a truncated series."""
    order = rat(order)
    if n == 0:
        return PuiseuxSeries({Rat(0): Rat(1)}, order)
    prev = _inv_poch(n - 1, order)
    # geometric expansion of 1/(1 - q^n)
    geom = {}
    k = 0
    while k * n < order:
        geom[rat(k * n)] = Rat(1)
        k += 1
    return prev * PuiseuxSeries(geom, order)


def _A_table(m, order, build):
    """sum_{n >= 0} q^n / ((q; q)_n (q; q)_{n+m}) truncated below order.

    `build` is a shared truncation order for the cached 1/(q; q)_n
    factors, so the tables for every m reuse one Pochhammer chain.
    """
    order = rat(order)
    out = q_zero(order)
    n = 0
    while n < order:
        prod = _inv_poch(n, build) * _inv_poch(n + m, build)
        out = out + prod.truncate(order - n).shift(n)
        n += 1
    return out


def G_hyper(r, order):
    """Triple q-hypergeometric sum attached to an integer index pair r.

    sum over n4 in Z and n1, n2, n3 >= 0 of
    q^(n1 + n2 + n3 + (|n4 - r1| + |n4 - r2| + |n4|)/2) /
    ((q)_{n1} (q)_{n1 + |n4 - r1|} (q)_{n2} (q)_{n2 + |n4 - r2|}
     (q)_{n3} (q)_{n3 + |n4|}),
    computed through the factorized inner sums A_m(q).
    """
    r1, r2 = r
    if not (isinstance(r1, int) and isinstance(r2, int)):
        raise ValueError("r must be a pair of integers")
    order = rat(order)
    out = q_zero(order)
    bound = rat_floor((2 * order + abs(r1) + abs(r2)) / 3) + 2
    for n4 in range(-bound, bound + 1):
        m1 = abs(n4 - r1)
        m2 = abs(n4 - r2)
        m3 = abs(n4)
        pre = Rat(m1 + m2 + m3, 2)
        if pre >= order:
            continue
        rel = order - pre
        prod = _A_table(m1, rel, order) * _A_table(m2, rel, order) * _A_table(
            m3, rel, order
        )
        out = out + prod.truncate(rel).shift(pre)
    return out


@lru_cache(maxsize=None)
def _h_kernel(build, W):
    """Shared triple product behind H_frak; cached across coefficient pulls."""
    prod = t2t_factor("z1", build, "geometric")
    prod = prod * s01_factor("z2", build, W)
    return prod * s01_factor("z12", build, W)


def H_frak(r1, r2, order):
    """Half-shifted Fourier coefficient of the mixed theta-ratio kernel.

    r1 lies in 1/2 + Z, r2 in Z.  Extracted from the product of one
    full-period theta ratio and two half-period ratios, scaled by
    eta^5 / eta(2 tau); windows are chosen so that the clipped geometric
    tails only affect orders beyond the truncation.
    """
    r1 = rat(r1)
    if not (isinstance(r2, int) or rat(r2).denominator == 1):
        raise ValueError("r2 must be an integer")
    r2 = rat(r2)
    if (2 * r1).denominator != 1 or r1.denominator == 1:
        raise ValueError("r1 must be a half-integer")
    order = rat(order)
    mag = max(abs(r1), abs(r2))
    W = rat_floor(order / 2) + rat_floor(mag) + 4
    build = order + Rat(1, 2)  # pad for the q^(-1/8) valuations below
    coeff = _h_kernel(build, W).coeff(r1, r2)
    return (eta5_over_eta2(build) * coeff).truncate(order)


def F0_series(p, order, form="GENERAL"):
    """Weight-adjusted full-lattice sum with cubic-in-n weights.

    GENERAL: (1/2) (2n1 - n2)(2n2 - n1)(n1 + n2) q^(p Q(n - 1/p)) over Z^2.
    P2SIMPLIFIED (p = 2 only): the quadratic-weight rewrite
    (1/4) (12 n1 n2 - 3 n1^2 - 3 n2^2 - n1 - n2) q^(2 Q(n - 1/2)).
    """
    if not (isinstance(p, int) and p >= 2):
        raise ValueError("p must be an integer >= 2")
    order = rat(order)
    s = Rat(1, p)
    if form == "GENERAL":
        A = (Rat(p), -Rat(p, 2), Rat(p))
        rad = _lattice_radius(A, (-1, -1), s, order)
        terms = {}
        for n1 in range(-rad, rad + 1):
            for n2 in range(-rad, rad + 1):
                e = Rat(p) * quad_Q(n1 - s, n2 - s)
                if e >= order:
                    continue
                w = Rat((2 * n1 - n2) * (2 * n2 - n1) * (n1 + n2), 2)
                if w:
                    terms[e] = terms.get(e, Rat(0)) + w
        return PuiseuxSeries(terms, order)
    if form == "P2SIMPLIFIED":
        if p != 2:
            raise ValueError("P2SIMPLIFIED requires p = 2")
        A = (Rat(2), Rat(-1), Rat(2))
        rad = _lattice_radius(A, (-1, -1), Rat(1, 2), order)
        terms = {}
        for n1 in range(-rad, rad + 1):
            for n2 in range(-rad, rad + 1):
                e = 2 * quad_Q(n1 - Rat(1, 2), n2 - Rat(1, 2))
                if e >= order:
                    continue
                w = Rat(12 * n1 * n2 - 3 * n1 * n1 - 3 * n2 * n2 - n1 - n2, 4)
                if w:
                    terms[e] = terms.get(e, Rat(0)) + w
        return PuiseuxSeries(terms, order)
    raise ValueError(f"unknown form {form!r}")


def rank_one_coeff(p, r, order):
    """Rank-one false theta coefficient: signed one-dimensional sum

    sum_{n >= |r|} q^(p (n + s0)^2) - sum_{n <= -|r| - 1} q^(p (n + s0)^2)

    with s0 = (p - 1) / (2p).
    """
    if not (isinstance(p, int) and p >= 2):
        raise ValueError("p must be an integer >= 2")
    if not isinstance(r, int):
        raise ValueError("r must be an integer")
    order = rat(order)
    s0 = Rat(p - 1, 2 * p)
    terms = {}
    m = abs(r)
    n = m
    while Rat(p) * (n + s0) ** 2 < order:
        e = Rat(p) * (n + s0) ** 2
        terms[e] = terms.get(e, Rat(0)) + 1
        n += 1
    n = -m - 1
    while Rat(p) * (n + s0) ** 2 < order:
        e = Rat(p) * (n + s0) ** 2
        terms[e] = terms.get(e, Rat(0)) - 1
        n -= 1
    return PuiseuxSeries(terms, order)


def rogers_false_theta(order):
    """Rogers' false theta: sum_{n >= 0} (-1)^n q^(n(n+1)/2)."""
    order = rat(order)
    terms = {}
    n = 0
    while Rat(n * (n + 1), 2) < order:
        terms[Rat(n * (n + 1), 2)] = Rat(1) if n % 2 == 0 else Rat(-1)
        n += 1
    return PuiseuxSeries(terms, order)
