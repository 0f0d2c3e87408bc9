"""Builders for the classical two-variable objects.

All theta-type series are produced in the rational normalization

    theta_hat(z; tau) = q^(1/8) zeta^(-1/2) (zeta, zeta^-1 q, q; q)_oo,

i.e. i times the odd Jacobi theta function, so that every coefficient in
the formal layer stays rational.  Ratios of three thetas over three
thetas are insensitive to the normalization; identities registered
downstream are stated in this normalized form.

Ratios theta(z; 2tau)/theta(z; tau) are never formed by dividing two
theta expansions; they are always assembled from the closed product form

    q^(1/8) (-q; q)_oo / (zeta q, zeta^-1 q; q^2)_oo

expanded factor by factor in the INNER annulus (or from the equivalent
double-sum closed form; both paths are exposed and cross-checked).
"""

from functools import lru_cache

from .rat import Rat, rat
from .series import (
    PuiseuxSeries,
    pochhammer,
    eta_series,
    monomial as q_monomial,
    one as q_one,
)
from .bilaurent import (
    BiLaurentSeries,
    Region,
    UNIT_KEYS,
    bl_monomial,
    bl_mul,
    bl_scalar_mul,
    expand_inverse_one_minus,
)

__all__ = [
    "theta_hat",
    "theta_hat_sum",
    "theta01",
    "theta_A2",
    "calT",
    "t2t_factor",
    "s01_factor",
    "f_series",
    "J_series",
    "kw_character_N3",
    "eta5_over_eta2",
    "eta1_over_eta2",
]


def _unit_dirs(unit):
    if unit not in UNIT_KEYS:
        raise ValueError(f"unknown unit {unit!r}")
    return UNIT_KEYS[unit]


def _unit_poly(unit, c0, c1, qexp, qorder, region=Region.INNER, invert_unit=False):
    """The two-term factor c0 + c1 * u^(+-1) * q^qexp as a BiLaurentSeries."""
    d1, d2 = _unit_dirs(unit)
    if invert_unit:
        d1, d2 = -d1, -d2
    terms = {
        (Rat(0), Rat(0)): q_monomial(c0, 0, qorder),
        (rat(d1), rat(d2)): q_monomial(c1, qexp, qorder),
    }
    return BiLaurentSeries(terms, qorder, region)


@lru_cache(maxsize=None)
def theta_hat(unit, k, qorder, zwindow=None):
    """Product-form theta_hat(u; k*tau), keys along the selected unit.

    Exponents of the unit lie in 1/2 + Z; the coefficient of u^m is the
    single signed monomial (-1)^(m+1/2) q^(k m^2 / 2).
    """
    if k not in (1, 2):
        raise ValueError("scale k must be 1 or 2")
    qorder = rat(qorder)
    d1, d2 = _unit_dirs(unit)
    # q^(k/8) u^(-1/2) (u; q^k)_oo (u^-1 q^k; q^k)_oo (q^k; q^k)_oo
    build = qorder - Rat(k, 8)
    out = _unit_poly(unit, 1, -1, 0, build)  # j = 0 factor of (u; q^k)_oo
    j = 1
    while j * k < build:
        out = bl_mul(out, _unit_poly(unit, 1, -1, j * k, build))
        out = bl_mul(out, _unit_poly(unit, 1, -1, j * k, build, invert_unit=True))
        j += 1
    out = bl_scalar_mul(out, pochhammer(1, k, k, None, build))
    pre = bl_monomial(
        q_monomial(1, Rat(k, 8), qorder), -Rat(d1, 2), -Rat(d2, 2), qorder, Region.INNER
    )
    out = bl_mul(pre, out)
    if zwindow is not None:
        out = out.clip(zwindow)
    return out


@lru_cache(maxsize=None)
def theta_hat_sum(unit, k, qorder, zwindow=None):
    """Half-integer indexed sum form of theta_hat; oracle for the product."""
    if k not in (1, 2):
        raise ValueError("scale k must be 1 or 2")
    qorder = rat(qorder)
    d1, d2 = _unit_dirs(unit)
    terms = {}
    m = 0
    while True:
        done = True
        for n in (Rat(2 * m + 1, 2), Rat(-2 * m - 1, 2)):
            e = Rat(k) * n * n / 2
            if e >= qorder:
                continue
            done = False
            if zwindow is not None and abs(n) > zwindow:
                continue
            sign = 1 if (m % 2 == 0) == (n < 0) else -1
            # (-1)^(n + 1/2): +1 at n = -1/2, alternating outward
            terms[(n * d1, n * d2)] = q_monomial(sign, e, qorder)
        if done:
            break
        m += 1
    return BiLaurentSeries(terms, qorder, Region.INNER, zwindow)


@lru_cache(maxsize=None)
def theta01(unit, k, qorder, zwindow=None):
    """(q^k, u q^(k/2), u^-1 q^(k/2); q^k)_oo with integer unit exponents."""
    if k not in (1, 2):
        raise ValueError("scale k must be 1 or 2")
    qorder = rat(qorder)
    half = Rat(k, 2)
    out = None
    j = 0
    while half + j * k < qorder:
        e = half + j * k
        fac = bl_mul(
            _unit_poly(unit, 1, -1, e, qorder),
            _unit_poly(unit, 1, -1, e, qorder, invert_unit=True),
        )
        out = fac if out is None else bl_mul(out, fac)
        j += 1
    if out is None:
        out = BiLaurentSeries(
            {(Rat(0), Rat(0)): q_one(qorder)}, qorder, Region.INNER
        )
    out = bl_scalar_mul(out, pochhammer(1, k, k, None, qorder))
    if zwindow is not None:
        out = out.clip(zwindow)
    return out


def _Q(n1, n2):
    return n1 * n1 + n2 * n2 - n1 * n2


@lru_cache(maxsize=None)
def theta_A2(qorder, zwindow):
    """A2 lattice theta: coefficient q^(Q(n)) on the key (n1, n2)."""
    qorder = rat(qorder)
    if zwindow is None:
        raise ValueError("a finite window is required")
    terms = {}
    bound = zwindow
    for n1 in range(-bound, bound + 1):
        for n2 in range(-bound, bound + 1):
            e = _Q(n1, n2)
            if e < qorder:
                terms[(rat(n1), rat(n2))] = q_monomial(1, e, qorder)
    return BiLaurentSeries(terms, qorder, Region.INNER, zwindow)


@lru_cache(maxsize=None)
def calT(qorder, zwindow):
    """Dilated A2 theta: q^(2Q(n)) on the key (n1+n2, 2n1-n2).

    The key map is injective and its image satisfies e1 + e2 = 0 mod 3.
    """
    qorder = rat(qorder)
    if zwindow is None:
        raise ValueError("a finite window is required")
    terms = {}
    bound = zwindow + 2
    for n1 in range(-bound, bound + 1):
        for n2 in range(-bound, bound + 1):
            e = 2 * _Q(n1, n2)
            key = (rat(n1 + n2), rat(2 * n1 - n2))
            if e < qorder and abs(key[0]) <= zwindow and abs(key[1]) <= zwindow:
                terms[key] = q_monomial(1, e, qorder)
    return BiLaurentSeries(terms, qorder, Region.INNER, zwindow)


@lru_cache(maxsize=None)
def t2t_factor(unit, qorder, path="geometric"):
    """INNER expansion of theta(z; 2 tau) / theta(z; tau) on one unit.

    geometric: q^(1/8) (-q; q)_oo expanded against every inverse factor
    of (u q, u^-1 q; q^2)_oo one geometric series at a time.
    closed:    the same prefactor times the explicit double-sum rewrite
    of 1 / (u q, u^-1 q; q^2)_oo.
    """
    qorder = rat(qorder)
    scalar = pochhammer(-1, 1, 1, None, qorder - Rat(1, 8)).shift(Rat(1, 8))
    if path == "geometric":
        out = bl_monomial(scalar, 0, 0, qorder, Region.INNER)
        j = 0
        while 1 + 2 * j < qorder:
            out = bl_mul(
                out, expand_inverse_one_minus(unit, 1 + 2 * j, Region.INNER, qorder)
            )
            out = bl_mul(
                out,
                expand_inverse_one_minus(
                    unit, 1 + 2 * j, Region.INNER, qorder, invert_unit=True
                ),
            )
            j += 1
        return out
    if path == "closed":
        d1, d2 = _unit_dirs(unit)
        inv2 = pochhammer(1, 2, 2, None, qorder).invert()
        pre = (scalar * inv2 * inv2).truncate(qorder)
        terms = {}
        n1 = 0
        while True:
            alive = False
            for m in ((n1,) if n1 == 0 else (n1, -n1)):
                n2 = abs(m)
                while True:
                    e = n2 * (n2 + 1) - m * m
                    if e >= qorder:
                        break
                    alive = True
                    sign = 1 if (m + n2) % 2 == 0 else -1
                    key = (rat(m * d1), rat(m * d2))
                    cur = terms.get(key)
                    mono = q_monomial(sign, e, qorder)
                    terms[key] = mono if cur is None else cur + mono
                    n2 += 1
            if not alive:
                break
            n1 += 1
        body = BiLaurentSeries(terms, qorder, Region.INNER)
        return bl_scalar_mul(body, pre)
    raise ValueError(f"unknown path {path!r}")


@lru_cache(maxsize=None)
def s01_factor(unit, qorder, zwindow):
    """INNER expansion of the rational part of theta01(z; 2tau)/theta(z; tau):

        u^(1/2) q^(-1/8) (-q; q)_oo / ((u; q^2)_oo (u^-1 q^2; q^2)_oo).

    The j = 0 inverse factor 1/(1 - u) forces a finite window; the
    coefficient of u^e is then complete up to q-order 2(W + 1 - e).
    """
    qorder = rat(qorder)
    if zwindow is None:
        raise ValueError("a finite window is required")
    d1, d2 = _unit_dirs(unit)
    build = qorder + Rat(1, 8)
    scalar = pochhammer(-1, 1, 1, None, build)
    out = bl_monomial(scalar, Rat(d1, 2), Rat(d2, 2), build, Region.INNER)
    out = bl_mul(
        out, expand_inverse_one_minus(unit, 0, Region.INNER, build, zwindow=zwindow)
    )
    j = 1
    while 2 * j < build:
        out = bl_mul(
            out, expand_inverse_one_minus(unit, 2 * j, Region.INNER, build)
        )
        out = bl_mul(
            out,
            expand_inverse_one_minus(
                unit, 2 * j, Region.INNER, build, invert_unit=True
            ),
        )
        j += 1
    # exact monomial shift by q^(-1/8) applied last to keep the full order
    return bl_scalar_mul(out, q_monomial(1, -Rat(1, 8), build + 1))


@lru_cache(maxsize=None)
def f_series(qorder, zwindow=None, path="geometric"):
    """The meromorphic Jacobi form ratio, INNER region.

    Product over the three units z1, z2, z1*z2 of the t2t factor; the
    (0, 0) coefficient has valuation 3/8 with leading coefficient 1.
    """
    out = bl_mul(
        bl_mul(t2t_factor("z1", qorder, path), t2t_factor("z2", qorder, path)),
        t2t_factor("z12", qorder, path),
    )
    if zwindow is not None:
        out = out.clip(zwindow)
    return out


@lru_cache(maxsize=None)
def eta5_over_eta2(order):
    """eta(tau)^5 / eta(2 tau) as a one-variable series (valuation 1/8)."""
    order = rat(order)
    pad = order + Rat(1, 2)
    e1 = eta_series(1, pad)
    e2 = eta_series(2, pad)
    return (e1 * e1 * e1 * e1 * e1 * e2.invert()).truncate(order)


@lru_cache(maxsize=None)
def eta1_over_eta2(order):
    """eta(tau) / eta(2 tau) (valuation -1/24)."""
    order = rat(order)
    pad = order + Rat(1, 2)
    return (eta_series(1, pad) * eta_series(2, pad).invert()).truncate(order)


@lru_cache(maxsize=None)
def J_series(qorder, zwindow):
    """eta^5/eta(2tau) * calT * f: an index-zero combination."""
    qorder = rat(qorder)
    body = bl_mul(calT(qorder, zwindow + 2), f_series(qorder))
    out = bl_scalar_mul(body, eta5_over_eta2(qorder))
    return out.clip(zwindow).truncate_q(qorder)


@lru_cache(maxsize=None)
def kw_character_N3(qorder, zwindow=None):
    """The N = 3 boundary-level character: (eta/eta(2tau)) * f."""
    qorder = rat(qorder)
    quot = eta1_over_eta2(qorder + Rat(1, 2))
    out = bl_scalar_mul(f_series(qorder + Rat(1, 2)), quot)
    out = out.truncate_q(qorder)
    if zwindow is not None:
        out = out.clip(zwindow)
    return out
