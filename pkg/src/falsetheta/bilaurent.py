"""Two-variable Laurent series over PuiseuxSeries coefficients.

Keys are pairs of rational exponents of the elliptic units (z1, z2); each
key carries a truncated q-series.  Every series is tagged with the
annulus (Region) its meromorphic factors were expanded in; mixing
regions is a hard error, because the same rational function has
different Laurent expansions in different annuli.

The optional `window` is a symmetric bound |e1|, |e2| <= W on the key
support.  It is mandatory for expansions whose support at a fixed
q-order would otherwise be unbounded (the plain geometric series
1/(1-u), the Weyl denominator); callers choose it as an analysis
parameter and are responsible for pairing it with a compatible q-order.
"""

import enum

from .rat import Rat, rat, rat_str, parse_rat, rat_ceil
from .series import PuiseuxSeries, zero as q_zero, one as q_one, monomial as q_monomial
from .series import series_to_json, series_from_json

__all__ = [
    "Region",
    "RegionMismatchError",
    "ExactDivisionError",
    "BiLaurentSeries",
    "bl_zero",
    "bl_one",
    "bl_monomial",
    "bl_add",
    "bl_mul",
    "bl_coeff",
    "bl_scalar_mul",
    "expand_inverse_one_minus",
    "expand_weyl_denominator",
    "bl_elliptic_shift",
    "bl_monomial_substitution",
    "laurent_poly_exact_divide",
    "UNIT_KEYS",
    "bl_to_json",
    "bl_from_json",
]


class Region(enum.Enum):
    INNER = "INNER"  # |q| < |z1|, |z2|, |z1 z2| < 1
    OUTER = "OUTER"  # |z1| > 1, |z2| > 1
    WIDE = "WIDE"    # |q| < |u| < 1/|q|; never constructed directly


class RegionMismatchError(ValueError):
    pass


class ExactDivisionError(ArithmeticError):
    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


# key direction of each elliptic unit; z1*z2 is a derived direction
UNIT_KEYS = {"z1": (1, 0), "z2": (0, 1), "z12": (1, 1)}


class BiLaurentSeries:
    """Immutable region-tagged series sum_{e} c_e(q) z1^e1 z2^e2."""

    __slots__ = ("terms", "qorder", "region", "window")

    def __init__(self, terms, qorder, region, window=None):
        qorder = rat(qorder)
        if not isinstance(region, Region):
            raise TypeError("region must be a Region")
        clean = {}
        for key, coeff in terms.items():
            e1, e2 = rat(key[0]), rat(key[1])
            if window is not None and (abs(e1) > window or abs(e2) > window):
                continue
            if coeff.order > qorder:
                coeff = coeff.truncate(qorder)
            elif coeff.order < qorder:
                raise ValueError("coefficient order below the global qorder")
            if not coeff.is_zero():
                clean[(e1, e2)] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "qorder", qorder)
        object.__setattr__(self, "region", region)
        object.__setattr__(self, "window", window)

    def __setattr__(self, *a):
        raise AttributeError("BiLaurentSeries is immutable")

    def qvaluation(self):
        """Minimal coefficient valuation over all keys (qorder if empty)."""
        if not self.terms:
            return self.qorder
        return min(c.valuation() for c in self.terms.values())

    def coeff(self, r1, r2):
        key = (rat(r1), rat(r2))
        if self.window is not None and (
            abs(key[0]) > self.window or abs(key[1]) > self.window
        ):
            raise ValueError(f"key {key} outside window {self.window}")
        return self.terms.get(key, q_zero(self.qorder))

    def support_window(self):
        """Tightest symmetric integer window containing all keys."""
        if not self.terms:
            return 0
        return max(
            rat_ceil(max(abs(e1), abs(e2))) for (e1, e2) in self.terms
        )

    def keys_sorted(self):
        return sorted(self.terms)

    def clip(self, window):
        """Drop keys outside |ei| <= window (no reliability bookkeeping)."""
        return BiLaurentSeries(self.terms, self.qorder, self.region, window)

    def truncate_q(self, qorder):
        qorder = rat(qorder)
        if qorder > self.qorder:
            raise ValueError("cannot extend q-truncation")
        return BiLaurentSeries(
            {k: c.truncate(qorder) for k, c in self.terms.items()},
            qorder,
            self.region,
            self.window,
        )

    def __eq__(self, other):
        if not isinstance(other, BiLaurentSeries):
            return NotImplemented
        return (
            self.region is other.region
            and self.qorder == other.qorder
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.region, self.qorder, frozenset(self.terms)))

    def __repr__(self):
        n = len(self.terms)
        return (
            f"<BiLaurentSeries {self.region.value} keys={n} "
            f"qorder={self.qorder} window={self.window}>"
        )

    # operator sugar delegating to the module-level operations
    def __add__(self, other):
        return bl_add(self, other)

    def __sub__(self, other):
        return bl_add(self, bl_mul_scalar_int(other, -1))

    def __mul__(self, other):
        if isinstance(other, PuiseuxSeries):
            return bl_scalar_mul(self, other)
        return bl_mul(self, other)


def bl_zero(qorder, region, window=None):
    return BiLaurentSeries({}, qorder, region, window)


def bl_one(qorder, region, window=None):
    return bl_monomial(q_one(qorder), 0, 0, qorder, region, window)


def bl_monomial(coeff, e1, e2, qorder, region, window=None):
    """coeff(q) * z1^e1 z2^e2; coeff may be a PuiseuxSeries or a rational."""
    if not isinstance(coeff, PuiseuxSeries):
        coeff = q_monomial(coeff, 0, qorder)
    return BiLaurentSeries({(rat(e1), rat(e2)): coeff}, qorder, region, window)


def bl_mul_scalar_int(a, n):
    return BiLaurentSeries(
        {k: c * n for k, c in a.terms.items()}, a.qorder, a.region, a.window
    )


def _check_regions(a, b):
    if a.region is not b.region:
        raise RegionMismatchError(
            f"cannot combine {a.region.value} with {b.region.value}"
        )


def _merged_window(keys):
    if not keys:
        return 0
    return max(rat_ceil(max(abs(e1), abs(e2))) for (e1, e2) in keys)


def bl_add(a, b):
    _check_regions(a, b)
    qorder = min(a.qorder, b.qorder)
    terms = {k: c.truncate(qorder) for k, c in a.terms.items()}
    for k, c in b.terms.items():
        c = c.truncate(qorder)
        if k in terms:
            terms[k] = terms[k] + c
        else:
            terms[k] = c
    terms = {k: c for k, c in terms.items() if not c.is_zero()}
    return BiLaurentSeries(terms, qorder, a.region, _merged_window(terms))


def bl_mul(a, b):
    """Convolution product; q-truncation follows the one-variable rule

        qorder = min(a.qorder + qval(b), b.qorder + qval(a)).

    Key pairs whose coefficient valuations already sum past the result
    order are skipped.
    """
    _check_regions(a, b)
    qorder = min(a.qorder + b.qvaluation(), b.qorder + a.qvaluation())
    terms = {}
    avals = {k: c.valuation() for k, c in a.terms.items()}
    bvals = {k: c.valuation() for k, c in b.terms.items()}
    for ka, ca in a.terms.items():
        va = avals[ka]
        for kb, cb in b.terms.items():
            if va + bvals[kb] >= qorder:
                continue
            key = (ka[0] + kb[0], ka[1] + kb[1])
            prod = ca * cb
            if key in terms:
                terms[key] = terms[key] + prod
            else:
                terms[key] = prod
    out = {}
    for k, c in terms.items():
        c = c.truncate(qorder) if c.order > qorder else c
        if not c.is_zero():
            out[k] = c
    return BiLaurentSeries(out, qorder, a.region, _merged_window(out))


def bl_scalar_mul(a, s):
    """Multiply every coefficient by the one-variable series s(q)."""
    qorder = min(a.qorder + s.valuation(), s.order + a.qvaluation())
    terms = {}
    for k, c in a.terms.items():
        prod = c * s
        if prod.order > qorder:
            prod = prod.truncate(qorder)
        if not prod.is_zero():
            terms[k] = prod
    return BiLaurentSeries(terms, qorder, a.region, _merged_window(terms))


def bl_coeff(a, r1, r2):
    return a.coeff(r1, r2)


def expand_inverse_one_minus(
    unit, n, region, qorder, zwindow=None, invert_unit=False
):
    """Region-aware Laurent expansion of 1 / (1 - u^s q^n), s = +-1.

    unit selects u among z1, z2, z1*z2; invert_unit chooses s = -1.
    INNER expansions (any rational n, with a window required when the
    factor carries no positive q-power) and the OUTER expansion of
    1/(1 - u^-1) in non-positive powers are supported.
    """
    if unit not in UNIT_KEYS:
        raise ValueError(f"unknown unit {unit!r}")
    d1, d2 = UNIT_KEYS[unit]
    if invert_unit:
        d1, d2 = -d1, -d2
    n = rat(n)
    qorder = rat(qorder)
    terms = {}
    if region is Region.INNER:
        if n > 0:
            # |u^s q^n| < 1: plain geometric series in u^s
            k = 0
            while k * n < qorder:
                if zwindow is None or (abs(k * d1) <= zwindow and abs(k * d2) <= zwindow):
                    terms[(rat(k * d1), rat(k * d2))] = q_monomial(1, k * n, qorder)
                k += 1
        elif n < 0:
            # rewrite through 1/(1 - x) = -x^-1/(1 - x^-1)
            k = 1
            while k * (-n) < qorder:
                if zwindow is None or (abs(k * d1) <= zwindow and abs(k * d2) <= zwindow):
                    terms[(rat(-k * d1), rat(-k * d2))] = q_monomial(
                        -1, k * (-n), qorder
                    )
                k += 1
        else:
            if zwindow is None:
                raise ValueError("n = 0 INNER expansion requires a window")
            k = 0
            while abs(k * d1) <= zwindow and abs(k * d2) <= zwindow:
                terms[(rat(k * d1), rat(k * d2))] = q_monomial(1, 0, qorder)
                k += 1
        return BiLaurentSeries(terms, qorder, Region.INNER, zwindow)
    if region is Region.OUTER:
        if n != 0 or not invert_unit:
            raise ValueError("OUTER expansion supported only for 1/(1 - u^-1)")
        if zwindow is None:
            raise ValueError("OUTER expansion requires a window")
        k = 0
        while abs(k * d1) <= zwindow and abs(k * d2) <= zwindow:
            terms[(rat(k * d1), rat(k * d2))] = q_monomial(1, 0, qorder)
            k += 1
        return BiLaurentSeries(terms, qorder, Region.OUTER, zwindow)
    raise ValueError(f"unsupported region {region}")


def expand_weyl_denominator(qorder, zwindow, region=Region.OUTER):
    """OUTER expansion of 1/((1-z1^-1)(1-z2^-1)(1-(z1 z2)^-1)).

    All keys (-l1, -l2) with 0 <= li <= W carry the constant coefficient
    min(l1+1, l2+1).
    """
    if region is not Region.OUTER:
        raise ValueError("the Weyl denominator is expanded in OUTER only")
    if zwindow is None:
        raise ValueError("a finite window is required")
    qorder = rat(qorder)
    terms = {}
    for l1 in range(zwindow + 1):
        for l2 in range(zwindow + 1):
            terms[(rat(-l1), rat(-l2))] = q_monomial(
                min(l1 + 1, l2 + 1), 0, qorder
            )
    return BiLaurentSeries(terms, qorder, Region.OUTER, zwindow)


def bl_elliptic_shift(a, m1, m2):
    """Substitute z_j -> z_j q^(m_j): key (e1, e2) picks up q^(m1 e1 + m2 e2).

    The guaranteed q-order shrinks conservatively by the most negative
    exponent shift over the retained keys; a finite window is required so
    that this shrink is well defined.
    """
    if a.window is None:
        raise ValueError("elliptic shift requires a finite window")
    if not a.terms:
        return a
    shifts = {k: m1 * k[0] + m2 * k[1] for k in a.terms}
    qorder = a.qorder + min(Rat(0), min(shifts.values()))
    terms = {}
    for k, c in a.terms.items():
        shifted = c.shift(shifts[k])
        if shifted.order > qorder:
            shifted = shifted.truncate(qorder)
        elif shifted.order < qorder:
            raise AssertionError("shift bookkeeping violated")
        if not shifted.is_zero():
            terms[k] = shifted
    return BiLaurentSeries(terms, qorder, a.region, a.window)


def bl_monomial_substitution(a, matrix):
    """Remap keys e -> M e for an integer matrix M invertible over Q."""
    (m11, m12), (m21, m22) = matrix
    if m11 * m22 - m12 * m21 == 0:
        raise ValueError("substitution matrix is singular")
    terms = {}
    for (e1, e2), c in a.terms.items():
        key = (m11 * e1 + m12 * e2, m21 * e1 + m22 * e2)
        if key in terms:
            terms[key] = terms[key] + c
        else:
            terms[key] = c
    terms = {k: c for k, c in terms.items() if not c.is_zero()}
    return BiLaurentSeries(terms, a.qorder, a.region, _merged_window(terms))


def _constant_terms(a, who):
    out = {}
    for k, c in a.terms.items():
        if set(c.terms) - {Rat(0)}:
            raise ValueError(f"{who} is not a constant-coefficient Laurent polynomial")
        out[k] = c.coeff(0)
    return out


def laurent_poly_exact_divide(numer, denom):
    """Exact quotient of two Laurent polynomials with constant coefficients.

    Raises ExactDivisionError (carrying the offending monomial) when the
    division leaves a remainder.  Division runs by repeatedly cancelling
    the lex-leading term; the quotient support is confined a priori to
    the componentwise box [min(numer) - max(denom), max(numer) - min(denom)].
    """
    nterms = _constant_terms(numer, "numerator")
    dterms = _constant_terms(denom, "denominator")
    if not dterms:
        raise ZeroDivisionError("division by the zero polynomial")
    qorder = min(numer.qorder, denom.qorder)
    region = numer.region
    if not nterms:
        return bl_zero(qorder, region, 0)

    lead_d = max(dterms)
    cd = dterms[lead_d]
    lo = (
        min(k[0] for k in nterms) - max(k[0] for k in dterms),
        min(k[1] for k in nterms) - max(k[1] for k in dterms),
    )
    hi = (
        max(k[0] for k in nterms) - min(k[0] for k in dterms),
        max(k[1] for k in nterms) - min(k[1] for k in dterms),
    )
    rem = dict(nterms)
    quot = {}
    while rem:
        lead = max(rem)
        t = (lead[0] - lead_d[0], lead[1] - lead_d[1])
        if not (lo[0] <= t[0] <= hi[0] and lo[1] <= t[1] <= hi[1]):
            raise ExactDivisionError(
                f"nonzero remainder at monomial z1^{lead[0]} z2^{lead[1]}",
                monomial=lead,
            )
        c = rem[lead] / cd
        quot[t] = quot.get(t, Rat(0)) + c
        for k, v in dterms.items():
            key = (t[0] + k[0], t[1] + k[1])
            s = rem.get(key, Rat(0)) - c * v
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    terms = {
        k: q_monomial(c, 0, qorder) for k, c in quot.items() if c
    }
    return BiLaurentSeries(terms, qorder, region, _merged_window(terms))


# -- serialization ------------------------------------------------------------


def bl_to_json(a):
    return {
        "region": a.region.value,
        "qorder": rat_str(a.qorder),
        "window": a.window,
        "terms": [
            {
                "e1": rat_str(e1),
                "e2": rat_str(e2),
                "series": series_to_json(a.terms[(e1, e2)]),
            }
            for (e1, e2) in a.keys_sorted()
        ],
    }


def bl_from_json(d):
    terms = {
        (parse_rat(t["e1"]), parse_rat(t["e2"])): series_from_json(t["series"])
        for t in d["terms"]
    }
    return BiLaurentSeries(
        terms, parse_rat(d["qorder"]), Region(d["region"]), d["window"]
    )
