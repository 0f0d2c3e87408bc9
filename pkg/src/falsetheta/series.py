"""Truncated formal Puiseux series in q with exact rational coefficients.

A series is a finite map {exponent -> coefficient} together with a
truncation order: every exponent strictly below `order` is represented
exactly, everything at or above it is unknown and silently dropped.
Exponents and coefficients are both exact rationals; no floating point
enters this layer.

The truncation contract composes under multiplication as

    order(a*b) = min(order(a) + val(b), order(b) + val(a))

where val() is the minimal stored exponent (defined as the order for the
empty series, which is the canonical zero).
"""

from .rat import Rat, rat, rat_str, parse_rat, rat_ceil

__all__ = [
    "PuiseuxSeries",
    "zero",
    "one",
    "monomial",
    "series_add",
    "series_mul",
    "series_invert",
    "series_scale_q",
    "pochhammer",
    "eta_series",
    "series_to_json",
    "series_from_json",
]


class PuiseuxSeries:
    """Immutable truncated series sum_e c_e q^e with rational e, c_e."""

    __slots__ = ("terms", "order")

    def __init__(self, terms, order):
        order = rat(order)
        clean = {}
        for e, c in terms.items():
            e = rat(e)
            c = rat(c)
            if c and e < order:
                clean[e] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", order)

    def __setattr__(self, *a):
        raise AttributeError("PuiseuxSeries is immutable")

    # -- basic queries ----------------------------------------------------

    def valuation(self):
        """Minimal stored exponent; equals order for the zero series."""
        if not self.terms:
            return self.order
        return min(self.terms)

    def coeff(self, e):
        return self.terms.get(rat(e), Rat(0))

    def is_zero(self):
        return not self.terms

    def items(self):
        return sorted(self.terms.items())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = monomial(other, 0, self.order)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Rat(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return PuiseuxSeries(terms, order)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries({e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        if isinstance(other, int):
            other = monomial(other, 0, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PuiseuxSeries(
                {e: c * other for e, c in self.terms.items()}, self.order
            )
        order = min(self.order + other.valuation(), other.order + self.valuation())
        terms = {}
        # iterate the sparser operand outside
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = ea + eb
                if e >= order:
                    continue
                s = terms.get(e, Rat(0)) + ca * cb
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return PuiseuxSeries(terms, order)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = one(self.order + (n - 1) * self.valuation() if n else self.order)
        for _ in range(n):
            result = result * self
        return result

    def invert(self):
        """Multiplicative inverse; requires a nonzero leading term.

        Writing a = c q^v (1 + h) with val(h) > 0, the inverse is
        c^-1 q^-v sum_k (-h)^k.  The result order follows the truncation
        contract so that a * a.invert() == 1 up to the retained order.
        """
        if self.is_zero():
            raise ZeroDivisionError("cannot invert the zero series")
        v = self.valuation()
        c = self.terms[v]
        rel = self.order - v  # relative precision of (1 + h)
        h = PuiseuxSeries(
            {e - v: q / c for e, q in self.terms.items() if e != v}, rel
        )
        geom = one(rel)
        power = one(rel)
        hv = h.valuation()
        k = 1
        while k * hv < rel and not h.is_zero():
            power = power * (-h)
            if power.is_zero():
                break
            geom = geom + power
            k += 1
        return PuiseuxSeries(
            {e - v: q / c for e, q in geom.terms.items()}, rel - v
        )

    def shift(self, e, c=1):
        """Multiply by the exact monomial c*q^e (order shifts by e)."""
        e = rat(e)
        c = rat(c)
        if not c:
            return zero(self.order + e)
        return PuiseuxSeries(
            {k + e: v * c for k, v in self.terms.items()}, self.order + e
        )

    def scale_q(self, k):
        """Substitute q -> q^k for positive rational k."""
        k = rat(k)
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return PuiseuxSeries(
            {e * k: c for e, c in self.terms.items()}, self.order * k
        )

    def truncate(self, order):
        """Lower the truncation order (raising it is not meaningful)."""
        order = rat(order)
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PuiseuxSeries(self.terms, order)

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash((self.order, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"O(q^{self.order})"
        bits = []
        for e, c in self.items():
            if e == 0:
                bits.append(f"{c}")
            elif c == 1:
                bits.append(f"q^({e})")
            elif c == -1:
                bits.append(f"-q^({e})")
            else:
                bits.append(f"{c}*q^({e})")
        body = " + ".join(bits).replace("+ -", "- ")
        return f"{body} + O(q^{self.order})"


def zero(order):
    return PuiseuxSeries({}, order)


def one(order):
    return PuiseuxSeries({Rat(0): Rat(1)}, order)


def monomial(c, e, order):
    return PuiseuxSeries({rat(e): rat(c)}, order)


# -- function-style aliases for the operator forms --------------------------


def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_invert(a):
    return a.invert()


def series_scale_q(a, k):
    return a.scale_q(k)


# -- classical builders ------------------------------------------------------


def pochhammer(sign, s, t, n, order):
    """Truncated q-Pochhammer product prod_{j<n} (1 - sign*q^(s+j*t)).

    `n` is a nonnegative integer or None for the infinite product.  For
    the infinite product s > 0 is required (factors with s + j*t >= order
    contribute only beyond the truncation and are skipped); finite
    products require every factor exponent to be nonnegative.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    s = rat(s)
    t = rat(t)
    order = rat(order)
    if t <= 0:
        raise ValueError("step t must be positive")
    result = one(order)
    if n is None:
        if s <= 0:
            raise ValueError("infinite product requires s > 0")
        j = 0
        while s + j * t < order:
            result = result * PuiseuxSeries(
                {Rat(0): Rat(1), s + j * t: Rat(-sign)}, order
            )
            j += 1
        return result
    if not isinstance(n, int) or n < 0:
        raise ValueError("n must be a nonnegative integer or None")
    for j in range(n):
        e = s + j * t
        if e < 0:
            raise ValueError("negative factor exponent in finite product")
        result = result * PuiseuxSeries({Rat(0): Rat(1), e: Rat(-sign)}, order)
    return result


def eta_series(scale, order):
    """q^(k/24) * (q^k; q^k)_infinity truncated below `order` (k = scale)."""
    if not isinstance(scale, int) or scale < 1:
        raise ValueError("scale must be a positive integer")
    order = rat(order)
    pre = Rat(scale, 24)
    prod = pochhammer(1, scale, scale, None, order - pre)
    return prod.shift(pre)


# -- serialization ------------------------------------------------------------


def series_to_json(s):
    return {
        "order": rat_str(s.order),
        "terms": [
            {"exp": rat_str(e), "coeff": rat_str(c)} for e, c in s.items()
        ],
    }


def series_from_json(d):
    return PuiseuxSeries(
        {parse_rat(t["exp"]): parse_rat(t["coeff"]) for t in d["terms"]},
        parse_rat(d["order"]),
    )
