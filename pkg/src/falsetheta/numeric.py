"""Complex evaluation and numerical transformation-law checks.

Everything here is double precision.  Truncation cutoffs are chosen from
Gaussian tail bounds so the analytic error sits below 1e-12 at the
registered sample points; verification tolerances are 1e-8 relative.

The eta multiplier convention (Dedekind-sum formula plus the principal
square-root branch) is validated against eta's own functional equation
before any dependent modular check runs, so the convention is
self-certifying rather than trusted.
"""

import cmath
import math
import time
from dataclasses import dataclass
from functools import lru_cache

from .rat import Rat, rat, rat_floor

__all__ = [
    "eval_theta",
    "eval_eta",
    "eval_f",
    "eval_T",
    "eval_J",
    "eval_q_series",
    "eval_bilaurent",
    "dedekind_sum",
    "eta_multiplier",
    "jacobi_symbol",
    "EtaMultiplierValidationError",
    "TransformationResidual",
    "check_transformation",
    "transformation_grid",
    "run_transformation_checks",
    "residual_report_to_json",
    "sample_points",
    "gamma_grid",
    "shift_grid",
    "LAW_IDS",
    "complex_str",
]

_TWO_PI_I = 2j * math.pi

LAW_IDS = (
    "THETA_MOD",
    "THETA_ELL",
    "F_MOD",
    "F_ELL",
    "T_MOD",
    "T_ELL",
    "J_MOD",
    "J_ELL",
)


# -- pointwise evaluators -----------------------------------------------------


def _theta_cutoff(im_z, s):
    # smallest n with pi*s*n^2 - 2*pi*|Im z|*n > 41 (term below ~1e-18)
    y = abs(im_z)
    return (y + math.sqrt(y * y + 14.0 * s)) / s + 2.0


def eval_theta(z, tau, scale=1, N=None):
    """Odd Jacobi theta sum_{n in 1/2+Z} q^(scale*n^2/2) e^(2 pi i n (z+1/2)).

    The sum runs over |n| <= N (half-integers); with N=None the cutoff is
    chosen so the first omitted term is below 1e-18 in magnitude, which
    bounds the truncation error by a geometrically decaying tail.
    """
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    s = scale * tau.imag
    if N is None:
        N = _theta_cutoff(z.imag, s)
    total = 0.0 + 0.0j
    j = 0
    while j + 0.5 <= N:
        n = j + 0.5
        base = _TWO_PI_I * (scale * tau * n * n / 2)
        total += cmath.exp(base + _TWO_PI_I * n * (z + 0.5))
        total += cmath.exp(base - _TWO_PI_I * n * (z + 0.5))
        j += 1
    return total


def eval_eta(tau, N=None):
    """Dedekind eta via the pentagonal number sum over (6k+1)^2/24."""
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    if N is None:
        # need 2*pi*Im(tau)*(6k+1)^2/24 > 41 at the cutoff
        N = int(math.sqrt(41.0 * 24 / (2 * math.pi * tau.imag)) / 6) + 2
    total = 0.0 + 0.0j
    for k in range(-N, N + 1):
        e = (6 * k + 1) ** 2
        total += (-1) ** (k & 1) * cmath.exp(_TWO_PI_I * tau * e / 24)
    return total


_THETA_ZERO_GUARD = 1e-6


def eval_f(z, tau, N=None):
    """Ratio of six theta values: prod_u theta(u;2tau)/theta(u;tau).

    u runs over z1, z2, z1+z2.  Points too close to a denominator zero
    (|theta| <= 1e-6) are rejected.
    """
    z1, z2 = z
    out = 1.0 + 0.0j
    for u in (z1, z2, z1 + z2):
        den = eval_theta(u, tau, 1, N)
        if abs(den) <= _THETA_ZERO_GUARD:
            raise ValueError("sample point too close to a theta zero")
        out *= eval_theta(u, tau, 2, N) / den
    return out


def eval_T(z, tau, N=None):
    """Hexagonal-lattice theta sum_{n in Z^2} q^(2Q(n)) zeta1^? zeta2^?.

    Concretely sum q^(2(n1^2+n2^2-n1 n2)) e^(2 pi i (n1 w1 + n2 w2)) with
    w1 = z1 + 2 z2, w2 = z1 - z2, truncated outside a square whose first
    omitted shell is below 1e-18.
    """
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    z1, z2 = z
    w1 = z1 + 2 * z2
    w2 = z1 - z2
    if N is None:
        s = tau.imag
        b = max(abs(w1.imag), abs(w2.imag))
        # 2*pi*Im(tau)*r^2 - 4*pi*b*r > 41 outside radius r (Q(n) >= r^2/2... )
        N = int(math.ceil((b + math.sqrt(b * b + 7.0 * s)) / s)) + 2
    total = 0.0 + 0.0j
    for n1 in range(-N, N + 1):
        for n2 in range(-N, N + 1):
            q_exp = 2 * (n1 * n1 + n2 * n2 - n1 * n2)
            total += cmath.exp(_TWO_PI_I * (tau * q_exp + n1 * w1 + n2 * w2))
    return total


def eval_J(z, tau, N=None):
    """eta(tau)^5/eta(2 tau) * T(z;tau) * f(z;tau)."""
    eta1 = eval_eta(tau, N)
    eta2 = eval_eta(2 * tau, N)
    return eta1 ** 5 / eta2 * eval_T(z, tau, N) * eval_f(z, tau, N)


# -- formal/numeric bridge ----------------------------------------------------


def eval_q_series(series, tau):
    """Termwise evaluation of a truncated q-series at q = e^(2 pi i tau)."""
    total = 0.0 + 0.0j
    for e, c in series.terms.items():
        total += float(c) * cmath.exp(_TWO_PI_I * tau * float(e))
    return total


def eval_bilaurent(F, z1, z2, tau):
    """Termwise evaluation with zeta_j^e := e^(2 pi i e z_j) (rational e)."""
    total = 0.0 + 0.0j
    for (e1, e2), coeff in F.terms.items():
        phase = cmath.exp(_TWO_PI_I * (float(e1) * z1 + float(e2) * z2))
        total += phase * eval_q_series(coeff, tau)
    return total


# -- arithmetic helpers -------------------------------------------------------


def _sawtooth(x):
    fl = rat_floor(x)
    if x == fl:
        return Rat(0)
    return x - fl - Rat(1, 2)


def dedekind_sum(d, c):
    """Exact s(d, c) = sum_{k=1}^{c-1} ((k/c)) ((kd/c)); requires gcd = 1."""
    if not isinstance(c, int) or c <= 0:
        raise ValueError("c must be a positive integer")
    if math.gcd(c, d) != 1:
        raise ValueError("d and c must be coprime")
    total = Rat(0)
    for k in range(1, c):
        total += _sawtooth(Rat(k, c)) * _sawtooth(Rat(k * d, c))
    return total


def jacobi_symbol(a, n):
    """Jacobi symbol (a/n) for odd positive n."""
    if not isinstance(n, int) or n <= 0 or n % 2 == 0:
        raise ValueError("n must be an odd positive integer")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _jacobi_signed(a, d):
    # Kronecker extension to odd negative lower entries
    if d < 0:
        return (-1 if a < 0 else 1) * jacobi_symbol(a, -d)
    return jacobi_symbol(a, d)


class EtaMultiplierValidationError(Exception):
    """The eta multiplier convention failed its functional-equation check."""


def eta_multiplier(gamma):
    """Multiplier chi(gamma) with eta(gamma tau) = chi (c tau + d)^(1/2) eta(tau).

    Principal square-root branch.  For c > 0 this is the classical
    exp(pi i ((a+d)/(12c) - s(d,c) - 1/4)); translations give e^(pi i b/12)
    and matrices with c < 0 (or -identity translations) reduce to their
    negatives via chi(gamma) = i * chi(-gamma).
    """
    a, b, c, d = gamma
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    if c < 0 or (c == 0 and d < 0):
        return 1j * eta_multiplier((-a, -b, -c, -d))
    if c == 0:
        return cmath.exp(1j * math.pi * b / 12)
    expo = Rat(a + d, 12 * c) - dedekind_sum(d, c) - Rat(1, 4)
    return cmath.exp(1j * math.pi * float(expo))


_VALIDATION_TAUS = (0.13 + 0.82j, -0.37 + 1.31j, 0.52 + 0.61j)
_VALIDATION_GAMMAS = ((0, -1, 1, 0), (1, 0, 1, 1), (3, 1, 2, 1), (1, 1, 0, 1))
ETA_VALIDATION_TOL = 1e-9


@lru_cache(maxsize=1)
def eta_multiplier_self_check():
    """Max residual of the eta functional equation over the sample set.

    Raises EtaMultiplierValidationError above 1e-9; called lazily before
    every multiplier-dependent transformation check.
    """
    worst = 0.0
    for g in _VALIDATION_GAMMAS:
        a, b, c, d = g
        chi = eta_multiplier(g)
        for tau in _VALIDATION_TAUS:
            w = c * tau + d
            lhs = eval_eta((a * tau + b) / w)
            rhs = chi * cmath.sqrt(w) * eval_eta(tau)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    if worst >= ETA_VALIDATION_TOL:
        raise EtaMultiplierValidationError(
            f"eta multiplier residual {worst:.3e} exceeds {ETA_VALIDATION_TOL}"
        )
    return worst


# -- transformation laws ------------------------------------------------------


@dataclass(frozen=True)
class TransformationResidual:
    law: str
    params: dict
    residual: float
    tolerance: float
    ms: int

    @property
    def verdict(self):
        return "equal" if self.residual < self.tolerance else "unequal"


def residual_report_to_json(rep):
    return {
        "id": rep.law,
        "params": rep.params,
        "verdict": rep.verdict,
        "residual": rep.residual,
        "tolerance": rep.tolerance,
        "ms": rep.ms,
    }


def complex_str(z):
    z = complex(z)
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real:.12g}{sign}{abs(z.imag):.12g}i"


def _check_gamma(gamma, level):
    a, b, c, d = gamma
    for x in gamma:
        if not isinstance(x, int):
            raise ValueError("matrix entries must be integers")
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    if c % level != 0:
        raise ValueError(f"matrix not in Gamma_0({level})")


def _check_shift(m, l, parity):
    # the lattice-theta law also needs even m: completing the square in
    # the defining sum shifts the summation index by (m1+m2, m1)/2
    m1, m2 = m
    l1, l2 = l
    for x in (m1, m2, l1, l2):
        if not isinstance(x, int):
            raise ValueError("lattice shifts must be integer vectors")
    if parity == 2 and (m1 % 2 or m2 % 2):
        raise ValueError("m must lie in 2Z^2 for this law")


def _qstar(z1, z2):
    return z1 * z1 + z2 * z2 + z1 * z2


def _nu_f(gamma):
    a, b, c, d = gamma
    half = (a, 2 * b, c // 2, d)
    if half[0] * half[3] - half[1] * half[2] != 1:
        raise ValueError("conjugated matrix must have determinant 1")
    return eta_multiplier(half) ** 9 * eta_multiplier(gamma) ** -9


def _mu_j(gamma):
    # composed from the eta-quotient, lattice-theta and ratio multipliers
    a, b, c, d = gamma
    half = (a, 2 * b, c // 2, d)
    if half[0] * half[3] - half[1] * half[2] != 1:
        raise ValueError("conjugated matrix must have determinant 1")
    return (
        _jacobi_signed(-3, d)
        * eta_multiplier(gamma) ** -4
        * eta_multiplier(half) ** 8
    )


def _theta_pair(z):
    if isinstance(z, (tuple, list)):
        return complex(z[0])
    return complex(z)


def check_transformation(law, element, z, tau, tolerance=1e-8, N=None):
    """Residual of one transformation law at one point.

    element is a matrix (a, b, c, d) for *_MOD laws and a pair (m, l) of
    integer vectors for *_ELL laws (plain integers for THETA_ELL).  The
    residual is |LHS - factor * RHS| / max(1, |RHS|) with the exact
    automorphy factor of the cited law.
    """
    if law not in LAW_IDS:
        raise ValueError(f"unknown law {law!r}")
    tau = complex(tau)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    t0 = time.monotonic()
    params = {"tau": complex_str(tau)}

    if law.startswith("THETA"):
        zz = _theta_pair(z)
        params["z"] = complex_str(zz)
        if law == "THETA_MOD":
            gamma = tuple(element)
            _check_gamma(gamma, 1)
            a, b, c, d = gamma
            params["gamma"] = list(gamma)
            w = c * tau + d
            lhs = eval_theta(zz / w, (a * tau + b) / w, 1, N)
            factor = (
                eta_multiplier(gamma) ** 3
                * cmath.sqrt(w)
                * cmath.exp(1j * math.pi * c * zz * zz / w)
            )
        else:
            m, l = element
            m = int(m[0]) if isinstance(m, (tuple, list)) else int(m)
            l = int(l[0]) if isinstance(l, (tuple, list)) else int(l)
            params["m"] = m
            params["l"] = l
            lhs = eval_theta(zz + m * tau + l, tau, 1, N)
            factor = (-1) ** ((m + l) & 1) * cmath.exp(
                _TWO_PI_I * (-tau * m * m / 2 - m * zz)
            )
        rhs = eval_theta(zz, tau, 1, N)
    else:
        z1, z2 = complex(z[0]), complex(z[1])
        params["z"] = [complex_str(z1), complex_str(z2)]
        kind = law.split("_")[0]
        evaluator = {"F": eval_f, "T": eval_T, "J": eval_J}[kind]
        if law.endswith("_MOD"):
            gamma = tuple(element)
            level = {"F": 2, "T": 6, "J": 6}[kind]
            _check_gamma(gamma, level)
            if kind in ("F", "J"):
                eta_multiplier_self_check()
            a, b, c, d = gamma
            params["gamma"] = list(gamma)
            w = c * tau + d
            lhs = evaluator((z1 / w, z2 / w), (a * tau + b) / w, N)
            phase = cmath.exp(1j * math.pi * c * _qstar(z1, z2) / w)
            if kind == "F":
                factor = _nu_f(gamma) / phase
            elif kind == "T":
                factor = _jacobi_signed(-3, d) * w * phase
            else:
                factor = _mu_j(gamma) * w ** 3
        else:
            m, l = element
            m = (int(m[0]), int(m[1]))
            l = (int(l[0]), int(l[1]))
            _check_shift(m, l, 2)
            params["m"] = list(m)
            params["l"] = list(l)
            lhs = evaluator((z1 + m[0] * tau + l[0], z2 + m[1] * tau + l[1]), tau, N)
            if kind == "F":
                factor = cmath.exp(
                    _TWO_PI_I
                    * (
                        tau * _qstar(m[0], m[1]) / 2
                        + z1 * (m[0] + m[1] / 2)
                        + z2 * (m[1] + m[0] / 2)
                    )
                )
            elif kind == "T":
                factor = cmath.exp(
                    -_TWO_PI_I
                    * (
                        tau * _qstar(m[0], m[1]) / 2
                        + z1 * (m[0] + m[1] / 2)
                        + z2 * (m[1] + m[0] / 2)
                    )
                )
            else:
                factor = 1.0
        rhs = evaluator((z1, z2), tau, N)

    residual = abs(lhs - factor * rhs) / max(1.0, abs(rhs))
    ms = int((time.monotonic() - t0) * 1000)
    return TransformationResidual(law, params, residual, tolerance, ms)


# -- verification grids -------------------------------------------------------


def sample_points(count=5):
    """Generic points (z1, z2, tau) with Im(tau) >= 0.5, away from theta zeros."""
    pts = [
        (0.21 + 0.13j, 0.11 + 0.07j, 0.10 + 1.20j),
        (0.17 - 0.09j, 0.31 + 0.05j, -0.20 + 0.90j),
        (0.05 + 0.21j, 0.23 - 0.11j, 0.33 + 0.75j),
        (0.41 + 0.03j, 0.08 + 0.17j, -0.05 + 1.50j),
        (0.13 + 0.06j, 0.37 - 0.04j, 0.25 + 0.62j),
        (0.29 - 0.12j, 0.19 + 0.09j, 0.07 + 1.05j),
        (0.10 + 0.18j, 0.27 + 0.02j, -0.31 + 0.80j),
    ]
    return pts[:count]


def gamma_grid(level, count=5):
    """Determinant-one matrices (a, b, c, d) with c a positive multiple of level."""
    out = []
    k = 1
    while len(out) < count:
        c = level * k
        for d in range(1, 4 * c):
            if math.gcd(d, c) != 1:
                continue
            a = pow(d, -1, c) if c > 1 else 1
            b = (a * d - 1) // c
            out.append((a, b, c, d))
            if len(out) >= count:
                break
        k += 1
    return out


def shift_grid(parity, count=5):
    """Lattice shift pairs (m, l) with m in parity*Z^2."""
    base_m = [(1, 0), (0, 1), (1, 1), (-1, 0), (1, -1), (0, -1), (2, 1)]
    base_l = [(0, 0), (1, 0), (0, 1), (-1, 1), (1, 1), (2, -1), (0, 2)]
    out = []
    for i in range(count):
        m = base_m[i % len(base_m)]
        out.append(((parity * m[0], parity * m[1]), base_l[i % len(base_l)]))
    return out


def transformation_grid(law, points=5, elements=5):
    """(element, z, tau) combinations for one law: points x elements."""
    if law not in LAW_IDS:
        raise ValueError(f"unknown law {law!r}")
    kind, mode = law.split("_")
    pts = sample_points(points)
    if mode == "MOD":
        level = {"THETA": 1, "F": 2, "T": 6, "J": 6}[kind]
        elems = gamma_grid(level, elements)
    elif law == "T_ELL":
        # keep Q*(m) minimal and Im(tau) low: the automorphy factor grows
        # like |q|^(-Q*(m)/2) and magnifies double-precision roundoff
        small = [(2, 0), (0, 2), (-2, 0), (0, -2), (2, -2), (-2, 2)]
        ells = [(0, 0), (1, 0), (0, 1), (-1, 1), (1, 1), (2, -1)]
        elems = [(small[i % 6], ells[i % 6]) for i in range(elements)]
        pts = [
            (z1, z2, complex(tau.real, min(tau.imag, 0.9)))
            for z1, z2, tau in pts
        ]
    else:
        elems = shift_grid(2, elements)
        if kind == "THETA":
            elems = [(m[0] // 2, l[0]) for m, l in elems]
    combos = []
    for z1, z2, tau in pts:
        z = z1 if kind == "THETA" else (z1, z2)
        for e in elems:
            combos.append((e, z, tau))
    return combos


def run_transformation_checks(law, tolerance=1e-8, points=5, elements=5):
    return [
        check_transformation(law, e, z, tau, tolerance)
        for e, z, tau in transformation_grid(law, points, elements)
    ]
