"""Representation kernel for SU(2): D-matrices, characters, Clebsch-Gordan
coefficients, Euler-angle quadrature, and conjugation-adapted harmonics.

Conventions, pinned by regression against the deck-group representation
matrices:

* A degree-j block is indexed with m1 on rows and m2 on columns, both
  DESCENDING: entry [r, c] holds (m1, m2) = (j - r, j - c).
* The entry D^j_{m1 m2}(u) for u = [[ahat, b], [c, d]] is the monomial sum
  over k of  N(j,m1,m2) * ahat^k b^{j+m1-k} c^{j+m2-k} d^{k-m1-m2} /
  [k! (j+m2-k)! (j+m1-k)! (k-m1-m2)!]  with the square-root factorial
  prefactor; at the diagonal lift diag(-i, i) this yields the diagonal
  phase exp(-i pi m1).
* Half-integer degrees are supported throughout, although the space-form
  bases only consume integer ones.

All evaluators broadcast over numpy arrays, so a grid of group elements is
one call, not a Python loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from .su2 import IsoPair, Su2Exact, rotation_angles

__all__ = [
    "EulerAngles",
    "EulerQuadrature",
    "character_jj",
    "clebsch_gordan",
    "conjugation_harmonic",
    "euler_quadrature",
    "quadrature_inner",
    "su2_character",
    "wigner_d",
    "wigner_entry",
    "wigner_entry_function",
]


def _two_j(j, what: str = "degree") -> int:
    value = 2 * j
    rounded = int(round(float(value)))
    if abs(float(value) - rounded) > 1e-9 or rounded < 0:
        raise ValueError(f"{what} must be a non-negative half-integer, got {j}")
    return rounded


def _two_m(m, two_j: int, what: str = "m") -> int:
    value = 2 * m
    rounded = int(round(float(value)))
    if abs(float(value) - rounded) > 1e-9:
        raise ValueError(f"{what} must be a half-integer, got {m}")
    if (rounded - two_j) % 2 or abs(rounded) > two_j:
        raise ValueError(f"{what}={m} invalid for degree {two_j / 2}")
    return rounded


@lru_cache(maxsize=None)
def _entry_terms(two_j: int, two_m1: int, two_m2: int):
    """Monomial data for one matrix entry: tuples (coef, ka, kb, kc, kd)."""
    jm1 = (two_j + two_m1) // 2
    jm1c = (two_j - two_m1) // 2
    jm2 = (two_j + two_m2) // 2
    jm2c = (two_j - two_m2) // 2
    norm_sq = (
        math.factorial(jm1)
        * math.factorial(jm1c)
        * math.factorial(jm2)
        * math.factorial(jm2c)
    )
    m1m2 = (two_m1 + two_m2) // 2
    terms = []
    for k in range(max(0, m1m2), min(jm1, jm2) + 1):
        den = (
            math.factorial(k)
            * math.factorial(jm2 - k)
            * math.factorial(jm1 - k)
            * math.factorial(k - m1m2)
        )
        coef = math.sqrt(float(Fraction(norm_sq, den * den)))
        terms.append((coef, k, jm1 - k, jm2 - k, k - m1m2))
    return tuple(terms)


def wigner_entry(j, m1, m2, a, b, c, d):
    """D^j_{m1,m2} evaluated at matrix entries a,b,c,d (arrays broadcast)."""
    tj = _two_j(j)
    tm1 = _two_m(m1, tj, "m1")
    tm2 = _two_m(m2, tj, "m2")
    a, b, c, d = (np.asarray(v, dtype=complex) for v in (a, b, c, d))
    out = np.zeros(np.broadcast(a, b, c, d).shape, dtype=complex)
    for coef, ka, kb, kc, kd in _entry_terms(tj, tm1, tm2):
        out = out + coef * a**ka * b**kb * c**kc * d**kd
    return out if out.shape else complex(out)


def _as_numeric_2x2(u) -> np.ndarray:
    if isinstance(u, Su2Exact):
        return u.to_complex()
    arr = np.asarray(u, dtype=complex)
    if arr.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
    return arr


def wigner_d(j, u, unitary_tol: float = 1e-9) -> np.ndarray:
    """Full (2j+1) x (2j+1) representation matrix at a special unitary u.

    Rows and columns run over m1 and m2 in descending order.  A visibly
    non-unitary argument is rejected rather than silently represented.
    """
    mat = _as_numeric_2x2(u)
    if np.max(np.abs(mat @ mat.conj().T - np.eye(2))) > unitary_tol:
        raise ValueError("argument matrix is not unitary")
    tj = _two_j(j)
    dim = tj + 1
    a, b, c, d = mat[0, 0], mat[0, 1], mat[1, 0], mat[1, 1]
    out = np.empty((dim, dim), dtype=complex)
    for r in range(dim):
        tm1 = tj - 2 * r
        for col in range(dim):
            tm2 = tj - 2 * col
            out[r, col] = wigner_entry(tj / 2, tm1 / 2, tm2 / 2, a, b, c, d)
    return out


def su2_character(j, phi) -> float:
    """Character chi^j at rotation angle phi in [0, 2 pi].

    Equals sin((2j+1) phi/2) / sin(phi/2); evaluated as the equivalent
    cosine sum, which needs no special casing at phi = 0 or 2 pi.
    """
    tj = _two_j(j)
    phi = float(phi)
    return float(sum(math.cos((tj / 2 - k) * phi) for k in range(tj + 1)))


def character_jj(pair: IsoPair, j) -> float:
    """Character of the two-sided degree-(j, j) representation at a pair."""
    phi_l, phi_r = rotation_angles(pair)
    return su2_character(j, phi_l) * su2_character(j, phi_r)


def clebsch_gordan(j1, m1, j2, m2, l, m) -> float:
    """Clebsch-Gordan coefficient <j1 m1 j2 m2 | l m>, Condon-Shortley.

    Evaluated from the exact rational square with the sign of the k-sum;
    any out-of-range label returns 0 rather than raising.
    """
    try:
        tj1, tj2, tl = _two_j(j1, "j1"), _two_j(j2, "j2"), _two_j(l, "l")
        tm1 = _two_m(m1, tj1, "m1")
        tm2 = _two_m(m2, tj2, "m2")
        tm = _two_m(m, tl, "m")
    except ValueError:
        return 0.0
    if tm1 + tm2 != tm:
        return 0.0
    if not abs(tj1 - tj2) <= tl <= tj1 + tj2 or (tj1 + tj2 + tl) % 2:
        return 0.0

    def fact(two_value: int) -> int:
        if two_value % 2:
            raise ValueError("non-integer factorial argument")
        return math.factorial(two_value // 2)

    prefactor = Fraction(
        (tl + 1)
        * fact(tj1 + tj2 - tl)
        * fact(tj1 - tj2 + tl)
        * fact(-tj1 + tj2 + tl)
        * fact(tl + tm)
        * fact(tl - tm)
        * fact(tj1 + tm1)
        * fact(tj1 - tm1)
        * fact(tj2 + tm2)
        * fact(tj2 - tm2),
        fact(tj1 + tj2 + tl + 2),
    )
    total = Fraction(0)
    k_lo = max(0, (tj2 - tl - tm1) // 2, (tj1 + tm2 - tl) // 2)
    k_hi = min((tj1 + tj2 - tl) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    for k in range(k_lo, k_hi + 1):
        den = (
            math.factorial(k)
            * fact(tj1 + tj2 - tl - 2 * k)
            * fact(tj1 - tm1 - 2 * k)
            * fact(tj2 + tm2 - 2 * k)
            * fact(tl - tj2 + tm1 + 2 * k)
            * fact(tl - tj1 - tm2 + 2 * k)
        )
        total += Fraction((-1) ** k, den)
    if total == 0:
        return 0.0
    sign = 1.0 if total > 0 else -1.0
    return sign * math.sqrt(float(prefactor * total * total))


@dataclass(frozen=True)
class EulerAngles:
    """Euler coordinates on SU(2); fields may be scalars or broadcastable arrays."""

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray

    def matrix_entries(self):
        """Entries (a, b, c, d) of [[z1, z2], [-conj(z2), conj(z1)]]."""
        alpha = np.asarray(self.alpha, dtype=float)
        beta = np.asarray(self.beta, dtype=float)
        gamma = np.asarray(self.gamma, dtype=float)
        z1 = np.exp(0.5j * (alpha + gamma)) * np.cos(beta / 2.0)
        z2 = np.exp(0.5j * (alpha - gamma)) * np.sin(beta / 2.0)
        return z1, z2, -np.conj(z2), np.conj(z1)

    def matrix(self) -> np.ndarray:
        """Stacked 2x2 special unitary matrices, shape (..., 2, 2)."""
        a, b, c, d = self.matrix_entries()
        return np.stack(
            [np.stack([a, b], axis=-1), np.stack([c, d], axis=-1)], axis=-2
        )


def wigner_entry_function(j, m1, m2):
    """Vectorized callable of EulerAngles returning D^j_{m1,m2}."""
    tj = _two_j(j)
    tm1 = _two_m(m1, tj, "m1")
    tm2 = _two_m(m2, tj, "m2")

    def evaluate(angles: EulerAngles):
        a, b, c, d = angles.matrix_entries()
        return wigner_entry(tj / 2, tm1 / 2, tm2 / 2, a, b, c, d)

    return evaluate


@dataclass(frozen=True)
class EulerQuadrature:
    """Product rule for the normalized measure (1/8 pi^2) da sin(b) db dg."""

    angles: EulerAngles
    weights: np.ndarray
    max_degree: int

    @property
    def node_count(self) -> int:
        return self.weights.size


def euler_quadrature(
    max_degree: int,
    n_alpha: int | None = None,
    n_beta: int | None = None,
    n_gamma: int | None = None,
) -> EulerQuadrature:
    """Quadrature exact for trigonometric polynomials up to max_degree.

    max_degree is the band limit of the integrand (2 j_max for a product of
    two degree-j_max matrix elements).  Uniform grids in alpha and gamma
    need max_degree + 1 nodes, the Gauss-Legendre rule in cos(beta) needs
    max_degree + 2; explicitly requesting fewer raises ValueError.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    na = n_alpha if n_alpha is not None else max_degree + 1
    ng = n_gamma if n_gamma is not None else max_degree + 1
    nb = n_beta if n_beta is not None else max_degree + 2
    if na < max_degree + 1 or ng < max_degree + 1:
        raise ValueError(
            f"alpha/gamma grids need at least {max_degree + 1} nodes for degree {max_degree}"
        )
    if nb < max_degree + 2:
        raise ValueError(
            f"cos(beta) rule needs at least {max_degree + 2} nodes for degree {max_degree}"
        )
    alpha = 2.0 * np.pi * np.arange(na) / na
    gamma = 2.0 * np.pi * np.arange(ng) / ng
    t, wt = leggauss(nb)
    beta = np.arccos(t)
    aa, bb, gg = np.meshgrid(alpha, beta, gamma, indexing="ij")
    ww = np.broadcast_to(wt[None, :, None], aa.shape)
    weights = (ww / (2.0 * na * ng)).reshape(-1)
    return EulerQuadrature(
        angles=EulerAngles(aa.reshape(-1), bb.reshape(-1), gg.reshape(-1)),
        weights=weights,
        max_degree=max_degree,
    )


def quadrature_inner(f, g, resolution) -> complex:
    """Normalized inner product (1/8 pi^2) inte conj(f) g over Euler angles.

    resolution is either the integrand band limit (an int) or a prebuilt
    EulerQuadrature.  f and g must broadcast over array-valued angles.
    """
    rule = resolution if isinstance(resolution, EulerQuadrature) else euler_quadrature(int(resolution))
    fv = np.asarray(f(rule.angles), dtype=complex)
    gv = np.asarray(g(rule.angles), dtype=complex)
    return complex(np.sum(rule.weights * np.conj(fv) * gv))


def _cg_column(two_j: int, tl: int, tm: int):
    """Coefficients <j -m1 j m+m1 | l m> with phase (-1)^(j-m1), by m1."""
    j = two_j / 2
    out = []
    for tm1 in range(-two_j, two_j + 1, 2):
        tm2 = tm + tm1
        if abs(tm2) > two_j:
            continue
        cg = clebsch_gordan(j, -tm1 / 2, j, tm2 / 2, tl / 2, tm / 2)
        if cg == 0.0:
            continue
        phase = (-1.0) ** ((two_j - tm1) // 2)
        out.append((tm1, tm2, phase * cg))
    return out


def conjugation_harmonic(beta_label: int, l, m, u):
    """Harmonic psi_{beta l m} at u, adapted to conjugation on the sphere.

    beta_label = 2j+1 must be odd so the degree j is an integer; l runs
    0..2j and |m| <= l.  u may be a single 2x2 unitary, a stacked array of
    them, or EulerAngles.
    """
    if beta_label < 1 or beta_label % 2 == 0:
        raise ValueError("beta label must be a positive odd integer 2j+1")
    two_j = beta_label - 1
    tl = _two_j(l, "l")
    if tl % 2 or tl > 2 * two_j:
        raise ValueError(f"l must be an integer in 0..{two_j}")
    tm = _two_m(m, tl, "m")
    if isinstance(u, EulerAngles):
        a, b, c, d = u.matrix_entries()
    else:
        arr = u.to_complex() if isinstance(u, Su2Exact) else np.asarray(u, dtype=complex)
        if arr.shape[-2:] != (2, 2):
            raise ValueError(f"expected 2x2 matrices, got shape {arr.shape}")
        a, b, c, d = arr[..., 0, 0], arr[..., 0, 1], arr[..., 1, 0], arr[..., 1, 1]
    total = 0
    for tm1, tm2, coef in _cg_column(two_j, tl, tm):
        total = total + coef * wigner_entry(two_j / 2, tm1 / 2, tm2 / 2, a, b, c, d)
    if isinstance(total, int):
        shape = np.broadcast(a, b).shape
        return np.zeros(shape, dtype=complex) if shape else 0j
    return total


def wigner_from_harmonics(beta_label: int, m1, m2, u):
    """Inverse expansion: rebuild D^j_{m1,m2}(u) from the adapted harmonics."""
    two_j = beta_label - 1
    j = two_j / 2
    tm1 = _two_m(m1, two_j, "m1")
    tm2 = _two_m(m2, two_j, "m2")
    tm = tm2 - tm1
    total = 0
    for tl in range(0, 2 * two_j + 1, 2):
        if abs(tm) > tl:
            continue
        cg = clebsch_gordan(j, -tm1 / 2, j, tm2 / 2, tl / 2, tm / 2)
        if cg == 0.0:
            continue
        total = total + cg * conjugation_harmonic(beta_label, tl / 2, tm / 2, u)
    phase = (-1.0) ** ((two_j - tm1) // 2)
    return phase * total
