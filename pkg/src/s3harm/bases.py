"""Multiplicities, projection operators, and orthonormal bases of
deck-periodic harmonics for the two cubic space forms.

Degree-j harmonics on S^3 are spanned by the (2j+1)^2 matrix elements
D^j_{m1,m2}(u).  A deck group H of order 8 acts on them; the dimension of
the H-invariant subspace is the multiplicity m(j), computed here by
character averaging, and realized concretely by closed-form combinations
of one or two matrix elements.

Normalization: the emitted functions have unit norm under the UNNORMALIZED
Euler measure da sin(b) db dg of total mass 8 pi^2.  The quadrature inner
product in this package divides by 8 pi^2, so Gram matrices are assembled
as 8 pi^2 times quadrature inner products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import groupcore as gc
from .deck import DeckGroup, build_cyclic8, build_quaternion
from .su2 import Su2Exact, matrix_from_point
from .wigner import (
    EulerAngles,
    character_jj,
    euler_quadrature,
    wigner_d,
    wigner_entry,
)

__all__ = [
    "BasisFunction",
    "basis_c2",
    "basis_c3",
    "basis_for",
    "gram_matrix",
    "multiplicity_c8",
    "multiplicity_q",
    "multiplicity_for",
    "projector_c8",
    "projector_q",
    "verify_basis",
]

_MEASURE_MASS = 8.0 * math.pi**2


def _require_integer_j(j) -> int:
    jj = int(round(float(j)))
    if abs(float(j) - jj) > 1e-9 or jj < 0:
        raise ValueError(f"degree must be a non-negative integer, got {j}")
    return jj


def _is_half_integer(j) -> bool:
    two_j = 2 * float(j)
    return abs(two_j - round(two_j)) < 1e-9 and int(round(two_j)) % 2 == 1


def multiplicity_c8(j) -> int:
    """Number of cyclic-8 periodic harmonics of degree j.

    Character average over the deck group; half-integer degree carries no
    periodic states because the group contains the central inversion.
    """
    if _is_half_integer(j):
        return 0
    jj = _require_integer_j(j)
    total = sum(character_jj(el.pair, jj) for el in build_cyclic8().elements) / 8.0
    value = int(round(total))
    if abs(total - value) > 1e-9 or value < 0:
        raise RuntimeError(f"character sum for degree {jj} is not a clean integer: {total}")
    return value


def multiplicity_q(j) -> int:
    """Number of quaternion-periodic harmonics of degree j, in closed form."""
    if _is_half_integer(j):
        return 0
    jj = _require_integer_j(j)
    n = 2 * jj + 1
    numerator = 2 * n * (n + 3 * (-1) ** jj)
    if numerator % 8:
        raise RuntimeError(f"closed form for degree {jj} is not integral")
    return numerator // 8


def multiplicity_q_character_sum(j) -> int:
    """Independent route to multiplicity_q via the character average."""
    if _is_half_integer(j):
        return 0
    jj = _require_integer_j(j)
    total = sum(character_jj(el.pair, jj) for el in build_quaternion().elements) / 8.0
    value = int(round(total))
    if abs(total - value) > 1e-9:
        raise RuntimeError(f"character sum for degree {jj} is not a clean integer: {total}")
    return value


def multiplicity_for(manifold: str, j) -> int:
    key = manifold.strip().upper()
    if key == "C2":
        return multiplicity_c8(j)
    if key == "C3":
        return multiplicity_q(j)
    raise ValueError(f"unknown manifold {manifold!r}; expected C2 or C3")


def _averaged_projector(group: DeckGroup, j: int) -> np.ndarray:
    """Group average of the two-sided operators on the (2j+1)^2 space.

    The operator acts on coefficient vectors of harmonics: a function
    sum_{m1',m2'} v_{m1'm2'} D_{m1'm2'}(u) precomposed with u -> wl^-1 u wr
    picks up D(wl^-1) on the left index and D(wr) on the right, which is
    the Kronecker product below.  Index pairs (m1, m2) are flattened
    row-major with both indices descending, matching coefficient_vector.
    """
    dim = 2 * j + 1
    total = np.zeros((dim * dim, dim * dim), dtype=complex)
    for el in group.elements:
        left = wigner_d(j, el.pair.left.inverse())
        right = wigner_d(j, el.pair.right)
        total += np.kron(left.T, right)
    return total / len(group.elements)


def projector_c8(j) -> tuple[np.ndarray, np.ndarray]:
    """Projector onto cyclic-8 invariant harmonics, by two routes.

    Returns (averaged, closed_form) on the (2j+1)^2 space; the first is the
    group average of representation operators, the second the explicit
    selection-rule matrix.  Agreement of the two is a standing cross-check.
    """
    jj = _require_integer_j(j)
    dim = 2 * jj + 1
    averaged = _averaged_projector(build_cyclic8(), jj)
    closed = np.zeros((dim * dim, dim * dim), dtype=complex)
    for r1, m1 in enumerate(range(jj, -jj - 1, -1)):
        if m1 % 2:
            continue
        for c2, m2p in enumerate(range(jj, -jj - 1, -1)):
            col = r1 * dim + c2
            closed[r1 * dim + c2, col] += 0.5  # m2 = m2'
            phase = (1j) ** m1 * (-1.0) ** (jj + m2p) * (1j) ** m2p
            closed[r1 * dim + (jj + m2p), col] += 0.5 * phase  # m2 = -m2'
    return averaged, closed


def projector_q(j) -> tuple[np.ndarray, np.ndarray]:
    """Projector onto quaternion-invariant harmonics on the m1 index alone.

    The quaternion deck elements act from one side only, so the operator is
    (2j+1) x (2j+1) and applies identically for every m2.  Returns
    (averaged, closed_form); trace times (2j+1) is the multiplicity.
    """
    jj = _require_integer_j(j)
    dim = 2 * jj + 1
    group = build_quaternion()
    averaged = np.zeros((dim, dim), dtype=complex)
    for el in group.elements:
        sign = 1.0 if el.pair.right == Su2Exact.identity() else (-1.0) ** (2 * jj)
        averaged += sign * wigner_d(jj, el.pair.left.inverse()).T
    averaged /= len(group.elements)
    closed = np.zeros((dim, dim), dtype=complex)
    for r, m1 in enumerate(range(jj, -jj - 1, -1)):
        if m1 % 2:
            continue
        closed[r, r] += 0.5
        closed[r, jj + m1] += 0.5 * (-1.0) ** jj  # column of m1' = -m1
    return averaged, closed


@dataclass(frozen=True)
class BasisFunction:
    """One orthonormal deck-periodic harmonic, stored symbolically.

    terms lists (m1, m2, coefficient) for the participating matrix
    elements; evaluation multiplies the sum by norm_factor.
    """

    manifold: str
    j: int
    m1: int
    m2: int
    kind: str
    terms: tuple[tuple[int, int, complex], ...]
    norm_factor: float

    def evaluate(self, u):
        """Value at u: EulerAngles, a 2x2 unitary, stacked matrices, or an
        exact matrix; broadcasts over arrays."""
        if isinstance(u, EulerAngles):
            a, b, c, d = u.matrix_entries()
        else:
            arr = u.to_complex() if isinstance(u, Su2Exact) else np.asarray(u, dtype=complex)
            if arr.shape[-2:] != (2, 2):
                raise ValueError(f"expected 2x2 matrices, got shape {arr.shape}")
            a, b, c, d = arr[..., 0, 0], arr[..., 0, 1], arr[..., 1, 0], arr[..., 1, 1]
        total = 0
        for tm1, tm2, coef in self.terms:
            total = total + coef * wigner_entry(self.j, tm1, tm2, a, b, c, d)
        return self.norm_factor * total

    def coefficient_vector(self) -> np.ndarray:
        """Coefficients on the (2j+1)^2 space, (m1, m2) both descending."""
        dim = 2 * self.j + 1
        vec = np.zeros(dim * dim, dtype=complex)
        for tm1, tm2, coef in self.terms:
            vec[(self.j - tm1) * dim + (self.j - tm2)] = coef
        return self.norm_factor * vec

    def to_json_dict(self) -> dict:
        return {
            "manifold": self.manifold,
            "j": self.j,
            "m1": self.m1,
            "m2": self.m2,
            "kind": self.kind,
            "terms": [
                {"m1p": tm1, "m2p": tm2, "re": coef.real, "im": coef.imag}
                for tm1, tm2, coef in self.terms
            ],
            "norm_factor": self.norm_factor,
        }


def _single_norm(j: int) -> float:
    return math.sqrt(2 * j + 1) / (math.sqrt(8.0) * math.pi)


def _double_norm(j: int) -> float:
    return math.sqrt(2 * j + 1) / (4.0 * math.pi)


def basis_c2(j) -> list[BasisFunction]:
    """Orthonormal cyclic-8 periodic harmonics of integer degree j.

    Even m1 throughout.  The m2 = 0 element survives alone only when its
    self-pairing phase i^{m1} (-1)^j equals +1; every m2 > 0 pairs with
    -m2 in a fixed phase combination.
    """
    jj = _require_integer_j(j)
    out = []
    for m1 in range(-jj, jj + 1):
        if m1 % 2:
            continue
        self_phase = (1j) ** m1 * (-1.0) ** jj
        if abs(self_phase - 1.0) < 1e-12:
            out.append(
                BasisFunction(
                    manifold="C2",
                    j=jj,
                    m1=m1,
                    m2=0,
                    kind="single-term",
                    terms=((m1, 0, 1.0 + 0j),),
                    norm_factor=_single_norm(jj),
                )
            )
        for m2 in range(1, jj + 1):
            phase = (1j) ** m1 * (-1.0) ** (jj + m2) * (1j) ** m2
            out.append(
                BasisFunction(
                    manifold="C2",
                    j=jj,
                    m1=m1,
                    m2=m2,
                    kind="two-term-sum",
                    terms=((m1, m2, 1.0 + 0j), (m1, -m2, complex(phase))),
                    norm_factor=_double_norm(jj),
                )
            )
    out.sort(key=lambda f: (f.j, f.m1, f.m2))
    if len(out) != multiplicity_c8(jj):
        raise RuntimeError(
            f"basis count {len(out)} disagrees with multiplicity {multiplicity_c8(jj)} at degree {jj}"
        )
    return out


def basis_c3(j) -> list[BasisFunction]:
    """Orthonormal quaternion-periodic harmonics of integer degree j.

    Odd degree pairs m1 with -m1 in differences (even m1 > 0); even degree
    keeps the m1 = 0 elements and pairs the rest in sums.  All m2 appear.
    """
    jj = _require_integer_j(j)
    out = []
    if jj % 2 == 0:
        for m2 in range(-jj, jj + 1):
            out.append(
                BasisFunction(
                    manifold="C3",
                    j=jj,
                    m1=0,
                    m2=m2,
                    kind="single-term",
                    terms=((0, m2, 1.0 + 0j),),
                    norm_factor=_single_norm(jj),
                )
            )
    sign = 1.0 if jj % 2 == 0 else -1.0
    kind = "two-term-sum" if jj % 2 == 0 else "two-term-difference"
    for m1 in range(2, jj + 1, 2):
        for m2 in range(-jj, jj + 1):
            out.append(
                BasisFunction(
                    manifold="C3",
                    j=jj,
                    m1=m1,
                    m2=m2,
                    kind=kind,
                    terms=((m1, m2, 1.0 + 0j), (-m1, m2, complex(sign))),
                    norm_factor=_double_norm(jj),
                )
            )
    out.sort(key=lambda f: (f.j, f.m1, f.m2))
    if len(out) != multiplicity_q(jj):
        raise RuntimeError(
            f"basis count {len(out)} disagrees with multiplicity {multiplicity_q(jj)} at degree {jj}"
        )
    return out


def basis_for(manifold: str, j) -> list[BasisFunction]:
    key = manifold.strip().upper()
    if key == "C2":
        return basis_c2(j)
    if key == "C3":
        return basis_c3(j)
    raise ValueError(f"unknown manifold {manifold!r}; expected C2 or C3")


def gram_matrix(functions: list[BasisFunction], rule=None) -> np.ndarray:
    """Inner-product matrix under the unnormalized Euler measure."""
    if not functions:
        return np.zeros((0, 0), dtype=complex)
    if rule is None:
        rule = euler_quadrature(2 * max(f.j for f in functions))
    values = np.column_stack([f.evaluate(rule.angles) for f in functions])
    weighted = values * rule.weights[:, None]
    return _MEASURE_MASS * (values.conj().T @ weighted)


@lru_cache(maxsize=None)
def _group_for(manifold: str) -> DeckGroup:
    return build_cyclic8() if manifold == "C2" else build_quaternion()


def _full_projector(manifold: str, j: int) -> np.ndarray:
    if manifold == "C2":
        return projector_c8(j)[0]
    small = projector_q(j)[0]
    return np.kron(small, np.eye(2 * j + 1))


def verify_basis(
    functions: list[BasisFunction],
    group: DeckGroup,
    seed: int = 42,
    tol: float = 1e-10,
    n_points: int = 100,
) -> dict:
    """Audit a basis list against a deck group; returns a JSON-able report.

    Covers orthonormality (including cross-degree blocks), pointwise
    periodicity under every deck element at seeded sample points, and
    agreement with the projector of each degree (rank equals count,
    projector fixes each coefficient vector).
    """
    report: dict = {"manifold": None, "seed": seed, "tol": tol, "n_points": n_points}
    if not functions:
        report.update({"count": 0, "passed": True})
        return report
    manifolds = {f.manifold for f in functions}
    if len(manifolds) != 1:
        raise ValueError("basis list mixes manifolds")
    manifold = manifolds.pop()
    report["manifold"] = manifold
    degrees = sorted({f.j for f in functions})
    report["degrees"] = degrees
    report["count_by_degree"] = {j: sum(1 for f in functions if f.j == j) for j in degrees}
    report["multiplicity_by_degree"] = {j: multiplicity_for(manifold, j) for j in degrees}
    counts_ok = report["count_by_degree"] == report["multiplicity_by_degree"]

    gram = gram_matrix(functions)
    gram_err = float(np.max(np.abs(gram - np.eye(len(functions)))))
    report["gram_max_error"] = gram_err

    points = gc.random_sphere_points(n_points, seed=seed)
    mats = np.stack([matrix_from_point(x) for x in points])
    period_err = 0.0
    base_values = np.column_stack([f.evaluate(mats) for f in functions])
    for el in group.elements:
        moved = np.stack([matrix_from_point(gc.apply(el.element, x)) for x in points])
        moved_values = np.column_stack([f.evaluate(moved) for f in functions])
        period_err = max(period_err, float(np.max(np.abs(moved_values - base_values))))
    report["periodicity_max_error"] = period_err

    projector_report = {}
    fix_err_all = 0.0
    ranks_ok = True
    for j in degrees:
        proj = _full_projector(manifold, j)
        eigs = np.linalg.eigvalsh((proj + proj.conj().T) / 2.0)
        rank = int(np.sum(eigs > 0.5))
        expected = report["multiplicity_by_degree"][j]
        fix_err = 0.0
        for f in functions:
            if f.j != j:
                continue
            vec = f.coefficient_vector()
            fix_err = max(fix_err, float(np.max(np.abs(proj @ vec - vec))))
        projector_report[j] = {"rank": rank, "expected_rank": expected, "fix_max_error": fix_err}
        ranks_ok = ranks_ok and rank == expected
        fix_err_all = max(fix_err_all, fix_err)
    report["projector"] = projector_report

    report["passed"] = bool(
        counts_ok and gram_err < tol and period_err < tol and ranks_ok and fix_err_all < tol
    )
    return report
