"""Exact SU(2) x SU(2) lifts of the even hyperoctahedral isometries.

All matrix entries live in the cyclotomic ring Z[a], a = exp(i*pi/4),
extended by half powers of sqrt(2) in the denominator; sqrt(2) = a - a^3,
i = a^2.  A point x on S^3 is identified with the special unitary matrix

    u(x) = [[z1, z2], [-conj(z2), conj(z1)]],   z1 = x0 - i*x3,  z2 = -x2 - i*x1,

and an even isometry acts as u -> wl^{-1} u wr for a pair (wl, wr) that is
well defined up to a simultaneous sign flip.  Pairs of consecutive letters
(s, s') in a glue word contribute wl *= v_s v_{s'}^{-1} and wr *= v_s^{-1} v_{s'}
in reading order, and each central inversion letter flips the sign of wr.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import acos, pi

import numpy as np

from .groupcore import J4

__all__ = [
    "Cyclo8",
    "Su2Exact",
    "IsoPair",
    "lift_even_word",
    "matrix_from_point",
    "pair_action",
    "point_from_matrix",
    "rotation_angles",
    "weyl_matrix",
]

_A_NUM = complex(2**-0.5, 2**-0.5)
_A_POWERS = tuple(_A_NUM**k for k in range(4))


def _mul_coeffs(c, d):
    # convolution in Z[a]/(a^4 + 1)
    out = [0, 0, 0, 0]
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        for j, dj in enumerate(d):
            if dj == 0:
                continue
            k = i + j
            if k < 4:
                out[k] += ci * dj
            else:
                out[k - 4] -= ci * dj
    return out


@dataclass(frozen=True)
class Cyclo8:
    """Element (c0 + c1*a + c2*a^2 + c3*a^3) / sqrt(2)^half_powers, a = exp(i*pi/4).

    Instances normalise on construction so that half_powers is minimal;
    equality and hashing are therefore exact value comparisons.
    """

    coeffs: tuple[int, int, int, int]
    half_powers: int = 0

    def __post_init__(self):
        c = [int(v) for v in self.coeffs]
        if len(c) != 4:
            raise ValueError("need exactly four coefficients")
        k = int(self.half_powers)
        if k < 0:
            raise ValueError("half_powers must be nonnegative")
        if all(v == 0 for v in c):
            k = 0
        while k > 0:
            d = _mul_coeffs(c, (0, 1, 0, -1))  # multiply by sqrt(2)
            if any(v % 2 for v in d):
                break
            c = [v // 2 for v in d]
            k -= 1
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "half_powers", k)

    @classmethod
    def from_int(cls, n: int) -> "Cyclo8":
        return cls((n, 0, 0, 0))

    def _lifted(self, k: int):
        # coefficients after multiplying value by sqrt(2)^(k - half_powers)
        c = list(self.coeffs)
        for _ in range(k - self.half_powers):
            c = _mul_coeffs(c, (0, 1, 0, -1))
        return c

    def __add__(self, other: "Cyclo8") -> "Cyclo8":
        k = max(self.half_powers, other.half_powers)
        a = self._lifted(k)
        b = other._lifted(k)
        return Cyclo8(tuple(x + y for x, y in zip(a, b)), k)

    def __sub__(self, other: "Cyclo8") -> "Cyclo8":
        return self + (-other)

    def __neg__(self) -> "Cyclo8":
        return Cyclo8(tuple(-v for v in self.coeffs), self.half_powers)

    def __mul__(self, other: "Cyclo8") -> "Cyclo8":
        if isinstance(other, int):
            other = Cyclo8.from_int(other)
        return Cyclo8(
            tuple(_mul_coeffs(self.coeffs, other.coeffs)),
            self.half_powers + other.half_powers,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclo8":
        c0, c1, c2, c3 = self.coeffs
        return Cyclo8((c0, -c3, -c2, -c1), self.half_powers)

    def is_zero(self) -> bool:
        return self.coeffs == (0, 0, 0, 0)

    def to_complex(self) -> complex:
        val = sum(c * p for c, p in zip(self.coeffs, _A_POWERS))
        return val / 2 ** (self.half_powers / 2)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            base = f"a^{k}" if k > 1 else ("a" if k == 1 else "")
            if base:
                mag = "" if abs(c) == 1 else str(abs(c))
                term = mag + base
            else:
                term = str(abs(c))
            parts.append(("-" if c < 0 else "+") + term)
        body = "".join(parts).lstrip("+")
        if body.startswith("-"):
            body = "-" + body[1:]
        if self.half_powers == 0:
            return body
        twos, root = divmod(self.half_powers, 2)
        den = ("2" * 0 + str(2**twos) if twos else "") + ("√2" if root else "")
        if len(parts) > 1:
            body = f"({body})"
        return f"{body}/{den}"

    def sort_key(self):
        return (self.half_powers, self.coeffs)


_ZERO = Cyclo8((0, 0, 0, 0))
_ONE = Cyclo8((1, 0, 0, 0))
_I = Cyclo8((0, 0, 1, 0))


@dataclass(frozen=True)
class Su2Exact:
    """2x2 matrix over Cyclo8; the lift routines only ever build unitaries."""

    entries: tuple[tuple[Cyclo8, Cyclo8], tuple[Cyclo8, Cyclo8]]

    @classmethod
    def from_rows(cls, row0, row1) -> "Su2Exact":
        rows = []
        for row in (row0, row1):
            rows.append(
                tuple(v if isinstance(v, Cyclo8) else Cyclo8.from_int(v) for v in row)
            )
        return cls((rows[0], rows[1]))

    @classmethod
    def identity(cls) -> "Su2Exact":
        return cls.from_rows((_ONE, _ZERO), (_ZERO, _ONE))

    def __mul__(self, other: "Su2Exact") -> "Su2Exact":
        a, b = self.entries
        c, d = other.entries
        return Su2Exact(
            (
                (a[0] * c[0] + a[1] * d[0], a[0] * c[1] + a[1] * d[1]),
                (b[0] * c[0] + b[1] * d[0], b[0] * c[1] + b[1] * d[1]),
            )
        )

    def __neg__(self) -> "Su2Exact":
        (a, b), (c, d) = self.entries
        return Su2Exact(((-a, -b), (-c, -d)))

    def adjoint(self) -> "Su2Exact":
        (a, b), (c, d) = self.entries
        return Su2Exact(
            ((a.conjugate(), c.conjugate()), (b.conjugate(), d.conjugate()))
        )

    def det(self) -> Cyclo8:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def trace(self) -> Cyclo8:
        return self.entries[0][0] + self.entries[1][1]

    def inverse(self) -> "Su2Exact":
        if self.det() != _ONE:
            raise ValueError("inverse implemented for determinant-1 matrices only")
        (a, b), (c, d) = self.entries
        return Su2Exact(((d, -b), (-c, a)))

    def is_unitary(self) -> bool:
        return self * self.adjoint() == Su2Exact.identity()

    def power(self, n: int) -> "Su2Exact":
        if n < 0:
            return self.inverse().power(-n)
        out = Su2Exact.identity()
        for _ in range(n):
            out = out * self
        return out

    def to_complex(self) -> np.ndarray:
        return np.array(
            [[e.to_complex() for e in row] for row in self.entries], dtype=complex
        )

    def __str__(self) -> str:
        (a, b), (c, d) = self.entries
        return f"[[{a}, {b}], [{c}, {d}]]"


def weyl_matrix(s: int) -> Su2Exact:
    """SU(2) lift v_s of reflection generator s (0..4), exact entries."""
    half = lambda *coeffs: Cyclo8(tuple(coeffs), 1)
    table = {
        0: Su2Exact.identity(),
        1: Su2Exact.from_rows((-_I, _ZERO), (_ZERO, _I)),
        2: Su2Exact.from_rows(
            (half(0, 0, -1, 0), half(1, 0, 0, 0)),
            (half(-1, 0, 0, 0), half(0, 0, 1, 0)),
        ),
        3: Su2Exact.from_rows(
            (_ZERO, half(1, 0, -1, 0)), (half(-1, 0, -1, 0), _ZERO)
        ),
        4: Su2Exact.from_rows(
            (half(-1, 0, 0, 0), half(0, 0, -1, 0)),
            (half(0, 0, -1, 0), half(-1, 0, 0, 0)),
        ),
    }
    if s not in table:
        raise ValueError(f"unknown generator index {s}; expected 0..4")
    return table[s]


@dataclass(frozen=True)
class IsoPair:
    """Pair (left, right) acting on u by left^{-1} u right.

    Equality is exact; `same_isometry` identifies (wl, wr) with (-wl, -wr),
    which represent the same rotation of S^3.
    """

    left: Su2Exact
    right: Su2Exact

    @classmethod
    def identity(cls) -> "IsoPair":
        return cls(Su2Exact.identity(), Su2Exact.identity())

    def compose(self, other: "IsoPair") -> "IsoPair":
        """Pair of self followed by other (application order)."""
        return IsoPair(self.left * other.left, self.right * other.right)

    def power(self, n: int) -> "IsoPair":
        return IsoPair(self.left.power(n), self.right.power(n))

    def inverse(self) -> "IsoPair":
        return IsoPair(self.left.inverse(), self.right.inverse())

    def same_isometry(self, other: "IsoPair") -> bool:
        if self.left == other.left and self.right == other.right:
            return True
        return self.left == -other.left and self.right == -other.right

    def canonical(self) -> "IsoPair":
        """Fixed sign choice: first nonzero entry has positive sort key."""
        for mat in (self.left, self.right):
            for row in mat.entries:
                for e in row:
                    if not e.is_zero():
                        first = next(c for c in e.coeffs if c != 0)
                        return self if first > 0 else IsoPair(-self.left, -self.right)
        return self

    def apply_exact(self, u: Su2Exact) -> Su2Exact:
        return self.left.inverse() * u * self.right

    def apply_complex(self, u: np.ndarray) -> np.ndarray:
        wli = self.left.inverse().to_complex()
        return wli @ np.asarray(u, dtype=complex) @ self.right.to_complex()


def lift_even_word(word) -> IsoPair:
    """Lift a glue word with an even number of reflection letters to a pair.

    The minus sign of each central inversion letter is absorbed into the
    right factor, so "J4" alone lifts to (identity, -identity).
    """
    letters = [s for s in word if s != J4]
    flips = sum(1 for s in word if s == J4)
    if len(letters) % 2:
        raise ValueError("word must contain an even number of reflection letters")
    wl = Su2Exact.identity()
    wr = Su2Exact.identity()
    for s, s2 in zip(letters[0::2], letters[1::2]):
        vs, vs2 = weyl_matrix(s), weyl_matrix(s2)
        wl = wl * (vs * vs2.inverse())
        wr = wr * (vs.inverse() * vs2)
    if flips % 2:
        wr = -wr
    return IsoPair(wl, wr)


def pair_action(pair: IsoPair, u) -> np.ndarray:
    """Numeric image of the special unitary matrix u under the pair."""
    u = u.to_complex() if isinstance(u, Su2Exact) else np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {u.shape}")
    return pair.apply_complex(u)


def matrix_from_point(x) -> np.ndarray:
    """Coordinate chart sending x on S^3 to a special unitary 2x2 matrix."""
    x = np.asarray(x, dtype=float)
    if x.shape != (4,):
        raise ValueError(f"expected a length-4 point, got shape {x.shape}")
    z1 = complex(x[0], -x[3])
    z2 = complex(-x[2], -x[1])
    return np.array([[z1, z2], [-z2.conjugate(), z1.conjugate()]])


def point_from_matrix(u) -> np.ndarray:
    """Inverse of `matrix_from_point`."""
    u = np.asarray(u, dtype=complex)
    z1, z2 = u[0, 0], u[0, 1]
    return np.array([z1.real, -z2.imag, -z2.real, -z1.imag])


def _angle(trace_value: complex) -> float:
    tr = complex(trace_value).real
    return 2.0 * acos(min(1.0, max(-1.0, tr / 2.0)))


def rotation_angles(pair: IsoPair) -> tuple[float, float]:
    """Rotation angles (phi_left, phi_right) in [0, 2*pi] from the traces."""
    return (
        _angle(pair.left.trace().to_complex()),
        _angle(pair.right.trace().to_complex()),
    )
