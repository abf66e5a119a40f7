"""Exact signed-permutation arithmetic for the rank-4 hyperoctahedral group.

The symmetry group of the 8-cell tessellation of the 3-sphere is the
reflection group (C_2)^4 : S(4) of order 384, realised here as signed
permutations of the four Euclidean coordinates.  An element g = (signs, perm)
acts by

    (g x)_i = signs[i] * x[perm^{-1}(i)]

and products compose right to left, ``multiply(g, h)`` applies h first.
Glue words for the deck transformations are written in application order
(first letter acts first); use `element_from_word` / `compose_in_order`
for those.

Cycle strings are parsed and printed right to left: "(0132)" denotes the
permutation with 1 -> 0, 3 -> 1, 2 -> 3, 0 -> 2, matching the emitted
deck-group tables.  Points of E^4 are plain length-4 sequences; `apply`
keeps integer inputs exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import reduce
from math import sqrt

import numpy as np

IDENTITY_PERM = (0, 1, 2, 3)

__all__ = [
    "HyperoctElement",
    "IDENTITY",
    "INVERSION",
    "WEYL_GENERATORS",
    "WEYL_VECTORS",
    "WeylGenerator",
    "apply",
    "closure",
    "compose_in_order",
    "cycles_to_perm",
    "element_from_json",
    "element_from_word",
    "has_fixed_point_on_sphere",
    "inverse",
    "multiply",
    "orbit",
    "perm_to_cycles",
    "weyl_generator",
]


def _perm_inverse(perm):
    inv = [0, 0, 0, 0]
    for k, v in enumerate(perm):
        inv[v] = k
    return tuple(inv)


def cycles_to_perm(text: str) -> tuple[int, int, int, int]:
    """Parse a cycle string such as "(01)(23)" or "e" into one-line form.

    Cycles are read right to left: within "(abc)" the permutation sends
    c to b, b to a and a to c.
    """
    text = text.strip()
    if text in ("e", "", "()"):
        return IDENTITY_PERM
    perm = [0, 1, 2, 3]
    seen = set()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"malformed cycle string {text!r}")
    for cyc in text[1:-1].split(")("):
        idx = []
        for ch in cyc:
            if ch not in "0123":
                raise ValueError(f"bad coordinate {ch!r} in {text!r}")
            idx.append(int(ch))
        if len(idx) < 2 or set(idx) & seen:
            raise ValueError(f"invalid cycle {cyc!r} in {text!r}")
        seen.update(idx)
        for a, b in zip(idx, idx[1:]):
            perm[b] = a
        perm[idx[0]] = idx[-1]
    return tuple(perm)


def perm_to_cycles(perm) -> str:
    """Inverse of `cycles_to_perm`; fixed points are dropped, identity is "e"."""
    inv = _perm_inverse(tuple(perm))
    out = []
    seen = set()
    for start in range(4):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        nxt = inv[start]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = inv[nxt]
        out.append("(" + "".join(str(c) for c in cyc) + ")")
    return "".join(out) if out else "e"


@dataclass(frozen=True)
class HyperoctElement:
    """Signed coordinate permutation: signs in {+1, -1}^4, perm in one-line form."""

    signs: tuple[int, int, int, int]
    perm: tuple[int, int, int, int] = IDENTITY_PERM

    def __post_init__(self):
        if len(self.signs) != 4 or any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"signs must be four values in {{+1,-1}}: {self.signs}")
        if sorted(self.perm) != [0, 1, 2, 3]:
            raise ValueError(f"perm must be a permutation of 0..3: {self.perm}")
        object.__setattr__(self, "signs", tuple(self.signs))
        object.__setattr__(self, "perm", tuple(self.perm))

    def __mul__(self, other: "HyperoctElement") -> "HyperoctElement":
        return multiply(self, other)

    @property
    def cycles(self) -> str:
        return perm_to_cycles(self.perm)

    @property
    def epsilon(self) -> str:
        """Sign column rendered as in the deck tables, e.g. "(+-++)"."""
        return "(" + "".join("+" if s > 0 else "-" for s in self.signs) + ")"

    def matrix(self) -> np.ndarray:
        """4x4 integer matrix M with M @ x == apply(self, x)."""
        inv = _perm_inverse(self.perm)
        m = np.zeros((4, 4), dtype=int)
        for i in range(4):
            m[i, inv[i]] = self.signs[i]
        return m

    def determinant(self) -> int:
        det = 1
        for s in self.signs:
            det *= s
        seen = set()
        for start in range(4):
            if start in seen:
                continue
            length = 0
            k = start
            while k not in seen:
                seen.add(k)
                k = self.perm[k]
                length += 1
            if length % 2 == 0:
                det = -det
        return det

    def action_string(self) -> str:
        """Render the action on a generic point, e.g. "(x1,-x3,x0,x2)"."""
        inv = _perm_inverse(self.perm)
        parts = []
        for i in range(4):
            parts.append(("-" if self.signs[i] < 0 else "") + f"x{inv[i]}")
        return "(" + ",".join(parts) + ")"

    def to_json_dict(self) -> dict:
        return {
            "signs": list(self.signs),
            "perm": list(self.perm),
            "cycles": self.cycles,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    def sort_key(self):
        return (self.perm, tuple(0 if s > 0 else 1 for s in self.signs))


IDENTITY = HyperoctElement((1, 1, 1, 1))
INVERSION = HyperoctElement((-1, -1, -1, -1))

_SQ = sqrt(0.5)

#: reflection hyperplane normals; index 0 is the extra node closing the
#: affine diagram, 1..4 are the finite Weyl generators
WEYL_VECTORS = {
    0: (1.0, 0.0, 0.0, 0.0),
    1: (0.0, 0.0, 0.0, 1.0),
    2: (0.0, 0.0, -_SQ, _SQ),
    3: (0.0, _SQ, -_SQ, 0.0),
    4: (-_SQ, _SQ, 0.0, 0.0),
}

WEYL_GENERATORS = {
    0: HyperoctElement((-1, 1, 1, 1)),
    1: HyperoctElement((1, 1, 1, -1)),
    2: HyperoctElement((1, 1, 1, 1), (0, 1, 3, 2)),
    3: HyperoctElement((1, 1, 1, 1), (0, 2, 1, 3)),
    4: HyperoctElement((1, 1, 1, 1), (1, 0, 2, 3)),
}

#: sentinel word letter for the central inversion
J4 = "J4"


@dataclass(frozen=True)
class WeylGenerator:
    """A reflection generator together with its unit hyperplane normal."""

    index: int
    element: HyperoctElement
    normal: tuple[float, float, float, float]

    def __post_init__(self):
        n = sum(c * c for c in self.normal)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"normal must be a unit vector, |a|^2 = {n}")


def weyl_generator(s: int) -> WeylGenerator:
    """Reflection data for generator index s in 0..4."""
    if s not in WEYL_GENERATORS:
        raise ValueError(f"unknown generator index {s}; expected 0..4")
    return WeylGenerator(s, WEYL_GENERATORS[s], WEYL_VECTORS[s])


def multiply(g: HyperoctElement, h: HyperoctElement) -> HyperoctElement:
    """Product g*h in right-to-left convention: h acts first."""
    pinv = _perm_inverse(g.perm)
    signs = tuple(g.signs[i] * h.signs[pinv[i]] for i in range(4))
    perm = tuple(g.perm[h.perm[k]] for k in range(4))
    return HyperoctElement(signs, perm)


def inverse(g: HyperoctElement) -> HyperoctElement:
    signs = tuple(g.signs[g.perm[i]] for i in range(4))
    return HyperoctElement(signs, _perm_inverse(g.perm))


def compose_in_order(elements) -> HyperoctElement:
    """Product of elements in application order: the first entry acts first."""
    return reduce(lambda acc, g: multiply(g, acc), elements, IDENTITY)


def element_from_word(word) -> HyperoctElement:
    """Build an element from a glue word over letters 0..4 and "J4".

    Letters apply in reading order, so the first letter acts on the point
    first.
    """
    elems = []
    for letter in word:
        if letter == J4:
            elems.append(INVERSION)
        elif letter in WEYL_GENERATORS:
            elems.append(WEYL_GENERATORS[letter])
        else:
            raise ValueError(f"unknown word letter {letter!r}")
    return compose_in_order(elems)


def apply(g: HyperoctElement, x):
    """Image of the point x under g; integer input stays integer."""
    x = np.asarray(x)
    if x.shape != (4,):
        raise ValueError(f"expected a length-4 point, got shape {x.shape}")
    inv = _perm_inverse(g.perm)
    return np.array([g.signs[i] * x[inv[i]] for i in range(4)])


def closure(generators, bound: int = 10_000) -> list[HyperoctElement]:
    """Group generated by the given elements, as a canonically sorted list.

    Plain breadth-first closure; raises ValueError if more than `bound`
    elements are found, which guards against typo'd generator sets.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = multiply(g, h)
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > bound:
                        raise ValueError(f"closure exceeded bound of {bound} elements")
        frontier = nxt
    return sorted(seen, key=HyperoctElement.sort_key)


def has_fixed_point_on_sphere(g: HyperoctElement) -> bool:
    """Exact test for an eigenvalue-1 direction, hence a fixed point on S^3.

    The matrix of g is block cyclic over the cycles of perm; a block has
    eigenvalue 1 exactly when the product of the signs around its cycle
    is +1.
    """
    seen = set()
    for start in range(4):
        if start in seen:
            continue
        prod = 1
        k = start
        while k not in seen:
            seen.add(k)
            prod *= g.signs[k]
            k = g.perm[k]
        if prod == 1:
            return True
    return False


def orbit(group, x, tol: float = 1e-9) -> list[np.ndarray]:
    """Distinct images of x under all elements, deduplicated to `tol`.

    The result is sorted lexicographically for deterministic output.
    """
    images = []
    for g in group:
        y = np.asarray(apply(g, x), dtype=float)
        if not any(np.max(np.abs(y - z)) <= tol for z in images):
            images.append(y)
    return sorted(images, key=lambda v: tuple(np.round(v / tol) * tol))


def element_from_json(text: str) -> HyperoctElement:
    data = json.loads(text) if isinstance(text, str) else text
    elem = HyperoctElement(tuple(data["signs"]), tuple(data["perm"]))
    if "cycles" in data and cycles_to_perm(data["cycles"]) != elem.perm:
        raise ValueError("cycle string disagrees with one-line perm")
    return elem


def random_sphere_points(n: int, seed: int = 42) -> np.ndarray:
    """n quasi-uniform points on S^3, Gaussian direction method, fixed seed."""
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((n, 4))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)
