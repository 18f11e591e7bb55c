"""Finite groups given by explicit multiplication tables, and unitary
irreducible representations over them.

A group document is JSON-style structured text::

    {
      "elements": ["e", "r"],
      "mul": {"e,e": "e", "e,r": "r", "r,e": "r", "r,r": "e"},
      "irreps": {
        "sign": {"n": 1, "matrices": {"e": [[[1, 0]]], "r": [[[-1, 0]]]}}
      }
    }

Complex numbers are always two-element ``[re, im]`` arrays.  Element
labels must not contain a comma, since ``mul`` keys are ``"g,h"`` pairs.

Everything here is immutable after construction and all operations are
pure functions, so values can be shared freely between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .errors import (
    DimensionMismatch,
    MissingIdentity,
    MissingInverse,
    NonAssociative,
    NonClosed,
    UnknownElement,
)
from .tolerance import resolve

__all__ = [
    "GroupSpec",
    "Irrep",
    "ValidationReport",
    "load_group",
    "load_irrep",
    "load_irreps",
    "verify_irrep",
    "orthogonality_residual",
    "resolution_identity",
    "complex_from_pair",
    "pair_from_complex",
    "matrix_from_pairs",
    "pairs_from_matrix",
]


# ------------------------------------------------------------------ types

@dataclass(frozen=True)
class GroupSpec:
    """A finite group: ordered element labels plus a closed, associative
    multiplication table with identity and inverses.

    Construct through :func:`load_group`, which validates the axioms;
    direct construction skips validation.
    """

    elements: tuple[str, ...]
    mul: Mapping[tuple[str, str], str]
    identity: str
    inverse: Mapping[str, str]

    @property
    def N(self) -> int:
        return len(self.elements)

    def product(self, g: str, h: str) -> str:
        try:
            return self.mul[(g, h)]
        except KeyError:
            missing = g if g not in self.elements else h
            raise UnknownElement(missing) from None

    def inv(self, g: str) -> str:
        try:
            return self.inverse[g]
        except KeyError:
            raise UnknownElement(g) from None

    def __contains__(self, g: str) -> bool:
        return g in self.inverse


@dataclass(frozen=True)
class Irrep:
    """A matrix-valued map on group elements, expected to be a unitary
    irreducible representation (checked by :func:`verify_irrep`)."""

    group: GroupSpec
    n: int
    D: Mapping[str, np.ndarray]
    name: str = "irrep"

    def matrix(self, g: str) -> np.ndarray:
        try:
            return self.D[g]
        except KeyError:
            raise UnknownElement(g) from None

    def matrix_inv(self, g: str) -> np.ndarray:
        """Matrix of the inverse element."""
        return self.matrix(self.group.inv(g))


@dataclass(frozen=True)
class ValidationReport:
    """Residuals collected by :func:`verify_irrep`.

    ``irreducibility_indicator`` is the character norm
    (1/N) * sum_g |tr D(g)|^2, which equals 1 exactly when the
    representation is irreducible.
    """

    name: str
    n: int
    N: int
    max_unitarity_residual: float
    max_homomorphism_residual: float
    irreducibility_indicator: float
    tolerance: float
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.failures


# ------------------------------------------------------------- documents

def complex_from_pair(pair) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise ValueError(f"complex number must be a [re, im] pair, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def pair_from_complex(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_from_pairs(rows) -> np.ndarray:
    return np.array([[complex_from_pair(entry) for entry in row] for row in rows],
                    dtype=complex)


def pairs_from_matrix(m: np.ndarray) -> list[list[list[float]]]:
    return [[pair_from_complex(z) for z in row] for row in np.asarray(m)]


def _as_document(document) -> dict:
    if isinstance(document, str):
        document = json.loads(document)
    if not isinstance(document, dict):
        raise ValueError("group document must be a JSON object")
    return document


def load_group(document) -> GroupSpec:
    """Parse and validate a group document (dict or JSON text).

    Raises NonClosed, MissingIdentity, MissingInverse or NonAssociative,
    naming the offending element(s).
    """
    doc = _as_document(document)
    try:
        labels = list(doc["elements"])
        mul_doc = dict(doc["mul"])
    except KeyError as exc:
        raise ValueError(f"group document is missing field {exc}") from None

    if not labels:
        raise ValueError("group document lists no elements")
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate element labels in group document")
    for g in labels:
        if not isinstance(g, str) or "," in g or not g:
            raise ValueError(f"bad element label {g!r} (labels are nonempty, comma-free strings)")

    elements = tuple(labels)
    known = set(elements)

    mul: dict[tuple[str, str], str] = {}
    for key, gh in mul_doc.items():
        parts = key.split(",")
        if len(parts) != 2:
            raise ValueError(f"bad mul key {key!r} (expected 'g,h')")
        g, h = parts[0].strip(), parts[1].strip()
        if g not in known or h not in known:
            raise NonClosed(f"mul key ({g},{h}) uses unknown element")
        if gh not in known:
            raise NonClosed(f"mul({g},{h}) = {gh!r} is not an element of the group")
        mul[(g, h)] = gh

    # totality
    for g in elements:
        for h in elements:
            if (g, h) not in mul:
                raise NonClosed(f"mul({g},{h}) is missing from the table")

    # unique two-sided identity
    identities = [e for e in elements
                  if all(mul[(e, g)] == g and mul[(g, e)] == g for g in elements)]
    if len(identities) != 1:
        raise MissingIdentity(
            "no two-sided identity" if not identities
            else f"multiple identities: {identities}")
    identity = identities[0]

    # unique two-sided inverses
    inverse: dict[str, str] = {}
    for g in elements:
        invs = [h for h in elements
                if mul[(g, h)] == identity and mul[(h, g)] == identity]
        if len(invs) != 1:
            raise MissingInverse(
                f"element {g!r} has "
                + ("no two-sided inverse" if not invs else f"multiple inverses {invs}"))
        inverse[g] = invs[0]

    # associativity, exhaustively (desk scale: N <= a few dozen)
    for a in elements:
        for b in elements:
            ab = mul[(a, b)]
            for c in elements:
                if mul[(ab, c)] != mul[(a, mul[(b, c)])]:
                    raise NonAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")

    return GroupSpec(elements=elements, mul=mul, identity=identity, inverse=inverse)


def load_irrep(document, name: str, group: GroupSpec | None = None) -> Irrep:
    """Parse one named irrep from a group document."""
    doc = _as_document(document)
    if group is None:
        group = load_group(doc)
    try:
        entry = doc["irreps"][name]
    except KeyError:
        raise ValueError(f"document has no irrep named {name!r}") from None

    n = int(entry["n"])
    matrices = {}
    for g, rows in entry["matrices"].items():
        if g not in group:
            raise UnknownElement(g)
        m = matrix_from_pairs(rows)
        if m.shape != (n, n):
            raise DimensionMismatch(
                f"irrep {name!r}: matrix for {g!r} has shape {m.shape}, expected {(n, n)}")
        m.setflags(write=False)
        matrices[g] = m
    missing = [g for g in group.elements if g not in matrices]
    if missing:
        raise ValueError(f"irrep {name!r} is missing matrices for {missing}")
    return Irrep(group=group, n=n, D=matrices, name=name)


def load_irreps(document, group: GroupSpec | None = None) -> dict[str, Irrep]:
    """Parse every irrep in a group document."""
    doc = _as_document(document)
    if group is None:
        group = load_group(doc)
    return {name: load_irrep(doc, name, group) for name in doc.get("irreps", {})}


def group_document(group: GroupSpec,
                   irreps: Iterable[Irrep] = ()) -> dict:
    """Serialize back to the document grammar (round-trips load_group)."""
    doc: dict = {
        "elements": list(group.elements),
        "mul": {f"{g},{h}": gh for (g, h), gh in sorted(group.mul.items())},
    }
    irreps = list(irreps)
    if irreps:
        doc["irreps"] = {
            irr.name: {
                "n": irr.n,
                "matrices": {g: pairs_from_matrix(irr.D[g]) for g in group.elements},
            }
            for irr in irreps
        }
    return doc


# ------------------------------------------------------------ operations

def verify_irrep(irrep: Irrep, tol: float | None = None) -> ValidationReport:
    """Check unitarity, the homomorphism property and irreducibility.

    Raises DimensionMismatch if any matrix is not n x n; numerical
    failures are collected in the report rather than raised.
    """
    tol = resolve(tol)
    group, n = irrep.group, irrep.n
    eye = np.eye(n)

    for g in group.elements:
        m = irrep.matrix(g)
        if m.shape != (n, n):
            raise DimensionMismatch(
                f"matrix for {g!r} has shape {m.shape}, expected {(n, n)}")

    unit = max(
        float(np.max(np.abs(irrep.D[g] @ irrep.D[g].conj().T - eye)))
        for g in group.elements)
    homo = max(
        float(np.max(np.abs(irrep.D[g] @ irrep.D[h] - irrep.D[group.product(g, h)])))
        for g in group.elements for h in group.elements)
    indicator = sum(abs(np.trace(irrep.D[g])) ** 2 for g in group.elements) / group.N

    failures = []
    if unit > tol:
        failures.append(f"unitarity residual {unit:.3e} exceeds {tol:.1e}")
    if homo > tol:
        failures.append(f"homomorphism residual {homo:.3e} exceeds {tol:.1e}")
    if abs(indicator - 1.0) > tol:
        failures.append(f"character norm {indicator:.6f} != 1 (not irreducible)")

    return ValidationReport(
        name=irrep.name, n=n, N=group.N,
        max_unitarity_residual=unit,
        max_homomorphism_residual=homo,
        irreducibility_indicator=float(indicator),
        tolerance=tol,
        failures=tuple(failures),
    )


def orthogonality_residual(irrep: Irrep) -> float:
    """Worst-case deviation of the irrep from the orthogonality relation

        (n/N) * sum_g D(g^-1)[k,j] D(g)[l,m]  =  delta_jl delta_km

    taken over all index tuples (k, j, l, m).
    """
    group, n = irrep.group, irrep.n
    dinv = np.stack([irrep.matrix_inv(g) for g in group.elements])
    d = np.stack([irrep.matrix(g) for g in group.elements])
    lhs = np.einsum("gkj,glm->kjlm", dinv, d) * (n / group.N)
    eye = np.eye(n)
    target = np.einsum("jl,km->kjlm", eye, eye)
    return float(np.max(np.abs(lhs - target)))


def resolution_identity(irrep: Irrep, gprime: str) -> np.ndarray:
    """Resolve D(gprime) through the group sum

        (n/N) * sum_g D(g) * tr{D(g^-1) D(gprime)}

    which must reproduce D(gprime) for a unitary irrep.
    """
    group, n = irrep.group, irrep.n
    if gprime not in group:
        raise UnknownElement(gprime)
    target = irrep.matrix(gprime)
    acc = np.zeros((n, n), dtype=complex)
    for g in group.elements:
        acc += irrep.matrix(g) * np.trace(irrep.matrix_inv(g) @ target)
    return acc * (n / group.N)
