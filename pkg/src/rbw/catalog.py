"""Built-in groups and irreps used by the command line tool, the tests
and the self-test suite.

The symmetric group on three letters is generated here from honest
permutation composition rather than a hardcoded table, and its 2-dim
irrep from the permutation action restricted to the sum-zero plane, so
the catalog can serve as an independent oracle for the table-driven
machinery in :mod:`rbw.grouprep`.
"""

from __future__ import annotations

import numpy as np

from .grouprep import GroupSpec, Irrep, group_document, load_group, load_irreps

__all__ = [
    "trivial_group",
    "z2_group",
    "z2_irreps",
    "s3_group",
    "s3_irreps",
    "s3_document",
    "corrupted_s3_document",
    "builtin_documents",
]


# ------------------------------------------------------------------ trivial

def trivial_group() -> GroupSpec:
    return load_group({"elements": ["e"], "mul": {"e,e": "e"}})


# ----------------------------------------------------------------------- Z2

_Z2_DOC = {
    "elements": ["e", "r"],
    "mul": {"e,e": "e", "e,r": "r", "r,e": "r", "r,r": "e"},
    "irreps": {
        "trivial": {"n": 1, "matrices": {"e": [[[1, 0]]], "r": [[[1, 0]]]}},
        "sign": {"n": 1, "matrices": {"e": [[[1, 0]]], "r": [[[-1, 0]]]}},
    },
}


def z2_group() -> GroupSpec:
    return load_group(_Z2_DOC)


def z2_irreps() -> dict[str, Irrep]:
    return load_irreps(_Z2_DOC)


# ----------------------------------------------------------------------- S3

# Permutations as maps on {0,1,2}; labels use 1-based cycle notation
# without commas so they stay legal document element labels.
_S3_PERMS: dict[str, tuple[int, int, int]] = {
    "e": (0, 1, 2),
    "(12)": (1, 0, 2),
    "(13)": (2, 1, 0),
    "(23)": (0, 2, 1),
    "(123)": (1, 2, 0),   # 1->2, 2->3, 3->1
    "(132)": (2, 0, 1),
}

_S3_PARITY = {"e": 1, "(12)": -1, "(13)": -1, "(23)": -1, "(123)": 1, "(132)": 1}


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p*q)(i) = p(q(i)), matching matrix-product order."""
    return tuple(p[q[i]] for i in range(len(q)))


def _perm_matrix(p: tuple[int, ...]) -> np.ndarray:
    m = np.zeros((3, 3))
    for j, i in enumerate(p):
        m[i, j] = 1.0
    return m


def s3_group() -> GroupSpec:
    labels = list(_S3_PERMS)
    by_perm = {perm: name for name, perm in _S3_PERMS.items()}
    mul = {f"{g},{h}": by_perm[_compose(_S3_PERMS[g], _S3_PERMS[h])]
           for g in labels for h in labels}
    return load_group({"elements": labels, "mul": mul})


def s3_irreps(group: GroupSpec | None = None) -> dict[str, Irrep]:
    group = group or s3_group()

    one = {g: np.array([[1.0 + 0j]]) for g in group.elements}
    sign = {g: np.array([[complex(_S3_PARITY[g])]]) for g in group.elements}

    # Orthonormal basis of the plane x+y+z = 0; conjugating the 3x3
    # permutation matrices into it gives the faithful 2-dim irrep.
    b = np.array([
        [1 / np.sqrt(2), 1 / np.sqrt(6)],
        [-1 / np.sqrt(2), 1 / np.sqrt(6)],
        [0.0, -2 / np.sqrt(6)],
    ])
    standard = {g: (b.T @ _perm_matrix(_S3_PERMS[g]) @ b).astype(complex)
                for g in group.elements}

    irreps = {}
    for name, mats in [("trivial", one), ("sign", sign), ("standard", standard)]:
        for m in mats.values():
            m.setflags(write=False)
        irreps[name] = Irrep(group=group, n=mats[group.identity].shape[0],
                             D=mats, name=name)
    return irreps


def s3_document() -> dict:
    group = s3_group()
    return group_document(group, s3_irreps(group).values())


def corrupted_s3_document() -> dict:
    """S3 document with one table entry overwritten, breaking the axioms.

    Useful as a negative control: load_group must reject it.
    """
    doc = s3_document()
    doc["mul"]["(12),(12)"] = "(123)"   # should be "e"
    return doc


def builtin_documents() -> dict[str, dict]:
    """Named documents for the command line tool's --group builtin:<name>."""
    return {
        "trivial": group_document(
            trivial_group(),
            [Irrep(group=trivial_group(), n=1,
                   D={"e": np.array([[1.0 + 0j]])}, name="trivial")]),
        "z2": dict(_Z2_DOC),
        "s3": s3_document(),
    }
