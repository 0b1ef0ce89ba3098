"""Cayley graphs of finite abelian groups: character eigenvalues, spectra,
and brute-force adjacency verification of the character eigenbasis."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cyclotomic import Cyclotomic, from_exponent_counts, root_power, root_reduction_matrix
from .groups import Group, Word


@dataclass
class CayleyGraph:
    """Cayley graph of an abelian group on a vertex set closed under the group law.

    `characters` lists the exponent-index vectors of the linear characters of the
    vertex set; it defaults to the vertices themselves, which is the full dual
    group when the vertex set is all of Z_e^n.  Proper subgroups (halved and
    folded cubes) must pass their own character indexing.
    """

    group: Group
    vertices: list[Word]
    connection: list[Word]
    characters: list[Word] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.characters is None:
            self.characters = list(self.vertices)
        zero = self.group.zero()
        seen = set()
        vset = set(self.vertices)
        for s in self.connection:
            if s == zero:
                raise ValueError("connection set contains the identity")
            if s in seen:
                raise ValueError(f"duplicate connection element {s}")
            seen.add(s)
            if self.group.neg(s) not in seen and self.group.neg(s) not in self.connection:
                raise ValueError(f"connection set not symmetric at {s}")
            if s not in vset:
                raise ValueError(f"connection element {s} outside the vertex set")
        if len(self.characters) != len(self.vertices):
            raise ValueError("character count must equal vertex count")

    @property
    def degree(self) -> int:
        return len(self.connection)

    @property
    def modulus(self) -> int:
        return self.group.modulus


def eigenvalue_of_character(graph: CayleyGraph, u: Word) -> Cyclotomic:
    """chi_u(S) = sum over s in S of chi_u(s), computed exactly."""
    e = graph.modulus
    counts = [0] * e
    for s in graph.connection:
        counts[graph.group.dot(u, s)] += 1
    return from_exponent_counts(e, counts)


def integer_eigenvalue(graph: CayleyGraph, u: Word) -> int:
    """Eigenvalue downcast to an integer; raises if it is not a rational integer."""
    return eigenvalue_of_character(graph, u).as_int()


def spectrum(graph: CayleyGraph) -> list[tuple[int, int]]:
    """(eigenvalue, multiplicity) pairs over all characters, descending eigenvalue.

    The eigenvalues of every shipped family are rational integers; this is
    asserted by the exact downcast.
    """
    counts: dict[int, int] = {}
    for u in graph.characters:
        ev = integer_eigenvalue(graph, u)
        counts[ev] = counts.get(ev, 0) + 1
    if sum(counts.values()) != len(graph.vertices):
        raise AssertionError("spectrum multiplicities do not sum to the vertex count")
    return sorted(counts.items(), key=lambda p: -p[0])


def verify_eigenvector(graph: CayleyGraph, u: Word) -> bool:
    """Materialize chi_u, apply the adjacency operator by neighbor summation,
    and compare with eigenvalue * chi_u at every vertex, exactly."""
    group = graph.group
    e = graph.modulus
    theta = eigenvalue_of_character(graph, u)
    index = {x: k for k, x in enumerate(graph.vertices)}
    exps = [group.dot(u, x) for x in graph.vertices]
    for k, x in enumerate(graph.vertices):
        counts = [0] * e
        for s in graph.connection:
            counts[exps[index[group.add(x, s)]]] += 1
        lhs = from_exponent_counts(e, counts)
        rhs = theta * root_power(e, exps[k])
        if lhs != rhs:
            return False
    return True


def _neighbor_index(graph: CayleyGraph) -> np.ndarray:
    index = {x: k for k, x in enumerate(graph.vertices)}
    add = graph.group.add
    return np.array(
        [[index[add(x, s)] for s in graph.connection] for x in graph.vertices],
        dtype=np.int32)


def exponent_matrix(graph: CayleyGraph, indices: Sequence[Word] | None = None) -> np.ndarray:
    """Character exponents (rows = characters, columns = vertices), entries mod e."""
    us = graph.characters if indices is None else list(indices)
    u_arr = np.array(us, dtype=np.int64).reshape(len(us), -1)
    x_arr = np.array(graph.vertices, dtype=np.int64)
    return np.asarray((u_arr @ x_arr.T) % graph.modulus, dtype=np.uint8)


def verify_all_eigenvectors(graph: CayleyGraph) -> bool:
    """Adjacency verification of every character at once (exact integer arithmetic)."""
    e = graph.modulus
    nbr = _neighbor_index(graph)
    exps = exponent_matrix(graph)
    red = np.array(root_reduction_matrix(e), dtype=np.int64)
    for k, u in enumerate(graph.characters):
        theta = integer_eigenvalue(graph, u)
        ngh = exps[k][nbr]  # (|X|, |S|) exponents of chi_u at the neighbors
        counts = np.stack([(ngh == r).sum(axis=1) for r in range(e)]).astype(np.int64)
        lhs = red @ counts  # canonical coefficients of the neighbor sums, per vertex
        rhs = theta * red[:, exps[k]]
        if not (lhs == rhs).all():
            return False
    return True
