"""Directed networks with typed edges and a known vertex partition.

The central data structure is :class:`TypedNetwork`.  Edges are stored as an
N x N integer matrix: entry (i, j) is the type of the edge from vertex i to
vertex j, with 0 meaning the edge is absent.  Every vertex additionally
carries an observed subgraph label (0-indexed in memory; file formats are
1-indexed, see :mod:`rsm.io`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _readonly(arr: np.ndarray, dtype=None) -> np.ndarray:
    """Return a read-only copy of ``arr``, optionally cast to ``dtype``."""
    out = np.array(arr, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class TypedNetwork:
    """A directed network whose present edges carry a categorical type.

    Parameters
    ----------
    edge_types:
        N x N integer matrix.  ``edge_types[i, j]`` is the type (1..n_types)
        of the edge from i to j, or 0 if no edge exists.  Diagonal entries
        are ignored and never read.
    subgraph_of:
        Length-N integer vector of observed subgraph labels in
        ``{0, ..., n_subgraphs - 1}``.
    n_types:
        Number of edge types C (>= 1).
    n_subgraphs:
        Number of subgraphs S (>= 1).

    The constructor only enforces structural consistency (shapes, counts >= 1)
    so that malformed label values can still be inspected; value-level checks
    live in :func:`validate_network`.
    """

    edge_types: np.ndarray
    subgraph_of: np.ndarray
    n_types: int
    n_subgraphs: int

    def __post_init__(self):
        x = np.asarray(self.edge_types)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ValueError(f"edge_types must be a square matrix, got shape {x.shape}")
        if x.size and not np.issubdtype(x.dtype, np.integer):
            if not np.all(np.asarray(x) == np.asarray(x).astype(np.int64)):
                raise ValueError("edge_types must contain integers")
        sub = np.asarray(self.subgraph_of)
        if sub.ndim != 1 or sub.shape[0] != x.shape[0]:
            raise ValueError(
                f"subgraph_of must be a length-{x.shape[0]} vector, got shape {sub.shape}"
            )
        if self.n_types < 1:
            raise ValueError(f"n_types must be >= 1, got {self.n_types}")
        if self.n_subgraphs < 1:
            raise ValueError(f"n_subgraphs must be >= 1, got {self.n_subgraphs}")
        object.__setattr__(self, "edge_types", _readonly(x, np.int64))
        object.__setattr__(self, "subgraph_of", _readonly(sub, np.int64))

    @property
    def n_vertices(self) -> int:
        return self.edge_types.shape[0]

    def __repr__(self) -> str:
        n_edges = int(np.count_nonzero(offdiagonal(self.edge_types)))
        return (
            f"TypedNetwork(n_vertices={self.n_vertices}, n_edges={n_edges}, "
            f"n_types={self.n_types}, n_subgraphs={self.n_subgraphs})"
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate_network`: hard violations plus warnings."""

    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def offdiagonal(edge_types: np.ndarray) -> np.ndarray:
    """Copy of an edge-type matrix with the (ignored) diagonal forced to 0."""
    out = np.array(edge_types, copy=True)
    if out.size:
        np.fill_diagonal(out, 0)
    return out


def validate_network(net: TypedNetwork) -> ValidationReport:
    """Check label and type ranges of a network.

    Violations (reject): an off-diagonal edge type outside ``0..n_types``, or
    a subgraph label outside ``0..n_subgraphs - 1``.  Warnings (accept): a
    subgraph with no vertices.
    """
    violations: list[str] = []
    warnings: list[str] = []

    x = offdiagonal(net.edge_types)
    bad = np.argwhere((x < 0) | (x > net.n_types))
    for i, j in bad[:20]:
        violations.append(
            f"edge type {net.edge_types[i, j]} at ({i}, {j}) outside 0..{net.n_types}"
        )
    if len(bad) > 20:
        violations.append(f"... and {len(bad) - 20} more edge-type violations")

    sub = net.subgraph_of
    bad_sub = np.nonzero((sub < 0) | (sub >= net.n_subgraphs))[0]
    for i in bad_sub[:20]:
        violations.append(
            f"subgraph label {sub[i]} at vertex {i} outside 0..{net.n_subgraphs - 1}"
        )
    if len(bad_sub) > 20:
        violations.append(f"... and {len(bad_sub) - 20} more subgraph-label violations")

    counts = np.bincount(sub[(sub >= 0) & (sub < net.n_subgraphs)], minlength=net.n_subgraphs)
    for s in np.nonzero(counts == 0)[0]:
        warnings.append(f"subgraph {s} has no vertices")

    return ValidationReport(tuple(violations), tuple(warnings))


def presence_matrix(net: TypedNetwork) -> np.ndarray:
    """Binary N x N presence matrix: 1 where an edge of any type exists.

    The diagonal is 0 by convention regardless of stored values, and the
    result does not depend on how present edges are typed.
    """
    a = (offdiagonal(net.edge_types) != 0).astype(np.int8)
    return a
