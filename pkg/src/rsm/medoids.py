"""Hard initialization of cluster responsibilities via k-medoids.

Vertices are compared with a discordance count: for each third vertex h that
both i and j point to, a disagreement in edge type counts 1, and likewise for
each h pointing to both.  Edges that are not present on both sides contribute
nothing, so the measure only reacts to differently-typed shared connections.
"""

from __future__ import annotations

import numpy as np

from .network import TypedNetwork, presence_matrix

# Cap on assignment/medoid alternations; stability is normally reached in a
# handful of rounds.
MAX_MEDOID_ROUNDS = 50


def init_distance(net: TypedNetwork, i: int, j: int) -> int:
    """Discordance between vertices i and j.

    Counts third vertices h where both i->h and j->h exist but carry
    different types, plus those where both h->i and h->j exist but carry
    different types.  Symmetric, zero on the diagonal.
    """
    n = net.n_vertices
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"vertex index out of range for n_vertices={n}")
    x = net.edge_types
    a = presence_matrix(net)
    out = int(np.sum((x[i] != x[j]) & (a[i] == 1) & (a[j] == 1)))
    inc = int(np.sum((x[:, i] != x[:, j]) & (a[:, i] == 1) & (a[:, j] == 1)))
    return out + inc


def distance_matrix(net: TypedNetwork) -> np.ndarray:
    """All-pairs discordance matrix, computed with integer matrix products."""
    a = presence_matrix(net).astype(np.int64)
    x = net.edge_types
    shared_out = a @ a.T
    shared_in = a.T @ a
    agree_out = np.zeros_like(shared_out)
    agree_in = np.zeros_like(shared_in)
    for c in range(1, net.n_types + 1):
        m = ((x == c) & (a == 1)).astype(np.int64)
        agree_out += m @ m.T
        agree_in += m.T @ m
    return (shared_out - agree_out) + (shared_in - agree_in)


def kmedoid_init(net: TypedNetwork, n_clusters: int, seed: int) -> np.ndarray:
    """Hard N x K responsibility matrix from k-medoids on the discordance.

    Centers are drawn among the vertices without replacement, each starting
    as a singleton cluster.  Vertices are then assigned to the cluster with
    the smallest mean discordance to its members (ties to the lowest-indexed
    cluster); averaging over members rather than comparing against the
    single center vertex is what lets weak per-pair signal accumulate.  Each
    nonempty cluster's center moves to the member minimizing the summed
    distance to the cluster (ties to the lowest vertex index).  Alternation
    stops once centers and assignments are both stable, or after
    ``MAX_MEDOID_ROUNDS``.

    When ``n_clusters`` exceeds the number of vertices, every vertex becomes
    a center and the surplus clusters stay empty.
    """
    if n_clusters < 1:
        raise ValueError(f"n_clusters must be >= 1, got {n_clusters}")
    n = net.n_vertices
    if n == 0:
        return np.zeros((0, n_clusters))
    k_used = min(n_clusters, n)
    rng = np.random.default_rng(seed)
    centers = rng.choice(n, size=k_used, replace=False)

    d = distance_matrix(net).astype(np.float64)
    assign = np.argmin(d[:, centers], axis=1)
    for _ in range(MAX_MEDOID_ROUNDS):
        cost = np.empty((n, k_used))
        for k in range(k_used):
            members = assign == k
            if members.any():
                cost[:, k] = d[:, members].mean(axis=1)
            else:
                cost[:, k] = d[:, centers[k]]
        new_assign = np.argmin(cost, axis=1)
        new_centers = centers.copy()
        for k in range(k_used):
            members = np.nonzero(new_assign == k)[0]
            if members.size == 0:
                continue
            within = d[np.ix_(members, members)].sum(axis=1)
            new_centers[k] = members[np.argmin(within)]
        stable = (np.array_equal(np.sort(new_centers), np.sort(centers))
                  and np.array_equal(new_assign, assign))
        centers, assign = new_centers, new_assign
        if stable:
            break

    tau = np.zeros((n, n_clusters))
    tau[np.arange(n), assign] = 1.0
    return tau
