"""The bipartite graphs D(k, q) and Gamma(q), the group G and its Cayley graph.

Vertices of F_q^k are indexed in base q with the first coordinate as the
least significant digit. Bipartite graphs keep points and lines in separate
index ranges; when a single adjacency matrix is needed, lines are shifted by
``q**k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TextIO

import numpy as np
import scipy.sparse as sp

from dkq.gf import FieldError, FieldSpec


def encode(coords, q: int) -> np.ndarray:
    """Tuple array of shape (..., k) -> integer vertex codes."""
    coords = np.asarray(coords, dtype=np.int64)
    w = q ** np.arange(coords.shape[-1], dtype=np.int64)
    return coords @ w


def decode(codes, q: int, k: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    w = q ** np.arange(k, dtype=np.int64)
    return (codes[..., None] // w) % q


def all_tuples(q: int, k: int) -> np.ndarray:
    return decode(np.arange(q**k, dtype=np.int64), q, k)


@dataclass(frozen=True)
class BipartiteGraph:
    """Point-line incidence graph; ``edges[i] = (point code, line code)``."""

    k: int
    q: int
    edges: np.ndarray
    name: str = "d-graph"

    @property
    def n_side(self) -> int:
        return self.q**self.k

    @property
    def n(self) -> int:
        return 2 * self.n_side

    def biadjacency(self) -> sp.csr_matrix:
        m = len(self.edges)
        return sp.csr_matrix((np.ones(m), (self.edges[:, 0], self.edges[:, 1])),
                             shape=(self.n_side, self.n_side))

    def adjacency(self) -> sp.csr_matrix:
        B = self.biadjacency()
        return sp.bmat([[None, B], [B.T, None]], format="csr")

    def point_degrees(self) -> np.ndarray:
        return np.bincount(self.edges[:, 0], minlength=self.n_side)

    def line_degrees(self) -> np.ndarray:
        return np.bincount(self.edges[:, 1], minlength=self.n_side)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected loop-free graph; ``edges`` rows are (u, v) with u < v, sorted."""

    n: int
    edges: np.ndarray

    def adjacency(self) -> sp.csr_matrix:
        u, v = self.edges[:, 0], self.edges[:, 1]
        data = np.ones(2 * len(u))
        return sp.csr_matrix((data, (np.concatenate([u, v]), np.concatenate([v, u]))),
                             shape=(self.n, self.n))

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n)


def _sorted_pairs(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    e = np.stack([u, v], axis=1)
    return np.unique(e, axis=0)


def simple_graph_from_pairs(n: int, u: np.ndarray, v: np.ndarray) -> SimpleGraph:
    u, v = np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64)
    keep = u != v
    lo, hi = np.minimum(u, v)[keep], np.maximum(u, v)[keep]
    return SimpleGraph(n, _sorted_pairs(lo, hi))


# the bipartite graphs ------------------------------------------------------

def _lines_of_points(F: FieldSpec, P: np.ndarray, l1: np.ndarray, k: int, rule: str):
    """Line coordinates adjacent to points P (shape (m, k)) through first coordinate l1."""
    p = [P[:, i] for i in range(k)]
    L = [l1]
    if rule == "d":
        # p2+l2 = p1 l1, p3+l3 = p1 l2, p4+l4 = p2 l1, p5+l5 = p3 l1
        if k >= 2:
            L.append(F.sub(F.mul(p[0], l1), p[1]))
        if k >= 3:
            L.append(F.sub(F.mul(p[0], L[1]), p[2]))
        if k >= 4:
            L.append(F.sub(F.mul(p[1], l1), p[3]))
        if k >= 5:
            L.append(F.sub(F.mul(p[2], l1), p[4]))
    else:
        p1sq, l1sq = F.square(p[0]), F.square(l1)
        L.append(F.sub(F.mul(p[0], l1), p[1]))
        L.append(F.sub(F.mul(p[0], l1sq), p[2]))
        L.append(F.sub(F.mul(p1sq, l1), p[3]))
        L.append(F.sub(F.mul(p1sq, l1sq), p[4]))
    return np.stack(L, axis=1)


def _incidence(F: FieldSpec, k: int, rule: str, name: str) -> BipartiteGraph:
    q = F.q
    P = all_tuples(q, k)
    pts = np.repeat(np.arange(q**k, dtype=np.int64), q)
    l1 = np.tile(F.elements(), q**k)
    lines = encode(_lines_of_points(F, P[pts], l1, k, rule), q)
    order = np.lexsort((lines, pts))
    return BipartiteGraph(k, q, np.stack([pts[order], lines[order]], axis=1), name)


def d_graph(k: int, F: FieldSpec) -> BipartiteGraph:
    """D(k, q) for k in 2..5: the first k-1 of the defining relations."""
    if k not in (2, 3, 4, 5):
        raise ValueError(f"k={k} not supported; expected 2, 3, 4 or 5")
    return _incidence(F, k, "d", "d-graph")


def gamma_graph(F: FieldSpec) -> BipartiteGraph:
    """Gamma(q): p2+l2 = p1 l1, p3+l3 = p1 l1^2, p4+l4 = p1^2 l1, p5+l5 = p1^2 l1^2."""
    return _incidence(F, 5, "gamma", "gamma-graph")


def iso_pi(F: FieldSpec, v, side: str):
    """The isomorphism D(5, q) -> Gamma(q) on point or line coordinate tuples."""
    v = np.asarray(v, dtype=np.int64)
    x = [v[..., i] for i in range(5)]
    two = F.const(2)
    if side == "point":
        out = [x[0], x[1], x[3], F.add(x[2], F.mul(x[0], x[1])),
               F.add(F.mul(two, x[4]), F.square(x[1]))]
    elif side == "line":
        out = [x[0], x[1], F.add(x[3], F.mul(x[0], x[1])), x[2],
               F.sub(F.add(F.mul(two, x[4]), F.mul(two, F.mul(x[0], x[2]))), F.square(x[1]))]
    else:
        raise ValueError(f"side must be 'point' or 'line', got {side!r}")
    return np.stack([np.asarray(o, dtype=np.int64) for o in out], axis=-1)


def relabel(bg: BipartiteGraph, F: FieldSpec, target_name: str = "gamma-graph") -> BipartiteGraph:
    """Image of a D(5, q) edge set under iso_pi."""
    q = bg.q
    pts = encode(iso_pi(F, decode(bg.edges[:, 0], q, 5), "point"), q)
    lines = encode(iso_pi(F, decode(bg.edges[:, 1], q, 5), "line"), q)
    order = np.lexsort((lines, pts))
    return BipartiteGraph(5, q, np.stack([pts[order], lines[order]], axis=1), target_name)


def halved_graph(bg: BipartiteGraph, side: str = "point") -> SimpleGraph:
    """Distance-two graph restricted to one side of a bipartite graph."""
    B = bg.biadjacency()
    M = (B @ B.T) if side == "point" else (B.T @ B)
    M = sp.triu(M, k=1).tocoo()
    return SimpleGraph(bg.n_side, _sorted_pairs(M.row.astype(np.int64), M.col.astype(np.int64)))


def point_graph_direct(F: FieldSpec) -> SimpleGraph:
    """Point graph of Gamma(q) solved straight from the collinearity equations.

    For each point r, each p1 = r1 + x (x != 0) and each l1 = a, the point p
    with p2 - r2 = x a, p3 - r3 = x a^2, p4 - r4 = (p1^2 - r1^2) a and
    p5 - r5 = (p1^2 - r1^2) a^2 is collinear with r.
    """
    q = F.q
    R = all_tuples(q, 5)
    x, a = np.meshgrid(F.nonzero(), F.elements(), indexing="ij")
    x, a = x.ravel(), a.ravel()
    rr = np.repeat(np.arange(q**5, dtype=np.int64), len(x))
    X, A = np.tile(x, q**5), np.tile(a, q**5)
    r = [R[rr, i] for i in range(5)]
    p1 = F.add(r[0], X)
    d = F.sub(F.square(p1), F.square(r[0]))
    P = np.stack([p1,
                  F.add(r[1], F.mul(X, A)),
                  F.add(r[2], F.mul(X, F.square(A))),
                  F.add(r[3], F.mul(d, A)),
                  F.add(r[4], F.mul(d, F.square(A)))], axis=1)
    return simple_graph_from_pairs(q**5, rr, encode(P, q))


# the group G -----------------------------------------------------------------

IDENTITY = np.zeros(5, dtype=np.int64)


def group_mul(F: FieldSpec, X, Y) -> np.ndarray:
    """(x+y) coordinatewise, plus 2 x1 y2 in the 4th and 2 x1 y3 in the 5th coordinate."""
    X, Y = np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64)
    X, Y = np.broadcast_arrays(X, Y)
    s = F.add(X, Y)
    two_x1 = F.mul(F.const(2), X[..., 0])
    s4 = F.add(s[..., 3], F.mul(two_x1, Y[..., 1]))
    s5 = F.add(s[..., 4], F.mul(two_x1, Y[..., 2]))
    return np.stack([s[..., 0], s[..., 1], s[..., 2], np.asarray(s4), np.asarray(s5)], axis=-1)


def group_inv(F: FieldSpec, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    n = F.neg(X)
    two_x1 = F.mul(F.const(2), X[..., 0])
    i4 = F.add(n[..., 3], F.mul(two_x1, X[..., 1]))
    i5 = F.add(n[..., 4], F.mul(two_x1, X[..., 2]))
    return np.stack([n[..., 0], n[..., 1], n[..., 2], np.asarray(i4), np.asarray(i5)], axis=-1)


def gen_set(F: FieldSpec) -> np.ndarray:
    """S = {(x, xa, xa^2, x^2 a, x^2 a^2) : x != 0}; rows ordered by (x, a)."""
    x, a = np.meshgrid(F.nonzero(), F.elements(), indexing="ij")
    x, a = x.ravel(), a.ravel()
    xa, x2 = F.mul(x, a), F.square(x)
    return np.stack([x, xa, F.mul(xa, a), F.mul(x2, a), F.mul(x2, F.square(a))], axis=1)


def cayley_graph(F: FieldSpec) -> SimpleGraph:
    """Cay(G, S): r adjacent to r s for every s in S."""
    q = F.q
    R = all_tuples(q, 5)
    S = gen_set(F)
    rr = np.repeat(np.arange(q**5, dtype=np.int64), len(S))
    prod = group_mul(F, R[rr], np.tile(S, (q**5, 1)))
    return simple_graph_from_pairs(q**5, rr, encode(prod, q))


# traversal -------------------------------------------------------------------

def girth(g: BipartiteGraph | SimpleGraph, chunk: int = 512) -> float:
    """Length of a shortest cycle, or ``math.inf`` for a forest.

    Runs a breadth-first search from every vertex, a batch of sources at a
    time. From source s a level-d vertex adjacent to another level-d vertex
    closes a cycle of length <= 2d+1; a level-(d+1) vertex with two level-d
    parents closes one of length <= 2d+2. The minimum over all sources is the
    girth.
    """
    A = g.adjacency().astype(np.float32).tocsr()
    n = A.shape[0]
    if n == 0:
        raise ValueError("graph is empty")
    best = math.inf
    for start in range(0, n, chunk):
        src = np.arange(start, min(n, start + chunk))
        front = np.zeros((n, len(src)), dtype=bool)
        front[src, np.arange(len(src))] = True
        seen = front.copy()
        d = 0
        while front.any() and 2 * d + 1 < best:
            counts = A @ front.astype(np.float32)
            if ((counts > 0) & front).any():
                best = min(best, 2 * d + 1)
                break
            new = (counts > 0) & ~seen
            if ((counts >= 2) & new).any():
                best = min(best, 2 * d + 2)
                break
            seen |= new
            front = new
            d += 1
    return best


def components(g: BipartiteGraph | SimpleGraph) -> list[np.ndarray]:
    """Connected components as sorted vertex arrays, ordered by smallest vertex."""
    A = g.adjacency().tocsr()
    n = A.shape[0]
    label = np.full(n, -1, dtype=np.int64)
    comps = []
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = len(comps)
        front = np.array([s])
        members = [front]
        while len(front):
            nb = np.unique(A[front].indices)
            nb = nb[label[nb] < 0]
            label[nb] = len(comps)
            members.append(nb)
            front = nb
        comps.append(np.sort(np.concatenate(members)))
    return comps


def write_edge_csv(bg: BipartiteGraph, fh: TextIO) -> None:
    """Edge list ``u,v`` with points as 0..q^k-1 and lines offset by q^k."""
    fh.write(f"# d-graph k={bg.k} q={bg.q}\n")
    off = bg.n_side
    for u, v in bg.edges:
        fh.write(f"{u},{v + off}\n")


def check_odd(F: FieldSpec) -> None:
    if F.p == 2:
        raise FieldError("odd q required")
