"""
Graph - Dense adjacency-matrix graphs, DAG checks and the exact acyclicity oracle

Weighted graphs are square float arrays with W[u, v] the weight of arc u -> v.
Binary graphs are square bool arrays with the same indexing.
"""
import math
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Tuple

import numpy as np

from .errors import InvalidInputError

TAYLOR_TOLERANCE = 1e-14
TAYLOR_MAX_TERMS = 200


@dataclass(frozen=True)
class TopologicalSort:
    """Result of peeling a graph: an order when acyclic, otherwise the leftover nodes"""

    order: Optional[Tuple[int, ...]]
    remaining: FrozenSet[int] = field(default_factory=frozenset)

    @property
    def is_acyclic(self) -> bool:
        """True when every node was peeled"""
        return self.order is not None


def as_square(matrix, name: str = "matrix") -> np.ndarray:
    """Return `matrix` as an ndarray, checking that it is square"""
    array = np.asarray(matrix)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise InvalidInputError(f"{name} must be a square matrix, got shape {array.shape}")
    return array


def as_binary(matrix) -> np.ndarray:
    """Coerce an adjacency matrix to a square boolean array"""
    return as_square(matrix, "adjacency").astype(bool)


def support(W, tol: float = 0.0) -> np.ndarray:
    """Binary adjacency of the arcs with |weight| > tol"""
    return np.abs(as_square(W, "W")) > tol


def threshold(W, omega: float) -> np.ndarray:
    """Keep the arcs with |W[u, v]| > omega"""
    if not omega > 0:
        raise InvalidInputError(f"threshold omega must be positive, got {omega}")
    return support(W, omega)


def topological_order(A) -> TopologicalSort:
    """Kahn peeling of a binary adjacency matrix"""
    A = as_binary(A)
    d = A.shape[0]
    in_degree = A.sum(axis=0).astype(int)
    alive = np.ones(d, dtype=bool)
    frontier = deque(int(v) for v in np.flatnonzero(in_degree == 0))
    order: List[int] = []

    while frontier:
        u = frontier.popleft()
        order.append(u)
        alive[u] = False
        for v in np.flatnonzero(A[u]):
            in_degree[v] -= 1
            if in_degree[v] == 0:
                frontier.append(int(v))

    if len(order) == d:
        return TopologicalSort(order=tuple(order))
    return TopologicalSort(order=None, remaining=frozenset(int(v) for v in np.flatnonzero(alive)))


def is_dag(A) -> bool:
    """True iff the binary graph has no directed cycle"""
    return topological_order(A).is_acyclic


def arcs(A) -> List[Tuple[int, int]]:
    """Arc list (u, v) of a binary adjacency matrix in row-major order"""
    rows, cols = np.nonzero(as_binary(A))
    return [(int(u), int(v)) for u, v in zip(rows, cols)]


def from_arcs(d: int, arc_list: Iterable[Tuple[int, int]]) -> np.ndarray:
    """Binary adjacency matrix with the given arcs"""
    A = np.zeros((d, d), dtype=bool)
    for u, v in arc_list:
        A[u, v] = True
    return A


def expm_taylor(M) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring around an adaptive Taylor series.

    The matrix is scaled by 2**-s until its infinity norm is at most 1/2, the
    series is summed until the newest term's largest entry drops below
    TAYLOR_TOLERANCE times the largest entry of the partial sum, and the
    result is squared s times. For a 1/2-bounded argument the neglected tail
    is below twice the last accepted term.
    """
    M = as_square(M, "M").astype(float)
    if not np.all(np.isfinite(M)):
        raise InvalidInputError("matrix exponential requires finite entries")

    norm = np.linalg.norm(M, ord=np.inf)
    squarings = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0.5 else 0
    A = M / (2.0 ** squarings)

    result = np.eye(M.shape[0])
    term = np.eye(M.shape[0])
    for k in range(1, TAYLOR_MAX_TERMS + 1):
        term = term @ A / k
        result = result + term
        if np.max(np.abs(term)) <= TAYLOR_TOLERANCE * np.max(np.abs(result)):
            break

    for _ in range(squarings):
        result = result @ result
    return result


def notears_h(W) -> float:
    """Acyclicity functional tr(exp(W * W)) - d; zero exactly on DAG supports"""
    W = as_square(W, "W").astype(float)
    if not np.all(np.isfinite(W)):
        raise InvalidInputError("notears_h requires finite weights")
    d = W.shape[0]
    if d == 0:
        return 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        value = float(np.trace(expm_taylor(W * W)) - d)
    if not np.isfinite(value):
        return float("inf")
    return max(value, 0.0)
