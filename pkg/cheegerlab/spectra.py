import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from cheegerlab.exceptions import (
    CheegerLabError,
    ConvergenceError,
    SpectrumError,
)
from cheegerlab.graph import Graph


def jacobi_eigh(
    M: np.ndarray, max_sweeps: int = 100, tol: float = None
) -> Tuple[np.ndarray, np.ndarray, int]:
    """
    Cyclic Jacobi eigendecomposition of a dense real symmetric matrix.

    Each sweep visits every (p, q) pair above the diagonal and applies the
    rotation that zeroes M[p, q]. Iteration stops once the off-diagonal
    Frobenius norm drops below `tol` (default 1e-12 * n).

    Returns:
        eigenvalues (unsorted, the diagonal), eigenvectors as the columns of
        an orthogonal matrix, and the number of sweeps used.

    Raises:
        ConvergenceError if the sweep budget is exhausted.
    """
    A = np.array(M, dtype=float, copy=True)
    n = A.shape[0]
    if A.shape != (n, n) or not np.allclose(A, A.T, atol=1e-14):
        raise CheegerLabError("jacobi_eigh needs a square symmetric matrix")
    if tol is None:
        tol = 1e-12 * n
    V = np.eye(n)

    def off_norm():
        return float(np.linalg.norm(A - np.diag(np.diag(A))))

    sweeps = 0
    while off_norm() >= tol:
        if sweeps == max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {off_norm():.3e}, target {tol:.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0:
                    t = 1.0 / (tau + math.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + math.hypot(1.0, tau))
                c = 1.0 / math.hypot(1.0, t)
                s = t * c
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                vec_p, vec_q = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vec_p - s * vec_q
                V[:, q] = s * vec_p + c * vec_q
    return np.diag(A).copy(), V, sweeps


def cluster_eigenvalues(
    values: np.ndarray, tol: float = 1e-8
) -> List[Tuple[int, ...]]:
    """
    Partition ascending eigenvalue indices into maximal runs in which
    consecutive values differ by less than `tol`.
    """
    if len(values) == 0:
        return []
    clusters = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] < tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    return [tuple(c) for c in clusters]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Eigenvalues of D^-1 A in ascending order (mu_n first, mu_1 last) with
    their eigenfunctions: `functions[i]` is the vertex function for
    `values[i]`, normalized in the degree-weighted inner product.
    """

    values: np.ndarray
    functions: np.ndarray
    degrees: np.ndarray
    clusters: Tuple[Tuple[int, ...], ...]
    cluster_tol: float
    residual: float
    sweeps: int

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def mu_1(self) -> float:
        return float(self.values[-1])

    @property
    def mu_2(self) -> float:
        return float(self.values[-2]) if self.n > 1 else float("nan")

    @property
    def mu_n(self) -> float:
        return float(self.values[0])

    @property
    def mu_n_minus_1(self) -> float:
        return float(self.values[1]) if self.n > 1 else float("nan")

    @property
    def gap(self) -> float:
        """Top spectral gap 1 - mu_2."""
        return 1.0 - self.mu_2

    def cluster_of(self, index: int) -> Tuple[int, ...]:
        return next(c for c in self.clusters if index in c)

    def simple_indices(self) -> List[int]:
        return [c[0] for c in self.clusters if len(c) == 1]

    def gram(self) -> np.ndarray:
        """Degree-weighted Gram matrix of the eigenfunctions."""
        F = self.functions
        return (F * self.degrees) @ F.T


def inner(f, g, graph: Graph) -> float:
    """Degree-weighted inner product sum_u f(u) g(u) d_u."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != (graph.n,) or g.shape != (graph.n,):
        raise CheegerLabError(
            f"vertex functions must have length {graph.n}, "
            f"got {f.shape} and {g.shape}"
        )
    return float(np.sum(f * g * graph.degrees))


def norm(f, graph: Graph) -> float:
    return math.sqrt(inner(f, f, graph))


def transition_matrix(graph: Graph) -> np.ndarray:
    return graph.adjacency_matrix() / graph.degrees[:, None]


def _orient(f: np.ndarray) -> np.ndarray:
    # entry of largest magnitude made positive
    return f if f[int(np.argmax(np.abs(f)))] >= 0 else -f


def normalized_spectrum(
    graph: Graph, max_sweeps: int = 100, cluster_tol: float = 1e-8
) -> Spectrum:
    """
    Spectrum and eigenfunctions of D^-1 A, computed by Jacobi on the
    symmetric conjugate N = D^-1/2 A D^-1/2 and mapped back with
    f = D^-1/2 v, so that <f, f> (degree-weighted) equals |v|^2 = 1.

    Raises:
        SpectrumError for an isolated vertex (D not invertible).
        ConvergenceError if Jacobi exhausts `max_sweeps`.
    """
    isolated = [v for v, d in enumerate(graph.deg) if d == 0]
    if isolated:
        raise SpectrumError(
            f"isolated vertices {isolated}: D^-1 A is undefined"
        )
    degrees = graph.degrees
    scale = 1.0 / np.sqrt(degrees)
    N = graph.adjacency_matrix() * scale[:, None] * scale[None, :]
    values, V, sweeps = jacobi_eigh(N, max_sweeps=max_sweeps)
    order = np.argsort(values, kind="stable")
    values = values[order]
    F = (V[:, order] * scale[:, None]).T
    F = np.array([_orient(f) for f in F])
    P = transition_matrix(graph)
    residual = float(np.max(np.abs(F @ P.T - values[:, None] * F)))
    values.setflags(write=False)
    F.setflags(write=False)
    return Spectrum(
        values=values,
        functions=F,
        degrees=degrees,
        clusters=tuple(cluster_eigenvalues(values, cluster_tol)),
        cluster_tol=cluster_tol,
        residual=residual,
        sweeps=sweeps,
    )


def eigenspace_pair(
    spectrum: Spectrum,
) -> Tuple[np.ndarray, np.ndarray, float, float]:
    """
    Eigenfunctions of the two smallest eigenvalue slots. They are
    degree-weighted orthonormal even when mu_n = mu_{n-1}.

    Returns: (f, g, mu_n, mu_{n-1})
    """
    if spectrum.n < 2:
        raise CheegerLabError("eigenspace_pair needs n >= 2")
    return (
        spectrum.functions[0],
        spectrum.functions[1],
        spectrum.mu_n,
        spectrum.mu_n_minus_1,
    )


def trace_of_square(graph: Graph) -> float:
    """trace((D^-1 A)^2) = sum over ordered adjacent pairs of 1/(d_u d_v)."""
    d = graph.degrees
    return float(sum(2.0 / (d[u] * d[v]) for u, v in graph.edges))


def edge_energies(graph: Graph, f) -> Tuple[float, float]:
    """
    (sum (f(u) - f(v))^2, sum (f(u) + f(v))^2) over the edges.
    """
    f = np.asarray(f, dtype=float)
    E = graph.edge_array()
    fu, fv = f[E[:, 0]], f[E[:, 1]]
    return float(np.sum((fu - fv) ** 2)), float(np.sum((fu + fv) ** 2))
