"""Dependence on networks: shells, denseness measures, and network HAC.

Nodes are labeled 1..n (matching the edge-list file format); matrices
returned by these functions are indexed by label minus one.  Distances
are unweighted shortest-path lengths, infinite across components.

The denseness functionals quantify how fast s-step neighborhoods grow:
delta^shell(s; k) is the k-th moment of shell sizes, Delta(s, m; k) the
worst-case mass of an m-neighborhood not explained by a neighbor's
(s-1)-neighborhood, and c_n(s, m; k) their Hölder interpolation, the
quantity that controls covariance tail sums on the graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import shortest_path

from ._checks import as_matrix, check_positive_int
from .lrv import KernelSpec, kernel_weight
from .series import _resolve_rng

__all__ = [
    "Graph",
    "cycle_graph",
    "star_graph",
    "graph_distance",
    "shell",
    "neighborhood",
    "NetStats",
    "denseness_stats",
    "simulate_graph_ma",
    "network_hac",
    "read_edgelist",
    "write_edgelist",
]

# Exponent grid for the Hölder infimum in c_n.
_HOLDER_GRID = tuple(np.concatenate([[1.01], np.arange(1.05, 8.0 + 1e-9, 0.05), [16.0, 32.0]]))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 1..n.

    Edges are stored canonically as (min, max) pairs, deduplicated and
    sorted; self-loops are rejected.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_positive_int(self.n, "n")
        canon = set()
        for i, j in self.edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i}, {j}) outside 1..{self.n}")
            canon.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> sparse.csr_matrix:
        """Symmetric 0/1 adjacency in CSR form (0-based)."""
        if not self.edges:
            return sparse.csr_matrix((self.n, self.n))
        rows = [i - 1 for i, _ in self.edges] + [j - 1 for _, j in self.edges]
        cols = [j - 1 for _, j in self.edges] + [i - 1 for i, _ in self.edges]
        data = np.ones(len(rows))
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.n, self.n))


def cycle_graph(n: int) -> Graph:
    """Cycle C_n (n >= 3)."""
    n = check_positive_int(n, "n", minimum=3)
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph(n=n, edges=tuple(edges))


def star_graph(leaves: int) -> Graph:
    """Star K_{1,leaves} with hub node 1."""
    leaves = check_positive_int(leaves, "leaves")
    return Graph(n=leaves + 1, edges=tuple((1, j) for j in range(2, leaves + 2)))


def graph_distance(g: Graph) -> np.ndarray:
    """(n, n) matrix of shortest-path distances; inf across components."""
    if g.num_edges == 0:
        d = np.full((g.n, g.n), np.inf)
        np.fill_diagonal(d, 0.0)
        return d
    return shortest_path(g.adjacency(), method="D", directed=False, unweighted=True)


def _dist_of(g_or_dist) -> np.ndarray:
    if isinstance(g_or_dist, Graph):
        return graph_distance(g_or_dist)
    d = np.asarray(g_or_dist, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError("distance matrix must be square")
    return d


def shell(g_or_dist, i: int, s: int) -> np.ndarray:
    """Nodes at distance exactly s from node i (labels, sorted).

    shell(g, i, 0) is {i} itself.
    """
    d = _dist_of(g_or_dist)
    if not 1 <= i <= d.shape[0]:
        raise ValueError(f"node {i} outside 1..{d.shape[0]}")
    if s < 0:
        raise ValueError("s must be >= 0")
    return np.nonzero(d[i - 1] == s)[0] + 1


def neighborhood(g_or_dist, i: int, s: int) -> np.ndarray:
    """Nodes within distance s of node i, including i (labels, sorted)."""
    d = _dist_of(g_or_dist)
    if not 1 <= i <= d.shape[0]:
        raise ValueError(f"node {i} outside 1..{d.shape[0]}")
    if s < 0:
        raise ValueError("s must be >= 0")
    return np.nonzero(d[i - 1] <= s)[0] + 1


def _log_power_mean(sizes: np.ndarray, exponent: float) -> float:
    """log( n^{-1} sum_i sizes_i^exponent ), stable for large exponents.

    sizes_i = 0 terms contribute 0 to the sum (0^k = 0 for k > 0).
    """
    n = sizes.shape[0]
    pos = sizes[sizes > 0]
    if pos.size == 0:
        return -np.inf
    logs = exponent * np.log(pos)
    mx = logs.max()
    return float(mx + np.log(np.sum(np.exp(logs - mx))) - np.log(n))


@dataclass(frozen=True)
class NetStats:
    """Denseness summary at shell depth s, reach m, moment order k."""

    s: int
    m: int
    k: float
    delta_shell: float
    delta_overlap: float
    c_n: float


def denseness_stats(g: Graph, s: int, m: int, k: float = 1.0,
                    dist: np.ndarray | None = None) -> NetStats:
    """Shell-growth moments and the Hölder bound c_n(s, m; k).

        delta_shell   = n^{-1} sum_i |shell(i, s)|^k
        delta_overlap = n^{-1} sum_i max_{j in shell(i,s)}
                          |N(i; m) \\ N(j; s-1)|^k
        c_n           = inf_a Delta(s,m; k a)^{1/a}
                          * delta_shell(s; a/(a-1))^{1 - 1/a}

    with N(j; -1) empty when s = 0 and empty shells contributing 0 to
    the max.  The infimum runs over a fixed grid of exponents
    {1.01, 1.05, ..., 8} plus {16, 32}; moments are evaluated in log
    space so large exponents do not overflow.
    """
    if s < 0 or m < 0:
        raise ValueError("s and m must be >= 0")
    if k <= 0:
        raise ValueError("k must be positive")
    d = _dist_of(dist if dist is not None else g)
    n = d.shape[0]
    shell_sizes = np.sum(d == s, axis=1).astype(float)

    # worst uncovered m-neighborhood mass, per node
    overlap_sizes = np.zeros(n)
    within_m = d <= m
    for i0 in range(n):
        js = np.nonzero(d[i0] == s)[0]
        if js.size == 0:
            continue
        if s == 0:
            overlap_sizes[i0] = within_m[i0].sum()
            continue
        uncovered = within_m[i0][None, :] & ~(d[js] <= s - 1)
        overlap_sizes[i0] = uncovered.sum(axis=1).max()

    delta_shell = float(np.exp(_log_power_mean(shell_sizes, k)))
    delta_overlap = float(np.exp(_log_power_mean(overlap_sizes, k)))

    best = np.inf
    for a in _HOLDER_GRID:
        log_delta = _log_power_mean(overlap_sizes, k * a)
        log_shell = _log_power_mean(shell_sizes, a / (a - 1.0))
        if log_delta == -np.inf:
            best = 0.0
            break
        val = np.exp(log_delta / a + (1.0 - 1.0 / a) * log_shell)
        best = min(best, float(val))
    return NetStats(s=s, m=m, k=k, delta_shell=delta_shell,
                    delta_overlap=delta_overlap, c_n=best)


def simulate_graph_ma(g: Graph, weights, rng, dist: np.ndarray | None = None,
                      v: int = 1) -> np.ndarray:
    """Graph moving average Y_i = sum_{d(i,j) <= m} weights[d(i,j)] eps_j.

    weights = (w_0, ..., w_m) taper the iid standard normal field eps by
    graph distance; dependence has exact radius m.  v > 1 draws that
    many independent fields and returns an (n, v) array; the default
    returns a 1-d vector.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a non-empty 1-d sequence")
    v = check_positive_int(v, "v")
    d = _dist_of(dist if dist is not None else g)
    gen = _resolve_rng(rng)
    coef = np.zeros_like(d)
    for s_val in range(w.size):
        coef[d == s_val] = w[s_val]
    if v == 1:
        return coef @ gen.standard_normal(d.shape[0])
    return coef @ gen.standard_normal((d.shape[0], v))


def network_hac(g: Graph, y, kernel: KernelSpec | None = None,
                demean: bool = True, dist: np.ndarray | None = None) -> np.ndarray:
    """Kernel HAC estimate of the network long-run variance.

        V = sum_{s=0}^{floor(b)} w(s/b) Omega(s),
        Omega(s) = n^{-1} sum_i sum_{j: d(i,j)=s} (Y_i - Ybar)(Y_j - Ybar)'

    symmetrized as (V + V') / 2.  The kernel must vanish beyond 1
    (truncated, bartlett, or parzen); bandwidth=None applies the default
    rule in shell units.  Y may be (n,) or (n, v).
    """
    spec = kernel if kernel is not None else KernelSpec()
    if spec.family == "quadratic-spectral":
        raise ValueError("network HAC requires a kernel vanishing beyond 1")
    d = _dist_of(dist if dist is not None else g)
    n = d.shape[0]
    ym = as_matrix(y, "y", min_len=2)
    if ym.shape[0] != n:
        raise ValueError(f"y has {ym.shape[0]} rows but the graph has {n} nodes")
    if demean:
        ym = ym - ym.mean(axis=0)
    b = spec.resolve_bandwidth(n)
    v = np.zeros((ym.shape[1], ym.shape[1]))
    for s_val in range(int(np.floor(b + 1e-12)) + 1):
        w = kernel_weight(spec.family, s_val / b)
        if w == 0.0:
            continue
        ii, jj = np.nonzero(d == s_val)
        if ii.size == 0:
            continue
        v += w * (ym[ii].T @ ym[jj]) / n
    return (v + v.T) / 2.0


def write_edgelist(g: Graph, path) -> None:
    """Write "n=<count>" then one "i j" line per edge (labels 1-based)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n={g.n}\n")
        for i, j in g.edges:
            fh.write(f"{i} {j}\n")


def read_edgelist(path) -> Graph:
    """Parse the edge-list format written by `write_edgelist`.

    Blank lines and lines starting with '#' are ignored.
    """
    n = None
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if n is None:
                if not line.startswith("n="):
                    raise ValueError(f"{path}:{lineno}: expected header 'n=<count>'")
                n = int(line[2:])
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'i j', got {line!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError(f"{path}: missing 'n=<count>' header")
    return Graph(n=n, edges=tuple(edges))
