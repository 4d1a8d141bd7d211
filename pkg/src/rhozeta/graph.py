"""Weighted digraphs of density matrices and their prime path classes.

A density matrix maps to a directed graph with one vertex per basis index
(labeled 1..n) and one weighted edge per nonzero entry, loops included.
The primes of such a graph are equivalence classes, under cyclic rotation,
of primitive closed walks; walks may revisit vertices and edges, and the
directed edges (i, j) and (j, i) are independent (no backtracking
constraint).  Each class is represented by the lexicographically least
rotation of its edge sequence, edges ordered by (origin, terminus).
"""

from dataclasses import dataclass

import numpy as np

from .errors import AllLoops, CapExceeded, NotAWalk
from .linalg import DEFAULT_TOL, DensityMatrix, validate_density

#: Hard cap on prime length; enumeration cost grows exponentially.
PRIME_LENGTH_CAP = 14

#: Entries with magnitude at or below this produce no edge.
DEFAULT_ZERO_TOL = 1e-12


class WeightedDigraph:
    """Directed graph with complex edge weights and vertices labeled 1..n.

    At most one edge per ordered vertex pair; loops allowed; every stored
    weight is nonzero.
    """

    def __init__(self, n_vertices: int, edges):
        if n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        weights = {}
        for origin, terminus, weight in edges:
            if not (1 <= origin <= n_vertices and 1 <= terminus <= n_vertices):
                raise ValueError(f"edge ({origin}, {terminus}) outside vertex range 1..{n_vertices}")
            if (origin, terminus) in weights:
                raise ValueError(f"duplicate edge ({origin}, {terminus})")
            w = complex(weight)
            if w == 0 or not (np.isfinite(w.real) and np.isfinite(w.imag)):
                raise ValueError(f"edge ({origin}, {terminus}) weight must be nonzero and finite")
            weights[(origin, terminus)] = w
        self.n_vertices = n_vertices
        self.weights = dict(sorted(weights.items()))
        succ = {v: [] for v in range(1, n_vertices + 1)}
        for (origin, terminus) in self.weights:
            succ[origin].append(terminus)
        self._successors = {v: tuple(ts) for v, ts in succ.items()}

    @property
    def n_edges(self) -> int:
        return len(self.weights)

    def edges(self):
        """Edges as (origin, terminus, weight) triples in sorted order."""
        return [(i, j, w) for (i, j), w in self.weights.items()]

    def successors(self, vertex: int):
        return self._successors[vertex]

    def __repr__(self):
        return f"WeightedDigraph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


@dataclass(frozen=True)
class PrimeClass:
    """Canonical representative of a rotation class of primitive closed walks.

    rep is the lexicographically least rotation of the edge sequence, stored
    as (origin, terminus) pairs; nu is its length and edge_norm the product
    of the traversed edge weights.
    """

    rep: tuple
    nu: int
    edge_norm: complex


class LaplacianWeights:
    """Magnitude-symmetric weight function for the Laplacian construction.

    Holds n_vertices and a mapping (i, j) -> complex weight in which
    |w[i, j]| and |w[j, i]| agree (within 1e-12 relative; only magnitudes
    enter the Laplacian, so phases are unconstrained).
    """

    _MAG_RTOL = 1e-12

    def __init__(self, n_vertices: int, weights: dict):
        if n_vertices < 1:
            raise ValueError("graph needs at least one vertex")
        clean = {}
        for (i, j), w in weights.items():
            if not (1 <= i <= n_vertices and 1 <= j <= n_vertices):
                raise ValueError(f"weight index ({i}, {j}) outside vertex range")
            w = complex(w)
            if w == 0:
                continue
            clean[(i, j)] = w
        for (i, j), w in clean.items():
            partner = clean.get((j, i))
            if partner is None:
                raise ValueError(f"missing reverse weight for ({i}, {j})")
            if abs(abs(w) - abs(partner)) > self._MAG_RTOL * abs(w):
                raise ValueError(f"|w[{i},{j}]| != |w[{j},{i}]|")
        self.n_vertices = n_vertices
        self.weights = dict(sorted(clean.items()))


def graph_from_density(rho: DensityMatrix, zero_tol: float = DEFAULT_ZERO_TOL) -> WeightedDigraph:
    """Build the weighted digraph of a density matrix.

    Vertex i..n per basis index; edge (i, j) with weight rho_ij whenever
    |rho_ij| exceeds zero_tol.  Both directions appear when both entries
    are nonzero.
    """
    if zero_tol < 0:
        raise ValueError("zero_tol must be nonnegative")
    a = rho.matrix
    n = rho.dim
    edges = []
    for i in range(n):
        for j in range(n):
            w = a[i, j]
            if abs(w) > zero_tol:
                edges.append((i + 1, j + 1, w))
    return WeightedDigraph(n, edges)


def density_from_weighted_graph(g: LaplacianWeights, tol: float = DEFAULT_TOL) -> DensityMatrix:
    """Density matrix of a weighted graph via its normalized Laplacian.

    Adjacency holds the weight magnitudes, degrees are row sums, and the
    Laplacian (degree matrix minus adjacency) is normalized by its trace.
    Magnitude symmetry makes the result positive semi-definite.
    """
    n = g.n_vertices
    adjacency = np.zeros((n, n))
    for (i, j), w in g.weights.items():
        adjacency[i - 1, j - 1] = abs(w)
    degrees = adjacency.sum(axis=1)
    laplacian = np.diag(degrees) - adjacency
    lap_trace = float(np.trace(laplacian))
    if lap_trace <= 0.0:
        raise AllLoops("Laplacian trace is zero: graph consists only of loops")
    return validate_density(laplacian / lap_trace, tol)


def _canonical_rotation(seq: tuple) -> tuple:
    return min(seq[k:] + seq[:k] for k in range(len(seq)))


def _is_primitive(seq: tuple) -> bool:
    length = len(seq)
    for d in range(1, length):
        if length % d == 0 and seq[:d] * (length // d) == seq:
            return False
    return True


def enumerate_primes(g: WeightedDigraph, length_cap: int = 8):
    """Enumerate prime classes of closed walks up to the given length.

    Depth-first search from each start vertex s generates the closed walks
    whose smallest visited vertex is s (successors below s are pruned; in a
    closed walk every visited vertex is an origin, so the canonical
    rotation starts at the minimum vertex).  Each walk is rotated to
    canonical form, powers of shorter walks are discarded, and duplicates
    collapse in a set.  Cost is exponential in the cap.

    Returns PrimeClass objects sorted by (nu, rep).
    """
    if length_cap < 1:
        raise ValueError("length cap must be at least 1")
    if length_cap > PRIME_LENGTH_CAP:
        raise CapExceeded(f"length cap {length_cap} exceeds hard cap {PRIME_LENGTH_CAP}")
    reps = set()
    for start in range(1, g.n_vertices + 1):
        walk = []

        def extend(vertex):
            for nxt in g.successors(vertex):
                if nxt < start:
                    continue
                walk.append((vertex, nxt))
                if nxt == start:
                    rep = _canonical_rotation(tuple(walk))
                    if _is_primitive(rep):
                        reps.add(rep)
                if len(walk) < length_cap:
                    extend(nxt)
                walk.pop()

        extend(start)
    classes = []
    for rep in sorted(reps, key=lambda r: (len(r), r)):
        norm = 1.0 + 0.0j
        for edge in rep:
            norm *= g.weights[edge]
        classes.append(PrimeClass(rep=rep, nu=len(rep), edge_norm=norm))
    return classes


def edge_norm(g: WeightedDigraph, walk) -> complex:
    """Product of edge weights along a walk; the empty walk gives 1."""
    walk = [tuple(e) for e in walk]
    norm = 1.0 + 0.0j
    previous = None
    for edge in walk:
        if edge not in g.weights:
            raise NotAWalk(f"edge {edge} not in graph")
        if previous is not None and previous[1] != edge[0]:
            raise NotAWalk(f"edge {edge} does not continue from {previous}")
        norm *= g.weights[edge]
        previous = edge
    return norm


def _format_weight(w: complex) -> str:
    return f"{w.real:.6g}{w.imag:+.6g}i"


def export_dot(g: WeightedDigraph) -> str:
    """Render the graph as DOT text with deterministic ordering."""
    lines = ["digraph G {"]
    for v in range(1, g.n_vertices + 1):
        lines.append(f"  v{v};")
    for (i, j), w in g.weights.items():
        lines.append(f'  v{i} -> v{j} [label="{_format_weight(w)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def walk_vertices(rep) -> str:
    """Vertex-path rendering of a closed edge sequence, e.g. '1->2->1'."""
    if not rep:
        return ""
    verts = [str(rep[0][0])] + [str(edge[1]) for edge in rep]
    return "->".join(verts)


def primes_csv(primes) -> str:
    """CSV table of prime classes: nu, rep, norm_re, norm_im."""
    lines = ["nu,rep,norm_re,norm_im"]
    for p in primes:
        lines.append(f"{p.nu},{walk_vertices(p.rep)},{p.edge_norm.real!r},{p.edge_norm.imag!r}")
    return "\n".join(lines) + "\n"
