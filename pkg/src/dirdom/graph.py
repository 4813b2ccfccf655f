"""Graph, digraph and orientation containers plus text formats and generators.

Vertex sets are Python ints used as bitmasks throughout: bit ``v`` set means
vertex ``v`` is in the set.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import GraphFormatError, ResourceCapError, UnsupportedEncodingError
from .rng import SplitMix64

DEFAULT_MAX_ORIENTATIONS = 1 << 22


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def mask_to_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def _as_mask(S, n):
    mask = S if isinstance(S, int) else to_mask(S)
    if mask < 0 or mask >> n:
        raise ValueError(f"vertex set {S!r} not contained in 0..{n - 1}")
    return mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1; ``adj[v]`` is a neighbour bitmask."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency must list exactly n masks")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full or nb >> v & 1:
                raise ValueError(f"bad neighbourhood for vertex {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @cached_property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    @cached_property
    def edge_list(self) -> tuple[tuple[int, int], ...]:
        """Edges as (min, max) pairs in sorted order; fixes the orientation bit order."""
        return tuple(
            (u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))
        )

    def edges(self) -> list[tuple[int, int]]:
        return list(self.edge_list)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return mask_to_list(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def average_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(self.adj)))

    def induced(self, S) -> Graph:
        """Subgraph induced by ``S``, relabelled in increasing order of original id."""
        keep = mask_to_list(_as_mask(S, self.n))
        pos = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            adj.append(to_mask(pos[u] for u in iter_bits(self.adj[v]) if u in pos))
        return Graph(len(keep), tuple(adj))

    def to_graph6(self) -> str:
        return to_graph6(self)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edge_list)})"


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph; ``out[v]`` is the out-neighbour bitmask of ``v``."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.out) != self.n:
            raise ValueError("out-adjacency must list exactly n masks")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.out):
            if nb & ~full or nb >> v & 1:
                raise ValueError(f"bad out-neighbourhood for vertex {v}")

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
        out = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at {u}")
            out[u] |= 1 << v
        return cls(n, tuple(out))

    @cached_property
    def inn(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, nb in enumerate(self.out):
            for v in iter_bits(nb):
                inn[v] |= 1 << u
        return tuple(inn)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.out[u])]

    @property
    def num_arcs(self) -> int:
        return sum(nb.bit_count() for nb in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return mask_to_list(self.out[v])

    def in_neighbors(self, v: int) -> list[int]:
        return mask_to_list(self.inn[v])

    def out_degree(self, v: int) -> int:
        return self.out[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.inn[v].bit_count()

    @property
    def max_out_degree(self) -> int:
        return max((nb.bit_count() for nb in self.out), default=0)

    @property
    def max_in_degree(self) -> int:
        return max((nb.bit_count() for nb in self.inn), default=0)

    def closed_in(self, v: int) -> int:
        return self.inn[v] | 1 << v

    def is_oriented(self) -> bool:
        return all(not (self.out[v] & self.inn[v]) for v in range(self.n))

    def underlying(self) -> Graph:
        return Graph(self.n, tuple(o | i for o, i in zip(self.out, self.inn)))

    def induced(self, S) -> Digraph:
        keep = mask_to_list(_as_mask(S, self.n))
        pos = {v: i for i, v in enumerate(keep)}
        out = [to_mask(pos[u] for u in iter_bits(self.out[v]) if u in pos) for v in keep]
        return Digraph(len(keep), tuple(out))

    def reach_masks(self, d: int) -> tuple[int, ...]:
        """``R[v]`` = vertices at directed distance <= d from v (v included)."""
        reach = [self.out[v] | 1 << v for v in range(self.n)]
        frontier = list(reach)
        for _ in range(1, d):
            changed = False
            for v in range(self.n):
                grow = 0
                for w in iter_bits(frontier[v]):
                    grow |= self.out[w]
                new = grow & ~reach[v]
                frontier[v] = new
                if new:
                    reach[v] |= new
                    changed = True
            if not changed:
                break
        return tuple(reach)

    def distances_from(self, source: int) -> list[int | None]:
        """BFS distances along arcs; ``None`` for unreachable vertices."""
        dist: list[int | None] = [None] * self.n
        dist[source] = 0
        queue = [source]
        for u in queue:
            for w in iter_bits(self.out[u]):
                if dist[w] is None:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arcs()})"


@dataclass(frozen=True)
class Orientation:
    """Orientation of ``graph`` given by a direction bit per edge.

    Edge ``j`` of ``graph.edge_list`` is the pair (u, v) with u < v; its bit
    is bit ``m-1-j`` of ``index`` (edge 0 is the most significant bit), 0
    meaning u -> v.  Increasing ``index`` is therefore the lexicographic order
    of the direction bit-vector.
    """

    graph: Graph
    index: int

    def __post_init__(self):
        if not 0 <= self.index < 1 << self.graph.m:
            raise ValueError(f"orientation index {self.index} out of range for m={self.graph.m}")

    @property
    def bits(self) -> tuple[int, ...]:
        m = self.graph.m
        return tuple(self.index >> (m - 1 - j) & 1 for j in range(m))

    @cached_property
    def digraph(self) -> Digraph:
        m = self.graph.m
        out = [0] * self.graph.n
        for j, (u, v) in enumerate(self.graph.edge_list):
            if self.index >> (m - 1 - j) & 1:
                out[v] |= 1 << u
            else:
                out[u] |= 1 << v
        return Digraph(self.graph.n, tuple(out))

    @classmethod
    def from_digraph(cls, graph: Graph, D: Digraph) -> Orientation:
        if D.n != graph.n:
            raise ValueError("vertex count mismatch")
        m = graph.m
        index = 0
        for j, (u, v) in enumerate(graph.edge_list):
            fwd, back = D.has_arc(u, v), D.has_arc(v, u)
            if fwd == back:
                raise ValueError(f"edge ({u}, {v}) must carry exactly one arc")
            if back:
                index |= 1 << (m - 1 - j)
        if D.num_arcs != m:
            raise ValueError("digraph has arcs outside the underlying graph")
        return cls(graph, index)


# ----------------------------------------------------------------------------
# orientation streams


def check_orientation_cap(G: Graph, max_orientations: int | None = DEFAULT_MAX_ORIENTATIONS):
    if max_orientations is not None and 1 << G.m > max_orientations:
        raise ResourceCapError(
            f"graph has 2^{G.m} orientations, above the cap of {max_orientations}; "
            "raise --max-orientations or use sampling mode"
        )


def prefix_range(m: int, prefix: tuple[int, ...] = ()) -> range:
    """Index range of the orientations whose first edge bits equal ``prefix``."""
    k = len(prefix)
    if k > m:
        raise ValueError("prefix longer than the edge count")
    p = 0
    for b in prefix:
        if b not in (0, 1):
            raise ValueError("prefix entries must be 0 or 1")
        p = p << 1 | b
    return range(p << (m - k), (p + 1) << (m - k))


def orientations(
    G: Graph,
    prefix: tuple[int, ...] = (),
    max_orientations: int | None = DEFAULT_MAX_ORIENTATIONS,
) -> Iterator[Orientation]:
    """All 2^m orientations of ``G`` in lexicographic bit-vector order.

    ``prefix`` restricts the stream to one block of a prefix split; the blocks
    for all prefixes of a fixed length partition the full stream in order.
    """
    check_orientation_cap(G, max_orientations)
    for index in prefix_range(G.m, tuple(prefix)):
        yield Orientation(G, index)


def random_orientation(G: Graph, rng: SplitMix64) -> Orientation:
    return Orientation(G, rng.getrandbits(G.m) if G.m else 0)


# ----------------------------------------------------------------------------
# graph6

_G6_MAX_N = 62


def to_graph6(G: Graph) -> str:
    if G.n > _G6_MAX_N:
        raise UnsupportedEncodingError(f"graph6 short form needs n <= {_G6_MAX_N}, got {G.n}")
    bits = [G.adj[j] >> i & 1 for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(63 + G.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = val << 1 | b
        chars.append(chr(63 + val))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphFormatError("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"character {ch!r} at position {pos} outside graph6 range [63, 126]")
    n = ord(s[0]) - 63
    if n == 63:
        raise UnsupportedEncodingError("extended graph6 order prefix (n >= 63) is not supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = s[1:]
    if len(payload) < need:
        raise GraphFormatError(f"truncated graph6 payload: expected {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise GraphFormatError(f"graph6 payload too long: expected {need} bytes, got {len(payload)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(payload[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


# ----------------------------------------------------------------------------
# edge-list and digraph text formats


def _int_tokens(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphFormatError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer token in {line!r}") from None


def _content_lines(text: str) -> list[tuple[int, str]]:
    return [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]


def parse_edge_list(text: str, first_line: int = 1) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty edge list")
    lineno, header = lines[0]
    n, m = _int_tokens(header, 2, lineno + first_line - 1)
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {lineno + first_line - 1}: negative n or m")
    if len(lines) - 1 != m:
        raise GraphFormatError(f"edge count mismatch: header says {m}, found {len(lines) - 1} edge lines")
    adj = [0] * n
    for lineno, ln in lines[1:]:
        at = lineno + first_line - 1
        u, v = _int_tokens(ln, 2, at)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {at}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {at}: self-loop at {u}")
        if adj[u] >> v & 1:
            raise GraphFormatError(f"line {at}: duplicate edge {{{u}, {v}}}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def write_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edge_list]
    return "\n".join(lines) + "\n"


def parse_digraph(text: str, first_line: int = 1) -> Digraph:
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError("empty digraph")
    lineno, header = lines[0]
    (n,) = _int_tokens(header, 1, lineno + first_line - 1)
    if n < 0:
        raise GraphFormatError(f"line {lineno + first_line - 1}: negative n")
    out = [0] * n
    for lineno, ln in lines[1:]:
        at = lineno + first_line - 1
        u, v = _int_tokens(ln, 2, at)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {at}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {at}: loop at {u}")
        if out[u] >> v & 1:
            raise GraphFormatError(f"line {at}: duplicate arc ({u}, {v})")
        out[u] |= 1 << v
    return Digraph(n, tuple(out))


def write_digraph(D: Digraph) -> str:
    lines = [str(D.n)] + [f"{u} {v}" for u, v in D.arcs()]
    return "\n".join(lines) + "\n"


def read_records(text: str, fmt: str) -> Iterator[tuple[int, Graph | Digraph]]:
    """Yield (line number, graph) for every record in a multi-record text.

    graph6 holds one graph per line; edge-list and digraph records are
    separated by blank lines.
    """
    if fmt == "graph6":
        for lineno, ln in enumerate(text.splitlines(), 1):
            if ln.strip():
                try:
                    yield lineno, parse_graph6(ln)
                except GraphFormatError as exc:
                    raise GraphFormatError(f"line {lineno}: {exc}") from None
        return
    parse = {"edgelist": parse_edge_list, "digraph": parse_digraph}.get(fmt)
    if parse is None:
        raise ValueError(f"unknown format {fmt!r}")
    block: list[str] = []
    start = 0
    for lineno, ln in enumerate(text.splitlines() + [""], 1):
        if ln.strip():
            if not block:
                start = lineno
            block.append(ln)
        elif block:
            yield start, parse("\n".join(block), first_line=start)
            block = []


# ----------------------------------------------------------------------------
# generators


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(m: int) -> Graph:
    """K_{1,m}: centre 0 joined to leaves 1..m."""
    return Graph.from_edges(m + 1, [(0, i) for i in range(1, m + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    rng = SplitMix64(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_tournament(n: int, seed: int = 0) -> Digraph:
    """Each pair u < v becomes u -> v or v -> u with probability 1/2."""
    rng = SplitMix64(seed)
    arcs = [(u, v) if rng.bit() == 0 else (v, u) for u, v in combinations(range(n), 2)]
    return Digraph.from_arcs(n, arcs)


def random_digraph(n: int, p: float, seed: int = 0, oriented: bool = False) -> Digraph:
    """Each ordered pair is an arc with probability p; ``oriented`` keeps at most one per pair."""
    rng = SplitMix64(seed)
    arcs = []
    for u, v in combinations(range(n), 2):
        if oriented:
            if rng.random() < p:
                arcs.append((u, v) if rng.bit() == 0 else (v, u))
        else:
            if rng.random() < p:
                arcs.append((u, v))
            if rng.random() < p:
                arcs.append((v, u))
    return Digraph.from_arcs(n, arcs)


def directed_cycle(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Digraph:
    return Digraph.from_arcs(n, combinations(range(n), 2))


def arcless_digraph(n: int) -> Digraph:
    return Digraph(n, (0,) * n)


def qr_tournament_7() -> Digraph:
    """Quadratic-residue tournament on Z_7: i -> j iff (j - i) mod 7 in {1, 2, 4}."""
    return Digraph.from_arcs(7, [(i, j) for i in range(7) for j in range(7) if (j - i) % 7 in (1, 2, 4)])


def graph_from_index(n: int, index: int) -> Graph:
    """Labelled graph number ``index`` among the 2^C(n,2) edge subsets (pair 0 = MSB)."""
    pairs = list(combinations(range(n), 2))
    M = len(pairs)
    return Graph.from_edges(n, [p for j, p in enumerate(pairs) if index >> (M - 1 - j) & 1])


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices, in edge-subset index order."""
    for index in range(1 << (n * (n - 1) // 2)):
        yield graph_from_index(n, index)


def complement(G: Graph) -> Graph:
    return G.complement()


def induced_subgraph(X, S):
    """Induced subgraph of a Graph or Digraph on vertex set ``S`` (mask or iterable)."""
    return X.induced(S)
