"""Score-based causal structure discovery honoring domain knowledge.

The search is a two-phase greedy equivalence search over CPDAGs: a forward
insertion phase climbs to a local optimum of the total BIC score, then a
backward deletion phase does the same. Domain knowledge enters three ways:
required edges are installed before the forward phase and are never deletion
candidates, forbidden edges are never introduced in their stated direction,
and after every operator the pattern is re-oriented so knowledge-implied
directions propagate through Meek's rules.

All tie-breaks are fixed (lexicographic by edge, then by subset), so the
search is a deterministic function of its inputs.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

import numpy as np

from .dataset import BinaryDataset
from .errors import CapacityError, DataError, KnowledgeError, OrientationError
from .graph import Dag

MAX_SCORE_PARENTS = 15
_IMPROVEMENT_TOL = 1e-10


class Knowledge:
    """Qualitative structure constraints: edges that must or must not appear.

    Pairs are (parent, child) node names. Required and forbidden sets must be
    disjoint, no pair may be required in both directions, and the required
    edges alone must be acyclic.
    """

    __slots__ = ("required", "forbidden")

    def __init__(
        self,
        required: Iterable[tuple[str, str]] = (),
        forbidden: Iterable[tuple[str, str]] = (),
    ):
        req = frozenset((str(a), str(b)) for a, b in required)
        forb = frozenset((str(a), str(b)) for a, b in forbidden)
        for a, b in req | forb:
            if a == b:
                raise KnowledgeError(f"self-edge {a!r} -> {b!r} is not allowed")
        overlap = req & forb
        if overlap:
            raise KnowledgeError(
                f"edges both required and forbidden: {sorted(overlap)}"
            )
        for a, b in req:
            if (b, a) in req:
                raise KnowledgeError(
                    f"both directions required between {a!r} and {b!r}"
                )
        self._check_required_acyclic(req)
        object.__setattr__(self, "required", req)
        object.__setattr__(self, "forbidden", forb)

    @staticmethod
    def _check_required_acyclic(req: frozenset[tuple[str, str]]) -> None:
        nodes = sorted({x for edge in req for x in edge})
        indeg = {v: 0 for v in nodes}
        children: dict[str, list[str]] = {v: [] for v in nodes}
        for a, b in req:
            children[a].append(b)
            indeg[b] += 1
        ready = [v for v in nodes if indeg[v] == 0]
        removed = 0
        while ready:
            v = ready.pop()
            removed += 1
            for c in children[v]:
                indeg[c] -= 1
                if indeg[c] == 0:
                    ready.append(c)
        if removed != len(nodes):
            raise KnowledgeError("required edges form a cycle")

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Knowledge is immutable")

    @property
    def is_empty(self) -> bool:
        return not self.required and not self.forbidden

    def node_names(self) -> frozenset[str]:
        return frozenset(x for edge in self.required | self.forbidden for x in edge)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Knowledge):
            return NotImplemented
        return self.required == other.required and self.forbidden == other.forbidden

    def __hash__(self) -> int:
        return hash((self.required, self.forbidden))

    def __repr__(self) -> str:
        return (
            f"Knowledge(required={sorted(self.required)}, "
            f"forbidden={sorted(self.forbidden)})"
        )


def parse_knowledge(text: str) -> Knowledge:
    """Parse lines of `require a -> b` and `forbid a -> b`; `#` starts a comment."""
    required = []
    forbidden = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split(None, 1)
        if len(fields) != 2 or "->" not in fields[1]:
            raise KnowledgeError(
                f"line {lineno}: expected 'require a -> b' or 'forbid a -> b', "
                f"got {raw.strip()!r}"
            )
        verb, rest = fields
        left, right = rest.split("->", 1)
        a, b = left.strip(), right.strip()
        if not a or not b:
            raise KnowledgeError(f"line {lineno}: missing node name")
        if verb == "require":
            required.append((a, b))
        elif verb == "forbid":
            forbidden.append((a, b))
        else:
            raise KnowledgeError(
                f"line {lineno}: unknown directive {verb!r}, "
                "expected 'require' or 'forbid'"
            )
    return Knowledge(required, forbidden)


def format_knowledge(k: Knowledge) -> str:
    """Render knowledge in the line format accepted by :func:`parse_knowledge`."""
    lines = [f"require {a} -> {b}" for a, b in sorted(k.required)]
    lines += [f"forbid {a} -> {b}" for a, b in sorted(k.forbidden)]
    return "\n".join(lines) + "\n" if lines else ""


class Cpdag:
    """Partially directed pattern: directed plus undirected edges.

    Undirected pairs are stored normalized as (low index, high index). The
    directed part must be acyclic and no adjacency may be both directed and
    undirected.
    """

    __slots__ = ("labels", "directed", "undirected")

    def __init__(
        self,
        labels: Sequence[str],
        directed: Iterable[tuple[int, int]] = (),
        undirected: Iterable[tuple[int, int]] = (),
    ):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate node labels")
        n = len(labels)
        dir_set = frozenset((int(a), int(b)) for a, b in directed)
        und_set = frozenset(
            (min(int(a), int(b)), max(int(a), int(b))) for a, b in undirected
        )
        for a, b in dir_set | und_set:
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) references an unknown node")
            if a == b:
                raise ValueError(f"self-loop at node {a}")
        for a, b in dir_set:
            if (b, a) in dir_set:
                raise ValueError(f"edge between {a} and {b} directed both ways")
            if (min(a, b), max(a, b)) in und_set:
                raise ValueError(
                    f"edge between {a} and {b} both directed and undirected"
                )
        Dag(labels, dir_set)  # rejects directed cycles
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "directed", dir_set)
        object.__setattr__(self, "undirected", und_set)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Cpdag is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def skeleton(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            {(min(a, b), max(a, b)) for a, b in self.directed} | self.undirected
        )

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.skeleton()

    def und_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(
            a if b == v else b for a, b in self.undirected if v in (a, b)
        )

    def parents(self, v: int) -> frozenset[int]:
        return frozenset(a for a, b in self.directed if b == v)

    def v_structures(self) -> frozenset[tuple[int, int, int]]:
        """Unshielded colliders (x, z, y) with x < y, x -> z <- y."""
        skel = self.skeleton()
        out = set()
        for z in range(self.n):
            for x, y in itertools.combinations(sorted(self.parents(z)), 2):
                if (x, y) not in skel:
                    out.add((x, z, y))
        return frozenset(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cpdag):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.directed == other.directed
            and self.undirected == other.undirected
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.directed, self.undirected))

    def __repr__(self) -> str:
        parts = [f"{self.labels[a]}->{self.labels[b]}" for a, b in sorted(self.directed)]
        parts += [f"{self.labels[a]}--{self.labels[b]}" for a, b in sorted(self.undirected)]
        return f"Cpdag({', '.join(parts) or 'no edges'})"


class _Scorer:
    """Cached local BIC scores over a binary dataset."""

    def __init__(self, data: BinaryDataset, penalty: float):
        if data.n_rows < 1:
            raise DataError("scoring needs at least one row")
        if penalty <= 0:
            raise ValueError("penalty must be positive")
        self.cols = data.values.astype(np.int64)
        self.m = data.n_rows
        self.log_m = math.log(self.m)
        self.penalty = float(penalty)
        self.cache: dict[tuple[int, frozenset[int]], float] = {}

    def local(self, node: int, parents: frozenset[int]) -> float:
        key = (node, parents)
        got = self.cache.get(key)
        if got is not None:
            return got
        k = len(parents)
        if k > MAX_SCORE_PARENTS:
            raise CapacityError(
                f"scoring with {k} parents exceeds the "
                f"{MAX_SCORE_PARENTS}-parent limit"
            )
        idx = np.zeros(self.m, dtype=np.int64)
        for pos, p in enumerate(sorted(parents)):
            idx |= self.cols[:, p] << (k - pos)
        idx |= self.cols[:, node]
        cnt = np.bincount(idx, minlength=1 << (k + 1))
        n0 = cnt[0::2].astype(np.float64)
        n1 = cnt[1::2].astype(np.float64)
        ns = n0 + n1
        # ML log-likelihood; empty strata and zero counts contribute 0
        ll = 0.0
        mask = n1 > 0
        ll += float((n1[mask] * np.log(n1[mask] / ns[mask])).sum())
        mask = n0 > 0
        ll += float((n0[mask] * np.log(n0[mask] / ns[mask])).sum())
        score = ll - (self.penalty / 2.0) * (1 << k) * self.log_m
        self.cache[key] = score
        return score


def bic_score(
    data: BinaryDataset,
    node: str,
    parents: Sequence[str] = (),
    penalty: float = 1.0,
) -> float:
    """Local BIC of one node given a parent set.

    Maximum-likelihood log-likelihood of the node's column stratified by the
    parent columns, minus (penalty/2) * 2**|parents| * ln(rows). Parent order
    does not matter. Raises CapacityError beyond 15 parents.
    """
    j = data.column_index(node)
    ps = frozenset(data.column_index(p) for p in parents)
    if j in ps:
        raise ValueError(f"node {node!r} cannot be its own parent")
    if len(ps) != len(tuple(parents)):
        raise ValueError("duplicate parents")
    return _Scorer(data, penalty).local(j, ps)


def total_bic(data: BinaryDataset, graph: Dag, penalty: float = 1.0) -> float:
    """Sum of local BIC scores over all nodes of a DAG (decomposable score)."""
    if set(graph.labels) != set(data.columns):
        raise DataError("graph nodes must match dataset columns")
    scorer = _Scorer(data, penalty)
    total = 0.0
    for v in range(graph.n):
        j = data.column_index(graph.labels[v])
        ps = frozenset(
            data.column_index(graph.labels[p]) for p in graph.parents(v)
        )
        total += scorer.local(j, ps)
    return total


# ---------------------------------------------------------------------------
# Pattern machinery: orientation, consistent extension, class computation.
# Internal helpers operate on mutable sets: directed {(a, b)} and undirected
# {(low, high)}.
# ---------------------------------------------------------------------------


def _und_pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def _orient(directed: set, undirected: set, a: int, b: int) -> None:
    pair = _und_pair(a, b)
    if pair not in undirected:
        raise OrientationError(f"no undirected edge between {a} and {b} to orient")
    if (b, a) in directed:
        raise OrientationError(f"conflicting orientations for edge {a}-{b}")
    undirected.discard(pair)
    directed.add((a, b))


def _adjacency(n: int, directed: set, undirected: set) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for a, b in directed:
        adj[a].add(b)
        adj[b].add(a)
    for a, b in undirected:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _one_meek_step(n: int, directed: set, undirected: set) -> bool:
    """Apply the first firing orientation rule; True if anything changed.

    The rules direct an undirected edge whenever the opposite orientation
    would force a directed cycle or a new unshielded collider in every
    extension of the pattern.
    """
    adj = _adjacency(n, directed, undirected)
    und_nb: list[set[int]] = [set() for _ in range(n)]
    for a, b in undirected:
        und_nb[a].add(b)
        und_nb[b].add(a)
    children: list[set[int]] = [set() for _ in range(n)]
    parents: list[set[int]] = [set() for _ in range(n)]
    for a, b in directed:
        children[a].add(b)
        parents[b].add(a)

    # Rule 1: a -> b, b - c, a and c nonadjacent  =>  b -> c
    for a, b in sorted(directed):
        for c in sorted(und_nb[b]):
            if c != a and c not in adj[a]:
                _orient(directed, undirected, b, c)
                return True
    for u, v in sorted(undirected):
        for a, b in ((u, v), (v, u)):
            # Rule 2: a -> w -> b, a - b  =>  a -> b
            if any(w in parents[b] for w in sorted(children[a])):
                _orient(directed, undirected, a, b)
                return True
            # Rule 3: a - c, a - d, c -> b, d -> b, c and d nonadjacent  =>  a -> b
            shared = sorted(und_nb[a] & parents[b])
            for c, d in itertools.combinations(shared, 2):
                if d not in adj[c]:
                    _orient(directed, undirected, a, b)
                    return True
            # Rule 4: a - w, w -> x, x -> b, w and b nonadjacent  =>  a -> b
            # (otherwise b -> a would either close a cycle through w, x or
            # build a new collider w -> a <- b)
            for w in sorted(und_nb[a]):
                if w != b and b not in adj[w] and children[w] & parents[b]:
                    _orient(directed, undirected, a, b)
                    return True
    return False


def _meek_closure(n: int, directed: set, undirected: set) -> None:
    while _one_meek_step(n, directed, undirected):
        pass


def _consistent_extension(n: int, directed: set, undirected: set) -> set:
    """Orient all undirected edges into a DAG with the pattern's colliders.

    Repeatedly finds a node with no outgoing directed edges whose undirected
    neighbors are adjacent to all of its other neighbors, points that node's
    undirected edges at it, and removes it. Raises OrientationError when no
    such node exists, meaning the pattern admits no consistent extension.
    """
    dir_left = set(directed)
    und_left = set(undirected)
    result = set(directed)
    alive = set(range(n))
    while alive:
        chosen = -1
        nb_cache: set[int] = set()
        for x in sorted(alive):
            if any(a == x for a, b in dir_left):
                continue
            nb_und = {b if a == x else a for a, b in und_left if x in (a, b)}
            nb_all = nb_und | {a for a, b in dir_left if b == x}
            ok = True
            for u in nb_und:
                others = nb_all - {u}
                for v in others:
                    if (
                        (u, v) not in dir_left
                        and (v, u) not in dir_left
                        and _und_pair(u, v) not in und_left
                    ):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                chosen = x
                nb_cache = nb_und
                break
        if chosen < 0:
            raise OrientationError("pattern admits no consistent extension")
        for u in sorted(nb_cache):
            result.add((u, chosen))
            und_left.discard(_und_pair(u, chosen))
        dir_left = {(a, b) for a, b in dir_left if chosen not in (a, b)}
        und_left = {e for e in und_left if chosen not in e}
        alive.discard(chosen)
    return result


def _dag_to_pattern(n: int, dag_edges: set) -> tuple[set, set]:
    """Equivalence-class pattern of a DAG: v-structures stay directed, then
    the orientation rules propagate; everything else is undirected."""
    adj: list[set[int]] = [set() for _ in range(n)]
    parents: list[set[int]] = [set() for _ in range(n)]
    for a, b in dag_edges:
        adj[a].add(b)
        adj[b].add(a)
        parents[b].add(a)
    directed: set = set()
    for z in range(n):
        for x, y in itertools.combinations(sorted(parents[z]), 2):
            if y not in adj[x]:
                directed.add((x, z))
                directed.add((y, z))
    undirected = {_und_pair(a, b) for a, b in dag_edges if (a, b) not in directed}
    _meek_closure(n, directed, undirected)
    return directed, undirected


def dag_to_cpdag(graph: Dag) -> Cpdag:
    """The Markov equivalence class pattern of a DAG."""
    directed, undirected = _dag_to_pattern(graph.n, set(graph.edges))
    return Cpdag(graph.labels, directed, undirected)


def _apply_knowledge_orientations(
    n: int, directed: set, undirected: set, required: set, forbidden: set
) -> None:
    for a, b in sorted(required):
        if (b, a) in directed:
            raise OrientationError(
                f"required edge {a}->{b} is directed the other way in the pattern"
            )
        if (a, b) in directed:
            continue
        if _und_pair(a, b) in undirected:
            _orient(directed, undirected, a, b)
        else:
            raise OrientationError(
                f"required edge {a}->{b} has no adjacency in the pattern"
            )
    for a, b in sorted(undirected):
        lo_hi = (a, b) in forbidden
        hi_lo = (b, a) in forbidden
        if lo_hi and not hi_lo:
            _orient(directed, undirected, b, a)
        elif hi_lo and not lo_hi:
            _orient(directed, undirected, a, b)


def _rebuild(
    n: int, directed: set, undirected: set, required: set, forbidden: set
) -> tuple[set, set]:
    """Canonical pattern after an operator: re-derive the equivalence class,
    re-apply knowledge orientations, and close under the orientation rules."""
    extension = _consistent_extension(n, directed, undirected)
    d2, u2 = _dag_to_pattern(n, extension)
    _apply_knowledge_orientations(n, d2, u2, required, forbidden)
    _meek_closure(n, d2, u2)
    return d2, u2


def _subsets(items: Sequence[int]):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def _is_clique(nodes: Iterable[int], adj: list[set[int]]) -> bool:
    nodes = list(nodes)
    return all(b in adj[a] for a, b in itertools.combinations(nodes, 2))


def _blocks_semi_directed(
    n: int, y: int, x: int, blocked: set, directed: set, undirected: set
) -> bool:
    """True iff every path y -> .. -> x along directed (forward) or
    undirected edges passes through a blocked node."""
    children: list[set[int]] = [set() for _ in range(n)]
    for a, b in directed:
        children[a].add(b)
    for a, b in undirected:
        children[a].add(b)
        children[b].add(a)
    seen = {y}
    stack = [y]
    while stack:
        v = stack.pop()
        for w in children[v]:
            if w == x:
                return False
            if w not in seen and w not in blocked:
                seen.add(w)
                stack.append(w)
    return True


def ges(
    data: BinaryDataset,
    knowledge: Knowledge | None = None,
    penalty: float = 1.0,
) -> Cpdag:
    """Greedy equivalence search over the dataset's columns.

    Returns the pattern found by a forward insertion phase followed by a
    backward deletion phase, both climbing total BIC. Knowledge constrains
    the search as described in the module docstring. Deterministic: the
    best-scoring move wins, with ties broken by lexicographic edge then
    subset order.
    """
    if knowledge is None:
        knowledge = Knowledge()
    labels = data.columns
    index = {lab: i for i, lab in enumerate(labels)}
    unknown = knowledge.node_names() - set(labels)
    if unknown:
        raise KnowledgeError(
            f"knowledge references unknown columns: {sorted(unknown)}"
        )
    n = len(labels)
    required = {(index[a], index[b]) for a, b in knowledge.required}
    forbidden = {(index[a], index[b]) for a, b in knowledge.forbidden}
    scorer = _Scorer(data, penalty)

    directed: set = set(required)
    undirected: set = set()
    if required:
        directed, undirected = _rebuild(n, directed, undirected, required, forbidden)

    def pattern_views():
        adj = _adjacency(n, directed, undirected)
        und_nb: list[set[int]] = [set() for _ in range(n)]
        for a, b in undirected:
            und_nb[a].add(b)
            und_nb[b].add(a)
        pa: list[frozenset[int]] = [frozenset() for _ in range(n)]
        for a, b in directed:
            pa[b] = pa[b] | {a}
        return adj, und_nb, pa

    # Forward phase: best valid insertion until no strict improvement.
    # Knowledge orientations make the working pattern a general PDAG, so a
    # move that scores well can still fail to rebuild; moves are tried in
    # score order and unextendable ones are skipped.
    while True:
        adj, und_nb, pa = pattern_views()
        moves = []
        for x in range(n):
            for y in range(n):
                if x == y or y in adj[x] or (x, y) in forbidden:
                    continue
                na = und_nb[y] & adj[x]
                t_pool = sorted(und_nb[y] - adj[x])
                for t in _subsets(t_pool):
                    if any((u, y) in forbidden for u in t):
                        continue
                    group = na | set(t)
                    if not _is_clique(group, adj):
                        continue
                    if not _blocks_semi_directed(
                        n, y, x, group, directed, undirected
                    ):
                        continue
                    base = pa[y] | group
                    if len(base) + 1 > MAX_SCORE_PARENTS:
                        continue
                    delta = scorer.local(y, frozenset(base | {x})) - scorer.local(
                        y, frozenset(base)
                    )
                    if delta > _IMPROVEMENT_TOL:
                        moves.append((delta, len(moves), x, y, t))
        moves.sort(key=lambda mv: (-mv[0], mv[1]))
        applied = False
        for _, _, x, y, t in moves:
            d_try = set(directed)
            u_try = set(undirected)
            d_try.add((x, y))
            for u in t:
                _orient(d_try, u_try, u, y)
            try:
                directed, undirected = _rebuild(n, d_try, u_try, required, forbidden)
            except OrientationError:
                continue
            applied = True
            break
        if not applied:
            break

    # Backward phase: best valid deletion until no strict improvement.
    while True:
        adj, und_nb, pa = pattern_views()
        moves = []
        for x in range(n):
            for y in range(n):
                if x == y or (x, y) in required or (y, x) in required:
                    continue
                is_dir = (x, y) in directed
                is_und = _und_pair(x, y) in undirected
                if not (is_dir or is_und):
                    continue
                na = sorted(und_nb[y] & adj[x])
                for h in _subsets(na):
                    if not _is_clique(set(na) - set(h), adj):
                        continue
                    skip = False
                    for u in h:
                        if (y, u) in forbidden:
                            skip = True
                            break
                        if _und_pair(x, u) in undirected and (x, u) in forbidden:
                            skip = True
                            break
                    if skip:
                        continue
                    base = (pa[y] - {x}) | (set(na) - set(h))
                    if len(base) + 1 > MAX_SCORE_PARENTS:
                        continue
                    delta = scorer.local(y, frozenset(base)) - scorer.local(
                        y, frozenset(base | {x})
                    )
                    if delta > _IMPROVEMENT_TOL:
                        moves.append((delta, len(moves), x, y, h, is_dir))
        moves.sort(key=lambda mv: (-mv[0], mv[1]))
        applied = False
        for _, _, x, y, h, is_dir in moves:
            d_try = set(directed)
            u_try = set(undirected)
            if is_dir:
                d_try.discard((x, y))
            else:
                u_try.discard(_und_pair(x, y))
            for u in h:
                if _und_pair(y, u) in u_try:
                    _orient(d_try, u_try, y, u)
                if _und_pair(x, u) in u_try:
                    _orient(d_try, u_try, x, u)
            try:
                directed, undirected = _rebuild(n, d_try, u_try, required, forbidden)
            except OrientationError:
                continue
            applied = True
            break
        if not applied:
            break

    return Cpdag(labels, directed, undirected)


def orient_to_dag(pattern: Cpdag, knowledge: Knowledge | None = None) -> Dag:
    """Commit a pattern to a single DAG.

    Required edges are oriented first, then the orientation rules are closed;
    remaining undirected edges are oriented lexicographically smallest first,
    low index to high index, re-closing after each. The result is a consistent
    extension: acyclic, same skeleton, same unshielded colliders. Raises
    OrientationError when no consistent extension exists.
    """
    if knowledge is None:
        knowledge = Knowledge()
    labels = pattern.labels
    index = {lab: i for i, lab in enumerate(labels)}
    unknown = {x for a, b in knowledge.required for x in (a, b)} - set(labels)
    if unknown:
        raise KnowledgeError(
            f"knowledge references unknown nodes: {sorted(unknown)}"
        )
    n = pattern.n
    directed = set(pattern.directed)
    undirected = set(pattern.undirected)
    before_colliders = pattern.v_structures()

    for a, b in sorted((index[a], index[b]) for a, b in knowledge.required):
        if (b, a) in directed:
            raise OrientationError(
                f"required edge {labels[a]}->{labels[b]} is directed the "
                "other way in the pattern"
            )
        if (a, b) in directed:
            continue
        if _und_pair(a, b) in undirected:
            _orient(directed, undirected, a, b)
        else:
            raise OrientationError(
                f"required edge {labels[a]}->{labels[b]} has no adjacency "
                "in the pattern"
            )
    _meek_closure(n, directed, undirected)
    while undirected:
        a, b = min(undirected)
        _orient(directed, undirected, a, b)
        _meek_closure(n, directed, undirected)
    try:
        result = Dag(labels, directed)
    except ValueError as exc:
        raise OrientationError(f"orientation produced a cycle: {exc}") from exc
    if dagv_structures(result) != before_colliders:
        raise OrientationError(
            "no consistent extension: orientation changed the pattern's colliders"
        )
    return result


def dagv_structures(graph: Dag) -> frozenset[tuple[int, int, int]]:
    """Unshielded colliders (x, z, y) of a DAG, with x < y."""
    skel = {(min(a, b), max(a, b)) for a, b in graph.edges}
    out = set()
    for z in range(graph.n):
        for x, y in itertools.combinations(sorted(graph.parents(z)), 2):
            if (x, y) not in skel:
                out.add((x, z, y))
    return frozenset(out)


def pick_hint_edges(
    graph: Dag, p_hint: float, rng: np.random.Generator
) -> Knowledge:
    """Reveal a share of the true edges as required-edge knowledge.

    floor(p_hint * |edges|) distinct edges are drawn uniformly without
    replacement and returned as required edges; nothing is forbidden.
    """
    if not 0.0 <= p_hint <= 1.0:
        raise ValueError("p_hint must lie in [0, 1]")
    edges = sorted(graph.edges)
    k = int(math.floor(p_hint * len(edges)))
    if k == 0:
        return Knowledge()
    chosen = rng.choice(len(edges), size=k, replace=False)
    required = [
        (graph.labels[edges[i][0]], graph.labels[edges[i][1]])
        for i in sorted(int(c) for c in chosen)
    ]
    return Knowledge(required=required)
