"""Causal Bayesian networks over binary variables.

A network pairs a DAG with one conditional probability table per node. All
variables take values in {0, 1}. The joint distribution is available exactly
as a dense table up to 25 nodes, which makes interventional quantities such
as average treatment effects computable without sampling error.

Bit conventions:
  * CPD tables are indexed by the parent configuration with the first parent
    in the CPD's parent list as the most significant bit. Entry ``table[i]``
    is p(node = 1 | parents in configuration i).
  * Joint-table states are indexed with node ``i`` occupying bit ``i``, so
    state ``s`` assigns node ``i`` the value ``(s >> i) & 1``.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from .dataset import BinaryDataset
from .errors import CapacityError, DataError
from .graph import Dag

MAX_EXACT_NODES = 25


class Cpd:
    """Conditional probability table for one binary node.

    ``table`` has length 2**len(parents); entry i is p(node = 1 | parents in
    configuration i), with the first parent as the most significant bit.
    """

    __slots__ = ("node", "parents", "table")

    def __init__(
        self, node: str, parents: Sequence[str], table: Sequence[float]
    ):
        parents = tuple(str(p) for p in parents)
        if len(set(parents)) != len(parents):
            raise ValueError(f"cpd for {node!r} repeats a parent")
        if node in parents:
            raise ValueError(f"cpd for {node!r} lists itself as a parent")
        table = tuple(float(x) for x in table)
        if len(table) != 1 << len(parents):
            raise ValueError(
                f"cpd for {node!r} has {len(table)} entries, expected "
                f"{1 << len(parents)} for {len(parents)} parents"
            )
        for x in table:
            if not (0.0 <= x <= 1.0) or not math.isfinite(x):
                raise ValueError(f"cpd for {node!r} has probability {x} outside [0, 1]")
        object.__setattr__(self, "node", str(node))
        object.__setattr__(self, "parents", parents)
        object.__setattr__(self, "table", table)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Cpd is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cpd):
            return NotImplemented
        return (
            self.node == other.node
            and self.parents == other.parents
            and self.table == other.table
        )

    def __repr__(self) -> str:
        return f"Cpd({self.node!r}, parents={list(self.parents)})"


class Cbn:
    """A DAG plus one CPD per node, checked for mutual consistency."""

    __slots__ = ("graph", "cpds")

    def __init__(self, graph: Dag, cpds: Iterable[Cpd]):
        cpds = tuple(cpds)
        by_node = {}
        for cpd in cpds:
            if cpd.node in by_node:
                raise ValueError(f"two cpds for node {cpd.node!r}")
            by_node[cpd.node] = cpd
        missing = set(graph.labels) - set(by_node)
        if missing:
            raise ValueError(f"missing cpds for {sorted(missing)}")
        extra = set(by_node) - set(graph.labels)
        if extra:
            raise ValueError(f"cpds for unknown nodes {sorted(extra)}")
        for v in range(graph.n):
            cpd = by_node[graph.labels[v]]
            want = {graph.labels[p] for p in graph.parents(v)}
            if set(cpd.parents) != want:
                raise ValueError(
                    f"cpd for {cpd.node!r} conditions on {sorted(cpd.parents)} "
                    f"but the graph gives parents {sorted(want)}"
                )
        ordered = tuple(by_node[lab] for lab in graph.labels)
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "cpds", ordered)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Cbn is immutable")

    def cpd(self, node: str) -> Cpd:
        return self.cpds[self.graph.index(node)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cbn):
            return NotImplemented
        return self.graph == other.graph and self.cpds == other.cpds

    def __repr__(self) -> str:
        return f"Cbn({self.graph!r})"


class JointTable:
    """Dense joint distribution over n binary variables.

    ``probs[s]`` is the probability of the state where node i takes value
    ``(s >> i) & 1``. Entries are nonnegative and sum to 1 within tolerance.
    """

    __slots__ = ("labels", "probs")

    def __init__(self, labels: Sequence[str], probs: np.ndarray):
        labels = tuple(str(x) for x in labels)
        probs = np.asarray(probs, dtype=np.float64)
        if probs.shape != (1 << len(labels),):
            raise ValueError(
                f"need {1 << len(labels)} probabilities for {len(labels)} nodes"
            )
        if probs.size and (probs.min() < -1e-12 or not np.isfinite(probs).all()):
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(float(probs.sum()) - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {probs.sum()}, expected 1")
        probs = np.clip(probs, 0.0, None)
        probs.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probs", probs)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("JointTable is immutable")

    @property
    def n(self) -> int:
        return len(self.labels)

    def marginal(self, node: str) -> float:
        """p(node = 1)."""
        i = self.labels.index(node) if node in self.labels else -1
        if i < 0:
            raise ValueError(f"unknown node {node!r}")
        states = np.arange(1 << self.n)
        return float(self.probs[(states >> i) & 1 == 1].sum())

    def probability(self, assignment: dict[str, int]) -> float:
        """Probability that every node in ``assignment`` takes its given value."""
        states = np.arange(1 << self.n)
        keep = np.ones(states.shape, dtype=bool)
        for node, value in assignment.items():
            if node not in self.labels:
                raise ValueError(f"unknown node {node!r}")
            if value not in (0, 1):
                raise ValueError(f"value for {node!r} must be 0 or 1")
            i = self.labels.index(node)
            keep &= ((states >> i) & 1) == value
        return float(self.probs[keep].sum())


def _parent_state_index(cpd: Cpd, graph: Dag, states: np.ndarray) -> np.ndarray:
    """CPD row index for each joint state, honoring the CPD's parent order."""
    k = len(cpd.parents)
    idx = np.zeros(states.shape, dtype=np.int64)
    for pos, pname in enumerate(cpd.parents):
        p = graph.index(pname)
        idx |= ((states >> p) & 1) << (k - 1 - pos)
    return idx


def joint_distribution(net: Cbn) -> JointTable:
    """Exact joint table by multiplying the factorized CPDs over all states.

    Raises CapacityError above 25 nodes; the table would exceed 2**25 cells.
    """
    n = net.graph.n
    if n > MAX_EXACT_NODES:
        raise CapacityError(
            f"exact joint over {n} nodes exceeds the {MAX_EXACT_NODES}-node limit"
        )
    states = np.arange(1 << n, dtype=np.int64)
    probs = np.ones(1 << n, dtype=np.float64)
    for v in range(n):
        cpd = net.cpds[v]
        p_one = np.asarray(cpd.table, dtype=np.float64)[
            _parent_state_index(cpd, net.graph, states)
        ]
        value = (states >> v) & 1
        probs *= np.where(value == 1, p_one, 1.0 - p_one)
    return JointTable(net.graph.labels, probs)


def intervene(net: Cbn, treatment: str, value: int) -> JointTable:
    """Joint distribution under do(treatment = value).

    Implements the truncated factorization: the treatment's own CPD is
    dropped and its value clamped; every other CPD is left untouched.
    """
    if value not in (0, 1):
        raise ValueError("intervention value must be 0 or 1")
    t = net.graph.index(treatment)
    n = net.graph.n
    if n > MAX_EXACT_NODES:
        raise CapacityError(
            f"exact joint over {n} nodes exceeds the {MAX_EXACT_NODES}-node limit"
        )
    states = np.arange(1 << n, dtype=np.int64)
    probs = np.where(((states >> t) & 1) == value, 1.0, 0.0)
    for v in range(n):
        if v == t:
            continue
        cpd = net.cpds[v]
        p_one = np.asarray(cpd.table, dtype=np.float64)[
            _parent_state_index(cpd, net.graph, states)
        ]
        val = (states >> v) & 1
        probs *= np.where(val == 1, p_one, 1.0 - p_one)
    return JointTable(net.graph.labels, probs)


def mutilated(net: Cbn, treatment: str, value: int) -> Cbn:
    """The post-intervention network: treatment loses its parents and is
    clamped to ``value`` with probability 1."""
    if value not in (0, 1):
        raise ValueError("intervention value must be 0 or 1")
    t = net.graph.index(treatment)
    edges = [(a, b) for a, b in net.graph.edges if b != t]
    new_graph = net.graph.with_edges(edges)
    new_cpds = [
        Cpd(treatment, (), (float(value),)) if v == t else net.cpds[v]
        for v in range(net.graph.n)
    ]
    return Cbn(new_graph, new_cpds)


def true_ate(net: Cbn, treatment: str, outcome: str) -> float:
    """Average treatment effect p(outcome=1 | do(t=1)) - p(outcome=1 | do(t=0)).

    Computed exactly from the truncated factorization.
    """
    if treatment == outcome:
        raise ValueError("treatment and outcome must differ")
    return intervene(net, treatment, 1).marginal(outcome) - intervene(
        net, treatment, 0
    ).marginal(outcome)


def random_cpds(graph: Dag, rng: np.random.Generator) -> Cbn:
    """Network with every CPD entry drawn independently from Uniform[0, 1).

    Nodes are visited in label order; each node's parents appear in the
    graph's parent order (ascending index). One uniform draw per table entry.
    """
    cpds = []
    for v in range(graph.n):
        parents = [graph.labels[p] for p in graph.parents(v)]
        table = rng.random(1 << len(parents))
        cpds.append(Cpd(graph.labels[v], parents, table))
    return Cbn(graph, cpds)


def sample(net: Cbn, m: int, rng: np.random.Generator) -> BinaryDataset:
    """Draw m joint observations by ancestral sampling.

    Nodes are visited in the graph's topological order (ties broken by node
    index); each node consumes exactly one block of m uniforms. Columns of
    the result follow the graph's label order.
    """
    if m < 1:
        raise DataError("sample size must be >= 1")
    n = net.graph.n
    values = np.zeros((m, n), dtype=np.uint8)
    for v in net.graph.topological_order():
        cpd = net.cpds[v]
        k = len(cpd.parents)
        idx = np.zeros(m, dtype=np.int64)
        for pos, pname in enumerate(cpd.parents):
            p = net.graph.index(pname)
            idx |= values[:, p].astype(np.int64) << (k - 1 - pos)
        p_one = np.asarray(cpd.table, dtype=np.float64)[idx]
        values[:, v] = (rng.random(m) < p_one).astype(np.uint8)
    return BinaryDataset(net.graph.labels, values)


def to_json(net: Cbn) -> str:
    """Serialize a network to JSON with round-trip-exact floats."""
    doc = {
        "nodes": list(net.graph.labels),
        "edges": [
            [net.graph.labels[a], net.graph.labels[b]]
            for a, b in sorted(net.graph.edges)
        ],
        "cpds": [
            {
                "node": cpd.node,
                "parents": list(cpd.parents),
                "table": list(cpd.table),
            }
            for cpd in net.cpds
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def from_json(text: str) -> Cbn:
    """Parse the JSON document written by :func:`to_json`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid network JSON: {exc}") from exc
    for key in ("nodes", "edges", "cpds"):
        if key not in doc:
            raise ValueError(f"network JSON is missing the {key!r} field")
    labels = tuple(str(x) for x in doc["nodes"])
    index = {lab: i for i, lab in enumerate(labels)}
    edges = []
    for pair in doc["edges"]:
        if len(pair) != 2 or pair[0] not in index or pair[1] not in index:
            raise ValueError(f"bad edge entry {pair!r}")
        edges.append((index[pair[0]], index[pair[1]]))
    graph = Dag(labels, edges)
    cpds = []
    for entry in doc["cpds"]:
        for key in ("node", "parents", "table"):
            if key not in entry:
                raise ValueError(f"cpd entry is missing the {key!r} field")
        cpds.append(Cpd(entry["node"], entry["parents"], entry["table"]))
    return Cbn(graph, cpds)
