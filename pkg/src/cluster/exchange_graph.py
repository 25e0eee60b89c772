"""
Exchange-graph search and seeded random mutation walks.
"""

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from config.workbench_config import DEFAULT_MAX_SEEDS, DEFAULT_MAX_DEPTH, DEFAULT_PRNG_SEED
from src.data_structures import Quiver
from src.cluster.laurent import LaurentDivisionError
from src.cluster.seed import Seed, POLARISED, COEFFICIENT_FREE, initial_seed, mutate
from src.cluster.grading import grading_matrix, check_invariants

logger = logging.getLogger(__name__)


@dataclass
class ExchangeGraph:
    """
    Seeds up to cluster equality, joined by single mutations.

    Attributes:
        graph: Undirected graph on node ids 0..; edge attribute "k" is the mutation index
        seeds: Node id -> a representative seed
        exhaustive: Whether the search finished without hitting a limit
    """
    graph: nx.Graph
    seeds: Dict[int, Seed]
    exhaustive: bool

    @property
    def size(self) -> int:
        return self.graph.number_of_nodes()

    def to_dot(self, name: str = "exchange") -> str:
        lines = [f"graph {name} {{"]
        for node in sorted(self.graph.nodes):
            cluster = ", ".join(v.render() for v in self.seeds[node].variables)
            lines.append(f'  {node} [label="{cluster}"];')
        for u, v, data in sorted(self.graph.edges(data=True)):
            lines.append(f'  {min(u, v)} -- {max(u, v)} [label="{data["k"]}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_dict(self) -> Dict:
        return {
            "seeds": self.size,
            "edges": self.graph.number_of_edges(),
            "exhaustive": self.exhaustive,
            "clusters": {str(node): [v.render() for v in self.seeds[node].variables]
                         for node in sorted(self.graph.nodes)},
            "adjacency": {str(node): sorted(self.graph.neighbors(node))
                          for node in sorted(self.graph.nodes)},
        }


def exchange_graph(Q: Quiver, max_seeds: int = DEFAULT_MAX_SEEDS, max_depth: int = DEFAULT_MAX_DEPTH,
                   coefficients: str = POLARISED) -> ExchangeGraph:
    """
    Breadth-first search over seeds from the initial seed, deduplicated by cluster.

    The search stops when max_seeds classes are found or max_depth is reached;
    exhaustive is False if either limit cut it short.
    """
    if max_seeds <= 0 or max_depth <= 0:
        raise ValueError("Exchange-graph limits must be positive")
    start = initial_seed(Q, coefficients)
    graph = nx.Graph()
    seeds: Dict[int, Seed] = {0: start}
    ids: Dict[Tuple, int] = {start.cluster_key(): 0}
    graph.add_node(0)
    queue = deque([(0, 0)])
    exhaustive = True

    while queue:
        node, depth = queue.popleft()
        for k in range(1, start.n + 1):
            neighbour = mutate(seeds[node], k)
            key = neighbour.cluster_key()
            if key not in ids:
                if len(ids) >= max_seeds or depth >= max_depth:
                    exhaustive = False
                    continue
                ids[key] = len(ids)
                seeds[ids[key]] = neighbour
                graph.add_node(ids[key])
                queue.append((ids[key], depth + 1))
            graph.add_edge(node, ids[key], k=k)
    logger.info("exchange graph: %d seeds, %d edges, exhaustive=%s",
                graph.number_of_nodes(), graph.number_of_edges(), exhaustive)
    if not exhaustive:
        logger.warning("exchange graph search stopped at max_seeds=%d, max_depth=%d", max_seeds, max_depth)
    return ExchangeGraph(graph, seeds, exhaustive)


def matches_coefficient_free(Q: Quiver, max_seeds: int = DEFAULT_MAX_SEEDS,
                             max_depth: int = DEFAULT_MAX_DEPTH) -> bool:
    """Whether the polarised and coefficient-free exchange graphs are isomorphic."""
    polarised = exchange_graph(Q, max_seeds, max_depth, POLARISED)
    plain = exchange_graph(Q, max_seeds, max_depth, COEFFICIENT_FREE)
    return nx.is_isomorphic(polarised.graph, plain.graph)


@dataclass
class WalkReport:
    """
    Outcome of the invariant suite over random mutation walks.

    deterministic is set when the no-repeat rule leaves a single choice per
    step (rank at most 2), so every walk follows the same path after its first step.
    """
    walks: int
    length: int
    prng_seed: int
    seeds_checked: int = 0
    deterministic: bool = False
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict:
        return {
            "passed": self.passed,
            "walks": self.walks,
            "length": self.length,
            "prng_seed": self.prng_seed,
            "seeds_checked": self.seeds_checked,
            "deterministic": self.deterministic,
            "failures": self.failures,
        }


def random_walks(Q: Quiver, walks: int, length: int, prng_seed: int = DEFAULT_PRNG_SEED,
                 max_failures: Optional[int] = 20) -> WalkReport:
    """
    Run the invariant suite along seeded random mutation walks from the
    initial polarised seed. Consecutive steps never repeat an index.
    """
    rng = random.Random(prng_seed)
    g = grading_matrix(Q)
    start = initial_seed(Q, POLARISED)
    report = WalkReport(walks, length, prng_seed, deterministic=start.n <= 2)
    if start.n == 0:
        return report
    if report.deterministic:
        logger.info("rank %d: walks are deterministic after the first step", start.n)

    mutations: Dict[Tuple, Seed] = {}
    checked: Dict[Tuple, bool] = {}

    def visit(seed: Seed, word: List[int]):
        key = (seed.cluster_key(), seed.b_ext)
        if key in checked:
            return
        result = check_invariants(seed, Q, g)
        checked[key] = result.passed
        report.seeds_checked += 1
        if not result.passed:
            report.failures.append(f"after {word}: {'; '.join(result.messages)}")

    for _ in range(walks):
        seed, word, previous = start, [], None
        visit(seed, word)
        for _ in range(length):
            choices = [k for k in range(1, start.n + 1) if k != previous] or [1]
            k = rng.choice(choices)
            word.append(k)
            cache_key = (seed.cluster_key(), seed.b_ext, k)
            try:
                if cache_key not in mutations:
                    mutations[cache_key] = mutate(seed, k)
                seed = mutations[cache_key]
            except LaurentDivisionError as e:
                report.failures.append(f"after {word}: {e}")
                break
            previous = k
            visit(seed, list(word))
        if max_failures is not None and len(report.failures) >= max_failures:
            break
    logger.info("random walks: %d seeds checked, %d failures", report.seeds_checked, len(report.failures))
    return report
