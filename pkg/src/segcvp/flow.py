"""Min-cost flow formulation for generators with consecutive ones.

Nodes are ``1..d+1``; node ``j`` has demand ``a_{j-1} - a_j`` (with
``a_0 = a_{d+1} = 0``) and a feasible flow satisfies
``inflow - outflow = demand`` at every node. Arc kinds:

* ``DeviationFwd(i)``: ``(i, i+1)``, carries ``beta_i`` (shortfall ``a_i - b_i``)
* ``DeviationBwd(i)``: ``(i+1, i)``, carries ``alpha_i`` (excess ``b_i - a_i``)
* ``Generator(l, r)``: ``(l, r+1)``, carries the coefficient of that interval

Deviation arcs have capacity ``C`` and cost ``mu``; generator arcs are
uncapacitated with cost ``nu``.
"""
from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .core import EMPTY, INF, CvpInstance, Solution, evaluate
from .errors import EmptyGenerator, InternalError, NonConsecutiveGenerator, UnbalancedDemands


class ArcKind(str, enum.Enum):
    DEVIATION_FWD = "DeviationFwd"
    DEVIATION_BWD = "DeviationBwd"
    GENERATOR = "Generator"


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    capacity: object  # int or INF
    cost: Fraction
    kind: ArcKind
    label: tuple  # (i,) for deviation arcs, (l, r) for generators

    def describe(self) -> str:
        cap = "inf" if self.capacity is INF else str(self.capacity)
        tag = f"{self.kind.value}({','.join(map(str, self.label))})"
        return f"{self.tail} {self.head} {cap} {self.cost} {tag}"


@dataclass(frozen=True)
class FlowNetwork:
    node_count: int
    demands: tuple  # index 0 is node 1
    arcs: tuple
    generator_arcs: tuple = ()  # arc index of each generator, in instance order

    def to_edgelist(self) -> str:
        return "".join(arc.describe() + "\n" for arc in self.arcs)


class FlowStatus(str, enum.Enum):
    INFEASIBLE = "Infeasible"
    OPTIMAL = "Optimal"


@dataclass(frozen=True)
class FlowOutcome:
    status: FlowStatus
    flow: tuple = ()
    cost: Optional[Fraction] = None


def build_network(instance: CvpInstance) -> FlowNetwork:
    d = instance.d
    for j, iv in enumerate(instance.intervals):
        if iv is None:
            raise NonConsecutiveGenerator(j)
        if iv is EMPTY:
            raise EmptyGenerator(j)
    a = (0,) + instance.a + (0,)
    demands = tuple(a[j - 1] - a[j] for j in range(1, d + 2))
    mu, nu = instance.weights.mu, instance.weights.nu
    cap = instance.cap
    arcs = []
    for i in range(1, d + 1):
        arcs.append(Arc(i, i + 1, cap, mu, ArcKind.DEVIATION_FWD, (i,)))
        arcs.append(Arc(i + 1, i, cap, mu, ArcKind.DEVIATION_BWD, (i,)))
    gen = []
    for l, r in instance.intervals:
        gen.append(len(arcs))
        arcs.append(Arc(l, r + 1, INF, nu, ArcKind.GENERATOR, (l, r)))
    return FlowNetwork(d + 1, demands, tuple(arcs), tuple(gen))


def _big_capacity(network: FlowNetwork) -> int:
    # any optimum decomposes into supply-to-demand paths, so no arc carries
    # more than the total supply, which this bound dominates
    a, prev = [], 0
    for dem in network.demands[:-1]:
        prev -= dem
        a.append(prev)
    norm1 = sum(a)
    finite = [arc.capacity for arc in network.arcs
              if arc.kind is not ArcKind.GENERATOR and arc.capacity is not INF]
    return norm1 + max(a, default=0) + (finite[0] if finite else norm1)


def min_cost_flow(network: FlowNetwork) -> FlowOutcome:
    """Successive shortest paths with Dijkstra on reduced costs."""
    if sum(network.demands) != 0:
        raise UnbalancedDemands(f"demands sum to {sum(network.demands)}, not 0")
    if any(a.cost.numerator < 0 for a in network.arcs):
        raise ValueError("arc costs must be nonnegative")
    nv = network.node_count
    source, sink = nv, nv + 1
    n = nv + 2
    scale = math.lcm(*(a.cost.denominator for a in network.arcs)) if network.arcs else 1
    big = _big_capacity(network)

    # residual graph in parallel arrays; edge e and e ^ 1 are mates
    to, cap, cost = [], [], []
    adj = [[] for _ in range(n)]

    def add(u, v, c, w):
        adj[u].append(len(to))
        to.append(v)
        cap.append(c)
        cost.append(w)
        adj[v].append(len(to))
        to.append(u)
        cap.append(0)
        cost.append(-w)

    int_cost = [arc.cost.numerator * (scale // arc.cost.denominator) for arc in network.arcs]
    for arc, w in zip(network.arcs, int_cost):
        c = big if arc.capacity is INF else arc.capacity
        add(arc.tail - 1, arc.head - 1, c, w)
    required = 0
    for v, dem in enumerate(network.demands):
        if dem < 0:
            add(source, v, -dem, 0)
        elif dem > 0:
            add(v, sink, dem, 0)
            required += dem

    pot = [0] * n
    sent = 0
    while sent < required:
        dist = [None] * n
        prev = [-1] * n
        dist[source] = 0
        heap = [(0, source)]
        done = [False] * n
        while heap:
            du, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for e in adj[u]:
                if cap[e] <= 0:
                    continue
                v = to[e]
                nd = du + cost[e] + pot[u] - pot[v]
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    prev[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[sink] is None:
            break
        far = max(x for x in dist if x is not None)
        for v in range(n):
            pot[v] += dist[v] if dist[v] is not None else far
        push = required - sent
        v = sink
        while v != source:
            e = prev[v]
            push = min(push, cap[e])
            v = to[e ^ 1]
        v = sink
        while v != source:
            e = prev[v]
            cap[e] -= push
            cap[e ^ 1] += push
            v = to[e ^ 1]
        sent += push
    if sent < required:
        return FlowOutcome(FlowStatus.INFEASIBLE)

    flow = [cap[2 * idx + 1] for idx in range(len(network.arcs))]
    # opposite deviation flows on the same coordinate cancel at no extra cost
    for i in range(0, 2 * (nv - 1), 2):
        m = min(flow[i], flow[i + 1])
        if m:
            flow[i] -= m
            flow[i + 1] -= m
    _check_conservation(network, flow)
    total = Fraction(sum(w * f for w, f in zip(int_cost, flow)), scale)
    return FlowOutcome(FlowStatus.OPTIMAL, tuple(flow), total)


def _check_conservation(network: FlowNetwork, flow):
    net = [0] * network.node_count
    for arc, f in zip(network.arcs, flow):
        if f < 0 or (arc.capacity is not INF and f > arc.capacity):
            raise InternalError(f"arc {arc.describe()} carries {f}, outside its capacity")
        net[arc.head - 1] += f
        net[arc.tail - 1] -= f
    if tuple(net) != network.demands:
        raise InternalError("flow violates conservation")


def flow_to_solution(instance: CvpInstance, network: FlowNetwork, outcome: FlowOutcome) -> Solution:
    if outcome.status is not FlowStatus.OPTIMAL:
        raise ValueError("no flow to convert: the network is infeasible")
    u = tuple(outcome.flow[idx] for idx in network.generator_arcs)
    return evaluate(instance, u)
