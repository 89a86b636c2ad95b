"""Synchronous round-based simulation with the radio hearing rule.

Each round every node either transmits one message or listens.  A
listening node hears a message iff exactly one of its neighbors
transmits in that round; with two or more transmitting neighbors the
messages collide.  A transmitting node hears nothing.

The engine owns ground truth: queues, packet movement, deliveries and
metrics.  Routing algorithms see only their node's local state and
whatever they hear.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

from .conflict import Tour, validate_tour
from .network import Network


class EngineError(ValueError):
    """Raised for invalid actions or malformed runs."""


@dataclass(frozen=True)
class Message:
    """What a transmission carries: at most one queued tour being forwarded
    (with the sender's progress index) plus optional control payload.

    Gossip-style control messages set `tour` to None.
    """

    tour: Tour | None = None
    progress: int | None = None
    control: object = None


class _Listen:
    __slots__ = ()

    def __repr__(self):
        return "LISTEN"


LISTEN = _Listen()


@dataclass(frozen=True)
class Transmit:
    message: Message


Action = _Listen | Transmit


@dataclass(frozen=True)
class Heard:
    sender: int
    message: Message


class _Silence:
    __slots__ = ()

    def __repr__(self):
        return "SILENCE"


class _Collision:
    __slots__ = ()

    def __repr__(self):
        return "COLLISION"


SILENCE = _Silence()
COLLISION = _Collision()

Outcome = Heard | _Silence | _Collision
RoundOutcome = dict[int, Outcome]


def step(net: Network, actions: dict[int, Action]) -> RoundOutcome:
    """Apply the hearing rule to one round of actions.

    Every node must have exactly one action.  A node hears iff it listens
    and exactly one of its neighbors transmits; it sees a collision iff it
    listens and two or more neighbors transmit; otherwise silence (a
    transmitter always gets silence).
    """
    for v in net.nodes():
        if v not in actions:
            raise EngineError(f"node {v} has no action")
        a = actions[v]
        if a is not LISTEN and not isinstance(a, Transmit):
            raise EngineError(f"node {v}: invalid action {a!r}")
    if len(actions) != net.n:
        extra = sorted(set(actions) - set(net.nodes()))
        raise EngineError(f"actions for unknown nodes {extra}")

    outcome: RoundOutcome = {}
    for v in net.nodes():
        if isinstance(actions[v], Transmit):
            outcome[v] = SILENCE
            continue
        transmitters = [u for u in sorted(net.neighbors(v))
                        if isinstance(actions[u], Transmit)]
        if len(transmitters) == 1:
            outcome[v] = Heard(transmitters[0], actions[transmitters[0]].message)
        elif len(transmitters) >= 2:
            outcome[v] = COLLISION
        else:
            outcome[v] = SILENCE
    return outcome


@dataclass
class QueuedTour:
    tour: Tour
    progress: int  # index into tour.path of the node currently holding it


@dataclass
class NodeState:
    """Everything a routing algorithm may see for one node: its name, the
    network size, its queue, and a private scratch dict."""

    name: int
    n: int
    queue: dict[int, QueuedTour] = field(default_factory=dict)
    memory: dict = field(default_factory=dict)

    def queue_size(self) -> int:
        return len(self.queue)


class RoutingAlgorithm:
    """Distributed transmission policy interface.

    All hooks receive only the local NodeState; inter-node information
    must flow through heard messages.  `on_run_start` exposes the full
    state table and exists solely for measurement-only modes (e.g. oracle
    gossip); ordinary algorithms must ignore it.
    """

    def on_run_start(self, net: Network, states: dict[int, NodeState]) -> None:
        pass

    def on_inject(self, state: NodeState, tour: Tour) -> None:
        pass

    def on_round(self, state: NodeState, round_no: int) -> Action:
        return LISTEN

    def on_hear(self, state: NodeState, sender: int, message: Message) -> None:
        pass


class AlwaysListen(RoutingAlgorithm):
    """Never transmits; nothing is ever delivered."""


class RoundRobin(RoutingAlgorithm):
    """Baseline: in round r the node (r mod n) + 1 transmits its oldest
    queued tour.  One global transmitter per round, hence collision-free."""

    def on_round(self, state: NodeState, round_no: int) -> Action:
        if state.name != (round_no % state.n) + 1 or not state.queue:
            return LISTEN
        oldest = min(state.queue.values(),
                     key=lambda qt: (qt.tour.injection_round, qt.tour.id))
        return Transmit(Message(tour=oldest.tour, progress=oldest.progress))


@dataclass(frozen=True)
class Delivery:
    tour_id: int
    injected: int
    delivered: int
    latency: int
    links: int


@dataclass
class Metrics:
    """Per-run record: deliveries, queue peaks, and per-round timelines."""

    deliveries: list[Delivery] = field(default_factory=list)
    backlog: list[int] = field(default_factory=list)
    undelivered_hops: list[int] = field(default_factory=list)
    max_queue_per_round: list[int] = field(default_factory=list)
    max_queue_per_node: dict[int, int] = field(default_factory=dict)
    injected_total: int = 0

    @property
    def max_queue(self) -> int:
        return max(self.max_queue_per_node.values(), default=0)

    @property
    def delivered_total(self) -> int:
        return len(self.deliveries)

    @property
    def max_latency(self) -> int | None:
        return max((d.latency for d in self.deliveries), default=None)

    def final_backlog(self) -> int:
        return self.backlog[-1] if self.backlog else 0

    def rounds_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["round", "backlog", "undelivered_hops", "max_queue"])
        for i, (b, h, q) in enumerate(zip(self.backlog, self.undelivered_hops,
                                          self.max_queue_per_round), start=1):
            w.writerow([i, b, h, q])
        return buf.getvalue()

    def deliveries_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["tour_id", "injected", "delivered", "latency", "links"])
        for d in sorted(self.deliveries, key=lambda d: (d.delivered, d.tour_id)):
            w.writerow([d.tour_id, d.injected, d.delivered, d.latency, d.links])
        return buf.getvalue()


Observer = Callable[[int, dict[int, Action], RoundOutcome], None]


def run(net: Network, algorithm: RoutingAlgorithm, trace, horizon: int,
        observer: Observer | None = None) -> Metrics:
    """Run `horizon` rounds of the routing algorithm against an injection trace.

    Per round: (1) deliver this round's injections into source queues,
    (2) collect one action per node, (3) apply the hearing rule,
    (4) move each heard tour one hop (and record delivery at its
    destination), (5) append metrics.  Fully deterministic.

    `observer(round, actions, outcome)` is called after step (3); tests and
    harnesses use it to check hearing guarantees without touching queues.
    """
    if horizon < 0:
        raise EngineError(f"horizon must be >= 0, got {horizon}")
    for tour in trace.injections:
        validate_tour(net, tour)

    by_round: dict[int, list[Tour]] = {}
    for tour in trace.injections:
        by_round.setdefault(tour.injection_round, []).append(tour)

    states = {v: NodeState(v, net.n) for v in net.nodes()}
    algorithm.on_run_start(net, states)

    metrics = Metrics(max_queue_per_node={v: 0 for v in net.nodes()})
    delivered_ids: set[int] = set()

    for r in range(1, horizon + 1):
        for tour in sorted(by_round.get(r, []), key=lambda f: f.id):
            src = states[tour.source]
            if tour.id in src.queue or tour.id in delivered_ids:
                raise EngineError(f"duplicate injection of tour {tour.id}")
            src.queue[tour.id] = QueuedTour(tour, 0)
            metrics.injected_total += 1
            algorithm.on_inject(src, tour)

        actions: dict[int, Action] = {}
        for v in net.nodes():
            a = algorithm.on_round(states[v], r)
            if a is not LISTEN and not isinstance(a, Transmit):
                raise EngineError(f"node {v} round {r}: algorithm returned {a!r}")
            if isinstance(a, Transmit) and a.message.tour is not None:
                qt = states[v].queue.get(a.message.tour.id)
                if qt is None or qt.progress != a.message.progress:
                    raise EngineError(
                        f"node {v} round {r}: transmitted tour "
                        f"{a.message.tour.id} is not resident here")
            actions[v] = a

        outcome = step(net, actions)
        if observer is not None:
            observer(r, actions, outcome)

        for v in net.nodes():
            out = outcome[v]
            if not isinstance(out, Heard):
                continue
            algorithm.on_hear(states[v], out.sender, out.message)
            msg = out.message
            if msg.tour is None:
                continue
            f, p = msg.tour, msg.progress
            if f.path[p] == out.sender and p + 1 < len(f.path) and f.path[p + 1] == v:
                del states[out.sender].queue[f.id]
                if p + 1 == len(f.path) - 1:
                    latency = r - f.injection_round
                    assert latency >= f.length - 1, \
                        f"tour {f.id}: latency {latency} below links-1"
                    metrics.deliveries.append(
                        Delivery(f.id, f.injection_round, r, latency, f.length))
                    delivered_ids.add(f.id)
                else:
                    states[v].queue[f.id] = QueuedTour(f, p + 1)

        backlog = sum(len(states[v].queue) for v in net.nodes())
        hops = sum(qt.tour.length - qt.progress
                   for v in net.nodes() for qt in states[v].queue.values())
        max_q = max(len(states[v].queue) for v in net.nodes())
        metrics.backlog.append(backlog)
        metrics.undelivered_hops.append(hops)
        metrics.max_queue_per_round.append(max_q)
        for v in net.nodes():
            q = len(states[v].queue)
            if q > metrics.max_queue_per_node[v]:
                metrics.max_queue_per_node[v] = q
        assert metrics.injected_total == len(metrics.deliveries) + backlog, \
            "conservation violated: injected != delivered + queued"

    return metrics
