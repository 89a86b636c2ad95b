"""Old-Go-First: windowed routing with bounded latency under balanced traffic.

Time is split into fixed windows of w rounds.  Tours injected during a
window are "new" there and become "old" when the next window starts.
Each window spends a gossip phase collecting every node's old tours,
then colors the old tours' conflict graph with Delta+1 colors and runs
super-rounds in which color i transmits in round i.  Every old tour
advances one hop per super-round, is always heard (same-colored tours
never conflict), and is delivered within the window.  With
w = u = ceil((S(n) + b*L) / (1 - rho*L)) every tour's latency is at most
2u against a balanced (rho, b, L) adversary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import engine
from .adversary import (AdversaryType, Balance, InjectionTrace, classify,
                        verify_admissible)
from .coloring import Coloring, greedy_color
from .conflict import Tour, build_conflict_graph, max_degree
from .engine import (LISTEN, Action, Message, Metrics, NodeState,
                     RoutingAlgorithm, Transmit)
from .network import Network


class OgfError(ValueError):
    """Raised for precondition violations and broken routing guarantees."""


class WindowOverflowError(OgfError):
    """A window's old-tour set does not fit its gossip + super-round budget."""


@dataclass(frozen=True)
class GossipConfig:
    """How phase 1 collects old tours.

    tdma: node ((r-1) mod n)+1 transmits its whole rumor set in phase-round
    r; n-1 sweeps of n rounds, so S(n) = n*(n-1).  oracle: knowledge is
    shared instantaneously at phase start while a configurable S(n) rounds
    still elapse (a measurement mode for studying other gossip costs).
    """

    mode: str
    s_n: int | None = None

    def __post_init__(self):
        if self.mode not in ("tdma", "oracle"):
            raise OgfError(f"unknown gossip mode {self.mode!r}")
        if self.mode == "oracle" and (self.s_n is None or self.s_n < 1):
            raise OgfError("oracle gossip needs S_n >= 1")

    @classmethod
    def tdma(cls) -> "GossipConfig":
        return cls("tdma")

    @classmethod
    def oracle(cls, s_n: int) -> "GossipConfig":
        return cls("oracle", s_n)

    def rounds(self, n: int) -> int:
        return n * (n - 1) if self.mode == "tdma" else self.s_n


def compute_window_bound(adv: AdversaryType, s_n: int) -> int:
    """u = ceil((S(n) + b*L) / (1 - rho*L)), in exact rational arithmetic.

    u satisfies S(n) + (rho*u + b)*L <= u, the window feasibility bound.
    """
    denom = 1 - adv.rho * adv.L
    if denom <= 0:
        raise OgfError(f"window bound undefined: rho*L = {adv.rho * adv.L} >= 1")
    u = math.ceil(Fraction(s_n + adv.b * adv.L) / denom)
    assert s_n + (adv.rho * u + adv.b) * adv.L <= u
    return u


def tdma_gossip_schedule(n: int) -> list[int]:
    """Transmitter per phase-1 round: n-1 sweeps of nodes 1..n."""
    if n < 2:
        raise OgfError(f"gossip schedule needs n >= 2, got {n}")
    return [(r % n) + 1 for r in range(n * (n - 1))]


@dataclass(frozen=True)
class WindowPlan:
    """Deterministic per-window routing plan, identical at every node.

    Colors are assigned to the old tours' *remaining* paths (from each
    tour's current position), which coincide with the full paths in
    normal operation where every old tour sits at its source.
    """

    w: int
    l_prime: int
    delta: int
    coloring: Coloring

    @property
    def phase2_length(self) -> int:
        return self.l_prime * (self.delta + 1)

    def color_of(self, tour_id: int) -> int | None:
        return self.coloring.assignment.get(tour_id)


def plan_window(net: Network, old_tours: list[Tour], w: int = 0) -> WindowPlan:
    """Build the window plan: longest old tour, conflict-graph degree, and a
    first-fit coloring in ascending tour id order."""
    cg = build_conflict_graph(net, old_tours)
    l_prime = max((f.length for f in old_tours), default=0)
    delta = max_degree(cg)
    coloring = greedy_color(cg)
    return WindowPlan(w, l_prime, delta, coloring)


def phase2_action(plan: WindowPlan, state: NodeState, offset: int) -> Action:
    """Transmission policy within phase 2.

    Offset o (0-based) lies in super-round o // (delta+1) + 1 at color
    round i = o % (delta+1) + 1; a node storing the old tour of color i
    transmits it, everyone else listens.
    """
    if not 0 <= offset < plan.phase2_length:
        raise OgfError(f"phase-2 offset {offset} outside [0, {plan.phase2_length})")
    i = offset % (plan.delta + 1) + 1
    holding = [qt for tid, qt in state.queue.items() if plan.color_of(tid) == i]
    if len(holding) > 1:
        raise OgfError(
            f"node {state.name}: {len(holding)} resident tours of color {i}; "
            "per-color residency invariant violated")
    if holding:
        qt = holding[0]
        return Transmit(Message(tour=qt.tour, progress=qt.progress))
    return LISTEN


@dataclass
class WindowStats:
    index: int
    old_count: int
    l_prime: int
    delta: int
    phase2_length: int
    truncated: bool


class OldGoFirst(RoutingAlgorithm):
    """The windowed transmission policy as a pluggable routing algorithm.

    strict mode raises WindowOverflowError when a window's old set does
    not fit S(n) + L'*(Delta+1) <= w; lenient mode instead truncates
    phase 2 at the window boundary and carries leftover old tours (with
    their current positions) into the next window's plan, which is what
    lets the saturation experiments keep running on overloaded networks.

    Planning consults the shared topology: every node runs the identical
    deterministic computation on identical gossiped knowledge, so no
    coordination messages are needed beyond the rumors themselves.
    """

    def __init__(self, net: Network, window_length: int, gossip: GossipConfig,
                 strict: bool = True, check_invariants: bool = True,
                 queue_bound: Fraction | None = None):
        if window_length < 1:
            raise OgfError(f"window length must be >= 1, got {window_length}")
        self.net = net
        self.w = window_length
        self.gossip = gossip
        self.s_n = gossip.rounds(net.n)
        if self.s_n >= window_length:
            raise OgfError(
                f"window length {window_length} leaves no room after "
                f"S(n) = {self.s_n} gossip rounds")
        self.strict = strict
        self.check_invariants = check_invariants
        self.queue_bound = queue_bound
        self.window_log: list[WindowStats] = []
        self.invariant_checks = 0
        self._states: dict[int, NodeState] | None = None
        self._oracle_cache: dict[int, dict[int, tuple[Tour, int]]] = {}
        # nodes with identical rumor sets compute identical plans; share them
        self._plan_cache: dict[tuple[int, frozenset], WindowPlan] = {}

    def on_run_start(self, net: Network, states: dict[int, NodeState]) -> None:
        if self.gossip.mode == "oracle":
            self._states = states

    # -- window bookkeeping ------------------------------------------------

    def _snapshot(self, state: NodeState, window_start: int) -> None:
        """Freeze this node's old tours (anything injected before the window)
        as its initial rumor set; drop last window's knowledge."""
        rumors = {tid: (qt.tour, qt.progress)
                  for tid, qt in state.queue.items()
                  if qt.tour.injection_round < window_start}
        if self.gossip.mode == "oracle":
            window_index = (window_start - 1) // self.w + 1
            if window_index not in self._oracle_cache:
                merged: dict[int, tuple[Tour, int]] = {}
                for other in self._states.values():
                    for tid, qt in other.queue.items():
                        if qt.tour.injection_round < window_start:
                            merged[tid] = (qt.tour, qt.progress)
                self._oracle_cache = {window_index: merged}
            rumors = dict(self._oracle_cache[window_index])
        state.memory["rumors"] = rumors
        state.memory["plan"] = None

    def _ensure_plan(self, state: NodeState, window_index: int) -> WindowPlan:
        plan = state.memory.get("plan")
        if plan is not None:
            return plan
        rumors = state.memory.get("rumors", {})
        key = (window_index,
               frozenset((tid, progress) for tid, (_, progress) in rumors.items()))
        plan = self._plan_cache.get(key)
        if plan is None:
            remaining = [Tour(tid, tour.injection_round, tour.path[progress:])
                         for tid, (tour, progress) in sorted(rumors.items())]
            plan = plan_window(self.net, remaining, self.w)
            self._plan_cache = {key: plan}
        fits = self.s_n + plan.phase2_length <= self.w
        if not fits and self.strict:
            raise WindowOverflowError(
                f"window {window_index}: S(n) + L'*(Delta+1) = "
                f"{self.s_n} + {plan.l_prime}*{plan.delta + 1} > w = {self.w}")
        state.memory["plan"] = plan
        if state.name == 1:
            self.window_log.append(WindowStats(
                window_index, len(rumors), plan.l_prime, plan.delta,
                plan.phase2_length, not fits))
        return plan

    def _check_invariants(self, state: NodeState, plan: WindowPlan) -> None:
        colors_seen: dict[int, int] = {}
        for tid in state.queue:
            c = plan.color_of(tid)
            if c is None:
                continue
            if c in colors_seen:
                raise OgfError(
                    f"node {state.name}: tours {colors_seen[c]} and {tid} "
                    f"both resident with color {c}")
            colors_seen[c] = tid
        if self.queue_bound is not None and len(state.queue) > self.queue_bound:
            raise OgfError(
                f"node {state.name}: queue size {len(state.queue)} exceeds "
                f"bound {self.queue_bound}")
        self.invariant_checks += 1

    # -- routing interface ---------------------------------------------------

    def on_round(self, state: NodeState, round_no: int) -> Action:
        offset = (round_no - 1) % self.w
        window_start = round_no - offset
        window_index = (round_no - 1) // self.w + 1

        if offset == 0:
            self._snapshot(state, window_start)

        if offset < self.s_n:
            action = self._phase1_action(state, offset)
        else:
            plan = self._ensure_plan(state, window_index)
            p2_available = min(plan.phase2_length, self.w - self.s_n)
            if offset < self.s_n + p2_available:
                action = phase2_action(plan, state, offset - self.s_n)
            else:
                action = LISTEN

        if self.check_invariants:
            plan = state.memory.get("plan")
            if plan is not None:
                self._check_invariants(state, plan)
            elif self.queue_bound is not None and len(state.queue) > self.queue_bound:
                raise OgfError(
                    f"node {state.name}: queue size {len(state.queue)} exceeds "
                    f"bound {self.queue_bound}")
        return action

    def _phase1_action(self, state: NodeState, offset: int) -> Action:
        if self.gossip.mode == "oracle":
            return LISTEN
        transmitter = (offset % state.n) + 1
        if state.name != transmitter:
            return LISTEN
        rumors = state.memory.get("rumors", {})
        payload = tuple((tid, tour, progress)
                        for tid, (tour, progress) in sorted(rumors.items()))
        return Transmit(Message(control=("gossip", payload)))

    def on_hear(self, state: NodeState, sender: int, message: Message) -> None:
        if (isinstance(message.control, tuple) and message.control
                and message.control[0] == "gossip"):
            rumors = state.memory.setdefault("rumors", {})
            for tid, tour, progress in message.control[1]:
                rumors[tid] = (tour, progress)


@dataclass
class OgfResult:
    """run_ogf output: engine metrics plus per-window planning stats."""

    metrics: Metrics
    u: int | None
    s_n: int
    w: int
    windows: list[WindowStats] = field(default_factory=list)
    invariant_checks: int = 0


def run_ogf(net: Network, adv: AdversaryType, gossip: GossipConfig,
            trace: InjectionTrace, horizon: int,
            window_override: int | None = None, strict: bool = True,
            check_invariants: bool = True) -> OgfResult:
    """Run Old-Go-First for `horizon` rounds against the trace.

    strict mode enforces the algorithm's preconditions (balanced type,
    admissible trace) and its guarantees (window feasibility, per-color
    residency, queue bound); every phase-2 transmission is checked to be
    heard by its next hop in either mode.
    """
    s_n = gossip.rounds(net.n)
    u = None
    if classify(adv) is Balance.BALANCED:
        u = compute_window_bound(adv, s_n)
    if strict:
        if u is None:
            raise OgfError(f"Old-Go-First requires a balanced adversary, got "
                           f"{adv} with rho*L = {adv.rho * adv.L}")
        violation = verify_admissible(net, trace, adv)
        if violation is not None:
            raise OgfError(f"trace is not admissible for {adv}: {violation}")
    w = window_override if window_override is not None else u
    if w is None:
        raise OgfError("window override is required when the type is not balanced")

    queue_bound = 2 * (adv.rho * w + adv.b) if strict else None
    alg = OldGoFirst(net, w, gossip, strict=strict,
                     check_invariants=check_invariants,
                     queue_bound=queue_bound)

    def soundness(round_no: int, actions, outcome) -> None:
        for v in sorted(actions):
            a = actions[v]
            if not isinstance(a, Transmit) or a.message.tour is None:
                continue
            f, p = a.message.tour, a.message.progress
            nxt = f.path[p + 1]
            out = outcome[nxt]
            if not (isinstance(out, engine.Heard) and out.sender == v
                    and out.message.tour is f):
                raise OgfError(
                    f"round {round_no}: tour {f.id} transmitted by node {v} "
                    f"was not heard by its next hop {nxt} ({out!r})")

    metrics = engine.run(net, alg, trace, horizon, observer=soundness)
    return OgfResult(metrics=metrics, u=u, s_n=s_n, w=w,
                     windows=alg.window_log,
                     invariant_checks=alg.invariant_checks)
