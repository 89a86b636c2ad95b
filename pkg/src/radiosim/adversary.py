"""Adversarial traffic: types, load accounting, admissibility, generators.

An adversary of type (rho, b, L) may inject tours of path length at most
L such that, for every node v and every time interval tau, the number of
tours injected during tau that v conflicts with is at most
rho*|tau| + b, where |tau| counts the rounds of tau inclusively.

rho is kept as an exact Fraction so admissibility never depends on
floating-point rounding.
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from .conflict import (Tour, conflict_node_set, format_tour, parse_tour_line,
                       validate_tour)
from .network import Network, make_clique


class AdversaryError(ValueError):
    """Raised for invalid adversary types, traces or generator parameters."""


class Balance(Enum):
    BALANCED = "balanced"
    UNBALANCED = "unbalanced"
    CRITICAL = "critical"


@dataclass(frozen=True)
class AdversaryType:
    """Injection rate rho, burstiness b, stretch L."""

    rho: Fraction
    b: int
    L: int

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))
        if not 0 <= self.rho <= 1:
            raise AdversaryError(f"rho must be in [0, 1], got {self.rho}")
        if self.b < 1:
            raise AdversaryError(f"burstiness must be >= 1, got {self.b}")
        if self.L < 1:
            raise AdversaryError(f"stretch must be >= 1, got {self.L}")

    @classmethod
    def parse(cls, text: str) -> "AdversaryType":
        """Parse `<num>/<den>:<b>:<L>` (also accepts a bare integer rate)."""
        try:
            rho_s, b_s, l_s = text.split(":")
            rho = Fraction(rho_s)
            return cls(rho, int(b_s), int(l_s))
        except (ValueError, ZeroDivisionError) as exc:
            raise AdversaryError(f"bad adversary spec {text!r}: {exc}") from None

    def __str__(self) -> str:
        return f"{self.rho.numerator}/{self.rho.denominator}:{self.b}:{self.L}"


def classify(adv: AdversaryType) -> Balance:
    """Balanced iff rho*L < 1, unbalanced iff > 1, critical iff exactly 1."""
    product = adv.rho * adv.L
    if product < 1:
        return Balance.BALANCED
    if product > 1:
        return Balance.UNBALANCED
    return Balance.CRITICAL


@dataclass(frozen=True)
class InjectionTrace:
    """Tours ordered by (injection_round, id); horizon is the last covered round."""

    injections: tuple[Tour, ...]
    horizon: int

    def __post_init__(self):
        tours = tuple(sorted(self.injections,
                             key=lambda f: (f.injection_round, f.id)))
        object.__setattr__(self, "injections", tours)
        ids = [f.id for f in tours]
        if len(set(ids)) != len(ids):
            raise AdversaryError("duplicate tour ids in trace")
        for f in tours:
            if f.injection_round < 1:
                raise AdversaryError(f"tour {f.id}: injection round must be >= 1")
        if tours and self.horizon < tours[-1].injection_round:
            raise AdversaryError("trace horizon precedes its last injection")

    def by_round(self) -> dict[int, list[Tour]]:
        grouped: dict[int, list[Tour]] = {}
        for f in self.injections:
            grouped.setdefault(f.injection_round, []).append(f)
        return grouped


class LoadLedger:
    """Per-node sorted lists of injection rounds of tours conflicting with
    that node."""

    def __init__(self, net: Network, trace: InjectionTrace):
        self.rounds: dict[int, list[int]] = {v: [] for v in net.nodes()}
        for f in trace.injections:
            validate_tour(net, f)
            for v in conflict_node_set(net, f):
                self.rounds[v].append(f.injection_round)
        for v in self.rounds:
            self.rounds[v].sort()


def node_load(ledger: LoadLedger, v: int, interval: tuple[int, int]) -> int:
    """Number of conflicting tours injected at node-v within [start, end]."""
    start, end = interval
    if start > end:
        raise AdversaryError(f"bad interval [{start}, {end}]")
    lst = ledger.rounds[v]
    return bisect_right(lst, end) - bisect_left(lst, start)


@dataclass(frozen=True)
class Violation:
    """Witness of an admissibility failure."""

    kind: str  # "stretch" or "load"
    node: int | None = None
    interval: tuple[int, int] | None = None
    load: int | None = None
    budget: Fraction | None = None
    tour_id: int | None = None

    def __str__(self) -> str:
        if self.kind == "stretch":
            return f"stretch violation: tour {self.tour_id} longer than allowed"
        return (f"load violation at node {self.node}, interval {self.interval}: "
                f"load {self.load} > budget {self.budget}")


def verify_admissible(net: Network, trace: InjectionTrace,
                      adv: AdversaryType) -> Violation | None:
    """None if the trace is admissible for the type, else a witness.

    Only intervals whose endpoints are injection rounds of tours
    conflicting with the node are checked: between such rounds the load
    is constant while the budget grows, so these intervals dominate.
    """
    for f in trace.injections:
        validate_tour(net, f)
        if f.length > adv.L:
            return Violation("stretch", tour_id=f.id)
    ledger = LoadLedger(net, trace)
    for v in net.nodes():
        rounds = ledger.rounds[v]
        distinct = sorted(set(rounds))
        for i, a in enumerate(distinct):
            for b_end in distinct[i:]:
                load = bisect_right(rounds, b_end) - bisect_left(rounds, a)
                budget = adv.rho * (b_end - a + 1) + adv.b
                if load > budget:
                    return Violation("load", node=v, interval=(a, b_end),
                                     load=load, budget=budget)
    return None


def verify_admissible_all_intervals(net: Network, trace: InjectionTrace,
                                    adv: AdversaryType,
                                    horizon: int | None = None) -> Violation | None:
    """Brute-force reference: checks every interval [a, b] within the horizon.

    Slow; kept as the oracle the fast verifier is tested against.
    """
    for f in trace.injections:
        validate_tour(net, f)
        if f.length > adv.L:
            return Violation("stretch", tour_id=f.id)
    ledger = LoadLedger(net, trace)
    end_round = horizon if horizon is not None else trace.horizon
    for v in net.nodes():
        for a in range(1, end_round + 1):
            for b_end in range(a, end_round + 1):
                load = node_load(ledger, v, (a, b_end))
                budget = adv.rho * (b_end - a + 1) + adv.b
                if load > budget:
                    return Violation("load", node=v, interval=(a, b_end),
                                     load=load, budget=budget)
    return None


class _TokenBuckets:
    """Exact per-node admission control for the interval constraint.

    A node's headroom starts at b + rho, loses 1 per admitted conflicting
    tour, and refills between rounds as min(tokens, b) + rho.  Admitting a
    tour whenever every conflicting node has headroom >= 1 yields exactly
    the traces admissible for (rho, b, .).
    """

    def __init__(self, net: Network, adv: AdversaryType):
        self.adv = adv
        self.tokens: dict[int, Fraction] = {
            v: adv.rho + adv.b for v in net.nodes()}

    def refill(self) -> None:
        b = self.adv.b
        for v in self.tokens:
            self.tokens[v] = min(self.tokens[v], Fraction(b)) + self.adv.rho

    def admits(self, nodes: Iterable[int]) -> bool:
        return all(self.tokens[v] >= 1 for v in nodes)

    def consume(self, nodes: Iterable[int]) -> None:
        for v in nodes:
            self.tokens[v] -= 1


def _random_simple_path(net: Network, rng: random.Random, max_len: int) -> tuple[int, ...]:
    """Random walk without node repeats, truncated at dead ends."""
    target = rng.randint(1, max_len)
    path = [rng.randrange(1, net.n + 1)]
    visited = {path[0]}
    while len(path) <= target:
        options = sorted(net.neighbors(path[-1]) - visited)
        if not options:
            break
        nxt = rng.choice(options)
        path.append(nxt)
        visited.add(nxt)
    return tuple(path)


def gen_balanced(net: Network, adv: AdversaryType, seed: int, horizon: int,
                 attempts_per_round: int = 1,
                 start_id: int = 1) -> InjectionTrace:
    """Greedy admissible traffic: random candidate tours admitted whenever
    every conflicting node's budget allows.  Deterministic in all arguments;
    the output always passes verify_admissible.
    """
    if classify(adv) is not Balance.BALANCED:
        raise AdversaryError(f"gen_balanced needs a balanced type, got {adv}")
    if horizon < 0:
        raise AdversaryError(f"horizon must be >= 0, got {horizon}")
    rng = random.Random(seed)
    buckets = _TokenBuckets(net, adv)
    tours: list[Tour] = []
    next_id = start_id
    for r in range(1, horizon + 1):
        if r > 1:
            buckets.refill()
        for _ in range(attempts_per_round):
            path = _random_simple_path(net, rng, adv.L)
            if len(path) < 2:
                continue
            candidate = Tour(next_id, r, path)
            hit = conflict_node_set(net, candidate)
            if buckets.admits(hit):
                buckets.consume(hit)
                tours.append(candidate)
                next_id += 1
    return InjectionTrace(tuple(tours), horizon)


def gen_unbalanced_clique(adv: AdversaryType, n: int, t: int,
                          horizon: int) -> tuple[Network, InjectionTrace]:
    """Saturating trace on the n-clique for an unbalanced adversary.

    The first interval of t rounds carries floor(rho*t) + b tours, each
    later complete interval floor(rho*t), every tour a simple path of
    exactly L links; injections are spread so the trace stays admissible.
    """
    if classify(adv) is not Balance.UNBALANCED:
        raise AdversaryError(f"gen_unbalanced_clique needs an unbalanced type, got {adv}")
    if n <= adv.L:
        raise AdversaryError(f"need n > L, got n={n}, L={adv.L}")
    if (adv.L * adv.rho - 1) * t < 1:
        raise AdversaryError(
            f"need (L*rho - 1)*t >= 1, got t={t} for {adv}")
    if horizon < 0:
        raise AdversaryError(f"horizon must be >= 0, got {horizon}")

    net = make_clique(n)
    per_interval = math.floor(adv.rho * t)
    buckets = _TokenBuckets(net, adv)
    # on a clique every positive-length tour conflicts with every node,
    # so one shared bucket level governs admission
    tours: list[Tour] = []
    next_id = 1
    intervals = horizon // t
    for k in range(1, intervals + 1):
        quota = per_interval + (adv.b if k == 1 else 0)
        for r in range((k - 1) * t + 1, k * t + 1):
            if r > 1:
                buckets.refill()
            allow = min(quota, math.floor(buckets.tokens[1]))
            for _ in range(allow):
                start = (next_id - 1) % n
                path = tuple(((start + i) % n) + 1 for i in range(adv.L + 1))
                tours.append(Tour(next_id, r, path))
                next_id += 1
                buckets.consume(net.nodes())
            quota -= allow
    return net, InjectionTrace(tuple(tours), horizon)


def format_trace(adv: AdversaryType, trace: InjectionTrace) -> str:
    """Header `adv <num>/<den> <b> <L>` then tour lines sorted by round."""
    lines = [f"adv {adv.rho.numerator}/{adv.rho.denominator} {adv.b} {adv.L}"]
    lines.extend(format_tour(f) for f in trace.injections)
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> tuple[AdversaryType, InjectionTrace]:
    """Parse the trace text format; `#` lines are comments.

    The parsed horizon is the last injection round (the file format does
    not carry an explicit horizon).
    """
    adv = None
    tours = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "adv":
            if len(parts) != 4:
                raise AdversaryError(f"line {lineno}: expected `adv <rho> <b> <L>`")
            try:
                adv = AdversaryType(Fraction(parts[1]), int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise AdversaryError(f"line {lineno}: {exc}") from None
        elif parts[0] == "t":
            tours.append(parse_tour_line(line, lineno))
        else:
            raise AdversaryError(f"line {lineno}: unknown record {parts[0]!r}")
    if adv is None:
        raise AdversaryError("missing `adv` header line")
    horizon = max((f.injection_round for f in tours), default=0)
    return adv, InjectionTrace(tuple(tours), horizon)
