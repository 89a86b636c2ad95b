"""The TDMA gossip phase: one transmitter per round, nothing collides.

Node ((r-1) mod n) + 1 transmits its whole rumor set in phase-round r.
Within a sweep of n rounds every node speaks once, so every rumor crosses
at least one more hop per sweep; after n-1 sweeps (S(n) = n(n-1) rounds)
every node knows every rumor on any connected topology.
"""

from radiosim import (LISTEN, Heard, Message, Transmit, make_path,
                      make_random_connected, step, tdma_gossip_schedule)


def propagate(net, verbose=False):
    knowledge = {v: {v} for v in net.nodes()}
    for r, transmitter in enumerate(tdma_gossip_schedule(net.n), start=1):
        actions = {v: LISTEN for v in net.nodes()}
        actions[transmitter] = Transmit(Message(
            control=("rumors", tuple(sorted(knowledge[transmitter])))))
        outcome = step(net, actions)
        for v in net.nodes():
            out = outcome[v]
            if isinstance(out, Heard):
                knowledge[v] |= set(out.message.control[1])
        if verbose and r % net.n == 0:
            sweep = r // net.n
            sizes = [len(knowledge[v]) for v in net.nodes()]
            print(f"  after sweep {sweep}: rumor counts {sizes}")
    return knowledge


print("path of 5 nodes, one rumor per node:")
net = make_path(5)
knowledge = propagate(net, verbose=True)
assert all(knowledge[v] == set(net.nodes()) for v in net.nodes())
print(f"complete after S(n) = {net.n * (net.n - 1)} rounds\n")

print("random connected topologies:")
for seed in (1, 2, 3):
    net = make_random_connected(7, 0.3, seed)
    knowledge = propagate(net)
    complete = all(knowledge[v] == set(net.nodes()) for v in net.nodes())
    print(f"  n=7 seed={seed}: {len(net.edges)} edges, "
          f"complete knowledge: {complete}")
    assert complete
