"""Conflict graphs: which tours can share a round?

Builds the crossed-ring example: a 4-cycle r-s-u-w with four one-hop
tours.  f2 and f4 collide because both start at r; f1 and f4 collide even
though they share no node, because r's transmission would interfere at s,
the head of f1's link; f2 and f3 stay compatible because only their
destinations sit near the other tour, and a destination only listens.
"""

from radiosim import Tour, build_conflict_graph, build_network, max_degree

R, S, U, W = 1, 2, 3, 4

net = build_network(4, [(R, S), (S, U), (U, W), (W, R)])
tours = [
    Tour(1, 1, (U, S)),   # f1: u -> s
    Tour(2, 1, (R, S)),   # f2: r -> s
    Tour(3, 1, (W, U)),   # f3: w -> u
    Tour(4, 1, (R, W)),   # f4: r -> w
]

cg = build_conflict_graph(net, tours)

print("network: 4-cycle", sorted(net.edges))
print("tours:")
for f in tours:
    print(f"  f{f.id}: {' -> '.join(map(str, f.path))}")
print("conflict edges:", sorted(cg.edges))
print("non-edges:", sorted({(a, b) for a in cg.vertices for b in cg.vertices
                            if a < b and not cg.adjacent(a, b)}))
print("max degree:", max_degree(cg))
