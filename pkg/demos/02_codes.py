"""Reading goodness off numeric codes.

A tree is flattened into a shape number and a bit stream.  Goodness then
becomes a finite list of clauses, each a statement about a few index tracks
into the stream.
"""

from llpon.omega import ONE, ZeroFrom
from llpon.prcodes import (
    eval_good_via_codes,
    eval_very_good_via_codes,
    good_bound,
    good_clause,
    stabilization_bound,
    track_horizon,
    vgood_bound,
    vgood_clause,
)
from llpon.trees import Node, data_at, format_tree, leaf_node, shape

t = Node((leaf_node([ONE, ZeroFrom(1)]), leaf_node([ONE, ONE])), (ONE, ZeroFrom(2)))
s = shape(t)
print("tree:", format_tree(t))
print("shape code:", s, "| clauses:", good_bound(s), "| path clauses:", vgood_bound(s))
print("first 24 data bits:", "".join(str(data_at(t, j)) for j in range(24)))

# Child clauses come first, then the ordered label pairs of the root.
for l in range(good_bound(s)):
    cl = good_clause(l, s)
    where = f"child {cl.child}" if cl.child is not None else f"pair {cl.pair}"
    print(f"clause {l}: c={cl.c_flag} {where:10s} g0={[cl.g0_track(i) for i in range(4)]}")

# Path clauses interleave label reads with deeper positions, so their tracks
# move more slowly than the labels themselves.
f = vgood_clause(0, s).f_track
print("\npath clause 0 track:", [f(i) for i in range(8)])
print("stabilization bound", stabilization_bound(t), "vs. horizon used for the quantifiers", track_horizon(t))
print("good via codes:", eval_good_via_codes(t), "| very good via codes:", eval_very_good_via_codes(t))
