"""Decreasing binary sequences, residue tracks and good n-trees.

Run: python demos/01_sequences_and_trees.py
"""

from llpon.omega import ONE, ZeroFrom, eval_at, is_one, join, llpo_split
from llpon.trees import Node, cover0, format_tree, is_good, is_very_good, leaf_node

# A closed-form sequence is either constantly 1 or switches to 0 at some k.
w = ZeroFrom(3)
print("ZeroFrom(3) prefix:", [eval_at(w, i) for i in range(6)])
print("join(ZeroFrom(3), ZeroFrom(5)) =", join(w, ZeroFrom(5)))

# Take a bit sequence g with a single 1 at position 5 and split it into
# residue classes mod 2.  Track k stays 1 while g has shown no 1 on its class.
tracks = llpo_split(5, 2)
print("\nresidue tracks for a 1 at position 5:", tracks)
print("their join is top:", is_one(join(*tracks)))

# A node labelled by those tracks is the certificate for the two-way split.
cert = leaf_node(tracks)
print("\ncertificate", format_tree(cert), "good:", is_good(cert), "very good:", is_very_good(cert))

# Goodness asks that every pair of labels joins to top, recursively below
# the ONE branches.  Two labels that both eventually vanish break it.
clash = leaf_node([ZeroFrom(1), ZeroFrom(2)])
print("clashing node", format_tree(clash), "good:", is_good(clash), "cover0:", cover0(clash))

# With closed-form labels every good tree keeps a ONE label at each node,
# so a path of ONE labels always reaches a leaf: good implies very good.
deep = Node((cert, clash), (ONE, ZeroFrom(4)))
print("\ndeeper tree", format_tree(deep))
print("good:", is_good(deep), "very good:", is_very_good(deep), "cover0:", cover0(deep))
# The clashing subtree hangs under the zf:4 label, so goodness never inspects it.
