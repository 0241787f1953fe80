"""Moving witnesses through good trees.

On the one-point space a subset is a proposition, so a family of subsets is
a membership predicate j -> bool.  Good trees certify that 0 is covered.
"""

from llpon.omega import ONE, ZERO, ZeroFrom
from llpon.topology import SubsetFamily, build_witness, compactify, intersect, refine
from llpon.trees import NIL, Node, all_ones, cover0, format_tree, is_good, leaf_node

t = leaf_node([ONE, ZeroFrom(1)])
s = leaf_node([ZeroFrom(3), ONE])
r = intersect(t, s)
print("intersect:", format_tree(r), "good:", is_good(r), "cover0:", cover0(r))

# Refinement swaps every reachable leaf for a tree certifying something new.
print("refine:", format_tree(refine(t, {(0,): all_ones(2)})))

# Compactness: leaves look up a member each; the union of what they found is finite.
fam = SubsetFamily.of([3, 8], 16)
picks = {(0, 0): 8, (0, 1): 3, (1,): 3}
tree = Node((all_ones(2), NIL), (ONE, ONE))
J, S = compactify(tree, fam, picks.get)
print("compactify found J =", sorted(J), "with tree", format_tree(S))

# Building a single witness: at most k = 2 of the p_j hold and the input has
# arity 4, so a value shared by ceil(4/2) = 2 branches survives.
four = leaf_node([ONE, ONE, ONE, ZERO])
branch_pick = {(0,): 3, (1,): 8, (2,): 3}
j, W = build_witness(four, fam, 2, branch_pick.get)
print("build_witness chose j =", j, "with tree", format_tree(W))
