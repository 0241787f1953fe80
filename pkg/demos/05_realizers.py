"""Dovetailing machines and K2 stream application.

Machines are generator functions: each yield is one step.  The dovetail
runs two algorithms in strict alternation and keeps whichever halts first.
"""

from llpon.codec import list_decode
from llpon.realize import (
    Machine,
    Pair,
    Stream,
    dovetail,
    ip_realizer,
    k2_apply_prefix,
    k2_echo,
    k2_parallel,
    race_at,
    snd,
)

ones = Machine.total(lambda m: 1, name="ones")
zero_at_3 = Machine.total(lambda m: 0 if m == 3 else 1, name="zero at 3")
succ = Machine.total(lambda n: n + 1, lambda n: 2, name="succ")
a1 = Machine.total(lambda d: Machine.total(lambda z: Pair(succ, "second component")), name="a1")

# First algorithm: scan the track (a0 d)_0 for a non-1 entry and answer 0.
# Second algorithm: evaluate (a1 d 0)_0 at n.
for label, a0, other in [
    ("all-ones track", Machine.total(lambda d: Pair(ones, None)), a1),
    ("track with a zero", Machine.total(lambda d: Pair(zero_at_3, None)), Machine.diverge()),
]:
    f = dovetail(a0, other, d=0, budget=500)
    r = race_at(a0, other, 0, 2, 500)
    print(f"{label:18s} outputs {[f(n) for n in range(5)]}  (n=2 won by algorithm {r.winner} after {r.rounds} rounds)")

b = ip_realizer(Machine.total(lambda d: Pair(ones, None)), a1)
packed = b.run(0, 10).value
print("b d = pair of", packed.fst, "and a lazy second component:", snd(packed))

# K2: alpha reads oracle values until it is ready to answer m + 1.
print("\necho applied to const 2:", k2_apply_prefix(k2_echo(), Stream.const(2), 4, 6))
beta = Stream(lambda code: 9 if len(list_decode(code)) > 2 else 0, name="answers 8 after two reads")
par = k2_parallel(beta)
print("beta on const 1:      ", k2_apply_prefix(beta, Stream.const(1), 4, 6))
print("par(beta) on const 1: ", k2_apply_prefix(par, Stream.const(1), 4, 6))
print("par(beta) on 1,0,1,..:", k2_apply_prefix(par, Stream(lambda i: 0 if i == 1 else 1), 4, 6))
