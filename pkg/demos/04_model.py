"""The certificate-producing evaluator.

Verdicts are Proven (with a good tree certificate), Refuted (with a finite
counterexample) or Unknown (fuel ran out).
"""

from llpon.formula import parse_formula
from llpon.model import Env, FunctionSymbol, choose_with_trees, eval_model, witness_bound
from llpon.trees import format_tree

env = Env({"g": FunctionSymbol.unit(5), "f": FunctionSymbol.unit(12)}, n=2, fuel=40)


def show(text):
    status = eval_model(parse_formula(text), env)
    extra = ""
    if hasattr(status, "certificate"):
        extra = f" certificate {format_tree(status.certificate.tree)} leaves {dict(status.certificate.leaves)}"
    print(f"{text:55s} -> {type(status).__name__}{extra}")


# g has its only 1 at position 5.  Which residue class is g zero on?  The
# evaluator does not need to know: the residue-track tree covers the union.
show("(forall x. g(2*x)=0) \\/ (forall x. g(2*x+1)=0)")
show("exists k<2. forall x. g(2*x+k)=0")
show("forall x<10. g(x) < 2")
show("exists x. f(x) = 1")
show("~~exists x. f(x) = 1")
show("exists x. f(x) = 2")
show("forall x. x < 30")

phi = parse_formula("exists k<2. forall x. g(2*x+k)=0")
print("\nwitness set read off the certificate:", sorted(witness_bound(phi, env)))

# Bounded choice: each row has one or two witnesses; the trees guard the choice.
f, trees = choose_with_trees(lambda x, y: y in (x, 2 * x + 7), X=4, k=2, n=4)
print("chosen values:", f)
print("guarding trees:", [format_tree(t) for t in trees])
