"""Rewriting closed systems and replaying derivations as squares.

Starts from a host graph with two loops, finds the shortest derivation that
removes them, and then replays that derivation as a single 2-dimensional
square between the closed systems — the two views agree by construction.
"""

from cospanlab.language import derivation_to_square, discretize_grammar, lift_grammar
from cospanlab.laws import loop_grammar
from cospanlab.presheaf import canonical_key, graph
from cospanlab.rewriting import apply_rule, derivation_search, find_matches
from cospanlab.squares import validate_square

grammar = loop_grammar()
rule = grammar.rules[0]
host = graph(2, [(0, 0), (0, 1), (1, 1)])

print("host:", dict(host.carriers))
matches = find_matches(rule, host)
print(f"rule {rule.name!r} matches at {len(matches)} site(s)")

step = apply_rule(rule, matches[0])
print("after one application:", dict(step.result.carriers),
      "| squares re-verified:", step.verify())

goal = graph(2, [(0, 1)])
deriv = derivation_search(grammar, host, goal, max_depth=4)
print(f"\nshortest derivation to the loopless host: {len(deriv.steps)} step(s)")
print("derivation verifies:", deriv.verify())

# the same derivation, replayed as one square between closed systems
lifted = lift_grammar(discretize_grammar(grammar))
square = derivation_to_square(lifted, deriv)
print("\nreplayed as a square; validation report:", validate_square(square) or "clean")
print("square endpoints match the derivation:",
      canonical_key(square.top.apex) == canonical_key(host)
      and canonical_key(square.bot.apex) == canonical_key(goal))
