"""Composing open graphs by gluing along their boundaries.

Builds two small open graphs — a fan-in feeding a single output node, and a
fan-out distributing that node to three outputs — and walks through
composition, tensoring, and the compact-closed bending of wires.
"""

from cospanlab import graph_interface
from cospanlab.cospans import (
    coevaluation,
    compose,
    cospan_iso_search,
    evaluation,
    identity_cospan,
    open_graph,
    tensor,
)
from cospanlab.presheaf import graph

iface = graph_interface()

# two inputs flow into a middle node, which feeds the single output
fan_in = open_graph(iface, graph(4, [(0, 2), (1, 2), (2, 3)]), [0, 1], [3])
# the output node fans out to three fresh outputs
fan_out = open_graph(iface, graph(4, [(0, 1), (0, 2), (0, 3)]), [0], [1, 2, 3])

print("fan-in :", dict(fan_in.apex.carriers), "feet", fan_in.left_foot, "->", fan_in.right_foot)
print("fan-out:", dict(fan_out.apex.carriers), "feet", fan_out.left_foot, "->", fan_out.right_foot)

glued = compose(fan_in, fan_out)
print("\ncomposite glues the shared boundary node:")
print("  apex", dict(glued.apex.carriers), "feet", glued.left_foot, "->", glued.right_foot)

side_by_side = tensor(fan_in, fan_out)
print("\ntensor just places them side by side:")
print("  apex", dict(side_by_side.apex.carriers),
      "feet", side_by_side.left_foot, "->", side_by_side.right_foot)

# equality of open graphs is iso-with-feet-fixed, decided by canonical keys
wire = identity_cospan(iface, 1)
bent = compose(tensor(coevaluation(iface, 1), wire), tensor(wire, evaluation(iface, 1)))
print("\nbending a wire over and back is the identity:",
      cospan_iso_search(bent, wire) is not None)
print("canonical keys agree:", bent.key() == wire.key())
