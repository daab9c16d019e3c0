"""ZX diagrams: spider fusion, the snake, and extra rule packs.

Two same-color spiders connected by a wire fuse into one spider whose phase
is the exact rational sum; a bent wire straightens back to a plain wire; a
JSON rule pack adds color-change and friends on top of the builtins.
"""

from fractions import Fraction
from pathlib import Path

from cospanlab.zx import (
    decat_equal,
    generator,
    load_rule_pack,
    zx_compose,
    zx_one_step,
    zx_simplify,
    zx_tensor,
)

a, b = Fraction(1, 4), Fraction(1, 2)
two_spiders = zx_compose(generator("green", 2, 1, a), generator("green", 1, 1, b))
fused = generator("green", 2, 1, a + b)

print(f"green({a}) ; green({b}) fuses to green({a + b}):",
      fused.key() in {s.result.key() for s in zx_one_step(two_spiders)})

wire = generator("wire", 1, 1)
snake = zx_compose(
    zx_tensor(generator("cap", 0, 2), wire),
    zx_tensor(wire, generator("cup", 2, 0)),
)
run = zx_simplify(snake, budget=6)
print(f"\nsnake: {snake.cospan.apex.total_size()} elements ->",
      f"{run.end.cospan.apex.total_size()} after {len(run.steps)} step(s)")
print("snake == wire modulo the rules:", decat_equal(snake, wire, budget=6))

pack_file = Path(__file__).resolve().parent.parent / "rulepacks" / "zx-uncertified.json"
pack = load_rule_pack(pack_file)
print(f"\nloaded {len(pack)} extra rules:", ", ".join(r.name for r in pack))

h = generator("hadamard", 1, 1)
sandwich = zx_compose(zx_compose(h, generator("green", 1, 1, a)), h)
results = {s.rule_name for s in zx_one_step(sandwich, pack=pack)}
print("H ; green ; H steps by:", ", ".join(sorted(results)))
print("color change reached red:", generator("red", 1, 1, a).key()
      in {s.result.key() for s in zx_one_step(sandwich, pack=pack)})
