"""Three models, three levels of the contextuality hierarchy.

Run: python demos/02_hierarchy.py
"""
from sheafext import catalog
from sheafext.fileformat import render_table
from sheafext.model import format_assignment
from sheafext.solver import (
    classify,
    is_logically_contextual,
    is_probabilistically_extendable,
    verify_certificate,
)

chsh = catalog.load("chsh")
print(render_table(chsh))
ext = is_probabilistically_extendable(chsh)
print("CHSH class:", classify(chsh))
print("every possible event extends to a global assignment:", not is_logically_contextual(chsh))
print("no probability distribution on global assignments reproduces the table;")
print("Farkas multipliers (y.A >= 0, y.b < 0):")
for (ctx, s), y in ext.witness.certificate.items():
    if y:
        print(f"  {' '.join(ctx):6} {format_assignment(s)}  {y}")
print("certificate verifies:", verify_certificate(chsh, ext.witness.certificate))
print()

hardy = catalog.load("hardy")
print(render_table(hardy))
result = is_logically_contextual(hardy)
ctx, s = result.witness
print("Hardy class:", classify(hardy))
print(f"the event {' '.join(ctx)} = {format_assignment(s)} has positive probability "
      "but no consistent global assignment explains it")
print()

ghz = catalog.load("ghz")
print("GHZ class:", classify(ghz), "(no consistent global assignment at all)")
