"""The canonical extension to a larger cover need not be compatible.

Run: python demos/03_extension_can_signal.py
"""
from sheafext import catalog
from sheafext.extension import canonical_extension, find_extension, is_extension
from sheafext.fileformat import render_support_table, render_table
from sheafext.model import induced_submodel
from sheafext.solver import classify

e = catalog.load("ex-sig")
target = [["A", "B", "D"], ["B", "C", "D"]]
print(render_table(e))

report = canonical_extension(e, target)
print("canonical candidate on {ABD, BCD}:")
print(render_support_table(report.target, report.candidate))
print("status:", report.status)
print("first marginal mismatch:", report.violation)
print()

for c in target:
    print(f"induced sub-model on {''.join(c)}: {classify(induced_submodel(e, c))}")
print()

# The canonical candidate is the largest possible one, but a smaller
# choice of supports can still be compatible.
f = find_extension(e, target)
print("exhaustive search over sub-supports finds an extension:")
print(render_table(f))
print("it marginalizes back to the original model:", is_extension(f, e))
