"""From the Peres-Mermin square to a tripartite Bell model.

Run: python demos/04_peres_mermin_bell.py
"""
import itertools

from sheafext import catalog
from sheafext.bell import bell_construction, underline
from sheafext.extension import canonical_extension
from sheafext.fileformat import render_table
from sheafext.model import induced_submodel
from sheafext.scenario import power_cover, tag
from sheafext.solver import classify, is_strongly_contextual

pm = catalog.load("peres-mermin")
print(render_table(pm))
print("class:", classify(pm))

report = canonical_extension(pm, power_cover(pm.scenario.measurements, 3))
print(f"extension to all 84 three-element contexts: {report.status}")
bell, structure = bell_construction(report.model, 3)
print(f"Bell model: {structure.n} sites x {structure.k} measurements, {len(bell.rows)} contexts")

# Give each site one row and one column of the square.
sites = [["A", "B", "C", "D", "G"], ["B", "D", "E", "F", "H"], ["C", "F", "G", "H", "I"]]
sub = induced_submodel(bell, [tag(x, i) for i, s in enumerate(sites, 1) for x in s])
print(f"sub-model on {sites}: {len(sub.rows)} contexts, "
      f"strongly contextual: {is_strongly_contextual(sub)}")
print("rows without full support:")
for c, d in sub.rows.items():
    if len(d.support) < 2 ** len(underline(c)):
        print(" ", " ".join(d.context), sorted("".join(s) for s in d.support))

count = 0
for sigma in itertools.permutations(catalog.PM_ROWS):
    for tau in itertools.permutations(catalog.PM_COLUMNS):
        labels = [tag(x, k + 1) for k in range(3) for x in sorted(set(sigma[k]) | set(tau[k]))]
        count += is_strongly_contextual(induced_submodel(bell, labels))
print(f"strongly non-local (3,5,2) sub-models from row/column assignments: {count}")
