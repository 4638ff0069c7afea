"""The contextual triangle, its two-site Bell model, and the PR boxes inside it.

Run: python demos/01_triangle_and_pr_boxes.py
"""
from sheafext import catalog
from sheafext.bell import bellify
from sheafext.fileformat import render_table
from sheafext.model import induced_submodel
from sheafext.solver import classify, consistent_globals

triangle = catalog.load("triangle")
print("Kochen-Specker model on the cover {AB, BC, CA}:")
print(render_table(triangle))
print("consistent global assignments:", consistent_globals(triangle))
print("class:", classify(triangle))
print()

# Each pair of measurements must disagree, which no 0/1 labelling of three
# points can satisfy.  Extending to the 2-subset cover changes nothing here,
# and the Bell construction splits every context across two sites.
result = bellify(triangle)
print(f"extension status: {result.extension.status}; sites: {result.structure.sites}")
print(render_table(result.model))
print("class of the Bell model:", classify(result.model))
print()

for keep in (["A@1", "B@1", "A@2", "C@2"],
             ["B@1", "C@1", "A@2", "B@2"],
             ["B@1", "C@1", "A@2", "C@2"]):
    sub = induced_submodel(result.model, keep)
    print(f"sub-model on {keep}: {classify(sub)}")
    print(render_table(sub))
