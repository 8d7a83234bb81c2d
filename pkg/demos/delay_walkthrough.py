"""Transition systems closed through a unit delay.

Run with ``python demos/delay_walkthrough.py``.
"""

from feedkit import delay_feedback, refine_prefix
from feedkit.cli import load_model_text
from feedkit.dsl import parse_model
from feedkit.sts import always, runs

m = parse_model(load_model_text("delay"))

sem = delay_feedback(m.get("stepsum"), 4)
xs = ((1,), (2,), (0,), (1,))
print("StepSum on", [x for (x,) in xs], "->", [[y for (y,) in ys] for ys in sem.outputs(xs)])

for name in ("r3", "r4"):
    for h in range(1, 5):
        n = len(delay_feedback(m.get(name), h).legal_prefixes)
        print(f"{name}: horizon {h}, {n} legal prefixes of {4 ** h}")

# r4 may restart from the input, so its outputs grow while legality holds
a, b = delay_feedback(m.get("r3"), 3), delay_feedback(m.get("r4"), 3)
print("r3 refines r4 on prefixes:", refine_prefix(b, a))
print("r4 refines r3 on prefixes:", refine_prefix(a, b))

# a failing run stops where the state leaves the bound
for run in runs(m.get("r3"), [(3,), (2,), (1,)]):
    print("run states", [u for (u,) in run.states], "failed" if run.failed else "completed")

# every legal r3 prefix keeps its outputs at or below the bound
r3 = delay_feedback(m.get("r3"), 4)
print("r3 outputs stay within 3:",
      all(always(lambda y: y[0][0] <= 3, ys) for _, ys in r3.io_rel))
