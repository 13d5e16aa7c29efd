# # Structural checks over a corpus
#
# Each check scans a corpus and lists violations with enough detail to
# reproduce them.  An empty violation list is the expected outcome.

from curvlab.lemmas import CHECKS, EXTRA_CHECKS, run_checks

for r in run_checks(CHECKS + EXTRA_CHECKS, n_max=8, samples=5, seed=7):
    state = "ok" if r.passed else "VIOLATED"
    notes = {k: v for k, v in r.notes.items() if not isinstance(v, list)}
    print(f"{r.lemma:<15} {state:<8} {r.instances:>6} instances {r.seconds:5.1f}s  {notes}")
