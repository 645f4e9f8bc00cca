"""The sprinkler story: how probes vouch for (or refute) a causal model.

A classic five-variable network: the season drives both sprinkler usage
and rain, either of those wets the grass, and wet grass is slippery.
We ask a causal question -- how much does running the sprinkler raise
the probability that the grass is slippery? -- and use two facts nobody
disputes as probes:

  * running the sprinkler makes the grass wetter (positive effect), and
  * wet grass is more slippery (positive effect).

If the discover-then-estimate pipeline reproduces those, its answer for
the target deserves some trust. If it cannot even get the probes right,
the target estimate is not worth much, whatever its value.

Run me:  python3 demos/01_sprinkler_walkthrough.py
"""

from causalprobe import (
    oracle_target_ate,
    report_to_text,
    run_sprinkler_demo,
    shd,
    sprinkler_net,
)

print(__doc__)

print("=" * 72)
print("Step 1: correct domain knowledge")
print("=" * 72)
print()
print("The analyst asserts what a gardener knows: sprinklers and rain")
print("cause wetness (required edges), rain is not caused by sprinklers,")
print("and the season does not wet the grass directly (forbidden edges).")
print()

result = run_sprinkler_demo()
print(report_to_text(result))

truth = oracle_target_ate()
distance = shd(result.discovered, sprinkler_net().graph)
estimate = result.report.target.value
print(f"exact target effect from the generating network: {truth:.4f}")
print(f"estimated from 10,000 samples:                   {estimate:.4f}")
print(f"structural hamming distance to the true graph:   {distance}")
print()
print("Both probes pass (hit rate 1.0) and the structure is recovered")
print("exactly, so the target estimate lands close to the truth.")
print()

print("=" * 72)
print("Step 2: the same analysis with the knowledge flipped")
print("=" * 72)
print()
print("Now every edge constraint is reversed: wetness is declared to")
print("cause sprinkler usage and rain. The data are identical; only the")
print("analyst's assumptions changed.")
print()

flipped = run_sprinkler_demo(flip=True)
print(report_to_text(flipped))

print("The discovered graph has no directed path from sprinkler to")
print("slippery, so the target effect comes back as exactly zero --")
print("a confidently wrong answer. But the probes catch it: the")
print("sprinkler->wet effect also comes back zero and fails its")
print("expectation, dropping the hit rate to 0.5. A low hit rate is")
print("the signal to distrust the target estimate, which is precisely")
print("what quantitative probing is for.")
