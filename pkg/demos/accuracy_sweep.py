"""Small accuracy sweep over the standard trial configurations.

Run with ``python3 demos/accuracy_sweep.py [trials]``; the default of 2000
trials per configuration takes well under a minute.  The same runs are
available from the command line as ``p3p-bench run``.
"""

# %%
import sys

import numpy as np

from ecp3p.bench import TrialConfig, format_table, run_trials, summarize

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 2000

# %%
header_done = False
for attack in ((0.0, 30.0), (30.0, 60.0)):
    for lift in ((10.0, 20.0), (100.0, 200.0)):
        for tri in ("acute", "obtuse"):
            cfg = TrialConfig(triangle=tri, attack_range=attack, lift_range=lift, trials=trials, seed=7)
            raw = run_trials(cfg, serial=True)
            stats = {m: summarize(m, errs, t) for m, (errs, t) in raw.items()}
            lines = format_table(cfg, stats).splitlines()
            if header_done:
                lines = lines[1:]
            header_done = True
            print("\n".join(lines))

# %%
# means are driven by a handful of bad trials; medians tell the typical story
cfg = TrialConfig(triangle="acute", attack_range=(0.0, 30.0), lift_range=(100.0, 200.0), trials=trials, seed=7)
raw = run_trials(cfg, serial=True)
for m, (errs, _) in raw.items():
    e = np.array([x for x in errs if x >= 0])
    print(f"{m.upper()}: median {np.median(e):.2e}  99th pct {np.percentile(e, 99):.2e}  max {e.max():.2e}")
