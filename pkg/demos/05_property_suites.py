"""Run the seeded property suites and show a replayable failure record.

Run: python demos/05_property_suites.py
"""

import json

from relspec import io as rio
from relspec import spectra, verify

for name in verify.suite_names():
    if name.startswith("thm_4_4"):
        continue  # about a minute; use the CLI for that one
    rep = verify.run_suite(name, seed=0, trials=20)
    print(f"{name:40s} passed={rep.passed} max_residual={rep.max_residual:.2e}")

# Every failure stores its inputs in the JSON schema, so a single case can be
# replayed without the generator.
T = verify.gen_relation(42, 4, "with_mv_part")
record = {"T": rio.relation_to_dict(T), "lambda": [0.5, 0.0]}
replayed = rio.relation_from_dict(json.loads(json.dumps(record))["T"])
print("replayed classification:", spectra.classify_point(replayed, 0.5).fredholm.to_dict())
