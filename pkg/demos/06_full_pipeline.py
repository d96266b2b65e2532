"""The full certification ladder, end to end.

run_pipeline executes parity -> lattice -> rational cone -> thickness ->
non-negative integer -> simple quadratic -> flat quadratic, attaching a
machine-verifiable certificate to every verdict.  Reports serialize to
JSON and re-verify from the serialized form alone.
"""

import json

from pegcert import engine
from pegcert.problem import parse_problem

# A problem that defeats every stage: remove a single corner peg net of
# nothing (delta is one unit vector).
pr = parse_problem("oo.\n---\n.o.\n")
report = engine.run_pipeline(pr, engine.PipelineConfig(full_ladder=True))
print(f"overall: {report.status}")
for stage, verdict in report.verdicts.items():
    cert = verdict.certificate["type"] if verdict.certificate else "-"
    print(f"  {stage:12s} {verdict.status:6s} certificate: {cert}")

# Serialize, reload, re-verify: the certificates stand on their own.
data = json.dumps(report.to_json())
back = engine.Report.from_json(json.loads(data))
print("round-tripped report verifies:", engine.verify_certificate(back))

# A feasible problem sails through, and the exhaustive oracle agrees.
ok = parse_problem("oo.\n---\n..o\n")
print("feasible problem:", engine.run_pipeline(
    ok, engine.PipelineConfig(full_ladder=True)).status,
    "| oracle:", engine.oracle_feasible(ok).status)
