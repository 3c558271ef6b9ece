"""
Certifying the coefficient-valuation condition
==============================================

For each n up to p, split E_{n(p-1)} along powers of E_{p-1} and check
v_p(b_i) >= pi/(p+1) at every index. The report layer wraps the sweep with
provenance and an aggregate status; the same thing is available on the
command line as `katzexp check-condition --prime 7`.
"""

import json

from katzexp import cmd_check_condition, revalidate_report

for p in (5, 7):
    report = cmd_check_condition(p)
    print("p = %d: %s in %.2fs" % (p, report.status, report.wall_time))
    for entry in report.results:
        cert = entry["certificate"]
        vals = ["v(b_%d)=%s" % (i, v) for i, v, _ in entry["valuations"]]
        print("  %s rate %s: %s" % (entry["label"], cert["rho"], "  ".join(vals)))

# reports survive a JSON round trip and re-verify from embedded valuations
payload = json.loads(report.dumps())
print("reloaded report revalidates:", revalidate_report(payload))
