"""Reproducible verification runs with machine-readable reports.

Each command computes a finite family of exact certificates and wraps them in
a RunReport: what was asked, what was computed, at which q- and p-adic
precision, and an aggregate status. A report never asserts anything beyond
the index range it actually computed; negative findings are recorded as
witness entries with the observed failure index. Certificates embed the
coefficient valuations they were judged on, so a reloaded report can be
re-checked without redoing the modular-form arithmetic (revalidate_report).
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from ._rational import INF, QQ, is_prime, rational_from_str, rational_to_str
from .classical import dim_weight, eisenstein_series
from .errors import InvalidWeight, ResourceBudgetExceeded, UnsupportedPrime
from .family import eis_ratio, estar_family
from .katz import (
    certify_rate,
    hauptmodul_valuations,
    katz_split_classical,
    katz_split_function,
)
from .recurrence import delta_p
from .series import apply_V, qs_div, qs_reduce_mod

STATUS_CERTIFIED = "certified"
STATUS_FAILED = "failed"
STATUS_INCONCLUSIVE = "inconclusive"


def _val_str(v):
    return "inf" if v == INF else str(int(v))


def _val_parse(s):
    return INF if s == "inf" else int(s)


def qprec_for_split(p, max_index, margin=8):
    """q-adic precision comfortably past the last coefficient window."""
    return dim_weight((max_index + 1) * (p - 1))[0] + margin


@dataclass
class RunReport:
    command: str
    parameters: dict
    results: list
    provenance: dict
    status: str
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "results": self.results,
            "provenance": self.provenance,
            "status": self.status,
            "wall_time": self.wall_time,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def certificate_entry(label, role, ke, cert, *, expected=None, note=None):
    """Report entry for one rate certificate, valuations embedded.

    role "claim" feeds the aggregate status; role "witness" is informational
    unless an expectation is attached (then a mismatch fails the report).
    """
    entry = {
        "kind": "certificate",
        "label": label,
        "role": role,
        "certificate": cert.to_json(),
        "valuations": [
            [t.index, _val_str(t.val), bool(t.structural_zero)] for t in ke.terms
        ],
        "pprec": _val_str(ke.effective_pprec),
    }
    if note is not None:
        entry["note"] = note
    if expected is not None:
        entry["expected"] = dict(expected)
        entry["matches_expected"] = all(
            entry["certificate"].get(key) == want for key, want in expected.items()
        )
    return entry


def _rate_label(rho, c):
    c = QQ(c)
    if c == 0:
        return "rate %s, no offset" % rational_to_str(rho)
    return "rate %s, offset %s" % (rational_to_str(rho), rational_to_str(c))


def comparison_entry(label, computed, published, *, note=None):
    entry = {
        "kind": "comparison",
        "label": label,
        "role": "claim",
        "computed": computed,
        "published": published,
        "matches": computed == published,
    }
    if note is not None:
        entry["note"] = note
    return entry


def aggregate_status(results) -> str:
    """failed > inconclusive > certified, judged on claims and pinned witnesses."""
    saw_inconclusive = False
    for entry in results:
        if entry.get("matches_expected") is False:
            return STATUS_FAILED
        if entry.get("role") != "claim":
            continue
        if entry["kind"] == "comparison":
            if not entry["matches"]:
                return STATUS_FAILED
        elif entry["kind"] == "certificate":
            cert = entry["certificate"]
            if cert["first_failure"] is not None:
                return STATUS_FAILED
            if "inconclusive" in cert["verdicts"]:
                saw_inconclusive = True
    return STATUS_INCONCLUSIVE if saw_inconclusive else STATUS_CERTIFIED


def revalidate_report(report) -> bool:
    """Recheck every embedded certificate against its stored valuations.

    Takes a report dict (RunReport.to_json output or a json.load of it) and
    recomputes each per-index verdict from the stored valuation, threshold
    rho*i - c, and working precision. True iff everything agrees.
    """
    if isinstance(report, RunReport):
        report = report.to_json()
    for entry in report["results"]:
        if entry.get("kind") != "certificate":
            continue
        cert = entry["certificate"]
        rho = rational_from_str(cert["rho"])
        c = rational_from_str(cert["c"])
        pprec = _val_parse(entry["pprec"])
        redone = []
        first_failure = None
        for idx, val_s, structural in entry["valuations"]:
            threshold = rho * idx - c
            if structural:
                verdict = "pass"
            elif threshold >= pprec:
                verdict = "inconclusive"
            elif _val_parse(val_s) >= threshold:
                verdict = "pass"
            else:
                verdict = "fail"
            if verdict == "fail" and first_failure is None:
                first_failure = idx
            redone.append(verdict)
        if redone != cert["verdicts"]:
            return False
        if first_failure != cert["first_failure"]:
            return False
        if len(redone) != cert["max_index"] + 1:
            return False
    return True


def _finish(command, parameters, results, provenance, started) -> RunReport:
    return RunReport(
        command=command,
        parameters=parameters,
        results=results,
        provenance=provenance,
        status=aggregate_status(results),
        wall_time=time.perf_counter() - started,
    )


# -- the Condition ----------------------------------------------------------


def _condition_entry(args):
    n, p = args
    N = qprec_for_split(p, n)
    E = eisenstein_series(n * (p - 1), N)
    ke = katz_split_classical(E, n, p)
    cert = certify_rate(ke, QQ(p, p + 1), 0)
    return certificate_entry("n=%d" % n, "claim", ke, cert)


def cmd_check_condition(p, max_n=None, *, jobs=1, budget_seconds=None) -> RunReport:
    """Certify v_p(b_i) >= pi/(p+1) for the splits of E_{n(p-1)}, n = 1..p.

    Every n gets a complete verdict list; if the time budget runs out the run
    raises ResourceBudgetExceeded instead of reporting a truncated sweep.
    """
    started = time.perf_counter()
    if not is_prime(p) or p < 5:
        raise UnsupportedPrime("need a prime p >= 5, got %r" % (p,))
    if max_n is None:
        max_n = p
    targets = [(n, p) for n in range(1, max_n + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_condition_entry, targets))
        if budget_seconds is not None:
            if time.perf_counter() - started > budget_seconds:
                raise ResourceBudgetExceeded(
                    "condition sweep for p=%d exceeded %gs" % (p, budget_seconds)
                )
    else:
        results = []
        for target in targets:
            if budget_seconds is not None:
                if time.perf_counter() - started > budget_seconds:
                    raise ResourceBudgetExceeded(
                        "condition sweep for p=%d exceeded %gs after n=%d"
                        % (p, budget_seconds, target[0] - 1)
                    )
            results.append(_condition_entry(target))
    results.sort(key=lambda e: int(e["label"][2:]))
    provenance = {
        "qprec": qprec_for_split(p, max_n),
        "pprec": "inf",
        "max_index": max_n,
    }
    return _finish(
        "check-condition", {"prime": p, "max_n": max_n}, results, provenance, started
    )


def cmd_check_condition_extended(
    max_prime=97, *, jobs=1, budget_seconds=None
) -> RunReport:
    """Run the full condition sweep for every prime 5 <= p <= max_prime."""
    started = time.perf_counter()
    results = []
    qprec = 0
    primes = [p for p in range(5, max_prime + 1) if is_prime(p)]
    if not primes:
        raise UnsupportedPrime("no primes in [5, %d]" % max_prime)
    for p in primes:
        remaining = None
        if budget_seconds is not None:
            remaining = budget_seconds - (time.perf_counter() - started)
            if remaining <= 0:
                raise ResourceBudgetExceeded(
                    "extended sweep exceeded %gs before p=%d" % (budget_seconds, p)
                )
        sub = cmd_check_condition(p, jobs=jobs, budget_seconds=remaining)
        for entry in sub.results:
            entry["label"] = "p=%d, %s" % (p, entry["label"])
            results.append(entry)
        qprec = max(qprec, sub.provenance["qprec"])
    provenance = {"qprec": qprec, "pprec": "inf", "max_index": primes[-1]}
    return _finish(
        "check-condition",
        {"extended": True, "max_prime": max_prime},
        results, provenance, started,
    )


# -- worked examples at p = 5 ----------------------------------------------

_C1 = "-340364160000/236364091"
_C2 = "30710845440000/236364091"
_T_VALS_24 = [0, 1, 1, 3, 3, 4, 4, 5, 5, 6, 4]


def cmd_reproduce_examples() -> RunReport:
    """Replay the p = 5 weight-24 computations against their published values.

    Positive side: the two window coordinates of the split of E_24 and the
    valuations v_5(b_3) = v_5(b_6) = 4. Negative side: the split of e_6 fails
    the offsetless 5/6 rate exactly at index 6, and the hauptmodul expansion
    of V(E_24)/E_24 dips to valuation 4 at t^10, below the ceil(j/2) floor
    that membership at rate 1/6 would force on those coefficients.
    """
    started = time.perf_counter()
    p = 5
    N = qprec_for_split(p, 6)
    E24 = eisenstein_series(24, N)
    ke = katz_split_classical(E24, 6, p)
    results = [
        comparison_entry(
            "window coordinate of b_3",
            rational_to_str(ke.term(3).miller_coords[0]),
            _C1,
        ),
        comparison_entry(
            "window coordinate of b_6",
            rational_to_str(ke.term(6).miller_coords[0]),
            _C2,
        ),
        comparison_entry(
            "valuations v_5(b_3), v_5(b_6)",
            [_val_str(ke.term(3).val), _val_str(ke.term(6).val)],
            ["4", "4"],
        ),
    ]
    cert_sharp = certify_rate(ke, QQ(p, p + 1), 0)
    results.append(
        certificate_entry(
            "split of E_24, " + _rate_label(QQ(5, 6), 0),
            "witness",
            ke,
            cert_sharp,
            expected={"first_failure": 6},
            note="sharp rate fails exactly at the top index; offset 1 repairs it",
        )
    )
    cert_offset = certify_rate(ke, QQ(p, p + 1), 1)
    results.append(
        certificate_entry(
            "split of E_24, " + _rate_label(QQ(5, 6), 1), "claim", ke, cert_offset
        )
    )
    ratio = qs_div(apply_V(E24, p), E24)
    t_vals = hauptmodul_valuations(ratio, p, len(_T_VALS_24))
    results.append(
        comparison_entry(
            "hauptmodul valuations of V(E_24)/E_24",
            [_val_str(v) for v in t_vals],
            [str(v) for v in _T_VALS_24],
            note=(
                "valuation 4 at t^10 is below the floor 5 required at rate "
                "1/6, so V(E_24)/E_24 is not overconvergent at that rate"
            ),
        )
    )
    violations = [
        j for j, v in enumerate(t_vals) if v != INF and QQ(v) < QQ(j, 2)
    ]
    results.append(
        comparison_entry(
            "first hauptmodul floor violation at rate 1/6",
            violations[0] if violations else None,
            10,
        )
    )
    provenance = {"qprec": N, "pprec": "inf", "max_index": 6}
    return _finish("reproduce-examples", {"prime": p}, results, provenance, started)


# -- theorem-shaped claims --------------------------------------------------


def _split_exact(f, p, max_index):
    return katz_split_function(f, p, max_index)


def _vratio(g, p):
    return qs_div(apply_V(g, p), g)


def _family_ratio(s, p, max_index, pprec):
    N = max(50, qprec_for_split(p, max_index))
    member = estar_family(s, p, N, pprec)
    g = member.series
    f = qs_reduce_mod(_vratio(g, p), p ** pprec)
    ke = katz_split_function(f, p, max_index, pprec=pprec)
    return ke, N, member


def cmd_verify_theorem(
    theorem, p, max_index, *, s=None, k=None, n=None, pprec=4
) -> RunReport:
    """Certify one theorem-shaped overconvergence statement up to max_index.

    theorem selects the target and the claimed rates:
      "A"  V(g)/g for the weight-0 Eisenstein family member at s (default 1),
           computed mod p^pprec; rates (1/(p+1), 1) and ((2/3)/(p+1), 0).
      "B"  V(E_k)/E_k for classical weight k (requires --k, (p-1) | k);
           same rates, plus a sharp offsetless witness and, for p in
           {5, 7, 13}, the hauptmodul valuation floor as a second witness.
      "C"  e_n and its unit-root counterpart (requires --n); rates
           (p/(p+1), 1) and ((2p/3)/(p+1), 0), plus a sharp witness on e_n.
      "E"  the digit-sum-gated sharp rates: --n needs delta_p(n(p-1)) = p-1
           and claims (p/(p+1), 0) on e_n; --k needs delta_p(k) = p-1 and
           claims (1/(p+1), 0) on V(E_k)/E_k.
      "F"  the complementary family gate: --s needs delta_p(s) < p-1 and
           claims (1/(p+1), 0) on V(g)/g mod p^pprec.
    """
    started = time.perf_counter()
    theorem = theorem.upper()
    if not is_prime(p) or p < 5:
        raise UnsupportedPrime("need a prime p >= 5, got %r" % (p,))
    if max_index < 0:
        raise ValueError("max_index must be >= 0")
    results = []
    qprec = None
    pprec_out = "inf"
    parameters = {"theorem": theorem, "prime": p, "max_index": max_index}

    if theorem == "A":
        s = 1 if s is None else s
        parameters["s"] = s
        parameters["pprec"] = pprec
        ke, qprec, _member = _family_ratio(s, p, max_index, pprec)
        pprec_out = str(pprec)
        label = "V(g)/g for the weight-0 family member at s=%d mod %d^%d" % (s, p, pprec)
        for rho, c in ((QQ(1, p + 1), 1), (QQ(2, 3 * (p + 1)), 0)):
            results.append(
                certificate_entry(
                    label + ", " + _rate_label(rho, c),
                    "claim", ke, certify_rate(ke, rho, c),
                )
            )
    elif theorem == "B":
        if k is None:
            raise ValueError("theorem B needs a classical weight k")
        if k < 4 or k % (p - 1) != 0:
            raise InvalidWeight("theorem B needs k >= 4 divisible by %d" % (p - 1))
        parameters["k"] = k
        qprec = qprec_for_split(p, max_index)
        f = _vratio(eisenstein_series(k, qprec), p)
        ke = _split_exact(f, p, max_index)
        label = "V(E_%d)/E_%d" % (k, k)
        for rho, c in ((QQ(1, p + 1), 1), (QQ(2, 3 * (p + 1)), 0)):
            results.append(
                certificate_entry(
                    label + ", " + _rate_label(rho, c),
                    "claim", ke, certify_rate(ke, rho, c),
                )
            )
        results.append(
            certificate_entry(
                label + ", sharp " + _rate_label(QQ(1, p + 1), 0),
                "witness", ke, certify_rate(ke, QQ(1, p + 1), 0),
                note="sharpness probe; a failure here does not touch the claims",
            )
        )
        if p in (5, 7, 13):
            terms = 2 * max_index // (p + 1) + 1
            t_vals = hauptmodul_valuations(f, p, terms)
            floor = [rational_to_str(QQ(j, 2)) for j in range(terms)]
            bad = [
                j
                for j, v in enumerate(t_vals)
                if v != INF and QQ(v) < QQ(j, 2)
            ]
            results.append(
                {
                    "kind": "hauptmodul",
                    "label": label + " in the hauptmodul coordinate",
                    "role": "witness",
                    "valuations": [_val_str(v) for v in t_vals],
                    "floor_at_sharp_rate": floor,
                    "first_floor_violation": bad[0] if bad else None,
                    "note": (
                        "membership at rate 1/%d would force the floor on "
                        "every listed coefficient" % (p + 1)
                    ),
                }
            )
    elif theorem == "C":
        if n is None:
            raise ValueError("theorem C needs an index n")
        parameters["n"] = n
        qprec = max(qprec_for_split(p, max_index), qprec_for_split(p, n))
        e_n, estar_n = eis_ratio(n, p, qprec)
        targets = (
            (e_n, "e_%d" % n, True),
            (estar_n, "unit-root e*_%d" % n, False),
        )
        for g, name, with_witness in targets:
            ke = _split_exact(g, p, max_index)
            for rho, c in ((QQ(p, p + 1), 1), (QQ(2 * p, 3 * (p + 1)), 0)):
                results.append(
                    certificate_entry(
                        name + ", " + _rate_label(rho, c),
                        "claim", ke, certify_rate(ke, rho, c),
                    )
                )
            if with_witness:
                results.append(
                    certificate_entry(
                        name + ", sharp " + _rate_label(QQ(p, p + 1), 0),
                        "witness", ke, certify_rate(ke, QQ(p, p + 1), 0),
                        note="sharpness probe at the top index",
                    )
                )
    elif theorem == "E":
        if (n is None) == (k is None):
            raise ValueError("theorem E needs exactly one of n or k")
        if n is not None:
            gate = delta_p(n * (p - 1), p)
            if gate != p - 1:
                raise InvalidWeight(
                    "digit sum of n(p-1) is %d, need %d" % (gate, p - 1)
                )
            parameters["n"] = n
            qprec = max(qprec_for_split(p, max_index), qprec_for_split(p, n))
            e_n, _ = eis_ratio(n, p, qprec)
            ke = _split_exact(e_n, p, max_index)
            results.append(
                certificate_entry(
                    "e_%d, sharp " % n + _rate_label(QQ(p, p + 1), 0),
                    "claim", ke, certify_rate(ke, QQ(p, p + 1), 0),
                )
            )
        else:
            if k < 4 or k % (p - 1) != 0:
                raise InvalidWeight(
                    "theorem E needs k >= 4 divisible by %d" % (p - 1)
                )
            gate = delta_p(k, p)
            if gate != p - 1:
                raise InvalidWeight("digit sum of k is %d, need %d" % (gate, p - 1))
            parameters["k"] = k
            qprec = qprec_for_split(p, max_index)
            f = _vratio(eisenstein_series(k, qprec), p)
            ke = _split_exact(f, p, max_index)
            results.append(
                certificate_entry(
                    "V(E_%d)/E_%d, sharp " % (k, k) + _rate_label(QQ(1, p + 1), 0),
                    "claim", ke, certify_rate(ke, QQ(1, p + 1), 0),
                )
            )
    elif theorem == "F":
        if s is None:
            raise ValueError("theorem F needs a family parameter s")
        gate = delta_p(s, p)
        if gate >= p - 1:
            raise InvalidWeight(
                "digit sum of s is %d, need it below %d" % (gate, p - 1)
            )
        parameters["s"] = s
        parameters["pprec"] = pprec
        ke, qprec, _member = _family_ratio(s, p, max_index, pprec)
        pprec_out = str(pprec)
        results.append(
            certificate_entry(
                "V(g)/g for the family member at s=%d mod %d^%d, sharp "
                % (s, p, pprec) + _rate_label(QQ(1, p + 1), 0),
                "claim", ke, certify_rate(ke, QQ(1, p + 1), 0),
            )
        )
    else:
        raise ValueError("unknown theorem %r" % (theorem,))

    provenance = {"qprec": qprec, "pprec": pprec_out, "max_index": max_index}
    return _finish("verify-theorem", parameters, results, provenance, started)


# -- raw splits and hauptmodul vectors --------------------------------------


def cmd_katz(f, p, max_index, *, rho=None, c=0) -> RunReport:
    """Split a weight-0 q-series and certify one rate (default p/(p+1))."""
    started = time.perf_counter()
    if rho is None:
        rho = QQ(p, p + 1)
    ke = katz_split_function(f, p, max_index)
    cert = certify_rate(ke, rho, c)
    results = [
        certificate_entry(
            "input series, " + _rate_label(rho, c), "claim", ke, cert
        )
    ]
    provenance = {"qprec": f.prec, "pprec": "inf", "max_index": max_index}
    parameters = {
        "prime": p,
        "max_index": max_index,
        "rho": rational_to_str(rho),
        "c": rational_to_str(c),
    }
    return _finish("katz", parameters, results, provenance, started)


def cmd_hauptmodul(p, k, terms) -> RunReport:
    """Valuation vector of V(E_k)/E_k in the genus-zero coordinate at p."""
    started = time.perf_counter()
    if k < 4 or k % 2 != 0:
        raise InvalidWeight("need an even weight k >= 4")
    N = terms + 8
    f = _vratio(eisenstein_series(k, N), p)
    t_vals = hauptmodul_valuations(f, p, terms)
    results = [
        {
            "kind": "hauptmodul",
            "label": "V(E_%d)/E_%d in the hauptmodul coordinate" % (k, k),
            "role": "witness",
            "valuations": [_val_str(v) for v in t_vals],
            "first_floor_violation": None,
            "note": "raw valuation vector; no rate claim attached",
        }
    ]
    provenance = {"qprec": N, "pprec": "inf", "max_index": terms - 1}
    return _finish(
        "hauptmodul", {"prime": p, "weight": k, "terms": terms},
        results, provenance, started,
    )
