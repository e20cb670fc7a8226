"""JSON/text report documents, the worked-example check table and the random sweep."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .densekernel import sort_spectrum, sym_eigen
from .generators import paper_example, random_sym_with_inertia
from .homotopy import DEFAULT_STEPS, HomotopyTrajectory, trace
from .mmio import fmt12
from .pencil import DEFAULT_REAL_TOL, verify_lemma
from .splitting import contractivity_report

__all__ = [
    "SCHEMA_VERSION",
    "build_report",
    "dumps",
    "render_text",
    "trajectory_csv",
    "CheckRow",
    "paper_example_checks",
    "render_checks",
    "sweep",
    "sweep_case",
    "report_violations",
    "render_sweep_text",
]

SCHEMA_VERSION = "1"

# Values printed in the worked example.
PRINTED_LAMBDA_A = (-0.4553, -0.0346, 0.3949, 0.4560, 0.6791)
PRINTED_LAMBDA_M = (-0.1464, -0.1216, -0.0252, 0.5174, 0.9258)
PRINTED_LAMBDA_PENCIL = (-2.4405, -0.2468, -0.0506, 1.7245 - 0.8315j, 1.7245 + 0.8315j)
PRINTED_THETA_HAT = (0.2907, 0.8021, 0.9518)
PRINTED_COUNTS = {"p": 3, "n": 2, "r": -1, "s": 1, "t": 0}


def _round12(obj):
    """Recursively round floats to 12 significant digits for stable serialization."""
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(fmt12(obj))
        return 0.0 if v == 0.0 else v
    return obj


def dumps(doc) -> str:
    """Deterministic JSON: sorted keys, 12 significant digits, trailing newline."""
    return json.dumps(_round12(doc), sort_keys=True, indent=2) + "\n"


def build_report(A, M, inputs, steps: int = DEFAULT_STEPS, zero_tol=None,
                 real_tol: float = DEFAULT_REAL_TOL, trajectories=None) -> dict:
    """Full diagnostic report for one (A, M) pair as a schema-v1 dict.

    ``trajectories`` may carry precomputed ``(kind T, kind S)`` traces.
    """
    split = contractivity_report(A, M, real_tol, zero_tol)
    cls = split.classification
    counts = split.count_report
    lemma = verify_lemma(A, M, real_tol, classification=cls, zero_tol=zero_tol)
    if trajectories is None:
        trajectories = (trace(A, M, "T", steps, zero_tol), trace(A, M, "S", steps, zero_tol))
    tr_t, tr_s = trajectories
    return {
        "schemaVersion": SCHEMA_VERSION,
        "inputs": inputs,
        "inertiaA": split.inertia_a.as_dict(),
        "inertiaM": split.inertia_m.as_dict(),
        "r": counts.r,
        "s": counts.s,
        "t": counts.t,
        "negativeRealEigenvalues": [float(x) for x in cls.negative_real],
        "positiveRealEigenvalues": [float(x) for x in cls.positive_real],
        "complexPairs": [{"re": float(z.real), "im": float(z.imag)} for z in cls.complex_pairs],
        "crossingsT": [float(x) for x in tr_t.theta_hats],
        "crossingsS": [float(x) for x in tr_s.theta_hats],
        "spectralRadius": split.spectral_radius,
        "contractive": split.contractive,
        "lemmaConsistent": lemma.lemma_consistent,
        "propositionHolds": counts.proposition_holds,
        "corollaryHolds": counts.corollary_holds,
    }


def _yn(flag) -> str:
    return "yes" if flag else "no"


def _list(values) -> str:
    return ", ".join(fmt12(v) for v in values) if values else "(none)"


def render_text(doc: dict) -> str:
    ia, im = doc["inertiaA"], doc["inertiaM"]
    pairs = [f"{fmt12(z['re'])} +- {fmt12(z['im'])}i" for z in doc["complexPairs"]]
    lines = [
        f"inputs: {json.dumps(doc['inputs'], sort_keys=True)}",
        f"inertia(A) = ({ia['p']}, {ia['z']}, {ia['n']})",
        f"inertia(M) = ({im['p']}, {im['z']}, {im['n']})",
        f"r = {doc['r']}, s = {doc['s']}, t = {doc['t']}",
        f"negative real eigenvalues of M^-1 A: {_list(doc['negativeRealEigenvalues'])}",
        f"positive real eigenvalues of M^-1 A: {_list(doc['positiveRealEigenvalues'])}",
        f"complex pairs: {', '.join(pairs) if pairs else '(none)'}",
        f"kind T crossings: {_list(doc['crossingsT'])}",
        f"kind S crossings: {_list(doc['crossingsS'])}",
        f"spectral radius of I - M^-1 A: {fmt12(doc['spectralRadius'])}",
        f"contractive: {_yn(doc['contractive'])}",
        f"lemma consistent: {_yn(doc['lemmaConsistent'])}",
        f"proposition holds: {_yn(doc['propositionHolds'])}",
        f"corollary holds: {_yn(doc['corollaryHolds'])}",
    ]
    return "\n".join(lines) + "\n"


def trajectory_csv(tr: HomotopyTrajectory) -> str:
    """``theta,lambda_1,...,lambda_n`` rows followed by ``# crossing theta=...`` comments."""
    n = tr.curves.shape[1]
    out = ["theta," + ",".join(f"lambda_{i + 1}" for i in range(n))]
    for theta, row in zip(tr.theta_grid, tr.curves):
        out.append(",".join([fmt12(theta)] + [fmt12(v) for v in row]))
    for c in tr.crossings:
        out.append(f"# crossing theta={fmt12(c.theta_hat)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# worked example


@dataclass(frozen=True)
class CheckRow:
    """One line of the worked-example table.

    ``kind`` is "value" or "count" for rows that decide the exit status and
    "note" for informational rows.
    """

    name: str
    kind: str
    printed: object
    computed: object
    passed: bool

    @property
    def decisive(self) -> bool:
        return self.kind != "note"


def _close(a, b, tol) -> bool:
    a, b = complex(a), complex(b)
    return abs(a.real - b.real) <= tol and abs(a.imag - b.imag) <= tol


def paper_example_checks(tol: float = 1e-3, steps: int = DEFAULT_STEPS):
    """Recompute every quantity printed in the worked example and compare.

    Decisive rows follow the printed labels: eigenvalues of A and M, the
    listed spectrum as eigenvalues of ``M^{-1} A``, ``1 - theta_hat`` for the
    kind-T crossings, the inertia counts and the crossing counts. Note rows
    compare the same printed numbers under the reading in which they agree
    with the matrices: the listed spectrum against the reciprocals of
    ``eig(M^{-1} A)``, i.e. ``eig(A^{-1} M)``, and the printed
    ``theta_hat`` against the crossings directly.
    """
    a, m = paper_example()
    rows = []
    lam_a = sym_eigen(a).eigenvalues
    lam_m = sym_eigen(m).eigenvalues
    for i, (want, got) in enumerate(zip(PRINTED_LAMBDA_A, lam_a), 1):
        rows.append(CheckRow(f"lambda_A[{i}]", "value", want, float(got), _close(want, got, tol)))
    for i, (want, got) in enumerate(zip(PRINTED_LAMBDA_M, lam_m), 1):
        rows.append(CheckRow(f"lambda_M[{i}]", "value", want, float(got), _close(want, got, tol)))

    split = contractivity_report(a, m)
    spectrum = split.classification.spectrum.eigenvalues
    for i, (want, got) in enumerate(zip(PRINTED_LAMBDA_PENCIL, spectrum), 1):
        rows.append(CheckRow(f"lambda_M^-1A[{i}]", "value", want, complex(got), _close(want, got, tol)))

    tr_t = trace(a, m, "T", steps)
    tr_s = trace(a, m, "S", steps)
    complements = np.sort(1.0 - tr_t.theta_hats)
    for i, want in enumerate(PRINTED_THETA_HAT, 1):
        got = float(complements[i - 1]) if i <= len(complements) else float("nan")
        rows.append(CheckRow(f"1-theta_hat[{i}]", "value", want, got, _close(want, got, tol)))

    counts = split.count_report
    computed = {"p": counts.p, "n": counts.n, "r": counts.r, "s": counts.s, "t": counts.t}
    rows.append(CheckRow("crossings T", "count", 3, tr_t.crossing_count, tr_t.crossing_count == 3))
    rows.append(CheckRow("crossings S", "count", 0, tr_s.crossing_count, tr_s.crossing_count == 0))
    for key, want in PRINTED_COUNTS.items():
        rows.append(CheckRow(key, "count", want, computed[key], computed[key] == want))

    recip = sort_spectrum(1.0 / spectrum)
    for i, (want, got) in enumerate(zip(PRINTED_LAMBDA_PENCIL, recip), 1):
        rows.append(CheckRow(f"1/lambda_M^-1A[{i}]", "note", want, complex(got), _close(want, got, tol)))
    thetas = np.sort(tr_t.theta_hats)
    for i, want in enumerate(PRINTED_THETA_HAT, 1):
        got = float(thetas[i - 1]) if i <= len(thetas) else float("nan")
        rows.append(CheckRow(f"theta_hat[{i}]", "note", want, got, _close(want, got, tol)))
    return rows


def _show(v) -> str:
    if isinstance(v, complex) and v.imag == 0.0:
        return fmt12(v.real)
    if isinstance(v, complex):
        return f"{fmt12(v.real)}{'+' if v.imag >= 0 else '-'}{fmt12(abs(v.imag))}i"
    if isinstance(v, float):
        return fmt12(v)
    return str(v)


def render_checks(rows, tol: float) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"worked example, tolerance {fmt12(tol)}"]
    lines.append(f"{'quantity':<{width}}  {'printed':>22}  {'computed':>30}  result")
    for r in rows:
        verdict = "PASS" if r.passed else "FAIL"
        if not r.decisive:
            verdict = f"({verdict.lower()}, note)"
        lines.append(f"{r.name:<{width}}  {_show(r.printed):>22}  {_show(r.computed):>30}  {verdict}")
    decisive = [r for r in rows if r.decisive]
    failed = sum(not r.passed for r in decisive)
    lines.append(f"{len(decisive) - failed}/{len(decisive)} checks passed")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# random sweep


def sweep_case(dim: int, index: int, seed: int, mismatch_only: bool = False):
    """Deterministic random (A, M) pair for one sweep case plus its descriptor."""
    rng = np.random.default_rng([seed, dim, index])
    p_a = int(rng.integers(0, dim + 1))
    p_m = int(rng.integers(0, dim + 1))
    while mismatch_only and p_m == p_a:
        p_m = int(rng.integers(0, dim + 1))
    seed_a, seed_m = (int(x) for x in rng.integers(0, 2**63 - 1, size=2))
    a = random_sym_with_inertia(p_a, dim - p_a, seed_a)
    m = random_sym_with_inertia(p_m, dim - p_m, seed_m)
    desc = {
        "generator": "random_sym_with_inertia",
        "dim": dim,
        "case": index,
        "seed": seed,
        "pA": p_a,
        "pM": p_m,
        "seedA": seed_a,
        "seedM": seed_m,
    }
    return a, m, desc


def report_violations(doc: dict, mismatch_only: bool = False) -> list:
    """Names of the theory checks a report fails; empty for a consistent report."""
    bad = []
    for key in ("lemmaConsistent", "propositionHolds", "corollaryHolds"):
        if not doc[key]:
            bad.append(key)
    if len(doc["crossingsT"]) != len(doc["negativeRealEigenvalues"]):
        bad.append("crossingsT")
    if len(doc["crossingsS"]) != len(doc["positiveRealEigenvalues"]):
        bad.append("crossingsS")
    if doc["inertiaA"] != doc["inertiaM"] and doc["contractive"]:
        bad.append("contractive")
    if mismatch_only and doc["inertiaA"] == doc["inertiaM"]:
        bad.append("inertiaMatch")
    return bad


def sweep(dims, count: int, seed: int, mismatch_only: bool = False, steps: int = DEFAULT_STEPS) -> dict:
    """Run ``count`` random cases per dimension and tally theory violations."""
    reports = []
    tally = {"cases": 0, "lemmaConsistent": 0, "propositionHolds": 0, "corollaryHolds": 0,
             "contractive": 0, "violations": 0}
    for dim in dims:
        for index in range(count):
            a, m, desc = sweep_case(dim, index, seed, mismatch_only)
            doc = build_report(a, m, desc, steps=steps)
            bad = report_violations(doc, mismatch_only)
            doc_out = dict(doc, violations=bad)
            reports.append(doc_out)
            tally["cases"] += 1
            for key in ("lemmaConsistent", "propositionHolds", "corollaryHolds", "contractive"):
                tally[key] += int(bool(doc[key]))
            tally["violations"] += int(bool(bad))
    return {
        "schemaVersion": SCHEMA_VERSION,
        "parameters": {"dims": list(dims), "count": count, "seed": seed,
                       "mismatchOnly": mismatch_only, "steps": steps},
        "reports": reports,
        "summary": tally,
    }


def render_sweep_text(result: dict) -> str:
    s = result["summary"]
    lines = []
    for doc in result["reports"]:
        inp = doc["inputs"]
        flag = "ok" if not doc["violations"] else "VIOLATION " + ",".join(doc["violations"])
        lines.append(
            f"dim {inp['dim']} case {inp['case']}: inertia A {tuple(doc['inertiaA'].values())} "
            f"M {tuple(doc['inertiaM'].values())} neg {len(doc['negativeRealEigenvalues'])} "
            f"pos {len(doc['positiveRealEigenvalues'])} rho {fmt12(doc['spectralRadius'])} {flag}"
        )
    lines.append(f"cases: {s['cases']}")
    for key in ("lemmaConsistent", "propositionHolds", "corollaryHolds", "contractive"):
        lines.append(f"{key}: {s[key]}/{s['cases']}")
    lines.append(f"violations: {s['violations']}")
    return "\n".join(lines) + "\n"
