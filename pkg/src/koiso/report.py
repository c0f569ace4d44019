"""Constant tables, verification suites, and their table/json/csv renderings.

Every report entry pairs a numerically contracted value with its closed-form
expectation; a report passes when every absolute deviation stays under the
configured tolerance.  Verification output carries no timing so that equal
seeds produce byte-identical machine output.
"""

import csv
import io
import json
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebras import AI, AII, Family, cartan_decomposition, killing_form_ratio, pair_residuals
from .casimir import compute_pair_constants, sandwich_casimir_identity_check
from .closedforms import closed_forms
from .cubics import aux_identity_check, extract_constants, obstruction_polynomials, sigma_tensor
from .matrices import frobenius_norm, random_su
from .rigidity import criticality_variety_agreement, rigidity_verdict
from .roots import (
    freudenthal_eigenvalue,
    so_root_system,
    so_weights,
    sp_root_system,
    sp_weights,
    su_root_system,
    su_weights,
)

__all__ = [
    "SCHEMA_VERSION",
    "FAMILY_BY_NAME",
    "ENTRY_NAMES",
    "ReportEntry",
    "ConstantsReport",
    "SuiteResult",
    "VerificationReport",
    "build_constants_report",
    "run_verification",
    "freudenthal_values",
    "rational_fit",
    "render_constants",
    "render_table",
    "render_verification",
]

SCHEMA_VERSION = 1

FAMILY_BY_NAME = {"so": AI, "sp": AII}
FAMILY_NAME = {AI: "so", AII: "sp"}

# Fixed csv/report column order; also the documented table layout.
ENTRY_NAMES = (
    "dim_k",
    "dim_m",
    "killing_ratio_g",
    "killing_ratio_k",
    "cas_g_def",
    "cas_g_adj",
    "cas_k_def",
    "cas_k_k",
    "cas_k_m",
    "cas_m_def",
    "s_g_g",
    "s_k_k",
    "s_k_m",
    "s_m_k",
    "s_m_m",
    "p_norm",
    "pmmm_norm",
    "pkkm_norm",
    "kappa",
    "lambda1",
    "lambda2",
    "lambda3",
    "lambda4",
    "lambda",
    "lambda_via_l1_l3",
    "psi_coeff",
)


def rational_fit(x: float, max_denominator: int = 10_000, tol: float = 1e-9) -> str:
    """Nearest small-denominator rational, or '' when none fits within tol."""
    frac = Fraction(x).limit_denominator(max_denominator)
    if abs(float(frac) - x) <= tol:
        return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"
    return ""


@dataclass
class ReportEntry:
    name: str
    computed: float
    expected: float
    abs_deviation: float

    def passed(self, tolerance: float) -> bool:
        return self.abs_deviation <= tolerance


@dataclass
class ConstantsReport:
    family: Family
    n: int
    entries: list
    psi_coeff: float
    verdict: object
    elapsed_ms: int
    seed: int
    probes: int
    tolerance: float

    @property
    def status(self) -> str:
        return "PASS" if all(e.passed(self.tolerance) for e in self.entries) else "FAIL"


def build_constants_report(
    family: Family, seed: int = 0, probes: int = 10, tolerance: float = 1e-8
) -> ConstantsReport:
    """Compute every reported constant for one pair and pair it with its closed form."""
    start = time.perf_counter()
    pair = cartan_decomposition(family)
    expected = closed_forms(family)
    pc = compute_pair_constants(pair)
    oc = extract_constants(pair, seed=seed, probes=probes, constants=pc)
    computed = {
        "dim_k": float(len(pair.k_basis)),
        "dim_m": float(len(pair.m_basis)),
        "killing_ratio_g": killing_form_ratio(pair.g_basis),
        "killing_ratio_k": killing_form_ratio(pair.k_basis),
        "cas_g_def": pc.cas_g_def,
        "cas_g_adj": pc.cas_g_adj,
        "cas_k_def": pc.cas_k_def,
        "cas_k_k": pc.cas_k_k,
        "cas_k_m": pc.cas_k_m,
        "cas_m_def": pc.cas_m_def,
        "s_g_g": pc.s_g_g,
        "s_k_k": pc.s_k_k,
        "s_k_m": pc.s_k_m,
        "s_m_k": pc.s_m_k,
        "s_m_m": pc.s_m_m,
        "p_norm": oc.norm_p,
        "pmmm_norm": oc.norm_pmmm,
        "pkkm_norm": oc.norm_pkkm,
        "kappa": oc.kappa,
        "lambda1": oc.lambda1,
        "lambda2": oc.lambda2,
        "lambda3": oc.lambda3,
        "lambda4": oc.lambda4,
        "lambda": oc.lam,
        "lambda_via_l1_l3": oc.lam_alt,
        "psi_coeff": oc.psi_coeff,
    }
    expected = dict(expected)
    expected["lambda"] = expected["lam"]
    expected["lambda_via_l1_l3"] = expected["lam"]
    entries = [
        ReportEntry(name, computed[name], float(expected[name]), abs(computed[name] - float(expected[name])))
        for name in ENTRY_NAMES
    ]
    verdict = rigidity_verdict(family, oc.psi_coeff)
    elapsed_ms = int(round((time.perf_counter() - start) * 1000))
    return ConstantsReport(
        family=family,
        n=family.n,
        entries=entries,
        psi_coeff=oc.psi_coeff,
        verdict=verdict,
        elapsed_ms=elapsed_ms,
        seed=seed,
        probes=probes,
        tolerance=tolerance,
    )


@dataclass
class SuiteResult:
    suite: str
    family: str
    n: int
    max_residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.threshold


@dataclass
class VerificationReport:
    n_min: int
    n_max: int
    seed: int
    probes: int
    tolerance: float
    suites: list

    @property
    def status(self) -> str:
        return "PASS" if all(s.passed for s in self.suites) else "FAIL"


def freudenthal_values(family: Family) -> dict[str, float]:
    n, m = family.n, family.m
    su_rs, su_w = su_root_system(m), su_weights(m)
    if family.tag == AI:
        k_rs, k_w = so_root_system(n), so_weights(n)
        m_weight = k_w["sym2_traceless"]
    else:
        k_rs, k_w = sp_root_system(n), sp_weights(n)
        m_weight = k_w["lambda2_traceless"]
    return {
        "cas_g_def": freudenthal_eigenvalue(su_rs, su_w["defining"]),
        "cas_g_adj": freudenthal_eigenvalue(su_rs, su_w["adjoint"]),
        "cas_k_def": freudenthal_eigenvalue(k_rs, k_w["defining"]),
        "cas_k_k": freudenthal_eigenvalue(k_rs, k_w["adjoint"]),
        "cas_k_m": freudenthal_eigenvalue(k_rs, m_weight),
    }


def _family_suites(family: Family, seed: int, probes: int, tolerance: float) -> list:
    name, n = FAMILY_NAME[family.tag], family.n
    pair = cartan_decomposition(family)
    pc = compute_pair_constants(pair)
    cf = closed_forms(family)
    results = []

    results.append(SuiteResult("pair_structure", name, n, max(pair_residuals(pair).values()), tolerance))

    table_dev = max(
        abs(getattr(pc, key) - float(cf[key]))
        for key in ("cas_g_def", "cas_g_adj", "cas_k_def", "cas_k_k", "cas_k_m", "cas_m_def",
                    "s_g_g", "s_k_k", "s_k_m", "s_m_k", "s_m_m")
    )
    results.append(SuiteResult("casimir_sandwich_table", name, n, table_dev, tolerance))

    killing_dev = max(
        abs(killing_form_ratio(pair.g_basis) - float(cf["killing_ratio_g"])),
        abs(killing_form_ratio(pair.k_basis) - float(cf["killing_ratio_k"])),
    )
    results.append(SuiteResult("killing_ratios", name, n, killing_dev, tolerance))

    ad_values = {
        "cas_g_def": pc.cas_g_def, "cas_g_adj": pc.cas_g_adj,
        "cas_k_def": pc.cas_k_def, "cas_k_k": pc.cas_k_k, "cas_k_m": pc.cas_k_m,
    }
    freudenthal_dev = max(abs(v - ad_values[k]) for k, v in freudenthal_values(family).items())
    results.append(SuiteResult("freudenthal_cross_check", name, n, freudenthal_dev, tolerance))

    rng = np.random.default_rng(seed)
    probe_mats = [random_su(pair.m, rng) for _ in range(probes)]
    sandwich_res = max(
        sandwich_casimir_identity_check(basis, probe_mats) / max(frobenius_norm(a) for a in probe_mats)
        for basis in (pair.g_basis, pair.k_basis)
    )
    results.append(SuiteResult("sandwich_casimir_identity", name, n, sandwich_res, tolerance))

    sig = sigma_tensor(pair)
    aux_res = 0.0
    relation_res = 0.0
    for z in probe_mats:
        scale = max(1.0, frobenius_norm(z) ** 3)
        a1, a2 = aux_identity_check(pair, z, pc)
        aux_res = max(aux_res, a1 / scale, a2 / scale)
        ev = obstruction_polynomials(pair, z, sig)
        relation_res = max(relation_res, abs(2 * ev.r1 + ev.r2) / scale, abs(ev.r1 - ev.r3 - ev.r4) / scale)
    results.append(SuiteResult("aux_identities", name, n, aux_res, tolerance))
    results.append(SuiteResult("r_relations", name, n, relation_res, tolerance))

    oc = extract_constants(pair, seed=seed, probes=probes, constants=pc)
    results.append(SuiteResult("proportionality_spread", name, n, oc.spread, tolerance))
    const_dev = max(
        abs(oc.kappa - float(cf["kappa"])),
        abs(oc.lambda1 - float(cf["lambda1"])),
        abs(oc.lambda3 - float(cf["lambda3"])),
        abs(oc.lam - float(cf["lam"])),
        abs(oc.psi_coeff - float(cf["psi_coeff"])),
    )
    results.append(SuiteResult("constants_closed_form", name, n, const_dev, tolerance * max(1.0, float(-cf["psi_coeff"]))))
    results.append(SuiteResult("lambda_route", name, n, abs(oc.lam - oc.lam_alt), tolerance))

    additivity = abs(oc.norm_pmmm + oc.norm_pkkm - oc.norm_p) / oc.norm_p
    results.append(SuiteResult("norm_additivity", name, n, additivity, tolerance))

    disagreements, _ = criticality_variety_agreement(pair.m, seed=seed, probes=200)
    results.append(SuiteResult("criticality_variety", name, n, float(disagreements), 0.0))
    return results


def run_verification(
    n_min: int,
    n_max: int,
    seed: int = 0,
    probes: int = 10,
    tolerance: float = 1e-8,
    max_terms: int = 10**9,
    threads: int = 1,
) -> VerificationReport:
    """Run every identity suite for both families across the n range.

    Refuses ranges whose largest quadruple contraction would exceed
    max_terms (the dominant cost is dim(m)^4 per probe).
    """
    if probes < 3:
        raise ValueError("probes must be >= 3")
    if not 3 <= n_min <= n_max:
        raise ValueError("need 3 <= n_min <= n_max")
    worst_dim = max(Family(tag, n_max).dim_m for tag in (AI, AII))
    if worst_dim**4 > max_terms:
        raise ResourceWarning(
            f"largest contraction would have {worst_dim**4} terms, above the "
            f"ceiling {max_terms}; raise --max-terms to proceed"
        )
    jobs = [(tag, n) for n in range(n_min, n_max + 1) for tag in (AI, AII)]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda tn: _family_suites(Family(tn[0], tn[1]), seed, probes, tolerance), jobs))
    else:
        chunks = [_family_suites(Family(tag, n), seed, probes, tolerance) for tag, n in jobs]
    suites = [res for chunk in chunks for res in chunk]
    return VerificationReport(n_min, n_max, seed, probes, tolerance, suites)


# ---------------------------------------------------------------------------
# rendering


def _entry_dict(entry: ReportEntry, tolerance: float) -> dict:
    return {
        "name": entry.name,
        "computed": entry.computed,
        "expected": entry.expected,
        "abs_deviation": entry.abs_deviation,
        "rational": rational_fit(entry.computed),
        "pass": entry.passed(tolerance),
    }


def constants_to_dict(report: ConstantsReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "constants",
        "family": FAMILY_NAME[report.family.tag],
        "n": report.n,
        "m": report.family.m,
        "seed": report.seed,
        "probes": report.probes,
        "tolerance": report.tolerance,
        "entries": [_entry_dict(e, report.tolerance) for e in report.entries],
        "psi_coeff": report.psi_coeff,
        "verdict": {
            "verdict": report.verdict.verdict,
            "m": report.verdict.m,
            "variety_trivial": report.verdict.variety_trivial,
            "witness_present": report.verdict.witness is not None,
        },
        "elapsed_ms": report.elapsed_ms,
        "status": report.status,
    }


def verification_to_dict(report: VerificationReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "verify",
        "n_min": report.n_min,
        "n_max": report.n_max,
        "seed": report.seed,
        "probes": report.probes,
        "tolerance": report.tolerance,
        "suites": [
            {
                "suite": s.suite,
                "family": s.family,
                "n": s.n,
                "max_residual": s.max_residual,
                "threshold": s.threshold,
                "pass": s.passed,
            }
            for s in report.suites
        ],
        "status": report.status,
    }


def table_to_dict(reports: list) -> dict:
    rows = [constants_to_dict(r) for r in reports]
    for row in rows:
        del row["elapsed_ms"]  # keep table output reproducible run to run
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "table",
        "family": rows[0]["family"] if rows else "",
        "rows": rows,
    }


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def render_constants(report: ConstantsReport, fmt: str) -> str:
    if fmt == "json":
        return _json(constants_to_dict(report))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["name", "computed", "expected", "abs_deviation", "rational", "status"])
        for e in report.entries:
            writer.writerow(
                [e.name, repr(e.computed), repr(e.expected), repr(e.abs_deviation),
                 rational_fit(e.computed), "PASS" if e.passed(report.tolerance) else "FAIL"]
            )
        return buf.getvalue()
    name = FAMILY_NAME[report.family.tag]
    lines = [
        f"family {name}  n={report.n}  m={report.family.m}  seed={report.seed}  "
        f"probes={report.probes}  tolerance={report.tolerance:g}",
        f"{'constant':<18} {'computed':>22} {'expected':>22} {'deviation':>11}  rational",
    ]
    for e in report.entries:
        lines.append(
            f"{e.name:<18} {e.computed:>22.15g} {e.expected:>22.15g} {e.abs_deviation:>11.2e}  "
            f"{rational_fit(e.computed)}"
        )
    lines.append(
        f"verdict: {report.verdict.verdict} (variety_trivial={report.verdict.variety_trivial}, "
        f"psi_coeff={report.psi_coeff:.12g})"
    )
    lines.append(f"status: {report.status}  [{report.elapsed_ms} ms]")
    return "\n".join(lines) + "\n"


def render_table(reports: list, fmt: str) -> str:
    if fmt == "json":
        return _json(table_to_dict(reports))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["family", "n", "m", *ENTRY_NAMES, "verdict", "status"])
        for r in reports:
            values = {e.name: e.computed for e in r.entries}
            writer.writerow(
                [FAMILY_NAME[r.family.tag], r.n, r.family.m,
                 *[repr(values[name]) for name in ENTRY_NAMES], r.verdict.verdict, r.status]
            )
        return buf.getvalue()
    lines = []
    for r in reports:
        values = {e.name: e.computed for e in r.entries}
        head = f"{FAMILY_NAME[r.family.tag]} n={r.n} (m={r.family.m}) {r.verdict.verdict} [{r.status}]"
        body = "  ".join(f"{name}={values[name]:.10g}" for name in ENTRY_NAMES)
        lines.append(head)
        lines.append("  " + body)
    return "\n".join(lines) + "\n"


def render_verification(report: VerificationReport, fmt: str) -> str:
    if fmt == "json":
        return _json(verification_to_dict(report))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(["suite", "family", "n", "max_residual", "threshold", "status"])
        for s in report.suites:
            writer.writerow(
                [s.suite, s.family, s.n, repr(s.max_residual), repr(s.threshold),
                 "PASS" if s.passed else "FAIL"]
            )
        return buf.getvalue()
    lines = [
        f"verification n={report.n_min}..{report.n_max} seed={report.seed} "
        f"probes={report.probes} tolerance={report.tolerance:g}",
        f"{'suite':<28} {'family':<6} {'n':>3} {'max residual':>14} {'threshold':>11} status",
    ]
    for s in report.suites:
        lines.append(
            f"{s.suite:<28} {s.family:<6} {s.n:>3} {s.max_residual:>14.3e} {s.threshold:>11.1e} "
            f"{'PASS' if s.passed else 'FAIL'}"
        )
    lines.append(f"overall: {report.status}")
    return "\n".join(lines) + "\n"
