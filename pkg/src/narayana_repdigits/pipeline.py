"""End-to-end proof run: low-range search, initial bounds, two reductions, certificate."""

from __future__ import annotations

import datetime
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import partial
from pathlib import Path
from typing import Optional

import jsonschema

from . import __version__
from .baker import PAPER_VALUES, InitialBounds, base10_reading, initial_bounds, lambda2_constant
from .numeric import (
    DEFAULT_BUDGET,
    EscalationError,
    NumericError,
    PrecisionBudget,
    RealInterval,
    ln_interval,
    to_decimal,
)
from .reduction import (
    ContinuedFraction,
    ReductionInstance,
    convergents,
    epsilon,
    expand_cf,
    reduce,
    reduced_bound,
    small_linear_form_bound,
)
from .repdigit import ConcatPattern, decompose, enumerate_values, value
from .sequence import alpha, binet_a, log_alpha, tau, term, terms

log = logging.getLogger(__name__)

PAPER_M = 10 ** 29
PAPER_M_SUM_BOUND = 356 * 10 ** 26
PAPER_REDUCTION = {
    "stage1": {"q_index": 53, "eps": "0.0168612", "bound": "34"},
    "stage2": {"q_index": 53, "eps": "0.000918645", "bound": "200"},
}
EPS_DIGITS = 25
CF_EXTRA_TERMS = 10


class OracleMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class ProofConfig:
    low_range_cutoff: int = 250
    precision: PrecisionBudget = field(default_factory=PrecisionBudget)
    M_override: Optional[int] = None
    certificate_path: Optional[Path] = None
    parallelism: int = 1
    paper_constants: bool = False

    def __post_init__(self):
        if self.low_range_cutoff < 20:
            raise ValueError("low_range_cutoff must be >= 20 to cover the known solutions")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")


# -- low range ---------------------------------------------------------------

def low_range_search(cutoff: int) -> list[tuple[int, int, ConcatPattern]]:
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    out = []
    for n, N in enumerate(terms(cutoff + 1)):
        p = decompose(N)
        if p is not None:
            out.append((n, N, p))
    return out


def _narayana_below(limit: int) -> set[int]:
    # independent of sequence.term: plain triple shift
    found, (x, y, z) = set(), (0, 1, 1)
    while x < limit:
        found.add(x)
        x, y, z = y, z, z + x
    return found


def oracle_cross_check(max_digits: int) -> bool:
    """Compare enumerate-then-intersect against search-then-decompose below 10^max_digits."""
    if max_digits < 2:
        raise ValueError("max_digits must be >= 2")
    limit = 10 ** max_digits
    from_patterns = {v for _, v in enumerate_values(max_digits)} & _narayana_below(limit)
    n = 0
    while term(n) < limit:
        n += 1
    from_search = {N for _, N, _ in low_range_search(n) if N < limit}
    if from_patterns != from_search:
        raise OracleMismatch(
            f"only via patterns: {sorted(from_patterns - from_search)}; "
            f"only via search: {sorted(from_search - from_patterns)}"
        )
    return True


# -- reduction stages ----------------------------------------------------------

def mu_stage1(d1: int, bits: int) -> RealInterval:
    """log(d1 / 9a) / log alpha."""
    return ln_interval(RealInterval.exact(d1, bits) / (9 * binet_a(bits))) / log_alpha(bits)


def mu_stage2(d1: int, d2: int, m1: int, bits: int) -> RealInterval:
    """log((d1 10^m1 - (d1 - d2)) / 9a) / log alpha."""
    X = d1 * 10 ** m1 - (d1 - d2)
    return ln_interval(RealInterval.exact(X, bits) / (9 * binet_a(bits))) / log_alpha(bits)


def A_stage1(bits: int) -> RealInterval:
    return 56 / log_alpha(bits)


def lambda2_factor(bits: int, paper: bool) -> RealInterval:
    """K in |Lambda_2| < K alpha^-n."""
    if paper:
        return RealInterval.exact(2, bits)
    return lambda2_constant(PrecisionBudget(bits, max(bits, DEFAULT_BUDGET.max_bits)))


def A_stage2(bits: int, paper: bool = False) -> RealInterval:
    return 2 * lambda2_factor(bits, paper) / log_alpha(bits)


def _alpha_B(bits: int) -> RealInterval:
    return alpha(bits)


def _dec(x, upward=False, digits=EPS_DIGITS) -> str:
    return to_decimal(x, digits, upward=upward)


def _stage1_inst(d1: int, M: int) -> ReductionInstance:
    return ReductionInstance(tau, partial(mu_stage1, d1), A_stage1, RealInterval.exact(10), M)


def _stage2_inst(d1: int, d2: int, m1: int, M: int, paper: bool) -> ReductionInstance:
    return ReductionInstance(tau, partial(mu_stage2, d1, d2, m1), partial(A_stage2, paper=paper), _alpha_B, M)


def _run_member(key: tuple, inst: ReductionInstance, cf: ContinuedFraction, budget: PrecisionBudget) -> dict:
    outcome = reduce(inst, cf, budget)
    if outcome is None:
        return {"key": key, "q": None, "eps": None, "k": None}
    eps = Fraction(_dec(outcome.epsilon.lo))
    # the recorded (rounded-down) epsilon drives the bound, so a verifier can redo it
    k = reduced_bound(inst, outcome.q_used, RealInterval.exact(eps, budget.working_bits), budget)
    return {"key": key, "q": outcome.q_used, "eps": eps, "k": k}


def _stage2_member(args) -> dict:
    d1, d2, m1, M, paper, cf, budget = args
    return _run_member((d1, d2, m1), _stage2_inst(d1, d2, m1, M, paper), cf, budget)


class StageFailure(Exception):
    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage


def run_stage1(cf: ContinuedFraction, M: int, budget: PrecisionBudget) -> dict:
    # m1 >= 2 gives |Lambda_1| < 28/100 < 1/2; m1 = 1 lies under any bound anyway
    gamma = small_linear_form_bound(RealInterval.exact(Fraction(28, 100), budget.working_bits))
    rows = [_run_member((d1,), _stage1_inst(d1, M), cf, budget) for d1 in range(1, 10)]
    failed = [r["key"] for r in rows if r["q"] is None]
    if failed:
        raise StageFailure("stage1", f"no certified epsilon for d1 in {failed}")
    k_max = max(r["k"] for r in rows)
    return {
        "M": M,
        "rows": rows,
        "eps_min": min(r["eps"] for r in rows),
        "q": min(r["q"] for r in rows),
        "m1_bound": k_max - 1,
        "log_step": {"hypothesis": "m1 >= 2", "abs_e_minus_1": "0.28", "abs_gamma": _dec(gamma.hi, True)},
    }


def run_stage2(
    cf: ContinuedFraction, M: int, m1_bound: int, cutoff: int, budget: PrecisionBudget, paper: bool, jobs: int = 1
) -> dict:
    bits = budget.working_bits
    lam = lambda2_factor(bits, paper) * alpha(bits) ** -(cutoff + 1)
    gamma = small_linear_form_bound(lam)
    tasks = [
        (d1, d2, m1, M, paper, cf, budget)
        for d1 in range(1, 10)
        for d2 in range(10)
        for m1 in range(1, m1_bound + 1)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_stage2_member, tasks, chunksize=32))
    else:
        rows = [_stage2_member(t) for t in tasks]
    rows.sort(key=lambda r: r["key"])
    failed = [r["key"] for r in rows if r["q"] is None]
    if failed:
        raise StageFailure("stage2", f"no certified epsilon for {len(failed)} members, first {failed[0]}")
    first_q = cf.convergents[cf.first_index_beyond(6 * M)][1]
    paper_family = [r["eps"] for r in rows if r["key"][1] < r["key"][0]]
    return {
        "M": M,
        "rows": rows,
        "eps_min": min(r["eps"] for r in rows),
        "eps_min_paper_family": min(paper_family),
        "q": first_q,
        "retried": sum(1 for r in rows if r["q"] != first_q),
        "n_bound": max(r["k"] for r in rows) - 1,
        "log_step": {
            "hypothesis": f"n > {cutoff}",
            "abs_e_minus_1": _dec(lam.hi, True),
            "abs_gamma": _dec(gamma.hi, True),
        },
    }


# -- certificate ---------------------------------------------------------------

def _sci(x) -> str:
    # 12 significant digits, rounded upward, in exponent notation
    return f"{Decimal(_dec(x, True, 12)):.11e}"


def _discrepancies(ib: InitialBounds, budget: PrecisionBudget) -> list[dict]:
    bits = budget.working_bits
    base10 = base10_reading(budget)
    h1 = ib.heights[4].value
    c2 = ib.heights[5].value
    entries = [
        ("h_eta1_step1", h1, PAPER_VALUES["h_eta1_step1"], base10["h_eta1_step1"]),
        ("A1_step1", 3 * h1, PAPER_VALUES["A1_step1"], 3 * base10["h_eta1_step1"]),
        ("matveev_step1", ib.matveev_step1, PAPER_VALUES["matveev_step1"], None),
        ("m1_coeff", ib.m1_bound_coeff, PAPER_VALUES["m1_coeff"], None),
        ("h_eta1_step2", c2, PAPER_VALUES["h_eta1_step2"], None),
        ("A1_step2", 3 * c2, PAPER_VALUES["A1_step2"], None),
        ("matveev_step2", ib.matveev_step2, PAPER_VALUES["matveev_step2"], None),
        ("H", ib.H, PAPER_VALUES["H"], None),
        ("n_bound", RealInterval.exact(ib.n_bound, bits), PAPER_VALUES["n_bound"], base10["n_bound"]),
        ("m_sum_bound", RealInterval.exact(ib.m_sum_bound, bits), PAPER_VALUES["m_sum_bound"], None),
        ("lambda2_factor", lambda2_factor(bits, False), "2", None),
    ]
    out = []
    for name, ours, paper, b10 in entries:
        ratio = ours.mid / Fraction(paper)
        row = {
            "quantity": name,
            "artifact": _sci(ours.hi),
            "paper": paper,
            "ratio": to_decimal(ratio, 6),
            "reproduced": abs(ratio - 1) < Fraction(1, 100),
        }
        if b10 is not None:
            row["base10_log_value"] = _sci(b10.hi)
            row["paper_matches_base10"] = abs(b10.mid / Fraction(paper) - 1) < Fraction(1, 100)
        out.append(row)
    return out


def _initial_bounds_record(ib: InitialBounds, budget: PrecisionBudget) -> dict:
    return {
        "log_base": "natural",
        "n_min": ib.n_min,
        "heights": [
            {
                "name": h.name,
                "value": _dec(h.value.hi, True, 20),
                "paper_value": h.paper_value,
                "log_power": h.log_power,
                "derivation": h.derivation,
            }
            for h in ib.heights
        ],
        "m1_coeff": _dec(ib.m1_bound_coeff.hi, True, 20),
        "matveev": {
            "stage1": _dec(ib.matveev_step1.hi, True, 20),
            "stage2": _dec(ib.matveev_step2.hi, True, 20),
            "paper_stage1": PAPER_VALUES["matveev_step1"],
            "paper_stage2": PAPER_VALUES["matveev_step2"],
        },
        "gsl": {
            "r": ib.r,
            "H": _dec(ib.H.hi, True, 20),
            "n_bound": str(ib.n_bound),
            "paper_n_bound": PAPER_VALUES["n_bound"],
        },
        "m_sum_bound": str(ib.m_sum_bound),
        "paper_m_sum_bound": PAPER_VALUES["m_sum_bound"],
        "discrepancies": _discrepancies(ib, budget),
        "paper_values_reproduced": False,
    }


NOTES = [
    "Search space is d1 in 1..9, d2 in 0..9, m1, m2 >= 1 with d1 = d2 allowed; the stated ranges "
    "0 <= d2 < d1 and m1 >= m2 would exclude 13, 88 and 277, which are genuine solutions.",
    "The printed constants 2.41 and 2.15e29 match base-10 logarithms; every bound here uses natural "
    "logarithms, so the printed intermediates are not reproduced and are never used.",
    "The growth bound alpha^(n-2) <= N_n fails for every n >= 3 (a < alpha^-2); only N_n <= alpha^(n-1) "
    "is used in this chain.",
    "|Lambda_2| < 18/(9 a alpha^n) = (2/a) alpha^-n; the native run uses 2/a where the printed "
    "derivation uses 2.",
    "Non-vanishing of Lambda_1 and Lambda_2 is taken from the Galois argument and not re-checked.",
]


def _cf_record(cf: ContinuedFraction) -> dict:
    lo, hi = cf.source.decimal(60)
    return {
        "tau": "log 10 / log alpha",
        "tau_lo": lo,
        "tau_hi": hi,
        "bits": cf.bits,
        "partial_quotients": [str(a) for a in cf.partial_quotients],
        "convergents": [{"p": str(p), "q": str(q)} for p, q in cf.convergents],
    }


def _power_of_ten_at_least(x: int) -> int:
    k = max(len(str(x)) - 1, 0)
    return 10 ** k if 10 ** k >= x else 10 ** (k + 1)


def prove(config: ProofConfig = ProofConfig()) -> dict:
    """Run every stage and return the certificate as a JSON-ready dict."""
    budget = config.precision
    cutoff = config.low_range_cutoff
    cert: dict = {
        "meta": {
            "version": __version__,
            "precision_bits": budget.working_bits,
            "max_bits": budget.max_bits,
            "mode": "paper-constants" if config.paper_constants else "native",
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        },
        "notes": NOTES,
    }
    sols = low_range_search(cutoff)
    cert["low_range"] = {
        "cutoff": cutoff,
        "search_space": "d1 in 1..9, d2 in 0..9, m1 >= 1, m2 >= 1",
        "solutions": [
            {"n": n, "value": str(N), "d1": p.d1, "m1": p.m1, "d2": p.d2, "m2": p.m2} for n, N, p in sols
        ],
    }
    stage = "initial_bounds"
    try:
        # the reductions only need to exclude n > cutoff
        ib = initial_bounds(budget, n_min=cutoff)
        cert["initial_bounds"] = _initial_bounds_record(ib, budget)

        if config.paper_constants:
            assumed, M = PAPER_M_SUM_BOUND, PAPER_M
        else:
            assumed = ib.m_sum_bound
            M = _power_of_ten_at_least(max(ib.m_sum_bound, config.M_override or 0))
        stage = "reduction: continued fraction"
        cf = expand_cf(tau, 6 * M, budget, extra=CF_EXTRA_TERMS)
        stage = "reduction: stage 1"
        s1 = run_stage1(cf, M, budget)
        stage = "reduction: stage 2"
        s2 = run_stage2(cf, M, s1["m1_bound"], cutoff, budget, config.paper_constants, config.parallelism)
    except (NumericError, StageFailure) as exc:
        kind = "precision" if isinstance(exc, EscalationError) else "certification"
        log.warning("proof inconclusive at %s: %s", stage, exc)
        cert["verdict"] = {"closed": False, "reason": f"inconclusive at {stage} ({kind}): {exc}", "failed_stage": stage}
        return cert

    cert["reduction"] = {
        "M_source": "paper" if config.paper_constants else "artifact",
        "assumed_m_sum_bound": str(assumed),
        "cf": _cf_record(cf),
        "stage1": {
            "M": str(M),
            "A": "56 / log alpha",
            "B": "10",
            "q": str(s1["q"]),
            "eps_table": [{"d1": r["key"][0], "q": str(r["q"]), "eps": _dec(r["eps"])} for r in s1["rows"]],
            "eps_min": _dec(s1["eps_min"]),
            "m1_bound": s1["m1_bound"],
            "log_step": s1["log_step"],
            "paper": PAPER_REDUCTION["stage1"],
        },
        "stage2": {
            "M": str(M),
            "A": "4 / log alpha" if config.paper_constants else "4 / (a log alpha)",
            "B": "alpha",
            "q": str(s2["q"]),
            "families": [
                {"d1": r["key"][0], "d2": r["key"][1], "m1": r["key"][2], "q": str(r["q"]), "eps": _dec(r["eps"])}
                for r in s2["rows"]
            ],
            "family_count": len(s2["rows"]),
            "retried": s2["retried"],
            "eps_min": _dec(s2["eps_min"]),
            "eps_min_paper_family": _dec(s2["eps_min_paper_family"]),
            "n_bound": s2["n_bound"],
            "log_step": s2["log_step"],
            "paper": PAPER_REDUCTION["stage2"],
        },
    }
    closed = s2["n_bound"] <= cutoff
    values = sorted(N for _, N, _ in sols)
    if closed:
        reason = (
            f"every solution has n <= {s2['n_bound']} <= cutoff {cutoff}; "
            f"the exhaustive search up to {cutoff} finds exactly {values}"
        )
        if config.paper_constants:
            reason += "; initial bounds taken from the printed initial bounds, not recomputed"
    else:
        reason = f"stage-2 bound n <= {s2['n_bound']} exceeds cutoff {cutoff}"
    cert["verdict"] = {"closed": closed, "reason": reason}
    return cert


def write_certificate(cert: dict, path) -> None:
    Path(path).write_text(json.dumps(cert, indent=2) + "\n")


# -- verification --------------------------------------------------------------

_STR = {"type": "string"}
_INT = {"type": "integer"}
CERT_SCHEMA = {
    "type": "object",
    "required": ["meta", "low_range", "verdict"],
    "properties": {
        "meta": {
            "type": "object",
            "required": ["version", "precision_bits", "timestamp"],
            "properties": {"version": _STR, "precision_bits": _INT, "timestamp": _STR},
        },
        "low_range": {
            "type": "object",
            "required": ["cutoff", "solutions"],
            "properties": {
                "cutoff": _INT,
                "solutions": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["n", "value", "d1", "m1", "d2", "m2"],
                        "properties": {"n": _INT, "value": _STR, "d1": _INT, "m1": _INT, "d2": _INT, "m2": _INT},
                    },
                },
            },
        },
        "initial_bounds": {
            "type": "object",
            "required": ["heights", "matveev", "gsl", "m_sum_bound", "discrepancies"],
            "properties": {
                "heights": {
                    "type": "array",
                    "items": {"type": "object", "required": ["name", "value", "paper_value"]},
                },
                "matveev": {"type": "object", "required": ["stage1", "stage2", "paper_stage1", "paper_stage2"]},
                "gsl": {"type": "object", "required": ["r", "H", "n_bound", "paper_n_bound"]},
                "m_sum_bound": _STR,
                "discrepancies": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["quantity", "artifact", "paper", "ratio", "reproduced"],
                        "properties": {"reproduced": {"type": "boolean"}},
                    },
                },
            },
        },
        "reduction": {
            "type": "object",
            "required": ["stage1", "stage2", "cf"],
            "properties": {
                "stage1": {
                    "type": "object",
                    "required": ["M", "q", "eps_table", "eps_min", "m1_bound"],
                    "properties": {
                        "eps_table": {
                            "type": "array",
                            "items": {"type": "object", "required": ["d1", "eps"]},
                        }
                    },
                },
                "stage2": {
                    "type": "object",
                    "required": ["M", "families", "eps_min", "n_bound"],
                    "properties": {
                        "families": {
                            "type": "array",
                            "items": {"type": "object", "required": ["d1", "d2", "m1", "q", "eps"]},
                        }
                    },
                },
            },
        },
        "verdict": {
            "type": "object",
            "required": ["closed", "reason"],
            "properties": {"closed": {"type": "boolean"}, "reason": _STR},
        },
    },
}


def _check_eps(inst: ReductionInstance, q: int, recorded: Fraction, budget: PrecisionBudget) -> Optional[str]:
    if recorded <= 0:
        return f"recorded epsilon {recorded} is not positive"
    enc = epsilon(inst, q, budget)
    if enc is None:
        return f"epsilon for q={q} is certified non-positive"
    slack = Fraction(1, 10 ** (EPS_DIGITS - 5))
    if not (enc.lo_q - slack <= recorded <= enc.hi_q):
        return f"recorded epsilon {float(recorded):.6g} outside recomputed [{float(enc.lo_q):.6g}, {float(enc.hi_q):.6g}]"
    return None


def check_certificate(doc: dict) -> list[str]:
    """Itemized list of failed checks; empty when the certificate is consistent."""
    try:
        jsonschema.validate(doc, CERT_SCHEMA)
    except jsonschema.ValidationError as exc:
        return [f"schema: {exc.message}"]
    problems: list[str] = []
    budget = PrecisionBudget(doc["meta"]["precision_bits"], max(doc["meta"].get("max_bits", 16384), doc["meta"]["precision_bits"]))
    paper = doc["meta"].get("mode") == "paper-constants"

    cutoff = doc["low_range"]["cutoff"]
    recorded = []
    for s in doc["low_range"]["solutions"]:
        N = int(s["value"])
        p = ConcatPattern(s["d1"], s["m1"], s["d2"], s["m2"])
        if term(s["n"]) != N or value(p) != N or decompose(N) != p:
            problems.append(f"low_range: entry n={s['n']} value={N} does not check")
        recorded.append((s["n"], N))
    expected = [(n, N) for n, N, _ in low_range_search(cutoff)]
    if recorded != expected:
        problems.append(f"low_range: recorded solutions {[N for _, N in recorded]} != search {[N for _, N in expected]}")

    verdict = doc["verdict"]
    if "reduction" not in doc:
        if verdict["closed"]:
            problems.append("verdict: closed without reduction records")
        return problems

    red = doc["reduction"]
    ib = doc.get("initial_bounds")
    assumed = int(red.get("assumed_m_sum_bound", "0"))
    if ib is not None:
        n_bound, m_sum = int(ib["gsl"]["n_bound"]), int(ib["m_sum_bound"])
        la, l10 = log_alpha(budget.working_bits), ln_interval(RealInterval.exact(10, budget.working_bits))
        if not (m_sum - 1 < ((n_bound * la + 2) / l10).hi_q + 1 and m_sum < n_bound):
            problems.append("initial_bounds: m_sum_bound inconsistent with n_bound")
        if not paper and assumed != m_sum:
            problems.append("reduction: assumed m1+m2 bound differs from the initial bound")
        for row in ib["discrepancies"]:
            ratio = Decimal(row["artifact"]) / Decimal(row["paper"])
            if abs(ratio / Decimal(row["ratio"]) - 1) > Decimal("1e-4"):
                problems.append(f"initial_bounds: ratio for {row['quantity']} does not match its values")
            if row["reproduced"] != (abs(ratio - 1) < Decimal("0.01")):
                problems.append(f"initial_bounds: reproduced flag for {row['quantity']} is wrong")

    # continued fraction
    quotients = [int(a) for a in red["cf"]["partial_quotients"]]
    conv = [(int(c["p"]), int(c["q"])) for c in red["cf"]["convergents"]]
    if conv != convergents(quotients):
        problems.append("cf: convergents do not follow from the partial quotients")
    for k in range(1, len(conv)):
        if conv[k][0] * conv[k - 1][1] - conv[k - 1][0] * conv[k][1] != (-1) ** (k - 1):
            problems.append(f"cf: determinant identity fails at k={k}")
    try:
        fresh = expand_cf(tau, conv[-1][1] - 1, budget)
        if list(fresh.partial_quotients[: len(quotients)]) != quotients:
            problems.append("cf: partial quotients disagree with a fresh certified expansion")
    except NumericError as exc:
        problems.append(f"cf: re-expansion failed ({exc})")
    denominators = {q for _, q in conv}

    # stage 1
    s1 = red["stage1"]
    M1 = int(s1["M"])
    if M1 < assumed:
        problems.append("stage1: M below the assumed m1+m2 bound")
    k_max = 0
    d1_seen = sorted(r["d1"] for r in s1["eps_table"])
    if d1_seen != list(range(1, 10)):
        problems.append("stage1: eps_table does not cover d1 = 1..9")
    for r in s1["eps_table"]:
        q, eps = int(r["q"]), Fraction(r["eps"])
        inst = _stage1_inst(r["d1"], M1)
        if q not in denominators or q <= 6 * M1:
            problems.append(f"stage1: q for d1={r['d1']} is not a convergent denominator above 6M")
            continue
        err = _check_eps(inst, q, eps, budget)
        if err:
            problems.append(f"stage1 d1={r['d1']}: {err}")
            continue
        k_max = max(k_max, reduced_bound(inst, q, RealInterval.exact(eps, budget.working_bits), budget))
    if k_max - 1 != s1["m1_bound"]:
        problems.append(f"stage1: m1_bound {s1['m1_bound']} != recomputed {k_max - 1}")

    # stage 2
    s2 = red["stage2"]
    M2 = int(s2["M"])
    if M2 < assumed:
        problems.append("stage2: M below the assumed m1+m2 bound")
    keys = sorted((r["d1"], r["d2"], r["m1"]) for r in s2["families"])
    want = [(d1, d2, m1) for d1 in range(1, 10) for d2 in range(10) for m1 in range(1, s1["m1_bound"] + 1)]
    if keys != want or s2.get("family_count") != len(want):
        problems.append(f"stage2: families do not cover all (d1, d2, m1 <= {s1['m1_bound']})")
    k_max = 0
    for r in s2["families"]:
        q, eps = int(r["q"]), Fraction(r["eps"])
        inst = _stage2_inst(r["d1"], r["d2"], r["m1"], M2, paper)
        if q not in denominators or q <= 6 * M2:
            problems.append(f"stage2: q for {(r['d1'], r['d2'], r['m1'])} is not a convergent denominator above 6M")
            continue
        err = _check_eps(inst, q, eps, budget)
        if err:
            problems.append(f"stage2 {(r['d1'], r['d2'], r['m1'])}: {err}")
            continue
        k_max = max(k_max, reduced_bound(inst, q, RealInterval.exact(eps, budget.working_bits), budget))
    if k_max - 1 != s2["n_bound"]:
        problems.append(f"stage2: n_bound {s2['n_bound']} != recomputed {k_max - 1}")
    bits = budget.working_bits
    lam = lambda2_factor(bits, paper) * alpha(bits) ** -(cutoff + 1)
    if not lam.lies_below(Fraction(1, 2)):
        problems.append("stage2: |e^Gamma - 1| < 1/2 not certified for n > cutoff")

    should_close = not problems and s2["n_bound"] <= cutoff
    if verdict["closed"] != should_close:
        problems.append(f"verdict: recorded closed={verdict['closed']} but checks imply closed={should_close}")
    return problems


def verify_certificate(path) -> bool:
    problems = check_certificate(json.loads(Path(path).read_text()))
    for p in problems:
        log.error("certificate check failed: %s", p)
    return not problems
