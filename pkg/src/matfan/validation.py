"""Cross-validation harness: runs every available computation of the
reduced-characteristic coefficients against each other and checks the
geometric invariants along the way.

The subject of every report is the simplification of the input matroid
(loops dropped, parallel classes collapsed, relabeling recorded).  The
coefficient sequence is unchanged by that, and the fan constructions
require looplessness anyway.

The two geometric routes are exhaustive over cone supports and are only
run for ground sets of at most 9 elements (n <= 8 in fan coordinates);
beyond that the lattice-based routes still run and the report marks the
geometric ones as skipped.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .charpoly import (
    char_poly,
    count_descending_flags,
    is_log_concave,
    reduced_char_poly,
)
from .fan import MinkowskiWeight, bergman_weight, check_balancing
from .intersect import (
    MAX_RETRIES,
    DegenerateDisplacementError,
    DisplacementVector,
    PairingTerm,
    alpha_divisor,
    cremona_pullback_divisor,
    default_displacement,
    displacement_weights,
    divisor_cup,
    mu_vector_displacement,
    mu_vector_divisors,
    pairing_terms,
    perturbed_displacement,
)
from .matroid import Matroid
from .schema import InputError, fraction_str

GEOMETRY_LIMIT = 8

TraceFn = Optional[Callable[[int, PairingTerm], None]]


@dataclass
class CheckResult:
    report: dict
    ok: bool
    # set when a pipeline could not even finish (broken invariant),
    # as opposed to finishing and disagreeing
    internal_error: Optional[str] = None


def _relabeling_note(matroid: Matroid, mapping: list[Optional[int]]) -> Optional[dict]:
    if mapping == list(range(matroid.size)):
        return None
    return {
        "relabeling": mapping,
        "dropped_loops": [x for x, m in enumerate(mapping) if m is None],
    }


def charpoly_report(matroid: Matroid) -> dict:
    """Report document for the polynomial surface of one matroid."""
    simple, mapping = matroid.simplify()
    poly = char_poly(simple)
    reduced, mu = reduced_char_poly(simple)
    r = simple.full_rank - 1
    report = {
        "name": matroid.name,
        "char_poly": poly.to_decimal_strings(),
        "reduced": reduced.to_decimal_strings(),
        "mu": list(mu),
        "flag_counts": [count_descending_flags(simple, k) for k in range(r + 1)],
    }
    note = _relabeling_note(matroid, mapping)
    if note:
        report["simplification"] = note
    return report


def _certified_terms(
    w1: MinkowskiWeight,
    w2: MinkowskiWeight,
    rng: random.Random,
    v: DisplacementVector | None,
) -> tuple[list[PairingTerm], DisplacementVector, bool]:
    """Pairing terms under the first displacement vector that certifies.

    Returns (terms, vector, used_default); degenerate vectors are
    replaced by seeded perturbations, so results are reproducible.
    """
    candidate = v if v is not None else default_displacement(w1.n)
    first = True
    for _ in range(MAX_RETRIES):
        try:
            return pairing_terms(w1, w2, candidate), candidate, first
        except DegenerateDisplacementError:
            candidate = perturbed_displacement(w1.n, rng)
            first = False
    raise DegenerateDisplacementError(
        f"no generic displacement found in {MAX_RETRIES} attempts"
    )


def run_check(
    matroid: Matroid,
    seed: int = 0,
    skip_displacement: bool = False,
    timings: bool = False,
    trace: TraceFn = None,
) -> CheckResult:
    """Full cross-validation of one matroid; see the module docstring.

    The report is JSON-ready and, for a fixed input and seed, identical
    between runs unless ``timings`` is set.
    """
    simple, mapping = matroid.simplify()
    n = simple.size - 1
    r = simple.full_rank - 1
    geometry_ok = n <= GEOMETRY_LIMIT

    report: dict = {
        "name": matroid.name,
        "size": matroid.size,
        "subject_size": simple.size,
        "rank": simple.full_rank,
        "seed": seed,
    }
    note = _relabeling_note(matroid, mapping)
    if note:
        report["simplification"] = note

    clock = time.perf_counter_ns
    spent: dict[str, int] = {}
    failures: list[str] = []

    try:
        t0 = clock()
        poly = char_poly(simple)
        reduced, mu_mobius = reduced_char_poly(simple)
        spent["charpoly"] = clock() - t0

        t0 = clock()
        mu_flags = tuple(count_descending_flags(simple, k) for k in range(r + 1))
        spent["flags"] = clock() - t0

        report["char_poly"] = poly.to_decimal_strings()
        report["reduced"] = reduced.to_decimal_strings()
        methods: dict[str, Optional[list[int]]] = {
            "mobius": list(mu_mobius),
            "flags": list(mu_flags),
        }
        skipped: list[str] = []

        def violation_rows(weight: MinkowskiWeight) -> list[dict]:
            return [
                {"cone": list(v.tau), "excess": list(v.excess)}
                for v in check_balancing(weight)
            ]

        t0 = clock()
        base_weight = bergman_weight(simple)
        balancing_failures = violation_rows(base_weight)
        spent["balancing"] = clock() - t0

        truncation_identity = True
        if geometry_ok:
            # One alpha-cup chain serves both the truncation identity and
            # the divisor degrees: j cups in equal the fan of the
            # (r-j)-truncation, and the level-k degree finishes from the
            # chain entry at r-k with k pullback cups.
            t0 = clock()
            alpha = alpha_divisor(n)
            beta = cremona_pullback_divisor(alpha)
            chain = [base_weight]
            for j in range(1, r + 1):
                cupped = divisor_cup(alpha, chain[-1])
                chain.append(cupped)
                balancing_failures.extend(violation_rows(cupped))
                if cupped != bergman_weight(simple.truncate(r - j)):
                    truncation_identity = False
            mu_divisor = []
            for k in range(r + 1):
                w = chain[r - k]
                for _ in range(k):
                    w = divisor_cup(beta, w)
                    balancing_failures.extend(violation_rows(w))
                mu_divisor.append(w.value(()))
            methods["divisor"] = mu_divisor
            spent["divisor"] = clock() - t0
        else:
            skipped.append("divisor")

        displacement_detail = []
        if geometry_ok and not skip_displacement:
            t0 = clock()
            rng = random.Random(seed)
            mu_disp = []
            for k in range(r + 1):
                w1, w2 = displacement_weights(simple, k)
                terms, vector, used_default = _certified_terms(w1, w2, rng, None)
                degree = sum(
                    t.index * w1.value(t.sigma) * w2.value(t.tau) for t in terms
                )
                mu_disp.append(degree)
                displacement_detail.append(
                    {
                        "k": k,
                        "pairs": len(terms),
                        "max_index": max((t.index for t in terms), default=0),
                        "default_vector": used_default,
                        "vector": [fraction_str(c) for c in vector.coords],
                    }
                )
                if trace is not None:
                    for term in terms:
                        trace(k, term)
            methods["displacement"] = mu_disp
            spent["displacement"] = clock() - t0
        else:
            skipped.append("displacement")

        t0 = clock()
        f_vector = simple.independent_set_counts()
        coextension = simple.free_coextension()
        _, mu_coext = reduced_char_poly(coextension)
        welsh_mason = tuple(f_vector) == tuple(mu_coext)
        spent["welsh_mason"] = clock() - t0

        unreduced = tuple(abs(c) for c in poly.coeffs)
        log_concave = {
            "reduced": is_log_concave(mu_mobius),
            "unreduced": is_log_concave(unreduced),
            "f_vector": is_log_concave(f_vector),
        }

        computed = [tuple(v) for v in methods.values() if v is not None]
        agreement = all(v == computed[0] for v in computed)

        report["mu"] = {
            name: methods[name] for name in ("mobius", "flags", "divisor", "displacement")
            if name in methods
        }
        if skipped:
            report["skipped"] = skipped
        report["agreement"] = agreement
        report["log_concave"] = all(log_concave.values())
        report["log_concave_detail"] = log_concave
        report["balancing_violations"] = balancing_failures
        report["truncation_identity"] = truncation_identity if geometry_ok else None
        report["f_vector"] = list(f_vector)
        report["mu_coextension"] = list(mu_coext)
        report["welsh_mason"] = welsh_mason
        if displacement_detail:
            report["displacement_detail"] = displacement_detail

        if not agreement:
            failures.append("method disagreement")
        if not all(log_concave.values()):
            failures.append("log-concavity failure")
        if balancing_failures:
            failures.append("balancing violation")
        if geometry_ok and not truncation_identity:
            failures.append("truncation identity failure")
        if not welsh_mason:
            failures.append("independent-set count mismatch")
    except Exception as exc:  # noqa: BLE001 -- the harness must report, not crash
        report["error"] = f"{type(exc).__name__}: {exc}"
        report["pass"] = False
        return CheckResult(report, ok=False, internal_error=report["error"])

    if timings:
        report["timings_ns"] = spent
    report["failures"] = failures
    report["pass"] = not failures
    return CheckResult(report, ok=not failures)


def mu_report(matroid: Matroid, method: str, seed: int = 0) -> dict:
    """Coefficient vector(s) by the requested method(s)."""
    simple, mapping = matroid.simplify()
    n = simple.size - 1
    r = simple.full_rank - 1
    geometry_ok = n <= GEOMETRY_LIMIT
    wanted = ("mobius", "flags", "displacement", "divisor") if method == "all" else (method,)

    values: dict[str, Optional[list[int]]] = {}
    skipped = []
    for name in wanted:
        if name in ("displacement", "divisor") and not geometry_ok:
            if method == "all":
                values[name] = None
                skipped.append(name)
                continue
            raise InputError(
                f"{name} needs a ground set of at most {GEOMETRY_LIMIT + 1} elements "
                f"after simplification; {matroid.name} has {simple.size}"
            )
        if name == "mobius":
            values[name] = list(reduced_char_poly(simple)[1])
        elif name == "flags":
            values[name] = [count_descending_flags(simple, k) for k in range(r + 1)]
        elif name == "displacement":
            values[name] = list(mu_vector_displacement(simple, seed=seed))
        else:
            values[name] = list(mu_vector_divisors(simple))

    report = {"name": matroid.name, "method": method, "mu": values}
    if skipped:
        report["skipped"] = skipped
    note = _relabeling_note(matroid, mapping)
    if note:
        report["simplification"] = note
    return report
