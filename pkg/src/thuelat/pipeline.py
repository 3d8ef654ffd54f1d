"""Report assembly shared by the CLI and the HTTP service.

Every function takes plain scalars, runs a pure computation pipeline over a
Config, and returns dictionaries with deterministic key order, so the two
front ends render byte-identical content for identical inputs.
"""

from dataclasses import replace
from fractions import Fraction

from . import bounds as bounds_mod
from . import census as census_mod
from . import enumeration as enum_mod
from . import forms as forms_mod
from . import lattices as lat_mod
from . import padic
from .config import DEFAULT_CONFIG
from .errors import InputError
from .forms import BinaryForm


def parse_form(text):
    return BinaryForm.parse(text) if isinstance(text, str) else text


def parse_delta(text):
    try:
        delta = Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse delta {text!r}") from exc
    if delta <= 0:
        raise InputError("delta must be positive")
    return delta


def analyze_report(form, m, config=DEFAULT_CONFIG):
    F = parse_form(form)
    if F.content() != 1:
        raise InputError("analysis requires a form of content 1")
    D = F.discriminant()
    if D == 0:
        raise InputError("analysis requires nonzero discriminant")
    fac = padic.factorize(m, config.factorization_budget)
    primes = []
    c_total = 1
    for p, e in fac.items():
        c_p = padic.c_F_p(F, p)
        c_total *= c_p
        primes.append(
            {"p": p, "v_p_m": e, "v_p_disc": padic.vp(D, p), "c_F_p": c_p}
        )
    m_F = padic.m_of_F(F, m, config.factorization_budget)
    hypothesis = all(row["v_p_m"] > row["v_p_disc"] for row in primes)
    obstruction = m_F > 1 and padic.c_F_m(F, m_F, config.factorization_budget) == 0
    return {
        "form": F.serialize(),
        "degree": F.degree,
        "content": F.content(),
        "discriminant": D,
        "m": m,
        "m_factorization": "*".join(f"{p}^{e}" for p, e in fac.items()) or "1",
        "c_F_m": c_total,
        "m_of_F": m_F,
        "theorem1_hypothesis": hypothesis,
        "local_obstruction": obstruction,
        "c_F_infinity": padic.c_F_inf(F),
        "primes": primes,
    }


SOLUTION_HEADER = "x,y,value,provenance,norm_sq"


def solution_csv_lines(records):
    lines = [SOLUTION_HEADER]
    for r in records:
        lines.append(f"{r.x},{r.y},{r.value},{r.provenance},{r.norm_sq}")
    return lines


def solve_pipeline(
    form,
    m,
    mode="eq",
    config=DEFAULT_CONFIG,
    radius=None,
    use_convergents=False,
    y_max=None,
    shards=None,
):
    F = parse_form(form)
    inst = enum_mod.ThueInstance(F, m, mode)
    cfg = config if radius is None else replace(config, brute_radius_override=float(radius))
    shards = shards or cfg.shard_count
    region = enum_mod.default_region(inst, cfg)
    records = enum_mod.brute_solutions(inst, region, cfg, shards=shards)
    scanned_to = None
    justification = region.justification
    if use_convergents:
        scanned_to = y_max or cfg.y_max_for_convergents
        seen = {r.point for r in records}
        for rec in enum_mod.convergent_scan(inst, scanned_to):
            if rec.point not in seen:
                records.append(rec)
                seen.add(rec.point)
        records.sort(key=enum_mod.SolutionRecord.sort_key)
        justification = "convergent-extended"
    return {
        "form": F.serialize(),
        "m": m,
        "mode": mode,
        "region_radius": region.radius,
        "region_complete": region.complete,
        "region_justification": justification,
        "convergents_scanned_to": scanned_to,
        "count": len(records),
        "records": records,
    }


def lattices_report(form, m, config=DEFAULT_CONFIG):
    F = parse_form(form)
    lats = lat_mod.theorem1_lattices(F, m, config.factorization_budget)
    rows = []
    for L in lats:
        rb = lat_mod.reduce_lattice(L)
        rows.append(
            {
                "lattice": L.serialize(),
                "lambda1_sq": rb.lambda1_sq,
                "lambda2_sq": rb.lambda2_sq,
                "minkowski_ok": lat_mod.minkowski_holds(rb.lambda1_sq, rb.lambda2_sq, L.det),
            }
        )
    return {"form": F.serialize(), "m": m, "count": len(rows), "lattices": rows}


def verify_report(form, m, config=DEFAULT_CONFIG, radius=None):
    F = parse_form(form)
    inst = enum_mod.ThueInstance(F, m, "eq")
    cfg = config if radius is None else replace(config, brute_radius_override=float(radius))
    region = enum_mod.default_region(inst, cfg)
    rep = enum_mod.theorem1_cover_check(F, m, region, cfg)
    return {
        "form": F.serialize(),
        "m": m,
        "region_radius": region.radius,
        "region_complete": region.complete,
        "covered": rep.covered,
        "points_with_m_dividing_F": rep.points_checked,
        "uncovered_count": len(rep.uncovered),
        "solution_count": len(rep.solutions),
        "lattices": [
            {"lattice": L.serialize(), "solutions": n}
            for L, n in zip(rep.lattices, rep.per_lattice_solution_counts)
        ],
        "solutions": rep.solutions,
    }


BOUND_NAMES = ("theorem2", "corollary", "stewart", "proposition", "lemmas", "theorem3-threshold")


def bounds_dispatch(name, params, config=DEFAULT_CONFIG):
    """Evaluate one named bound; returns a list of BoundReports."""
    p = dict(params)
    if name == "theorem2":
        return [bounds_mod.theorem2_bound(int(p["d"]), int(p["m"]), float(p["A"]))]
    if name == "corollary":
        return [
            bounds_mod.corollary_bound(
                int(p["d"]), int(p["m"]), float(p["A"]), int(p["c_F_m_prime"])
            )
        ]
    if name == "stewart":
        extra = {
            k: p.get(k)
            for k in ("m", "m_prime", "abs_disc")
            if p.get(k) is not None
        }
        return [
            bounds_mod.stewart_bound(
                int(p["d"]), float(p["eps"]), int(p["omega_m_prime"]), **extra
            )
        ]
    if name == "proposition":
        return [bounds_mod.proposition_bound(int(p["d"]), int(p["m"]), float(p["B"]))]
    if name == "lemmas":
        reports = bounds_mod.lemma_bounds(
            int(p["d"]), float(p["c"]), float(p["B"]), float(p["C1"]), float(p["C2"])
        )
        return [reports["lemma6"], reports["lemma7"], reports["lemma8"]]
    if name == "theorem3-threshold":
        F = parse_form(p["form"])
        thr = bounds_mod.theorem3_threshold(F, Fraction(str(p["eps"])))
        return [thr.report]
    raise InputError(f"unknown bound {name!r}; expected one of {BOUND_NAMES}")


def census_pipeline(
    m_from,
    m_to,
    delta,
    method="lattice",
    cross_check=False,
    config=DEFAULT_CONFIG,
    shards=None,
):
    delta = parse_delta(delta)
    if m_from < 1 or m_to < m_from:
        raise InputError("need 1 <= from <= to")
    shards = shards or config.shard_count
    if shards <= 1:
        return census_mod.census_sweep(
            range(m_from, m_to + 1), delta, method=method, cross_check=cross_check
        )
    # shard per m by divisor index, merge, then summarize like the plain sweep
    rows = []
    for m in range(m_from, m_to + 1):
        short = 0
        mink = 0
        for i in range(shards):
            part = census_mod.census_point(m, delta, method=method, shard=(i, shards))
            short += part.short_count
            mink += part.minkowski_violations
        rows.append(census_mod.CensusRow(m, delta, lat_mod.sigma(m), short, mink))
    summary = census_mod.CensusSummary(
        rows=len(rows),
        max_scaled_proportion=max(
            (r.proportion * float(r.m) ** (2 * float(delta)) for r in rows), default=0.0
        ),
        bound_violations=sum(0 if r.bound_holds() else 1 for r in rows),
        minkowski_violations=sum(r.minkowski_violations for r in rows),
    )
    return rows, summary


def exceptional_report(form, point, eps, config=DEFAULT_CONFIG):
    F = parse_form(form)
    verdict = forms_mod.epsilon_exceptional(
        F,
        point,
        Fraction(str(eps)),
        precision=config.precision_bits,
        max_precision=config.max_precision_bits,
    )
    return {
        "form": F.serialize(),
        "x": point[0],
        "y": point[1],
        "eps": float(Fraction(str(eps))),
        "verdict": verdict.verdict,
        "witness_i": verdict.witness[0] if verdict.witness else None,
        "witness_j": verdict.witness[1] if verdict.witness else None,
    }


def classify_report(form, m, eps, config=DEFAULT_CONFIG, radius=None):
    F = parse_form(form)
    inst = enum_mod.ThueInstance(F, m, "leq")
    cfg = config if radius is None else replace(config, brute_radius_override=float(radius))
    region = enum_mod.default_region(inst, cfg)
    rep = bounds_mod.theorem3_classify(F, m, Fraction(str(eps)), region, cfg)
    return {
        "form": F.serialize(),
        "m": m,
        "m_of_F": rep.m_F,
        "eps": rep.eps,
        "threshold": rep.threshold,
        "region_radius": region.radius,
        "region_complete": region.complete,
        "side_conditions": list(rep.side_conditions),
        "ok": rep.ok,
        "rows": [
            {
                "lattice": r.lattice.serialize(),
                "solutions": len(r.solutions),
                "exceptional": len(r.exceptional),
                "non_exceptional_pairs": len(r.non_exceptional_pairs),
                "pair_ok": r.pair_ok,
                "norm_ok": r.norm_ok,
            }
            for r in rep.rows
        ],
    }
