"""Verification suite drivers behind ``impactzeta verify`` and the tests.

Three suites:

* identities: symbolic checks (numerator families, the correspondence
  between principal zeta and layer generating functions, both recurrences,
  the geodesic relation).
* oracle: truncated-tree BFS counts against the closed forms.
* arithmetic: the p-adic enumeration oracle against the type-counting
  results (unit indices, type histograms, series prefixes, vertex
  locations and distances, the traveling map).
"""

from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Iterable, Optional

from .building import BasinKind, BuildingSpec, build_line_tree, build_truncated, layer_members
from .genfun import (
    basin_genfun_q,
    check_geodesic_q,
    check_recurrence_q,
    layer_genfun_q,
    oracle_series_check,
    reachable_count_oracle,
    way_out_vertex,
)
from .orders import (
    all_cases,
    check_main_theorem,
    check_zeta_recurrence,
    classify_type,
    extension_case,
    principal_count_series,
    unit_index,
)
from .padic import (
    coset_reps,
    enumerate_ideals,
    make_case,
    source_and_distance_check,
    traveling,
)
from .poly import ONE, BiPoly, RationalFn, series_expand, x_pow
from .report import CheckResult

ALL_KINDS = (BasinKind.RAMIFIED, BasinKind.UNRAMIFIED, BasinKind.SPLIT)
# Enumeration grid: residue characteristics exercised per case.
DEFAULT_PRIMES = {
    BasinKind.RAMIFIED: (2, 3),
    BasinKind.UNRAMIFIED: (3, 5),
    BasinKind.SPLIT: (2, 3),
}


def identity_suite(n_max: int = 8) -> list[CheckResult]:
    results: list[CheckResult] = []
    for case in all_cases():
        results.extend(check_main_theorem(case, n_max))
        results.extend(check_zeta_recurrence(case, n_max))
    for kind in ALL_KINDS:
        results.extend(check_recurrence_q(kind, n_max))
        results.extend(check_geodesic_q(kind, n_max))
    return results


def oracle_suite(
    ms: Iterable[int] = (2, 3), n_max: int = 5, d_max: int = 12
) -> list[CheckResult]:
    results: list[CheckResult] = []
    for kind, m in product(ALL_KINDS, ms):
        spec = BuildingSpec(kind, m)
        halfwidth = d_max + 1 if kind is BasinKind.SPLIT else 0
        tree = build_truncated(spec, n_max, halfwidth)
        for n in range(n_max + 1):
            results.extend(oracle_series_check(tree, n, d_max))
    return results


def line_fixture_suite(n_max: int = 6, d_max: int = 14) -> list[CheckResult]:
    """Degenerate m = 1 line checks: closed forms and BFS agree.

    On the line, the vertex-basin layer function is (1 + X^{2n})/(1 - X^2)
    and the edge-basin basin function is (1 + X^2 + ... + X^{2n})/(1 - X).
    """
    results: list[CheckResult] = []
    one_minus_x2 = ONE - x_pow(2)
    one_minus_x = ONE - x_pow(1)
    for n in range(n_max + 1):
        unram_layer = layer_genfun_q(BasinKind.UNRAMIFIED, n).subs_q(1)
        # A single layer vertex at n = 0, two at distance 2n apart otherwise.
        expected = RationalFn(
            ONE if n == 0 else ONE + x_pow(2 * n), one_minus_x2
        )
        results.append(
            CheckResult(f"line unramified layer n={n}", unram_layer == expected)
        )
        ram_basin = basin_genfun_q(BasinKind.RAMIFIED, n).subs_q(1)
        expected_basin = RationalFn(
            sum((x_pow(2 * k) for k in range(n + 1)), BiPoly()), one_minus_x
        )
        results.append(
            CheckResult(f"line ramified basin n={n}", ram_basin == expected_basin)
        )
    for kind in (BasinKind.UNRAMIFIED, BasinKind.RAMIFIED):
        tree = build_line_tree(kind, n_max)
        for n in range(n_max + 1):
            layer_series = series_expand(
                layer_genfun_q(kind, n).subs_q(1), d_max
            ).at_q(0)
            basin_series = series_expand(
                basin_genfun_q(kind, n).subs_q(1), d_max
            ).at_q(0)
            v = way_out_vertex(tree.spec, n)
            ok = all(
                layer_series[d] == reachable_count_oracle(tree, v, d, "layer")
                and basin_series[d] == reachable_count_oracle(tree, v, d, "basin")
                for d in range(d_max + 1)
            )
            results.append(CheckResult(f"line oracle {kind.value} n={n}", ok))
    return results


def _possible_types(case, bound: int):
    """Type vectors with contribution at most the bound."""
    if case.g == 1:
        f = case.f_vec[0]
        return [w for w in range(bound // f + 1)]
    return [
        (w1, w2)
        for w1 in range(bound + 1)
        for w2 in range(bound + 1 - w1)
    ]


def _tree_for(inst, n: int, d_bound: int):
    if inst.tag is BasinKind.SPLIT:
        halfwidth = max(d_bound - 2 * n, n)
        return build_truncated(BuildingSpec(inst.tag, inst.p), n, halfwidth)
    return build_truncated(BuildingSpec(inst.tag, inst.p), n)


def arithmetic_suite(
    primes: Optional[dict[BasinKind, tuple[int, ...]]] = None,
    n_max: int = 2,
    d_bound: int = 6,
) -> list[CheckResult]:
    primes = primes or DEFAULT_PRIMES
    precision = d_bound + 2 * n_max + 2
    results: list[CheckResult] = []
    for kind in ALL_KINDS:
        case = extension_case(kind)
        for p in primes.get(kind, ()):
            inst = make_case(kind, p, precision)
            label = f"{kind.value} p={p}"
            for n in range(n_max + 1):
                # (a) unit indices by explicit coset enumeration.
                reps = coset_reps(inst, n, n)
                want = unit_index(case, n).subs_q(p).as_int()
                results.append(
                    CheckResult(
                        f"unit-index {label} n={n}",
                        len(reps) == want,
                        f"enumerated {len(reps)}, formula {want}",
                    )
                )
                tree = _tree_for(inst, n, d_bound)
                records = enumerate_ideals(inst, n, d_bound, tree)
                principal = [r for r in records if r.principal]
                # (b) type histogram against the counting rules.
                histogram = Counter(r.type_eps for r in principal)
                hist_ok = True
                for omega in _possible_types(case, d_bound):
                    desc = classify_type(case, n, omega)
                    predicted = desc.count_expr.subs_q(p).as_int() if desc.occurs else 0
                    if histogram.get(omega, 0) != predicted:
                        hist_ok = False
                results.append(
                    CheckResult(
                        f"type-histogram {label} n={n}",
                        hist_ok and sum(histogram.values()) == len(principal),
                    )
                )
                # (c) principal series prefix.
                by_contribution = Counter(r.contribution for r in principal)
                series = principal_count_series(case, n, d_bound, p)
                results.append(
                    CheckResult(
                        f"principal-series {label} n={n}",
                        all(
                            by_contribution.get(d, 0) == series[d]
                            for d in range(d_bound + 1)
                        ),
                        f"observed {sorted(by_contribution.items())}",
                    )
                )
                # (d) vertices: the principal classes are exactly the layer-n
                # vertices within contribution reach (an apartment anchor at
                # position j costs 2n + |j|, so the bound reaches |j| <=
                # d_bound - 2n; the other basins are finite and fully reached).
                vertex_set = {r.vertex for r in principal}
                reachable = {
                    v
                    for v in layer_members(tree, n)
                    if kind is not BasinKind.SPLIT
                    or abs(v.anchor) <= d_bound - 2 * n
                }
                results.append(
                    CheckResult(
                        f"vertex-layer {label} n={n}",
                        vertex_set == reachable,
                        f"{len(vertex_set)} vertices",
                    )
                )
                source_checks = source_and_distance_check(inst, n, d_bound, tree)
                results.append(
                    CheckResult(
                        f"source-distance {label} n={n}",
                        all(c.passed for c in source_checks),
                        f"{len(source_checks)} vertices checked",
                    )
                )
                # (e) traveling map: bijection onto the next level's
                # non-principal ideals, one index step up.
                if n < n_max:
                    inner = enumerate_ideals(inst, n, d_bound - 1)
                    image = {traveling(inst, n, r.lattice).key() for r in inner}
                    nxt = enumerate_ideals(inst, n + 1, d_bound)
                    non_principal = {
                        r.lattice.key() for r in nxt if not r.principal
                    }
                    results.append(
                        CheckResult(
                            f"traveling {label} n={n}->{n + 1}",
                            len(image) == len(inner) and image == non_principal,
                            f"{len(inner)} ideals mapped",
                        )
                    )
    return results
