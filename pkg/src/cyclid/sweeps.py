"""Exhaustive desk-scale verification sweeps.

Every classification rule, bound, and counting identity the library
relies on is re-derived here by brute force over small parameter
spaces and compared with the closed-form machinery.  The sweeps return
plain result records so both the test suite and the ``verify`` CLI can
run them and report per-check counts.

The heavy noise-free/noisy distribution sweep is organized in rows of
the assumed block length n so that the error-residue dynamic programs
are computed once per (n, f, p) and shared across codes and
subspaces.  Rows are independent and run in a small thread pool; the
hot kernels release the GIL.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from ._kernels import ortho_zero_count, rem_many, xor_convolve
from .codes import CyclicCode, GuardError, span_basis, syndrome_basis
from .dists import (
    BoundarySpan,
    DistributionClass,
    SyndromeDistribution,
    Truncation,
    _error_dp_cached,
    build_subspace,
    distinct_block_types,
    distribution_from_basis,
    predict_class,
    spec_for_block,
)
from .recon import lambda_coeff, mean_zero_coeff_prob_exact, reconstruct
from .stream import StreamConfig, generate_stream

_EQ23_SUPPORT_CAP = 256


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "SweepResult") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)
        for k, v in other.notes.items():
            if k in self.notes and isinstance(v, (int, float)):
                self.notes[k] += v
            elif k in self.notes and isinstance(v, list):
                self.notes[k].extend(v)
            else:
                self.notes[k] = v

    def summary(self) -> str:
        state = "ok" if self.ok else f"{len(self.failures)} FAILURES"
        return f"{self.name}: checked {self.checked}, {state}"


def _jobs(jobs: int | None) -> int:
    if jobs is None or jobs < 1:
        return min(4, os.cpu_count() or 1)
    return jobs


def nondegenerate_codes(n0: int) -> list[CyclicCode]:
    """All nontrivial non-degenerate C(n0, g0), canonically ordered."""
    out = []
    for g0 in gf2.divisors_xn1(n0):
        code = CyclicCode(n0, g0)
        if not code.is_trivial and not code.is_degenerate():
            out.append(code)
    return out


def _distinct_specs(code: CyclicCode, n: int) -> list:
    """Deduplicated subspace specs reachable over all offsets s for (code, n)."""
    specs = []
    for s in range(n):
        for bt in distinct_block_types(code.n, n, s, 0):
            spec = spec_for_block(code, bt)
            if spec not in specs:
                specs.append(spec)
    return specs


# --- the distribution sweep (noise-free and noisy) ---------------------------


def _component_bases(spec: BoundarySpan) -> list[list[int]]:
    """Bases of the independent summands of a boundary span, in position."""
    code = spec.code
    rows = lambda d, suffix: [  # noqa: E731
        (code.g << i) >> (code.n - d) if suffix else (code.g << i) & ((1 << d) - 1)
        for i in range(code.k)
    ]
    out = []
    if spec.d1:
        out.append(span_basis(rows(spec.d1, True)))
    for t in range(spec.q):
        shift = spec.d1 + t * code.n
        out.append([code.g << (i + shift) for i in range(code.k)])
    if spec.d2:
        shift = spec.d1 + spec.q * code.n
        out.append([b << shift for b in span_basis(rows(spec.d2, False))])
    return out


def _sweep_n_row(n: int, n0_list, p_list, with_noise: bool, with_components: bool):
    """All checks for one assumed block length n; returns named results."""
    res = {
        name: SweepResult(name)
        for name in (
            "cross_validation",
            "proposition1",
            "theorem2",
            "theorem3",
            "noisy_uniform",
            "theorem5_bound",
            "eq23_support",
        )
    }
    res["cross_validation"].notes["degenerate_instances"] = []
    divisors = [f for f in gf2.divisors_xn1(n) if 1 <= f.bit_length() - 1 < n]
    uniform_verified: set = set()
    for n0 in n0_list:
        if n > 2 * n0 + 2:
            continue
        codes = nondegenerate_codes(n0)
        for f in divisors:
            deg_f = f.bit_length() - 1
            err_dense = {}
            if with_noise and deg_f <= 20:
                for p in p_list:
                    err_dense[p] = _error_dp_cached(n, f, p)[0]
            for code in codes:
                trunc_kind = None
                comp_memo: dict = {}
                specs = sorted(
                    _distinct_specs(code, n), key=lambda sp: isinstance(sp, BoundarySpan)
                )
                for spec in specs:
                    try:
                        basis = build_subspace(spec)
                        dist = distribution_from_basis(basis, f)
                    except GuardError:
                        continue
                    kind = dist.kind
                    pred = predict_class(code, spec, f)
                    res["cross_validation"].checked += 1
                    if kind is not pred:
                        res["cross_validation"].failures.append(
                            (n0, code.g, n, spec, f, str(kind), str(pred))
                        )
                    aligned = (
                        isinstance(spec, BoundarySpan)
                        and spec.d1 == 0
                        and spec.d2 == 0
                    )
                    correct = aligned and gf2.rem(code.g, f) == 0
                    res["proposition1"].checked += 1
                    if kind is DistributionClass.IRREGULAR or (
                        kind is DistributionClass.DEGENERATE and not correct
                    ):
                        res["proposition1"].failures.append(
                            (n0, code.g, n, spec, f, str(kind))
                        )
                    if kind is DistributionClass.DEGENERATE:
                        res["cross_validation"].notes["degenerate_instances"].append(
                            (n0, code.g, n, f)
                        )
                    if isinstance(spec, Truncation):
                        trunc_kind = kind
                    elif n < n0 and trunc_kind is DistributionClass.UNIFORM:
                        # uniform truncation must propagate to every span
                        res["theorem2"].checked += 1
                        if kind is not DistributionClass.UNIFORM:
                            res["theorem2"].failures.append((n0, code.g, n, spec, f))
                    if with_components and isinstance(spec, BoundarySpan):
                        _check_theorem3(res["theorem3"], code, spec, f, kind, comp_memo)
                    if with_noise and deg_f <= 20:
                        _check_noisy(
                            res, spec, dist, f, p_list, err_dense, correct, uniform_verified
                        )
    return res


def _check_theorem3(result, code, spec, f, kind, memo):
    """Component classes (each separately enumerated) against the composite.

    The provable direction is that all-uniform components (after
    dropping degenerate ones) give a uniform composite.  The literal
    converse -- any restricted component forces a restricted composite --
    fails exactly when the component image subgroups sum to the full
    residue space, so the expected class always comes from the rank of
    the combined supports; violations of the literal converse are
    counted as a note.
    """
    deg_f = f.bit_length() - 1
    classes = []
    gens: list[int] = []
    for comp in _component_bases(spec):
        key = tuple(comp)
        if key not in memo:
            cd = distribution_from_basis(comp, f)
            size = cd.support_size()
            cgens = [int(cd.residues[1 << j]) for j in range(size.bit_length() - 1)]
            memo[key] = (cd.kind, cgens)
        ckind, cgens = memo[key]
        classes.append(ckind)
        gens.extend(cgens)
    live = [c for c in classes if c is not DistributionClass.DEGENERATE]
    rank = len(span_basis(gens))
    if rank == 0:
        expect = DistributionClass.DEGENERATE
    elif rank == deg_f:
        expect = DistributionClass.UNIFORM
    else:
        expect = DistributionClass.RESTRICTED_UNIFORM
    result.checked += 1
    if kind is not expect:
        result.failures.append((code.g, spec, f, f"rank={rank}", str(kind)))
    if live and all(c is DistributionClass.UNIFORM for c in live):
        if kind is not DistributionClass.UNIFORM:
            result.failures.append((code.g, spec, f, "all-uniform", str(kind)))
    elif (
        any(c is DistributionClass.RESTRICTED_UNIFORM for c in live)
        and kind is DistributionClass.UNIFORM
    ):
        result.notes["literal_converse_violations"] = (
            result.notes.get("literal_converse_violations", 0) + 1
        )


def _check_noisy(res, spec, dist, f, p_list, err_dense, correct, uniform_verified):
    deg_f = f.bit_length() - 1
    n = spec.n
    for p in p_list:
        dense = err_dense[p]
        zero = float(np.dot(dist.probs, dense[dist.residues.astype(np.int64)]))
        if not correct:
            # subgroup-coset bound on the zero-syndrome probability
            lam = lambda_coeff(n, deg_f, p)
            bound = float(dense[0]) * (lam + 1.0) / 2.0
            res["theorem5_bound"].checked += 1
            if zero > bound + 1e-12:
                res["theorem5_bound"].failures.append(
                    (spec, f, p, zero, bound)
                )
        if dist.kind is DistributionClass.UNIFORM and (f, p) not in uniform_verified:
            # uniform in, uniform out: one (n, f, p) instance covers all,
            # since every uniform base is the same distribution
            uniform_verified.add((f, p))
            noisy = SyndromeDistribution(
                f,
                np.arange(1 << deg_f, dtype=np.uint64),
                xor_convolve(dist.dense_probs(), dense),
            )
            res["noisy_uniform"].checked += 1
            if noisy.kind is not DistributionClass.UNIFORM:
                res["noisy_uniform"].failures.append((n, f, p, str(noisy.kind)))
        if (
            dist.kind is DistributionClass.RESTRICTED_UNIFORM
            and dist.support_size() <= _EQ23_SUPPORT_CAP
        ):
            # noisy masses on the noise-free support stay pairwise equal
            sup = dist.residues.astype(np.int64)
            masses = [
                float(np.dot(dist.probs, dense[np.bitwise_xor(sup, b)]))
                for b in sup.tolist()
            ]
            res["eq23_support"].checked += 1
            if max(masses) - min(masses) > 1e-12:
                res["eq23_support"].failures.append((spec, f, p))


def run_distribution_sweeps(
    n0_list=(7, 15),
    p_list=(0.01, 0.05, 0.1),
    with_noise: bool = True,
    with_components: bool = True,
    jobs: int | None = None,
    n_range: tuple[int, int] | None = None,
) -> dict[str, SweepResult]:
    """Noise-free cross-validation plus the noisy bound/preservation sweep.

    Covers every nontrivial non-degenerate g0 | X^n0+1, every reachable
    subspace spec for n in [2, 2*max(n0)+2], every nontrivial divisor f
    of X^n+1, within the enumeration guards.
    """
    lo, hi = n_range if n_range else (2, 2 * max(n0_list) + 2)
    rows = list(range(lo, hi + 1))
    results: dict[str, SweepResult] = {}
    worker = lambda n: _sweep_n_row(n, n0_list, p_list, with_noise, with_components)  # noqa: E731
    nj = _jobs(jobs)
    if nj > 1:
        with ThreadPoolExecutor(max_workers=nj) as pool:
            row_results = list(pool.map(worker, rows))
    else:
        row_results = [worker(n) for n in rows]
    for rr in row_results:
        for name, sub in rr.items():
            if name in results:
                results[name].merge(sub)
            else:
                results[name] = sub
    return results


# --- factor-entropy statistic sweep (criterion: mean always 1/2 below n0) -----


def sweep_mean_zero_coeff(
    n0: int = 15, p_list=(0.0, 0.05), jobs: int | None = None
) -> SweepResult:
    """Mean zero-coefficient probability is exactly 1/2 whenever n < n0."""
    result = SweepResult("mean_zero_coeff_half")
    codes = nondegenerate_codes(n0)

    def row(n):
        sub = SweepResult("row")
        for f in gf2.divisors_xn1(n):
            if not 1 <= f.bit_length() - 1 < n:
                continue
            for code in codes:
                for spec in _distinct_specs(code, n):
                    for p in p_list:
                        val = mean_zero_coeff_prob_exact(
                            code, _as_block_type(spec), f, p
                        )
                        sub.checked += 1
                        if abs(val - 0.5) > 1e-12:
                            sub.failures.append((code.g, n, spec, f, p, val))
        return sub

    nj = _jobs(jobs)
    rows = range(2, n0)
    if nj > 1:
        with ThreadPoolExecutor(max_workers=nj) as pool:
            subs = list(pool.map(row, rows))
    else:
        subs = [row(n) for n in rows]
    for sub in subs:
        result.checked += sub.checked
        result.failures.extend(sub.failures)
    return result


def _as_block_type(spec):
    from .dists import Boundary, Interior

    if isinstance(spec, Truncation):
        return Interior(0, spec.n)
    return Boundary(spec.d1, spec.q, spec.d2)


# --- appendix suites ----------------------------------------------------------


def sweep_lemma1(n0_list=(7, 15), trials: int = 200, seed: int = 7) -> SweepResult:
    """Counting identity: v.h is fair iff h is outside the dual code."""
    result = SweepResult("lemma1_inner_product")
    rng = np.random.default_rng(seed)
    for n0 in n0_list:
        for g in gf2.divisors_xn1(n0):
            code = CyclicCode(n0, g)
            if code.is_trivial or code.k > 12:
                continue
            basis = np.array([code.g << i for i in range(code.k)], dtype=np.uint64)
            for h in rng.integers(0, 1 << n0, size=trials, dtype=np.uint64):
                h = int(h)
                zeros = ortho_zero_count(basis, h)
                in_dual = gf2.rem(h, code.g_dual) == 0
                expect = 1 << code.k if in_dual else 1 << (code.k - 1)
                result.checked += 1
                if zeros != expect:
                    result.failures.append((n0, g, h, zeros, expect))
    return result


def sweep_lemma2(n0_list=(7, 15)) -> SweepResult:
    """Prefix/suffix alternative for every vector outside the dual."""
    result = SweepResult("lemma2_prefix_suffix")
    for n in n0_list:
        for g in gf2.divisors_xn1(n):
            code = CyclicCode(n, g)
            if code.is_trivial:
                continue
            rows = [code.g << i for i in range(code.k)]
            outside = np.array(
                [h for h in range(1 << n) if gf2.rem(h, code.g_dual) != 0],
                dtype=np.uint64,
            )
            for d1 in range(1, n):
                d2 = n - d1
                pre_basis = span_basis(r & ((1 << d1) - 1) for r in rows)
                suf_basis = span_basis(r >> d1 for r in rows)
                pre = outside & np.uint64((1 << d1) - 1)
                suf = outside >> np.uint64(d1)
                pre_in = np.ones(outside.size, dtype=bool)
                for b in pre_basis:
                    pre_in &= (np.bitwise_count(pre & np.uint64(b)) & 1) == 0
                suf_in = np.ones(outside.size, dtype=bool)
                for b in suf_basis:
                    suf_in &= (np.bitwise_count(suf & np.uint64(b)) & 1) == 0
                bad = pre_in & suf_in
                result.checked += int(outside.size)
                if bad.any():
                    result.failures.append((n, g, d1, int(outside[bad][0])))
    return result


def _tiles(v: int, n: int) -> bool:
    # nonzero v is a repetition of a shorter pattern
    for d in range(1, n):
        if n % d:
            continue
        w = v & ((1 << d) - 1)
        tiled = 0
        for i in range(n // d):
            tiled |= w << (i * d)
        if tiled == v:
            return True
    return False


def sweep_lemma3(n0_list=(7, 15)) -> SweepResult:
    """Degenerate-pattern codewords iff the dual generator has a small-order factor.

    The zero codeword is excluded from the scan: every code contains it
    and it tiles trivially.
    """
    result = SweepResult("lemma3_degenerate_pattern")
    for n in n0_list:
        for g in gf2.divisors_xn1(n):
            code = CyclicCode(n, g)
            if code.k == 0:
                has_pattern = False
            else:
                has_pattern = any(
                    _tiles(v, n) for v in code.codewords() if v
                )
            predicate = any(
                d != 1 and gf2.order(d) < n
                for d in gf2.divisors_of(code.g_dual, n)
            ) if code.g_dual != 1 else False
            result.checked += 1
            if has_pattern != predicate:
                result.failures.append((n, g, has_pattern, predicate))
    return result


def sweep_sullivan(n_lo: int = 4, n_hi: int = 12, p_list=(0.05, 0.1)) -> SweepResult:
    """Subgroup-coset probability inequalities from full error enumeration.

    Checks the stated ratio P[e in C]/P[e in G] >= lambda for every
    proper coset, and the stronger direction the zero-syndrome bound
    actually uses, P[e in G] <= lambda * P[e in C]; also cross-checks
    the enumerated coset masses against the dynamic program.
    """
    result = SweepResult("sullivan_coset_ratio")
    for n in range(n_lo, n_hi + 1):
        patterns = np.arange(1 << n, dtype=np.uint64)
        weights = np.bitwise_count(patterns).astype(np.float64)
        for f in gf2.divisors_xn1(n):
            deg_f = f.bit_length() - 1
            if not 1 <= deg_f < n:
                continue
            syndromes = rem_many(patterns, f).astype(np.int64)
            for p in p_list:
                mass = p**weights * (1 - p) ** (n - weights)
                coset = np.bincount(syndromes, weights=mass, minlength=1 << deg_f)
                dp = _error_dp_cached(n, f, p)[0]
                lam = lambda_coeff(n, deg_f, p)
                result.checked += 1
                if np.max(np.abs(coset - dp)) > 1e-12:
                    result.failures.append((n, f, p, "dp-mismatch"))
                    continue
                ratios = coset[0] / coset[1:]
                if np.min(ratios) < lam - 1e-12:
                    result.failures.append((n, f, p, "ratio<lambda"))
                if np.max(coset[1:]) > lam * coset[0] + 1e-12:
                    result.failures.append((n, f, p, "coset>lambda*subgroup"))
    return result


def sweep_syndrome_basis(n_lo: int = 4, n_hi: int = 16) -> SweepResult:
    """Syndrome coefficient vectors span exactly the dual code of C(n, f)."""
    result = SweepResult("syndrome_basis_span")
    for n in range(n_lo, n_hi + 1):
        for f in gf2.divisors_xn1(n):
            if not 1 <= f.bit_length() - 1 < n:
                continue
            code = CyclicCode(n, f)
            hs = syndrome_basis(n, f)
            dual_rows = [code.g_dual << i for i in range(n - code.k)]
            result.checked += 1
            if sorted(span_basis(hs)) != sorted(span_basis(dual_rows)):
                result.failures.append((n, f, "span"))
            if any(gf2.rem(h, code.g_dual) != 0 for h in hs):
                result.failures.append((n, f, "not multiple of dual generator"))
    return result


def sweep_pzero_identity(n_lo: int = 2, n_hi: int = 16, p_list=(0.01, 0.05, 0.1)) -> SweepResult:
    """Weight-distribution sum equals the error-DP mass at residue zero."""
    result = SweepResult("pzero_identity")
    for n in range(n_lo, n_hi + 1):
        for f in gf2.divisors_xn1(n):
            if not 1 <= f.bit_length() - 1 < n:
                continue
            code = CyclicCode(n, f)
            for p in p_list:
                a = code.p_zero_syndrome(p)
                b = float(_error_dp_cached(n, f, p)[0][0])
                result.checked += 1
                if abs(a - b) > 1e-12:
                    result.failures.append((n, f, p, a, b))
    return result


# --- algebra sweep -------------------------------------------------------------


def sweep_algebra(max_n: int = 40, trials: int = 300, seed: int = 1) -> SweepResult:
    """Ring axioms, division, factorization, orders, reciprocal, recurrences."""
    result = SweepResult("algebra")
    rng = np.random.default_rng(seed)

    def rand_poly(max_deg=24):
        return int(rng.integers(0, 1 << max_deg))

    for _ in range(trials):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        result.checked += 1
        ok = (
            gf2.add(a, b) == gf2.add(b, a)
            and gf2.add(a, a) == 0
            and gf2.mul(gf2.mul(a, b), c) == gf2.mul(a, gf2.mul(b, c))
            and gf2.mul(a, gf2.add(b, c)) == gf2.add(gf2.mul(a, b), gf2.mul(a, c))
        )
        if not ok:
            result.failures.append(("ring", a, b, c))
        m = rand_poly() | 1
        if m > 1:
            q, r = gf2.divmod_(a, m)
            result.checked += 1
            if gf2.add(gf2.mul(q, m), r) != a or (
                r and r.bit_length() >= m.bit_length()
            ):
                result.failures.append(("divmod", a, m))
        if a and b:
            g = gf2.gcd(a, b)
            result.checked += 1
            if gf2.rem(a, g) or gf2.rem(b, g):
                result.failures.append(("gcd", a, b))
        if a & 1 and b & 1:
            result.checked += 1
            if gf2.reciprocal(gf2.mul(a, b)) != gf2.mul(
                gf2.reciprocal(a), gf2.reciprocal(b)
            ) or gf2.reciprocal(gf2.reciprocal(a)) != a:
                result.failures.append(("reciprocal", a, b))

    for n in range(1, max_n + 1):
        factors = gf2.factor_xn1(n)
        prod = 1
        for f, mult in factors:
            for _ in range(mult):
                prod = gf2.mul(prod, f)
            result.checked += 2
            if not gf2.is_irreducible(f):
                result.failures.append(("irreducible", n, f))
            if n % gf2.order(f):
                result.failures.append(("order-divides", n, f))
        result.checked += 1
        if prod != gf2.xn1(n):
            result.failures.append(("product", n))
        divs = gf2.divisors_xn1(n)
        result.checked += 1
        expect = math.prod(m + 1 for _, m in factors)
        if len(divs) != expect or 1 not in divs or gf2.xn1(n) not in divs:
            result.failures.append(("divisors", n))

    # recurrence order equals least period, for every pattern of period <= 15
    for d in range(1, 16):
        for w in range(1, 1 << d):
            bits = gf2.poly_to_bits(w, d)
            if gf2.least_period(bits) != d:
                continue
            h = gf2.lrs_minimal_polynomial(bits * max(2, (2 * d + d - 1) // d))
            result.checked += 1
            if h == 1 or gf2.order(h) != d:
                result.failures.append(("lrs-period", d, w))
    return result


# --- reconstruction sweep -------------------------------------------------------


def sweep_reconstruction(
    seeds=range(10), p: float = 0.02, blocks: int = 2000
) -> SweepResult:
    """Seed-fixed end-to-end runs: known-code recovery and coin-flip rejection."""
    result = SweepResult("reconstruction")
    code = CyclicCode(7, gf2.parse_poly("x^3+x+1"))
    hits = 0
    for seed in seeds:
        s0 = seed % 7
        cfg = StreamConfig(code, s0=s0, p=p, blocks=blocks, seed=1000 + seed)
        rep = reconstruct(generate_stream(cfg), 3, 10, p)
        result.checked += 1
        if rep.winner == (7, s0, code.g):
            hits += 1
        else:
            result.failures.append(("recover", seed, rep.winner))
    result.notes["recovered"] = hits

    rejections = 0
    for seed in seeds:
        rng = np.random.Generator(np.random.Philox(2000 + seed))
        coin = rng.integers(0, 2, size=10_000, dtype=np.uint8)
        rep = reconstruct(coin, 3, 10, p)
        result.checked += 1
        if rep.winner is None:
            rejections += 1
        else:
            result.failures.append(("coin", seed, rep.winner))
    result.notes["rejected"] = rejections
    return result


# --- suite registry -------------------------------------------------------------


def run_suite(
    name: str, n0_list=(7, 15), jobs: int | None = None
) -> list[SweepResult]:
    """Named verification suites used by the command-line front end."""
    if name == "algebra":
        return [sweep_algebra()]
    if name == "distributions":
        res = run_distribution_sweeps(n0_list=n0_list, with_noise=False, jobs=jobs)
        out = [res[k] for k in ("cross_validation", "proposition1", "theorem2", "theorem3")]
        return out + [
            sweep_lemma1(n0_list=n0_list),
            sweep_lemma2(n0_list=n0_list),
            sweep_lemma3(n0_list=n0_list),
            sweep_syndrome_basis(),
        ]
    if name == "noisy":
        res = run_distribution_sweeps(n0_list=n0_list, with_components=False, jobs=jobs)
        return [
            res[k] for k in ("noisy_uniform", "eq23_support", "theorem5_bound")
        ] + [sweep_pzero_identity()]
    if name == "bounds":
        return [sweep_sullivan(), sweep_mean_zero_coeff(jobs=jobs)]
    if name == "recon":
        return [sweep_reconstruction()]
    if name == "all":
        out = []
        for suite in ("algebra", "distributions", "noisy", "bounds", "recon"):
            out.extend(run_suite(suite, n0_list=n0_list, jobs=jobs))
        return out
    raise ValueError(f"unknown suite {name!r}")
