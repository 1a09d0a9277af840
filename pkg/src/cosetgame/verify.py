"""Named invariant checks, shared by the CLI verify command and the tests.

Every check is deterministic: sampled checks derive their generator from a
fixed seed, so verify output is reproducible run to run.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bound import bound_summand, count_by_intersection, rate_envelope, upper_bound
from .cosets import (
    CosetLabel,
    coset_state_direct,
    coset_state_encoded,
    coset_state_pauli,
    random_label,
)
from .f2 import (
    BitVec,
    Subspace,
    gaussian_binomial,
    intersection_dim,
    orthogonal_complement,
    rank_of_words,
)
from .game import (
    _all_subspaces,
    coset_rep_vectors,
    default_strategy,
    dual_rep_vectors,
    exact_value,
    exact_value_simulated,
    monte_carlo,
    prepare,
    round_rng,
    sample_subspace,
    subspace_success,
)
from .qstate import (
    CNOT,
    DensityOp,
    H,
    Proj,
    StateVec,
    TOL,
    equal_exact,
    equal_up_to_phase,
    partial_trace_second_half,
    project_prob,
    run_circuit,
)
from .strategy import povm_elements, Side, win_probability_formula

SEED = 20260823


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _subspace_pool(m: int, cap: int, salt: int):
    """All subspaces when few enough, else a deterministic uniform sample."""
    pool = _all_subspaces(m)
    if len(pool) <= cap:
        return list(pool)
    rng = round_rng(SEED, salt)
    return [sample_subspace(m, rng) for _ in range(cap)]


def check_qbinom_pascal(m: int):
    # product formula against the q-Pascal recurrence, n up to 12
    table = {(0, 0): 1}
    for n in range(1, 13):
        for k in range(n + 1):
            table[(n, k)] = table.get((n - 1, k - 1), 0) + (1 << k) * table.get((n - 1, k), 0)
    bad = [(n, k) for (n, k), v in table.items() if gaussian_binomial(n, k) != v]
    return not bad, f"n<=12, first mismatch {bad[:1]}" if bad else "n<=12 all k"


def check_qvandermonde(m: int):
    for mm in range(1, 21):
        total = sum((1 << k * k) * gaussian_binomial(mm, k) ** 2 for k in range(mm + 1))
        if total != gaussian_binomial(2 * mm, mm):
            return False, f"fails at m={mm}"
    return True, "m<=20 exact"


def check_subspace_count(m: int):
    got = len(_all_subspaces(m))
    want = gaussian_binomial(2 * m, m)
    return got == want, f"{got} of {want}"


def check_intersection_census(m: int):
    second = tuple(range(m + 1, 2 * m + 1))
    hist = {k: 0 for k in range(m + 1)}
    for W in _all_subspaces(m):
        hist[intersection_dim(W, second)] += 1
    bad = [k for k in hist if hist[k] != count_by_intersection(m, k)]
    return not bad, f"mismatch at k={bad}" if bad else f"histogram {hist}"


def check_bound_decomposition(m: int):
    for mm in range(1, 9):
        total = sum(
            count_by_intersection(mm, k) * Fraction(1, 1 << (mm - k))
            for k in range(mm + 1)
        )
        if total / gaussian_binomial(2 * mm, mm) != upper_bound(mm):
            return False, f"fails at m={mm}"
    return True, "m<=8 exact"


def check_rate_envelope(m: int):
    for mm in range(1, 21):
        lo, hi = rate_envelope(mm)
        if not lo <= upper_bound(mm) <= hi:
            return False, f"fails at m={mm}"
    return True, "m<=20 exact"


def check_summand_ratio(m: int):
    for mm in range(2, 13):
        for k in range(mm - 1):
            if bound_summand(mm, k + 1) / bound_summand(mm, k) < Fraction(9, 2):
                return False, f"fails at m={mm}, k={k}"
    return True, "ratio >= 9/2, m<=12"


def check_complement_pairing(m: int):
    for W in _subspace_pool(m, 100, 1):
        Wp = orthogonal_complement(W)
        if Wp.dim != m or orthogonal_complement(Wp) != W:
            return False, f"involution fails at {W.gen}"
        for a in W.gen.rows:
            for b in Wp.gen.rows:
                if (a.word & b.word).bit_count() % 2:
                    return False, f"non-orthogonal rows at {W.gen}"
    return True, "dual dim, involution, orthogonality"


def check_state_routes(m: int):
    rng = round_rng(SEED, 2)
    count = 0
    if m <= 2:
        cases = [
            (W, x, z)
            for W in _all_subspaces(m)
            for x in coset_rep_vectors(W)
            for z in dual_rep_vectors(W)
        ]
    else:
        cases = []
        for _ in range(200):
            W = sample_subspace(m, rng)
            lbl = random_label(W, rng)
            cases.append((W, lbl.x, lbl.z))
    for W, x, z in cases:
        lbl = CosetLabel(W, x, z)
        direct = coset_state_direct(lbl)
        if not equal_exact(direct, coset_state_pauli(lbl)):
            return False, f"pauli route differs at {W.gen}, x={x}, z={z}"
        if not equal_up_to_phase(direct, coset_state_encoded(lbl)):
            return False, f"encoder route differs at {W.gen}, x={x}, z={z}"
        count += 1
    return True, f"{count} labels, three routes agree"


def check_localized_form(m: int):
    rng = round_rng(SEED, 3)
    count = 0
    for W in _subspace_pool(m, 60, 3):
        lf = default_strategy(W).lf
        labels = (
            [(x, z) for x in coset_rep_vectors(W) for z in dual_rep_vectors(W)]
            if m <= 2
            else [(lbl.x, lbl.z) for lbl in (random_label(W, rng) for _ in range(4))]
        )
        for x, z in labels:
            s = coset_state_encoded(CosetLabel(W, x, z))
            s = run_circuit(s, lf.bob_circuit + lf.charlie_circuit)
            want = run_circuit(StateVec.basis(2 * m, lf.apply_f(x + z)), lf.residual_circuit())
            if not equal_exact(s, want):
                return False, f"residual form differs at {W.gen}, x={x}, z={z}"
            count += 1
    return True, f"{count} labels localized exactly"


def check_bell_table(m: int):
    # CNOT(1,2) H(1) |c,t>; anticorrelated +-i outcomes for c=t, correlated else
    for c in (0, 1):
        for t in (0, 1):
            s = run_circuit(StateVec.basis(2, c << 1 | t), [H(1), CNOT(1, 2)])
            for o1 in (Proj.PlusI, Proj.MinusI):
                for o2 in (Proj.PlusI, Proj.MinusI):
                    p = project_prob(s, (o1, o2))
                    same = (o1 is o2) == (c != t)
                    want = 0.5 if same else 0.0
                    if abs(p - want) > TOL:
                        return False, f"case c={c} t={t} {o1.value}{o2.value}: {p}"
    return True, "four states, branch probabilities exactly 1/2"


def check_povm_complete(m: int):
    for W in _subspace_pool(m, 40, 4):
        lf = default_strategy(W).lf
        for side in Side:
            total = sum(povm_elements(lf, side).values())
            if np.abs(total - np.eye(1 << m)).max() > TOL:
                return False, f"{side.value} POVM incomplete at {W.gen}"
    return True, "both sides resolve the identity"


def check_decode_reps(m: int):
    for W in _subspace_pool(m, 40, 5):
        pw = prepare(default_strategy(W))
        xmask = sum(1 << (2 * m - c) for c in W.copivots)
        zmask = sum(1 << (2 * m - c) for c in W.pivots)
        for pattern in range(1 << pw.n):
            xg, zg = pw.decode_pattern(pattern)
            if xg.word & ~xmask or zg.word & ~zmask:
                return False, f"non-canonical guess at {W.gen} pattern {pattern}"
    return True, "guesses always canonical representatives"


def check_success_formula(m: int):
    cap = 100 if m >= 3 else 1 << 30
    worst = 0.0
    for W in _subspace_pool(m, cap, 6):
        worst = max(worst, abs(subspace_success(W) - float(win_probability_formula(W))))
        if worst > 1e-9:
            return False, f"off by {worst:.2e} at {W.gen}"
    return True, f"max deviation {worst:.2e}"


def _per_label_rates(W: Subspace):
    """Exact joint/bob/charlie success for every (x,z) via the dense pipeline."""
    pw = prepare(default_strategy(W))
    P = pw.outcome_matrix()
    decode_table = [pw.decode_pattern(p) for p in range(1 << pw.n)]
    out = []
    for x in coset_rep_vectors(W):
        for z in dual_rep_vectors(W):
            col = P[:, (x + z).word]
            pj = pb = pc = 0.0
            for pattern, (xg, zg) in enumerate(decode_table):
                okb = xg == x
                okc = zg == z
                if okb:
                    pb += col[pattern]
                if okc:
                    pc += col[pattern]
                if okb and okc:
                    pj += col[pattern]
            out.append((x, z, pj, pb, pc))
    return out


def check_marginals_equal(m: int):
    for W in _subspace_pool(m, 30, 7):
        for x, z, pj, pb, pc in _per_label_rates(W):
            if abs(pj - pb) > 1e-9 or abs(pj - pc) > 1e-9:
                return False, f"marginals differ at {W.gen}, x={x}, z={z}"
    return True, "bob and charlie correct together on every label"


def check_classical_core(m: int):
    # no Bell pairs: win is deterministic, 1 iff z_i = x_{h(i)} for all pairs
    hits = 0
    cap = 40 if m >= 3 else 1 << 30
    for W in _all_subspaces(m):
        if hits >= cap:
            break
        lf = default_strategy(W).lf
        if lf.residual_pairs:
            continue
        hits += 1
        for x, z, pj, pb, pc in _per_label_rates(W):
            want = 1.0 if all(z.get(i) == x.get(j) for i, j in lf.h) else 0.0
            if abs(pj - want) > 1e-9 or abs(pb - pc) > 1e-9:
                return False, f"classical replay fails at {W.gen}, x={x}, z={z}"
    return True, f"{hits} zero-pair subspaces replayed"


def check_reduced_states(m: int):
    cap = 10 if m >= 3 else 1 << 30
    for W in _subspace_pool(m, cap, 8):
        xs = coset_rep_vectors(W)
        zs = dual_rep_vectors(W)
        rhos = []
        for x in xs:
            mats = [
                partial_trace_second_half(coset_state_direct(CosetLabel(W, x, z)))
                for z in zs
            ]
            rhos.append(DensityOp(m, sum(d.mat for d in mats) / len(mats)))
        big = [r.word for r in W.gen.rows] + [1 << k for k in range(m)]
        base = rank_of_words(big)
        for i, x in enumerate(xs):
            for j in range(i + 1, len(xs)):
                same = rank_of_words(big + [(x + xs[j]).word]) == base
                if same and rhos[i].frobenius_distance(rhos[j]) > 1e-9:
                    return False, f"equal-class states differ at {W.gen}"
                if not same and abs(rhos[i].product_trace(rhos[j])) > 1e-9:
                    return False, f"cross-class states overlap at {W.gen}"
    return True, "identical within class, orthogonal across"


def check_tightness_exact(m: int):
    ev, ub = exact_value(m), upper_bound(m)
    return ev == ub, f"value {ev}, bound {ub}"


def check_tightness_simulated(m: int):
    ev = float(exact_value(m))
    sim = exact_value_simulated(m, seed=SEED)
    if m <= 2:
        ok = abs(sim - ev) < 1e-9
        return ok, f"simulated {sim:.12f} vs exact {ev:.12f}"
    # sampled over subspaces: allow three population sigmas
    vals = [float(win_probability_formula(W)) for W in _all_subspaces(m)]
    sigma = float(np.std(vals)) / np.sqrt(100)
    ok = abs(sim - ev) < 3 * sigma
    return ok, f"simulated {sim:.6f} vs exact {ev:.6f} (3 sigma {3 * sigma:.6f})"


def check_monte_carlo(m: int):
    rounds = 1500
    a = monte_carlo(m, rounds, SEED)
    b = monte_carlo(m, rounds, SEED)
    if (a.joint_wins, a.bob_wins, a.charlie_wins) != (b.joint_wins, b.bob_wins, b.charlie_wins):
        return False, "replay with equal seed diverged"
    p = float(upper_bound(m))
    sigma = (p * (1 - p) / rounds) ** 0.5
    if abs(a.joint_rate - p) > 3 * sigma:
        return False, f"joint rate {a.joint_rate:.4f} outside 3 sigma of {p:.4f}"
    if a.joint_rate > min(a.bob_rate, a.charlie_rate):
        return False, "joint rate exceeds a marginal"
    return True, f"{rounds} rounds, joint {a.joint_rate:.4f} vs {p:.4f}"


CHECKS = (
    ("qbinom-pascal", check_qbinom_pascal),
    ("qvandermonde", check_qvandermonde),
    ("subspace-count", check_subspace_count),
    ("intersection-census", check_intersection_census),
    ("bound-decomposition", check_bound_decomposition),
    ("rate-envelope", check_rate_envelope),
    ("summand-ratio", check_summand_ratio),
    ("complement-pairing", check_complement_pairing),
    ("state-routes", check_state_routes),
    ("localized-form", check_localized_form),
    ("bell-table", check_bell_table),
    ("povm-complete", check_povm_complete),
    ("decode-reps", check_decode_reps),
    ("success-formula", check_success_formula),
    ("marginals-equal", check_marginals_equal),
    ("classical-core", check_classical_core),
    ("reduced-states", check_reduced_states),
    ("tightness-exact", check_tightness_exact),
    ("tightness-simulated", check_tightness_simulated),
    ("monte-carlo", check_monte_carlo),
)


def run_checks(m: int, names=None) -> list[CheckResult]:
    if not 1 <= m <= 3:
        raise ValueError("verify supports m 1..3")
    wanted = set(names) if names is not None else None
    results = []
    for name, fn in CHECKS:
        if wanted is not None and name not in wanted:
            continue
        try:
            passed, detail = fn(m)
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"error: {exc}"
        results.append(CheckResult(name=name, passed=bool(passed), detail=str(detail)))
    return results
