"""Exit criteria for the package, each run at its pinned tolerance."""
import json

import numpy as np
import pytest
from scipy import stats

from oracles import hull_regions, luders_oracle, random_hermitian, random_unit, singlet_correlation
from ebloch import io
from ebloch.bell_rod import (
    OPTIMAL_ANGLES,
    RodConfig,
    chsh_report,
    joint_distribution,
    order_invariance_check,
)
from ebloch.composite import SINGLET, build_entangled, decompose_direct_sum, is_product, partial_trace, product_state
from ebloch.composite import BipartiteState
from ebloch.hidden_measurement import (
    born_probabilities,
    eigenbasis_matrix,
    monte_carlo_report,
    project_onto_simplex,
    region_of,
    run_degenerate,
    sample_lambda,
    trajectory_stage1,
)
from ebloch.observables import group_degenerate, measurement_simplex, spin_axis, spin_product
from ebloch.rng import stream
from ebloch.state_space import from_bloch, purity, random_mixed, random_pure, to_bloch
from ebloch.su_basis import PAULI, build_gell_mann, build_tensor_basis, verify_basis

NS = (2, 3, 4)
TRIALS_MC = 100_000
TRIALS_ROD = 1_000_000


def corpus(n, count, seed):
    """Random (density matrix, observable) pairs, half pure and half mixed."""
    rng = stream(seed, n)
    out = []
    for k in range(count):
        D = random_pure(n, rng) if k % 2 else random_mixed(n, rng)
        out.append((D, random_hermitian(n, rng)))
    return out


def test_01_generator_suites(criterion):
    criterion(1, "generator suites: Gell-Mann N=2..5 at 1e-12; tensor basis equals explicit 15-matrix list")
    for n in (2, 3, 4, 5):
        rep = verify_basis(build_gell_mann(n))
        assert rep.passed and max(rep.hermiticity, rep.trace, rep.gram) <= 1e-12
    tb = build_tensor_basis(2, 2)
    eye = np.eye(2)
    explicit = [np.kron(s, eye) for s in PAULI] + [np.kron(eye, s) for s in PAULI]
    explicit += [np.kron(PAULI[a], PAULI[b]) for a in range(3) for b in range(3)]
    assert np.array_equal(tb.matrices, np.array(explicit) / np.sqrt(2))
    assert verify_basis(tb).passed


def test_02_bloch_round_trip(criterion):
    criterion(2, "Bloch round trip and purity formula, 100 mixed states per N, 1e-12")
    for n in NS:
        b = build_gell_mann(n)
        rng = stream(2, n)
        for _ in range(100):
            D = random_mixed(n, rng)
            r = to_bloch(D, b)
            assert np.max(np.abs(from_bloch(r, b) - D)) <= 1e-12
            assert abs(purity(r) - np.trace(D @ D).real) <= 1e-12


def test_03_simplex_geometry(criterion):
    criterion(3, "vertex Gram = (N delta_ij - 1)/(N - 1), 50 observables per N, 1e-10")
    for n in NS:
        b = build_gell_mann(n)
        expect = (n * np.eye(n) - 1) / (n - 1)
        for _, O in corpus(n, 50, 3):
            assert np.max(np.abs(measurement_simplex(O, b).gram() - expect)) <= 1e-10


def test_04_born_analytic(criterion):
    criterion(4, "born_probabilities = Tr(D P_i), 1e-10")
    for n in NS:
        b = build_gell_mann(n)
        for D, O in corpus(n, 50, 3):
            sx = measurement_simplex(O, b)
            oracle = np.array([np.trace(D @ P).real for P in sx.projectors])
            assert np.max(np.abs(born_probabilities(to_bloch(D, b), sx) - oracle)) <= 1e-10


def test_05_born_monte_carlo(criterion):
    criterion(5, "Monte Carlo Born rule: 10 pairs per N, 1e5 trials, 4 sigma per outcome, chi2 p > 1e-4")
    for n in NS:
        b = build_gell_mann(n)
        for k, (D, O) in enumerate(corpus(n, 10, 5)):
            sx = measurement_simplex(O, b)
            rep = monte_carlo_report(to_bloch(D, b), sx, trials=TRIALS_MC, seed=5000 + 10 * n + k)
            p = np.array([np.trace(D @ P).real for P in sx.projectors])
            assert np.all(np.abs(rep.frequencies - p) <= 4 * np.sqrt(p * (1 - p) / TRIALS_MC))
            assert rep.p_value > 1e-4


def test_06_region_rule_oracle(criterion):
    criterion(6, "region argmin rule = hull-membership oracle, 1e4 instances per N, zero disagreements")
    for n in NS:
        b = build_gell_mann(n)
        rng = stream(6, n)
        sx = measurement_simplex(random_hermitian(n, rng), b)
        disagreements = checked = 0
        for k in range(10_000):
            if k % 100 == 0:
                sx = measurement_simplex(random_hermitian(n, rng), b)
            on = project_onto_simplex(to_bloch(random_mixed(n, rng), b), sx)
            lam = sample_lambda(sx, rng)
            found, strict = hull_regions(lam @ sx.vertices, on.r_par, sx.vertices)
            assert found
            if len(strict) == 1:
                checked += 1
                disagreements += region_of(lam, on) != strict[0]
        assert disagreements == 0
        assert checked >= 9_900


def test_07_trajectory(criterion):
    criterion(7, "stage-1 off-diagonals = (1 - tau) d_ij at 1e-12; Born invariant along stage 1 at 1e-10")
    for n in NS:
        b = build_gell_mann(n)
        for D, O in corpus(n, 20, 7):
            sx = measurement_simplex(O, b)
            r = to_bloch(D, b)
            d = sx.decomposition.vectors.conj().T @ D @ sx.decomposition.vectors
            p0 = born_probabilities(r, sx)
            off = ~np.eye(n, dtype=bool)
            for tau in (0, 0.25, 0.5, 0.75, 1):
                rt = trajectory_stage1(r, sx, tau)
                M = eigenbasis_matrix(rt, sx)
                assert np.max(np.abs(M[off] - (1 - tau) * d[off])) <= 1e-12
                assert np.max(np.abs(born_probabilities(rt, sx) - p0)) <= 1e-10


def test_08_degenerate(criterion):
    criterion(8, "spin-product fusion: group frequencies 4 sigma at 1e5; Lueders and sub-simplex at 1e-10")
    b = build_gell_mann(4)
    rng = stream(8)
    for k in range(6):
        O = spin_product(random_unit(rng), random_unit(rng))
        sx = measurement_simplex(O, b)
        g = group_degenerate(sx.decomposition)
        assert g.groups == ((0, 1), (2, 3))
        D = random_pure(4, rng) if k % 2 else random_mixed(4, rng)
        r = to_bloch(D, b)
        proj = {0: (np.eye(4) + O) / 2, 1: (np.eye(4) - O) / 2}
        pM = np.array([np.trace(D @ proj[m]).real for m in (0, 1)])
        rep = monte_carlo_report(r, sx, g, trials=TRIALS_MC, seed=800 + k)
        assert np.all(np.abs(rep.frequencies - pM) <= 4 * np.sqrt(pM * (1 - pM) / TRIALS_MC))
        for j in range(10):
            rec = run_degenerate(r, sx, g, stream(801, k, j))
            assert np.max(np.abs(rec.post_state - luders_oracle(D, proj[rec.group]))) <= 1e-10
            back = project_onto_simplex(to_bloch(rec.post_state, b), sx).barycentric
            assert np.max(np.abs(back - rec.subsimplex)) <= 1e-10


def test_09_direct_sum(criterion):
    criterion(9, "direct sum: rA/rB = partial-trace Bloch vectors; singlet rcorr; product factorization, 1e-10")
    tb, q = build_tensor_basis(2, 2), build_gell_mann(2)
    rng = stream(9)
    for _ in range(100):
        s = BipartiteState(random_mixed(4, rng))
        d = decompose_direct_sum(to_bloch(s.joint, tb), tb)
        assert np.max(np.abs(d.rA - to_bloch(partial_trace(s, "A"), q))) <= 1e-10
        assert np.max(np.abs(d.rB - to_bloch(partial_trace(s, "B"), q))) <= 1e-10
    singlet = build_entangled(SINGLET).joint
    d = decompose_direct_sum(to_bloch(singlet, tb), tb)
    direct = np.array(
        [[np.sqrt(2 / 3) * np.trace(singlet @ np.kron(PAULI[a], PAULI[c]) / np.sqrt(2)).real for c in range(3)] for a in range(3)]
    )
    assert np.max(np.abs(d.rA)) <= 1e-10 and np.max(np.abs(d.rB)) <= 1e-10
    assert np.max(np.abs(d.corr_matrix - direct)) <= 1e-10
    assert np.max(np.abs(d.corr_matrix - (-np.eye(3) / np.sqrt(3)))) <= 1e-10
    assert abs(np.linalg.norm(d.rcorr) - 1) <= 1e-10
    for _ in range(20):
        dp = decompose_direct_sum(to_bloch(product_state(random_mixed(2, rng), random_mixed(2, rng)).joint, tb), tb)
        assert np.max(np.abs(dp.corr_matrix - np.outer(dp.rA, dp.rB) / np.sqrt(3))) <= 1e-10
        assert is_product(dp, 1e-10)


def test_10_rod_model(criterion):
    criterion(10, "rod model: 12 axis pairs x 1e6, E/marginals/joint cells within 4 sigma, both orders")
    rng = stream(10)
    for k in range(12):
        nA, nB = random_unit(rng), random_unit(rng)
        cfg = RodConfig(nA, nB)
        table = joint_distribution(cfg, TRIALS_ROD, seed=1000 + k)
        est = table.correlation()
        assert abs(singlet_correlation(nA, nB) + nA @ nB) <= 1e-12
        assert abs(est.E + nA @ nB) <= 4 * est.std_error
        mA, mB = table.marginals
        sd = 4 * np.sqrt(0.25 / TRIALS_ROD)
        assert np.all(np.abs(mA - 0.5) <= sd) and np.all(np.abs(mB - 0.5) <= sd)
        assert np.all(np.abs(table.z_scores) <= 4)
        rep = order_invariance_check(cfg, TRIALS_ROD, seed=2000 + k)
        assert rep["pass"]


def test_11_chsh(criterion):
    criterion(11, "CHSH: optimal coplanar angles give 2*sqrt(2) +- 0.02 at 1e6; equal axes give S <= 2 + 4 sigma")
    axes = [spin_axis(t) for t in OPTIMAL_ANGLES]
    rep = chsh_report(*axes, trials=TRIALS_ROD, seed=11)
    assert abs(rep["S"] - 2 * np.sqrt(2)) <= 0.02
    same = chsh_report(*[spin_axis(0)] * 4, trials=TRIALS_ROD, seed=11)
    assert same["S"] <= 2 + 4 * same["stderr"]


def test_12_determinism(criterion):
    criterion(12, "same seed gives byte-identical reports, independent of thread count")
    b = build_gell_mann(3)
    D, O = corpus(3, 1, 12)[0]
    sx = measurement_simplex(O, b)
    r = to_bloch(D, b)
    cfg = RodConfig(spin_axis(0), spin_axis(50))
    axes = [spin_axis(t) for t in OPTIMAL_ANGLES]

    def reports(threads):
        return [
            io.dumps(monte_carlo_report(r, sx, trials=TRIALS_MC * 3, seed=12, threads=threads).to_dict()),
            io.dumps(joint_distribution(cfg, TRIALS_ROD, seed=12, threads=threads).to_dict()),
            io.dumps(chsh_report(*axes, trials=300_000, seed=12, threads=threads)),
            io.dumps(order_invariance_check(cfg, 300_000, seed=12, threads=threads)),
        ]

    first = reports(1)
    assert reports(1) == first
    assert reports(4) == first
