"""Acceptance gate: end-to-end checks of the library's headline guarantees.

Each test freezes one contract — two independent computational routes must
land on the same answer at a pinned tolerance.  The terminal summary prints
one PASS/FAIL line per criterion (see conftest.py).
"""

import math
import time

import numpy as np

import qbs

EPS = 1e-9


# -- criterion 1: region classifier vs. moment oracle on a grid --------------

def test_criterion_01_grid_oracle_agreement():
    started = time.perf_counter()
    step = 2.0 / 40.0
    checked = 0
    for i in range(41):
        for j in range(41):
            s, t = i * step, j * step
            if abs(s * s + t * t - 1.0) < 1e-6 or t < 1e-6 or abs(s - 1.0) < 1e-6:
                continue
            sigma = qbs.JointSpectrum([(s, t)])
            verdict = qbs.classify(sigma, qbs.SUBNORMAL, EPS).verdict
            oracle = qbs.point_subnormality_oracle(s, t, hankel_order=3, eps=EPS).passed
            assert verdict == oracle, f"disagreement at ({s}, {t})"
            checked += 1
    elapsed = time.perf_counter() - started
    assert checked > 1500
    assert elapsed < 10.0, f"grid sweep took {elapsed:.2f}s"


# -- criterion 2: alternating power sums vs. the closed form -----------------

def _psi(m: int, s: float, t: float) -> float:
    return math.fsum((-1) ** j * math.comb(m, j) * qbs.phi(j, s, t) for j in range(m + 1))


def _draw_coords(rng, mode: str) -> tuple[float, float]:
    if mode == "inside":
        s = rng.uniform(0.0, 0.9)
        return s, rng.uniform(0.0, math.sqrt(max(0.95 - s * s, 0.0)))
    if mode == "outside_left":
        s = rng.uniform(0.0, 0.9)
        return s, rng.uniform(math.sqrt(1.05 - s * s), 1.5)
    s = rng.uniform(1.1, 1.5)
    return s, rng.uniform(0.0, 1.2)


def test_criterion_02_alternating_sums_match_closed_form():
    rng = np.random.default_rng(20260816)
    modes = ("inside", "outside_left", "outside_right", "mixed")
    for trial in range(100):
        m = 1 + trial % 6
        dim = int(rng.integers(1, 9))
        mode = modes[trial % 4]
        coords = [_draw_coords(rng, mode if mode != "mixed"
                               else modes[int(rng.integers(0, 3))])
                  for _ in range(dim)]
        a = [s for s, _ in coords]
        b = [t for _, t in coords]
        emb = qbs.build_from_pair(qbs.PairModel.from_diagonal(a, b), levels=m)
        t_mat = emb.assemble()
        lam = np.zeros_like(t_mat)
        for j in range(m + 1):
            tj = np.linalg.matrix_power(t_mat, j)
            lam += (-1) ** j * math.comb(m, j) * (tj.conj().T @ tj)
        block = lam[emb.h1_dim:, emb.h1_dim:]
        eigs = np.sort(np.linalg.eigvalsh((block + block.conj().T) / 2.0))
        want = np.sort([_psi(m, s, t) for s, t in coords])
        np.testing.assert_allclose(eigs, want, atol=1e-9, rtol=0.0)

        sigma = qbs.joint_spectrum(emb, eps=EPS)
        psd = bool(eigs[0] >= -1e-9)
        nsd = bool(eigs[-1] <= 1e-9)
        assert psd == qbs.classify(sigma, qbs.m_contractive(m), EPS).verdict
        assert nsd == qbs.classify(sigma, qbs.m_expansive(m), EPS).verdict


# -- criterion 3: gram blocks of powers and the entry recursion --------------

def _random_commuting_psd(rng, dim: int, scale: float) -> tuple[np.ndarray, np.ndarray]:
    u, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
    da = rng.uniform(0.0, scale, size=dim)
    db = rng.uniform(0.0, scale, size=dim)
    return u @ np.diag(da) @ u.T, u @ np.diag(db) @ u.T


def test_criterion_03_power_gram_identity():
    rng = np.random.default_rng(3)
    levels = 6
    for trial in range(50):
        dim = int(rng.integers(1, 6))
        if trial < 40:
            pair = qbs.PairModel.from_diagonal(rng.uniform(0.0, 1.25, size=dim),
                                               rng.uniform(0.0, 1.25, size=dim))
        else:
            pair = qbs.PairModel.from_matrices(*_random_commuting_psd(rng, dim, 1.25))
        emb = qbs.build_from_pair(pair, levels=levels)
        t_mat = emb.assemble()
        width, d = emb.width, emb.d
        for n in range(1, 6):
            tn = np.linalg.matrix_power(t_mat, n)
            gram = tn.conj().T @ tn
            keep = list(range((levels + 1 - n) * width)) + \
                   list(range(emb.h1_dim, emb.h1_dim + d))
            expected = np.zeros((len(keep), len(keep)), dtype=complex)
            h1_keep = (levels + 1 - n) * width
            expected[:h1_keep, :h1_keep] = np.eye(h1_keep)
            expected[h1_keep:, h1_keep:] = qbs.omega(emb, n)
            block = gram[np.ix_(keep, keep)]
            assert qbs.opnorm(block - expected) <= 1e-10

        v = emb.v_matrix()
        for k in range(levels):
            prev = qbs.power(emb, k)
            left = v @ prev.E + emb.E @ prev.Q
            assert np.array_equal(left, qbs.power(emb, k + 1).E)


# -- criterion 4: norms of realized one-point models --------------------------

def test_criterion_04_realized_norms():
    for point, want in (((0.6, 0.8), 1.0), ((1.0, 1.0), math.sqrt(2.0)), ((2.0, 0.0), 2.0)):
        emb = qbs.realize_spectrum([point], levels=4)
        norm = qbs.operator_norm(emb, EPS)
        assert abs(norm - want) <= 1e-8
        top_singular = float(np.linalg.svd(emb.assemble(), compute_uv=False)[0])
        assert abs(top_singular - want) <= 1e-8


# -- criterion 5: Cauchy dual of expansive models ------------------------------

def _expansive_coords(rng, dim: int) -> list[tuple[float, float]]:
    coords = []
    for _ in range(dim):
        rr = rng.uniform(1.05, 4.0)
        theta = rng.uniform(0.0, math.pi / 2.0)
        r = math.sqrt(rr)
        coords.append((r * math.cos(theta), r * math.sin(theta)))
    return coords


def test_criterion_05_cauchy_dual_properties():
    rng = np.random.default_rng(5)
    for trial in range(50):
        dim = int(rng.integers(1, 6))
        coords = _expansive_coords(rng, dim)
        if trial < 40:
            pair = qbs.PairModel.from_diagonal([s for s, _ in coords], [t for _, t in coords])
        else:
            u, _ = np.linalg.qr(rng.normal(size=(dim, dim)))
            a = u @ np.diag([s for s, _ in coords]) @ u.T
            b = u @ np.diag([t for _, t in coords]) @ u.T
            pair = qbs.PairModel.from_matrices(a, b)
        emb = qbs.build_from_pair(pair, levels=4)
        dual = qbs.cauchy_dual(emb, EPS)

        assert abs(qbs.operator_norm(dual, EPS) - 1.0) <= 1e-8
        dual_sigma = qbs.joint_spectrum(dual, eps=EPS)
        assert qbs.classify(dual_sigma, qbs.SUBNORMAL, EPS).verdict
        back = qbs.cauchy_dual(dual, EPS)
        assert qbs.opnorm(back.assemble() - emb.assemble()) <= 1e-10

    for trial in range(200):
        points = []
        has_inside_off_axis = False
        for _ in range(int(rng.integers(1, 7))):
            kind = int(rng.integers(0, 3))
            if kind == 0:       # outside the closed disk, clear of the band
                rr = rng.uniform(1.0 + 1e-3, 4.0)
                theta = rng.uniform(0.0, math.pi / 2.0)
                r = math.sqrt(rr)
                points.append((r * math.cos(theta), r * math.sin(theta)))
            elif kind == 1:     # strictly inside, off the axis
                rr = rng.uniform(2e-3, 1.0 - 1e-3)
                theta = rng.uniform(0.05, math.pi / 2.0 - 0.05)
                r = math.sqrt(rr)
                points.append((r * math.cos(theta), r * math.sin(theta)))
                has_inside_off_axis = True
            else:               # on the axis
                points.append((rng.uniform(0.2, 3.0), 0.0))
        sigma = qbs.JointSpectrum(points)
        lhs = qbs.classify(sigma, qbs.DUAL_SUBNORMAL, EPS).verdict
        rhs = qbs.classify(qbs.dual_spectral_map(sigma), qbs.SUBNORMAL, EPS).verdict
        assert lhs == rhs == (not has_inside_off_axis)


# -- criterion 6: pencil endpoint, scan flip, and degenerate intervals --------

def test_criterion_06_pencil_endpoint_and_scan():
    emb = qbs.realize_spectrum([(0.6, 0.8)], levels=4)
    sigma = qbs.joint_spectrum(emb, eps=EPS)
    endpoint = qbs.beta_dagger(sigma, EPS)
    assert abs(endpoint - 1.0) <= 1e-9

    alphas = [0.9 + i * 1e-3 for i in range(201)]
    rows = qbs.pencil_scan(sigma, "e", alphas, EPS)
    verdicts = [ok for _, ok in rows]
    assert verdicts[0] and not verdicts[-1]
    flip = verdicts.index(False)
    assert all(verdicts[:flip]) and not any(verdicts[flip:])
    last_true, first_false = rows[flip - 1][0], rows[flip][0]
    assert abs(last_true - endpoint) <= 1e-3 + 1e-9
    assert abs(first_false - endpoint) <= 1e-3 + 1e-9

    tall = qbs.JointSpectrum([(0.5, 1.2)])
    assert qbs.sub_Q(tall, EPS).kind is qbs.IntervalKind.EMPTY

    split = qbs.JointSpectrum([(0.9, 0.0), (0.0, 0.7)])
    interval = qbs.sub_Q(split, EPS)
    assert interval.kind is qbs.IntervalKind.ALL_OF_R_PLUS
    assert interval.contains(123.0)


# -- criterion 7: Brownian verdicts, spectral and structural ------------------

def _random_atom_model(rng) -> tuple[qbs.AtomModel, bool, bool]:
    atoms = []
    has_flagged_shift = False
    for _ in range(int(rng.integers(1, 6))):
        kind = int(rng.integers(0, 4))
        if kind == 0:
            atoms.append(qbs.QAtom(qbs.AtomKind.UNITARY, 1.0, rng.uniform(0.0, 2.0)))
        elif kind == 1:
            atoms.append(qbs.QAtom(qbs.AtomKind.SHIFT, 1.0, 0.0))
        elif kind == 2:
            atoms.append(qbs.QAtom(qbs.AtomKind.SHIFT, 1.0, rng.uniform(0.1, 2.0)))
            has_flagged_shift = True
        else:
            theta = rng.uniform(0.05, math.pi / 2.0 - 0.05)
            which = qbs.AtomKind.SHIFT if rng.integers(0, 2) else qbs.AtomKind.UNITARY
            atoms.append(qbs.QAtom(which, math.cos(theta), math.sin(theta)))
    quasi = True
    if rng.uniform() < 0.3:
        atoms.append(qbs.QAtom(qbs.AtomKind.UNITARY, 0.5, 0.2))
        quasi = False
    return qbs.AtomModel(tuple(atoms)), quasi, quasi and not has_flagged_shift


def test_criterion_07_brownian_verdicts():
    corner = qbs.AtomModel((qbs.QAtom(qbs.AtomKind.SHIFT, 1.0, 1.0),))
    report = qbs.classify_brownian(corner, EPS)
    assert report.quasi_brownian and not report.brownian
    _, three = qbs.atom_spectra(corner)
    assert {(p.s, p.t, p.r) for p in three.points} == {(1.0, 1.0, 1.0), (1.0, 1.0, 0.0)}

    unitary = qbs.AtomModel((qbs.QAtom(qbs.AtomKind.UNITARY, 1.0, 1.0),))
    assert qbs.classify_brownian(unitary, EPS).brownian

    bare_shift = qbs.AtomModel((qbs.QAtom(qbs.AtomKind.SHIFT, 1.0, 0.0),))
    assert qbs.classify_brownian(bare_shift, EPS).brownian

    rng = np.random.default_rng(7)
    for _ in range(100):
        model, want_quasi, want_brownian = _random_atom_model(rng)
        report = qbs.classify_brownian(model, EPS)   # cross-checks both routes
        assert report.quasi_brownian == want_quasi
        assert report.brownian == want_brownian
        if want_quasi:
            dec = qbs.brownian_decomposition(model, EPS)
            assert (len(dec.shift_flags) == 0) == report.brownian
            assert not dec.unclassifiable


# -- criterion 8: the two-atom family with a detached Q eigenvalue ------------

def test_criterion_08_two_atom_family():
    cases = {(0.6, 0.8): True, (1.0, 0.5): False, (0.5, 0.5): True,
             (2.0, 1.0): False, (1.0, 0.0): True}
    for (tau, eta), want_subnormal in cases.items():
        pair = qbs.PairModel.from_diagonal([tau, 2.0], [eta, 0.0])
        emb = qbs.build_from_pair(pair, levels=4)
        sigma = qbs.joint_spectrum(emb, eps=EPS)
        assert {(p.s, p.t) for p in sigma.points} == {(tau, eta), (2.0, 0.0)}
        assert qbs.classify(sigma, qbs.SUBNORMAL, EPS).verdict == want_subnormal
        want_norm = max(1.0, math.hypot(tau, eta), 2.0)
        assert abs(qbs.operator_norm(emb, EPS) - want_norm) <= 1e-8


# -- criterion 9: moment oracle witnesses and perturbation law ----------------

def test_criterion_09_moment_oracle_and_perturbation():
    arithmetic = [1.0 + 0.25 * n for n in range(4)]
    result = qbs.stieltjes_oracle(arithmetic, 1, eps=EPS)
    assert not result.passed and result.order == 1
    assert result.witness.which == "hankel"
    assert np.array_equal(result.witness.matrix, [[1.0, 1.25], [1.25, 1.5]])
    assert abs(np.linalg.det(result.witness.matrix) + 1.0 / 16.0) <= 1e-12

    squares = [float(n * n) for n in range(10)]
    assert list(qbs.finite_difference(squares, 2)) == [2.0] * 8

    rng = np.random.default_rng(9)
    pool = (0.3, 0.7, 1.0, 1.6, 2.2)
    for _ in range(100):
        count = int(rng.integers(1, len(pool) + 1))
        locs = list(rng.choice(pool, size=count, replace=False))
        mu = qbs.AtomicMeasure(tuple((x, float(rng.uniform(0.0, 2.0))) for x in locs))
        if rng.uniform() < 0.4:
            c0 = float(rng.uniform(-2.0, 2.0))
            if abs(mu.mass_at(1.0) + c0) < 1e-6:
                c0 += 0.5
            coeffs = [c0]
        else:
            degree = int(rng.integers(1, 4))
            coeffs = [float(rng.uniform(-1.0, 1.0)) for _ in range(degree)]
            coeffs.append(float(rng.uniform(0.1, 1.0)))
        result = qbs.polynomial_perturbation_test(mu, coeffs)
        degree = max((i for i, c in enumerate(coeffs) if c != 0.0), default=-1)
        want = degree <= 0 and mu.mass_at(1.0) + (coeffs[0] if coeffs else 0.0) >= 0.0
        assert result.is_moment == want
        if result.is_moment:
            got = result.measure.moments(7)
            want_moments = [mu.moment(n) + coeffs[0] for n in range(7)]
            np.testing.assert_allclose(got, want_moments, atol=1e-12, rtol=0.0)


# -- criterion 10: higher-order regions collapse to their stable forms --------

def test_criterion_10_region_collapse():
    rng = np.random.default_rng(10)
    mismatches = 0
    for _ in range(200):
        count = int(rng.integers(1, 6))
        sigma = qbs.JointSpectrum(
            [(rng.uniform(0.0, 2.5), rng.uniform(0.0, 2.5)) for _ in range(count)])

        def verdict(region):
            return qbs.classify(sigma, region, EPS).verdict

        for m in (3, 4, 5, 6):
            if verdict(qbs.m_isometric(m)) != verdict(qbs.m_isometric(2)):
                mismatches += 1
        for m in (1, 3, 5):
            if verdict(qbs.m_expansive(m)) != verdict(qbs.EXPANSION):
                mismatches += 1
        for m in (4, 6):
            if verdict(qbs.m_expansive(m)) != verdict(qbs.m_expansive(2)):
                mismatches += 1
        for m in (5, 7):
            if verdict(qbs.m_contractive(m)) != verdict(qbs.m_contractive(3)):
                mismatches += 1
    assert mismatches == 0
