import numpy as np
import pytest

from egclust import (
    build_distance_matrix,
    build_knn_network,
    compute_payoffs,
    grover_adjust,
    init_preferences,
    redistribute,
    rewire,
    select_target,
    update_preferences,
)


@pytest.fixture
def line3_state(line3):
    dm = build_distance_matrix(line3)
    net = build_knn_network(dm, k=2)
    return dm, net, init_preferences(net)


def test_init_uniform(line3_state):
    _, net, prefs = line3_state
    assert (prefs.p == 0.5).all()
    assert prefs.row_as_dict(net, 0) == {0: 0.5, 1: 0.5}


@pytest.mark.parametrize("k,expected", [(1, 1.0), (4, 0.25)])
def test_init_uniform_other_k(k, expected):
    rng = np.random.default_rng(0)
    net = build_knn_network(build_distance_matrix(rng.normal(size=(6, 2))), k=k)
    p = init_preferences(net).p
    assert (p == expected).all()
    assert np.allclose(p.sum(axis=1), 1.0)


def test_payoffs_line3(line3_state):
    dm, net, prefs = line3_state
    u = compute_payoffs(net, prefs, dm)
    assert u == pytest.approx([3.516327, 3.713061, 1.527772], abs=5e-6)


def test_payoffs_single_neighbor_unit_distance():
    # one player pointing at itself with p=1: u = Deg(self)/1 = indeg+k = 2
    dm = build_distance_matrix(np.array([[0.0]]))
    net = build_knn_network(dm, k=1)
    u = compute_payoffs(net, init_preferences(net), dm)
    assert u.tolist() == [2.0]


def test_payoffs_symmetric_when_coincident():
    dm = build_distance_matrix(np.zeros((4, 1)))
    net = build_knn_network(dm, k=4)
    u = compute_payoffs(net, init_preferences(net), dm)
    assert np.allclose(u, u[0])


def test_payoffs_linear_in_preference_row(line3_state):
    dm, net, prefs = line3_state
    base = compute_payoffs(net, prefs, dm)
    p2 = prefs.p.copy()
    p2[0, 1] *= 2  # doubling one entry doubles that term exactly
    from egclust.dynamics import PreferenceTable

    u2 = compute_payoffs(net, PreferenceTable(p=p2), dm)
    term = prefs.p[0, 1] * net.degree(net.gamma[0, 1]) / dm.d[0, net.gamma[0, 1]]
    assert u2[0] == pytest.approx(base[0] + term, rel=1e-12)
    assert u2[1] == base[1]


def test_payoffs_shape_mismatch_is_error(line3_state):
    dm, net, _ = line3_state
    from egclust.dynamics import PreferenceTable

    with pytest.raises(ValueError):
        compute_payoffs(net, PreferenceTable(p=np.ones((3, 3)) / 3), dm)


def test_redistribute_partial_swap():
    out = redistribute({1, 2, 3}, {1, 2, 4}, {1: 0.5, 2: 0.3, 3: 0.2})
    assert out == {1: 0.5, 2: 0.3, 4: pytest.approx(0.2)}


def test_redistribute_identity():
    p = {1: 0.7, 5: 0.3}
    assert redistribute({1, 5}, {1, 5}, p) == p


def test_redistribute_total_replacement():
    out = redistribute({1, 2}, {3, 4}, {1: 0.6, 2: 0.4})
    assert out == {3: pytest.approx(0.5), 4: pytest.approx(0.5)}


def test_redistribute_validates():
    with pytest.raises(ValueError):
        redistribute({1, 2}, {1}, {1: 0.5, 2: 0.5})
    with pytest.raises(ValueError):
        redistribute({1, 2}, {1, 3}, {1: 1.0})


def test_select_target_from_line3_payoffs():
    u = np.array([3.516327, 3.713061, 1.527772])
    assert select_target([0, 1], u) == 1
    assert select_target([2], u) == 2
    assert select_target([0, 1, 2], np.ones(3)) == 0  # tie -> smallest id


def test_grover_uniform_k4_concentrates_fully():
    out = grover_adjust({j: 0.25 for j in range(4)}, m=0)
    assert out[0] == pytest.approx(1.0, abs=1e-12)
    for j in (1, 2, 3):
        assert out[j] == pytest.approx(0.0, abs=1e-12)


def test_grover_uniform_k3_exact_fractions():
    out = grover_adjust({j: 1.0 / 3.0 for j in range(3)}, m=2)
    assert out[2] == pytest.approx(25.0 / 27.0, abs=1e-12)
    assert out[0] == pytest.approx(1.0 / 27.0, abs=1e-12)
    assert out[1] == pytest.approx(1.0 / 27.0, abs=1e-12)


def test_grover_k2_swaps():
    out = grover_adjust({7: 0.64, 9: 0.36}, m=9)
    assert out == {7: pytest.approx(0.36), 9: pytest.approx(0.64)}


def test_grover_k2_uniform_fixed_point():
    out = grover_adjust({0: 0.5, 1: 0.5}, m=1)
    assert out[0] == pytest.approx(0.5, abs=1e-15)
    assert out[1] == pytest.approx(0.5, abs=1e-15)


def test_grover_validates():
    with pytest.raises(ValueError):
        grover_adjust({0: 1.0}, m=5)
    with pytest.raises(ValueError):
        grover_adjust({0: -0.1, 1: 1.1}, m=0)


def test_grover_conserves_mass_random_rows():
    rng = np.random.default_rng(123)
    for _ in range(200):
        size = int(rng.integers(2, 31))
        vals = rng.random(size)
        vals /= vals.sum()
        p = {int(j): float(v) for j, v in enumerate(vals)}
        out = grover_adjust(p, m=int(rng.integers(size)))
        assert abs(sum(out.values()) - 1.0) < 1e-12
        assert all(v >= 0 for v in out.values())


def test_update_preferences_no_rewiring_uniform_collapses(line3):
    # k=4 uniform rows collapse onto the max-payoff neighbor when nothing rewires
    rng = np.random.default_rng(2)
    dm = build_distance_matrix(rng.normal(size=(8, 2)))
    net = build_knn_network(dm, k=4)
    prefs = init_preferences(net)
    u = compute_payoffs(net, prefs, dm)
    same, _ = rewire(net, net.gamma)
    out = update_preferences(prefs, net, same, u)
    for i in range(8):
        m = select_target(net.gamma[i], u)
        col = list(net.gamma[i]).index(m)
        assert out.p[i, col] == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(out.p.sum(axis=1), 1.0, atol=1e-9)


def test_update_preferences_matches_per_row_functions():
    # vectorized table update == dict-level redistribute/select/grover per row
    rng = np.random.default_rng(42)
    n, k = 12, 4
    dm = build_distance_matrix(rng.normal(size=(n, 3)))
    net = build_knn_network(dm, k=k)
    p = rng.random((n, k))
    p /= p.sum(axis=1, keepdims=True)
    from egclust.dynamics import PreferenceTable

    prefs = PreferenceTable(p=p)
    u = compute_payoffs(net, prefs, dm)
    new_gamma = np.array([np.sort(rng.choice(n, size=k, replace=False)) for _ in range(n)])
    new_net, _ = rewire(net, new_gamma)
    out = update_preferences(prefs, net, new_net, u)
    for i in range(n):
        row = redistribute(
            set(net.gamma[i].tolist()),
            set(new_net.gamma[i].tolist()),
            prefs.row_as_dict(net, i),
        )
        row = grover_adjust(row, select_target(new_net.gamma[i], u))
        expect = [row[int(j)] for j in new_net.gamma[i]]
        assert out.p[i] == pytest.approx(expect, abs=1e-12)


def test_update_preferences_k1_stays_unit():
    dm = build_distance_matrix(np.array([[0.0], [1.0]]))
    net = build_knn_network(dm, k=1)
    prefs = init_preferences(net)
    u = compute_payoffs(net, prefs, dm)
    same, _ = rewire(net, net.gamma)
    out = update_preferences(prefs, net, same, u)
    assert np.allclose(out.p, 1.0)
