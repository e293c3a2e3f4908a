import io
import math

import numpy as np
import pytest

from lsalg.burgers import (
    FieldState,
    FloatAlgebra,
    InstabilityError,
    SimConfig,
    initial_state,
    integrate,
    rhs_a31,
    rhs_components,
    rhs_general,
    write_csv,
)
from lsalg.catalog import CatalogId, generate
from lsalg.core import DimensionError


def float_alg(name, n, param=None):
    return FloatAlgebra.from_algebra(generate(CatalogId(name, param), n))


def const_state(values, n_points=8, length=100.0):
    return FieldState(np.tile(np.asarray(values, dtype=float), (n_points, 1)), length)


class TestRightHandSide:
    def test_component_form_matches_product_form(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 3):
            alg = FloatAlgebra(rng.normal(size=(n, n, n)))
            s = FieldState(rng.normal(size=(16, n)))
            a, b = rhs_general(alg, s), rhs_components(alg, s)
            assert np.max(np.abs(a - b)) <= 1e-12 * max(1.0, np.max(np.abs(a)))

    def test_hand_expanded_plane(self):
        rng = np.random.default_rng(1)
        alg = float_alg("A3_1", 2)
        for _ in range(10):
            s = FieldState(rng.normal(size=(32, 2)))
            a, b = rhs_general(alg, s), rhs_a31(s)
            assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))

    def test_hand_expanded_needs_plane(self):
        with pytest.raises(DimensionError):
            rhs_a31(FieldState(np.zeros((8, 3))))

    def test_associative_has_no_cubic_term(self):
        alg = float_alg("A2", 3)
        s = const_state([1.0, 2.0, 3.0])
        assert np.allclose(rhs_general(alg, s), 0.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            rhs_general(float_alg("A2", 3), FieldState(np.zeros((8, 2))))


class TestIntegrate:
    def test_zero_state_stays_zero(self):
        s0 = FieldState(np.zeros((16, 2)))
        traj = integrate(float_alg("A3_1", 2), s0, SimConfig(dt=0.2 * s0.dx ** 2, t_max=0.05))
        assert all(not np.any(u) for u in traj.states)

    def test_final_time_exact(self):
        s0 = FieldState(np.zeros((16, 1)))
        traj = integrate(FloatAlgebra(np.zeros((1, 1, 1))), s0,
                         SimConfig(dt=0.03, t_max=0.1, output_stride=2))
        assert traj.steps == 4 and math.isclose(traj.times[-1], 0.1)
        assert traj.times[:3] == [0.0, 2 * traj.dt, 4 * traj.dt][:3]

    def test_rk4_temporal_order(self):
        """Constant fields of e1 e1 = e2, e1 e2 = e1 obey u1' = u1^3, solved by (1 - 2t)^(-1/2)."""
        c = np.zeros((2, 2, 2))
        c[0, 0, 1] = c[0, 1, 0] = 1.0
        alg, t_max = FloatAlgebra(c), 0.3
        exact = 1 / math.sqrt(1 - 2 * t_max)
        s0 = const_state([1.0, 0.0])
        errs = []
        for steps in (16, 32, 64, 128):
            u = integrate(alg, s0, SimConfig(dt=t_max / steps, t_max=t_max)).states[-1]
            assert np.all(u[:, 1] == 0.0)
            errs.append(abs(u[0, 0] - exact))
        orders = [math.log2(errs[i] / errs[i + 1]) for i in range(3)]
        assert all(3.8 <= p <= 4.3 for p in orders), orders

    def test_heat_decay_single_mode(self):
        s0 = initial_state([[{"type": "sin", "amplitude": 1.0, "wavenumber": 1}]], 64)
        traj = integrate(FloatAlgebra(np.zeros((1, 1, 1))), s0, SimConfig(dt=0.2 * s0.dx ** 2, t_max=0.05))
        amp = np.max(np.abs(traj.states[-1][:, 0]))
        assert abs(amp - math.exp(-0.05)) < 5e-4

    def test_stability_bound_enforced(self):
        s0 = FieldState(np.zeros((16, 1)))
        with pytest.raises(ValueError):
            integrate(FloatAlgebra(np.zeros((1, 1, 1))), s0, SimConfig(dt=0.21 * s0.dx ** 2, t_max=1))

    def test_blowup_aborts(self):
        # e1 e1 = e2, e1 e2 = e1 gives u1' = u1^3 on constant fields
        c = np.zeros((2, 2, 2))
        c[0, 0, 1] = 1.0
        c[0, 1, 0] = 1.0
        with pytest.raises(InstabilityError):
            integrate(FloatAlgebra(c), const_state([10.0, 0.0]), SimConfig(dt=1e-4, t_max=1.0))

    @pytest.mark.parametrize("kw", [{"dt": 0, "t_max": 1}, {"dt": 1e-3, "t_max": 0},
                                    {"dt": 1e-3, "t_max": 1, "output_stride": 0}])
    def test_config_validation(self, kw):
        with pytest.raises(ValueError):
            SimConfig(**kw).check(1.0)


class TestInitialData:
    def test_modes(self):
        s = initial_state([[{"type": "sin", "amplitude": 2, "wavenumber": 1}],
                           [{"type": "const", "amplitude": 0.5}, {"type": "cos", "wavenumber": 2}]], 8, 2.0)
        x = np.arange(8) * 0.25
        assert np.allclose(s.values[:, 0], 2 * np.sin(math.pi * x))
        assert np.allclose(s.values[:, 1], 0.5 + np.cos(2 * math.pi * x))

    @pytest.mark.parametrize("bad", [[], [[{"amplitude": 1}]], [[{"type": "tan"}]],
                                     [[{"type": "sin", "freq": 1}]], "sin"])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            initial_state(bad, 8)

    def test_small_grid(self):
        with pytest.raises(ValueError):
            FieldState(np.zeros((4, 1)))


def test_csv_layout_and_precision():
    s0 = initial_state([[{"type": "sin", "amplitude": 1 / 3}], [{"type": "const", "amplitude": 0.1}]], 8)
    traj = integrate(float_alg("A3_1", 2), s0, SimConfig(dt=0.2 * s0.dx ** 2, t_max=0.1, output_stride=10))
    text = write_csv(traj, s0)
    rows = text.strip().split("\n")
    assert rows[0] == "t,x,u1,u2"
    assert len(rows) == 1 + 8 * len(traj.times)
    first = rows[1 + 1].split(",")
    assert float(first[2]) == s0.values[1, 0]
    buf = io.StringIO()
    assert write_csv(traj, s0, buf) is None and buf.getvalue() == text
