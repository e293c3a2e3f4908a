"""Generalized Burgers equation ``U_t = U_xx + 2 U*U_x + U*(U*U) - (U*U)*U``.

``U(x, t)`` takes values in a left-symmetric algebra; its components
``u^i`` live on a uniform periodic grid.  Space is discretized with central
differences (second order), time with classical RK4 at a fixed step.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Algebra, DimensionError

__all__ = [
    "FloatAlgebra",
    "FieldState",
    "SimConfig",
    "Trajectory",
    "InstabilityError",
    "BLOWUP_LIMIT",
    "rhs_general",
    "rhs_components",
    "rhs_a31",
    "integrate",
    "initial_state",
    "load_initial_spec",
    "write_csv",
]

BLOWUP_LIMIT = 1e12


class InstabilityError(RuntimeError):
    """The solution left the bounded range; the run is aborted."""


@dataclass(frozen=True)
class FloatAlgebra:
    """Structure constants in floating point, ``c[i, j, k]`` as in :class:`Algebra`."""

    c: np.ndarray

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @classmethod
    def from_algebra(cls, a: Algebra) -> "FloatAlgebra":
        return cls(a.to_numpy())


@dataclass(frozen=True)
class FieldState:
    """Grid values ``values[p, i] = u^i(x_p)`` with ``x_p = p L / N``."""

    values: np.ndarray
    length: float = 2 * math.pi

    def __post_init__(self):
        v = np.asarray(self.values)
        if v.ndim != 2:
            raise ValueError("values must be an N x n array")
        if v.shape[0] < 8:
            raise ValueError("grid needs N >= 8 points")
        if not self.length > 0:
            raise ValueError("domain length must be positive")
        object.__setattr__(self, "values", v)

    @property
    def n_points(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    @property
    def dx(self) -> float:
        return self.length / self.n_points

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n_points) * self.dx

    def with_values(self, values) -> "FieldState":
        return FieldState(values, self.length)


@dataclass(frozen=True)
class SimConfig:
    dt: float
    t_max: float
    output_stride: int = 1

    def check(self, dx: float) -> None:
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.dt > 0.2 * dx * dx * (1 + 1e-12):
            raise ValueError(f"dt = {self.dt} exceeds the stability bound 0.2 dx^2 = {0.2 * dx * dx}")
        if self.output_stride < 1:
            raise ValueError("output_stride must be >= 1")


@dataclass
class Trajectory:
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    dt: float = 0.0
    steps: int = 0


def _check(alg: FloatAlgebra, s: FieldState) -> None:
    if alg.dim != s.dim:
        raise DimensionError(f"algebra has dimension {alg.dim}, field has {s.dim} components")


def _derivatives(u: np.ndarray, dx: float):
    up, um = np.roll(u, -1, axis=0), np.roll(u, 1, axis=0)
    return (up - um) / (2 * dx), (up - 2 * u + um) / (dx * dx)


def _product(c: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.einsum("pi,pj,ijk->pk", u, v, c)


def rhs_general(alg: FloatAlgebra, s: FieldState) -> np.ndarray:
    """Right-hand side through algebra products of grid vectors."""
    _check(alg, s)
    u = s.values
    ux, uxx = _derivatives(u, s.dx)
    uu = _product(alg.c, u, u)
    return uxx + 2 * _product(alg.c, u, ux) + _product(alg.c, u, uu) - _product(alg.c, uu, u)


def _cubic_tensor(c: np.ndarray) -> np.ndarray:
    """``K[i, j, k, m] = sum_l C_jl^i C_km^l - C_jk^l C_lm^i``."""
    n = c.shape[0]
    k_t = np.zeros((n, n, n, n), dtype=c.dtype)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    acc = 0.0
                    for l in range(n):
                        acc += c[j, l, i] * c[k, m, l] - c[j, k, l] * c[l, m, i]
                    k_t[i, j, k, m] = acc
    return k_t


def rhs_components(alg: FloatAlgebra, s: FieldState) -> np.ndarray:
    """Same right-hand side, assembled component by component from the sums

    ``u^i_t = u^i_xx + 2 sum_jk C_jk^i u^j u^k_x + sum_jkm K^i_jkm u^j u^k u^m``.
    """
    _check(alg, s)
    u = s.values
    n, dx = s.dim, s.dx
    c = alg.c
    k_t = _cubic_tensor(c)
    out = np.zeros_like(u, dtype=np.result_type(u, c))
    for i in range(n):
        ui = u[:, i]
        uip, uim = np.roll(ui, -1), np.roll(ui, 1)
        col = (uip - 2 * ui + uim) / (dx * dx)
        for j in range(n):
            for k in range(n):
                if c[j, k, i]:
                    uk = u[:, k]
                    col = col + 2 * c[j, k, i] * u[:, j] * (np.roll(uk, -1) - np.roll(uk, 1)) / (2 * dx)
        for j in range(n):
            for k in range(n):
                for m in range(n):
                    if k_t[i, j, k, m]:
                        col = col + k_t[i, j, k, m] * u[:, j] * u[:, k] * u[:, m]
        out[:, i] = col
    return out


def rhs_a31(s: FieldState) -> np.ndarray:
    """Hand-expanded right-hand side for the simple two-dimensional algebra

    ``e1e1 = 2e1, e1e2 = e2, e2e2 = e1``::

        u1_t = u1_xx + 4 u1 u1_x + 2 u2 u2_x
        u2_t = u2_xx + 2 u1 u2_x - u1^2 u2 - u2^3
    """
    if s.dim != 2:
        raise DimensionError("the hand-expanded system is two-dimensional")
    u = s.values
    ux, uxx = _derivatives(u, s.dx)
    u1, u2 = u[:, 0], u[:, 1]
    out = np.empty_like(uxx)
    out[:, 0] = uxx[:, 0] + 4 * u1 * ux[:, 0] + 2 * u2 * ux[:, 1]
    out[:, 1] = uxx[:, 1] + 2 * u1 * ux[:, 1] - u1 * u1 * u2 - u2 ** 3
    return out


def integrate(alg: FloatAlgebra, s0: FieldState, cfg: SimConfig, *, rhs=None) -> Trajectory:
    """Fixed-step RK4 from ``t = 0`` to ``cfg.t_max``.

    The step is shrunk to ``t_max / ceil(t_max / dt)`` so the run ends on
    ``t_max`` exactly.  Samples are taken every ``output_stride`` steps and
    at the final time.

    Raises:
        InstabilityError: some ``|u|`` exceeded ``1e12`` or became non-finite.
    """
    _check(alg, s0)
    cfg.check(s0.dx)
    f = rhs or rhs_general
    steps = math.ceil(cfg.t_max / cfg.dt - 1e-12)
    dt = cfg.t_max / steps
    traj = Trajectory(dt=dt, steps=steps)
    u = s0.values.copy()
    traj.times.append(0.0)
    traj.states.append(u.copy())

    def ev(v):
        return f(alg, s0.with_values(v))

    for step in range(1, steps + 1):
        k1 = ev(u)
        k2 = ev(u + 0.5 * dt * k1)
        k3 = ev(u + 0.5 * dt * k2)
        k4 = ev(u + dt * k3)
        u = u + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        peak = np.max(np.abs(u)) if u.size else 0.0
        if not np.isfinite(peak) or peak > BLOWUP_LIMIT:
            raise InstabilityError(f"|u| reached {peak:.3g} at t = {step * dt:.6g} (step {step})")
        if step % cfg.output_stride == 0 or step == steps:
            traj.times.append(step * dt)
            traj.states.append(u.copy())
    return traj


# initial data and output ------------------------------------------------------------------

_MODE_KEYS = {"type", "amplitude", "wavenumber", "phase"}


def initial_state(spec, n_points: int, length: float = 2 * math.pi) -> FieldState:
    """Build ``u^i(x, 0)`` from per-component lists of Fourier modes.

    Each mode is ``{"type": "sin" | "cos" | "const", "amplitude": a,
    "wavenumber": k, "phase": p}`` and contributes ``a sin(2 pi k x / L + p)``
    (or ``cos``, or the constant ``a``).
    """
    if not isinstance(spec, list) or not spec:
        raise ValueError("initial condition must be a non-empty list of components")
    x = np.arange(n_points) * (length / n_points)
    values = np.zeros((n_points, len(spec)))
    for i, modes in enumerate(spec):
        if not isinstance(modes, list):
            raise ValueError(f"component {i + 1} must be a list of modes")
        for mode in modes:
            if not isinstance(mode, dict) or "type" not in mode:
                raise ValueError(f"component {i + 1}: each mode needs a 'type'")
            extra = set(mode) - _MODE_KEYS
            if extra:
                raise ValueError(f"component {i + 1}: unknown keys {sorted(extra)}")
            kind = mode["type"]
            amp = float(mode.get("amplitude", 1.0))
            if kind == "const":
                values[:, i] += amp
                continue
            if kind not in ("sin", "cos"):
                raise ValueError(f"component {i + 1}: unknown mode type {kind!r}")
            arg = 2 * math.pi * float(mode.get("wavenumber", 1)) * x / length + float(mode.get("phase", 0.0))
            values[:, i] += amp * (np.sin(arg) if kind == "sin" else np.cos(arg))
    return FieldState(values, length)


def load_initial_spec(path) -> list:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc.msg})") from None


def _fmt(v) -> str:
    return format(float(v), ".17g")


def write_csv(traj: Trajectory, s0: FieldState, out=None) -> str | None:
    """Rows ``t, x, u1, .., un`` for every sample and grid point."""
    buf = out if out is not None else io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x"] + [f"u{i + 1}" for i in range(s0.dim)])
    xs = s0.x
    for t, u in zip(traj.times, traj.states):
        for p in range(s0.n_points):
            w.writerow([_fmt(t), _fmt(xs[p])] + [_fmt(v) for v in np.real(u[p])])
    return buf.getvalue() if out is None else None
