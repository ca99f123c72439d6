"""Pure numpy implementations of the hot loops.

Loaded when the compiled ``_kernels`` extension is unavailable or when
``HARRISAR_PURE_PYTHON`` is set. Signatures match the Cython module exactly.
"""
import numpy as np

OP_ADD = 0
OP_MAX = 1
OP_MIN = 2

_MAX_NEWTON = 200


def ar_recursion(op, b, y0, innov, apply):
    """Run ``Y[n] = b*Y[n-1] (op) eps[n]`` over paths and components.

    ``y0`` has shape (P, K), ``innov`` and ``apply`` have shape (S, P, K).
    Where ``apply`` is false the innovation is skipped and only the scaled
    previous value is kept. Returns an array of shape (S + 1, P, K).
    """
    y0 = np.asarray(y0, dtype=np.float64)
    innov = np.asarray(innov, dtype=np.float64)
    apply = np.asarray(apply, dtype=bool)
    n_steps = innov.shape[0]
    out = np.empty((n_steps + 1,) + y0.shape, dtype=np.float64)
    out[0] = y0
    for n in range(n_steps):
        scaled = b * out[n]
        if op == OP_ADD:
            out[n + 1] = np.where(apply[n], scaled + innov[n], scaled)
        elif op == OP_MAX:
            out[n + 1] = np.where(apply[n], np.maximum(scaled, innov[n]), scaled)
        elif op == OP_MIN:
            out[n + 1] = np.where(apply[n], np.minimum(scaled, innov[n]), scaled)
        else:
            raise ValueError(f"unknown op code {op}")
    return out


def truncated_convolve(x, y, n):
    """First ``n`` terms of the discrete convolution ``x * y`` (direct sum)."""
    x = np.asarray(x, dtype=np.float64)[:n]
    y = np.asarray(y, dtype=np.float64)[:n]
    out = np.zeros(n, dtype=np.float64)
    full = np.convolve(x, y)[:n]
    out[: full.size] = full
    return out


def solve_log_periodic(target, alpha, beta, omega):
    """Solve ``alpha*v + beta*sin(omega*v) = target`` elementwise for ``v``.

    The left side is strictly increasing when ``|beta|*omega < alpha``, so the
    root lies in ``[(target-|beta|)/alpha, (target+|beta|)/alpha]``. Newton
    steps are kept inside that bracket; bisection takes over when a step
    would leave it.
    """
    target = np.asarray(target, dtype=np.float64)
    shape = target.shape
    t = target.ravel().copy()
    lo = (t - abs(beta)) / alpha
    hi = (t + abs(beta)) / alpha
    v = t / alpha
    tol = 4.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(t))
    active = np.ones(t.size, dtype=bool)
    for _ in range(_MAX_NEWTON):
        if not active.any():
            break
        va = v[active]
        g = alpha * va + beta * np.sin(omega * va) - t[active]
        done = np.abs(g) <= tol[active]
        lo_a, hi_a = lo[active], hi[active]
        lo_a = np.where(g < 0, va, lo_a)
        hi_a = np.where(g > 0, va, hi_a)
        dg = alpha + beta * omega * np.cos(omega * va)
        step = va - g / dg
        bad = ~((step > lo_a) & (step < hi_a))
        step = np.where(bad, 0.5 * (lo_a + hi_a), step)
        width_done = (hi_a - lo_a) <= 2.0 * np.finfo(float).eps * np.maximum(1.0, np.abs(va))
        done |= width_done
        v[active] = np.where(done, va, step)
        lo[active] = lo_a
        hi[active] = hi_a
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    return v.reshape(shape)
