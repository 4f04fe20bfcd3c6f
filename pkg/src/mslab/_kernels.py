"""Hot inner loops: factor log-sums and Hermitian Jacobi diagonalization.

Each kernel exists twice, a numba version (``_nb_*``) and a numpy version
(``_np_*``).  The public wrappers at the bottom pick one according to
:data:`mslab._accel.USE_NUMBA`.  Both versions implement the same arithmetic;
summation differs only in rounding (Neumaier compensation vs numpy pairwise).
"""
import math

import numpy as np

from ._accel import USE_NUMBA, njit, prange

DISC = 0
HALF_PLANE = 1
CANONICAL = 2


# ---------------------------------------------------------------------------
# factor log-sums
# ---------------------------------------------------------------------------

@njit(cache=True)
def _log1p_complex(ur, ui):
    # log(1 + u) accurate for small |u|
    re = 0.5 * math.log1p(2.0 * ur + ur * ur + ui * ui)
    im = math.atan2(ui, 1.0 + ur)
    return re, im


@njit(cache=True)
def _factor_log(kind, a, phase, z):
    """Return (log|f|, arg f, hit) for one factor at one point."""
    if z == a:
        return 0.0, 0.0, True
    if kind == CANONICAL:
        u = -z / a
        re, im = _log1p_complex(u.real, u.imag)
        if abs(1.0 + u) < 0.5:
            # near the zero 1 + u loses digits; use (a - z) / a directly
            w = (a - z) * a.conjugate()
            re = math.log(abs(a - z)) - math.log(abs(a))
            im = math.atan2(w.imag, w.real)
        return re, im, False
    if kind == DISC:
        if a == 0:
            return math.log(abs(z)), math.atan2(z.imag, z.real), False
        num = a - z
        den = 1.0 - a.conjugate() * z
        absden = abs(den)
        # 1 - |b|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - conj(a) z|^2
        rho = (1.0 - abs(a)) * (1.0 + abs(a)) * (1.0 - abs(z)) * (1.0 + abs(z)) / (absden * absden)
        im = math.atan2(num.imag, num.real) - math.atan2(den.imag, den.real) + phase
    else:
        num = z - a
        den = z - a.conjugate()
        absden = abs(den)
        # 1 - |b|^2 = 4 Im z Im a / |z - conj(a)|^2
        rho = 4.0 * z.imag * a.imag / (absden * absden)
        ur = z.real - a.real
        uu = ur * ur + z.imag * z.imag
        im = math.atan2(-2.0 * a.imag * ur, uu - a.imag * a.imag) + phase
    if rho < 0.5:
        re = 0.5 * math.log1p(-rho)
    else:
        re = math.log(abs(num)) - math.log(absden)
    return re, im, False


@njit(cache=True)
def _factor_logderiv(kind, a, z):
    if kind == CANONICAL:
        return 1.0 / (z - a)
    if kind == DISC:
        if a == 0:
            return 1.0 / z
        return (abs(a) ** 2 - 1.0) / ((a - z) * (1.0 - a.conjugate() * z))
    return 2j * a.imag / ((z - a) * (z - a.conjugate()))


@njit(cache=True, parallel=True)
def _nb_logsum(kind, zeros, phases, points):
    npts = points.shape[0]
    out_re = np.zeros(npts)
    out_im = np.zeros(npts)
    hits = np.zeros(npts, dtype=np.int64)
    for i in prange(npts):
        z = points[i]
        s_re = 0.0
        c_re = 0.0
        s_im = 0.0
        c_im = 0.0
        h = 0
        for j in range(zeros.shape[0]):
            re, im, hit = _factor_log(kind, zeros[j], phases[j], z)
            if hit:
                h += 1
                continue
            # Neumaier compensated accumulation
            t = s_re + re
            if abs(s_re) >= abs(re):
                c_re += (s_re - t) + re
            else:
                c_re += (re - t) + s_re
            s_re = t
            t = s_im + im
            if abs(s_im) >= abs(im):
                c_im += (s_im - t) + im
            else:
                c_im += (im - t) + s_im
            s_im = t
        out_re[i] = s_re + c_re
        out_im[i] = s_im + c_im
        hits[i] = h
    return out_re, out_im, hits


@njit(cache=True, parallel=True)
def _nb_logderiv_sum(kind, zeros, points):
    npts = points.shape[0]
    out = np.zeros(npts, dtype=np.complex128)
    for i in prange(npts):
        z = points[i]
        s_re = 0.0
        c_re = 0.0
        s_im = 0.0
        c_im = 0.0
        for j in range(zeros.shape[0]):
            if zeros[j] == z:
                continue
            v = _factor_logderiv(kind, zeros[j], z)
            t = s_re + v.real
            if abs(s_re) >= abs(v.real):
                c_re += (s_re - t) + v.real
            else:
                c_re += (v.real - t) + s_re
            s_re = t
            t = s_im + v.imag
            if abs(s_im) >= abs(v.imag):
                c_im += (s_im - t) + v.imag
            else:
                c_im += (v.imag - t) + s_im
            s_im = t
        out[i] = complex(s_re + c_re, s_im + c_im)
    return out


_CHUNK = 1 << 20


def _np_factor_logs(kind, zeros, phases, z):
    """Broadcast factor logs for a block of points (rows) and zeros (cols)."""
    a = zeros[None, :]
    zz = z[:, None]
    hits = zz == a
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == CANONICAL:
            u = -zz / a
            near = np.abs(1.0 + u) < 0.5
            re = np.where(near, np.log(np.abs(a - zz)) - np.log(np.abs(a)),
                          0.5 * np.log1p(2.0 * u.real + u.real ** 2 + u.imag ** 2))
            w = (a - zz) * np.conj(a)
            im = np.where(near, np.arctan2(w.imag, w.real), np.arctan2(u.imag, 1.0 + u.real))
        elif kind == DISC:
            zero_mask = a == 0
            num = np.where(zero_mask, zz, a - zz)
            den = np.where(zero_mask, 1.0 + 0j, 1.0 - np.conj(a) * zz)
            ra, rz = np.abs(a), np.abs(zz)
            rho = (1.0 - ra) * (1.0 + ra) * (1.0 - rz) * (1.0 + rz) / np.abs(den) ** 2
            re = np.where(rho < 0.5, 0.5 * np.log1p(-np.minimum(rho, 0.5)),
                          np.log(np.abs(num)) - np.log(np.abs(den)))
            re = np.where(zero_mask, np.log(rz), re)
            im = np.angle(num) - np.angle(den) + np.where(zero_mask, 0.0, phases[None, :])
        else:
            num = zz - a
            den = zz - np.conj(a)
            rho = 4.0 * zz.imag * a.imag / np.abs(den) ** 2
            re = np.where(rho < 0.5, 0.5 * np.log1p(-np.minimum(rho, 0.5)),
                          np.log(np.abs(num)) - np.log(np.abs(den)))
            ur = zz.real - a.real
            im = np.arctan2(-2.0 * a.imag * ur, ur * ur + zz.imag ** 2 - a.imag ** 2) + phases[None, :]
    re = np.where(hits, 0.0, re)
    im = np.where(hits, 0.0, im)
    return re, im, hits


def _np_logsum(kind, zeros, phases, points):
    npts = points.shape[0]
    out_re = np.zeros(npts)
    out_im = np.zeros(npts)
    hits = np.zeros(npts, dtype=np.int64)
    if zeros.shape[0] == 0 or npts == 0:
        return out_re, out_im, hits
    step = max(1, _CHUNK // max(1, zeros.shape[0]))
    for lo in range(0, npts, step):
        sl = slice(lo, lo + step)
        re, im, h = _np_factor_logs(kind, zeros, phases, points[sl])
        out_re[sl] = re.sum(axis=1)
        out_im[sl] = im.sum(axis=1)
        hits[sl] = h.sum(axis=1)
    return out_re, out_im, hits


def _np_logderiv_sum(kind, zeros, points):
    npts = points.shape[0]
    out = np.zeros(npts, dtype=np.complex128)
    if zeros.shape[0] == 0 or npts == 0:
        return out
    step = max(1, _CHUNK // max(1, zeros.shape[0]))
    for lo in range(0, npts, step):
        sl = slice(lo, lo + step)
        a = zeros[None, :]
        zz = points[sl][:, None]
        hit = zz == a
        with np.errstate(divide="ignore", invalid="ignore"):
            if kind == CANONICAL:
                v = 1.0 / (zz - a)
            elif kind == DISC:
                v = np.where(a == 0, 1.0 / zz,
                             (np.abs(a) ** 2 - 1.0) / ((a - zz) * (1.0 - np.conj(a) * zz)))
            else:
                v = 2j * a.imag / ((zz - a) * (zz - np.conj(a)))
        out[sl] = np.where(hit, 0.0, v).sum(axis=1)
    return out


# ---------------------------------------------------------------------------
# Hermitian cyclic Jacobi
# ---------------------------------------------------------------------------

@njit(cache=True)
def _nb_jacobi_eigh(a, tol, max_sweeps):
    n = a.shape[0]
    A = a.copy()
    V = np.eye(n, dtype=np.complex128)
    fro = 0.0
    for i in range(n):
        for j in range(n):
            fro += abs(A[i, j]) ** 2
    fro = math.sqrt(fro)
    sweeps = 0
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += abs(A[i, j]) ** 2
        off = math.sqrt(2.0 * off)
        if off <= tol * fro or fro == 0.0:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                # phase step: make A[p, q] real and positive
                ph = apq / mag
                phc = ph.conjugate()
                for k in range(n):
                    A[k, q] = A[k, q] * phc
                for k in range(n):
                    A[q, k] = A[q, k] * ph
                for k in range(n):
                    V[k, q] = V[k, q] * phc
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = A[k, p]
                    akq = A[k, q]
                    A[k, p] = c * akp - s * akq
                    A[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = A[p, k]
                    aqk = A[q, k]
                    A[p, k] = c * apk - s * aqk
                    A[q, k] = s * apk + c * aqk
                A[p, q] = 0.0
                A[q, p] = 0.0
                for k in range(n):
                    vkp = V[k, p]
                    vkq = V[k, q]
                    V[k, p] = c * vkp - s * vkq
                    V[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = A[i, i].real
    return w, V, sweeps


def _np_jacobi_eigh(a, tol, max_sweeps):
    A = np.array(a, dtype=np.complex128, copy=True)
    n = A.shape[0]
    V = np.eye(n, dtype=np.complex128)
    fro = np.sqrt(np.sum(np.abs(A) ** 2))
    sweeps = 0
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(np.abs(A[iu]) ** 2))
        if off <= tol * fro or fro == 0.0:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag == 0.0:
                    continue
                ph = apq / mag
                A[:, q] *= np.conj(ph)
                A[q, :] *= ph
                V[:, q] *= np.conj(ph)
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                cp = A[:, p].copy()
                A[:, p] = c * cp - s * A[:, q]
                A[:, q] = s * cp + c * A[:, q]
                rp = A[p, :].copy()
                A[p, :] = c * rp - s * A[q, :]
                A[q, :] = s * rp + c * A[q, :]
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = s * vp + c * V[:, q]
    return np.real(np.diag(A)).copy(), V, sweeps


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _prep(zeros, phases, points):
    zeros = np.ascontiguousarray(zeros, dtype=np.complex128)
    if phases is None:
        phases = np.zeros(zeros.shape[0])
    phases = np.ascontiguousarray(phases, dtype=np.float64)
    points = np.ascontiguousarray(np.atleast_1d(points), dtype=np.complex128)
    return zeros, phases, points


def factor_logsum(kind, zeros, phases, points):
    """Sum of complex factor logs at each point.

    Returns ``(log_modulus, argument, hits)`` where ``hits`` counts factors
    that vanish exactly at the point (those are excluded from the sums).
    """
    zeros, phases, points = _prep(zeros, phases, points)
    if USE_NUMBA and zeros.shape[0] and points.shape[0]:
        return _nb_logsum(kind, zeros, phases, points)
    return _np_logsum(kind, zeros, phases, points)


def factor_logderiv_sum(kind, zeros, points):
    """Sum of factor logarithmic derivatives, skipping exact coincidences."""
    zeros, _, points = _prep(zeros, None, points)
    if USE_NUMBA and zeros.shape[0] and points.shape[0]:
        return _nb_logderiv_sum(kind, zeros, points)
    return _np_logderiv_sum(kind, zeros, points)


def jacobi_eigh(a, tol=1e-15, max_sweeps=100):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    The sweep order (row-major over the upper triangle) is fixed, so the
    result is deterministic.  Returns ascending eigenvalues and the matching
    unitary eigenvector matrix.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    if a.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=np.complex128)
    a = 0.5 * (a + a.conj().T)
    if USE_NUMBA:
        w, V, _ = _nb_jacobi_eigh(a, tol, max_sweeps)
    else:
        w, V, _ = _np_jacobi_eigh(a, tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]
