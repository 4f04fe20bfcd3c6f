"""Direct high-precision reconstruction of the x_n = n^2, y_n = x_n^-6 example.

Zeros w_n = x_n + i y_n (n = 1..128), kernels at t_n = x_n + s_n with
s_n = x_n sqrt(y_n) for n = 2..65.  Theta is normalized to 1 at infinity.
Near x = 4096 the double t_n resolves s_n only to about 1e-5, which moves
||k_t|| by 1e-6; the oracle therefore evaluates at the double itself.
"""
import mpmath as mp
import numpy as np

N_ZEROS = 128
FIRST = 2


def rule(n):
    """x, y, s and the kernel point t; t is the double nearest x + s, where the kernel sits."""
    x = mp.mpf(n) ** 2
    y = x ** -6
    s = x * mp.sqrt(y)
    return x, y, s, mp.mpf(float(x + s))


def _zeros():
    return [mp.mpc(rule(n)[0], rule(n)[1]) for n in range(1, N_ZEROS + 1)]


def theta(t, zeros):
    return mp.fprod((t - w) / (t - mp.conj(w)) for w in zeros)


def norm_sq(t, zeros):
    """||k_t||^2 = |Theta'(t)| / 2 pi = sum 2 y / |t - w|^2 / 2 pi."""
    return mp.fsum(2 * w.imag / abs(t - w) ** 2 for w in zeros) / (2 * mp.pi)


def t_kernel_norms(count=64):
    with mp.workdps(40):
        zeros = _zeros()
        return [float(rule(n)[3] * mp.sqrt(norm_sq(rule(n)[3], zeros)))
                for n in range(FIRST, FIRST + count)]


def biorthogonal_max(N):
    with mp.workdps(40):
        zeros = _zeros()
        ts = [rule(n)[3] for n in range(FIRST, FIRST + N)]
        th = [theta(t, zeros) for t in ts]
        nr = [mp.sqrt(norm_sq(t, zeros)) for t in ts]
        G = mp.matrix(N, N)
        for a in range(N):
            for b in range(N):
                if a == b:
                    G[a, b] = 1
                else:
                    k = 1j / (2 * mp.pi) * (1 - mp.conj(th[a]) * th[b]) / (ts[b] - ts[a])
                    G[a, b] = k / (nr[a] * nr[b])
        Gi = mp.inverse(G)
        return float(max(mp.sqrt(abs(Gi[i, i])) for i in range(N)))


def h2_partial(N):
    with mp.workdps(30):
        return float(mp.fsum(rule(n)[2] ** 2 / (rule(n)[1] * rule(n)[3] ** 2)
                             for n in range(FIRST, FIRST + N)))


def y_over_s2_t2(count=64):
    with mp.workdps(30):
        return np.array([float(rule(n)[1] / rule(n)[2] ** 2 * rule(n)[3] ** 2)
                         for n in range(FIRST, FIRST + count)])
