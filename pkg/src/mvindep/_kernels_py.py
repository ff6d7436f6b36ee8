"""Pure numpy versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def hhg_statistic(dx, dy, ox=None, oy=None):
    # ox / oy are accepted for signature parity with the compiled kernel.
    n = dx.shape[0]
    if n < 4:
        return 0.0
    m = float(n - 2)
    total = 0.0
    for i in range(n):
        a = dx[i]
        b = dy[i]
        lx = a[None, :] <= a[:, None]
        ly = b[None, :] <= b[:, None]
        joint = np.count_nonzero(lx & ly, axis=1)
        keep = np.arange(n) != i
        a11 = joint[keep] - 2.0
        a1 = np.count_nonzero(lx, axis=1)[keep] - 2.0
        ac1 = np.count_nonzero(ly, axis=1)[keep] - 2.0
        a2 = m - a1
        ac2 = m - ac1
        den = a1 * a2 * ac1 * ac2
        ok = den != 0
        a11, a1, ac1, den = a11[ok], a1[ok], ac1[ok], den[ok]
        diff = (a1 - a11) * (ac1 - a11) - a11 * (m - a1 - ac1 + a11)
        total += float(np.sum(m * diff * diff / den))
    return total


def mgc_local_map(cx, cy, rx, ry):
    n = cx.shape[0]
    flat = (rx * n + ry).ravel()
    hist = np.bincount(flat, weights=(cx * cy).ravel(), minlength=n * n).reshape(n, n)
    num = hist.cumsum(axis=0).cumsum(axis=1)
    vx = np.bincount(rx.ravel(), weights=(cx * cx).ravel(), minlength=n).cumsum()
    vy = np.bincount(ry.ravel(), weights=(cy * cy).ravel(), minlength=n).cumsum()
    ok = (vx[:, None] > 0) & (vy[None, :] > 0)
    den = np.sqrt(np.where(ok, vx[:, None] * vy[None, :], 1.0))
    return np.where(ok, num / den, 0.0)
