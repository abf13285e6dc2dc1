"""Pure-Python simulation kernels.

A packed matrix is a flat list of ints: entry (r, c) of an nrows x ncols
matrix occupies buf[(r*ncols + c)*4 : ... + 4] as coefficients (a, b, c, d)
of omega**3, omega**2, omega, 1. All rows share one sqrt(2) exponent held
by the caller. Functions mutate buf in place; those that could overflow a
fixed-width backend return True on success (always True here).
"""


def h_rows(buf, ncols, r0, r1):
    w = ncols * 4
    s0, s1 = r0 * w, r1 * w
    x = buf[s0:s0 + w]
    y = buf[s1:s1 + w]
    buf[s0:s0 + w] = [p + q for p, q in zip(x, y)]
    buf[s1:s1 + w] = [p - q for p, q in zip(x, y)]
    return True


def h_wire(buf, nrows, ncols, mask):
    for r in range(nrows):
        if not r & mask:
            h_rows(buf, ncols, r, r | mask)
    return True


def _rotate(buf, start, stop, m):
    m %= 8
    if not m:
        return
    neg = m >= 4
    s = m % 4
    for i in range(start, stop, 4):
        a, b, c, d = buf[i], buf[i + 1], buf[i + 2], buf[i + 3]
        # coefficients in ascending powers of omega, rotated by s places
        lo = [d, c, b, a]
        out = [0, 0, 0, 0]
        for p in range(4):
            q = p + s
            v = lo[p]
            if q >= 4:
                q -= 4
                v = -v
            out[q] = -v if neg else v
        buf[i], buf[i + 1], buf[i + 2], buf[i + 3] = out[3], out[2], out[1], out[0]


def phase_rows(buf, ncols, r, m):
    w = ncols * 4
    _rotate(buf, r * w, (r + 1) * w, m)
    return True


def phase_wire(buf, nrows, ncols, mask, m):
    for r in range(nrows):
        if r & mask:
            phase_rows(buf, ncols, r, m)
    return True


def phase_all(buf, m):
    _rotate(buf, 0, len(buf), m)
    return True


def swap_rows(buf, ncols, r0, r1):
    w = ncols * 4
    s0, s1 = r0 * w, r1 * w
    buf[s0:s0 + w], buf[s1:s1 + w] = buf[s1:s1 + w], buf[s0:s0 + w]


def x_wire(buf, nrows, ncols, mask):
    for r in range(nrows):
        if not r & mask:
            swap_rows(buf, ncols, r, r | mask)


def cnot(buf, nrows, ncols, cmask, tmask):
    for r in range(nrows):
        if r & cmask and not r & tmask:
            swap_rows(buf, ncols, r, r | tmask)


def reduce_sqrt2(buf):
    """Divide every entry by sqrt(2) if all of them allow it."""
    for i in range(0, len(buf), 4):
        # residue pqrs is reducible iff p == r and q == s
        if (buf[i] ^ buf[i + 2]) & 1 or (buf[i + 1] ^ buf[i + 3]) & 1:
            return False
    for i in range(0, len(buf), 4):
        a, b, c, d = buf[i], buf[i + 1], buf[i + 2], buf[i + 3]
        buf[i] = (b - d) >> 1
        buf[i + 1] = (c + a) >> 1
        buf[i + 2] = (d + b) >> 1
        buf[i + 3] = (c - a) >> 1
    return True
