"""Generate the bundled zero fixtures with mpmath.

This is deliberately independent of eulerlab's own L-function code: zeros of
zeta come from ``mpmath.zetazero`` and zeros of L(s, chi) are located as sign
changes of the rotated completed L-function on the critical line, then
refined with ``mpmath.findroot``.

Usage::

    python scripts/make_zero_fixtures.py [OUTDIR]
"""
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 22

# Character values listed on residues 0..q-1, matching eulerlab's "q.index"
# labels (index k mod 5 means chi(2) = e(k/4); 2 is the primitive root).
CHARACTERS = {
    "3.1": (3, [0, 1, -1]),
    "4.1": (4, [0, 1, 0, -1]),
    "5.1": (5, [0, 1, 1j, -1j, -1]),
    "5.2": (5, [0, 1, -1, -1, 1]),
    "5.3": (5, [0, 1, -1j, 1j, -1]),
}
HEIGHTS = {"3.1": 120, "4.1": 200, "5.1": 120, "5.2": 120, "5.3": 120}
N_ZETA = 200
STEP = mp.mpf("0.02")


def rotated_completed(q, values):
    """Return t -> e^{pi t/4} * eps^{-1/2} * Lambda(1/2 + it, chi), real on the line."""
    nu = 0 if values[q - 1] == 1 else 1
    tau = mp.fsum(values[a] * mp.expj(2 * mp.pi * a / q) for a in range(q))
    eps = (1j) ** (-nu) * tau / mp.sqrt(q)
    rot = 1 / mp.sqrt(eps)

    def f(t):
        s = mp.mpf("0.5") + 1j * t
        lam = (mp.mpf(q) / mp.pi) ** (s / 2) * mp.gamma((s + nu) / 2) * mp.dirichlet(s, values)
        return rot * lam * mp.exp(mp.pi * t / 4)

    return f


def character_zeros(q, values, height):
    f = rotated_completed(q, values)
    g = lambda t: mp.re(f(t))
    zeros = []
    t_prev = STEP
    v_prev = g(t_prev)
    t = t_prev
    while t < height:
        t = t_prev + STEP
        v = g(t)
        if v_prev * v < 0:
            root = mp.findroot(g, (t_prev, t), solver="anderson")
            assert abs(mp.im(f(root))) < mp.mpf(10) ** -10 * (1 + abs(f(t)))
            zeros.append(root)
        t_prev, v_prev = t, v
    return zeros


def rvm_count(q, height):
    """Main term of the zero-counting function N(T, chi)."""
    return height / (2 * mp.pi) * mp.log(q * height / (2 * mp.pi * mp.e))


def write(path, label, source, complete_to, ordinates):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# label={label}\n")
        fh.write(f"# source={source}\n")
        fh.write(f"# complete_to={mp.nstr(complete_to, 17)}\n")
        for g in ordinates:
            fh.write(mp.nstr(g, 16, strip_zeros=False) + "\n")


def main(outdir):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    zeta = [mp.im(mp.zetazero(n)) for n in range(1, N_ZETA + 1)]
    write(outdir / "zeta.txt", "zeta", f"mpmath {mp.__version__} zetazero(1..{N_ZETA})",
          zeta[-1], zeta)
    print("zeta", len(zeta), file=sys.stderr)

    for label, (q, values) in CHARACTERS.items():
        height = HEIGHTS[label]
        zs = character_zeros(q, values, height)
        expected = rvm_count(q, height)
        assert abs(len(zs) - expected) < 4, (label, len(zs), expected)
        gaps = [b - a for a, b in zip(zs, zs[1:])]
        assert min(gaps) > 3 * STEP, (label, min(gaps))
        write(outdir / f"{label}.txt", label,
              f"mpmath {mp.__version__} sign changes of rotated Lambda(1/2+it), step {STEP}",
              height, zs)
        print(label, len(zs), float(expected), file=sys.stderr)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         Path(__file__).resolve().parents[1] / "src" / "eulerlab" / "data" / "zeros")
