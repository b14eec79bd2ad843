#!/usr/bin/env python3
"""Write a table of zeta zero ordinates (one per line, ascending).

Uses python-flint (Arb's certified zero isolation). The output matches the
Odlyzko zeros1 layout, so either file can be fed to `--zeros`.

    pip install python-flint
    python3 scripts/make_zero_table.py 100000 data/zeros_100k.txt
"""
import sys

import flint


def main():
    count = int(sys.argv[1])
    out = sys.argv[2]
    chunk = 2000
    flint.ctx.prec = 80
    with open(out, "w") as fh:
        n = 1
        while n <= count:
            k = min(chunk, count - n + 1)
            for rho in flint.acb.zeta_zeros(n, k):
                fh.write(rho.imag.mid().str(15, radius=False) + "\n")
            n += k
            fh.flush()
            print(f"{n - 1}/{count}", file=sys.stderr, flush=True)


if __name__ == "__main__":
    main()
