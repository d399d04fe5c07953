"""Search S^5T* (x) N for a copy of N, by characters and on the explicit module.

    python3 scripts/order5_workload.py [models...]
"""
import sys
import time

from chssrigid.characters import decompose
from chssrigid.models import MODEL_NAMES, build_model
from chssrigid.orchestrator import order5_explicit, sk_decomposition


def main(argv):
    for name in argv or list(MODEL_NAMES):
        m = build_model(name)
        t = time.perf_counter()
        d5 = sk_decomposition(m, 5)
        hit = d5.semisimple().intersect(decompose(m.N.character(), m.rd).semisimple())
        t_char = time.perf_counter() - t
        t = time.perf_counter()
        r = order5_explicit(m)
        t_hwv = time.perf_counter() - t
        print(f"{name:12s} dim {r['dimension']:7d}  {d5.count():4d} constituents  "
              f"N by characters: {hit.count()}  hwv at N: {r['hwv']}  ({t_char:.1f} s + {t_hwv:.1f} s)")


if __name__ == "__main__":
    main(sys.argv[1:])
