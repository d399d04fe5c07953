"""Regenerate the decomposition tables and compare them with the goldens.

    python3 scripts/regenerate_tables.py [models...]
"""
import sys

from chssrigid.models import MODEL_NAMES
from chssrigid.tables import compare_with_golden, render_tables


def main(argv):
    names = argv or list(MODEL_NAMES)
    status = 0
    for name in names:
        print(render_tables(name))
        bad = [c for c in compare_with_golden(name) if not c.ok]
        for c in bad:
            print(f"MISMATCH {name} {c.row}: {c.detail}")
        status |= bool(bad)
    return status


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
