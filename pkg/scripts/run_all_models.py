"""Run the elimination pipeline on every model and write JSON and markdown reports.

    python3 scripts/run_all_models.py [--out reports] [--seed N] [--samples N]
"""
import argparse
import time
from pathlib import Path

from chssrigid.bertini import DEFAULT_SAMPLES, DEFAULT_SEED
from chssrigid.models import MODEL_NAMES
from chssrigid.orchestrator import ledger_to_report, report_json, run_pipeline
from chssrigid.report import render_markdown
from chssrigid.tables import golden_slug


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out", default="reports")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in MODEL_NAMES:
        t = time.perf_counter()
        rep = ledger_to_report(run_pipeline(name, args.seed, args.samples))
        elapsed = time.perf_counter() - t
        slug = golden_slug(name)
        (out / f"{slug}.json").write_text(report_json(rep) + "\n", encoding="utf-8")
        (out / f"{slug}.md").write_text(render_markdown(rep), encoding="utf-8")
        left = {o["k"]: len(o["survivors"]) for o in rep["orders"]}
        print(f"{name:12s} {rep['verdict']:10s} {elapsed:6.2f} s  survivors by order {left}")


if __name__ == "__main__":
    main()
