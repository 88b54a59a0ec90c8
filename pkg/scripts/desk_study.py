"""Longitudinal desk study on a synthetic corpus: top-10% class counts,
persistence and research-unit correlations for every approach."""

import argparse

from citerank import (
    ApproachSpec,
    build_reference_sets,
    class_count_series,
    correlation_series,
    generate_synthetic,
    persistence_series,
    sample_units,
    scores_by_year,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fields", type=int, default=3)
    ap.add_argument("--papers", type=int, default=500)
    ap.add_argument("--horizon", type=int, default=10)
    ap.add_argument("--seed", type=int, default=2013)
    ap.add_argument("--multi-share", type=float, default=0.0)
    ap.add_argument("--samples", type=int, default=1000)
    args = ap.parse_args()

    corpus = generate_synthetic(
        n_fields=args.fields, papers_per_field=args.papers, horizon=args.horizon,
        seed=args.seed, multi_category_share=args.multi_share,
    )
    sets, report = build_reference_sets(corpus)
    print(f"{len(corpus)} papers, {len(sets)} sets, {len(report.dropped_papers)} excluded\n")

    for approach in ("p_low", "p_inc", "hazen", "incites", "scimago", "p100", "cwts"):
        spec = ApproachSpec(approach, x=10 if approach == "cwts" else None)
        m = scores_by_year(corpus, sets, spec)
        counts = class_count_series(m, 10)
        _, persist = persistence_series(m, 10)
        print(f"{spec.label:8s} top10 count  " + " ".join(f"{c:7.1f}" for c in counts))
        print(f"{'':8s} persist %    " + " ".join(f"{p:7.1f}" for p in persist))
        if approach != "cwts":
            for size in (50, 100, 500, 1000):
                units = sample_units(m, min(size, len(m)), args.samples, seed=size)
                r = correlation_series(units, m, skip_degenerate=True)
                print(f"{'':8s} r size {size:<5d} " + " ".join(f"{v:7.3f}" for v in r))
        print()


if __name__ == "__main__":
    main()
