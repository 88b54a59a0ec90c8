"""How often does the InCites top-10% count fall below the Hazen count?

InCites admits a tied group only when the whole group clears the cut,
Hazen when the group midpoint does; best-of aggregation pushes the other
way. This sweeps tie density (median citations) and overlap share.
"""

import itertools

from citerank import ApproachSpec, build_reference_sets, class_count_series, generate_synthetic, scores_by_year


def gap(seed, multi, median):
    corpus = generate_synthetic(
        n_fields=3, papers_per_field=500, horizon=10, seed=seed,
        multi_category_share=multi, median_total=median,
    )
    sets, _ = build_reference_sets(corpus)
    h = class_count_series(scores_by_year(corpus, sets, ApproachSpec("hazen")), 10)
    i = class_count_series(scores_by_year(corpus, sets, ApproachSpec("incites")), 10)
    return [int(a - b) for a, b in zip(i, h)]


if __name__ == "__main__":
    print("seed multi median  min(incites-hazen)  years below")
    for seed, multi, median in itertools.product(range(4), (0.3, 0.6), (8.0, 50.0)):
        d = gap(seed, multi, median)
        below = [t + 1 for t, v in enumerate(d) if v < 0]
        print(f"{seed:4d} {multi:5.1f} {median:6.0f}  {min(d):18d}  {below}")
