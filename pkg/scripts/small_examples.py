"""Print the two small P100 worked examples and a side-by-side comparison
of every score approach on one synthetic 50-paper reference set."""

import numpy as np

from citerank import generate_synthetic, incites_rank, p100_rank, percentile, scimago_rank

SEVEN = [10, 7, 4, 3, 2, 1, 0]
EIGHTEEN = [130, 90, 90, 90, 90, 40, 38, 32, 32, 32, 7, 4, 4, 4, 0, 0, 0, 0]


def show(counts):
    scores = p100_rank(counts)
    print("cites  P100")
    for c, s in zip(counts, scores):
        print(f"{c:5d}  {s:6.2f}")
    print()


def compare_50():
    corpus = generate_synthetic(n_fields=1, papers_per_field=50, horizon=10, seed=1)
    cites = corpus.cumulative[:, -1]
    keys = corpus.journal_metrics
    cols = {
        "p_low": percentile(cites, "p_low"),
        "p_inc": percentile(cites, "p_inc"),
        "hazen": percentile(cites, "hazen"),
        "incites": incites_rank(cites),
        "scimago": scimago_rank(cites, keys),
        "p100": p100_rank(cites),
    }
    order = np.argsort(-cites, kind="stable")
    print("rank  cites " + " ".join(f"{k:>8}" for k in cols))
    for r, k in enumerate(order, start=1):
        print(f"{r:4d}  {cites[k]:5d} " + " ".join(f"{cols[c][k]:8.2f}" for c in cols))


if __name__ == "__main__":
    show(SEVEN)
    show(EIGHTEEN)
    compare_50()
