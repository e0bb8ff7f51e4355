"""Two-rater agreement on the shipped 76-action rating grid.

Run from the repo root:  python demos/05_rater_agreement.py
"""
from questlens.evaluation import (
    agreement_stats,
    kappa_by_dimension,
    load_rating_grid,
    max_step_delta,
    spearman_rho,
    weighted_kappa,
)

grid = load_rating_grid("fixtures/irr_ratings.json")
print(f"{len(grid.items)} actions scored by two raters on the five-point grid\n")

pooled = weighted_kappa(grid, resamples=2000, seed=42)
print(f"pooled quadratic-weighted kappa: {pooled.value:.4f} "
      f"(95% CI [{pooled.ci[0]:.3f}, {pooled.ci[1]:.3f}])")

print("\nper-dimension kappa:")
for dim, result in kappa_by_dimension(grid, resamples=2000, seed=42).items():
    print(f"  {dim}: {result.value:.4f}  CI [{result.ci[0]:.3f}, {result.ci[1]:.3f}]")

stats = agreement_stats(grid)
print(f"\nexact agreement:   {stats.exact_rate:.4f}")
print(f"off-by-one:        {stats.off_by_one_rate:.4f}")
print(f"mean abs diff:     {stats.mad:.4f} (on the 0-1 scale)")
print(f"spearman rho:      {spearman_rho(grid):.4f} (rank helper, pooled cells)")

deltas = max_step_delta(grid)
print("\nitems with the largest rater gaps (max step delta = 2):")
for item, delta in sorted(deltas.items()):
    if delta >= 2:
        print(f"  {item}")
