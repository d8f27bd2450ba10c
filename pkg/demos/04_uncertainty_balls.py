# Hamming-ball uncertainty quantification for the selected mask.
#
# Instead of a confidence region for the signal itself, we put a ball (in
# Hamming distance over masks) around the selector's output. Its radius
# n * (size/n)^alpha' shrinks polynomially as the preselector gets smaller
# relative to n; the exponent alpha' is the knob. We estimate two failure
# rates: coverage (true active set escapes the ball) and size (radius blown
# up past a multiple of the benchmark radius built from the active set).

from hullselect import (
    ConfidenceBall,
    SelectionMask,
    UqConfig,
    confidence_radius,
    evaluate_uq_counts,
    experiment_config_from_dict,
    run_experiment,
)

print("radius as the preselector grows (n = 1000):")
for size in (0, 1, 10, 100, 1000):
    row = "  ".join(f"a'={a}: {confidence_radius(size, 1000, a):8.2f}" for a in (0.5, 1.0, 2.0))
    print(f"  size {size:>5}: {row}")

# Ball membership compares an integer distance against the real radius.
ball = ConfidenceBall(SelectionMask((1, 2, 3), 10), radius=1.5)
print("\n{1,2,3} ball of radius 1.5 contains {1,2}:", ball.contains(SelectionMask((1, 2), 10)))
print("{1,2,3} ball of radius 1.5 contains {4,5}:", ball.contains(SelectionMask((4, 5), 10)))

# Reuse one strong-signal experiment and score the same records under a
# sweep of exponents: larger alpha' means a smaller ball, so the coverage
# failure rate can only go up.
cfg = experiment_config_from_dict(
    {
        "n": 1000,
        "sigma": 1.0,
        "K": 4.0,
        "signal": {"s": 10, "A": 16.0},
        "noise": {"variant": "iid-gaussian"},
        "replications": 300,
        "master_seed": 99,
        "oracle_A": 16.0,
    }
)
report = run_experiment(cfg)
records = [(r.preselector_size, r.hamming, r.active_size) for r in report.records]

print("\nalpha' sweep on one strong-signal run:")
for alpha in (0.0, 0.5, 1.0, 2.0, 4.0):
    cover_fail, size_exceed = evaluate_uq_counts(
        records, cfg.n, UqConfig(alpha4_prime=alpha, m1_prime=4.0)
    )
    print(f"  alpha'={alpha:>4}: coverage_fail {cover_fail:.3f}, size_exceed {size_exceed:.3f}")

# alpha' = 0 is the degenerate full ball: it always covers, and the size
# check compares n against m1' * n.
print("\nfull-ball sanity:", evaluate_uq_counts(records, cfg.n, UqConfig(0.0, 0.5)))
