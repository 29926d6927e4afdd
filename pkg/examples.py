"""
stablepc Examples
=================

Practical walkthroughs of skeleton discovery, strategy comparison and orientation.
"""

import time

from stable_pc import SkeletonConfig, audit_sepsets, compute_correlation, orient, run_pc_stable
from stable_pc.datagen import random_dag, sample_linear_gaussian, truth_edges

# ==============================================================================
# Example 1: Skeleton of a synthetic dataset
# ==============================================================================

print("=== Example 1: Skeleton of a synthetic dataset ===")

dag = random_dag(n=40, d=0.1, seed=0)
data = sample_linear_gaussian(dag, m=2000, seed=1)
c = compute_correlation(data)

result = run_pc_stable(c, data.m, SkeletonConfig(alpha=0.05, workers=4))
found = set(result.skeleton.edges())
truth = set(truth_edges(dag))
print(f"Levels run: {result.levels_run} (stopped on {result.stop_reason})")
print(f"Edges found: {len(found)}, true edges: {len(truth)}, shared: {len(found & truth)}")

for stats in result.stats:
    print(f"  level {stats.level}: {stats.ci_tests} tests, {stats.pseudo_inverses} inverses, "
          f"{stats.edges_removed} removed in {stats.elapsed_ms} ms")

# ==============================================================================
# Example 2: Every strategy finds the same skeleton
# ==============================================================================

print("\n=== Example 2: Strategy comparison ===")

for strategy in ("serial", "row", "edge", "set"):
    started = time.perf_counter()
    run = run_pc_stable(c, data.m, SkeletonConfig(strategy=strategy, workers=4))
    elapsed = time.perf_counter() - started
    same = run.skeleton == result.skeleton
    print(f"{strategy:>6}: {elapsed * 1000:8.1f} ms, {run.pseudo_inverses:6d} inverses, same skeleton: {same}")

# ==============================================================================
# Example 3: Checking the separating sets
# ==============================================================================

print("\n=== Example 3: Separating sets ===")

print(f"Stored sets by size: {result.sepsets.stats()['by_size']}")
print(f"Sets that no longer test independent: {audit_sepsets(c, data.m, 0.05, result)}")

# ==============================================================================
# Example 4: Orientation
# ==============================================================================

print("\n=== Example 4: CPDAG ===")

cpdag = orient(result.skeleton, result.sepsets)
print(f"Directed: {len(cpdag.directed)}, undirected: {len(cpdag.undirected)}")
for a, b in sorted(cpdag.directed)[:10]:
    print(f"  {a} -> {b}")
