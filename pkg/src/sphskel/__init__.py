"""Exact combinatorial invariants of spherical skeletons.

Submodules: linalg and lp (exact arithmetic and simplex), geometry
(polytopes and cones), roots (root systems), sphroots (spherical root
patterns), skeleton (the central data type), pinv (the p-invariant),
catalog (symmetric families and table sweeps), fano (reflexive-polytope
level checks), serialize (JSON/CSV formats), cli (command line).
"""

__version__ = "0.1.0"
