"""Exact combinatorial pipeline for compact Spin(7) manifolds built from
weighted-projective Calabi-Yau fourfolds with antiholomorphic involutions.

The modules layer up roughly in this order: exact (cyclotomic arithmetic),
wps (weight systems and phase actions), euler (stratified Euler
characteristics), variety (equations, singular inventory, stratum points),
involution (fixed points and orbit matching), cayley (the flat local model),
ledger (Betti bookkeeping through the surgeries), scenario (the input
format), shell (the runner and command line).
"""

__version__ = "0.1.0"

from .scenario import bundled_scenarios, load_scenario
from .shell import main, run_scenario

__all__ = ["bundled_scenarios", "load_scenario", "main", "run_scenario"]
