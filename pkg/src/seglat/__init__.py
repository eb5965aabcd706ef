"""
seglat: segment percolation on finite windows of Z^d.

Sites are occupied independently with density p; every pair of consecutive
occupied sites on a coordinate line forms a segment, and segments are coloured
blue by a stochastic rule:

- one-choice model: each occupied site declares one of its 2d segments green,
  a segment is blue when at least one endpoint declared it green
- independent model: each segment is blue with probability lambda

The package samples both models on tori and boxes, labels blue clusters with
wrap detection, evaluates the closed-form local probabilities and block-event
formulas, and estimates critical points by finite-size crossings.
"""

__version__ = "0.1.0"
__license__ = "MIT"

__all__ = [
    "__version__",
]
