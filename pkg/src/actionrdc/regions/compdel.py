"""Complementary delivery rates for two classical source pairs.

Each decoder already holds the other decoder's target sequence as side
information, so the coding rate is driven by whichever cut is tighter.
"""

import math

from ..probcore import binary_entropy


def gaussian_compdel_rate(P: float, N: float, D1: float, D2: float) -> float:
    """Jointly Gaussian pair: X2 with power P observed as X1 = X2 + noise
    of power N. Decoder 1 wants the noisy component at mean-square
    distortion D1 and holds X2; decoder 2 wants the clean component at D2
    and holds X1. Rate in bits per symbol."""
    if P <= 0 or N <= 0:
        raise ValueError("powers P and N must be positive")
    residual = P * N / (P + N)
    if not 0 < D1 <= N:
        raise ValueError(f"D1 must lie in (0, {N}], got {D1}")
    if not 0 < D2 <= residual:
        raise ValueError(f"D2 must lie in (0, {residual:.6g}], got {D2}")
    return max(0.5 * math.log2(N / D1), 0.5 * math.log2(residual / D2))


def dsbs_compdel_rate(p: float, D1: float, D2: float) -> float:
    """Doubly symmetric binary pair with crossover p under Hamming
    distortion, each decoder holding the other's source. Rate in bits
    per symbol."""
    if not 0 < p <= 0.5:
        raise ValueError(f"crossover p must lie in (0, 0.5], got {p}")
    for name, d in (("D1", D1), ("D2", D2)):
        if not 0 <= d <= p:
            raise ValueError(f"{name} must lie in [0, {p}], got {d}")
    hp = binary_entropy(p)
    return max(hp - binary_entropy(D1), hp - binary_entropy(D2))
