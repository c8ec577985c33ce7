"""Rate-distortion-cost tradeoffs for source coding with action-dependent side information."""

__version__ = "0.1.0"
