"""
Annealing curves for temperature schedules
"""
import math
from typing import Callable

from ..core.errors import InvalidConfigError

Curve = Callable[[float, float, float], float]


class Annealing:
    """Collection of curves moving a value from `start` (progress 0) to `end` (progress 1)"""

    @staticmethod
    def cosine(progress: float, start: float, end: float) -> float:
        """Half-period cosine: end + (start - end) (1 + cos(pi x)) / 2"""
        return end + 0.5 * (start - end) * (1.0 + math.cos(math.pi * progress))

    @staticmethod
    def linear(progress: float, start: float, end: float) -> float:
        """Straight line between start and end"""
        return start + (end - start) * progress

    @staticmethod
    def geometric(progress: float, start: float, end: float) -> float:
        """Constant ratio per step, linear in log space"""
        return start * (end / start) ** progress

    # Mapping of curve names to functions
    FUNCTIONS = {
        'cosine': cosine.__func__,
        'linear': linear.__func__,
        'geometric': geometric.__func__,
    }

    @classmethod
    def get_function(cls, name: str) -> Curve:
        """Get an annealing curve by name"""
        try:
            return cls.FUNCTIONS[name]
        except KeyError:
            raise InvalidConfigError(
                f"unknown annealing curve {name!r}; choose from {sorted(cls.FUNCTIONS)}"
            ) from None

    @classmethod
    def apply(cls, name: str, progress: float, start: float, end: float) -> float:
        """Apply an annealing curve by name"""
        return cls.get_function(name)(progress, start, end)
