"""
Utility modules for stratzero.
"""

from stratzero.utils.timing import Timer, log_timing

__all__ = ["Timer", "log_timing"]
