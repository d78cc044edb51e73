"""Angle helpers"""

import numpy as np


def wrap_phase(phase: float) -> float:
    """Wrap a phase into (-pi, pi]"""
    wrapped = float(np.angle(np.exp(1j * phase)))
    if wrapped <= -np.pi:
        wrapped += 2.0 * np.pi
    return wrapped


def phase_distance(a: float, b: float) -> float:
    """|a - b| modulo 2 pi, in [0, pi]"""
    return abs(wrap_phase(a - b))


def piece_index(breakpoints, times) -> np.ndarray:
    """
    Index of the piece [b_i, b_{i+1}) containing each time; right-continuous,
    with t = last breakpoint assigned to the last piece.
    """
    bp = np.asarray(breakpoints, dtype=float)
    idx = np.searchsorted(bp, np.asarray(times, dtype=float), side="right") - 1
    return np.clip(idx, 0, len(bp) - 2)
