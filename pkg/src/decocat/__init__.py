"""Coherence, interference visibility and measurement-induced collapse of multimode cat states."""

__version__ = "0.1.0"
