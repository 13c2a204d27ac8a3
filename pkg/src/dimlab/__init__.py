"""Exact teaching dimensions and Boolean-function complexity measures."""

__version__ = "0.1.0"
