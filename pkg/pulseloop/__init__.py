"""Composite-pulse geometric phase simulator"""

__version__ = "0.3.0"
