"""Version information for netcompress."""

__version__ = "0.1.0"
