"""Test package for netcompress."""
