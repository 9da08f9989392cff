"""Integrating adposition supersenses (SNACS) into UCCA semantic graphs."""

__version__ = "0.1.0"
