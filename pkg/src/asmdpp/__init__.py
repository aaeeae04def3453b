"""Signed sets, sijections and bijections between ASMs, DPPs and binomial sets."""

__version__ = "0.1.0"
