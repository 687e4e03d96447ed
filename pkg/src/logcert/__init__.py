"""Exact computation and log-behavior certification for the sequence
S_n = sum_k C(n,k)^2 C(2k,k) (2k+1) and its companions."""

__version__ = "1.0.0"
