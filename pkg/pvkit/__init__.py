"""
pvkit: exact Picard-Vessiot descent and Galois-cohomology toolkit over Q(zeta_N)(x).
"""

__version__ = "0.1.0"
