"""Stabiliser circuits as classical LDPC codes.

Builds Tanner graphs from stabiliser circuits, classifies their codewords,
verifies every codeword equation against an independent stabiliser-tableau
simulator, computes circuit code distances, and converts symmetric LDPC
codes back into fault-tolerant circuits.
"""

__version__ = "0.1.0"
