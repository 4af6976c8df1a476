"""Inventor-name disambiguation via comparison-map images.

Pipeline: dedup -> block -> render record pairs as stacked RGB images ->
classify with a small from-scratch CNN -> cluster match probabilities
into unique-inventor groups -> evaluate pairwise metrics.
"""

__version__ = "0.1.0"
