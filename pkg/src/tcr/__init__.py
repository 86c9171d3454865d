"""Desk-scale toolkit for tight-cycle Ramsey combinatorics.

Coloured k-uniform hypergraphs, tight components, exact-rational fractional
matchings, blow-ups, blueprints, a matching-growth driver, extremal
colourings with absence certificates, and tiny exhaustive Ramsey search.
"""

__version__ = "0.1.0"
