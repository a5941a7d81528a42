"""Helpers around the core of exactmaj.

The tools module collects the gallery of built-in algebras, the algebra file
format and pandas surveys. None of it is needed for the core computations,
so it is not imported automatically with "import exactmaj".
"""
