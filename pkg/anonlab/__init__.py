"""
anonlab: simulation and verification laboratory for anonymous predictors of scenarios on the real line.
"""
__version__ = '0.1.0'
