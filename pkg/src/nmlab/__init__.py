"""Engineered qubit dephasing: non-Markovianity measures, collision models,
and memory-assisted protocols."""

__version__ = "0.1.0"
