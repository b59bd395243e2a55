"""Bundled data files (fixtures, word list, sample plans)."""
