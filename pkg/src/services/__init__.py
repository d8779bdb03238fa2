"""Computational services: function specs, grids, closures, checkers, scenarios and reports."""
