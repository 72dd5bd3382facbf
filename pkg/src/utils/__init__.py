"""Constants and file helpers for the index engine."""
