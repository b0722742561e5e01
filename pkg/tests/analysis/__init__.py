"""Tests for src.analysis."""
