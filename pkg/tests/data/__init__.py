"""Tests for src.data."""
