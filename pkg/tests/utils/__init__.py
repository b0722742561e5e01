"""Tests for src.utils."""
