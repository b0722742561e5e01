"""Tests for src.attacks."""
