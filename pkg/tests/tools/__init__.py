"""Tests for the CLI subcommands."""
