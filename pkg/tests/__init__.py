"""Tests for hqeuler."""
