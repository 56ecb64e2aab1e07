"""Tests for companion-algebra."""
