"""Tests for afa."""
