"""Pytest fixtures for companion-algebra tests."""

import os
import random
import sys

import pytest
import sympy

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from companion_algebra import config  # noqa: E402
from companion_algebra.core import CompanionPair  # noqa: E402
from companion_algebra.poly import Poly, as_monic, parse_monic, random_monic  # noqa: E402
from companion_algebra.rings import (  # noqa: E402
    GAUSSIAN_INTEGERS,
    INTEGERS,
    RATIONALS,
    RingKind,
    galois_field,
    integers_mod,
    parse_ring_spec,
)

X = sympy.Symbol("x")


@pytest.fixture
def zz():
    return INTEGERS


@pytest.fixture
def qq():
    return RATIONALS


@pytest.fixture
def zi():
    return GAUSSIAN_INTEGERS


@pytest.fixture
def gf5():
    return galois_field(5)


@pytest.fixture
def z6():
    return integers_mod(6)


@pytest.fixture
def rng():
    """Seeded random source so randomized tests are reproducible."""
    return random.Random(20240101)


@pytest.fixture
def make_pair():
    """Factory: make_pair("x^2", "x^2-2", "z") -> CompanionPair."""
    def _make(f_text, g_text, ring="z"):
        ring = parse_ring_spec(ring) if isinstance(ring, str) else ring
        return CompanionPair.build(parse_monic(f_text, ring), parse_monic(g_text, ring))
    return _make


@pytest.fixture
def forced_pair():
    """Factory: forced_pair(ring, n, m, gen) -> (pair, h) with gcd(f, g) = h of degree m.

    f = h u and g = h (u + 1) for random monic h and u, so gcd(u, u + 1) = 1.
    """
    def _make(ring, n, m, gen, bound=5):
        ring = parse_ring_spec(ring) if isinstance(ring, str) else ring
        h = random_monic(ring, m, gen, bound) if m > 0 else Poly.constant(ring, 1)
        if m == n:
            return CompanionPair.build(as_monic(h), as_monic(h)), h
        u = random_monic(ring, n - m, gen, bound)
        f, g = as_monic(h * u), as_monic(h * (u + Poly.constant(ring, 1)))
        return CompanionPair.build(f, g), h
    return _make


@pytest.fixture
def to_sympy():
    """Convert a Poly over Z or Q into a sympy expression in x."""
    def _convert(p):
        if p.ring.kind not in (RingKind.INTEGERS, RingKind.RATIONALS):
            raise ValueError("sympy conversion is only used for Z and Q")
        return sum(sympy.Rational(c.value) * X ** k for k, c in enumerate(p.coeffs))
    return _convert


@pytest.fixture
def sympy_x():
    return X


@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    """Point the config and log files at a temporary directory."""
    config_dir = tmp_path / "config"
    log_file = tmp_path / "cache" / "companion.log"
    monkeypatch.setattr(config, "CONFIG_DIR", str(config_dir))
    monkeypatch.setattr(config, "CONFIG_FILE", str(config_dir / "companion.cfg"))
    monkeypatch.setattr(config, "LOG_FILE", str(log_file))
    monkeypatch.setitem(config.DEFAULT_CONFIG, "log_file", str(log_file))
    return tmp_path


@pytest.fixture
def temp_config_file(tmp_path):
    """Create a temporary config file."""
    config_file = tmp_path / "custom.cfg"
    config_file.write_text(
        """# Configuration file for companion-algebra
#
[companion]
ring = q
trials = 7
max_word_len = 5
seed = 42
workers = 2
log_level = debug
"""
    )
    return str(config_file)
