#!/usr/bin/env python3
"""
Test script for the memoization cache.
"""

import sys
sys.path.insert(0, 'src')

import pytest

from src.cache_manager import CacheManager, get_cache_manager, reset_cache_manager
from src.concept_core import full_binary_class
from src.dimensions import DimensionCalculator
import logging

# Configure logging
logging.basicConfig(level=logging.INFO)


def test_caching():
    """Test basic cache operations and LRU eviction."""
    print("[TEST] Testing caching functionality...")
    cache = CacheManager(max_entries=2)

    cache.set('a', 1)
    cache.set('b', 2)
    assert cache.get('a') == 1, "Cache set/get failed"
    cache.set('c', 3)  # evicts b, the least recently used
    assert cache.get('b') is None, "LRU entry should have been evicted"
    assert cache.get('c') == 3
    assert cache.get('missing', 'default') == 'default', "Cache miss handling failed"

    stats = cache.get_stats()
    print(f"[CHART] Cache stats: {stats}")
    assert stats['evictions'] == 1
    assert stats['hits'] == 2
    assert stats['misses'] == 2
    assert stats['hit_rate_percent'] == 50.0
    assert stats['memory_entries'] == 2
    print("[OK] Basic cache operations work")


def test_invalidate_and_clear():
    cache = CacheManager(max_entries=10)
    cache.set(('class', 3), 0)
    assert cache.invalidate(('class', 3))
    assert not cache.invalidate(('class', 3))

    cache.set('x', 0)
    cache.get('x')
    cache.clear()
    assert cache.get_stats()['memory_entries'] == 0
    assert cache.get_stats()['hits'] == 0
    assert cache.get('x') is None, "Cached zero must not survive a clear"

    with pytest.raises(ValueError):
        CacheManager(max_entries=0)


def test_global_cache_reset():
    try:
        small = reset_cache_manager(5)
        assert small.max_entries == 5
        assert get_cache_manager() is small
    finally:
        reset_cache_manager()


def test_dimension_memo_uses_cache():
    """Test that the Littlestone recursion memoizes into its cache."""
    print("[TEST] Testing dimension memoization...")
    cache = CacheManager(max_entries=1000)
    calculator = DimensionCalculator(cache=cache)
    c = full_binary_class(3)

    assert calculator.littlestone(c.full_space()) == 3
    entries = cache.get_stats()['memory_entries']
    assert entries > 0, "Recursion should have stored intermediate results"

    assert calculator.littlestone(c.full_space()) == 3
    assert cache.get_stats()['hits'] >= 1, "Second call should hit the memo"
    print(f"[OK] Memo holds {entries} entries")


if __name__ == "__main__":
    test_caching()
    test_invalidate_and_clear()
    test_dimension_memo_uses_cache()
    print("\n[TARGET] Caching tests PASSED")
