"""
Memoization cache for Littlestone Lab.
Bounded least-recently-used cache shared by the dimension recursion.
"""

import threading
import logging
from collections import OrderedDict
from typing import Any, Dict, Hashable, Optional

try:
    from .settings import get_config
except ImportError:
    from settings import get_config

logger = logging.getLogger(__name__)

_MISSING = object()


class CacheManager:
    """Thread-safe LRU cache with hit/miss statistics."""

    def __init__(self, max_entries: int = 200_000):
        """
        Initialize cache manager.

        Args:
            max_entries: Maximum number of entries before the least recently
                used one is evicted
        """
        if max_entries < 1:
            raise ValueError(f"max_entries must be positive: {max_entries}")
        self.max_entries = max_entries
        self.memory_cache: "OrderedDict[Hashable, Any]" = OrderedDict()
        self.cache_stats = {
            'hits': 0,
            'misses': 0,
            'evictions': 0,
        }
        self._lock = threading.RLock()

    def get(self, key: Hashable, default: Any = None) -> Any:
        """
        Get value from cache.

        Args:
            key: Cache key
            default: Default value if not found

        Returns:
            Cached value or default
        """
        with self._lock:
            value = self.memory_cache.get(key, _MISSING)
            if value is _MISSING:
                self.cache_stats['misses'] += 1
                return default
            self.memory_cache.move_to_end(key)
            self.cache_stats['hits'] += 1
            return value

    def set(self, key: Hashable, value: Any) -> None:
        """
        Set value in cache, evicting the least recently used entry if full.

        Args:
            key: Cache key
            value: Value to cache
        """
        with self._lock:
            self.memory_cache[key] = value
            self.memory_cache.move_to_end(key)
            while len(self.memory_cache) > self.max_entries:
                self.memory_cache.popitem(last=False)
                self.cache_stats['evictions'] += 1

    def invalidate(self, key: Hashable) -> bool:
        """
        Invalidate cache entry.

        Returns:
            True if key was found and removed
        """
        with self._lock:
            return self.memory_cache.pop(key, _MISSING) is not _MISSING

    def clear(self) -> None:
        """Clear all cache entries."""
        with self._lock:
            self.memory_cache.clear()
            self.cache_stats = {k: 0 for k in self.cache_stats}
            logger.debug("Cache cleared")

    def get_stats(self) -> Dict[str, Any]:
        """Get cache statistics."""
        with self._lock:
            total_requests = self.cache_stats['hits'] + self.cache_stats['misses']
            hit_rate = (self.cache_stats['hits'] / total_requests * 100) if total_requests > 0 else 0

            return {
                **self.cache_stats,
                'hit_rate_percent': round(hit_rate, 2),
                'memory_entries': len(self.memory_cache),
                'max_entries': self.max_entries,
            }


# Global cache manager instance
_cache_manager: Optional[CacheManager] = None
_global_lock = threading.Lock()


def get_cache_manager() -> CacheManager:
    """Get global cache manager instance."""
    global _cache_manager
    with _global_lock:
        if _cache_manager is None:
            _cache_manager = CacheManager(max_entries=get_config()['memo_entries'])
        return _cache_manager


def reset_cache_manager(max_entries: Optional[int] = None) -> CacheManager:
    """Replace the global cache, e.g. after changing LLAB_MEMO_ENTRIES."""
    global _cache_manager
    with _global_lock:
        _cache_manager = CacheManager(max_entries=max_entries or get_config()['memo_entries'])
        return _cache_manager
