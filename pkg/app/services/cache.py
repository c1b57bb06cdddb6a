import numpy as np
from cachetools import LRUCache
from cachetools.keys import hashkey

from app.config import settings

reports = LRUCache(maxsize=512)


def matrix_key(matrix: np.ndarray, *args):
    return hashkey(np.ascontiguousarray(matrix, dtype=float).tobytes(), *args)


def lookup(key):
    if settings.use_cache:
        return reports.get(key)
    return None


def store(key, value):
    if settings.use_cache:
        reports[key] = value
    return value


def clear():
    reports.clear()
