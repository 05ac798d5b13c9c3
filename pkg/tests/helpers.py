"""Shared, cached builds of the shipped constructions."""

import functools

from essdim.constructions import build

SHIPPED = [
    *(("lemma32i", n) for n in range(3, 9)),
    ("lemma32ii", 6),
    ("lemma32ii", 8),
    ("lemma33", 2),
    ("lemma33", 3),
    ("lemma33", 4),
    ("section5", 3),
    ("section5", 4),
    ("section5", 5),
    ("example-r3", 3),
]

# small enough to sweep many random words cheaply
LIGHT = [c for c in SHIPPED if c not in {("lemma32i", 8), ("lemma32ii", 8), ("lemma33", 4)}]


@functools.lru_cache(maxsize=None)
def construction(name, parameter):
    return build(name, parameter)


@functools.lru_cache(maxsize=None)
def verdict(name, parameter, strategy="auto"):
    return construction(name, parameter).verify(strategy)


def ids(cases):
    return [f"{name}-{p}" for name, p in cases]
