from .golden import golden_suite, lookup
