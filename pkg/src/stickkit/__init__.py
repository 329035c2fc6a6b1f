"""Exact recognition of Stick, BipHook and MPT graphs, plus the reduction tooling.

Modules: ``graph`` (formats), ``feasibility`` (order checks), ``geometry``
(realization, verification, SVG), ``recognizer`` (search), ``reduction`` and
``biphook`` (the two constructions), ``gadget_lab`` (exhaustive gadget
checks) and ``cli``.
"""

__version__ = "0.1.0"
