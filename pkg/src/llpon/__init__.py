"""Desk-scale workbench for topological models of LLPO_n.

Modules: :mod:`omega` (decreasing binary sequences), :mod:`trees` (labelled
n-trees), :mod:`prcodes` (goodness read off numeric codes), :mod:`topology`
(witness manipulation), :mod:`model` (certificate-producing evaluator),
:mod:`realize` (dovetailing machines and K2 streams) and :mod:`cli`.
"""

from .omega import ONE, ZERO, ConstOne, Opaque, ZeroFrom
from .trees import NIL, Nil, Node, cover0, is_good, is_very_good, parse_tree, format_tree

__all__ = [
    "ONE",
    "ZERO",
    "ConstOne",
    "ZeroFrom",
    "Opaque",
    "NIL",
    "Nil",
    "Node",
    "is_good",
    "is_very_good",
    "cover0",
    "parse_tree",
    "format_tree",
]
__version__ = "0.1.0"
