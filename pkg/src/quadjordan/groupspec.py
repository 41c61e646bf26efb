"""A tiny expression language naming finite groups, used by the command line.

    A5  S4  A7  S3           alternating / symmetric groups (degree <= 8)
    Alt(n)  Sym(n)           the same, spelled out
    Cyc(n)  C5               cyclic groups
    Dih(2n)  D12             dihedral group of order 2n (D4 is the Klein group)
    Klein  Q8                Klein four-group, quaternion group
    prod(G, H)               direct product
    wreath2(G)               (G x G) x| Z/2 with the swap action
    a5(name)  s5twist(name)  A5 in PGL_2, twisted S5, from a stored witness
"""
from __future__ import annotations

import ast
import re

from .constructions import (ResultTooLarge, a5_group, builtin_witness, cyclic_group,
                            dihedral_group, direct_product, quaternion_group, s5_twisted_group,
                            square_wreath)
from .groupcore import DEFAULT_CAP, FiniteGroup
from .permgroup import DegreeTooLarge, alternating_group, symmetric_group

__all__ = ["GroupSpecError", "parse_group"]


class GroupSpecError(ValueError):
    pass


_WITNESS_ALIASES = {"Qi": "Q(i)", "Q(i)": "Q(i)", "Qsqrtm7": "Q(sqrt-7)", "Q(sqrt-7)": "Q(sqrt-7)"}


def _int_arg(node, text) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    raise GroupSpecError(f"expected an integer argument in {text!r}")


def _witness_arg(node, text) -> str:
    if isinstance(node, ast.Name):
        key = node.id
    elif isinstance(node, ast.Constant) and isinstance(node.value, str):
        key = node.value
    else:
        raise GroupSpecError(f"expected a witness name in {text!r}")
    if key not in _WITNESS_ALIASES:
        raise GroupSpecError(f"unknown witness {key!r}; use Qi or Qsqrtm7")
    return _WITNESS_ALIASES[key]


def _named(name: str, max_order: int) -> FiniteGroup:
    if name == "Klein":
        return dihedral_group(4)
    if name == "Q8":
        return quaternion_group()
    m = re.fullmatch(r"([ASCD])(\d+)", name)
    if not m:
        raise GroupSpecError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    return _build(kind, n, max_order)


def _build(kind: str, n: int, max_order: int) -> FiniteGroup:
    try:
        if kind == "A":
            return alternating_group(n)
        if kind == "S":
            return symmetric_group(n)
        if kind == "C":
            if n > max_order:
                raise ResultTooLarge(f"C{n} exceeds --max-order {max_order}")
            return cyclic_group(n)
        if n > max_order:
            raise ResultTooLarge(f"D{n} exceeds --max-order {max_order}")
        return dihedral_group(n)
    except ValueError as exc:
        if isinstance(exc, (GroupSpecError, DegreeTooLarge, ResultTooLarge)):
            raise
        raise GroupSpecError(str(exc)) from None


_CALLS = {"Alt": "A", "Sym": "S", "Cyc": "C", "Dih": "D"}


def _eval(node, text: str, max_order: int) -> FiniteGroup:
    if isinstance(node, ast.Name):
        return _named(node.id, max_order)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        fn, args = node.func.id, node.args
        if fn in _CALLS and len(args) == 1:
            return _build(_CALLS[fn], _int_arg(args[0], text), max_order)
        if fn == "prod" and len(args) >= 2:
            G = _eval(args[0], text, max_order)
            for a in args[1:]:
                G = direct_product(G, _eval(a, text, max_order), cap=max_order)
            return G
        if fn == "wreath2" and len(args) == 1:
            G = _eval(args[0], text, max_order)
            if 2 * G.order ** 2 > max_order:
                raise ResultTooLarge(f"wreath2 of order {2 * G.order ** 2} exceeds --max-order {max_order}")
            return square_wreath(G)
        if fn == "a5" and len(args) == 1:
            return a5_group(builtin_witness(_witness_arg(args[0], text)))
        if fn == "s5twist" and len(args) == 1:
            return s5_twisted_group(builtin_witness(_witness_arg(args[0], text)))
        raise GroupSpecError(f"unknown constructor {fn}/{len(args)} in {text!r}")
    raise GroupSpecError(f"unsupported syntax in {text!r}")


def parse_group(text: str, max_order: int = DEFAULT_CAP) -> FiniteGroup:
    """Build the group named by ``text``; oversize results raise ResultTooLarge."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise GroupSpecError(f"cannot parse group spec {text!r}: {exc.msg}") from None
    return _eval(tree.body, text, max_order)
