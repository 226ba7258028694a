"""Evaluation semantics: classical, Kleene three-valued, fuzzy, supervaluation.

The three-valued and fuzzy evaluators share one graded core (strong
Kleene connectives on rational degrees: ``~x = 1-x``, ``& = min``,
``| = max``, ``x -> y = max(1-x, y)``, quantifiers min/max over their
finite domains).  The classical evaluator is a separate boolean walk so
the conservativity checks compare genuinely independent code paths.
"""

from __future__ import annotations

import enum
import itertools
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Tuple

from .formulas import (
    And,
    Atom,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Index,
    Not,
    Or,
    PropVar,
)

__all__ = [
    "TRUE",
    "FALSE",
    "HALF",
    "K3_VALUES",
    "SuperVerdict",
    "UnboundAtom",
    "BoundExceeded",
    "EmptyFamily",
    "eval_k3",
    "eval_fuzzy",
    "eval_classical",
    "eval_super",
    "is_tautology_k3",
    "quasi_tautology_k3",
    "collect_variables",
    "kleene_tables",
]

TRUE = Fraction(1)
FALSE = Fraction(0)
HALF = Fraction(1, 2)
K3_VALUES = (TRUE, FALSE, HALF)


class UnboundAtom(KeyError):
    pass


class BoundExceeded(ValueError):
    pass


class EmptyFamily(ValueError):
    pass


class SuperVerdict(enum.Enum):
    SUPERTRUE = "Supertrue"
    SUPERFALSE = "Superfalse"
    INDETERMINATE = "Indeterminate"


Domains = Mapping[str, Tuple[int, int]]
AtomFn = Callable[[str, int], Fraction]


def _resolve_index(index: Index, env: Dict[str, int]) -> int:
    if index.var is None:
        return index.offset
    if index.var not in env:
        raise UnboundAtom(f"unbound index variable {index.var!r}")
    return env[index.var] + index.offset


def _domain_range(domain, domains: Optional[Domains]):
    if isinstance(domain, tuple):
        lo, hi = domain
    else:
        if not domains or domain not in domains:
            raise UnboundAtom(f"unknown quantifier domain {domain!r}")
        lo, hi = domains[domain]
    return range(lo, hi + 1)


def _eval_graded(
    formula: Formula,
    atoms: AtomFn,
    propvars: Mapping[str, Fraction],
    domains: Optional[Domains],
    env: Dict[str, int],
) -> Fraction:
    if isinstance(formula, Atom):
        return atoms(formula.predicate, _resolve_index(formula.index, env))
    if isinstance(formula, PropVar):
        if formula.name not in propvars:
            raise UnboundAtom(f"unbound variable {formula.name!r}")
        return propvars[formula.name]
    if isinstance(formula, Not):
        return 1 - _eval_graded(formula.body, atoms, propvars, domains, env)
    if isinstance(formula, And):
        return min(
            _eval_graded(formula.left, atoms, propvars, domains, env),
            _eval_graded(formula.right, atoms, propvars, domains, env),
        )
    if isinstance(formula, Or):
        return max(
            _eval_graded(formula.left, atoms, propvars, domains, env),
            _eval_graded(formula.right, atoms, propvars, domains, env),
        )
    if isinstance(formula, Implies):
        left = _eval_graded(formula.left, atoms, propvars, domains, env)
        right = _eval_graded(formula.right, atoms, propvars, domains, env)
        return max(1 - left, right)
    if isinstance(formula, Iff):
        left = _eval_graded(formula.left, atoms, propvars, domains, env)
        right = _eval_graded(formula.right, atoms, propvars, domains, env)
        return min(max(1 - left, right), max(1 - right, left))
    if isinstance(formula, (Forall, Exists)):
        values = []
        for n in _domain_range(formula.domain, domains):
            env[formula.var] = n
            values.append(
                _eval_graded(formula.body, atoms, propvars, domains, env)
            )
        del env[formula.var]
        if not values:
            raise UnboundAtom("empty quantifier domain")
        return min(values) if isinstance(formula, Forall) else max(values)
    raise TypeError(f"not a formula: {formula!r}")


def _checked_k3(fn_or_map, what: str):
    if callable(fn_or_map):
        source = fn_or_map
    else:
        mapping = fn_or_map

        def source(pred, n):
            if (pred, n) not in mapping:
                raise UnboundAtom(f"unbound atom {pred}({n})")
            return mapping[(pred, n)]

    def checked(pred, n):
        value = Fraction(source(pred, n))
        if value not in K3_VALUES:
            raise ValueError(f"{what} value {value} not in {{0, 1/2, 1}}")
        return value

    return checked


def eval_k3(
    formula: Formula,
    atoms=None,
    propvars: Mapping[str, Fraction] = {},
    domains: Optional[Domains] = None,
) -> Fraction:
    """Strong-Kleene evaluation; all values must lie in {0, 1/2, 1}."""
    for value in propvars.values():
        if Fraction(value) not in K3_VALUES:
            raise ValueError(f"K3 value {value} not in {{0, 1/2, 1}}")
    atom_fn = _checked_k3(atoms if atoms is not None else {}, "K3")
    propvars = {name: Fraction(v) for name, v in propvars.items()}
    return _eval_graded(formula, atom_fn, propvars, domains, {})


def eval_fuzzy(
    formula: Formula,
    membership=None,
    propvars: Mapping[str, Fraction] = {},
    domains: Optional[Domains] = None,
) -> Fraction:
    """Degree-valued evaluation with the Kleene-Zadeh connectives."""

    if callable(membership):
        source = membership
    else:
        mapping = membership or {}

        def source(pred, n):
            if (pred, n) not in mapping:
                raise UnboundAtom(f"unbound atom {pred}({n})")
            return mapping[(pred, n)]

    def atom_fn(pred, n):
        value = Fraction(source(pred, n))
        if not 0 <= value <= 1:
            raise ValueError(f"degree {value} outside [0, 1]")
        return value

    propvars = {name: Fraction(v) for name, v in propvars.items()}
    return _eval_graded(formula, atom_fn, propvars, domains, {})


def eval_classical(
    formula: Formula,
    cutoff: Optional[int] = None,
    propvars: Mapping[str, bool] = {},
    domains: Optional[Domains] = None,
    _env: Optional[Dict[str, int]] = None,
) -> bool:
    """Two-valued evaluation; soritical atoms hold below the cutoff."""
    env = _env if _env is not None else {}
    if isinstance(formula, Atom):
        if cutoff is None:
            raise UnboundAtom("no cutoff supplied for soritical atoms")
        return _resolve_index(formula.index, env) < cutoff
    if isinstance(formula, PropVar):
        if formula.name not in propvars:
            raise UnboundAtom(f"unbound variable {formula.name!r}")
        return bool(propvars[formula.name])
    if isinstance(formula, Not):
        return not eval_classical(formula.body, cutoff, propvars, domains, env)
    if isinstance(formula, And):
        return eval_classical(
            formula.left, cutoff, propvars, domains, env
        ) and eval_classical(formula.right, cutoff, propvars, domains, env)
    if isinstance(formula, Or):
        return eval_classical(
            formula.left, cutoff, propvars, domains, env
        ) or eval_classical(formula.right, cutoff, propvars, domains, env)
    if isinstance(formula, Implies):
        return (
            not eval_classical(formula.left, cutoff, propvars, domains, env)
        ) or eval_classical(formula.right, cutoff, propvars, domains, env)
    if isinstance(formula, Iff):
        return eval_classical(
            formula.left, cutoff, propvars, domains, env
        ) == eval_classical(formula.right, cutoff, propvars, domains, env)
    if isinstance(formula, (Forall, Exists)):
        results = []
        for n in _domain_range(formula.domain, domains):
            env[formula.var] = n
            results.append(
                eval_classical(formula.body, cutoff, propvars, domains, env)
            )
        del env[formula.var]
        return all(results) if isinstance(formula, Forall) else any(results)
    raise TypeError(f"not a formula: {formula!r}")


def eval_super(
    formula: Formula,
    cutoffs,
    propvars: Mapping[str, bool] = {},
    domains: Optional[Domains] = None,
) -> SuperVerdict:
    """Supervaluation over a family of classical cutoff precisifications."""
    cutoffs = list(cutoffs)
    if not cutoffs:
        raise EmptyFamily("a precisification family must be nonempty")
    verdicts = [
        eval_classical(formula, cutoff, propvars, domains)
        for cutoff in cutoffs
    ]
    if all(verdicts):
        return SuperVerdict.SUPERTRUE
    if not any(verdicts):
        return SuperVerdict.SUPERFALSE
    return SuperVerdict.INDETERMINATE


def collect_variables(formula: Formula) -> Tuple:
    """Ordered propositional variables and literal-index atoms.

    Quantified formulas are rejected here: brute-force assignment search
    is defined for the propositional fragment.
    """
    seen = []

    def walk(node):
        if isinstance(node, PropVar):
            key = node.name
            if key not in seen:
                seen.append(key)
        elif isinstance(node, Atom):
            if node.index.var is not None:
                raise ValueError(
                    "assignment search needs ground atoms; "
                    f"found open index {node.index}"
                )
            key = (node.predicate, node.index.offset)
            if key not in seen:
                seen.append(key)
        elif isinstance(node, Not):
            walk(node.body)
        elif isinstance(node, (And, Or, Implies, Iff)):
            walk(node.left)
            walk(node.right)
        else:
            raise ValueError("quantifier-free formula required")

    walk(formula)
    return tuple(seen)


_VAR_BOUND = 12


def _assignment_values(formula: Formula, max_vars: int):
    variables = collect_variables(formula)
    if len(variables) > max_vars:
        raise BoundExceeded(
            f"{len(variables)} variables exceed the bound {max_vars}"
        )
    for combo in itertools.product(K3_VALUES, repeat=len(variables)):
        assignment = dict(zip(variables, combo))
        propvars = {k: v for k, v in assignment.items() if isinstance(k, str)}
        atoms = {k: v for k, v in assignment.items() if isinstance(k, tuple)}
        yield eval_k3(formula, atoms, propvars)


def is_tautology_k3(formula: Formula, max_vars: int = _VAR_BOUND) -> bool:
    """True when every three-valued assignment yields 1."""
    return all(v == TRUE for v in _assignment_values(formula, max_vars))


def quasi_tautology_k3(formula: Formula, max_vars: int = _VAR_BOUND) -> bool:
    """True when no three-valued assignment yields 0."""
    return all(v != FALSE for v in _assignment_values(formula, max_vars))


def _fmt(value: Fraction) -> str:
    return str(value)


def kleene_tables() -> str:
    """Fixed-width text rendering of the strong three-valued tables."""
    unary_rows = (TRUE, FALSE, HALF)
    binary_rows = [
        (p, q) for p in (TRUE, FALSE, HALF) for q in (TRUE, FALSE, HALF)
    ]
    width = 6
    lines = []
    lines.append("".join(h.ljust(width) for h in ("p", "~p")).rstrip())
    for p in unary_rows:
        lines.append(
            "".join(_fmt(v).ljust(width) for v in (p, 1 - p)).rstrip()
        )
    lines.append("")
    headers = ("p", "q", "p|q", "p&q", "p->q", "p<->q")
    lines.append("".join(h.ljust(width) for h in headers).rstrip())
    for p, q in binary_rows:
        row = (
            p,
            q,
            max(p, q),
            min(p, q),
            max(1 - p, q),
            min(max(1 - p, q), max(1 - q, p)),
        )
        lines.append("".join(_fmt(v).ljust(width) for v in row).rstrip())
    return "\n".join(lines) + "\n"
