"""Context-free monadic rewriting systems.

A system over an alphabet A keeps, for each possible right-hand side
(a letter of A or the empty word), a context-free grammar for the set of
left-hand sides rewriting to it.  Reduction replaces a factor lying in
one of those languages by the corresponding right-hand side; because the
systems are length-reducing, reduction always terminates, and for
confluent systems the resulting irreducible word is a canonical name
for the monoid element.

System file format::

    alphabet: a b c d
    rhs eps:
    start: S
    S -> a T d
    T -> b T c | b c
    rhs a:
    start: G
    ...

Redex search runs factor-membership queries against the left-hand-side
grammars; leftmost position wins, then shortest factor, then the
alphabet order of the right-hand sides with the empty word last.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

from .core import (
    Alphabet,
    DomainError,
    FormatError,
    ResourceLimitError,
    Symbol,
    Word,
    check_word,
    render_symbol,
    render_word,
    symbol_from_token,
    word_key,
)
from .grammar import Cfg, cfg_member, emit_grammar, min_word_length, parse_grammar

# A right-hand side is a letter or None for the empty word.
Rhs = Symbol | None


class InvalidSystemError(ValueError):
    """A system file failed validation; carries the report."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.problems))
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...]


@dataclass(frozen=True)
class RuleApplication:
    position: int
    lhs_length: int
    rhs: Rhs


def rhs_label(rhs: Rhs) -> str:
    return "eps" if rhs is None else render_symbol(rhs)


class MonadicCfSystem:
    """A rewriting system with context-free left-hand-side families.

    Absent families mean no rules with that right-hand side.  The system
    is immutable after construction; an internal factor-membership cache
    is the only (invisible) mutable state.
    """

    def __init__(self, alphabet: Alphabet, lhs_grammars: dict[Rhs, Cfg]):
        for s in alphabet:
            if s.flavor != "plain":
                raise ValueError(f"system alphabet letter {render_symbol(s)} must be plain")
            if s.name == "eps":
                raise ValueError("letter name 'eps' is reserved")
        for rhs, g in lhs_grammars.items():
            if rhs is not None and rhs not in alphabet:
                raise ValueError(f"rule family {rhs_label(rhs)} is not an alphabet letter")
            for t in g.terminals:
                if t not in alphabet:
                    raise ValueError(
                        f"family {rhs_label(rhs)} grammar uses terminal {render_symbol(t)} outside the alphabet"
                    )
        self.alphabet = alphabet
        self.lhs_grammars = dict(lhs_grammars)
        self._rhs_order: tuple[Rhs, ...] = tuple(
            [s for s in alphabet if s in lhs_grammars] + ([None] if None in lhs_grammars else [])
        )
        self._factor_cache: dict[Word, tuple[Rhs, ...]] = {}

    def factor_families(self, factor: Word) -> tuple[Rhs, ...]:
        """Right-hand sides whose family language contains the factor."""
        hit = self._factor_cache.get(factor)
        if hit is None:
            hit = tuple(
                rhs for rhs in self._rhs_order if cfg_member(self.lhs_grammars[rhs], factor)
            )
            self._factor_cache[factor] = hit
        return hit

    def __eq__(self, other):
        return (
            isinstance(other, MonadicCfSystem)
            and self.alphabet == other.alphabet
            and self.lhs_grammars == other.lhs_grammars
        )

    def __repr__(self):
        fams = ", ".join(rhs_label(r) for r in self._rhs_order)
        return f"MonadicCfSystem({self.alphabet!r}, families [{fams}])"


def validate_system(s: MonadicCfSystem) -> ValidationReport:
    """Check the length-reducing and no-empty-left-hand-side invariants.

    A rule (l, r) must satisfy |l| > |r|: families rewriting to a letter
    need left-hand sides of length at least 2, the empty-word family at
    least 1.
    """
    problems = []
    for rhs, g in s.lhs_grammars.items():
        need = 1 if rhs is None else 2
        got = min_word_length(g)
        if got < need:
            problems.append(
                f"family {rhs_label(rhs)}: shortest left-hand side has length {int(got)},"
                f" need at least {need}"
            )
    return ValidationReport(ok=not problems, problems=tuple(problems))


def all_redexes(s: MonadicCfSystem, w: Word) -> list[RuleApplication]:
    """Every applicable rule occurrence, in (position, length, family) order."""
    check_word(w, s.alphabet)
    n = len(w)
    out = []
    for i in range(n):
        for ln in range(1, n - i + 1):
            for rhs in s.factor_families(w[i : i + ln]):
                out.append(RuleApplication(i, ln, rhs))
    return out


def find_redex(s: MonadicCfSystem, w: Word) -> RuleApplication | None:
    """Leftmost, then shortest, redex; None when w is irreducible."""
    check_word(w, s.alphabet)
    n = len(w)
    for i in range(n):
        for ln in range(1, n - i + 1):
            fams = s.factor_families(w[i : i + ln])
            if fams:
                return RuleApplication(i, ln, fams[0])
    return None


def apply_rule(w: Word, app: RuleApplication) -> Word:
    mid: Word = () if app.rhs is None else (app.rhs,)
    return w[: app.position] + mid + w[app.position + app.lhs_length :]


def reduce_once(s: MonadicCfSystem, w: Word) -> Word | None:
    """One reduction step at the leftmost-shortest redex; None if irreducible."""
    app = find_redex(s, w)
    return None if app is None else apply_rule(w, app)


def normal_form(s: MonadicCfSystem, w: Word, strategy: str = "leftmost", rng: Random | None = None) -> Word:
    """Reduce to an irreducible word.

    Termination is guaranteed by length reduction; for confluent systems
    the result does not depend on the strategy (leftmost, rightmost or
    random redex selection).
    """
    if strategy == "random" and rng is None:
        rng = Random(0)
    while True:
        if strategy == "leftmost":
            app = find_redex(s, w)
        else:
            apps = all_redexes(s, w)
            if not apps:
                app = None
            elif strategy == "rightmost":
                app = max(apps, key=lambda a: (a.position, -a.lhs_length))
            elif strategy == "random":
                app = rng.choice(apps)
            else:
                raise ValueError(f"unknown strategy {strategy!r}")
        if app is None:
            return w
        w = apply_rule(w, app)


def equal_in_monoid(s: MonadicCfSystem, u: Word, v: Word) -> bool:
    """Whether u and v name the same monoid element (equal normal forms)."""
    return normal_form(s, u) == normal_form(s, v)


def one_step_reducts(s: MonadicCfSystem, w: Word) -> list[Word]:
    """All words reachable in one step, deduplicated, in canonical order."""
    outs = {apply_rule(w, app) for app in all_redexes(s, w)}
    return sorted(outs, key=word_key)


def descendants(s: MonadicCfSystem, w: Word, cap: int = 100000) -> set[Word]:
    """All words reachable by any reduction sequence, including w."""
    seen = {w}
    stack = [w]
    while stack:
        cur = stack.pop()
        for nxt in one_step_reducts(s, cur):
            if nxt not in seen:
                if len(seen) >= cap:
                    raise ResourceLimitError(f"more than {cap} words explored from {render_word(w)}")
                seen.add(nxt)
                stack.append(nxt)
    return seen


def irreducible_descendants(s: MonadicCfSystem, w: Word, cap: int = 100000) -> set[Word]:
    """The irreducible words reachable from w, exploring every reduct."""
    return {u for u in descendants(s, w, cap) if find_redex(s, u) is None}


@dataclass(frozen=True)
class ConfluenceReport:
    passed: bool
    max_len: int
    words_checked: int
    witness: Word | None = None
    witness_forms: tuple[Word, ...] = ()

    def summary(self) -> str:
        if self.passed:
            return f"confluent up to length {self.max_len} ({self.words_checked} words checked)"
        forms = ", ".join(render_word(u) for u in self.witness_forms)
        return (
            f"not confluent: {render_word(self.witness)} reduces to distinct"
            f" irreducible words [{forms}]"
        )


def check_confluence_bounded(s: MonadicCfSystem, maxlen: int, cap: int = 100000) -> ConfluenceReport:
    """Verify unique irreducible descendants for every word up to maxlen.

    A bounded check, not a proof; the witness returned on failure is the
    first offending word in canonical order.
    """
    count = 0
    words: list[Word] = [()]
    for _ in range(maxlen + 1):
        for w in words:
            count += 1
            irr = irreducible_descendants(s, w, cap)
            if len(irr) != 1:
                return ConfluenceReport(
                    False, maxlen, count, w, tuple(sorted(irr, key=word_key))
                )
        words = [w + (x,) for w in words for x in s.alphabet if len(w) + 1 <= maxlen]
        words = [w for w in words if len(w) <= maxlen]
        if not words:
            break
    return ConfluenceReport(True, maxlen, count)


# --- file format ------------------------------------------------------------

def parse_system(text: str) -> MonadicCfSystem:
    """Parse and validate the system file format."""
    from .grammar import _strip_comment

    lines = text.splitlines()
    alphabet: Alphabet | None = None
    blocks: list[tuple[Rhs, int, list[str]]] = []
    current: list[str] | None = None
    for lineno, raw in enumerate(lines, start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if alphabet is None:
            if not line.startswith("alphabet:"):
                raise FormatError(lineno, "system file must begin with an alphabet: line")
            try:
                alphabet = Alphabet(symbol_from_token(t) for t in line[len("alphabet:"):].split())
            except ValueError as e:
                raise FormatError(lineno, str(e)) from e
            continue
        if line.startswith("rhs ") and line.endswith(":"):
            tok = line[len("rhs "):-1].strip()
            if tok == "eps":
                rhs: Rhs = None
            else:
                rhs = symbol_from_token(tok)
                if rhs not in alphabet:
                    raise FormatError(lineno, f"rule family {tok!r} is not an alphabet letter")
            current = []
            blocks.append((rhs, lineno, current))
            continue
        if current is None:
            raise FormatError(lineno, "expected a 'rhs <letter>:' or 'rhs eps:' block header")
        current.append(raw)
    if alphabet is None:
        raise FormatError(1, "system file must begin with an alphabet: line")
    grammars: dict[Rhs, Cfg] = {}
    for rhs, lineno, body in blocks:
        if rhs in grammars:
            raise FormatError(lineno, f"duplicate rule family {rhs_label(rhs)}")
        grammars[rhs] = parse_grammar("\n".join(body), terminals=alphabet)
    try:
        system = MonadicCfSystem(alphabet, grammars)
    except ValueError as e:
        raise FormatError(1, str(e)) from e
    report = validate_system(system)
    if not report.ok:
        raise InvalidSystemError(report)
    return system


def emit_system(s: MonadicCfSystem) -> str:
    lines = ["alphabet: " + " ".join(render_symbol(x) for x in s.alphabet)]
    for rhs in s._rhs_order:
        lines.append(f"rhs {rhs_label(rhs)}:")
        lines.append(emit_grammar(s.lhs_grammars[rhs]).rstrip("\n"))
    return "\n".join(lines) + "\n"
