"""Essential-dimension bound ledger for algebras of exponent 2.

Records are plain values with one provenance each:

* ``construction-verified`` -- the bound came out of a passing verdict and
  is carried to the algebra through a chain of named rules;
* ``ledger-rule`` -- a closed-form statement or a transfer rule;
* ``literature`` -- a published constant.

:func:`best_bounds` answers a query ``(n, char, p)`` for
``ed_p(Alg_{n,2})``.  Characteristic is only ever an assumption tag:
``"not2"``, ``"equals2"`` or ``"any"``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

CHARS = ("any", "not2", "equals2")


class BoundConflictError(ArithmeticError):
    """Best lower bound exceeds best upper bound."""


@dataclass(frozen=True, order=True)
class Obj:
    kind: str  # "Alg", "SL/mu", "GL/mu", "TorusNormalizer"
    n: int
    m: int = 0
    label: str = ""

    def __str__(self) -> str:
        if self.kind == "Alg":
            return f"Alg({self.n},{self.m})"
        if self.kind == "SL/mu":
            return f"SL{self.n}/mu{self.m}"
        if self.kind == "GL/mu":
            return f"GL{self.n}/mu{self.m}"
        return f"T x| H [{self.label}({self.n})]"


def Alg(n: int, m: int = 2) -> Obj:
    return Obj("Alg", n, m)


def SL(n: int, m: int) -> Obj:
    return Obj("SL/mu", n, m)


@dataclass(frozen=True)
class BoundRecord:
    quantity: str  # "ed" or "ed_p"
    obj: Obj
    kind: str  # "lower", "upper", "exact"
    value: int
    provenance: str  # "construction-verified", "ledger-rule", "literature"
    source: str
    p: Optional[int] = None
    char: str = "any"
    chain: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lower", "upper", "exact"):
            raise ValueError(f"bad record kind {self.kind!r}")
        if self.char not in CHARS:
            raise ValueError(f"bad characteristic tag {self.char!r}")
        if self.quantity not in ("ed", "ed_p"):
            raise ValueError(f"bad quantity {self.quantity!r}")
        if (self.quantity == "ed_p") != (self.p is not None):
            raise ValueError("ed_p records need a prime, ed records must not have one")

    @property
    def is_lower(self) -> bool:
        return self.kind in ("lower", "exact")

    @property
    def is_upper(self) -> bool:
        return self.kind in ("upper", "exact")

    def applies_to(self, char: str) -> bool:
        return self.char == "any" or self.char == char

    def describe(self) -> str:
        q = "ed" if self.quantity == "ed" else f"ed_{self.p}"
        rel = {"lower": ">=", "upper": "<=", "exact": "="}[self.kind]
        return f"{q}({self.obj}) {rel} {self.value} [{self.char}; {self.provenance}: {self.source}]"

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "object": str(self.obj),
            "p": self.p,
            "char": self.char,
            "kind": self.kind,
            "value": self.value,
            "provenance": self.provenance,
            "source": self.source,
            "chain": list(self.chain),
        }


def _rec(quantity, obj, kind, value, provenance, source, p=None, char="any", chain=()):
    return BoundRecord(quantity, obj, kind, value, provenance, source, p, char, tuple(chain))


def _log2_exact(n: int) -> Optional[int]:
    return n.bit_length() - 1 if n >= 1 and n & (n - 1) == 0 else None


# -- closed forms ----------------------------------------------------------

def closed_forms(n: int) -> list[BoundRecord]:
    """Closed-form bounds for ``Alg_{n,2}``, ``n = 2^r``.

    Upper bounds need ``r >= 3``; the general lower bound needs ``n >= 4``.
    """
    r = _log2_exact(n)
    if r is None or r < 2:
        raise ValueError(f"closed forms need n = 2^r >= 4, got {n}")
    out = [
        _rec("ed_p", Alg(n), "lower", (r - 1) * n // 2, "literature", "general lower bound (log2(n)-1)n/2", p=2, char="not2"),
        _rec("ed_p", Alg(n), "upper", n * n // 4 + n // 2, "literature", "general upper bound n^2/4 + n/2", p=2, char="not2"),
    ]
    if r >= 3:
        out += [
            _rec("ed", Alg(n), "upper", (n - 1) * (n - 2) // 2, "ledger-rule", "closed form (n-1)(n-2)/2", char="not2"),
            _rec("ed_p", Alg(n), "upper", n * n // 4, "ledger-rule", "closed form n^2/4", p=2, char="equals2"),
            _rec("ed_p", Alg(n), "upper", n * n // 16 + n // 2, "ledger-rule", "closed form n^2/16 + n/2", p=2, char="not2"),
        ]
    return out


def primary_decomposition(n: int) -> int:
    """Largest power of 2 dividing ``n``; ``Alg_{n,2}`` and ``Alg_{2^r,2}`` share ed and ed_2."""
    if n < 1:
        raise ValueError("n must be positive")
    return n & -n


def literature_constants() -> list[BoundRecord]:
    """Fixed table of published values."""
    L = "literature"
    return [
        _rec("ed", Alg(1), "exact", 0, "ledger-rule", "Alg(1,2) is trivial"),
        _rec("ed_p", Alg(1), "exact", 0, "ledger-rule", "Alg(1,2) is trivial", p=2),
        _rec("ed", Alg(4), "exact", 4, L, "ed_2(Alg_{4,2}) = ed(Alg_{4,2}) = 4", char="not2"),
        _rec("ed_p", Alg(4), "exact", 4, L, "ed_2(Alg_{4,2}) = ed(Alg_{4,2}) = 4", p=2, char="not2"),
        _rec("ed", Alg(8), "exact", 8, L, "ed_2(Alg_{8,2}) = ed(Alg_{8,2}) = 8", char="not2"),
        _rec("ed_p", Alg(8), "exact", 8, L, "ed_2(Alg_{8,2}) = ed(Alg_{8,2}) = 8", p=2, char="not2"),
        _rec("ed", Alg(4), "exact", 3, L, "ed_2(Alg_{4,2}) = ed(Alg_{4,2}) = 3", char="equals2"),
        _rec("ed_p", Alg(4), "exact", 3, L, "ed_2(Alg_{4,2}) = ed(Alg_{4,2}) = 3", p=2, char="equals2"),
        _rec("ed_p", Alg(8), "lower", 3, L, "3 <= ed_2(Alg_{8,2}) <= ed(Alg_{8,2}) <= 10", p=2, char="equals2"),
        _rec("ed", Alg(8), "upper", 10, L, "3 <= ed_2(Alg_{8,2}) <= ed(Alg_{8,2}) <= 10", char="equals2"),
        _rec("ed", SL(2, 2), "exact", 2, L, "ed_2(SL_2/mu_2) = ed(SL_2/mu_2) = 2"),
        _rec("ed_p", SL(2, 2), "exact", 2, L, "ed_2(SL_2/mu_2) = ed(SL_2/mu_2) = 2", p=2),
        _rec("ed", SL(3, 3), "exact", 2, L, "ed_3(SL_3/mu_3) = ed(SL_3/mu_3) = 2"),
        _rec("ed_p", SL(3, 3), "exact", 2, L, "ed_3(SL_3/mu_3) = ed(SL_3/mu_3) = 2", p=3),
        _rec("ed", SL(4, 4), "exact", 5, L, "ed_2(SL_4/mu_4) = ed(SL_4/mu_4) = 5", char="not2"),
        _rec("ed_p", SL(4, 4), "exact", 5, L, "ed_2(SL_4/mu_4) = ed(SL_4/mu_4) = 5", p=2, char="not2"),
        _rec("ed", SL(4, 2), "exact", 5, L, "ed_2(SL_4/mu_2) = ed(SL_4/mu_2) = 5", char="not2"),
        _rec("ed_p", SL(4, 2), "exact", 5, L, "ed_2(SL_4/mu_2) = ed(SL_4/mu_2) = 5", p=2, char="not2"),
    ]


# -- construction-verified records -------------------------------------------

RULE_NORMALIZER = "normalizer surjection: ed(G) <= ed(N_G(T)), ed_p(G) <= ed_p(N_G(T))"
RULE_REPRESENTATION = "generically free representation: ed(T x| H) <= |X| - rank(T*)"
RULE_ED_P = "ed_p <= ed"
RULE_INDEX = "prime-to-p index: ed_p(G) = ed_p(G') when [G:G'] is prime to p"
RULE_THETA = "surjective Theta over a 2-closed field: ed_2(Alg_{2^r,2}) <= max(ed_2(T_r x| G_r), ed_2(Alg_{2^i,2}), i < r)"
RULE_SANDWICH = "ed(Alg_{n,m}) <= ed(SL_n/mu_m) <= ed(Alg_{n,m}) + 1 (char does not divide n)"
RULE_CM = "ed_p(SL_{p^r}/mu_{p^s}) = ed_p(Alg_{p^r,p^s}) + 1 for 0 < s < r, char != p"


@functools.lru_cache(maxsize=None)
def verified_bound(name: str, parameter: int, strategy: str = "auto") -> tuple[bool, int]:
    """Run a construction; return ``(passed, bound)``."""
    from .constructions import build

    c = build(name, parameter)
    v = c.verify(strategy)
    return c.passed(v), v.bound


def construction_records(name: str, parameter: int, strategy: str = "auto") -> list[BoundRecord]:
    """Upper-bound records a passing construction supports, with the rule chain to ``Alg``."""
    passed, bound = verified_bound(name, parameter, strategy)
    if not passed:
        return []
    verdict = f"{name}({parameter}) verdict: surjective, faithful on kernel, bound {bound}"
    tn = Obj("TorusNormalizer", parameter, label=name)
    out = [_rec("ed", tn, "upper", bound, "construction-verified", verdict, chain=(RULE_REPRESENTATION, verdict))]
    if name == "section5":
        n = 2 ** parameter
        out.append(_rec(
            "ed_p", Alg(n), "upper", bound, "construction-verified", f"{name}({parameter})", p=2, char="not2",
            chain=(RULE_THETA, RULE_INDEX, RULE_REPRESENTATION, verdict),
        ))
    elif name == "lemma33":
        n = 2 ** parameter
        out.append(_rec(
            "ed_p", Alg(n), "upper", bound, "construction-verified", f"{name}({parameter})", p=2, char="any",
            chain=(RULE_NORMALIZER, RULE_INDEX, RULE_ED_P, RULE_REPRESENTATION, verdict),
        ))
    elif name == "lemma32ii":
        out.append(_rec(
            "ed", Alg(parameter), "upper", bound, "construction-verified", f"{name}({parameter})", char="not2",
            chain=(RULE_SANDWICH, RULE_NORMALIZER, RULE_REPRESENTATION, verdict),
        ))
    elif name == "lemma32i":
        out.append(_rec(
            "ed", Alg(parameter), "upper", bound, "construction-verified", f"{name}({parameter})",
            chain=(RULE_NORMALIZER, RULE_REPRESENTATION, verdict),
        ))
    return out


def default_constructions(n: int, max_verified_r: int = 5) -> list[tuple[str, int]]:
    """Constructions cheap enough to run for ``Alg_{n,2}``, ``n = 2^r``."""
    r = _log2_exact(n)
    if r is None:
        return []
    out = []
    if 3 <= r <= max_verified_r:
        out.append(("section5", r))
    if 2 <= r <= min(3, max_verified_r):
        out.append(("lemma33", r))
    if 6 <= n <= 8:
        out.append(("lemma32ii", n))
    return out


# -- the ledger ----------------------------------------------------------------

@dataclass
class BoundTable:
    n: int
    char: str
    p: int
    reduced_n: int
    records: list[BoundRecord]
    lower: Optional[BoundRecord]
    upper: Optional[BoundRecord]
    notes: list[str] = field(default_factory=list)

    @property
    def best(self) -> tuple[Optional[int], Optional[int]]:
        return (self.lower.value if self.lower else None, self.upper.value if self.upper else None)

    def as_dict(self) -> dict:
        lo, up = self.best
        return {
            "n": self.n,
            "char": self.char,
            "p": self.p,
            "reduced_n": self.reduced_n,
            "lower": lo,
            "upper": up,
            "chain": {
                "lower": [self.lower.source, *self.lower.chain] if self.lower else [],
                "upper": [self.upper.source, *self.upper.chain] if self.upper else [],
            },
            "notes": list(self.notes),
            "records": [r.as_dict() for r in self.records],
        }


def _to_ed_p(rec: BoundRecord, p: int) -> Optional[BoundRecord]:
    """View a record as a bound on ``ed_p`` of the same object, if it gives one."""
    if rec.quantity == "ed_p":
        return rec if rec.p == p else None
    if rec.is_upper:
        return _rec("ed_p", rec.obj, "upper", rec.value, rec.provenance, rec.source, p=p, char=rec.char,
                    chain=(RULE_ED_P, *rec.chain))
    return None


_PROVENANCE_ORDER = {"literature": 0, "construction-verified": 1, "ledger-rule": 2}


def _rank(rec: BoundRecord) -> tuple[int, int]:
    # ties go to published values, then verified records, then shorter chains
    return _PROVENANCE_ORDER[rec.provenance], len(rec.chain)


def select_best(records: Iterable[BoundRecord], quantity: str, obj: Obj, char: str, p: Optional[int] = None):
    """``(best lower record, best upper record)``; raises on a conflict."""
    lower = upper = None
    for rec in records:
        if rec.obj != obj or rec.quantity != quantity or rec.p != p or not rec.applies_to(char):
            continue
        if rec.is_lower and (lower is None or (-rec.value, _rank(rec)) < (-lower.value, _rank(lower))):
            lower = rec
        if rec.is_upper and (upper is None or (rec.value, _rank(rec)) < (upper.value, _rank(upper))):
            upper = rec
    if lower is not None and upper is not None and lower.value > upper.value:
        raise BoundConflictError(
            f"conflicting records for {obj} ({char}): lower {lower.describe()} chain {list(lower.chain)} "
            f"exceeds upper {upper.describe()} chain {list(upper.chain)}"
        )
    return lower, upper


def best_bounds(
    n: int,
    char: str = "not2",
    p: int = 2,
    verify: bool = True,
    max_verified_r: int = 5,
    extra_records: Sequence[BoundRecord] = (),
) -> BoundTable:
    """Best known ``(lower, upper)`` for ``ed_p(Alg_{n,2})``."""
    if p != 2:
        raise ValueError(f"only p = 2 is supported, got p = {p}")
    if char not in CHARS:
        raise ValueError(f"char must be one of {CHARS}")
    if n < 1:
        raise ValueError("n must be positive")
    q = primary_decomposition(n)
    notes = []
    if q != n:
        notes.append(f"primary decomposition: Alg({n},2) -> Alg({q},2)")
    pool: list[BoundRecord] = list(literature_constants())
    r = _log2_exact(q)
    if r is not None and r >= 2:
        pool += closed_forms(q)
    if verify:
        for name, param in default_constructions(q, max_verified_r):
            pool += construction_records(name, param)
    pool += list(extra_records)
    target = Alg(q)
    relevant = [rec for rec in pool if rec.obj == target and rec.applies_to(char)]
    views = [v for v in (_to_ed_p(rec, p) for rec in relevant) if v is not None]
    lower, upper = select_best(views, "ed_p", target, char, p)
    return BoundTable(n=n, char=char, p=p, reduced_n=q, records=relevant, lower=lower, upper=upper, notes=notes)


def sandwich(n: int, m: int, alg_records: Optional[Sequence[BoundRecord]] = None, char: str = "not2") -> list[BoundRecord]:
    """Transfer ``Alg_{n,m}`` bounds to ``SL_n/mu_m``.

    Uses ``ed(Alg) <= ed(SL_n/mu_m) <= ed(Alg) + 1`` and, for ``n = p^r``,
    ``m = p^s`` with ``0 < s < r``, ``ed_p(SL) = ed_p(Alg) + 1``.  When
    ``alg_records`` is omitted (``m = 2`` only) the ledger's own records for
    ``Alg_{n,2}`` are used.
    """
    if m < 1 or n % m:
        raise ValueError(f"m = {m} does not divide n = {n}")
    if alg_records is None:
        if m != 2:
            raise ValueError("default Alg records exist only for m = 2")
        table = best_bounds(n, char)
        alg_records = list(table.records)
        if table.lower is not None:
            alg_records.append(table.lower)
        if table.upper is not None:
            alg_records.append(table.upper)
    obj = Alg(n, m)
    # char must not divide n
    sl_char = "not2" if n % 2 == 0 else char
    out: list[BoundRecord] = []
    for rec in alg_records:
        if rec.obj != obj or not rec.applies_to(char):
            continue
        rc = rec.char if rec.char != "any" else sl_char
        if rec.quantity == "ed":
            if rec.is_lower:
                out.append(_rec("ed", SL(n, m), "lower", rec.value, "ledger-rule", "sandwich (lower)", char=rc,
                                chain=(RULE_SANDWICH, rec.describe())))
            if rec.is_upper:
                out.append(_rec("ed", SL(n, m), "upper", rec.value + 1, "ledger-rule", "sandwich (upper)", char=rc,
                                chain=(RULE_SANDWICH, rec.describe())))
        else:
            pp = rec.p
            r = _power_of(n, pp)
            s = _power_of(m, pp)
            if r is not None and s is not None and 0 < s < r:
                kind = rec.kind
                out.append(_rec("ed_p", SL(n, m), kind, rec.value + 1, "literature", "ed_p(SL) = ed_p(Alg) + 1",
                                p=pp, char=rc if rc != "any" else "not2", chain=(RULE_CM, rec.describe())))
                if rec.is_lower:
                    out.append(_rec("ed", SL(n, m), "lower", rec.value + 1, "ledger-rule", "ed >= ed_p",
                                    char=rc if rc != "any" else "not2", chain=(RULE_ED_P, RULE_CM, rec.describe())))
    return out


def _power_of(n: int, p: int) -> Optional[int]:
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    return k if n == 1 else None


def summarize(records: Iterable[BoundRecord], quantity: str, obj: Obj, char: str, p: Optional[int] = None):
    """``(lower, upper)`` values from a record set; None where unknown."""
    lo, up = select_best(records, quantity, obj, char, p)
    return (lo.value if lo else None, up.value if up else None)
