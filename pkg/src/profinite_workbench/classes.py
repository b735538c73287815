"""Conjugacy-class measures along a thread, and the openness verdict.

For a thread ``g_i`` in levels ``G_i = U/N_i`` the measure of the union of
cosets meeting the class of ``g`` at level ``i`` is

    mu_i = |class(g_i)| / |G_i| = 1 / |C_{G_i}(g_i)|,

and the class of ``g`` is open exactly when the centralizer orders stay
bounded. Finite data can only ever suggest that, so the verdict is
evidence: constant centralizers over the last ``window`` levels give
``STABLE_OPEN_CANDIDATE``, strictly growing ones ``GROWING_CENTRALIZER``.
All arithmetic is exact.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import (
    BadN,
    EngineInconsistency,
    InvalidThread,
    NotMember,
    WindowTooLarge,
    resolve_cap,
)
from .groups import centralizer, concat, conjugacy_class, direct_product, element_order
from .tower import thread_validate

DEFAULT_WINDOW = 3


class Verdict(str, Enum):
    STABLE_OPEN_CANDIDATE = "STABLE_OPEN_CANDIDATE"
    GROWING_CENTRALIZER = "GROWING_CENTRALIZER"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class LevelRecord:
    level: int
    class_size: int
    centralizer_order: int
    measure: Fraction
    element_order: int


@dataclass
class ClassReport:
    levels: list
    verdict: Verdict
    stability_window: int
    assumed_self_similar: int = None
    notes: list = field(default_factory=list)

    @property
    def centralizer_orders(self):
        return [r.centralizer_order for r in self.levels]

    @property
    def measures(self):
        return [r.measure for r in self.levels]


def _verdict(cents, window):
    tail = cents[-window:]
    if all(c == tail[0] for c in tail):
        return Verdict.STABLE_OPEN_CANDIDATE
    if all(a < b for a, b in zip(tail, tail[1:])):
        return Verdict.GROWING_CENTRALIZER
    return Verdict.INCONCLUSIVE


def analyze(t, th, window=DEFAULT_WINDOW, assumed_self_similar=None):
    """Per-level class data for thread ``th`` and the resulting verdict.

    ``window`` counts levels, so ``GROWING_CENTRALIZER`` needs
    ``window - 1`` strict increases. ``assumed_self_similar=k`` adds the
    note that the class is open under that assumption when the
    centralizer is constant over the final ``k + 1`` levels; the
    assumption itself is never checked.
    """
    if window < 1:
        raise ValueError(f"window must be at least 1, got {window}")
    if window > t.depth:
        raise WindowTooLarge(f"window {window} exceeds the {t.depth} available levels")
    try:
        ok = thread_validate(t, th)
    except NotMember:
        ok = False
    if not ok:
        raise InvalidThread("thread is not compatible with the tower")
    records = []
    for i, (G, g) in enumerate(zip(t.levels, th.entries)):
        cls = conjugacy_class(G, g)
        cen = centralizer(G, g)
        mu = Fraction(1, cen.order)
        if Fraction(len(cls), G.order) != mu:
            raise EngineInconsistency(
                f"level {i}: |class|/|G| = {len(cls)}/{G.order} but 1/|C| = {mu}"
            )
        records.append(LevelRecord(i, len(cls), cen.order, mu, element_order(G, g)))
    cents = [r.centralizer_order for r in records]
    verdict = _verdict(cents, window)
    report = ClassReport(records, verdict, window, assumed_self_similar)
    if assumed_self_similar is not None:
        k = assumed_self_similar
        tail = cents[-(k + 1):]
        if (verdict is Verdict.STABLE_OPEN_CANDIDATE and len(cents) >= k + 1
                and all(c == tail[0] for c in tail)):
            report.notes.append(f"open under self-similarity assumption (period {k})")
        else:
            report.notes.append(
                f"self-similarity period {k} assumed but centralizer not stable over {k + 1} levels"
            )
    return report


def report_violations(report):
    """Internal-consistency failures of a report (empty when sound)."""
    out = []
    recs = report.levels
    for r in recs:
        if r.measure != Fraction(1, r.centralizer_order):
            out.append(f"level {r.level}: measure != 1/|C|")
    for a, b in zip(recs, recs[1:]):
        if b.measure > a.measure:
            out.append(f"level {b.level}: measure increased")
        if b.centralizer_order < a.centralizer_order:
            out.append(f"level {b.level}: centralizer order decreased")
        if b.element_order % a.element_order:
            out.append(f"level {b.level}: element order {a.element_order} does not divide {b.element_order}")
    return out


def keylem_bound_check(report):
    """Every centralizer order is bounded by ``1 / mu_n`` at the deepest level."""
    bound = 1 / report.levels[-1].measure
    return all(r.centralizer_order <= bound for r in report.levels)


@dataclass(frozen=True)
class TorsionAnnotation:
    stabilized_order: int
    consistent: bool
    message: str


def torsion_note(report):
    """Annotate a stable report with the element order it implies.

    When the centralizer has stabilized, the element should be torsion, so
    its order must stabilize across the same window; a drift is flagged.
    """
    orders = [r.element_order for r in report.levels]
    if report.verdict is not Verdict.STABLE_OPEN_CANDIDATE:
        return TorsionAnnotation(None, True, f"no stabilization claim; orders {orders}")
    tail = orders[-report.stability_window:]
    if all(o == tail[0] for o in tail):
        return TorsionAnnotation(tail[0], True, f"order stabilized at {tail[0]}")
    return TorsionAnnotation(
        None, False, f"centralizer stable but element orders {tail} did not stabilize"
    )


def product_centralizer_check(factors, s, cap=None):
    """Compare ``C_S(s)`` with the product of the factor centralizers.

    Returns ``(ok, orders)`` where ``orders`` lists ``|C_{S_i}(s_i)|``.
    ``ok`` requires exact set equality and that every nontrivial factor
    contributes at least two elements.
    """
    if len(factors) != len(s):
        raise ValueError("need one element per factor")
    cap = resolve_cap(cap)
    for F, x in zip(factors, s):
        F.index(x)
    P = factors[0]
    for F in factors[1:]:
        P = direct_product(P, F, cap=cap)
    tup = concat(s)
    big = centralizer(P, tup)
    parts = [centralizer(F, x) for F, x in zip(factors, s)]
    prod = [()]
    for C in parts:
        prod = [c + (x,) for c in prod for x in C]
    expected = sorted(concat(c) for c in prod)
    orders = [C.order for C in parts]
    equal = list(big.elements) == expected
    at_least_two = all(o >= 2 for o, F in zip(orders, factors) if F.order > 1)
    return equal and at_least_two, orders


def torsion_fraction(t, n):
    """Per level, the exact fraction of elements with ``x^n = 1``."""
    if n < 2:
        raise BadN(f"n must be at least 2, got {n}")
    return [Fraction(sum(1 for x in G if (x ** n).is_identity()), G.order) for G in t.levels]

