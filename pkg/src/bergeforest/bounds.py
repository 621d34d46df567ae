"""Closed-form Turán bounds for Berge forests, evaluated in exact arithmetic.

Each theorem identifier maps to an evaluator that checks its parameter
regime and returns a :class:`BoundResult`. Nothing here is floating point:
values are ``int`` or ``Fraction`` (or an ``(lo, hi)`` pair for intervals).
"Sufficiently large n" never becomes a number; it is carried as a hypothesis
string.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Mapping, Union

Value = Union[int, Fraction, tuple]

KINDS = ("exact", "upper", "lower", "slope_upper", "conditional_exact", "interval")
LARGE_N = "n sufficiently large (threshold unspecified)"


class BoundError(ValueError):
    pass


class UnknownTheorem(BoundError):
    pass


class MissingParam(BoundError):
    pass


def binom_zero(a: int, b: int) -> int:
    """Binomial coefficient with C(a, b) = 0 whenever a < b."""
    if a < 0 or b < 0:
        raise ValueError(f"binom_zero needs non-negative arguments, got ({a}, {b})")
    return math.comb(a, b)


def star_degree_threshold(size: int, r: int) -> int:
    """Degree above which a vertex is the centre of a Berge star with ``size`` edges."""
    if size < 1 or r < 2:
        raise ValueError("need star size >= 1 and r >= 2")
    return binom_zero(size - 1, r - 1) if size > r else size - 1


@dataclass(frozen=True)
class BoundResult:
    theorem_id: str
    applicable: bool
    reason: str
    kind: str | None = None
    value: Value | None = None
    hypotheses: tuple[str, ...] = ()
    slope_upper: Fraction | None = None
    all_n: bool = False

    def __post_init__(self):
        if self.applicable != (self.value is not None):
            raise ValueError("value must be present exactly when the bound applies")
        if self.kind is not None and self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "conditional_exact" and not self.hypotheses:
            raise ValueError("conditional_exact needs at least one hypothesis")

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "applicable": self.applicable,
            "reason": self.reason,
            "kind": self.kind,
            "value": _encode(self.value),
            "hypotheses": list(self.hypotheses),
            "slope_upper": _encode(self.slope_upper),
            "all_n": self.all_n,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "BoundResult":
        return cls(
            theorem_id=doc["theorem_id"],
            applicable=doc["applicable"],
            reason=doc["reason"],
            kind=doc["kind"],
            value=_decode(doc["value"]),
            hypotheses=tuple(doc["hypotheses"]),
            slope_upper=_decode(doc["slope_upper"]),
            all_n=doc.get("all_n", False),
        )


def _encode(v):
    if v is None or isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return [_encode(x) for x in v]


def _decode(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, list):
        return tuple(_decode(x) for x in v)
    return v


def _num(v: Fraction) -> Value:
    return v.numerator if v.denominator == 1 else v


class _Params:
    def __init__(self, params: Mapping):
        self.raw = dict(params)
        if "ell" in self.raw and "l" not in self.raw:
            self.raw["l"] = self.raw["ell"]

    def __getitem__(self, key: str):
        try:
            return self.raw[key]
        except KeyError:
            raise MissingParam(f"missing parameter {key!r}") from None

    def get(self, key, default=None):
        return self.raw.get(key, default)


_REGISTRY: dict[str, Callable[[_Params], BoundResult]] = {}


def _theorem(tid: str):
    def deco(fn):
        _REGISTRY[tid] = fn
        return fn
    return deco


def theorem_ids() -> list[str]:
    return list(_REGISTRY)


class _OutOfRegime(Exception):
    def __init__(self, reason: str):
        self.reason = reason


def _require(ok: bool, reason: str, ctx: dict):
    if not ok:
        if ctx.get("check_regime", True):
            raise _OutOfRegime(reason)
        ctx.setdefault("skipped", []).append(reason)


def eval_bound(theorem_id: str, params: Mapping, check_regime: bool = True) -> BoundResult:
    """Evaluate a named bound.

    With ``check_regime=False`` the formula is evaluated even outside its
    parameter regime; each violated condition is then listed among the
    hypotheses as ``"regime not met: ..."``.
    """
    fn = _REGISTRY.get(theorem_id)
    if fn is None:
        raise UnknownTheorem(f"unknown theorem id {theorem_id!r}; known: {', '.join(_REGISTRY)}")
    ctx = {"check_regime": check_regime}
    try:
        res = fn(_Params(params), ctx)
    except _OutOfRegime as exc:
        return BoundResult(theorem_id, False, exc.reason)
    skipped = ctx.get("skipped")
    if skipped:
        res = replace(
            res,
            reason=res.reason + " (regime check disabled)",
            hypotheses=res.hypotheses + tuple(f"regime not met: {s}" for s in skipped),
            all_n=False,
        )
    return res


@_theorem("gkl-path-i")
def _gkl_i(p, ctx):
    n, l, r = p["n"], p["l"], p["r"]
    _require(l >= r + 1 and r + 1 > 3, "needs l >= r+1 > 3", ctx)
    value = Fraction(n, l) * binom_zero(l, r)
    if n % l == 0:
        return BoundResult("gkl-path-i", True, "l | n: bound is attained", "conditional_exact",
                           _num(value), ("l | n",), all_n=True)
    return BoundResult("gkl-path-i", True, "upper bound for every n", "upper", _num(value), all_n=True)


@_theorem("gkl-path-ii")
def _gkl_ii(p, ctx):
    n, l, r = p["n"], p["l"], p["r"]
    _require(r >= l > 2, "needs r >= l > 2", ctx)
    value = Fraction(n * (l - 1), r + 1)
    if n % (r + 1) == 0:
        return BoundResult("gkl-path-ii", True, "(r+1) | n: bound is attained", "conditional_exact",
                           _num(value), ("(r+1) | n",), all_n=True)
    return BoundResult("gkl-path-ii", True, "upper bound for every n", "upper", _num(value), all_n=True)


@_theorem("connected-path")
def _connected_path(p, ctx):
    n, l, r = p["n"], p["l"], p["r"]
    _require(l >= 2 * r + 13 and 2 * r + 13 >= 18, "needs l >= 2r+13 >= 18", ctx)
    h = (l - 1) // 2
    value = binom_zero(h, r - 1) * (n - h) + binom_zero(h, r)
    if l % 2 == 0 and r >= 2:
        value += binom_zero(h, r - 2)
    return BoundResult("connected-path", True, "connected Berge-path extremal number", "conditional_exact",
                       value, ("n > N(l, r), threshold unspecified",))


def _tree_assumption(l: int, r: int, tree: str) -> tuple[str, ...]:
    if l == 1:
        return ()
    prop_regime = l >= 5 and 2 <= r < l - 1
    if prop_regime:
        if tree == "path":
            return ()
        return ("Erdos-Sos conjecture holds for T_l and its subtrees",)
    return ("ex_p(n, Berge-T_l) <= C(l,p) n / l for 2 <= p <= r (Erdos-Sos type assumption)",)


@_theorem("tree-stars")
def _tree_stars(p, ctx):
    n, l, k, r = p["n"], p["l"], p["k"], p["r"]
    tree = p.get("tree", "any")
    _require(k >= 2 and l >= 1 and 2 <= r <= k + l - 1, "needs k >= 2, l >= 1, 2 <= r <= k+l-1", ctx)
    _require(n >= k - 1, "needs n >= k-1", ctx)
    head = binom_zero(l + k - 1, r) - binom_zero(k - 1, r)
    m = n - k + 1
    hyps = _tree_assumption(l, r, tree) + (LARGE_N,)
    reason = "forest T_l + (k-1) stars"
    if l >= 5 and r < l - 1:
        reason += "; Erdos-Sos-for-subtrees regime applies"
    if m % l == 0:
        value = head * (m // l) + binom_zero(k - 1, r)
        return BoundResult("tree-stars", True, reason + "; l | n-k+1 gives equality for T_l + tS_l + (k-1-t)S_(l+1)",
                           "conditional_exact", value, hyps + ("l | n-k+1",))
    value = head * (-(-m // l)) + binom_zero(k - 1, r)
    return BoundResult("tree-stars", True, reason, "upper", value, hyps)


@_theorem("matching-stars")
def _matching_stars(p, ctx):
    n, k, r = p["n"], p["k"], p["r"]
    t = p.get("t")
    _require(k >= 2 and 2 <= r <= k, "needs k >= 2 and 2 <= r <= k", ctx)
    if t is not None:
        _require(1 <= t <= k, "needs 1 <= t <= k", ctx)
    value = binom_zero(k - 1, r - 1) * (n - k + 1) + binom_zero(k - 1, r)
    return BoundResult("matching-stars", True, "Berge-M_t + (k-t)S_2", "conditional_exact", value, (LARGE_N,))


def _path_stars(tid: str, p, ctx, large_r: bool):
    n, l1, l2, k, r = p["n"], p["l1"], p["l2"], p["k"], p["r"]
    _require(k >= 2 and l1 >= 3 and l2 >= 2, "needs k >= 2, l1 >= 3, l2 >= 2", ctx)
    if large_r:
        _require(r >= max(l1 * (l1 - 2), l1 + l2 + k - 1), "needs r >= max(l1(l1-2), l1+l2+k-1)", ctx)
    else:
        _require(r >= l1 + l2 + k - 1, "needs r >= l1+l2+k-1", ctx)
    lmin, lmax = min(l1, l2), max(l1, l2)
    lower = (lmin - 1) * ((n - k + 1) // (r - k + 2))
    hyps = ("upper: " + LARGE_N + ", additive O(1) constant unspecified",)
    if large_r:
        hyps = ("T_l1 is not a star",) + hyps
    return BoundResult(tid, True, "lower bound plus slope of the upper bound", "lower", lower, hyps,
                       slope_upper=Fraction(lmax - 1, r - k + 2))


@_theorem("path-stars")
def _ps(p, ctx):
    return _path_stars("path-stars", p, ctx, large_r=False)


@_theorem("tree-stars-large-r")
def _tsl(p, ctx):
    return _path_stars("tree-stars-large-r", p, ctx, large_r=True)


@_theorem("star-matching")
def _star_matching(p, ctx):
    n, l, k, r = p["n"], p["l"], p["k"], p["r"]
    _require(l >= 2 and r > k >= 2, "needs l >= 2 and r > k >= 2", ctx)
    if l <= r + 1:
        return BoundResult("star-matching", True, "l <= r+1", "conditional_exact",
                           n * (l - 1) // r, (LARGE_N,))
    value = Fraction(n, l) * binom_zero(l, r)
    if n % l == 0:
        return BoundResult("star-matching", True, "l > r+1 and l | n", "conditional_exact",
                           _num(value), ("l | n", LARGE_N))
    return BoundResult("star-matching", True, "l > r+1", "upper", _num(value), (LARGE_N,))


def _lengths(p) -> list[int]:
    raw = p["lengths"]
    if isinstance(raw, str):
        return [int(x) for x in raw.replace("/", ":").split(":") if x]
    if isinstance(raw, int):
        return [raw]
    return [int(x) for x in raw]


def htilde_count(n: int, lengths, r: int) -> int:
    half = sum(x + 1 for x in lengths) // 2
    return binom_zero(half - 1, r - 1) * (n - half + 1) + binom_zero(half - 1, r)


@_theorem("connected-linear-forest")
def _clf(p, ctx):
    n, r = p["n"], p["r"]
    lengths = _lengths(p)
    total = sum(x + 1 for x in lengths)
    _require(len(lengths) >= 2 and all(x >= 1 and x % 2 == 1 for x in lengths),
             "needs k >= 2 paths of odd length", ctx)
    _require(3 <= r and 2 * r <= total - 14, "needs 3 <= r <= S/2 - 7", ctx)
    _require(total % 2 == 0, "needs S even", ctx)
    return BoundResult("connected-linear-forest", True, "connected linear forest of odd paths",
                       "conditional_exact", htilde_count(n, lengths, r), (LARGE_N,))


def _path_ex(n: int, l: int, r: int) -> tuple[int, int, bool]:
    """(lower, upper, exact?) for ex_r(n, Berge-P_l) from the path theorems."""
    lower = (n // l) * binom_zero(l, r) + binom_zero(n % l, r)
    for tid in ("gkl-path-i", "gkl-path-ii"):
        res = eval_bound(tid, {"n": n, "l": l, "r": r})
        if res.applicable:
            upper = math.floor(res.value)
            return (upper if res.kind == "conditional_exact" else lower), upper, res.kind == "conditional_exact"
    return lower, binom_zero(n, r), False


def _max_with_path(tid: str, n: int, l: int, r: int, second: int, reason: str) -> BoundResult:
    lo, hi, exact = _path_ex(n, l, r)
    if exact:
        return BoundResult(tid, True, reason, "conditional_exact", max(lo, second), (LARGE_N,))
    return BoundResult(tid, True, reason + "; ex_r(n, Berge-P) only bounded, result is an interval",
                       "interval", (max(lo, second), max(hi, second)), (LARGE_N,))


@_theorem("two-paths-i")
def _two_paths_i(p, ctx):
    n, l, r = p["n"], p["l"], p["r"]
    _require(r >= 3 and l % 2 == 1 and l >= 2 * r + 11, "needs r >= 3, l odd, l >= 2r+11", ctx)
    m = (l + 1) // 2
    second = binom_zero(m, r - 1) * (n - m) + binom_zero(m, r)
    return _max_with_path("two-paths-i", n, l, r, second, "Berge-P_l + P_1")


@_theorem("two-paths-ii")
def _two_paths_ii(p, ctx):
    n, l1, l2, r = p["n"], p["l1"], p["l2"], p["r"]
    _require(r >= 3 and l1 % 2 == 1 and l2 % 2 == 1 and l1 >= l2 >= r + 6,
             "needs r >= 3, l1 >= l2 >= r+6 both odd", ctx)
    m = (l1 + l2) // 2
    second = binom_zero(m, r - 1) * (n - m) + binom_zero(m, r)
    return _max_with_path("two-paths-ii", n, l1, r, second, "Berge-P_l1 + P_l2")


@_theorem("two-equal-paths")
def _two_equal(p, ctx):
    n, l, r = p["n"], p["l"], p["r"]
    _require(l % 2 == 1 and l >= r + 6 >= 9, "needs l odd and l >= r+6 >= 9", ctx)
    value = binom_zero(l, r - 1) * (n - l) + binom_zero(l, r)
    return BoundResult("two-equal-paths", True, "Berge-2P_l", "conditional_exact", value, (LARGE_N,))


def two_paths_crossover(l: int, r: int) -> int:
    """Smallest n0 with C(l,r-1)(n-l) + C(l,r) >= (n/l) C(l,r) for every n >= n0."""
    slope = Fraction(binom_zero(l, r - 1)) - Fraction(binom_zero(l, r), l)
    if slope <= 0:
        raise ValueError("second operand does not dominate: need l > r")
    const = binom_zero(l, r) - l * binom_zero(l, r - 1)
    return max(0, math.ceil(Fraction(-const) / slope))


@_theorem("berge-matching")
def _berge_matching(p, ctx):
    n, k, r = p["n"], p["k"], p["r"]
    _require(k >= 1 and r >= 2, "needs k >= 1 and r >= 2", ctx)
    if r >= 2 * k - 1:
        value, regime = k - 1, "r >= 2k-1"
    elif k < r:
        value, regime = binom_zero(2 * k - 1, r), "k < r < 2k-1"
    elif r == k:
        value, regime = n - k + 1, "r = k"
    else:
        value, regime = binom_zero(k - 1, r - 1) * (n - k + 1) + binom_zero(k - 1, r), "r <= k-1"
    return BoundResult("berge-matching", True, f"regime {regime}", "conditional_exact", value, (LARGE_N,))


@_theorem("erdos-sos")
def _erdos_sos(p, ctx):
    n, l = p["n"], p["l"]
    tree = p.get("tree", "any")
    _require(l >= 1, "needs l >= 1", ctx)
    value = _num(Fraction(n * (l - 1), 2))
    if tree == "path":
        return BoundResult("erdos-sos", True, "paths: Erdos-Gallai theorem", "upper", value, all_n=True)
    return BoundResult("erdos-sos", True, "graph tree bound", "upper", value,
                       ("Erdos-Sos conjecture holds for T_l",))


@_theorem("star-free")
def _star_free(p, ctx):
    n, l, r = p["n"], p["l"], p["r"]
    _require(l >= 1 and r >= 2, "needs l >= 1 and r >= 2", ctx)
    t = star_degree_threshold(l, r)
    return BoundResult("star-free", True, f"every vertex has degree <= {t}", "upper", n * t // r, all_n=True)
