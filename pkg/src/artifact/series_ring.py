"""Exact arithmetic in Z[L](T) with factored denominators.

A :class:`MotivicRational` is a numerator in Z[L, T] over a product of
factors (1 - L^a T^b)^mult with b >= 1.  Denominators stay factored; the
normal form cancels a factor whenever the numerator is exactly divisible
by it.  Volumes live in Z[L, L^-1] localized at factors (1 - L^-c), c > 0,
see :class:`LaurentRational`.
"""
import json
from collections import Counter
from typing import Iterable, Optional

from .errors import DenominatorCollapse, NotSimplePole


class Poly:
    """Sparse integer polynomial; exponent tuples may hold negative entries."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms=None, nvars: int = 2):
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    e = tuple(e)
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
        self.terms = t

    @classmethod
    def const(cls, c: int, nvars: int = 2) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exp, c: int = 1) -> "Poly":
        return cls({tuple(exp): c}, len(exp))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        out = Poly(None, self.nvars)
        out.terms = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly(None, self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly({e: c for e, c in t.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self, var: int = 0):
        return max((e[var] for e in self.terms), default=None)

    def min_degree(self, var: int = 0):
        return min((e[var] for e in self.terms), default=None)

    def shift(self, exp) -> "Poly":
        return Poly({tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()}, self.nvars)

    def evaluate(self, *values):
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                v *= x ** k
            total += v
        return total

    def coefficient(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def items(self):
        return sorted(self.terms.items(), key=lambda ec: tuple(reversed(ec[0])))

    def __repr__(self):
        names = ("L", "T") if self.nvars == 2 else ("L",) if self.nvars == 1 else tuple(f"x{i}" for i in range(self.nvars))
        return format_poly(self, names)


def LPoly(terms=None) -> Poly:
    """Univariate polynomial in L from {exponent: coefficient}."""
    if isinstance(terms, dict):
        return Poly({(k,): v for k, v in terms.items()}, 1)
    return Poly(terms, 1)


L = Poly.monomial((1, 0))
T = Poly.monomial((0, 1))
ONE = Poly.const(1)


def _monomial_str(e, names, latex=False):
    parts = []
    for k, name in zip(e, names):
        if k == 0:
            continue
        if k == 1:
            parts.append(name)
        elif latex:
            parts.append(f"{name}^{{{k}}}")
        else:
            parts.append(f"{name}^{k}")
    return ("" if latex else "*").join(parts) if not latex else " ".join(parts)


def format_poly(p: Poly, names=("L", "T"), latex: bool = False) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for i, (e, c) in enumerate(p.items()):
        mono = _monomial_str(e, names, latex)
        a = abs(c)
        if mono:
            body = mono if a == 1 else (f"{a} {mono}" if latex else f"{a}*{mono}")
        else:
            body = str(a)
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _div_binomial(p: Poly, shift) -> Optional[Poly]:
    """Exact quotient p / (1 - x^shift), or None if it does not divide.

    Monomials split into classes e + j*shift.  Writing y = x^shift, each
    class is x^base f(y), and (1 - y) divides f iff f(1) = 0; the quotient
    coefficients are the running sums of those of f.
    """
    if p.is_zero():
        return p
    i = next(i for i, s in enumerate(shift) if s)
    si = shift[i]
    classes = {}
    for e, c in p.terms.items():
        j = e[i] // si
        base = tuple(a - j * s for a, s in zip(e, shift))
        classes.setdefault(base, []).append((j, c))
    if any(sum(c for _, c in row) for row in classes.values()):
        return None
    q = {}
    for base, row in classes.items():
        row.sort()
        acc = 0
        for n, (j, c) in enumerate(row[:-1]):
            acc += c
            if acc:
                for jj in range(j, row[n + 1][0]):
                    q[tuple(a + jj * s for a, s in zip(base, shift))] = acc
    return Poly(q, p.nvars)


def _times_binomial(p: Poly, shift, m: int = 1) -> Poly:
    """p * (1 - x^shift)^m without a general product."""
    for _ in range(m):
        out = dict(p.terms)
        for e, c in p.terms.items():
            e2 = tuple(a + b for a, b in zip(e, shift))
            v = out.get(e2, 0) - c
            if v:
                out[e2] = v
            else:
                out.pop(e2, None)
        p = Poly(out, p.nvars)
    return p


def factor_poly(a: int, b: int) -> Poly:
    """The polynomial 1 - L^a T^b."""
    return Poly({(0, 0): 1, (a, b): -1}) if (a, b) != (0, 0) else Poly.const(0)


class MotivicRational:
    """numerator / prod (1 - L^a T^b)^mult, kept in normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: Iterable = (), normalize: bool = True):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        cnt = Counter()
        for item in den:
            if len(item) == 3:
                a, b, m = item
            else:
                (a, b), m = item, 1
            if b < 1:
                raise ValueError(f"denominator factor (1 - L^{a} T^{b}) needs a positive T power")
            cnt[(a, b)] += m
        self.num = num
        self.den = cnt
        if normalize:
            self._normalize()

    def _normalize(self):
        if self.num.is_zero():
            self.den = Counter()
            return
        changed = True
        while changed:
            changed = False
            for f in sorted(self.den, key=lambda ab: (ab[1], ab[0])):
                while self.den[f] > 0:
                    q = _div_binomial(self.num, f)
                    if q is None:
                        break
                    self.num = q
                    self.den[f] -= 1
                    changed = True
        self.den = Counter({f: m for f, m in self.den.items() if m > 0})

    @property
    def denominator(self) -> list:
        """Sorted list of (a, b, mult)."""
        return sorted((a, b, m) for (a, b), m in self.den.items())

    def denominator_poly(self) -> Poly:
        out = ONE
        for (a, b), m in self.den.items():
            out = out * factor_poly(a, b) ** m
        return out

    def __add__(self, other):
        if not isinstance(other, MotivicRational):
            other = MotivicRational(other)
        den = self.den | other.den
        n1 = self.num
        for f, m in (den - self.den).items():
            n1 = _times_binomial(n1, f, m)
        n2 = other.num
        for f, m in (den - other.den).items():
            n2 = _times_binomial(n2, f, m)
        return MotivicRational(n1 + n2, [(a, b, m) for (a, b), m in den.items()])

    __radd__ = __add__

    def __neg__(self):
        return MotivicRational(-self.num, self.denominator, normalize=False)

    def __sub__(self, other):
        if not isinstance(other, MotivicRational):
            other = MotivicRational(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MotivicRational):
            return MotivicRational(self.num * other.num, [(a, b, m) for (a, b), m in (self.den + other.den).items()])
        return MotivicRational(self.num * other, self.denominator)

    __rmul__ = __mul__

    def same_value(self, other: "MotivicRational") -> bool:
        """Equality as rational functions (cross multiplication)."""
        return self.num * other.denominator_poly() == other.num * self.denominator_poly()

    def __eq__(self, other):
        if not isinstance(other, MotivicRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, frozenset(self.den.items())))

    def expand(self, order: int) -> list:
        return expand(self, order)

    def pole_multiplicity(self, factor) -> int:
        return self.den.get(tuple(factor), 0)

    def to_json(self) -> dict:
        return {
            "numerator": [{"l": e[0], "t": e[1], "c": c} for e, c in self.num.items()],
            "denominator": [{"a": a, "b": b, "mult": m} for a, b, m in self.denominator],
        }

    @classmethod
    def from_json(cls, obj) -> "MotivicRational":
        num = Poly({(t["l"], t["t"]): t["c"] for t in obj["numerator"]})
        return cls(num, [(f["a"], f["b"], f["mult"]) for f in obj["denominator"]], normalize=False)

    def render(self, fmt: str = "plain") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), sort_keys=True)
        latex = fmt == "latex"
        Lname = r"\mathbb{L}" if latex else "L"
        num = format_poly(self.num, (Lname, "T"), latex)
        if not self.den:
            return num
        facs = []
        for a, b, m in self.denominator:
            mono = _monomial_str((a, b), (Lname, "T"), latex)
            f = f"(1 - {mono})"
            if m > 1:
                f += f"^{{{m}}}" if latex else f"^{m}"
            facs.append(f)
        if latex:
            return r"\frac{" + num + "}{" + "".join(facs) + "}"
        return f"({num})/({'*'.join(facs)})"

    def __repr__(self):
        return self.render("plain")


def add(r1: MotivicRational, r2: MotivicRational) -> MotivicRational:
    return r1 + r2


def rational_sum(items) -> MotivicRational:
    """Sum over one common denominator with a single normalization.

    Much cheaper than repeated ``+`` when many terms with different
    denominators are added, since intermediate sums are never reduced.
    """
    items = [r if isinstance(r, MotivicRational) else MotivicRational(r) for r in items]
    den = Counter()
    for r in items:
        den |= r.den
    num = Poly.const(0)
    for r in items:
        n = r.num
        for f, m in (den - r.den).items():
            n = _times_binomial(n, f, m)
        num = num + n
    return MotivicRational(num, [(a, b, m) for (a, b), m in den.items()])


def expand(r: MotivicRational, order: int) -> list:
    """Coefficients of T^0..T^order as polynomials in L."""
    series = [dict() for _ in range(order + 1)]
    for (l, t), c in r.num.terms.items():
        if 0 <= t <= order:
            series[t][l] = series[t].get(l, 0) + c
    for (a, b), m in r.den.items():
        for _ in range(m):
            # multiply by 1/(1 - L^a T^b): s_t += L^a * s_{t-b}, increasing t
            for t in range(b, order + 1):
                src = series[t - b]
                if src:
                    dst = series[t]
                    for l, c in src.items():
                        v = dst.get(l + a, 0) + c
                        if v:
                            dst[l + a] = v
                        else:
                            dst.pop(l + a, None)
    return [LPoly(s) for s in series]


def pole_multiplicity(r: MotivicRational, factor) -> int:
    return r.pole_multiplicity(factor)


class LaurentRational:
    """numerator in Z[L, L^-1] over prod (1 - L^-c)^mult with c > 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Iterable = (), normalize: bool = True):
        if not isinstance(num, Poly):
            num = LPoly({0: num})
        cnt = Counter()
        for item in den:
            c, m = item if isinstance(item, tuple) else (item, 1)
            if c <= 0:
                raise ValueError("Laurent denominator exponents must be positive")
            cnt[c] += m
        self.num = num
        self.den = cnt
        if normalize:
            self._normalize()

    def _normalize(self):
        if self.num.is_zero():
            self.den = Counter()
            return
        for c in sorted(self.den):
            while self.den[c] > 0:
                q = _div_binomial(self.num, (-c,))
                if q is None:
                    break
                self.num = q
                self.den[c] -= 1
        self.den = Counter({c: m for c, m in self.den.items() if m > 0})

    def denominator_poly(self) -> Poly:
        out = LPoly({0: 1})
        for c, m in self.den.items():
            out = out * LPoly({0: 1, -c: -1}) ** m
        return out

    def __add__(self, other):
        if not isinstance(other, LaurentRational):
            other = LaurentRational(LPoly({0: other}))
        den = self.den | other.den
        n1 = self.num
        for c, m in (den - self.den).items():
            n1 = n1 * LPoly({0: 1, -c: -1}) ** m
        n2 = other.num
        for c, m in (den - other.den).items():
            n2 = n2 * LPoly({0: 1, -c: -1}) ** m
        return LaurentRational(n1 + n2, list(den.items()))

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, LaurentRational):
            return LaurentRational(self.num * other.num, list((self.den + other.den).items()))
        return LaurentRational(self.num * other, list(self.den.items()))

    __rmul__ = __mul__

    def same_value(self, other: "LaurentRational") -> bool:
        return self.num * other.denominator_poly() == other.num * self.denominator_poly()

    def __eq__(self, other):
        if not isinstance(other, LaurentRational):
            return NotImplemented
        return self.same_value(other)

    def __hash__(self):
        return 0

    def to_json(self) -> dict:
        return {
            "numerator": [{"l": e[0], "c": c} for e, c in self.num.items()],
            "denominator": [{"c": c, "mult": m} for c, m in sorted(self.den.items())],
        }

    def render(self, fmt: str = "plain") -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), sort_keys=True)
        latex = fmt == "latex"
        Lname = r"\mathbb{L}" if latex else "L"
        num = format_poly(self.num, (Lname,), latex)
        if not self.den:
            return num
        facs = []
        for c, m in sorted(self.den.items()):
            f = f"(1 - {Lname}^{{-{c}}})" if latex else f"(1 - L^-{c})"
            if m > 1:
                f += f"^{{{m}}}" if latex else f"^{m}"
            facs.append(f)
        if latex:
            return r"\frac{" + num + "}{" + "".join(facs) + "}"
        return f"({num})/({'*'.join(facs)})"

    def __repr__(self):
        return self.render("plain")


def laurent_from_rational_function(num: Poly, den_exponents) -> LaurentRational:
    """num / prod (1 - L^e) for arbitrary nonzero integer exponents e."""
    n = num
    dens = []
    for e in den_exponents:
        if e == 0:
            raise DenominatorCollapse("factor 1 - L^0 vanishes")
        if e < 0:
            dens.append(-e)
        else:
            # 1/(1 - L^e) = -L^-e / (1 - L^-e)
            n = n * LPoly({-e: -1})
            dens.append(e)
    return LaurentRational(n, dens)


def volume_specialize(r: MotivicRational, d: int) -> LaurentRational:
    """((1 - L^d T) r)|_{T = L^-d} as a Laurent rational function."""
    if r.pole_multiplicity((d, 1)) != 1:
        raise NotSimplePole(f"(1 - L^{d} T) has multiplicity {r.pole_multiplicity((d, 1))}, expected 1")
    num = Poly([((l - d * t,), c) for (l, t), c in r.num.terms.items()], 1)
    exps = []
    for (a, b), m in r.den.items():
        if (a, b) == (d, 1):
            m -= 1
        exps += [a - d * b] * m
    return laurent_from_rational_function(num, exps)
