import logging
import math
import threading
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ, Poly, Rational, Symbol, chebyshevt_poly, cos, minimal_polynomial, pi
from sympy.polys.polyclasses import ANP

from models.group_models import CoxeterMatrix


logger = logging.getLogger(__name__)

_X = Symbol("x")

# 初始包围区间宽度为 2^-32, 之后每次精化位数加倍
_INITIAL_BITS = 32

Number = Union[int, Fraction]


def _qq_to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _rational_to_fraction(value: Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _interval_horner(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction]:
    """在区间 [lo, hi] 上对多项式（高次在前）做区间求值"""
    low = high = coeffs[0]
    for coef in coeffs[1:]:
        products = (low * lo, low * hi, high * lo, high * hi)
        low, high = min(products) + coef, max(products) + coef
    return low, high


class FieldContext:
    """有序实数域 Q(cos(π/M)) 的上下文

    持有 c = cos(π/M) 的极小多项式和一个单调精化的有理包围区间。
    包围区间由锁保护, 并发精化不会改变任何符号判定的结果。
    """

    def __init__(self, order: int):
        if order < 1:
            raise ValueError(f"M 必须为正整数, 收到 {order}")
        self.order = order
        self.minimal_polynomial = Poly(minimal_polynomial(cos(pi / order), _X), _X, domain=QQ).monic()
        self.degree = self.minimal_polynomial.degree()
        self._modulus = [QQ.from_sympy(coef) for coef in self.minimal_polynomial.all_coeffs()]
        self._cos_cache: Dict[int, "FieldScalar"] = {}
        self._lock = threading.Lock()

        # cos(π/M) 是其极小多项式的最大实根
        intervals = self.minimal_polynomial.intervals()
        (lo, hi), _ = max(intervals, key=lambda item: item[0][1])
        self._bits = _INITIAL_BITS
        if lo != hi:
            lo, hi = self.minimal_polynomial.refine_root(lo, hi, eps=Rational(1, 2 ** self._bits))
        self._lo = _rational_to_fraction(Rational(lo))
        self._hi = _rational_to_fraction(Rational(hi))

        self.zero = self.scalar(0)
        self.one = self.scalar(1)
        logger.debug("数域上下文: M=%d, 次数=%d, 极小多项式=%s", order, self.degree, self.minimal_polynomial.as_expr())

    def __repr__(self) -> str:
        return f"FieldContext(M={self.order}, degree={self.degree})"

    def scalar(self, value: Number) -> "FieldScalar":
        """有理数嵌入"""
        return FieldScalar(self._anp(value), self)

    def _anp(self, value: Number) -> ANP:
        value = Fraction(value)
        return ANP([QQ(value.numerator, value.denominator)], self._modulus, QQ)

    def from_poly(self, poly: Poly) -> "FieldScalar":
        """把关于 c 的有理多项式约化为规范形式"""
        reduced = Poly(poly.as_expr(), _X, domain=QQ).rem(self.minimal_polynomial)
        return FieldScalar(ANP([QQ.from_sympy(coef) for coef in reduced.all_coeffs()], self._modulus, QQ), self)

    def from_coefficients(self, coefficients: Sequence[Number]) -> "FieldScalar":
        """由低次在前的系数序列构造元素"""
        coeffs = [Fraction(coef) for coef in coefficients]
        if len(coeffs) > self.degree:
            poly = Poly(sum(Rational(coef.numerator, coef.denominator) * _X ** i for i, coef in enumerate(coeffs)), _X, domain=QQ)
            return self.from_poly(poly)
        rep = [QQ(coef.numerator, coef.denominator) for coef in reversed(coeffs)]
        return FieldScalar(ANP(rep, self._modulus, QQ), self)

    @property
    def generator(self) -> "FieldScalar":
        """c = cos(π/M)"""
        return self.from_poly(Poly(_X, _X, domain=QQ))

    def cos_pi_over(self, m: int) -> "FieldScalar":
        """cos(π/m) = T_{M/m}(c), 要求 m 整除 M"""
        if self.order % m != 0:
            raise ValueError(f"{m} 不整除 M={self.order}")
        if m not in self._cos_cache:
            self._cos_cache[m] = self.from_poly(chebyshevt_poly(self.order // m, _X, polys=True))
        return self._cos_cache[m]

    def enclosure(self) -> Tuple[Fraction, Fraction]:
        with self._lock:
            return self._lo, self._hi

    def _refine(self, seen: Tuple[Fraction, Fraction]) -> None:
        with self._lock:
            if (self._lo, self._hi) != seen or self._lo == self._hi:
                return
            self._bits *= 2
            lo, hi = self.minimal_polynomial.refine_root(
                Rational(self._lo.numerator, self._lo.denominator),
                Rational(self._hi.numerator, self._hi.denominator),
                eps=Rational(1, 2 ** self._bits),
            )
            self._lo = _rational_to_fraction(Rational(lo))
            self._hi = _rational_to_fraction(Rational(hi))
            logger.debug("精化 cos(π/%d) 的包围区间到 2^-%d", self.order, self._bits)

    def sign(self, x: "FieldScalar") -> int:
        """精确符号: 先做规范形式零判定, 再精化区间直到区间求值不含 0"""
        coeffs = x.coefficients
        if not coeffs:
            return 0
        if len(coeffs) == 1:
            return 1 if coeffs[0] > 0 else -1
        while True:
            seen = self.enclosure()
            low, high = _interval_horner(coeffs, *seen)
            if low > 0:
                return 1
            if high < 0:
                return -1
            self._refine(seen)

    def approximate(self, x: "FieldScalar") -> float:
        lo, hi = self.enclosure()
        c = float((lo + hi) / 2)
        total = 0.0
        for coef in x.coefficients:
            total = total * c + float(coef)
        return total


class FieldScalar:
    """Q(cos(π/M)) 中的元素, 以 c 的多项式规范形式存储"""

    __slots__ = ("value", "context", "_key", "_coefficients")

    def __init__(self, value: ANP, context: FieldContext):
        self.value = value
        self.context = context
        self._key = tuple(value.to_list())
        self._coefficients: Optional[Tuple[Fraction, ...]] = None

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        """系数（高次在前）"""
        if self._coefficients is None:
            self._coefficients = tuple(_qq_to_fraction(coef) for coef in self._key)
        return self._coefficients

    def _coerce(self, other) -> Optional[ANP]:
        if isinstance(other, FieldScalar):
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.context._anp(other)
        return None

    def __add__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldScalar(self.value + value, self.context)

    __radd__ = __add__

    def __sub__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldScalar(self.value - value, self.context)

    def __rsub__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return FieldScalar(value - self.value, self.context)

    def __mul__(self, other):
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        if not self._key or not value.to_list():
            return self.context.zero
        return FieldScalar(self.value * value, self.context)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldScalar(-self.value, self.context)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self._key == other._key
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return self._key == tuple(value.to_list())

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __bool__(self) -> bool:
        return bool(self._key)

    def __float__(self) -> float:
        return self.context.approximate(self)

    def sign(self) -> int:
        return self.context.sign(self)

    @property
    def is_zero(self) -> bool:
        return not self._key

    def coefficient_strings(self) -> List[str]:
        """低次在前的系数, 形如 "p/q" """
        coeffs = list(reversed(self.coefficients)) or [Fraction(0)]
        return [f"{coef.numerator}/{coef.denominator}" for coef in coeffs]

    def __str__(self) -> str:
        coeffs = self.coefficients
        if not coeffs:
            return "0"
        degree = len(coeffs) - 1
        terms = []
        for i, coef in enumerate(coeffs):
            power = degree - i
            if coef == 0:
                continue
            if power == 0:
                terms.append(str(coef))
            elif power == 1:
                terms.append(f"{coef}*c")
            else:
                terms.append(f"{coef}*c^{power}")
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"FieldScalar({self})"


def make_field_context(mat: CoxeterMatrix) -> FieldContext:
    """M 取所有有限 m_st 的最小公倍数（没有时 M=1）"""
    finite = mat.finite_orders()
    order = math.lcm(*finite) if finite else 1
    context = FieldContext(order)
    logger.info("构造数域 Q(cos(π/%d)), 次数 %d", order, context.degree)
    return context


def scalar_sign(x: FieldScalar) -> int:
    """返回 -1, 0 或 1"""
    return x.sign()
