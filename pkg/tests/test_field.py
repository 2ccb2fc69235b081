import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from models.group_models import CoxeterMatrix
from utils.field import FieldContext, make_field_context, scalar_sign


@pytest.fixture(scope="module")
def q5():
    """Q(cos(π/5)) = Q(√5)"""
    return FieldContext(5)


@pytest.fixture(scope="module")
def q12():
    return FieldContext(12)


class TestFieldContext:
    """数域上下文测试"""

    def test_rational_field_for_m1(self):
        """测试 M=1 时数域为 Q"""
        ctx = FieldContext(1)
        assert ctx.degree == 1
        assert ctx.generator == ctx.scalar(-1)

    def test_cos_pi_over_3_is_half(self):
        """测试 cos(π/3) = 1/2"""
        ctx = FieldContext(3)
        assert ctx.degree == 1
        assert ctx.cos_pi_over(3) == ctx.scalar(Fraction(1, 2))

    def test_degree_of_cos_pi_over_5(self, q5):
        """测试 cos(π/5) 的极小多项式次数为 2"""
        assert q5.degree == 2
        c = q5.generator
        assert 4 * c * c - 2 * c - 1 == 0

    def test_golden_ratio_identity(self, q5):
        """测试 2cos(π/5) 是黄金分割数"""
        phi = 2 * q5.generator
        assert phi * phi == phi + 1

    def test_cos_pi_over_divisor(self, q12):
        """测试 cos(π/m) 由切比雪夫多项式得到"""
        half = q12.cos_pi_over(3)
        assert half == q12.scalar(Fraction(1, 2))
        root_half = q12.cos_pi_over(4)
        assert root_half * root_half == q12.scalar(Fraction(1, 2))
        assert root_half.sign() == 1
        assert q12.cos_pi_over(6) * q12.cos_pi_over(6) == q12.scalar(Fraction(3, 4))

    def test_cos_pi_over_non_divisor(self, q12):
        """测试 m 不整除 M 时报错"""
        with pytest.raises(ValueError):
            q12.cos_pi_over(5)

    def test_sign_of_close_values(self, q5):
        """测试非常接近的两个数的精确比较"""
        c = q5.generator
        approx = q5.scalar(Fraction(809016, 1000000))
        assert c > approx
        assert (c - approx).sign() == 1
        assert scalar_sign(approx - c) == -1

    def test_sign_needs_refinement(self, q5):
        """测试差值小于初始区间宽度时需要精化"""
        c = q5.generator
        lo, hi = q5.enclosure()
        tiny = Fraction(1, 2 ** 40)
        assert (c - q5.scalar(lo) + q5.scalar(tiny)).sign() == 1
        assert q5.enclosure()[1] - q5.enclosure()[0] <= hi - lo

    def test_zero_is_exact(self, q5):
        """测试零判定不依赖区间"""
        c = q5.generator
        assert (c * c - c * c).is_zero
        assert (c - c).sign() == 0
        assert not (c - c)

    def test_coefficient_strings(self, q5):
        """测试系数序列（低次在前）"""
        c = q5.generator
        value = 2 * c - Fraction(1, 3)
        assert value.coefficient_strings() == ["-1/3", "2/1"]
        assert q5.from_coefficients([Fraction(-1, 3), 2]) == value
        assert q5.zero.coefficient_strings() == ["0/1"]

    def test_from_coefficients_reduces(self, q5):
        """测试超出次数的系数会被约化"""
        c = q5.generator
        assert q5.from_coefficients([0, 0, 1]) == c * c

    def test_float_approximation(self, q5):
        """测试浮点近似"""
        assert abs(float(q5.generator) - 0.8090169943749475) < 1e-9

    def test_make_field_context(self):
        """测试 M 取有限阶的最小公倍数"""
        mat = CoxeterMatrix(generators=["s", "t", "u"], m=[[1, 3, 4], [3, 1, 3], [4, 3, 1]])
        ctx = make_field_context(mat)
        assert ctx.order == 12
        assert ctx.degree == 4
        infinite = CoxeterMatrix(generators=["s", "t"], m=[[1, 0], [0, 1]])
        assert make_field_context(infinite).order == 1


class TestFieldProperties:
    """数域运算的性质测试"""

    @given(
        st.lists(st.fractions(max_denominator=50), min_size=2, max_size=2),
        st.lists(st.fractions(max_denominator=50), min_size=2, max_size=2),
    )
    @settings(max_examples=50, deadline=None)
    def test_ring_axioms(self, q5, first, second):
        """测试交换律与分配律"""
        x = q5.from_coefficients(first)
        y = q5.from_coefficients(second)
        assert x * y == y * x
        assert x * (y + 1) == x * y + x
        assert (x - y) + y == x

    @given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=30), min_size=2, max_size=2))
    @settings(max_examples=50, deadline=None)
    def test_sign_matches_float(self, q5, coefficients):
        """测试精确符号与浮点近似一致（远离零时）"""
        x = q5.from_coefficients(coefficients)
        approx = float(x)
        if abs(approx) > 1e-6:
            assert x.sign() == (1 if approx > 0 else -1)
        assert (x * x).sign() >= 0
