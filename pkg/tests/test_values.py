import itertools

import pytest

from vhdlkern.errors import EvalError
from vhdlkern.values import (
    INT_MAX,
    INT_MIN,
    LOGIC9,
    OpKind,
    bit_val,
    bits_from_str,
    bool_val,
    char_val,
    eval_binop,
    eval_unop,
    int_val,
    logic_s,
    logic_val,
    real_val,
    resolve_logic9,
    to_vector,
    uint_to_vec,
    vec,
    vec_nth,
    vec_slice,
    vec_to_sint,
    vec_to_uint,
)

from oracle_logic import (
    gate_and,
    gate_nand,
    gate_nor,
    gate_not,
    gate_or,
    gate_xnor,
    gate_xor,
    resolve_list,
)


def b(text, down=False):
    return bits_from_str(text, down, "bit")


def l9(text, down=False):
    return bits_from_str(text, down, "logic")


UOP = lambda s: OpKind("uop", s)
LOP = lambda s: OpKind("lop", s)
ROP = lambda s: OpKind("rop", s)
SOP = lambda s: OpKind("sop", s)
AOP = lambda s: OpKind("aop", s)


class TestUnops:
    def test_not_bit(self):
        assert eval_unop(UOP("not"), bit_val(1)) == bit_val(0)
        assert eval_unop(UOP("not"), bit_val(0)) == bit_val(1)

    def test_not_vector_elementwise(self):
        assert eval_unop(UOP("not"), b("1010")) == b("0101")

    def test_abs_integer(self):
        assert eval_unop(UOP("abs"), int_val(-5)) == int_val(5)
        assert eval_unop(UOP("abs"), int_val(7)) == int_val(7)

    def test_minus_integer_overflow_checked(self):
        with pytest.raises(EvalError):
            eval_unop(UOP("-"), int_val(INT_MIN))

    def test_not_on_integer_is_error(self):
        with pytest.raises(EvalError):
            eval_unop(UOP("not"), int_val(3))

    def test_double_not_identity(self):
        for text in ("", "0", "1", "0110", "111000"):
            v = b(text)
            assert eval_unop(UOP("not"), eval_unop(UOP("not"), v)) == v
        # logic9 double-not is not the identity: weak/unknown values collapse
        v = l9("UX01ZWLH-")
        assert eval_unop(UOP("not"), eval_unop(UOP("not"), v)) == l9("UX01XX01X")

    def test_signed_vector_negate(self):
        op = OpKind("uop", "-", numeric="signed")
        assert vec_to_sint(eval_unop(op, b("0011"))) == -3
        assert vec_to_sint(eval_unop(op, b("1000"))) == -8  # wraps at the edge


class TestLogic9Tables:
    def test_binary_gates_match_strength_oracle(self):
        oracle = {
            "and": gate_and, "or": gate_or, "xor": gate_xor,
            "nand": gate_nand, "nor": gate_nor, "xnor": gate_xnor,
        }
        for sym, fn in oracle.items():
            for a in LOGIC9:
                for bch in LOGIC9:
                    got = eval_binop(LOP(sym), logic_val(a), logic_val(bch))
                    assert got == logic_val(fn(a, bch)), (sym, a, bch)

    def test_not_matches_strength_oracle(self):
        for a in LOGIC9:
            assert eval_unop(UOP("not"), logic_val(a)) == logic_val(gate_not(a))

    def test_spec_examples(self):
        assert eval_binop(LOP("and"), logic_val("0"), logic_val("Z")) == logic_val("0")
        assert eval_binop(LOP("and"), logic_val("X"), logic_val("1")) == logic_val("X")

    def test_bit_and_boolean_gates(self):
        assert eval_binop(LOP("and"), bit_val(1), bit_val(1)) == bit_val(1)
        assert eval_binop(LOP("nand"), bit_val(1), bit_val(1)) == bit_val(0)
        assert eval_binop(LOP("xor"), bool_val(True), bool_val(False)) == bool_val(True)
        assert eval_binop(LOP("xnor"), bool_val(True), bool_val(True)) == bool_val(True)

    def test_vector_lop_length_mismatch(self):
        with pytest.raises(EvalError):
            eval_binop(LOP("and"), b("10"), b("101"))


class TestResolution:
    def test_matches_strength_oracle_all_pairs(self):
        for a in LOGIC9:
            for bch in LOGIC9:
                got = resolve_logic9([logic_s(a), logic_s(bch)])
                assert got == logic_s(resolve_list([a, bch])), (a, bch)

    def test_spec_examples(self):
        assert resolve_logic9([logic_s("0"), logic_s("Z")]) == logic_s("0")
        assert resolve_logic9([logic_s("0"), logic_s("1")]) == logic_s("X")

    def test_singleton(self):
        for a in LOGIC9:
            assert resolve_logic9([logic_s(a)]) == logic_s(a)

    def test_all_three_element_permutations(self):
        for trio in itertools.product(LOGIC9, repeat=3):
            expect = resolve_list(list(trio))
            for perm in itertools.permutations(trio):
                got = resolve_logic9([logic_s(c) for c in perm])
                assert got.value == expect, (trio, perm)

    def test_u_dominates_and_z_is_identity(self):
        for a in LOGIC9:
            assert resolve_logic9([logic_s("U"), logic_s(a)]).value == "U"
            # Z is the identity except against the don't-care, which degrades to X
            expect = "X" if a == "-" else a
            assert resolve_logic9([logic_s(a), logic_s("Z")]).value == expect


class TestRelational:
    def test_equality_reflexive(self):
        samples = [
            int_val(0), int_val(-3), real_val(2.5), bit_val(1), bool_val(False),
            char_val("k"), logic_val("W"), b("1010"), l9("Z0", down=True),
            vec([int_val(1), int_val(2)]),
        ]
        for v in samples:
            assert eval_binop(ROP("="), v, v) == bool_val(True)
            assert eval_binop(ROP("/="), v, v) == bool_val(False)

    def test_vector_equality_length_mismatch_is_false(self):
        assert eval_binop(ROP("="), b("10"), b("100")) == bool_val(False)

    def test_integer_ordering(self):
        assert eval_binop(ROP("<"), int_val(-7), int_val(2)) == bool_val(True)
        assert eval_binop(ROP(">="), int_val(2), int_val(2)) == bool_val(True)

    def test_vector_dictionary_order(self):
        assert eval_binop(ROP("<"), b("011"), b("100")) == bool_val(True)
        assert eval_binop(ROP("<"), b("10"), b("100")) == bool_val(True)  # prefix

    def test_signed_vector_ordering(self):
        lt = OpKind("rop", "<", numeric="signed")
        assert eval_binop(lt, b("111"), b("001")) == bool_val(True)  # -1 < 1

    def test_kind_mismatch(self):
        with pytest.raises(EvalError):
            eval_binop(ROP("="), int_val(1), real_val(1.0))


def shift_oracle(bits: str, sym: str, count: int) -> str:
    """List-based shift with zero fill / end replication, on the written form."""
    n = len(bits)
    if count < 0:
        sym = {"sll": "srl", "srl": "sll", "sla": "sra", "sra": "sla",
               "rol": "ror", "ror": "rol"}[sym]
        count = -count
    if n == 0:
        return bits
    if sym in ("rol", "ror"):
        k = count % n
        return bits[k:] + bits[:k] if sym == "rol" else bits[-k:] + bits[:-k] if k else bits
    k = min(count, n)
    if sym == "sll":
        return bits[k:] + "0" * k
    if sym == "srl":
        return "0" * k + bits[:-k] if k else bits
    if sym == "sla":
        return bits[k:] + bits[-1] * k
    return bits[0] * k + bits[:-k] if k else bits  # sra


class TestShifts:
    def test_spec_example(self):
        assert eval_binop(SOP("sll"), b("1100"), int_val(1)) == b("1000")

    def test_all_4bit_inputs_against_oracle(self):
        for n in range(16):
            bits = format(n, "04b")
            for sym in ("sll", "srl", "sla", "sra", "rol", "ror"):
                for count in range(-5, 6):
                    got = eval_binop(SOP(sym), b(bits), int_val(count))
                    assert got == b(shift_oracle(bits, sym, count)), (bits, sym, count)

    def test_downto_shift_uses_written_order(self):
        got = eval_binop(SOP("sll"), b("1100", down=True), int_val(1))
        assert got == b("1000", down=True)

    def test_shift_requires_vector(self):
        with pytest.raises(EvalError):
            eval_binop(SOP("sll"), int_val(3), int_val(1))


class TestArithmetic:
    def test_truncating_division(self):
        assert eval_binop(AOP("/"), int_val(7), int_val(2)) == int_val(3)
        assert eval_binop(AOP("/"), int_val(-7), int_val(2)) == int_val(-3)

    def test_mod_rem_signs(self):
        # mod follows the divisor, rem follows the dividend
        assert eval_binop(AOP("mod"), int_val(-7), int_val(3)) == int_val(2)
        assert eval_binop(AOP("rem"), int_val(-7), int_val(3)) == int_val(-1)
        assert eval_binop(AOP("mod"), int_val(7), int_val(-3)) == int_val(-2)
        assert eval_binop(AOP("rem"), int_val(7), int_val(-3)) == int_val(1)

    def test_division_by_zero(self):
        with pytest.raises(EvalError):
            eval_binop(AOP("/"), int_val(1), int_val(0))

    def test_overflow_checked(self):
        with pytest.raises(EvalError):
            eval_binop(AOP("+"), int_val(INT_MAX), int_val(1))
        with pytest.raises(EvalError):
            eval_binop(AOP("*"), int_val(INT_MAX), int_val(2))

    def test_pow(self):
        assert eval_binop(AOP("**"), int_val(2), int_val(10)) == int_val(1024)
        assert eval_binop(AOP("**"), int_val(5), int_val(0)) == int_val(1)
        with pytest.raises(EvalError):
            eval_binop(AOP("**"), int_val(2), int_val(-1))
        with pytest.raises(EvalError):
            eval_binop(AOP("**"), real_val(2.0), real_val(2.0))

    def test_concat(self):
        assert eval_binop(AOP("&"), b("10"), b("01")) == b("1001")
        with pytest.raises(EvalError):
            eval_binop(AOP("&"), b("10"), b("01", down=True))

    def test_concat_requires_vectors(self):
        with pytest.raises(EvalError):
            eval_binop(AOP("&"), bit_val(1), b("01"))

    def test_real_arith(self):
        assert eval_binop(AOP("*"), real_val(1.5), real_val(2.0)) == real_val(3.0)

    def test_unsigned_vector_add_wraps_at_width(self):
        op = OpKind("aop", "+", numeric="unsigned")
        got = eval_binop(op, b("1111"), int_val(1))
        assert got == b("0000")

    def test_signed_vector_sub(self):
        op = OpKind("aop", "-", numeric="signed")
        got = eval_binop(op, b("0010"), b("0101"))  # 2 - 5
        assert vec_to_sint(got) == -3

    def test_mixed_width_uses_max(self):
        op = OpKind("aop", "+", numeric="unsigned")
        got = eval_binop(op, b("000011"), b("0001"))
        assert len(got.elems) == 6 and vec_to_uint(got) == 4


class TestVectorAccess:
    def test_nth_to(self):
        v = bits_from_str("abc", kind="char")
        assert vec_nth(v, 1) == char_val("b")

    def test_nth_downto_reversed_positions(self):
        # oracle: naive index->position map over all indices of small vectors
        for n in range(1, 6):
            text = "abcdefgh"[:n]
            v = bits_from_str(text, down=True, kind="char")
            for i in range(n):
                assert vec_nth(v, i) == char_val(text[(n - 1) - i]), (n, i)

    def test_nth_out_of_range(self):
        v = b("101")
        with pytest.raises(EvalError):
            vec_nth(v, 3)
        with pytest.raises(EvalError):
            vec_nth(v, -1)

    def test_slice_to(self):
        assert vec_slice(b("10110"), 1, 3) == b("011")

    def test_identity_slice(self):
        v = b("10110")
        assert vec_slice(v, 0, len(v.elems)) == v
        vd = b("10110", down=True)
        assert vec_slice(vd, len(vd.elems) - 1, len(vd.elems)) == vd

    def test_slice_downto_consistent_with_nth(self):
        v = bits_from_str("abcde", down=True, kind="char")
        for start in range(5):
            for length in range(1, start + 2):
                got = vec_slice(v, start, length)
                assert len(got.elems) == length
                for k in range(length):
                    # result's highest logical index corresponds to `start`
                    assert vec_nth(got, (length - 1) - k) == vec_nth(v, start - k)

    def test_slice_out_of_bounds(self):
        with pytest.raises(EvalError):
            vec_slice(b("101"), 1, 3)
        with pytest.raises(EvalError):
            vec_slice(b("101", down=True), 1, 3)

    def test_to_vector(self):
        assert to_vector(bit_val(1), False) == b("1")
        assert to_vector(bit_val(1), True) == b("1", down=True)
        v = b("10")
        assert to_vector(v, False) == v

    def test_to_vector_concat_reproduces_prepend(self):
        # '1' & x for a downto x: the new element becomes the new MSB
        x = b("0110", down=True)
        got = eval_binop(AOP("&"), to_vector(bit_val(1), True), x)
        assert got == b("10110", down=True)
        assert vec_nth(got, 4) == bit_val(1)
        # and for a `to` vector the element lands at the lowest index
        y = b("0110")
        got2 = eval_binop(AOP("&"), to_vector(bit_val(1), False), y)
        assert got2 == b("10110")
        assert vec_nth(got2, 0) == bit_val(1)


class TestNumericConversions:
    def test_roundtrip_unsigned(self):
        like = b("0000")
        for n in range(16):
            assert vec_to_uint(uint_to_vec(n, 4, like)) == n

    def test_signed_interpretation(self):
        assert vec_to_sint(b("1111")) == -1
        assert vec_to_sint(b("0111")) == 7
        assert vec_to_sint(b("1000")) == -8

    def test_logic_vector_with_weak_values(self):
        assert vec_to_uint(l9("HL1")) == 0b101
        with pytest.raises(EvalError):
            vec_to_uint(l9("X0"))


class TestOpKindValidation:
    def test_symbol_class_membership(self):
        with pytest.raises(EvalError):
            OpKind("lop", "<")
        with pytest.raises(EvalError):
            OpKind("uop", "and")
        with pytest.raises(EvalError):
            OpKind("bogus", "+")
