"""Published reference data for the worked examples, stored as bit strings.

Binary matrices are over GF(2) with the field GF(8) = GF(2)[x]/(x^3 + x + 1)
and basis (1, a, a^2).
"""

import numpy as np


def _bits(rows: str) -> np.ndarray:
    return np.array([[int(c) for c in r] for r in rows.split()], dtype=np.int64)


# RS[7,6] over GF(8), support (1, a, ..., a^6): last column of the systematic
# generator, as powers of a.
RS7_6_SYSTEMATIC_LAST_COLUMN_LOGS = (1, 2, 3, 4, 5, 6)

RS7_6_SYSTEMATIC_IMAGE = _bits("""
100000000000000000010 010000000000000000001 001000000000000000110
000100000000000000001 000010000000000000110 000001000000000000011
000000100000000000110 000000010000000000011 000000001000000000111
000000000100000000011 000000000010000000111 000000000001000000101
000000000000100000111 000000000000010000101 000000000000001000100
000000000000000100101 000000000000000010100 000000000000000001010
""")

RS7_6_IMAGE_DUAL = _bits("""
001010101011111110100 101011111110100001010 010101011111110100001
""")

SHORTENED_U1 = (2, 3, 3, 2, 2, 3, 3)
SHORTENED_U1_PARITY = _bits("0011100 0111010 1111101")
SHORTENED_U1_GENERATOR = _bits("1000001 0100011 0010110 0001110")

SHORTENED_U2 = (1, 3, 1, 2, 3, 1, 3)
SHORTENED_U2_GENERATOR = _bits("1001010 0101011 0011001 0000111")

# RS[7,5] over GF(8): dual of the binary image, and the generator printed for
# the subspace family <1,a> <1,a^2> <1,a> <a,a^2> <1,a> <1,a^2> <1,a>.
RS7_5_IMAGE_DUAL = _bits("""
100000101100101001001 010000111010111101101 001000011001011010010
000100011100111111011 000010110010100100110 000001111001110110111
""")
SUBSPACE_EXAMPLE_FAMILY_LOGS = ((0, 1), (0, 2), (0, 1), (1, 2), (0, 1), (0, 2), (0, 1))
SUBSPACE_EXAMPLE_DELETED_COLUMNS = (3, 5, 9, 10, 15, 17, 21)  # 1-based
SUBSPACE_EXAMPLE_GENERATOR = _bits("""
10000000101000 01000000010100 00100000001010 00010000000101
00001000101010 00000100010101 00000010100010 00000001010001
""")
