# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled digest and walk kernel.

Hot inner loops for the collision searchers: Keccak-256 (Ethereum variant)
and the iterated-walk helpers.  Interface-compatible with ``_purepy``; the
test suite asserts bit-identical behaviour between the two.  Walks release
the GIL so multi-worker searches and concurrent experiment trials scale on
real threads.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy, memset

cdef extern from *:
    """
    #include <stdint.h>
    #include <string.h>

    #if defined(__BYTE_ORDER__) && (__BYTE_ORDER__ == __ORDER_BIG_ENDIAN__)
    #error "little-endian host required by the lane load/store code"
    #endif

    #define CLAB_ROTL64(x, n) (((x) << (n)) | ((x) >> (64 - (n))))

    static const uint64_t clab_rc[24] = {
        0x0000000000000001ULL, 0x0000000000008082ULL, 0x800000000000808aULL,
        0x8000000080008000ULL, 0x000000000000808bULL, 0x0000000080000001ULL,
        0x8000000080008081ULL, 0x8000000000008009ULL, 0x000000000000008aULL,
        0x0000000000000088ULL, 0x0000000080008009ULL, 0x000000008000000aULL,
        0x000000008000808bULL, 0x800000000000008bULL, 0x8000000000008089ULL,
        0x8000000000008003ULL, 0x8000000000008002ULL, 0x8000000000000080ULL,
        0x000000000000800aULL, 0x800000008000000aULL, 0x8000000080008081ULL,
        0x8000000000008080ULL, 0x0000000080000001ULL, 0x8000000080008008ULL
    };

    /* rotation offsets and pi destinations for flat lane index i = x + 5*y */
    static const int clab_rho[25] = {
         0,  1, 62, 28, 27,
        36, 44,  6, 55, 20,
         3, 10, 43, 25, 39,
        41, 45, 15, 21,  8,
        18,  2, 61, 56, 14
    };
    static const int clab_pi_dst[25] = {
         0, 10, 20,  5, 15,
        16,  1, 11, 21,  6,
         7, 17,  2, 12, 22,
        23,  8, 18,  3, 13,
        14, 24,  9, 19,  4
    };

    static void clab_keccak_f1600(uint64_t A[25]) {
        uint64_t a00, a01, a02, a03, a04, a05, a06, a07, a08, a09, a10, a11, a12, a13, a14, a15, a16, a17, a18, a19, a20, a21, a22, a23, a24;
        uint64_t b00, b01, b02, b03, b04, b05, b06, b07, b08, b09, b10, b11, b12, b13, b14, b15, b16, b17, b18, b19, b20, b21, b22, b23, b24;
        uint64_t c0, c1, c2, c3, c4, d0, d1, d2, d3, d4;
        int r;
        a00 = A[0];
        a01 = A[1];
        a02 = A[2];
        a03 = A[3];
        a04 = A[4];
        a05 = A[5];
        a06 = A[6];
        a07 = A[7];
        a08 = A[8];
        a09 = A[9];
        a10 = A[10];
        a11 = A[11];
        a12 = A[12];
        a13 = A[13];
        a14 = A[14];
        a15 = A[15];
        a16 = A[16];
        a17 = A[17];
        a18 = A[18];
        a19 = A[19];
        a20 = A[20];
        a21 = A[21];
        a22 = A[22];
        a23 = A[23];
        a24 = A[24];
        for (r = 0; r < 24; r++) {
            c0 = a00 ^ a05 ^ a10 ^ a15 ^ a20;
            c1 = a01 ^ a06 ^ a11 ^ a16 ^ a21;
            c2 = a02 ^ a07 ^ a12 ^ a17 ^ a22;
            c3 = a03 ^ a08 ^ a13 ^ a18 ^ a23;
            c4 = a04 ^ a09 ^ a14 ^ a19 ^ a24;
            d0 = c4 ^ CLAB_ROTL64(c1, 1);
            d1 = c0 ^ CLAB_ROTL64(c2, 1);
            d2 = c1 ^ CLAB_ROTL64(c3, 1);
            d3 = c2 ^ CLAB_ROTL64(c4, 1);
            d4 = c3 ^ CLAB_ROTL64(c0, 1);
            a00 ^= d0;
            a01 ^= d1;
            a02 ^= d2;
            a03 ^= d3;
            a04 ^= d4;
            a05 ^= d0;
            a06 ^= d1;
            a07 ^= d2;
            a08 ^= d3;
            a09 ^= d4;
            a10 ^= d0;
            a11 ^= d1;
            a12 ^= d2;
            a13 ^= d3;
            a14 ^= d4;
            a15 ^= d0;
            a16 ^= d1;
            a17 ^= d2;
            a18 ^= d3;
            a19 ^= d4;
            a20 ^= d0;
            a21 ^= d1;
            a22 ^= d2;
            a23 ^= d3;
            a24 ^= d4;
            b00 = a00;
            b10 = CLAB_ROTL64(a01, 1);
            b20 = CLAB_ROTL64(a02, 62);
            b05 = CLAB_ROTL64(a03, 28);
            b15 = CLAB_ROTL64(a04, 27);
            b16 = CLAB_ROTL64(a05, 36);
            b01 = CLAB_ROTL64(a06, 44);
            b11 = CLAB_ROTL64(a07, 6);
            b21 = CLAB_ROTL64(a08, 55);
            b06 = CLAB_ROTL64(a09, 20);
            b07 = CLAB_ROTL64(a10, 3);
            b17 = CLAB_ROTL64(a11, 10);
            b02 = CLAB_ROTL64(a12, 43);
            b12 = CLAB_ROTL64(a13, 25);
            b22 = CLAB_ROTL64(a14, 39);
            b23 = CLAB_ROTL64(a15, 41);
            b08 = CLAB_ROTL64(a16, 45);
            b18 = CLAB_ROTL64(a17, 15);
            b03 = CLAB_ROTL64(a18, 21);
            b13 = CLAB_ROTL64(a19, 8);
            b14 = CLAB_ROTL64(a20, 18);
            b24 = CLAB_ROTL64(a21, 2);
            b09 = CLAB_ROTL64(a22, 61);
            b19 = CLAB_ROTL64(a23, 56);
            b04 = CLAB_ROTL64(a24, 14);
            a00 = b00 ^ ((~b01) & b02);
            a01 = b01 ^ ((~b02) & b03);
            a02 = b02 ^ ((~b03) & b04);
            a03 = b03 ^ ((~b04) & b00);
            a04 = b04 ^ ((~b00) & b01);
            a05 = b05 ^ ((~b06) & b07);
            a06 = b06 ^ ((~b07) & b08);
            a07 = b07 ^ ((~b08) & b09);
            a08 = b08 ^ ((~b09) & b05);
            a09 = b09 ^ ((~b05) & b06);
            a10 = b10 ^ ((~b11) & b12);
            a11 = b11 ^ ((~b12) & b13);
            a12 = b12 ^ ((~b13) & b14);
            a13 = b13 ^ ((~b14) & b10);
            a14 = b14 ^ ((~b10) & b11);
            a15 = b15 ^ ((~b16) & b17);
            a16 = b16 ^ ((~b17) & b18);
            a17 = b17 ^ ((~b18) & b19);
            a18 = b18 ^ ((~b19) & b15);
            a19 = b19 ^ ((~b15) & b16);
            a20 = b20 ^ ((~b21) & b22);
            a21 = b21 ^ ((~b22) & b23);
            a22 = b22 ^ ((~b23) & b24);
            a23 = b23 ^ ((~b24) & b20);
            a24 = b24 ^ ((~b20) & b21);
            a00 ^= clab_rc[r];
        }
        A[0] = a00;
        A[1] = a01;
        A[2] = a02;
        A[3] = a03;
        A[4] = a04;
        A[5] = a05;
        A[6] = a06;
        A[7] = a07;
        A[8] = a08;
        A[9] = a09;
        A[10] = a10;
        A[11] = a11;
        A[12] = a12;
        A[13] = a13;
        A[14] = a14;
        A[15] = a15;
        A[16] = a16;
        A[17] = a17;
        A[18] = a18;
        A[19] = a19;
        A[20] = a20;
        A[21] = a21;
        A[22] = a22;
        A[23] = a23;
        A[24] = a24;
    }

    /* Ethereum Keccak-256: rate 1088, multi-rate pad with domain byte 0x01. */
    static void clab_keccak256_state(const unsigned char *msg, size_t len, uint64_t A[25]) {
        uint64_t lane;
        unsigned char block[136];
        int i;
        memset(A, 0, 25 * sizeof(uint64_t));
        while (len >= 136) {
            for (i = 0; i < 17; i++) {
                memcpy(&lane, msg + 8 * i, 8);
                A[i] ^= lane;
            }
            clab_keccak_f1600(A);
            msg += 136;
            len -= 136;
        }
        memset(block, 0, 136);
        if (len) memcpy(block, msg, len);
        block[len] ^= 0x01;
        block[135] ^= 0x80;
        for (i = 0; i < 17; i++) {
            memcpy(&lane, block + 8 * i, 8);
            A[i] ^= lane;
        }
        clab_keccak_f1600(A);
    }

    static void clab_keccak256(const unsigned char *msg, size_t len, unsigned char out[32]) {
        uint64_t A[25];
        clab_keccak256_state(msg, len, A);
        memcpy(out, A, 32);
    }

    /* Low 64 bits of the digest under big-endian interpretation: byte-swap
       of the fourth lane (digest bytes 24..31). */
    static uint64_t clab_keccak_trunc64(const unsigned char *msg, size_t len) {
        uint64_t A[25];
        clab_keccak256_state(msg, len, A);
        return __builtin_bswap64(A[3]);
    }
    """
    void clab_keccak256(const unsigned char *msg, size_t n, unsigned char *out) nogil
    uint64_t clab_keccak_trunc64(const unsigned char *msg, size_t n) nogil

COMPILED = True

cdef size_t MAX_MESSAGE = 8192
cdef uint64_t ALL64 = 0xFFFFFFFFFFFFFFFFULL


def keccak256(bytes message) -> bytes:
    cdef unsigned char out[32]
    cdef const unsigned char *data = message
    cdef size_t n = len(message)
    if n > 4096:
        with nogil:
            clab_keccak256(data, n, out)
    else:
        clab_keccak256(data, n, out)
    return out[:32]


def digest_many(messages) -> list:
    cdef unsigned char out[32]
    cdef const unsigned char *data
    cdef bytes m
    result = []
    for message in messages:
        m = message
        data = m
        clab_keccak256(data, len(m), out)
        result.append(<bytes>out[:32])
    return result


cdef class KernelStepper:
    """Compiled step function over one or two counter-template messages.

    A template is prefix || counter || suffix with a big-endian counter field
    of fixed width; with two templates, bit 0 of the walk value selects the
    family and the remaining bits are the family counter.  Matches PyStepper
    bit for bit.
    """

    cdef unsigned char *_buf0
    cdef unsigned char *_buf1
    cdef size_t _len0, _len1, _off0, _off1
    cdef int _two, _width
    cdef public int t
    cdef uint64_t _tmask, _cmask

    def __cinit__(self, templates, int counter_width, int t):
        # templates: one or two (prefix, suffix) byte pairs
        self._buf0 = NULL
        self._buf1 = NULL
        if not 1 <= counter_width <= 8:
            raise ValueError("counter width must be 1..8 bytes")
        if not 1 <= t <= 64:
            raise ValueError("compiled stepper supports 1..64 truncation bits")
        if len(templates) not in (1, 2):
            raise ValueError("expected one or two templates")
        self._two = 1 if len(templates) == 2 else 0
        self._width = counter_width
        self.t = t
        self._tmask = ALL64 if t == 64 else ((<uint64_t>1 << t) - 1)
        self._cmask = ALL64 if counter_width == 8 else ((<uint64_t>1 << (8 * counter_width)) - 1)
        prefix0, suffix0 = templates[0]
        self._buf0 = self._build(prefix0, suffix0, &self._len0, &self._off0)
        if self._two:
            prefix1, suffix1 = templates[1]
            self._buf1 = self._build(prefix1, suffix1, &self._len1, &self._off1)

    cdef unsigned char *_build(self, bytes prefix, bytes suffix, size_t *total, size_t *offset) except NULL:
        cdef size_t np = len(prefix)
        cdef size_t ns = len(suffix)
        cdef size_t n = np + self._width + ns
        cdef const char *p
        cdef unsigned char *buf
        if n > MAX_MESSAGE:
            raise ValueError("message template too long")
        buf = <unsigned char *>malloc(n)
        if buf == NULL:
            raise MemoryError()
        memset(buf, 0, n)
        if np:
            p = prefix
            memcpy(buf, p, np)
        if ns:
            p = suffix
            memcpy(buf + np + self._width, p, ns)
        total[0] = n
        offset[0] = np
        return buf

    def __dealloc__(self):
        if self._buf0 != NULL:
            free(self._buf0)
        if self._buf1 != NULL:
            free(self._buf1)

    cdef inline uint64_t _step(self, uint64_t x) noexcept nogil:
        cdef uint64_t c
        cdef unsigned char *buf
        cdef size_t mlen, off
        cdef int i
        if self._two:
            c = (x >> 1) & self._cmask
            if x & 1:
                buf = self._buf1
                mlen = self._len1
                off = self._off1
            else:
                buf = self._buf0
                mlen = self._len0
                off = self._off0
        else:
            c = x & self._cmask
            buf = self._buf0
            mlen = self._len0
            off = self._off0
        for i in range(self._width - 1, -1, -1):
            buf[off + i] = <unsigned char>(c & 0xFF)
            c >>= 8
        return clab_keccak_trunc64(buf, mlen) & self._tmask

    def step(self, x):
        return self._step(<uint64_t>x)

    def walk_trail(self, start, int dp_bits, max_steps):
        """Walk until a distinguished successor (low dp_bits zero) or cutoff.

        Returns (endpoint, length, hit_dp).
        """
        cdef uint64_t x = <uint64_t>start
        cdef uint64_t cap = <uint64_t>max_steps
        cdef uint64_t dp_mask = ((<uint64_t>1) << dp_bits) - 1
        cdef uint64_t n = 0
        cdef int hit = 0
        with nogil:
            while n < cap:
                x = self._step(x)
                n += 1
                if (x & dp_mask) == 0:
                    hit = 1
                    break
        return x, n, bool(hit)

    def walk_meet(self, start_a, len_a, start_b, len_b):
        """Find the colliding step of two same-endpoint trails.

        Returns (x, y, common, evals) with step(x) == step(y) == common, or
        (None, None, None, evals) when one trail is a sub-walk of the other.
        """
        cdef uint64_t xa, xb, la, lb
        cdef uint64_t na = 0
        cdef uint64_t nb = 0
        cdef uint64_t evals = 0
        cdef uint64_t i
        cdef int degenerate = 0
        if len_a >= len_b:
            xa = <uint64_t>start_a
            la = <uint64_t>len_a
            xb = <uint64_t>start_b
            lb = <uint64_t>len_b
        else:
            xa = <uint64_t>start_b
            la = <uint64_t>len_b
            xb = <uint64_t>start_a
            lb = <uint64_t>len_a
        with nogil:
            for i in range(la - lb):
                xa = self._step(xa)
                evals += 1
            if xa == xb:
                degenerate = 1
            else:
                while True:
                    na = self._step(xa)
                    nb = self._step(xb)
                    evals += 2
                    if na == nb:
                        break
                    xa = na
                    xb = nb
        if degenerate:
            return None, None, None, evals
        return xa, xb, na, evals
