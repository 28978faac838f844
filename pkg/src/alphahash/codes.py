"""Prefix-free binary codes for positive integers plus bit-level containers.

Wire format for an encoded description: 1 header byte (code kind), 4-byte
big-endian bit length, then the payload packed MSB-first with the final
partial byte zero-padded.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence


class DecodeError(ValueError):
    """Input does not begin with a valid codeword."""


class BitString:
    """Immutable finite bit sequence, MSB-first."""

    __slots__ = ("_bits",)

    def __init__(self, bits: str = ""):
        if bits.strip("01"):
            raise ValueError("bit strings may contain only '0' and '1'")
        object.__setattr__(self, "_bits", bits)

    @classmethod
    def from_uint(cls, value: int, width: int) -> "BitString":
        if value < 0 or (width and value >> width):
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls(format(value, f"0{width}b") if width else "")

    @property
    def bits(self) -> str:
        return self._bits

    def __len__(self) -> int:
        return len(self._bits)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitString) and self._bits == other._bits

    def __hash__(self) -> int:
        return hash(("BitString", self._bits))

    def __add__(self, other: "BitString") -> "BitString":
        return BitString(self._bits + other._bits)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return BitString(self._bits[item])
        return int(self._bits[item])

    def __iter__(self):
        return (int(b) for b in self._bits)

    def __repr__(self) -> str:
        return f"BitString({self._bits!r})"

    def startswith(self, prefix: "BitString") -> bool:
        return self._bits.startswith(prefix._bits)

    def next_one(self, start: int = 0) -> int:
        """Index of the first set bit at or after `start`, or -1."""
        return self._bits.find("1", start)

    def uint(self, start: int = 0, stop: int | None = None) -> int:
        chunk = self._bits[start:stop]
        return int(chunk, 2) if chunk else 0


class IntegerCode:
    """Prefix-free code over (a subset of) the positive integers."""

    kind: str = ""

    def encode(self, t: int) -> BitString:
        raise NotImplementedError

    def decode(self, bits: BitString, start: int = 0) -> tuple[int, int]:
        """Decode one codeword beginning at `start`; returns (value, end)."""
        raise NotImplementedError


def _check_positive(t: int) -> None:
    if t < 1:
        raise ValueError(f"only positive integers are encodable, got {t}")


class EliasGamma(IntegerCode):
    kind = "gamma"

    def encode(self, t: int) -> BitString:
        _check_positive(t)
        body = bin(t)[2:]
        return BitString("0" * (len(body) - 1) + body)

    def decode(self, bits: BitString, start: int = 0) -> tuple[int, int]:
        pos = bits.next_one(start)
        if pos < 0:
            raise DecodeError("truncated gamma codeword")
        zeros = pos - start
        end = pos + zeros + 1
        if end > len(bits):
            raise DecodeError("truncated gamma codeword")
        return bits.uint(pos, end), end


class EliasDelta(IntegerCode):
    kind = "delta"

    def __init__(self) -> None:
        self._gamma = EliasGamma()

    def encode(self, t: int) -> BitString:
        _check_positive(t)
        body = bin(t)[2:]
        return self._gamma.encode(len(body)) + BitString(body[1:])

    def decode(self, bits: BitString, start: int = 0) -> tuple[int, int]:
        width, pos = self._gamma.decode(bits, start)
        end = pos + width - 1
        if end > len(bits):
            raise DecodeError("truncated delta codeword")
        return (1 << (width - 1)) | bits.uint(pos, end), end


class Golomb(IntegerCode):
    """Golomb code with run length m, applied to t-1 (so t=1 is cheapest)."""

    kind = "golomb"

    def __init__(self, m: int):
        if m < 1:
            raise ValueError(f"Golomb parameter must be >= 1, got {m}")
        self.m = m
        self._c = (m - 1).bit_length()  # ceil(log2 m)
        self._cut = (1 << self._c) - m  # remainders coded with c-1 bits

    def encode(self, t: int) -> BitString:
        _check_positive(t)
        q, r = divmod(t - 1, self.m)
        prefix = "0" * q + "1"
        if self.m == 1:
            return BitString(prefix)
        if r < self._cut:
            return BitString(prefix) + BitString.from_uint(r, self._c - 1)
        return BitString(prefix) + BitString.from_uint(r + self._cut, self._c)

    def decode(self, bits: BitString, start: int = 0) -> tuple[int, int]:
        pos = bits.next_one(start)
        if pos < 0:
            raise DecodeError("truncated Golomb codeword")
        q = pos - start
        pos += 1
        if self.m == 1:
            return q + 1, pos
        if pos + self._c - 1 > len(bits):
            raise DecodeError("truncated Golomb remainder")
        r = bits.uint(pos, pos + self._c - 1)
        pos += self._c - 1
        if r >= self._cut:
            if pos + 1 > len(bits):
                raise DecodeError("truncated Golomb remainder")
            r = ((r << 1) | bits[pos]) - self._cut
            pos += 1
        return q * self.m + r + 1, pos


class EmpiricalShannon(IntegerCode):
    """Canonical Shannon code over observed values with a delta-coded escape.

    Codeword lengths are ceil(log2((N+1)/count)) with one unit of mass
    reserved for the escape symbol, so the code stays total over all
    positive integers while meeting expected length <= entropy + 2 on the
    empirical distribution.
    """

    kind = "empirical"
    _ESCAPE = 0  # sentinel; real values are positive

    def __init__(self, lengths: dict[int, int]):
        if self._ESCAPE not in lengths:
            raise ValueError("length table must include the escape symbol 0")
        if any(length < 1 for length in lengths.values()):
            raise ValueError("codeword lengths must be >= 1")
        self._fallback = EliasDelta()
        self._codewords: dict[int, str] = {}
        self._by_codeword: dict[str, int] = {}
        code = 0
        prev_len = None
        for length, symbol in sorted(
            (l, s) for s, l in lengths.items()
        ):
            if prev_len is not None:
                code <<= length - prev_len
            word = format(code, f"0{length}b")
            if len(word) != length:
                raise ValueError("length table violates the Kraft inequality")
            self._codewords[symbol] = word
            self._by_codeword[word] = symbol
            code += 1
            prev_len = length
        self._max_len = max(lengths.values())

    @property
    def codeword_lengths(self) -> dict[int, int]:
        return {s: len(w) for s, w in self._codewords.items()}

    def encode(self, t: int) -> BitString:
        _check_positive(t)
        word = self._codewords.get(t)
        if word is not None:
            return BitString(word)
        return BitString(self._codewords[self._ESCAPE]) + self._fallback.encode(t)

    def decode(self, bits: BitString, start: int = 0) -> tuple[int, int]:
        for end in range(start + 1, min(start + self._max_len, len(bits)) + 1):
            symbol = self._by_codeword.get(bits.bits[start:end])
            if symbol is None:
                continue
            if symbol == self._ESCAPE:
                return self._fallback.decode(bits, end)
            return symbol, end
        raise DecodeError("no codeword matches the input")


def encode_int(code: IntegerCode, t: int) -> BitString:
    return code.encode(t)


def decode_int(code: IntegerCode, bits: BitString, start: int = 0) -> tuple[int, int]:
    return code.decode(bits, start)


def golomb_parameter_for_geometric(success_prob: float) -> int:
    """Near-optimal Golomb run length for Geometric(success_prob) indices."""
    if not 0.0 < success_prob < 1.0:
        raise ValueError(f"success probability must be in (0, 1), got {success_prob}")
    # log2(1 - p) via log1p for p close to 0 or 1
    denom = -math.log1p(-success_prob) / math.log(2.0)
    return max(1, math.ceil(1.0 / denom))


def build_empirical_code(samples: Sequence[int] | Iterable[int]) -> EmpiricalShannon:
    """Shannon-style code from observed frequencies, escape mass 1/(N+1)."""
    counts = Counter(samples)
    if not counts:
        raise ValueError("at least one sample is required")
    if min(counts) < 1:
        raise ValueError("samples must be positive integers")
    total = sum(counts.values())
    lengths: dict[int, int] = {}
    for value, count in counts.items():
        length = 0
        while (count << length) < total + 1:
            length += 1
        lengths[value] = max(1, length)
    length = 0
    while (1 << length) < total + 1:
        length += 1
    lengths[EmpiricalShannon._ESCAPE] = max(1, length)
    return EmpiricalShannon(lengths)


CODE_KIND_IDS = {"gamma": 1, "delta": 2, "golomb": 3, "empirical": 4}
_KIND_BY_ID = {v: k for k, v in CODE_KIND_IDS.items()}


def pack_description(kind: str, bits: BitString) -> bytes:
    """Serialize a description: kind byte, 4-byte BE bit length, payload."""
    if kind not in CODE_KIND_IDS:
        raise ValueError(f"unknown code kind {kind!r}")
    nbytes = (len(bits) + 7) // 8
    padded = bits.bits + "0" * (nbytes * 8 - len(bits))
    payload = int(padded, 2).to_bytes(nbytes, "big") if nbytes else b""
    return bytes([CODE_KIND_IDS[kind]]) + len(bits).to_bytes(4, "big") + payload


def unpack_description(data: bytes) -> tuple[str, BitString]:
    if len(data) < 5:
        raise ValueError("description container is shorter than its header")
    kind = _KIND_BY_ID.get(data[0])
    if kind is None:
        raise ValueError(f"unknown code kind byte {data[0]}")
    bit_length = int.from_bytes(data[1:5], "big")
    nbytes = (bit_length + 7) // 8
    if len(data) != 5 + nbytes:
        raise ValueError(
            f"payload holds {len(data) - 5} bytes, header promises {nbytes}"
        )
    if not bit_length:
        return kind, BitString("")
    as_bits = format(int.from_bytes(data[5:], "big"), f"0{nbytes * 8}b")
    if as_bits[bit_length:].strip("0"):
        raise ValueError("nonzero padding bits")
    return kind, BitString(as_bits[:bit_length])
