"""Binary primitives for segment files.

Integers are little-endian; variable-length integers are unsigned
LEB128; strings are varint-length-prefixed UTF-8.
"""

from __future__ import annotations

import struct


def write_varint(buf: bytearray, value: int) -> None:
    if value < 0:
        raise ValueError("varint must be non-negative")
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            buf.append(byte | 0x80)
        else:
            buf.append(byte)
            return


def write_string(buf: bytearray, text: str) -> None:
    raw = text.encode("utf-8")
    write_varint(buf, len(raw))
    buf.extend(raw)


def write_u32(buf: bytearray, value: int) -> None:
    buf.extend(struct.pack("<I", value))


class ByteCursor:
    """Sequential reader over a bytes object."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def read_varint(self) -> int:
        value = 0
        shift = 0
        while True:
            byte = self.data[self.pos]
            self.pos += 1
            value |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return value
            shift += 7

    def read_string(self) -> str:
        length = self.read_varint()
        raw = self.data[self.pos : self.pos + length]
        self.pos += length
        return raw.decode("utf-8")

    def read_u32(self) -> int:
        value = struct.unpack_from("<I", self.data, self.pos)[0]
        self.pos += 4
        return value

    def read_bytes(self, length: int) -> bytes:
        raw = self.data[self.pos : self.pos + length]
        self.pos += length
        return raw
