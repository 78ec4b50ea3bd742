"""Shared on-disk container: magic, version, JSON header, raw blocks, CRC-32.

Layout, all integers little-endian:

    magic (4 bytes) | version (u32) | header_len (u32) |
    header (canonical JSON, UTF-8)  | data blocks, concatenated |
    crc32 (u32, over every preceding byte)

The header always carries a "blocks" list of byte lengths so readers can
slice the payload without knowing shapes up front.  Canonical JSON means
sorted keys and compact separators, so identical logical content yields
identical bytes.
"""

from __future__ import annotations

import json
import struct
import zlib
from pathlib import Path

from .errors import ChecksumError, MagicError, TruncatedFileError, VersionError

_FIXED = struct.Struct("<4sII")


def canonical_json(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")


def write_container(path, magic: bytes, version: int, header: dict, blocks) -> None:
    """Write header plus raw byte blocks; `blocks` is a list of bytes-like."""
    payloads = [bytes(b) for b in blocks]
    full_header = dict(header)
    full_header["blocks"] = [len(b) for b in payloads]
    header_bytes = canonical_json(full_header)
    body = _FIXED.pack(magic, version, len(header_bytes)) + header_bytes + b"".join(payloads)
    crc = zlib.crc32(body) & 0xFFFFFFFF
    Path(path).write_bytes(body + struct.pack("<I", crc))


def read_header(path, magic: bytes, version: int) -> dict:
    """Parse just the header; no CRC verification, no block loading."""
    raw = Path(path).read_bytes()
    return _parse_header(raw, magic, version)[0]


def _parse_header(raw: bytes, magic: bytes, version: int):
    if len(raw) < _FIXED.size:
        raise TruncatedFileError("file shorter than the fixed-size prefix")
    got_magic, got_version, header_len = _FIXED.unpack_from(raw, 0)
    if got_magic != magic:
        raise MagicError(f"expected magic {magic!r}, found {got_magic!r}")
    if got_version != version:
        raise VersionError(f"unsupported format version {got_version}, expected {version}")
    header_end = _FIXED.size + header_len
    if len(raw) < header_end:
        raise TruncatedFileError("file ends inside the header")
    header = json.loads(raw[_FIXED.size:header_end].decode("utf-8"))
    return header, header_end


def read_container(path, magic: bytes, version: int):
    """Return (header, list of block byte strings), verifying size and CRC."""
    raw = Path(path).read_bytes()
    header, header_end = _parse_header(raw, magic, version)
    sizes = header.get("blocks", [])
    expected = header_end + sum(sizes) + 4
    if len(raw) < expected:
        raise TruncatedFileError(
            f"file is {len(raw)} bytes but header promises {expected}"
        )
    if len(raw) > expected:
        raise ChecksumError("trailing bytes after the declared container end")
    (stored_crc,) = struct.unpack_from("<I", raw, len(raw) - 4)
    actual_crc = zlib.crc32(raw[:-4]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise ChecksumError(
            f"CRC-32 mismatch: stored {stored_crc:#010x}, computed {actual_crc:#010x}"
        )
    blocks = []
    offset = header_end
    for size in sizes:
        blocks.append(raw[offset:offset + size])
        offset += size
    return header, blocks
