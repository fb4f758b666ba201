"""CoAP message codec: bit-exact encoding and decoding of UDP payloads.

Messages are value objects; :func:`decode_message` and :func:`encode_message`
are pure functions, safe to call concurrently. The encoder always emits the
canonical (minimal) option delta/length form. Unknown option numbers pass
through untouched so downstream dissection can expose any option field.
"""

from dataclasses import dataclass
from enum import IntEnum

from .errors import (
    InvalidTokenLength,
    InvariantViolation,
    ReservedOptionNibble,
    TruncatedMessage,
    UnsupportedVersion,
)

COAP_VERSION = 1
MAX_TOKEN_LENGTH = 8
MAX_EXTENDED = 65535 + 269
PAYLOAD_MARKER = 0xFF

# Option numbers from the IANA CoAP registry that the dissector names.
OPT_OBSERVE = 6
OPT_URI_PATH = 11
OPT_CONTENT_FORMAT = 12
OPT_BLOCK2 = 23
OPT_BLOCK1 = 27

OPTION_NAMES = {
    1: "If-Match",
    3: "Uri-Host",
    4: "ETag",
    5: "If-None-Match",
    6: "Observe",
    7: "Uri-Port",
    8: "Location-Path",
    11: "Uri-Path",
    12: "Content-Format",
    14: "Max-Age",
    15: "Uri-Query",
    17: "Accept",
    20: "Location-Query",
    23: "Block2",
    27: "Block1",
    28: "Size2",
    35: "Proxy-Uri",
    39: "Proxy-Scheme",
    60: "Size1",
}

CONTENT_FORMAT_NAMES = {
    0: "text/plain",
    40: "application/link-format",
    41: "application/xml",
    42: "application/octet-stream",
    47: "application/exi",
    50: "application/json",
}

# Method and response codes used by the synthesizer.
CODE_GET = (0, 1)
CODE_POST = (0, 2)
CODE_CREATED = (2, 1)
CODE_CHANGED = (2, 4)
CODE_CONTENT = (2, 5)
CODE_NOT_FOUND = (4, 4)


class MessageType(IntEnum):
    CON = 0
    NON = 1
    ACK = 2
    RST = 3


@dataclass
class CoapOption:
    number: int
    value: bytes = b""


@dataclass
class CoapMessage:
    """A decoded CoAP message (RFC 7252 section 3 layout)."""

    msg_type: MessageType
    code: tuple  # (class 0-7, detail 0-31)
    message_id: int
    token: bytes = b""
    options: tuple = ()
    payload: bytes = b""
    version: int = COAP_VERSION

    def __post_init__(self):
        self.msg_type = MessageType(self.msg_type)
        self.code = tuple(self.code)
        self.options = tuple(self.options)

    def find_options(self, number):
        return [o for o in self.options if o.number == number]


def code_string(code):
    """Render a (class, detail) code pair as Wireshark-style "c.dd" text."""
    return f"{code[0]}.{code[1]:02d}"


def encode_message(msg: CoapMessage) -> bytes:
    """Encode a message to its canonical wire form.

    Raises :class:`InvariantViolation` if the message breaks a structural
    invariant (caller bug, not data corruption).
    """
    if msg.version != COAP_VERSION:
        raise InvariantViolation(f"version must be {COAP_VERSION}, got {msg.version}")
    if not 0 <= int(msg.msg_type) <= 3:
        raise InvariantViolation(f"message type out of range: {msg.msg_type}")
    if len(msg.token) > MAX_TOKEN_LENGTH:
        raise InvariantViolation(f"token longer than {MAX_TOKEN_LENGTH} bytes")
    clazz, detail = msg.code
    if not (0 <= clazz <= 7 and 0 <= detail <= 31):
        raise InvariantViolation(f"code out of range: {msg.code}")
    if not 0 <= msg.message_id <= 0xFFFF:
        raise InvariantViolation(f"message id out of range: {msg.message_id}")

    out = bytearray()
    out.append((msg.version << 6) | (int(msg.msg_type) << 4) | len(msg.token))
    out.append((clazz << 5) | detail)
    out += msg.message_id.to_bytes(2, "big")
    out += msg.token

    previous = 0
    for opt in msg.options:
        if opt.number < previous:
            raise InvariantViolation("options not sorted ascending by number")
        delta = opt.number - previous
        previous = opt.number
        if delta > MAX_EXTENDED:
            raise InvariantViolation(f"option delta {delta} not representable")
        if len(opt.value) > MAX_EXTENDED:
            raise InvariantViolation(f"option value of {len(opt.value)} bytes not representable")
        dn, dext = _pack_extended(delta)
        ln, lext = _pack_extended(len(opt.value))
        out.append((dn << 4) | ln)
        out += dext
        out += lext
        out += opt.value

    if msg.payload:
        out.append(PAYLOAD_MARKER)
        out += msg.payload
    return bytes(out)


def _pack_extended(value):
    """Minimal nibble/extension encoding for an option delta or length."""
    if value < 13:
        return value, b""
    if value < 269:
        return 13, bytes([value - 13])
    return 14, (value - 269).to_bytes(2, "big")


def decode_message(data: bytes) -> CoapMessage:
    """Decode a byte sequence into the unique message that encodes to it.

    Accepts arbitrary input; malformed bytes raise a :class:`CoapDecodeError`
    subtype carrying the byte offset of the failure. Never reads past the end
    of the input.
    """
    if len(data) < 4:
        raise TruncatedMessage("header requires 4 bytes", len(data))
    version = data[0] >> 6
    if version != COAP_VERSION:
        raise UnsupportedVersion(f"unsupported version {version}", 0)
    msg_type = MessageType((data[0] >> 4) & 0x3)
    tkl = data[0] & 0xF
    if tkl > MAX_TOKEN_LENGTH:
        raise InvalidTokenLength(f"token length field {tkl} is reserved", 0)
    code = (data[1] >> 5, data[1] & 0x1F)
    message_id = int.from_bytes(data[2:4], "big")

    pos = 4
    if pos + tkl > len(data):
        raise TruncatedMessage(f"token of {tkl} bytes runs past end", pos)
    token = data[pos : pos + tkl]
    pos += tkl

    options = []
    number = 0
    payload = b""
    while pos < len(data):
        byte = data[pos]
        if byte == PAYLOAD_MARKER:
            if pos + 1 == len(data):
                raise TruncatedMessage("payload marker with empty payload", pos)
            payload = data[pos + 1 :]
            pos = len(data)
            break
        dn, ln = byte >> 4, byte & 0xF
        if dn == 15 or ln == 15:
            raise ReservedOptionNibble("nibble 15 outside payload marker", pos)
        pos += 1
        delta, pos = _read_extended(data, dn, pos)
        length, pos = _read_extended(data, ln, pos)
        if pos + length > len(data):
            raise TruncatedMessage(f"option value of {length} bytes runs past end", pos)
        number += delta
        options.append(CoapOption(number, data[pos : pos + length]))
        pos += length

    return CoapMessage(
        msg_type=msg_type,
        code=code,
        message_id=message_id,
        token=token,
        options=tuple(options),
        payload=payload,
    )


def _read_extended(data, nibble, pos):
    if nibble < 13:
        return nibble, pos
    if nibble == 13:
        if pos >= len(data):
            raise TruncatedMessage("extended delta/length byte missing", pos)
        return 13 + data[pos], pos + 1
    if pos + 2 > len(data):
        raise TruncatedMessage("extended delta/length pair missing", pos)
    return 269 + int.from_bytes(data[pos : pos + 2], "big"), pos + 2


def block_size_from_option(value: bytes) -> int:
    """Actual block size (bytes) carried by a Block1/Block2 option value."""
    if not value:
        return 16  # szx 0 is implied by an empty option value
    szx = value[-1] & 0x7
    return 2 ** (szx + 4)


def block_option_value(szx: int, num: int = 0, more: bool = False) -> bytes:
    """Pack a Block1/Block2 option value from (num, more, szx)."""
    raw = (num << 4) | (int(more) << 3) | (szx & 0x7)
    if raw == 0:
        return b"\x00"
    length = (raw.bit_length() + 7) // 8
    return raw.to_bytes(length, "big")
