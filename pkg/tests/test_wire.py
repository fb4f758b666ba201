import random

import pytest

from coapids.errors import (
    CoapDecodeError,
    InvalidTokenLength,
    InvariantViolation,
    ReservedOptionNibble,
    TruncatedMessage,
    UnsupportedVersion,
)
from coapids.wire import (
    CoapMessage,
    CoapOption,
    MessageType,
    block_option_value,
    block_size_from_option,
    code_string,
    decode_message,
    encode_message,
)

from helpers import random_message


def test_decode_con_get():
    msg = decode_message(bytes([0x40, 0x01, 0x30, 0x39]))
    assert msg.version == 1
    assert msg.msg_type == MessageType.CON
    assert msg.token == b""
    assert msg.code == (0, 1)
    assert msg.message_id == 12345
    assert msg.options == ()
    assert msg.payload == b""


def test_decode_non_content():
    msg = decode_message(bytes([0x50, 0x45, 0x00, 0x01]))
    assert msg.msg_type == MessageType.NON
    assert msg.code == (2, 5)
    assert msg.message_id == 1
    assert msg.options == ()
    assert msg.payload == b""


def test_decode_three_bytes_truncated():
    with pytest.raises(TruncatedMessage):
        decode_message(bytes([0x40, 0x01, 0x30]))


def test_encode_minimal_con_get():
    msg = CoapMessage(MessageType.CON, (0, 1), 0)
    assert encode_message(msg) == bytes([0x40, 0x01, 0x00, 0x00])


def test_encode_uri_path_option():
    msg = CoapMessage(MessageType.CON, (0, 1), 7, options=[CoapOption(11, b"temp")])
    wire = encode_message(msg)
    assert wire[4:] == bytes([0xB4]) + b"temp"


def test_code_string_rendering():
    assert code_string((0, 1)) == "0.01"
    assert code_string((2, 5)) == "2.05"
    assert code_string((4, 4)) == "4.04"


def test_token_roundtrip():
    msg = CoapMessage(MessageType.ACK, (2, 4), 99, token=b"\x01\x02\x03")
    decoded = decode_message(encode_message(msg))
    assert decoded == msg


def test_extended_delta_and_length_forms():
    # Deltas 13 and 300 force the one- and two-byte extension forms.
    msg = CoapMessage(
        MessageType.NON,
        (0, 3),
        5,
        options=[CoapOption(13, b"x" * 13), CoapOption(313, b"y" * 300)],
    )
    decoded = decode_message(encode_message(msg))
    assert decoded == msg


def test_repeated_option_numbers():
    msg = CoapMessage(
        MessageType.CON,
        (0, 1),
        2,
        options=[CoapOption(11, b"a"), CoapOption(11, b"b")],
    )
    decoded = decode_message(encode_message(msg))
    assert [o.value for o in decoded.find_options(11)] == [b"a", b"b"]


def test_payload_marker_required_for_payload():
    msg = CoapMessage(MessageType.CON, (0, 2), 3, payload=b"hi")
    wire = encode_message(msg)
    assert wire[4] == 0xFF
    assert decode_message(wire).payload == b"hi"


def test_empty_payload_has_no_marker():
    wire = encode_message(CoapMessage(MessageType.CON, (0, 2), 3))
    assert 0xFF not in wire


def test_marker_with_empty_payload_rejected():
    with pytest.raises(TruncatedMessage):
        decode_message(bytes([0x40, 0x01, 0x00, 0x00, 0xFF]))


def test_reserved_token_length():
    with pytest.raises(InvalidTokenLength) as err:
        decode_message(bytes([0x49, 0x01, 0x00, 0x00]) + b"\x00" * 9)
    assert err.value.offset == 0


def test_reserved_option_nibble():
    with pytest.raises(ReservedOptionNibble):
        decode_message(bytes([0x40, 0x01, 0x00, 0x00, 0xF4, 0x00]))


def test_unsupported_version():
    with pytest.raises(UnsupportedVersion):
        decode_message(bytes([0x80, 0x01, 0x00, 0x00]))


def test_truncated_option_value_reports_offset():
    # Option header promises 4 value bytes but only 2 follow.
    with pytest.raises(TruncatedMessage) as err:
        decode_message(bytes([0x40, 0x01, 0x00, 0x00, 0xB4, 0x61, 0x62]))
    assert err.value.offset == 5


def test_encode_rejects_long_token():
    msg = CoapMessage(MessageType.CON, (0, 1), 0, token=b"\x00" * 9)
    with pytest.raises(InvariantViolation):
        encode_message(msg)


def test_encode_rejects_unsorted_options():
    msg = CoapMessage(
        MessageType.CON, (0, 1), 0,
        options=[CoapOption(12, b""), CoapOption(11, b"")],
    )
    with pytest.raises(InvariantViolation):
        encode_message(msg)


def test_encode_rejects_bad_version():
    msg = CoapMessage(MessageType.CON, (0, 1), 0, version=2)
    with pytest.raises(InvariantViolation):
        encode_message(msg)


def test_roundtrip_random_messages():
    rand = random.Random(0xC0AB)
    for _ in range(2000):
        msg = random_message(rand)
        wire = encode_message(msg)
        decoded = decode_message(wire)
        assert decoded == msg
        # Canonical form is stable under re-encoding.
        assert encode_message(decoded) == wire


def test_fuzz_arbitrary_bytes_never_crash():
    rand = random.Random(0xF022)
    for _ in range(20000):
        blob = rand.randbytes(rand.randint(0, 64))
        try:
            decoded = decode_message(blob)
        except CoapDecodeError:
            continue
        assert encode_message(decoded) == blob


def test_fuzz_mutated_valid_messages():
    rand = random.Random(0xBEEF)
    for _ in range(2000):
        wire = bytearray(encode_message(random_message(rand)))
        for _ in range(rand.randint(1, 4)):
            if not wire:
                break
            wire[rand.randrange(len(wire))] = rand.randint(0, 255)
        try:
            decode_message(bytes(wire))
        except CoapDecodeError:
            pass


def test_block_option_helpers():
    assert block_size_from_option(block_option_value(0)) == 16
    assert block_size_from_option(block_option_value(6)) == 1024
    assert block_size_from_option(block_option_value(0, num=3, more=True)) == 16
    assert block_size_from_option(b"") == 16
