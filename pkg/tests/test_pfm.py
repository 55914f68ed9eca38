import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from crossband.errors import MalformedHeader, TruncatedPayload, UnsupportedVariant
from crossband.image import DisparityMap
from crossband.io.pfm import encode_pfm, parse_pfm, read_pfm_disparity, read_pfm_planes, write_pfm


def test_roundtrip_bitwise(tmp_path, rng):
    a = rng.normal(size=(16, 8)).astype(np.float32)
    a[3, 4] = np.inf
    write_pfm(a, tmp_path / "a.pfm")
    back = read_pfm_disparity(tmp_path / "a.pfm").values
    assert back.tobytes() == a.tobytes()


@settings(max_examples=40)
@given(arrays(np.float32, st.tuples(st.integers(1, 9), st.integers(1, 9)),
              elements=st.floats(width=32, allow_nan=False)))
def test_roundtrip_property(a):
    assert parse_pfm(encode_pfm(a)).tobytes() == a.tobytes()


def test_hand_header_bottom_up():
    buf = b"Pf\n2 2\n-1.0\n" + struct.pack("<4f", 1, 2, 3, 4)
    np.testing.assert_array_equal(parse_pfm(buf), [[3, 4], [1, 2]])
    assert encode_pfm(np.array([[3, 4], [1, 2]], np.float32)) == buf


def test_big_endian():
    buf = b"Pf\n2 1\n1.0\n" + struct.pack(">2f", 0.5, -2)
    np.testing.assert_array_equal(parse_pfm(buf), [[0.5, -2]])


def test_color_split(tmp_path, rng):
    a = rng.random((3, 4, 3)).astype(np.float32)
    write_pfm(a, tmp_path / "c.pfm")
    planes = read_pfm_planes(tmp_path / "c.pfm")
    assert [p.channel_tag for p in planes] == ["R", "G", "B"]
    np.testing.assert_array_equal(planes[2].pixels, a[:, :, 2])
    with pytest.raises(UnsupportedVariant):
        read_pfm_disparity(tmp_path / "c.pfm")


def test_errors():
    with pytest.raises(TruncatedPayload):
        parse_pfm(b"Pf\n2 2\n-1.0\n" + b"\0" * 15)
    with pytest.raises(MalformedHeader):
        parse_pfm(b"Pf\n2 x\n-1.0\n")
    with pytest.raises(MalformedHeader):
        parse_pfm(b"Pf\n2 2\n0\n" + b"\0" * 16)
    with pytest.raises(MalformedHeader):
        parse_pfm(b"hello")
    with pytest.raises(UnsupportedVariant):
        parse_pfm(b"PX\n1 1\n-1\n" + b"\0" * 4)
    with pytest.raises(UnsupportedVariant):
        encode_pfm(np.zeros((2, 2, 2)))


def test_disparity_map_input():
    d = DisparityMap(np.arange(6.0).reshape(2, 3))
    assert parse_pfm(encode_pfm(d)).tobytes() == d.values.tobytes()
