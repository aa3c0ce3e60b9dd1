import numpy as np
import pytest

from upspec.netpbm import quantize, read_netpbm, write_netpbm


class TestQuantize:
    def test_constant_maps_to_zero(self):
        np.testing.assert_array_equal(quantize(np.full((2, 3), 7.7)),
                                      np.zeros((2, 3), dtype=np.uint8))

    def test_endpoints(self):
        np.testing.assert_array_equal(quantize(np.array([[0.0, 1.0]])), [[0, 255]])

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            quantize(np.array([[np.nan]]))


class TestWriteRead:
    def test_single_pixel_header_and_byte(self, tmp_path):
        path = tmp_path / "one.pgm"
        write_netpbm(np.array([[123.4]]), path)
        assert path.read_bytes() == b"P5 1 1 255\n\x00"

    def test_two_pixel_endpoints(self, tmp_path):
        path = tmp_path / "two.pgm"
        write_netpbm(np.array([[0.0, 1.0]]), path)
        assert path.read_bytes() == b"P5 2 1 255\n" + bytes([0, 255])

    def test_round_trip_is_byte_stable(self, tmp_path):
        rng = np.random.default_rng(0)
        img = rng.normal(size=(8, 8))
        first = tmp_path / "a.pgm"
        second = tmp_path / "b.pgm"
        write_netpbm(img, first)
        write_netpbm(read_netpbm(first), second)
        assert first.read_bytes() == second.read_bytes()

    def test_rgb_round_trip(self, tmp_path):
        rng = np.random.default_rng(1)
        img = rng.normal(size=(5, 7, 3))
        path = tmp_path / "c.ppm"
        write_netpbm(img, path)
        assert path.read_bytes().startswith(b"P6 7 5 255\n")
        back = read_netpbm(path)
        assert back.shape == (5, 7, 3)
        np.testing.assert_array_equal(back, quantize(img))

    def test_comment_in_header(self, tmp_path):
        path = tmp_path / "d.pgm"
        path.write_bytes(b"P5\n# a comment\n2 1\n255\n" + bytes([4, 9]))
        np.testing.assert_array_equal(read_netpbm(path), [[4, 9]])

    def test_rejects_bad_inputs(self, tmp_path):
        with pytest.raises(ValueError):
            write_netpbm(np.ones((2, 2, 2)), tmp_path / "bad.pgm")
        path = tmp_path / "trunc.pgm"
        path.write_bytes(b"P5 4 4 255\n\x00")
        with pytest.raises(ValueError):
            read_netpbm(path)
        other = tmp_path / "magic.pgm"
        other.write_bytes(b"P2 1 1 255\n0")
        with pytest.raises(ValueError):
            read_netpbm(other)
