import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from thetaphase.gridio import (
    GridFile,
    InputContractError,
    ParseError,
    format_grid,
    parse_grid,
    parse_signal,
    render_ascii,
    render_pgm,
)

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


def test_parse_signal_forms():
    sig = parse_signal("# demo\ndim=3\nlabel=probe\n1 0\n0.5\n  0 -2  # trailing\n")
    np.testing.assert_array_equal(sig.samples, [1, 0.5, -2j])
    assert sig.declared_dim == 3 and sig.label == "probe"


@pytest.mark.parametrize(
    "text,exc,fragment",
    [
        ("", ParseError, "no samples"),
        ("1 2 3\n", ParseError, "line 1"),
        ("1\nabc\n", ParseError, "line 2"),
        ("dim=x\n1\n", ParseError, "bad dim"),
        ("color=red\n1\n", ParseError, "unknown header"),
        ("dim=2\n1\n", InputContractError, "dim=2"),
        ("1\nnan 0\n", InputContractError, "non-finite"),
    ],
)
def test_parse_signal_errors(text, exc, fragment):
    with pytest.raises(exc, match=fragment):
        parse_signal(text)


def test_format_grid_layout():
    text = format_grid(GridFile("wigner", np.array([[1.0, 0.1], [-2.0, 1 / 3]])))
    assert text.splitlines() == [
        "# thetaphase grid",
        "kind=wigner",
        "M=2",
        "mu=none",
        "normalization=none",
        "order=qp",
        "dtype=real",
        "version=0.1.0",
        "1 0.10000000000000001",
        "-2 0.33333333333333331",
    ]


@settings(max_examples=60, deadline=None)
@given(values=arrays(np.float64, st.tuples(st.integers(1, 6)).map(lambda t: (t[0], t[0])), elements=finite))
def test_real_roundtrip_exact(values):
    grid = GridFile("q", values, mu=0.5, normalization="unit", extra={"source": "x"})
    back = parse_grid(format_grid(grid).encode())
    np.testing.assert_array_equal(back.values, values)
    assert (back.kind, back.mu, back.normalization, back.extra) == ("q", 0.5, "unit", {"source": "x"})
    assert format_grid(back) == format_grid(grid)


@settings(max_examples=30, deadline=None)
@given(re=arrays(np.float64, (3, 3), elements=finite), im=arrays(np.float64, (3, 3), elements=finite))
def test_complex_roundtrip_exact(re, im):
    grid = GridFile("kernel_F", re + 1j * im)
    back = parse_grid(format_grid(grid).encode())
    np.testing.assert_array_equal(back.values, grid.values)
    assert back.order == "mn"


def test_truncated_file_reports_byte_offset():
    data = format_grid(GridFile("wigner", np.eye(3))).encode()
    cut = data[: data.rfind(b"\n", 0, len(data) - 1) + 1]
    with pytest.raises(ParseError, match=rf"byte offset {len(cut)}: truncated"):
        parse_grid(cut)


@pytest.mark.parametrize(
    "data,fragment",
    [
        (b"kind=wigner\n1 2\n", "data row before M="),
        (b"kind=wigner\nM=2\n1 2\n3\n", "line 4 \\(byte offset 20\\): expected 2 values"),
        (b"kind=wigner\nM=1\n1\n2\n", "more than M=1"),
        (b"kind=nope\nM=1\n1\n", "kind"),
        (b"kind=wigner\nM=1\n\xff\n", "UTF-8"),
        (b"kind=wigner\nM=1\nfoo\n", "unparseable"),
        (b"kind=wigner\nM=1\n1\nmu=2\n", "header line after data"),
        (b"kind=wigner\n", "missing M="),
    ],
)
def test_parse_grid_errors(data, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_grid(data)


def test_render_pgm_delta():
    values = np.zeros((5, 5))
    values[2, 3] = 5.0
    out, degenerate = render_pgm(values)
    assert not degenerate
    header = b"P5\n5 5\n255\n"
    assert out.startswith(header)
    pixels = np.frombuffer(out[len(header):], dtype=np.uint8).reshape(5, 5)
    assert pixels[2, 3] == 255 and pixels.sum() == 255


def test_render_constant_is_mid_gray():
    out, degenerate = render_pgm(np.full((3, 3), 0.2))
    assert degenerate
    assert set(out[len(b"P5\n3 3\n255\n"):]) == {128}
    text, degenerate = render_ascii(np.full((2, 2), 7.0))
    assert degenerate and text == "++\n++\n"


def test_render_ascii_ramp():
    text, _ = render_ascii(np.linspace(0, 1, 10).reshape(1, 10))
    assert text == " .:-=+*#%@\n"
