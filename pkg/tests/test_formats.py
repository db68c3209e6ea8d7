import pytest
from hypothesis import given, strategies as st

from onepoint import formats
from onepoint.errors import ParseError
from onepoint.field import FieldElement, fq_make
from onepoint.pipeline import run
from onepoint.poly import MPoly, parse_poly

F16 = fq_make(2, 4)
WORKED = "onepoint-format: 1\nfield: 2^4\nn: 1\ncone: z0^2 + z0*z1 + z1^2\npoint: 0, 1\n"


def test_triple_round_trip_is_byte_identical():
    spec = formats.loads_triple(WORKED)
    assert spec.n == 1 and spec.field == F16
    assert formats.dumps_triple(spec) == WORKED


@st.composite
def triple_specs(draw):
    F = draw(st.sampled_from([fq_make(2), fq_make(3, 2), fq_make(2, 4)]))
    n = draw(st.integers(1, 3))
    deg = draw(st.integers(1, 3))
    exps = st.lists(st.integers(0, deg), min_size=n + 1, max_size=n + 1).filter(lambda e: sum(e) == deg)
    items = draw(st.lists(st.tuples(exps, st.integers(1, F.q - 1)), min_size=1, max_size=4))
    cone = MPoly.from_terms(F, n + 1, items)
    point = tuple(FieldElement(F, draw(st.integers(0, F.q - 1))) for _ in range(n + 1))
    return formats.TripleSpec(F, n, cone, point)


@given(triple_specs())
def test_triple_text_round_trip(spec):
    if not spec.cone.terms:
        return
    text = formats.dumps_triple(spec)
    again = formats.loads_triple(text)
    assert again == spec
    assert formats.dumps_triple(again) == text


def test_comments_and_blank_lines_are_ignored():
    text = "# a comment\nonepoint-format: 1\n\nfield: 2^4\nn: 1\n# another\ncone: z0 + z1\npoint: 1, 1\n"
    spec = formats.loads_triple(text)
    assert spec.cone == parse_poly("z0 + z1", F16)


@pytest.mark.parametrize(
    "text",
    [
        "field: 2\nn: 1\ncone: z0\npoint: 0, 1\n",
        "onepoint-format: 2\nfield: 2\nn: 1\ncone: z0\npoint: 0, 1\n",
        "onepoint-format: 1\nfield: 2\nn: 1\ncone: z0\n",
        "onepoint-format: 1\nfield: 2\nn: 1\ncone: z0\npoint: 0, 1\ncolour: red\n",
        "onepoint-format: 1\nfield: 2\nn: 1\nn: 1\ncone: z0\npoint: 0, 1\n",
        "onepoint-format: 1\nfield: 2\nn: one\ncone: z0\npoint: 0, 1\n",
        "onepoint-format: 1\nfield: 2\nn: 1\ncone: z0\npoint: 0, 1, 1\n",
        "onepoint-format: 1\nfield: 2\nn: 1\ncone: z0 +\npoint: 0, 1\n",
        "onepoint-format: 1\nfield: 2\nn: 0\ncone: z0\npoint: 1\n",
    ],
)
def test_bad_triple_files(text):
    with pytest.raises(ParseError):
        formats.loads_triple(text)


@pytest.fixture(scope="module")
def chain_text():
    chain, _ = run(formats.loads_triple(WORKED).to_triple(), seed=0)
    return formats.dumps_chain(chain)


def test_chain_round_trip_is_byte_identical(chain_text):
    assert chain_text.startswith(formats.HEADER + "\n{")
    assert formats.dumps_chain(formats.loads_chain(chain_text)) == chain_text


def test_chain_file_records_everything(chain_text):
    import json

    data = json.loads(chain_text.split("\n", 1)[1])
    assert set(data) >= {"field_history", "seed", "steps", "final_normalization",
                         "abhyankar", "composite", "input"}
    assert data["composite_degree"] == 12


@pytest.mark.parametrize(
    "mutate",
    [
        lambda t: t.replace("onepoint-format: 1", "onepoint-format: 9"),
        lambda t: t[:-20],
        lambda t: t.replace('"seed"', '"sead"'),
        lambda t: t.replace('"composite_degree": 12', '"composite_degree": 13'),
    ],
)
def test_bad_chain_files(chain_text, mutate):
    with pytest.raises(ParseError):
        formats.loads_chain(mutate(chain_text))


def test_files_on_disk(tmp_path, chain_text):
    path = tmp_path / "chain.json"
    formats.write_text(path, chain_text)
    assert path.read_bytes() == chain_text.encode()
    assert formats.dumps_chain(formats.read_chain(path)) == chain_text
    tpath = tmp_path / "triple.txt"
    tpath.write_text(WORKED)
    assert formats.read_triple(tpath).n == 1
