import random

import pytest
from hypothesis import given

from consensus_fdi.errors import ParseError, SelfLoop
from consensus_fdi.graphio import (
    dump_graph,
    load_graph,
    parse_dot,
    parse_json,
    random_digraph,
    to_document,
)

from conftest import FIXTURES, digraphs


def test_dot_and_json_fixtures_agree(ex3):
    assert load_graph(FIXTURES / "ex3.dot") == load_graph(FIXTURES / "ex3.json") == ex3


def test_dot_subset_features():
    text = """
    /* block
       comment */
    strict digraph "demo" {
        1 -> 2 -> 3 [color=red];   // chain
        3 -> 1
        5;  # isolated, sets n
    }
    """
    g = parse_dot(text)
    assert g.n == 5
    assert g.edges == {(1, 2), (2, 3), (3, 1)}


def test_dot_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_dot("digraph {\n 1 -> 2;\n a -> 3;\n}")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_dot("graph { 1 -- 2 }")
    with pytest.raises(ParseError):
        parse_dot("digraph { }")


def test_json_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_json('{"n": 3,\n "edges": [[1, 2],, ]}')
    assert exc.value.line == 2 and exc.value.column is not None
    assert "line 2" in str(exc.value)
    for bad in ('[1, 2]', '{"n": "3", "edges": []}', '{"n": 3, "edges": [[1, 2, 3]]}',
                '{"n": 3, "edges": [[1, true]]}', '{"n": 3}'):
        with pytest.raises(ParseError):
            parse_json(bad)


def test_json_validation_reaches_digraph_rules():
    with pytest.raises(SelfLoop):
        parse_json('{"n": 3, "edges": [[2, 2]]}')


def test_duplicates_merge_with_warning(caplog):
    g = parse_json('{"n": 2, "edges": [[1, 2], [1, 2]]}')
    assert len(g.edges) == 1
    assert "duplicate" in caplog.text


@given(digraphs(min_n=1, max_n=9))
def test_document_round_trip(g):
    assert parse_json(__import__("json").dumps(to_document(g))) == g


def test_generator_round_trip(tmp_path):
    rng = random.Random(11)
    for k in range(20):
        g = random_digraph(rng.randint(1, 10), rng.random(), rng)
        path = tmp_path / f"g{k}.json"
        dump_graph(g, path)
        assert load_graph(path).edges == g.edges


def test_random_digraph_extremes():
    rng = random.Random(0)
    assert random_digraph(5, 0.0, rng).edges == frozenset()
    assert len(random_digraph(5, 1.0, rng).edges) == 20
    assert to_document(parse_json('{"n": 4, "edges": []}'))["n"] == 4
