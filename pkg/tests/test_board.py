import pytest

from sharelab.board import BulletinBoard, Post
from sharelab.errors import UnauthorizedError, UnknownLabelError


def test_post_then_read_same_payload():
    board = BulletinBoard()
    payload = {"value": "42"}
    board.post("dealer", "deal", payload)
    assert board.read(label="deal")[0].payload == payload


def test_sequence_numbers_increase():
    board = BulletinBoard()
    first = board.post("dealer", "a", {})
    second = board.post("dealer", "b", {})
    assert (first.seq, second.seq) == (0, 1)


def test_script_enforces_author():
    board = BulletinBoard(script={"deal": "dealer", "pubkey/1": "participant-1"})
    board.post("dealer", "deal", {})
    with pytest.raises(UnauthorizedError):
        board.post("participant-1", "deal", {})
    with pytest.raises(UnknownLabelError):
        board.post("dealer", "gossip", {})


def test_read_filters():
    board = BulletinBoard()
    board.post("dealer", "a", {"i": 1})
    board.post("verifier", "a", {"i": 2})
    board.post("dealer", "b", {"i": 3})
    assert len(board.read(label="a")) == 2
    assert len(board.read(author="dealer")) == 2
    assert len(board.read(label="a", author="dealer")) == 1


def test_read_one_requires_uniqueness():
    board = BulletinBoard()
    board.post("dealer", "a", {})
    board.post("dealer", "a", {})
    with pytest.raises(UnknownLabelError):
        board.read_one("a")


def test_json_round_trip():
    board = BulletinBoard()
    board.post("dealer", "deal", {"S": "32"})
    board.post("participant-1", "ack", {"ok": True})
    text = board.to_json()
    parsed = BulletinBoard.from_json(text)
    assert parsed.posts == board.posts
    assert parsed.to_json() == text


def test_posts_are_immutable():
    post = Post(seq=0, author="dealer", label="deal", payload={})
    with pytest.raises(AttributeError):
        post.seq = 1
