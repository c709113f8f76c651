"""Append-only bulletin board for simulated protocol sessions.

Every public protocol message is a post: a sequence number, the posting
role, a label from the scheme's script, and a JSON-able payload.  A board
built with a script enforces who may post under which label; posts are
immutable once appended, and replaying a session with the same seed yields
an identical board.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .encoding import dump_json, load_json
from .errors import UnauthorizedError, UnknownLabelError


@dataclass(frozen=True)
class Post:
    seq: int
    author: str
    label: str
    payload: dict

    def to_dict(self) -> dict:
        return {"seq": self.seq, "author": self.author, "label": self.label,
                "payload": self.payload}

    @classmethod
    def from_dict(cls, doc: dict) -> "Post":
        return cls(seq=int(doc["seq"]), author=doc["author"], label=doc["label"],
                   payload=doc["payload"])


@dataclass
class BulletinBoard:
    """``script`` maps each legal label to the one role allowed to post it;
    a board without a script accepts anything."""

    script: dict[str, str] | None = None
    posts: list[Post] = field(default_factory=list)

    def post(self, author: str, label: str, payload: dict) -> Post:
        if self.script is not None:
            if label not in self.script:
                raise UnknownLabelError(f"label {label!r} is not in the scheme script")
            if self.script[label] != author:
                raise UnauthorizedError(
                    f"{author!r} may not post {label!r} (owner: {self.script[label]!r})"
                )
        entry = Post(seq=len(self.posts), author=author, label=label, payload=payload)
        self.posts.append(entry)
        return entry

    def read(self, label: str | None = None, author: str | None = None) -> list[Post]:
        return [
            p
            for p in self.posts
            if (label is None or p.label == label) and (author is None or p.author == author)
        ]

    def read_one(self, label: str) -> Post:
        matches = self.read(label=label)
        if len(matches) != 1:
            raise UnknownLabelError(f"expected exactly one post labelled {label!r}")
        return matches[0]

    def to_json(self) -> str:
        return dump_json([p.to_dict() for p in self.posts])

    @classmethod
    def from_json(cls, text: str) -> "BulletinBoard":
        board = cls()
        board.posts = [Post.from_dict(doc) for doc in load_json(text)]
        return board
