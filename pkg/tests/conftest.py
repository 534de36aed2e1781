from __future__ import annotations

import pytest

from graspspan.documents import hand_envelope, object_envelope, write_document
from graspspan.model import ObjectSpec

from helpers import demo_hand


def write_hand_file(tmp_path, hand, name=None):
    path = tmp_path / f"{name or hand.name}.grasp.json"
    path.write_text(write_document(hand_envelope(hand)), encoding="utf-8")
    return str(path)


def write_object_file(tmp_path, obj):
    path = tmp_path / f"{obj.name}.object.json"
    path.write_text(write_document(object_envelope(obj)), encoding="utf-8")
    return str(path)


@pytest.fixture
def demo_hand_file(tmp_path):
    return write_hand_file(tmp_path, demo_hand())


@pytest.fixture
def block_object_file(tmp_path):
    return write_object_file(
        tmp_path, ObjectSpec("block", span=75.0, depth=10.0, width=30.0))
