#!/usr/bin/env python
# -*- coding: utf-8 -*-

import json
import os
from fractions import Fraction

import mpmath
import pytest

from sqrtlat.cache import JsonStore, Memo, decode_value, encode_value


def test_encode_decode():
    assert encode_value(12 ** 40) == 12 ** 40
    assert encode_value(Fraction(3, 8)) == '3/8'
    assert encode_value(Fraction(4, 2)) == 2
    assert decode_value('3/8') == Fraction(3, 8)
    assert decode_value(0.1) == 0.1

    with mpmath.workprec(200):
        value = +mpmath.pi
        assert decode_value(encode_value(value)) == value

    with pytest.raises(TypeError):
        encode_value(True)

    with pytest.raises(TypeError):
        encode_value(1j)


class TestJsonStore(object):

    def test_save_load(self, tmp_path):
        store = JsonStore(str(tmp_path / 'nested'))
        assert store.load('absent') is None
        assert store.save('doc', {'a': [1, 2]})
        assert store.load('doc') == {'a': [1, 2]}
        assert os.listdir(store.directory) == ['doc.json']

    def test_unreadable(self, tmp_path):
        store = JsonStore(str(tmp_path))
        (tmp_path / 'broken.json').write_text('{not json')
        assert store.load('broken') is None

    def test_unwritable(self, tmp_path):
        blocker = tmp_path / 'file'
        blocker.write_text('')
        store = JsonStore(str(blocker / 'sub'))
        assert store.save('doc', {}) is False

    def test_unserialisable(self, tmp_path):
        store = JsonStore(str(tmp_path))
        assert store.save('doc', {'a': 1})
        with pytest.raises(TypeError):
            store.save('doc', {'a': object()})

        assert os.listdir(str(tmp_path)) == ['doc.json']
        assert store.load('doc') == {'a': 1}

    def test_sorted_keys(self, tmp_path):
        store = JsonStore(str(tmp_path))
        store.save('doc', {'b': 1, 'a': 2})
        with open(store.path('doc')) as handle:
            assert list(json.load(handle)) == ['a', 'b']


def test_memo():
    memo = Memo('squares')
    calls = []

    def compute():
        calls.append(1)
        return 49

    assert memo.get_or_compute(7, compute) == 49
    assert memo.get_or_compute(7, compute) == 49
    assert len(calls) == 1
    assert 7 in memo
    assert memo.items() == [(7, 49)]

    memo.put(8, 64)
    assert memo.get(8) == 64
    assert len(memo) == 2

    memo.clear()
    assert len(memo) == 0
