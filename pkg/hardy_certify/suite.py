# -*- coding: utf-8 -*-
# this file is generated by hardy_certify.scripts.generate_suite
from __future__ import absolute_import, unicode_literals

MAIN_SUITE = [
    {
        "exponents": {"beta": [0.0], "p": 1.0, "q": 1.0, "r": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "i-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0, 0.5], "p": 2.0, "q": 2.0, "r": 3.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "i-growing-u",
        "schema": 1,
        "weights": {
            "u": {"alpha": 1.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 1.0, "q": 2.0, "r": 2.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "i-singular-v",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": -0.5, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 2.0, "q": 3.0, "r": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "ii-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0, 0.5], "p": 3.0, "q": 3.0, "r": 2.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "ii-growing-u",
        "schema": 1,
        "weights": {
            "u": {"alpha": 1.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 2.0, "q": 2.0, "r": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "ii-singular-w",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": -0.5, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 2.0, "q": 1.0, "r": 2.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "iii-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 3.0, "q": 2.0, "r": 3.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "iii-growing-w",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 1.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0, 0.5], "p": 2.0, "q": 1.0, "r": 3.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "iii-singular-u",
        "schema": 1,
        "weights": {
            "u": {"alpha": -0.5, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 2.0, "q": 1.0, "r": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "iv-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 3.0, "q": 2.0, "r": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "iv-singular-w",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": -0.5, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0, 0.5], "p": 3.0, "q": 1.0, "r": 2.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "main",
        "name": "iv-growing-u",
        "schema": 1,
        "weights": {
            "u": {"alpha": 1.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
]

MONOTONE_SUITE = [
    {
        "exponents": {"beta": [0.0], "p": 1.0, "q": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "monotone",
        "name": "i-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 1.0, "q": 2.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "monotone",
        "name": "i-growing-w",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 1.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 1.0, "q": 0.5},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "monotone",
        "name": "ii-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 2.0, "q": 3.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "monotone",
        "name": "iii-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 2.0, "q": 1.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "monotone",
        "name": "iv-constant",
        "schema": 1,
        "weights": {
            "u": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
    {
        "exponents": {"beta": [0.0], "p": 3.0, "q": 2.0},
        "interval": {"a": 0.0, "b": 1.0},
        "mode": "monotone",
        "name": "iv-growing-u",
        "schema": 1,
        "weights": {
            "u": {"alpha": 1.0, "c": 1.0, "form": "power"},
            "v": {"alpha": 0.0, "c": 1.0, "form": "power"},
            "w": {"alpha": 0.0, "c": 1.0, "form": "power"},
        },
    },
]
