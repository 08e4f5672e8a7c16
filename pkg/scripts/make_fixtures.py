"""Regenerate the scenario fixtures shipped with the package."""

import json
from pathlib import Path

import numpy as np

from frobcat.algrep import field_algebra, path_algebra_a2, truncated_polynomial
from frobcat.scenario import algebra_to_json

OUT = Path(__file__).resolve().parents[1] / "src" / "frobcat" / "scenarios"


def dump(name, data):
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / f"{name}.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")


def dual_numbers_modules():
    return {
        "k": {"algebra": "A", "dim": 1, "actions": [[[1]], [[0]]]},
        "A": {"algebra": "A", "dim": 2, "actions": truncated_polynomial(2).left_regular.tolist()},
        "AA": {
            "algebra": "A",
            "dim": 4,
            "actions": [np.kron(np.eye(2, dtype=int), m).tolist() for m in truncated_polynomial(2).left_regular],
        },
    }


def main():
    D = algebra_to_json(truncated_polynomial(2))
    common = {"depth": 4, "budget": 4096, "seed": 0, "p": 2}

    dump(
        "dual_numbers",
        {
            **common,
            "name": "dual numbers, M = R, injective pairs",
            "algebras": {"A": D},
            "modules": dual_numbers_modules(),
            "bimodule": {"regular": "A", "name": "M"},
            "pairs": {"A": {"builtin": "mod_inj"}, "B": {"builtin": "mod_inj"}},
            "windows": {"A": {"max_dim": 2}, "B": {"max_dim": 2}, "C": {"enumerate": True}},
            "comma_objects": {"socle": {"X": "A", "Y": "k", "phi": [[0], [1]]}},
        },
    )

    P = algebra_to_json(path_algebra_a2())
    dump(
        "path_a2",
        {
            **common,
            "name": "path algebra of 1 -> 2, M = R, injective pairs",
            "algebras": {"Q": P},
            "modules": {
                "P1": {"algebra": "Q", "dim": 2, "actions": [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 0], [1, 0]]]},
                "S1": {"algebra": "Q", "dim": 1, "actions": [[[1]], [[0]], [[0]]]},
                "S2": {"algebra": "Q", "dim": 1, "actions": [[[0]], [[1]], [[0]]]},
            },
            "bimodule": {"regular": "Q", "name": "M"},
            "pairs": {"A": {"builtin": "mod_inj"}, "B": {"builtin": "mod_inj"}},
            "windows": {"A": {"max_dim": 2}, "B": {"max_dim": 2}, "C": {"enumerate": True}},
        },
    )

    K = algebra_to_json(field_algebra())
    dump(
        "gp",
        {
            **common,
            "name": "dual numbers over a field, M = R, Gorenstein projective pairs",
            "algebras": {"A": D, "k": K},
            "modules": {
                "kA": {"algebra": "A", "dim": 1, "actions": [[[1]], [[0]]]},
                "A": {"algebra": "A", "dim": 2, "actions": truncated_polynomial(2).left_regular.tolist()},
                "k": {"algebra": "k", "dim": 1, "actions": [[[1]]]},
            },
            "bimodule": {
                "left_algebra": "A",
                "right_algebra": "k",
                "dim": 2,
                "left_actions": truncated_polynomial(2).left_regular.tolist(),
                "right_actions": [[[1, 0], [0, 1]]],
                "name": "M",
            },
            "pairs": {"A": {"builtin": "gp", "d": 2}, "B": {"builtin": "gp", "d": 2}},
            "gp_bound": 2,
            "windows": {"A": {"max_dim": 2}, "B": {"max_dim": 2}, "C": {"enumerate": True}},
        },
    )

    dump(
        "broken_summands",
        {
            **common,
            "name": "negative control: second class not closed under summands",
            "algebras": {"A": D},
            "algebra_A": "A",
            "modules": dual_numbers_modules(),
            "pairs": {"A": {"builtin": "mod_inj", "restrict_W": ["AA"], "pad_with": "A"}},
            "windows": {"A": {"max_dim": 2, "modules": ["AA"]}},
            "expect_failure": "W.summands",
        },
    )

    dump(
        "broken_tor",
        {
            **common,
            "name": "negative control: bimodule with nonvanishing first derived tensor",
            "algebras": {"A": D},
            "modules": dual_numbers_modules(),
            "bimodule": {
                "left_algebra": "A",
                "right_algebra": "A",
                "dim": 1,
                "left_actions": [[[1]], [[0]]],
                "right_actions": [[[1]], [[0]]],
                "name": "k",
            },
            "pairs": {"A": {"builtin": "mod_inj"}, "B": {"builtin": "mod_inj"}},
            "windows": {"A": {"max_dim": 2}, "B": {"max_dim": 2}, "C": {"enumerate": True}},
            "expect_failure": "hypothesis.LnT_vanishing",
        },
    )


if __name__ == "__main__":
    main()
