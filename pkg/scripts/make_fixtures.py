"""Regenerate the bundled JSON fixtures under src/deltafilt/fixtures/."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "deltafilt" / "fixtures"

A2 = {"field": 5, "vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]}
A3 = {"field": 5, "vertices": ["1", "2", "3"],
      "arrows": [{"name": "a", "source": "1", "target": "2"}, {"name": "b", "source": "2", "target": "3"}]}


def step(*pairs):
    return [{"omega": w, "mult": k} for w, k in pairs]


def col(*xs):
    return [[x] for x in xs]


a2_projectives = {
    "description": "A2 = 1 -> 2 over GF(5); the system of indecomposable projectives, 2 <= 1.",
    "algebra": A2,
    "modules": {
        "P1": {"projective": "1"},
        "P2": {"projective": "2"},
        "S1": {"simple": "1"},
        "S2": {"simple": "2"},
        "P1P2": {"direct_sum": ["P1", "P2"]},
        "P1P1P2": {"direct_sum": ["P1", "P1", "P2"]},
        "R22": {"dims": {"1": 2, "2": 2}, "maps": {"a": [[1, 0], [0, 0]]}},
        "zero": {"zero": True},
    },
    "systems": {
        "projectives": {"omega": ["1", "2"], "preorder_pairs": [["2", "1"]],
                        "delta": {"1": "P1", "2": "P2"}},
    },
    "filtrations": {
        "P1P2_top": {"module": "P1P2", "chain": [{"spaces": {"1": col(1), "2": col(1, 0)}}],
                     "factors": [step(("1", 1)), step(("2", 1))]},
        "P1P2_bottom": {"module": "P1P2", "chain": [{"spaces": {"2": col(0, 1)}}],
                        "factors": [step(("2", 1)), step(("1", 1))]},
        "P1P1P2_a": {"module": "P1P1P2",
                     "chain": [{"spaces": {"1": col(1, 0), "2": col(1, 0, 0)}},
                               {"spaces": {"1": [[1, 0], [0, 1]], "2": [[1, 0], [0, 1], [0, 0]]}}],
                     "factors": [step(("1", 1)), step(("1", 1)), step(("2", 1))]},
        "P1P1P2_b": {"module": "P1P1P2",
                     "chain": [{"spaces": {"2": col(0, 0, 1)}},
                               {"spaces": {"1": col(1, 0), "2": [[1, 0], [0, 0], [0, 1]]}}],
                     "factors": [step(("2", 1)), step(("1", 1)), step(("1", 1))]},
        "P1P1P2_c": {"module": "P1P1P2",
                     "chain": [{"spaces": {"1": col(1, 1), "2": col(1, 1, 0)}},
                               {"spaces": {"1": col(1, 1), "2": [[1, 0], [1, 0], [0, 1]]}}],
                     "factors": [step(("1", 1)), step(("2", 1)), step(("1", 1))]},
        "P1P1P2_coarse": {"module": "P1P1P2", "chain": [], "factors": [step(("1", 2), ("2", 1))]},
    },
    "endomorphisms": {
        "pick_P1_P2": {"module": "P1P1P2", "maps": {"1": [[1, 0], [0, 0]],
                                                     "2": [[1, 0, 0], [0, 0, 0], [0, 0, 1]]}},
        "identity": {"module": "P1P1P2", "maps": {"1": [[1, 0], [0, 1]],
                                                   "2": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}},
        "zero": {"module": "P1P1P2", "maps": {}},
        "double": {"module": "P1P1P2", "maps": {"1": [[2, 0], [0, 2]],
                                                 "2": [[2, 0, 0], [0, 2, 0], [0, 0, 2]]}},
    },
    "symbolic": {
        "unsorted": {"steps": [{"omega": "2", "card": {"finite": 2}}, {"omega": "1", "card": {"aleph": 0}}]},
    },
}

simples_modules = {
    "S1": {"simple": "1"},
    "S2": {"simple": "2"},
    "P1": {"projective": "1"},
    "S1S2": {"direct_sum": ["S1", "S2"]},
    "P1S2": {"direct_sum": ["P1", "S2"]},
    "S1S2S2": {"direct_sum": ["S1", "S2", "S2"]},
    "R22": {"dims": {"1": 2, "2": 2}, "maps": {"a": [[1, 0], [0, 0]]}},
    "zero": {"zero": True},
}

simples_filtrations = {
    "P1_socle": {"module": "P1", "chain": [{"spaces": {"2": col(1)}}],
                 "factors": [step(("2", 1)), step(("1", 1))]},
    "S1S2_a": {"module": "S1S2", "chain": [{"spaces": {"1": col(1)}}],
               "factors": [step(("1", 1)), step(("2", 1))]},
    "S1S2_b": {"module": "S1S2", "chain": [{"spaces": {"2": col(1)}}],
               "factors": [step(("2", 1)), step(("1", 1))]},
    "P1S2_socle_first": {"module": "P1S2",
                         "chain": [{"spaces": {"2": col(1, 0)}}, {"spaces": {"2": [[1, 0], [0, 1]]}}],
                         "factors": [step(("2", 1)), step(("2", 1)), step(("1", 1))]},
    "P1S2_summand_first": {"module": "P1S2",
                           "chain": [{"spaces": {"2": col(0, 1)}}, {"spaces": {"2": [[1, 0], [0, 1]]}}],
                           "factors": [step(("2", 1)), step(("2", 1)), step(("1", 1))]},
    "P1S2_twisted": {"module": "P1S2",
                     "chain": [{"spaces": {"2": col(1, 1)}}, {"spaces": {"2": [[1, 0], [0, 1]]}}],
                     "factors": [step(("2", 1)), step(("2", 1)), step(("1", 1))]},
    "P1S2_coarse": {"module": "P1S2", "chain": [{"spaces": {"2": [[1, 0], [0, 1]]}}],
                    "factors": [step(("2", 2)), step(("1", 1))]},
    "S1S2S2_up": {"module": "S1S2S2",
                  "chain": [{"spaces": {"1": col(1)}}, {"spaces": {"1": col(1), "2": col(1, 0)}}],
                  "factors": [step(("1", 1)), step(("2", 1)), step(("2", 1))]},
    "S1S2S2_down": {"module": "S1S2S2",
                    "chain": [{"spaces": {"2": col(0, 1)}}, {"spaces": {"2": [[1, 0], [0, 1]]}}],
                    "factors": [step(("2", 1)), step(("2", 1)), step(("1", 1))]},
    "R22_chain": {"module": "R22",
                  "chain": [{"spaces": {"2": col(1, 0)}}, {"spaces": {"1": col(1, 0), "2": col(1, 0)}},
                            {"spaces": {"1": col(1, 0), "2": [[1, 0], [0, 1]]}}],
                  "factors": [step(("2", 1)), step(("1", 1)), step(("2", 1)), step(("1", 1))]},
    "R22_sorted": {"module": "R22",
                   "chain": [{"spaces": {"2": [[1, 0], [0, 1]]}}],
                   "factors": [step(("2", 2)), step(("1", 2))]},
}

symbolic = {
    "unsorted": {"steps": [{"omega": "1", "card": {"aleph": 0}}, {"omega": "2", "card": {"finite": 3}}]},
    "mergeable": {"steps": [{"omega": "2", "card": {"finite": 3}}, {"omega": "2", "card": {"aleph": 0}},
                            {"omega": "1", "card": {"finite": 1}}]},
    "empty": {"steps": []},
}

a2_simples = {
    "description": "A2 = 1 -> 2 over GF(5); the system of simples with 1 <= 2.",
    "algebra": A2,
    "modules": simples_modules,
    "systems": {"simples": {"omega": ["1", "2"], "preorder_pairs": [["1", "2"]],
                            "delta": {"1": "S1", "2": "S2"}}},
    "filtrations": simples_filtrations,
    "symbolic": symbolic,
}

a2_simples_discrete = {
    "description": "The simples of A2 with the discrete preorder; fails the Ext condition at (1, 2).",
    "algebra": A2,
    "modules": {"S1": {"simple": "1"}, "S2": {"simple": "2"}},
    "systems": {"simples_discrete": {"omega": ["1", "2"], "preorder_pairs": [],
                                     "delta": {"1": "S1", "2": "S2"}}},
}

a3_projectives = {
    "description": "A3 = 1 -> 2 -> 3 over GF(5); the system of indecomposable projectives.",
    "algebra": A3,
    "modules": {
        "P1": {"projective": "1"}, "P2": {"projective": "2"}, "P3": {"projective": "3"},
        "S1": {"simple": "1"}, "S2": {"simple": "2"}, "S3": {"simple": "3"},
        "P1P2P3": {"direct_sum": ["P1", "P2", "P3"]},
        "P3P1": {"direct_sum": ["P3", "P1"]},
    },
    "systems": {"projectives": {"projective_system": True}},
    "filtrations": {
        # vertex 1: (P1); vertex 2: (P1, P2); vertex 3: (P1, P2, P3)
        "P1P2P3_up": {"module": "P1P2P3",
                      "chain": [{"spaces": {"3": col(0, 0, 1)}},
                                {"spaces": {"2": col(0, 1), "3": [[0, 0], [1, 0], [0, 1]]}}]},
        "P1P2P3_down": {"module": "P1P2P3",
                        "chain": [{"spaces": {"1": col(1), "2": col(1, 0), "3": col(1, 0, 0)}},
                                  {"spaces": {"1": col(1), "2": [[1, 0], [0, 1]],
                                              "3": [[1, 0], [0, 1], [0, 0]]}}]},
        "P1P2P3_coarse": {"module": "P1P2P3", "chain": []},
        # vertex 1: (P1); vertex 2: (P1); vertex 3: (P3, P1)
        "P3P1_a": {"module": "P3P1", "chain": [{"spaces": {"3": col(1, 0)}}]},
        "P3P1_b": {"module": "P3P1", "chain": [{"spaces": {"1": col(1), "2": col(1), "3": col(0, 1)}}]},
        "P3P1_twisted": {"module": "P3P1", "chain": [{"spaces": {"3": col(1, 1)}}]},
    },
}

for name, doc in [("a2_projectives", a2_projectives), ("a2_simples", a2_simples),
                  ("a2_simples_discrete", a2_simples_discrete), ("a3_projectives", a3_projectives)]:
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
    print("wrote", name)
