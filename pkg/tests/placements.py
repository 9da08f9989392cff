"""Hand-derived placements for the rule-catalogue fixtures.

(sent_id, target position) -> (construction kind, categories of the refined
edge, yield of the refined unit, supersense, parent unit is a scene).
"""

EXPECTED = {
    ("ohm", 3): ("scene_modifier", {"A"}, (3, 4), "Goal", True),
    ("ohm", 5): ("linkage", {"H"}, (6, 7, 8, 9, 10), "Explanation", True),
    ("ohm", 8): ("quantity", {"Q"}, (7,), "Quantity", False),
    ("service", 3): ("scene_modifier", {"A"}, (3, 4, 5), "Beneficiary", True),
    ("quit", 2): ("nonscene_modifier", {"P"}, (2, 3, 4), "Theme", False),
    ("cheapest", 3): ("nonscene_modifier", {"E"}, (3, 4), "Locus", False),
    ("paperwork", 3): ("quantity", {"D"}, (1, 2), "Quantity", True),
    ("amount", 3): ("quantity", {"Q"}, (1, 2), "Quantity", False),
    ("top", 5): ("partitive", {"C"}, (5, 6, 7), "Whole", False),
    ("agreement", 4): ("predication", {"A"}, (5, 6), "Locus", True),
    ("back", 3): ("predication", {"S"}, (3,), "Goal", True),
    ("before", 3): ("linkage", {"H"}, (4, 5), "Time", True),
    ("bestplace", 6): ("infinitival_purpose", {"E"}, (6, 7), "Purpose", False),
    ("relax", 4): ("infinitival_purpose", {"A"}, (4, 5), "Purpose", True),
    ("bus", 4): ("linkage", {"H"}, (5, 6, 7), "Purpose", True),
    ("drove", 3): ("intransitive", {"D"}, (3,), "Direction", True),
    ("drove", 4): ("scene_modifier", {"A"}, (4, 5, 6), "Goal", True),
    ("wayback", 3): ("intransitive", {"E"}, (3,), "Direction", False),
    ("about", 3): ("approximator", {"E"}, (3,), "Approximator", False),
    ("about", 5): ("quantity", {"Q"}, (3, 4), "Quantity", False),
    ("ourcompany", 1): ("possessive_pronoun", {"A"}, (1,), "Gestalt", True),
    ("ourfood", 3): ("possessive_pronoun", {"E"}, (3,), "Possessor", False),
    ("intown", 3): ("pp_idiom", {"A"}, (3, 4), "Locus", True),
    ("becauseof", 3): ("scene_modifier", {"A"}, (3, 4, 5, 6), "Explanation", True),
    ("restaurant", 5): ("scene_modifier", {"A"}, (3, 4, 5), "Possessor", True),
}

# Known failures: (sent_id, target) -> expected reason prefix.
EXPECTED_FAILURES = {
    ("asas", 5): "conflict",
    ("coordination", 6): "no non-Center ancestor",
}

# Governor / object / configuration as resolved from the UD trees.
GOVOBJ = {
    ("ohm", 3): (2, 4, "default"),
    ("ohm", 5): (2, 6, "subordinating"),
    ("ohm", 8): (7, 10, "default"),
    ("agreement", 4): (1, 6, "predicative"),
    ("back", 3): (1, None, "predicative"),
    ("before", 3): (1, 5, "subordinating"),
    ("drove", 3): (2, None, "default"),
    ("ourfood", 3): (4, None, "possessive"),
    ("restaurant", 5): (6, 4, "possessive"),
    ("becauseof", 3): (2, 6, "default"),
    ("intown", 3): (2, None, "default"),
    ("coordination", 6): (2, 7, "default"),
}
