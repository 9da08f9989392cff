#!/usr/bin/env python3
"""Regenerate the bundled fixture corpus under src/uccasnacs/data/fixtures/.

Each sentence is given as token rows "FORM UPOS HEAD DEPREL [LEXCAT SS [SS2]] [smwe=G:I]"
plus an unrefined UCCA graph in bracket notation.
"""
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from uccasnacs.graph import parse_bracketed  # noqa: E402
from uccasnacs.ucca_io import write_passage  # noqa: E402

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "uccasnacs", "data", "fixtures")

LEXCAT = {"NOUN": "N", "PROPN": "N", "VERB": "V", "PRON": "PRON", "ADP": "P", "DET": "DET", "PUNCT": "PUNCT",
          "ADJ": "ADJ", "ADV": "ADV", "NUM": "NUM", "AUX": "AUX", "CCONJ": "CCONJ", "SCONJ": "SCONJ",
          "PART": "ADV", "SYM": "SYM"}

RULES = [
    ("ohm", """
        I PRON 2 nsubj
        went VERB 0 root
        to ADP 4 case P p.Goal p.Goal
        ohm PROPN 2 obl
        after SCONJ 6 mark P p.Explanation p.Time
        reading VERB 2 advcl
        some DET 6 obj
        of ADP 10 case P p.Quantity p.Whole
        the DET 10 det
        reviews NOUN 7 nmod""",
     "[H [A I] [P went] [A [R to] [C ohm]]] [L after] "
     "[H [P reading] [A [Q some] [R of] [F the] [C reviews]] [A* @1]]"),
    ("service", """
        Wonderful ADJ 2 amod
        service NOUN 0 root
        for ADP 5 case P p.Beneficiary
        large ADJ 5 amod
        group NOUN 2 nmod
        ! PUNCT 2 punct""",
     "[H [D Wonderful] [P service] [A [R for] [E large] [C group]] [U !]]"),
    ("quit", """
        Quit VERB 0 root
        with ADP 4 case P p.Theme
        the DET 4 det
        overstatements NOUN 1 obl
        ! PUNCT 1 punct""",
     "[H [D Quit] [P [R with] [F the] [C overstatements]] [U !]]"),
    ("cheapest", """
        Cheapest ADJ 2 amod
        drinks NOUN 0 root
        in ADP 4 case P p.Locus
        Keene PROPN 2 nmod""",
     "[H [E Cheapest] [C drinks] [E [R in] [C Keene]]]"),
    ("paperwork", """
        10 NUM 2 nummod
        minutes NOUN 0 root
        of ADP 4 case P p.Quantity
        paperwork NOUN 2 nmod""",
     "[H [D [Q 10] [C minutes]] [R of] [P paperwork]]"),
    ("amount", """
        No DET 2 det
        amount NOUN 8 nsubj
        of ADP 4 case P p.Quantity p.Whole
        sugar NOUN 2 nmod
        and CCONJ 6 cc
        milk NOUN 4 conj
        can AUX 8 aux
        mask VERB 0 root
        it PRON 8 obj
        . PUNCT 8 punct""",
     "[H [A [Q [E No] [C amount]] [R of] [C [C sugar] [N and] [C milk]]] [D can] [P mask] [A it] [U .]]"),
    ("top", """
        We PRON 2 nsubj
        reached VERB 0 root
        the DET 4 det
        top NOUN 2 obj
        of ADP 7 case P p.Whole
        the DET 7 det
        mountain NOUN 4 nmod
        . PUNCT 2 punct""",
     "[H [A We] [P reached] [A [F the] [C top] [C [R of] [F the] [C mountain]]] [U .]]"),
    ("agreement", """
        It PRON 6 nsubj
        was AUX 6 cop
        not PART 6 advmod
        in ADP 6 case P p.Locus
        the DET 6 det
        agreement NOUN 0 root
        . PUNCT 6 punct""",
     "[H [A It] [F was] [D not] [S in] [A [F the] [C agreement]] [U .]]"),
    ("back", """
        They PRON 3 nsubj
        were AUX 3 cop
        back ADV 0 root P p.Goal
        quickly ADV 3 advmod
        . PUNCT 3 punct""",
     "[H [A They] [F were] [S back] [D quickly] [U .]]"),
    ("before", """
        Call VERB 0 root
        us PRON 1 obj
        before SCONJ 5 mark P p.Time
        you PRON 5 nsubj
        go VERB 1 advcl
        . PUNCT 1 punct""",
     "[H [P Call] [A us]] [L before] [H [A you] [P go]] [U .]"),
    ("bestplace", """
        It PRON 5 nsubj
        is AUX 5 cop
        the DET 5 det
        best ADJ 5 amod
        place NOUN 0 root
        to PART 7 mark INF.P p.Purpose
        eat VERB 5 acl
        . PUNCT 5 punct""",
     "[H [A It] [F is] [S [F the] [E best] [C place] [E [F to] [P eat]]] [U .]]"),
    ("relax", """
        I PRON 2 nsubj
        went VERB 0 root
        there ADV 2 advmod
        to PART 5 mark INF.P p.Purpose
        relax VERB 2 advcl
        . PUNCT 2 punct""",
     "[H [A I] [P went] [A there] [A [F to] [P relax]] [U .]]"),
    ("bus", """
        We PRON 2 nsubj
        left VERB 0 root
        early ADV 2 advmod
        to PART 5 mark INF.P p.Purpose
        catch VERB 2 advcl
        the DET 7 det
        bus NOUN 5 obj
        . PUNCT 2 punct""",
     "[H [A We] [P left] [T early]] [L to] [H [P catch] [A [F the] [C bus]] [A* @1]] [U .]"),
    ("drove", """
        We PRON 2 nsubj
        drove VERB 0 root
        down ADV 2 advmod P p.Direction
        to ADP 6 case P p.Goal
        Stevens PROPN 6 compound N _ smwe=1:1
        Creek PROPN 2 obl _ _ smwe=1:2
        . PUNCT 2 punct""",
     "[H [A We] [P drove] [D down] [A [R to] [C Stevens Creek]] [U .]]"),
    ("wayback", """
        The DET 2 det
        way NOUN 5 nsubj
        back ADV 2 advmod P p.Direction
        was AUX 5 cop
        long ADJ 0 root
        . PUNCT 5 punct""",
     "[H [A [F The] [C way] [E back]] [F was] [S long] [U .]]"),
    ("about", """
        I PRON 2 nsubj
        bought VERB 0 root
        about ADV 4 advmod P p.Approximator
        half NOUN 2 obj
        of ADP 7 case P p.Quantity p.Whole
        the DET 7 det
        furniture NOUN 4 nmod
        . PUNCT 2 punct""",
     "[H [A I] [P bought] [A [Q [E about] [C half]] [R of] [F the] [C furniture]] [U .]]"),
    ("ourcompany", """
        Our PRON 2 nmod:poss PRON.POSS p.Gestalt
        company NOUN 6 nsubj
        was AUX 6 aux
        just ADV 6 advmod
        getting AUX 6 aux
        started VERB 0 root
        . PUNCT 6 punct""",
     "[H [A [A Our] [S company]] [F was] [D just] [D getting] [P started] [U .]]"),
    ("ourfood", """
        we PRON 2 nsubj
        got VERB 0 root
        our PRON 4 nmod:poss PRON.POSS p.Possessor
        food NOUN 2 obj
        . PUNCT 2 punct""",
     "[H [A we] [P got] [A [E our] [C food]] [U .]]"),
    ("intown", """
        We PRON 2 nsubj
        stayed VERB 0 root
        in ADP 4 case PP p.Locus p.Locus smwe=1:1
        town NOUN 2 obl _ _ _ smwe=1:2
        . PUNCT 2 punct""",
     "[H [A We] [P stayed] [A in town] [U .]]"),
    ("becauseof", """
        We PRON 2 nsubj
        left VERB 0 root
        because ADP 6 case P p.Explanation p.Explanation smwe=1:1
        of ADP 3 fixed _ _ _ smwe=1:2
        the DET 6 det
        rain NOUN 2 obl
        . PUNCT 2 punct""",
     "[H [A We] [P left] [A [R because of] [F the] [C rain]] [U .]]"),
    ("restaurant", """
        We PRON 2 nsubj
        met VERB 0 root
        the DET 4 det
        restaurant NOUN 6 nmod:poss
        's PART 4 case POSS p.Possessor
        owner NOUN 2 obj
        . PUNCT 2 punct""",
     "[H [A We] [P met] [A [A [F the] [C restaurant] [R 's]] [S owner]] [U .]]"),
]

LIMITATIONS = [
    ("asas", """
        Rates NOUN 4 nsubj
        are AUX 4 cop
        as ADV 4 advmod P p.Extent
        low ADJ 0 root
        as ADV 4 advmod P p.ComparisonRef
        5 NUM 7 nummod
        % SYM 4 obl
        . PUNCT 4 punct""",
     "[H [A Rates] [F are] [D as@3 as@5] [S low@4] [A [Q 5@6] [C %@7]] [U .@8]]"),
    ("coordination", """
        We PRON 2 nsubj
        went VERB 0 root
        to ADP 4 case P p.Goal
        Paris PROPN 2 obl
        and CCONJ 7 cc
        to ADP 7 case P p.Goal
        Rome PROPN 4 conj
        . PUNCT 2 punct""",
     "[H [A We] [P went] [A [C [R to] [C Paris]] [N and] [C [R to] [C Rome]]] [U .]]"),
]


def rows(sent_id, block):
    lines = [f"# sent_id = {sent_id}"]
    toks = [line.split() for line in block.strip().splitlines()]
    lines.append("# text = " + " ".join(t[0] for t in toks))
    for i, t in enumerate(toks, 1):
        smwe = "_"
        if t[-1].startswith("smwe="):
            smwe = t.pop()[5:]
        form, upos, head, deprel = t[:4]
        rest = t[4:] + ["_"] * (3 - len(t[4:]))
        lexcat, ss, ss2 = rest[:3]
        if lexcat == "_" and smwe.endswith(":1") or (lexcat == "_" and smwe == "_"):
            lexcat = LEXCAT[upos]
        if smwe != "_" and not smwe.endswith(":1"):
            lexcat = "_"
        if ss != "_" and ss2 == "_":
            ss2 = ss
        lemma = form.lower() if upos != "PROPN" else form
        lexlemma = "_" if lexcat == "_" else lemma
        if smwe == "_":
            tag = f"O-{lexcat}" + (f"-{ss}" if ss != "_" else "")
        else:
            tag = (f"B-{lexcat}" + (f"-{ss}" if ss != "_" else "")) if smwe.endswith(":1") else "I_"
        cols = [str(i), form, lemma, upos, "_", "_", head, deprel, f"{head}:{deprel}", "_",
                smwe, lexcat, lexlemma, ss, ss2, "_", "_", "_", tag]
        lines.append("\t".join(cols))
    return "\n".join(lines) + "\n\n"


def build(name, items):
    with open(os.path.join(OUT, f"{name}.conllulex"), "w", encoding="utf-8") as f:
        for sent_id, block, _ in items:
            f.write(rows(sent_id, block))
    directory = os.path.join(OUT, name)
    os.makedirs(directory, exist_ok=True)
    for sent_id, _, ucca in items:
        write_passage(parse_bracketed(ucca, sent_id), directory)


if __name__ == "__main__":
    build("rules", RULES)
    build("limitations", LIMITATIONS)
