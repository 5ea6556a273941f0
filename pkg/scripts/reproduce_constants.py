#!/usr/bin/env python3
"""Print the named closed-form constants of the gap analysis.

Each line shows the defining continued-fraction expression, the exact
field element it evaluates to, and a 7-digit decimal rendering.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from lagspec.parsing import evaluate, parse_expression

ROWS = [
    ("gap endpoint", "[3;3,3,2,1,(1,2)]+[0;2,1,(1,2)]"),
    ("center value of the reference sequence", "3+2*[0;3,2,1,(1,2)]"),
    ("max off-center envelope", "2+2*[0;(1,3)]"),
    ("(3,1) site limit", "[3;1,(1,3)]+[0;(3,1)]"),
    ("(3,2,2) site limit", "[3;2,2,(3,2)]+[0;(3,2)]"),
    ("(1,2,3,2,1) site limit", "[3;2,1,(2,1)]+[0;(2,1)]"),
    ("small-quotient ceiling", "2+2*[0;(1,2)]"),
    ("three-3s ceiling", "3+2*[0;3,(3,2)]"),
    ("3,3 with 2,1 ceiling", "[3;3,2,1,(2,1)]+[0;2,1,(1,2)]"),
    ("four-3s ceiling", "[3;3,3,3,3,2,1,(1,2)]+[0;2,1,(1,2)]"),
    ("ray threshold", "4+[0;3,2,1,1,(3,1,3,1,2,1)]+[0;4,3,2,2,(3,1,3,1,2,1)]"),
]


def main() -> int:
    width = max(len(name) for name, _ in ROWS)
    for name, expr in ROWS:
        value = evaluate(parse_expression(expr))
        print(f"{name:<{width}}  {expr}")
        print(f"{'':<{width}}  = {value} ≈ {value.approx(7)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
