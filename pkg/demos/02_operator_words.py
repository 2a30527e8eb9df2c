# Operator words and the word problem
# -----------------------------------
# Words over the generators I<i> (integrate), D<i> (differentiate),
# p<i> (project a codomain coordinate), q<i> / Q<i> (substitute the upper
# or lower integration endpoint) act on polynomial functions, rightmost
# generator first.  The relation table turns into a canonical form, and
# a semantic oracle decides the remaining equalities.

from idcalc import (apply_word, format_polyfun, normalize, parse_polyfun,
                    parse_word, word_eq, Equal, NotEqual)

f = parse_polyfun("poly 1->1 on (0,1) : 1 x1^2")

# The upper endpoint substitution is the derivative of the integral.
print("q1 acting on x^2:      ", format_polyfun(apply_word(parse_word("q1"), f)))
print("D2 I1 acting on x^2:   ", format_polyfun(apply_word(parse_word("D2 I1"), f)))
print("Q1 acting on x^2:      ", format_polyfun(apply_word(parse_word("Q1"), f)))

# Normal forms expand the substitutions and sort the rest.
for text in ("q1", "Q1", "I1 I2", "p1 p4", "I2 D1 q3"):
    print(f"normalize {text!r:14} ->", normalize(parse_word(text)))

# Word equality: identical normal forms decide most pairs; a battery of
# random exact polynomials separates the rest.
pairs = [("q1", "D2 I1"), ("D1 I1", "D2 I1"), ("I1 I2", "I3 I1")]
for a, b in pairs:
    verdict = word_eq(parse_word(a), parse_word(b))
    if isinstance(verdict, Equal):
        print(f"{a!r} == {b!r}")
    elif isinstance(verdict, NotEqual):
        print(f"{a!r} != {b!r}, witness {format_polyfun(verdict.witness)}")
    else:
        print(f"{a!r} ?? {b!r}")
