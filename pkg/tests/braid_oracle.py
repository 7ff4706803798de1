"""Independent brute-force enumerator for braid fixed points.

Uses only the table and plain Python loops; shares no code with the library.
"""

import itertools


def apply_letter(rows, x, letter):
    x = list(x)
    i = abs(letter) - 1
    a, b = x[i], x[i + 1]
    if letter > 0:
        x[i], x[i + 1] = b, rows[a][b]
    else:
        # find c with c ▷ a = b, then (a, b) came from (c, a)
        c = next(c for c in range(len(rows)) if rows[c][a] == b)
        x[i], x[i + 1] = c, a
    return tuple(x)


def apply_word(rows, letters, x):
    for letter in letters:
        x = apply_letter(rows, x, letter)
    return x


def naive_fixed_points(rows, strands, letters):
    n = len(rows)
    return [x for x in itertools.product(range(n), repeat=strands) if apply_word(rows, letters, x) == x]
