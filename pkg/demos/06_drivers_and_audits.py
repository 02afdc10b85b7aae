"""Driving sequences and how to audit them.

A driver picks which map fires at each step. Cyclic drivers round-robin a
permutation, i.i.d. drivers sample from fixed weights, and the disjunctive
enumeration concatenates every word over the alphabet in length-then-lex
order. Only finite prefixes can ever be audited, so the package pairs every
driver with window audits: which words of length m actually occur.
"""

from ifslab import (
    Custom,
    Cyclic,
    DisjunctiveEnumeration,
    IidRandom,
    check_disjunctive,
    check_repetitive,
    enumeration_prefix_length,
    generate,
)

print("cyclic (1,2,3):     ", generate(Cyclic((1, 2, 3)), 12).tolist())
print("iid seed 7:         ", generate(IidRandom.uniform(7, 3), 12).tolist())
print("enumeration N=2:    ", generate(DisjunctiveEnumeration(2), 20).tolist())
print("custom:             ", generate(Custom((2, 3, 1, 1)), 4).tolist())

# cyclic sequences repeat every symbol but are far from disjunctive
cyclic_seq = generate(Cyclic((1, 2)), 100).tolist()
audit = check_disjunctive(cyclic_seq, 2)
print(f"\ncyclic audit at m=2: {audit.found}/{audit.total_words} words, "
      f"missing {audit.missing}")
print(f"cyclic counts: {check_repetitive(cyclic_seq, 2).counts}")

# the enumeration is certifiably disjunctive: after sum(k N^k, k<=m) symbols
# every window of length m has appeared
for n in (2, 3):
    need = enumeration_prefix_length(3, n)
    seq = generate(DisjunctiveEnumeration(n), need).tolist()
    ok = check_disjunctive(seq, 3, alphabet_size=n).complete
    print(f"\nenumeration N={n}: prefix of {need} symbols covers all "
          f"{n ** 3} windows of length 3: {ok}")

# iid prefixes with positive weights are disjunctive in practice; audit anyway
seq = generate(IidRandom.uniform(11, 3), 5000).tolist()
print(f"\niid N=3, 5000 symbols, m=3 audit complete: "
      f"{check_disjunctive(seq, 3, alphabet_size=3).complete}")
