"""Ordinals, Hardy functions and the word codes that carry them."""
from postembed import codes as C
from postembed import ordinals as O

# H^w(n) = 2n and H^(w^2)(n) = 2^n * n
for n in range(1, 6):
    print(n, O.hardy_eval(O.parse("w"), n, 10**6), O.hardy_eval(O.parse("w^2"), n, 10**6))

# the run behind H^(w*2)(2): every step is (ordinal, counter)
for c in O.hardy_trace(O.parse("w*2"), 2, 100):
    print(" ", O.render(c.ordinal), c.counter)

# codes over a0, a1 and #
x = C.lex("a1a0#")
print(C.show(x), "->", O.render(C.pi(x)))
print("pi^-1(w^w) =", C.show(C.pi_inverse(O.parse("w^w"), 2)))

impure = C.lex("a0a1#a1#")
print("purify", C.show(impure), "=", C.show(C.purify(impure)), "with the same value", O.render(C.pi(impure)))

# losing symbols never raises the Hardy value of a configuration
big = C.conf_encode(O.parse("w^2+w"), 2, 2)
small = big[1:-1]  # drop the first a0 and one #
print(C.show(small), "is a subword of", C.show(big))
print(O.hardy_eval(*C.conf_decode(small), 10**6), "<=", O.hardy_eval(*C.conf_decode(big), 10**6))
