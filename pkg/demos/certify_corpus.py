"""Run the certifying colouring pipeline over the whole corpus and show the
dichotomy: a verified proper colouring, or a verified refutation of
t-perfection."""

from tperfect.colouring import certify, verify_colouring
from tperfect.corpus import corpus_names, make

for name in corpus_names():
    g = make(name)
    cert = certify(g)
    if cert.kind == "colouring":
        verify_colouring(g, cert.colouring)
        print(f"{name}: coloured with {cert.colouring.num_colours} colours (verified)")
    else:
        print(f"{name}: not t-perfect (witness verified)")
