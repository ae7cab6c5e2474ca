# One-time cross-check of the class group fixtures with PARI (cypari).
from cypari import pari

pari.allocatemem(2 * 10**9)

for f in ["x^3-x-1", "x^3+4*x-1", "x^3-11", "x^3-2", "x^3-7", "x^3-19", "x^3+x-3",
          "x^3-4914*x^2-9828*x-4914", "x^3-62505*x^2-125010*x-62505"]:
    K = pari.bnfinit(pari(f), 1)
    print(f, pari.nfdisc(pari(f)), K.bnf_get_cyc())

# The d = -7, n = 3 ideal B: norm 7, class of order 3, B^3 = beta O_K.
print(pari(
    "K=bnfinit(x^3-62505*x^2-125010*x-62505,1);"
    "B=idealadd(K,idealadd(K,7,16/3+x/9),142/63+17*x/189+x^2/567);"
    "[idealnorm(K,B), K.cyc, bnfisprincipal(K,B,0), bnfisprincipal(K,idealpow(K,B,3),0),"
    " idealhnf(K,1/3-62507/9*x+x^2/9)==idealpow(K,B,3)]"))
