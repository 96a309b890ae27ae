#!/usr/bin/env python3
# Independent high-precision evaluation of the four-bin sensor channel used by
# the unit tests. Values printed here are frozen into tests/*.cc.
from itertools import product

import mpmath as mp

mp.mp.dps = 40

px = {0: mp.mpf("0.7"), 1: mp.mpf("0.3")}
py = {0: mp.mpf("0.5"), 1: mp.mpf("0.5")}
sigma = mp.mpf("0.1")
edges = [mp.mpf("0.2"), mp.mpf("0.5"), mp.mpf("0.8")]


def bins(mean):
    cuts = [-mp.inf] + edges + [mp.inf]
    return [mp.ncdf((cuts[k + 1] - mean) / sigma) - mp.ncdf((cuts[k] - mean) / sigma)
            for k in range(len(cuts) - 1)]


gxy = {(x, y): bins(mp.mpf("0.6") * y + mp.mpf("0.4") * x) for x in (0, 1) for y in (0, 1)}
K = len(edges) + 1
gy = {y: [sum(px[x] * gxy[(x, y)][l] for x in (0, 1)) for l in range(K)] for y in (0, 1)}
gx = {x: [sum(py[y] * gxy[(x, y)][l] for y in (0, 1)) for l in range(K)] for x in (0, 1)}
pz = [sum(px[x] * py[y] * gxy[(x, y)][l] for x in (0, 1) for y in (0, 1)) for l in range(K)]

# Column-wise MAP of Y, lowest index on ties.
map_out = []
for l in range(K):
    s0, s1 = py[0] * gy[0][l], py[1] * gy[1][l]
    map_out.append(0 if s0 >= s1 else 1)
err = 1 - sum(py[map_out[l]] * gy[map_out[l]][l] for l in range(K))

# Direct double sum for H(X|Yhat) of the MAP estimator (bits).
joint = {(x, i): sum(px[x] * gx[x][l] for l in range(K) if map_out[l] == i) for x in (0, 1) for i in (0, 1)}
hx = -sum(p * mp.log(p, 2) for p in px.values())
hcond = mp.mpf(0)
for i in (0, 1):
    pi = joint[(0, i)] + joint[(1, i)]
    for x in (0, 1):
        if joint[(x, i)] > 0:
            hcond -= joint[(x, i)] * mp.log(joint[(x, i)] / pi, 2)

print("map_columns", map_out)
print("map_error", mp.nstr(err, 17))
print("H(X)", mp.nstr(hx, 17))
print("H(X|Yhat) map", mp.nstr(hcond, 17))
print("I(X;Yhat) map", mp.nstr(hx - hcond, 17))
print("Phi_N(5)", mp.nstr(mp.ncdf(5), 20), "1-", mp.nstr(1 - mp.ncdf(5), 10))
print("Phi_N(1)", mp.nstr(mp.ncdf(1), 20))
print("Phi rows", [[mp.nstr(gx[x][l] - pz[l], 12) for l in range(K)] for x in (0, 1)])
print("binom(13,3)", mp.binomial(13, 3))
