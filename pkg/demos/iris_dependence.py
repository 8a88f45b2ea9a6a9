"""
Dependence between iris species blocks
======================================

Energy distance, distance covariance and distance correlation on the
bundled iris measurements, with the three species as separate samples.
"""

import numpy as np

import estat

iris = estat.load_iris().values
setosa, versicolor, virginica = iris[:50], iris[50:100], iris[100:]

# how far apart the species are, scaled by n m / (n + m)
print("edist(setosa, versicolor) =", round(estat.edist(setosa, versicolor), 4))
print(np.round(estat.edist_matrix([setosa, versicolor, virginica]).values, 4))

# pairing the rows of two species is arbitrary, so any dependence is noise;
# the biased correlation is still positive, the bias-corrected one is not
res = estat.dcor(setosa, versicolor)
res_bc = estat.dcor(setosa, versicolor, bias_corrected=True)
for key, value in res.as_dict().items():
    print(f"{key:6s} {value: .7f}   bias-corrected {res_bc.as_dict()[key]: .9f}")

# partial correlation removes what virginica explains of both
print("pdcor =", round(estat.pdcor(setosa, versicolor, virginica), 8))

# a real dependence, for contrast: petal length against petal width
print("dcor(petal length, petal width) =", round(estat.dcor(iris[:, 2], iris[:, 3]).dcor, 4))
