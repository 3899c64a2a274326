"""From cosine polynomials to Cayley graphs and back.

For a set A of positive integers, the eigenvalues of Cay(Z/nZ, A u -A) are
exactly 2 sum_a cos(2 pi a xi / n); the smallest eigenvalue is twice the
minimum of f over the Fourier points. Subgroup-like sets keep the minimum
bounded; spread-out sets push it down.
"""

import eigencliques as ec
from eigencliques import chowla

for a in ([1], [1, 2], [1, 2, 3, 4, 5], [2, 4, 6, 8], [1, 4, 9, 16, 25]):
    rep = chowla.chowla_certificate(a)
    print(
        f"A = {a}: prime n = {rep.n}, lambda_min = {rep.lambda_min:8.4f}, "
        f"grid min f = {rep.grid_f:8.4f} at x = {rep.grid_x:.4f}, "
        f"residual = {rep.residual:.2e}, reference -|A|^0.1 = {rep.bound_target:.3f}"
    )

# inside a clique of a Cayley graph, some translate overlaps heavily
grp = chowla.cyclic_group(23)
g = chowla.cayley_graph(grp, [1, 2, 3, 4, 19, 20, 21, 22])
t, overlap = chowla.translate_overlap([0, 1, 2, 3, 4], g)
print(f"\nclique {{0..4}} in Cay(Z/23, ±{{1..4}}): shift t={t} overlaps in {overlap} points")

# M_Gamma vanishes exactly on subgroups, and near-subgroups are recoverable
grp = chowla.cyclic_group(24)
print(f"\nM_Gamma(subgroup {{0,6,12,18}}) = {chowla.m_gamma(grp, [0, 6, 12, 18]):.2e}")
out = chowla.subgroup_recover(grp, [0, 6, 12, 18, 3, 21])
print(f"perturbed set {{0,6,12,18,3,21}} -> recovered H = {out['H']}, |H symdiff A| = {out['sym_diff']}")
