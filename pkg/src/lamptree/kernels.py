"""Compiled inner loop for long runs of the projected walk on the tree.

The walker position is a stack of letter codes; a letter either cancels the
top of the stack or is pushed. Used for Green-kernel estimates, which need
``N * horizon`` in the 1e9 range.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def tree_walk_visits(u, prob, alias, atom_letters, atom_lens, inv, start, targets, target_lens, half):
    """Count visits to each target up to ``len(u)`` steps and up to ``half`` steps.

    ``u`` are uniforms driving alias sampling of the atoms; time 0 counts.
    """
    m = prob.shape[0]
    n = u.shape[0]
    width = atom_letters.shape[1]
    stack = np.empty(start.shape[0] + n * width + 1, np.int64)
    d = 0
    for i in range(start.shape[0]):
        stack[d] = start[i]
        d += 1
    T = targets.shape[0]
    visits = np.zeros(T, np.int64)
    visits_half = np.zeros(T, np.int64)
    for t in range(n + 1):
        if t > 0:
            x = u[t - 1] * m
            j = int(x)
            if j >= m:
                j = m - 1
            if x - j >= prob[j]:
                j = alias[j]
            for i in range(atom_lens[j]):
                c = atom_letters[j, i]
                if d > 0 and stack[d - 1] == inv[c]:
                    d -= 1
                else:
                    stack[d] = c
                    d += 1
        for k in range(T):
            if d != target_lens[k]:
                continue
            same = True
            for i in range(d):
                if stack[i] != targets[k, i]:
                    same = False
                    break
            if same:
                visits[k] += 1
                if t <= half:
                    visits_half[k] += 1
    return visits, visits_half
