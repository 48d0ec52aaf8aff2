"""Finite truncations of the dual complex: cells of dimension 0, 1 and 2.

Cells are words; the truncation keeps every word of length at most
``max_len`` whose boundary cells are kept as well.  Internally a word is a
tuple of small integers (letter ids of one rank), which keeps skeletons with
a few hundred thousand cells manageable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.csgraph import connected_components

from .permgroup import Perm, all_perms, generator
from .words import Word, edge_endpoints, letter_boundary, normal_form

IntWord = Tuple[int, ...]


@dataclass
class Alphabet:
    n: int
    letters: List[Perm]
    index: Dict[Perm, int]

    @staticmethod
    @lru_cache(maxsize=None)
    def of(n: int) -> "Alphabet":
        lets = sorted((s for s in all_perms(n) if not s.is_identity()), key=lambda s: (s.inv, s.images))
        return Alphabet(n, lets, {s: i for i, s in enumerate(lets)})

    def gen(self, i: int) -> int:
        return self.index[generator(self.n, i)]

    def encode(self, w: Word) -> IntWord:
        return tuple(self.index[s] for s in w.letters)

    def decode(self, w: IntWord) -> Word:
        return Word([self.letters[i] for i in w], self.n)


@dataclass
class SkeletonComplex:
    n: int
    max_len: int
    cells: Tuple[List[IntWord], List[IntWord], List[IntWord]]
    d1: sparse.csr_matrix
    d2: sparse.csr_matrix
    alphabet: Alphabet = field(repr=False)

    def words(self, dim: int) -> List[Word]:
        return [self.alphabet.decode(w) for w in self.cells[dim]]

    def sizes(self) -> Tuple[int, int, int]:
        return tuple(len(c) for c in self.cells)


def _edge_table(alpha: Alphabet):
    """For each inv-2 letter id: (lo generator ids, hi generator ids)."""
    out = {}
    for s in alpha.letters:
        if s.inv == 2:
            lo, hi = edge_endpoints(Word([s], alpha.n))
            out[alpha.index[s]] = (alpha.encode(lo), alpha.encode(hi))
    return out


def _face_table(alpha: Alphabet):
    """For each inv-3 letter id: list of (coefficient, edge word)."""
    out = {}
    for s in alpha.letters:
        if s.inv == 3:
            out[alpha.index[s]] = [(v, alpha.encode(w)) for w, v in letter_boundary(s).items()]
    return out


def build_skeleton(n: int, max_len: int) -> SkeletonComplex:
    alpha = Alphabet.of(n)
    gens = [alpha.gen(i) for i in range(1, n + 1)]
    edges_of = _edge_table(alpha)
    faces_of = _face_table(alpha)

    verts: List[IntWord] = [()]
    for ln in range(1, max_len + 1):
        verts.extend(product(gens, repeat=ln))
    vidx = {w: k for k, w in enumerate(verts)}

    edges: List[IntWord] = []
    rows, cols, vals = [], [], []
    for ln in range(1, max_len + 1):
        for e_id, (lo, hi) in edges_of.items():
            if ln - 1 + max(len(lo), len(hi)) > max_len:
                continue
            for p in range(ln):
                for rest in product(gens, repeat=ln - 1):
                    pre, post = rest[:p], rest[p:]
                    col = len(edges)
                    edges.append(pre + (e_id,) + post)
                    rows += [vidx[pre + hi + post], vidx[pre + lo + post]]
                    cols += [col, col]
                    vals += [1, -1]
    d1 = sparse.csr_matrix((vals, (rows, cols)), shape=(len(verts), len(edges)), dtype=np.int64)
    eidx = {w: k for k, w in enumerate(edges)}

    faces: List[IntWord] = []
    rows, cols, vals = [], [], []

    def add_face(word: IntWord, chain: Sequence[Tuple[int, IntWord]]):
        if any(w not in eidx for _, w in chain):
            return
        col = len(faces)
        faces.append(word)
        for v, w in chain:
            rows.append(eidx[w])
            cols.append(col)
            vals.append(v)

    for ln in range(1, max_len + 1):
        # one letter of inversion number three
        for f_id, chain in faces_of.items():
            for p in range(ln):
                for rest in product(gens, repeat=ln - 1):
                    pre, post = rest[:p], rest[p:]
                    add_face(pre + (f_id,) + post, [(v, pre + w + post) for v, w in chain])
        # two letters of inversion number two: Leibniz rule, second term negated
        if ln < 2:
            continue
        for p in range(ln):
            for q in range(p + 1, ln):
                for e1, e2 in product(edges_of, repeat=2):
                    lo1, hi1 = edges_of[e1]
                    lo2, hi2 = edges_of[e2]
                    for rest in product(gens, repeat=ln - 2):
                        a, b, c = rest[:p], rest[p:q - 1], rest[q - 1:]
                        word = a + (e1,) + b + (e2,) + c
                        chain = [(1, a + hi1 + b + (e2,) + c), (-1, a + lo1 + b + (e2,) + c),
                                 (-1, a + (e1,) + b + hi2 + c), (1, a + (e1,) + b + lo2 + c)]
                        add_face(word, chain)
    d2 = sparse.csr_matrix((vals, (rows, cols)), shape=(len(edges), len(faces)), dtype=np.int64)
    return SkeletonComplex(n, max_len, (verts, edges, faces), d1, d2, alpha)


def boundary_matrix(c: SkeletonComplex, dim: int) -> sparse.csr_matrix:
    if dim == 1:
        return c.d1
    if dim == 2:
        return c.d2
    raise ValueError("only dimensions 1 and 2 are built")


def dd_is_zero(c: SkeletonComplex) -> bool:
    return (c.d1 @ c.d2).count_nonzero() == 0


@dataclass(frozen=True)
class Components:
    count: int
    core_len: int
    labels: np.ndarray              # one label per vertex of the whole skeleton
    representatives: Tuple[Word, ...]


def components(c: SkeletonComplex, core_len: int | None = None) -> Components:
    """Connected components met by vertices of length at most ``core_len``.

    Vertices near the length bound lack room for the moves that lengthen a
    word, so the full truncation always over-counts; by default the core
    leaves two letters of slack.
    """
    if core_len is None:
        core_len = max(c.max_len - 2, 0)
    nv = len(c.cells[0])
    coo = c.d1.tocoo()
    # each edge column has one +1 (plus end) and one -1 (minus end)
    plus = np.empty(c.d1.shape[1], dtype=np.int64)
    minus = np.empty(c.d1.shape[1], dtype=np.int64)
    plus[coo.col[coo.data > 0]] = coo.row[coo.data > 0]
    minus[coo.col[coo.data < 0]] = coo.row[coo.data < 0]
    adj = sparse.coo_matrix((np.ones(len(plus)), (plus, minus)), shape=(nv, nv))
    _, labels = connected_components(adj, directed=False)
    reps: Dict[int, IntWord] = {}
    for k, w in enumerate(c.cells[0]):
        if len(w) > core_len:
            break  # vertices are listed by length
        lab = int(labels[k])
        if lab not in reps:
            reps[lab] = w
    ordered = tuple(normal_form(c.alphabet.decode(w)) for w in sorted(reps.values(), key=lambda w: (len(w), w)))
    return Components(len(reps), core_len, labels, ordered)


def stable_component_count(n: int, core_len: int = 4, limit: int = 12) -> Tuple[int, List[int]]:
    """Grow ``max_len`` past ``core_len`` until two consecutive counts agree."""
    history: List[int] = []
    for L in range(core_len + 1, limit + 1):
        history.append(components(build_skeleton(n, L), core_len).count)
        if len(history) >= 2 and history[-1] == history[-2]:
            return history[-1], history
    raise RuntimeError(f"no plateau up to max_len={limit}")


def hat_partition_agrees(c: SkeletonComplex, comp: Components) -> bool:
    """Same component iff equal hat, among nonempty core vertices."""
    by_label: Dict[int, object] = {}
    by_hat: Dict[object, int] = {}
    for k, w in enumerate(c.cells[0]):
        if len(w) > comp.core_len:
            break
        if not w:
            continue
        h = c.alphabet.decode(w).hat
        lab = int(comp.labels[k])
        if by_label.setdefault(lab, h) != h or by_hat.setdefault(h, lab) != lab:
            return False
    return True


def component_counts(n: int, max_lens: Sequence[int], core_len: int) -> List[int]:
    return [components(build_skeleton(n, L), core_len).count for L in max_lens]


def to_json(c: SkeletonComplex) -> str:
    def triplets(m):
        coo = m.tocoo()
        order = np.lexsort((coo.row, coo.col))
        return [[int(coo.row[k]), int(coo.col[k]), int(coo.data[k])] for k in order]

    doc = {
        "schema": "itinerary-lab/1",
        "n": c.n,
        "max_len": c.max_len,
        "cells": {str(d): [str(w) or "()" for w in c.words(d)] for d in range(3)},
        "boundary": {"1": triplets(c.d1), "2": triplets(c.d2)},
    }
    return json.dumps(doc, sort_keys=True)


def to_text(c: SkeletonComplex) -> str:
    """One line per cell: ``dim  word  boundary-chain``."""
    from .words import chain_str

    lines = []
    mats = {1: c.d1.tocsc(), 2: c.d2.tocsc()}
    for d in range(3):
        for k, w in enumerate(c.cells[d]):
            if d == 0:
                chain = "0"
            else:
                col = mats[d][:, k]
                lower = c.cells[d - 1]
                ch = {c.alphabet.decode(lower[r]): int(v) for r, v in zip(col.indices, col.data)}
                chain = chain_str(ch)
            lines.append(f"{d}\t{str(c.alphabet.decode(w)) or '()'}\t{chain}")
    return "\n".join(lines) + "\n"
