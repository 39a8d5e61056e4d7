"""Power-sum coefficient tables and Newton inversion.

For a fixed host, the t-th power sum of reciprocal partition-polynomial
roots decomposes over connected label sets S as p_t = sum_S a_t(S), where
the per-insect coefficients obey a convolution recurrence:

    a_1(S)  = w(S) for singletons,
    a_t(L)  = sum over ordered pairs (S1, S2) with S1 ∪ S2 = L,
              S2 connected, |S1| + |S2| <= t, of
              (-1)^(|S1|-1) * w(S1) * a_{t-|S1|}(S2)
            + (-1)^(t-1) * t * w(L)   when |L| = t,

with w(S) the signed edge-weight product of the insect induced by S
(boundary spins fixed to "-"). The ordered pairs are the 3-colorings
{S1 only, S2 only, both} of L pruned to connected S2, so at most 4^t of
them are scanned per label set and order; pairs too large to matter for
any order up to the requested maximum are never generated.

Label sets are handled as integer bitmasks throughout. The pair sum is
compressed before the per-order sweep: for a fixed (L, S2) all choices of
S1 with the same size i share the factor a_{t-i}(S2), so their signed
weights collapse into one row (L, S2, i). Rows are built with vectorized
subset expansion and the order sweep gathers row prefixes sorted by
i + |S2|, which is exactly the "pairs small enough for this order"
condition.

Elementary symmetric functions of the reciprocal roots follow from the
power sums by Newton's identities; with the all-minus normalization the
partition polynomial is sum_i (-1)^i e_i lam^i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hypergraph, Insect, IsingActivity, induced_insect
from .oracle import _edge_weights
from .subgraphs import DEFAULT_SET_CAP, ConnectedFamily, enumerate_connected

_CHUNK_PAIRS = 1 << 21   # cap on expanded (S1, S2) pairs held at once
_CHUNK_GROUPS = 1 << 16  # cap on (L, S2) groups per chunk (dense key space)


def insect_weight(ins: Insect) -> complex:
    """(-1)^|S| times the product of carried edge weights with the label
    set at spin "+" and everything else (including the boundary) at "-"."""
    plus = frozenset(ins.labels)
    w = complex(1.0) if len(ins.labels) % 2 == 0 else complex(-1.0)
    for e in ins.edges:
        w *= e.value_on(plus)
    return w


def insect_weight_of(g: Hypergraph, labels: Iterable[int]) -> complex:
    """Weight of the insect induced in g by a label set."""
    return insect_weight(induced_insect(g, labels))


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask_weights(g: Hypergraph, masks: np.ndarray) -> np.ndarray:
    """Vectorized insect weights (-1)^|S| prod phi_e for label-set masks."""
    sign = 1.0 - 2.0 * (np.bitwise_count(masks) & 1)
    return sign * _edge_weights(g, masks)


def _connected_submasks(lmask: int, nbr: Sequence[int]) -> list[int]:
    """All nonempty connected label subsets of lmask (host-edge traces).

    Grows sets one vertex at a time, carrying the edge neighborhood of
    each set so extension looks only at the newly added vertex.
    """
    cur = {1 << v: nbr[v] for v in _bits(lmask)}
    out = sorted(cur)
    while cur:
        grown: dict[int, int] = {}
        for s, reach in cur.items():
            cand = reach & lmask & ~s
            while cand:
                low = cand & -cand
                cand ^= low
                ns = s | low
                if ns not in grown:
                    grown[ns] = reach | nbr[low.bit_length() - 1]
        out.extend(sorted(grown))
        cur = grown
    return out


def _submasks_by_size(mask: int) -> tuple[np.ndarray, np.ndarray]:
    """All submasks of mask sorted by popcount, plus prefix offsets so the
    slice [:prefix[j+1]] holds every submask with at most j bits."""
    subs = np.zeros(1, dtype=np.int64)
    for v in _bits(mask):
        subs = np.concatenate([subs, subs | (1 << v)])
    counts = np.bitwise_count(subs)
    order = np.argsort(counts, kind="stable")
    subs = subs[order]
    counts = counts[order]
    k = mask.bit_count()
    prefix = np.searchsorted(counts, np.arange(k + 2), side="left")
    return subs, prefix


class _PyWeights:
    """Scalar insect-weight evaluation with a mask-keyed cache; used for
    hosts too large for int64 masks."""

    def __init__(self, g: Hypergraph):
        self._cache: dict[int, complex] = {}
        self._edges = []
        for e in g.edges:
            emask = 0
            for v in e.vertices:
                emask |= 1 << v
            beta = e.activity.beta if isinstance(e.activity, IsingActivity) else None
            self._edges.append((emask, beta, e.vertices, e.activity))

    def __call__(self, mask: int) -> complex:
        w = self._cache.get(mask)
        if w is not None:
            return w
        w = complex(1.0) if mask.bit_count() % 2 == 0 else complex(-1.0)
        for emask, beta, verts, activity in self._edges:
            part = mask & emask
            if not part:
                continue
            if beta is not None:
                if part != emask:
                    w *= beta
            else:
                local = 0
                for j, v in enumerate(verts):
                    local |= (mask >> v & 1) << j
                w *= activity.value(local, len(verts))
        self._cache[mask] = w
        return w


@dataclass(frozen=True)
class CoefficientTable:
    """Per-order maps from connected label sets to power-sum coefficients.

    tables[t-1] covers order t, keyed by label-set bitmask, with exactly
    the connected sets of size <= t. pair_scan_max[t-1] is the largest
    number of (S1, S2) pairs scanned for any one label set at order t
    (bounded by 4^t).
    """

    m: int
    tables: tuple[dict[int, complex], ...]
    pair_scan_max: tuple[int, ...]

    def coefficient(self, t: int, labels: Iterable[int]) -> complex:
        mask = 0
        for v in labels:
            mask |= 1 << v
        return self.tables[t - 1][mask]


def _binomial_prefix(depth: int) -> np.ndarray:
    """table[k, j] = number of submasks of a k-bit mask with < j bits."""
    table = np.zeros((depth + 1, depth + 2), dtype=np.int64)
    for k in range(depth + 1):
        acc = 0
        for j in range(depth + 2):
            table[k, j] = acc
            if j <= k:
                acc += math.comb(k, j)
    return table


def _build_rows(g: Hypergraph, m: int, set_masks: np.ndarray,
                set_sizes: np.ndarray, idx_of: dict[int, int], nbr):
    """Compressed pair rows (total, L index, S2 index, i, coeff, multiplicity).

    coeff accumulates (-1)^(i-1) w(S1) over the S1 of one size i within a
    (L, S2) group; multiplicity counts the underlying pairs so the 4^t
    scan rail can still be checked.
    """
    nsets = len(set_masks)
    gl: list[int] = []       # group -> L set index
    gc: list[int] = []       # group -> S2 set index
    gd: list[int] = []       # group -> mask of L \ S2
    for j in range(nsets):
        lmask = int(set_masks[j])
        subs = _connected_submasks(lmask, nbr)
        gl.extend([j] * len(subs))
        gc.extend(idx_of[s2] for s2 in subs)
        gd.extend(lmask & ~s2 for s2 in subs)
    gl = np.asarray(gl, dtype=np.int64)
    gc = np.asarray(gc, dtype=np.int64)
    gd = np.asarray(gd, dtype=np.int64)
    ngroups = len(gl)

    # One submask buffer per family set, each ordered by popcount; a
    # binomial prefix table turns the per-group cap |Y| <= m - |L| into a
    # prefix length without touching the masks.
    chunks = [_submasks_by_size(int(mask))[0] for mask in set_masks]
    sub_offsets = np.zeros(nsets + 1, dtype=np.int64)
    np.cumsum([len(c) for c in chunks], out=sub_offsets[1:])
    sub_buffer = np.concatenate(chunks) if chunks else np.zeros(0, np.int64)
    btab = _binomial_prefix(int(set_sizes.max()) if nsets else 0)
    eff = np.minimum(m - set_sizes[gl], set_sizes[gc])
    lens = btab[set_sizes[gc], eff + 1]

    # small hosts: one weight per possible mask, indexed directly
    w_all = (_mask_weights(g, np.arange(1 << g.n, dtype=np.int64))
             if g.n <= 20 else None)

    depth_plus = m + 1
    key_parts: list[np.ndarray] = []
    coef_parts: list[np.ndarray] = []
    mult_parts: list[np.ndarray] = []

    start = 0
    while start < ngroups:
        stop = start
        budget = 0
        while (stop < ngroups and budget + lens[stop] <= _CHUNK_PAIRS
               and stop - start < _CHUNK_GROUPS):
            budget += lens[stop]
            stop += 1
        stop = max(stop, start + 1)
        sel = slice(start, stop)
        chunk_lens = lens[sel]
        total = int(chunk_lens.sum())
        starts = np.zeros(stop - start, dtype=np.int64)
        np.cumsum(chunk_lens[:-1], out=starts[1:])
        within = np.arange(total, dtype=np.int64) - np.repeat(starts, chunk_lens)
        flat_sub = sub_buffer[np.repeat(sub_offsets[gc[sel]], chunk_lens) + within]
        rep_d = np.repeat(gd[sel], chunk_lens)
        rep_lid = np.repeat(np.arange(stop - start, dtype=np.int64), chunk_lens)
        s1 = rep_d | flat_sub
        keep = s1 != 0
        s1 = s1[keep]
        rep_lid = rep_lid[keep]
        sizes1 = np.bitwise_count(s1).astype(np.int64)
        if w_all is not None:
            w = w_all[s1]
        else:
            uniq, inv = np.unique(s1, return_inverse=True)
            w = _mask_weights(g, uniq)[inv]
        w *= 1.0 - 2.0 * ((sizes1 & 1) == 0)  # (-1)^(i-1)
        key = rep_lid * depth_plus + sizes1
        dense = (stop - start) * depth_plus
        mult = np.bincount(key, minlength=dense)
        coef = np.bincount(key, weights=w.real, minlength=dense).astype(
            np.complex128)
        coef += 1j * np.bincount(key, weights=w.imag, minlength=dense)
        used = np.flatnonzero(mult)
        key_parts.append(used + start * depth_plus)
        coef_parts.append(coef[used])
        mult_parts.append(mult[used])
        start = stop

    if key_parts:
        keys = np.concatenate(key_parts)
        coefs = np.concatenate(coef_parts)
        mults = np.concatenate(mult_parts)
    else:
        keys = np.zeros(0, dtype=np.int64)
        coefs = np.zeros(0, dtype=np.complex128)
        mults = np.zeros(0, dtype=np.int64)
    gids = keys // depth_plus
    row_i = keys % depth_plus
    row_l = gl[gids]
    row_c = gc[gids]
    totals = row_i + set_sizes[row_c]
    order = np.argsort(totals, kind="stable")
    return (totals[order], row_l[order], row_c[order], row_i[order],
            coefs[order], mults[order])


def _build_rows_python(g: Hypergraph, m: int, masks: list[int],
                       sizes: list[int], idx_of: dict[int, int], nbr,
                       weight: _PyWeights):
    """Row construction on unbounded python-int masks (hosts > 62 vertices)."""
    acc: dict[tuple[int, int, int], complex] = {}
    mult: dict[tuple[int, int, int], int] = {}
    for j, lmask in enumerate(masks):
        ycap = m - sizes[j]
        for s2 in _connected_submasks(lmask, nbr):
            cj = idx_of[s2]
            base = lmask & ~s2
            base_size = base.bit_count()
            s2_bits = _bits(s2)
            members: list[int] = [0]
            for v in s2_bits:
                members.extend([x | (1 << v) for x in members])
            for y in members:
                ysize = y.bit_count()
                if ysize > ycap:
                    continue
                s1 = base | y
                if not s1:
                    continue
                i = base_size + ysize
                w = weight(s1)
                key = (j, cj, i)
                prev = acc.get(key)
                if prev is None:
                    acc[key] = w if i % 2 == 1 else -w
                    mult[key] = 1
                else:
                    acc[key] = prev + (w if i % 2 == 1 else -w)
                    mult[key] += 1
    rows = sorted(acc, key=lambda key: key[2] + sizes[key[1]])
    totals = np.asarray([key[2] + sizes[key[1]] for key in rows], dtype=np.int64)
    row_l = np.asarray([key[0] for key in rows], dtype=np.int64)
    row_c = np.asarray([key[1] for key in rows], dtype=np.int64)
    row_i = np.asarray([key[2] for key in rows], dtype=np.int64)
    coefs = np.asarray([acc[key] for key in rows], dtype=np.complex128)
    mults = np.asarray([mult[key] for key in rows], dtype=np.int64)
    return totals, row_l, row_c, row_i, coefs, mults


def compute_coefficient_tables(
    g: Hypergraph,
    m: int,
    fam: ConnectedFamily | None = None,
    set_cap: int = DEFAULT_SET_CAP,
) -> CoefficientTable:
    """Run the coefficient recurrence to order m over the host's connected
    label sets. The family saturates at the host size, so orders beyond n
    reuse the same key set."""
    if m < 1:
        raise ValueError("order m must be >= 1")
    depth = min(m, g.n)
    if g.n == 0:
        return CoefficientTable(m, tuple({} for _ in range(m)), (0,) * m)
    if fam is None:
        fam = enumerate_connected(g, depth, set_cap=set_cap)
    elif fam.t_max < depth:
        raise ValueError(f"family enumerated to {fam.t_max}, need {depth}")

    nbr = [0] * g.n
    for e in g.edges:
        emask = 0
        for v in e.vertices:
            emask |= 1 << v
        for v in e.vertices:
            nbr[v] |= emask

    masks: list[int] = []
    for s in range(1, depth + 1):
        for lab in fam.sets_of_size(s):
            mask = 0
            for v in lab:
                mask |= 1 << v
            masks.append(mask)
    nsets = len(masks)
    sizes = [mask.bit_count() for mask in masks]
    idx_of = {mask: j for j, mask in enumerate(masks)}
    set_sizes = np.asarray(sizes, dtype=np.int64)

    if g.n <= 62:
        set_masks = np.asarray(masks, dtype=np.int64)
        set_weights = _mask_weights(g, set_masks)
        totals, row_l, row_c, row_i, row_coef, row_mult = _build_rows(
            g, m, set_masks, set_sizes, idx_of, nbr)
    else:
        weight = _PyWeights(g)
        set_weights = np.asarray([weight(mask) for mask in masks],
                                 dtype=np.complex128)
        totals, row_l, row_c, row_i, row_coef, row_mult = _build_rows_python(
            g, m, masks, sizes, idx_of, nbr, weight)
    boundaries = np.searchsorted(totals, np.arange(m + 1), side="right")

    values = np.zeros((m + 1, nsets), dtype=np.complex128)
    first = set_sizes == 1
    values[1, first] = set_weights[first]
    scan_max = [0]
    for t in range(2, m + 1):
        stop = boundaries[t]
        gathered = row_coef[:stop] * values[t - row_i[:stop], row_c[:stop]]
        acc = np.bincount(row_l[:stop], weights=gathered.real,
                          minlength=nsets).astype(np.complex128)
        acc += 1j * np.bincount(row_l[:stop], weights=gathered.imag,
                                minlength=nsets)
        at_order = set_sizes == t
        if at_order.any():
            tail = t * set_weights[at_order]
            acc[at_order] += tail if t % 2 == 1 else -tail
        values[t] = acc
        if stop:
            per_set = np.bincount(row_l[:stop], weights=row_mult[:stop],
                                  minlength=nsets)
            scan_max.append(int(per_set.max()))
        else:
            scan_max.append(0)

    tables: list[dict[int, complex]] = []
    for t in range(1, m + 1):
        tables.append({
            masks[j]: complex(values[t, j])
            for j in range(nsets) if sizes[j] <= t
        })
    return CoefficientTable(m, tuple(tables), tuple(scan_max))


def _kahan(values) -> complex:
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for v in values:
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def power_sums(ctable: CoefficientTable, m: int | None = None) -> list[complex]:
    """p_t = compensated sum of the order-t coefficients over the family
    of connected label sets (the key set of each table)."""
    m = ctable.m if m is None else m
    if m > ctable.m:
        raise ValueError("tables not computed to the requested order")
    out = []
    for t in range(1, m + 1):
        table = ctable.tables[t - 1]
        out.append(_kahan(table[mask] for mask in sorted(table)))
    return out


def power_sums_to_elementary(p: Sequence[complex]) -> list[complex]:
    """Invert Newton's identities: e_t from p_1..p_t.

    e_t = ((-1)^(t-1)/t) (p_t - sum_{i=1}^{t-1} (-1)^(i-1) p_{t-i} e_i).
    For orders past the host size the result is numerically zero.
    """
    e: list[complex] = []
    for t in range(1, len(p) + 1):
        acc = p[t - 1]
        for i in range(1, t):
            term = p[t - i - 1] * e[i - 1]
            acc -= term if i % 2 == 1 else -term
        e.append(acc / t if t % 2 == 1 else -acc / t)
    return e


def elementary_to_coefficients(e: Sequence[complex]) -> list[complex]:
    """Partition-polynomial coefficients c_i = (-1)^i e_i, with c_0 = 1."""
    return [complex(1.0)] + [
        ei if (i + 1) % 2 == 0 else -ei for i, ei in enumerate(e)
    ]


def extend_power_sums(p: Sequence[complex], e: Sequence[complex],
                      m: int) -> list[complex]:
    """Continue p_t past the host size with Newton's identity.

    Requires the complete elementary list e_1..e_n of the host (all higher
    ones vanish), and p covering orders 1..n; each new term is then
    p_t = sum_{i=1}^{n} (-1)^(i-1) p_{t-i} e_i.
    """
    n = len(e)
    if len(p) < n:
        raise ValueError("power sums must cover orders 1..n before extending")
    out = list(p)
    for t in range(len(out) + 1, m + 1):
        acc = 0.0 + 0.0j
        for i in range(1, n + 1):
            term = out[t - i - 1] * e[i - 1]
            acc += term if i % 2 == 1 else -term
        out.append(acc)
    return out[:m]
