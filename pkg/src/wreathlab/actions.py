"""Finite left group actions on index sets, with the checks wreaths rely on."""

from __future__ import annotations

import json
from typing import Optional, Sequence

import numpy as np

from .errors import ActionValidationError
from .groups import FiniteGroup, GroupHom, Section, group_from_json, group_to_json


class FiniteGSet:
    """A left action of a finite group on points 0..size-1.

    ``act[h][w]`` is the image of point ``w`` under group element ``h``.
    Both action axioms are verified exhaustively at construction.
    """

    def __init__(self, group: FiniteGroup, act, point_labels: Optional[Sequence[str]] = None):
        self.group = group
        self.act = np.asarray(act, dtype=np.int64)
        if self.act.ndim != 2 or self.act.shape[0] != group.order:
            raise ActionValidationError(
                f"action table must be |H| x |Omega|, got {self.act.shape}")
        self.size = int(self.act.shape[1])
        self.point_labels = (
            [str(x) for x in point_labels] if point_labels is not None
            else [str(w) for w in range(self.size)]
        )
        if len(self.point_labels) != self.size:
            raise ActionValidationError("point_labels length does not match size")
        self._validate()
        self.act.setflags(write=False)

    def _validate(self) -> None:
        act, grp = self.act, self.group
        if act.min() < 0 or act.max() >= self.size:
            raise ActionValidationError("action table entry out of range")
        pts = np.arange(self.size)
        if not (act[grp.identity] == pts).all():
            w = int(np.nonzero(act[grp.identity] != pts)[0][0])
            raise ActionValidationError(f"identity axiom fails at point {w}")
        for h1 in range(grp.order):
            lhs = act[h1][act]                # lhs[h2, w] = h1.(h2.w)
            rhs = act[grp.table[h1]]          # rhs[h2, w] = (h1 h2).w
            if not (lhs == rhs).all():
                h2, w = (int(v) for v in np.argwhere(lhs != rhs)[0])
                raise ActionValidationError(
                    f"compatibility axiom fails at (h1,h2,w)=({h1},{h2},{w})")

    def apply(self, h: int, w: int) -> int:
        return int(self.act[h, w])

    def orbit(self, w: int) -> set[int]:
        return set(int(v) for v in self.act[:, w])

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.size

    def point_label(self, w: int) -> str:
        return self.point_labels[w]

    def __repr__(self) -> str:
        return f"<FiniteGSet |Omega|={self.size} under {self.group!r}>"


def regular_action(h: FiniteGroup) -> FiniteGSet:
    """H acting on itself by left multiplication; the table is the Cayley table."""
    return FiniteGSet(h, h.table.copy(), point_labels=list(h.labels))


def coset_action(g: FiniteGroup, h: GroupHom):
    """Left translation on cosets of image(h), plus the representative section.

    Cosets are indexed by ascending minimal member, so the identity coset is
    point 0 and quotients built from the same subgroup share the indexing.
    """
    members = np.array(sorted(h.image_set()), dtype=np.int64)
    coset_of = np.full(g.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(g.order):
        if coset_of[x] >= 0:
            continue
        coset_of[g.table[x, members]] = len(reps)
        reps.append(x)
    reps_arr = np.array(reps, dtype=np.int64)
    act = coset_of[g.table[:, reps_arr]]
    labels = [f"{g.labels[r]}·H" for r in reps]
    omega = FiniteGSet(g, act, point_labels=labels)
    section = Section(omega, g, reps_arr)
    return omega, section


def natural_action(n: int, g: FiniteGroup) -> FiniteGSet:
    """Point action of a permutation-like group carrying one-line point data."""
    if g.point_maps is None:
        raise ActionValidationError("group carries no point data for a natural action")
    degree = len(g.point_maps[0])
    if degree != n:
        raise ActionValidationError(f"natural action degree {degree} != requested {n}")
    act = np.array(g.point_maps, dtype=np.int64)
    return FiniteGSet(g, act)


def check_equivariant(xi, omega: FiniteGSet, omega_hat: FiniteGSet, phi: GroupHom) -> bool:
    """xi(h.w) == phi(h).xi(w) for all h, w, with xi a point bijection."""
    xi = np.asarray(xi, dtype=np.int64)
    if len(xi) != omega.size or omega_hat.size != omega.size:
        return False
    if len(set(int(v) for v in xi)) != omega.size:
        return False
    if xi.min() < 0 or xi.max() >= omega_hat.size:
        return False
    for h in range(omega.group.order):
        if not (xi[omega.act[h]] == omega_hat.act[phi(h)][xi]).all():
            return False
    return True


# -- JSON exchange --------------------------------------------------------------


def action_to_json(omega: FiniteGSet) -> dict:
    return {
        "group": group_to_json(omega.group),
        "size": omega.size,
        "act": [[int(v) for v in row] for row in omega.act],
        "point_labels": list(omega.point_labels),
    }


def action_from_json(data: dict) -> FiniteGSet:
    grp = data["group"]
    if isinstance(grp, str):
        with open(grp, "r", encoding="utf-8") as fh:
            grp = json.load(fh)
    group = group_from_json(grp)
    omega = FiniteGSet(group, data["act"], point_labels=data.get("point_labels"))
    if omega.size != int(data["size"]):
        raise ActionValidationError("declared size does not match action table")
    return omega


def save_action(omega: FiniteGSet, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(action_to_json(omega), fh)
        fh.write("\n")


def load_action(path) -> FiniteGSet:
    with open(path, "r", encoding="utf-8") as fh:
        return action_from_json(json.load(fh))
