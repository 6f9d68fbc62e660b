"""Complete and regular wreath products as concrete groups with structure maps.

Element encoding is mixed radix: index = h * |K|^|Omega| + sum_w f(w) * |K|^w,
so the tuple digit at point 0 is least significant and the top element is the
most significant digit.  Products up to the dense cap are materialized as
Cayley tables; larger ones (up to the overall size cap) stay structural, with
multiplication computed from the defining formula on demand.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .actions import FiniteGSet, regular_action
from .errors import SizeLimitError, WreathlabError
from .groups import FiniteGroup, GroupHom

SIZE_CAP_DEFAULT = 10**7
DENSE_CAP_DEFAULT = 4096


def theta(omega: FiniteGSet, h: int, f: Sequence[int]) -> tuple[int, ...]:
    """Coordinate permutation theta_h(f)(w) = f(h^-1 . w) on Omega-tuples."""
    if len(f) != omega.size:
        raise WreathlabError(f"tuple length {len(f)} != |Omega| = {omega.size}")
    hinv = omega.group.inv(h)
    row = omega.act[hinv]
    return tuple(int(f[row[w]]) for w in range(omega.size))


class _Codec:
    """Mixed-radix tuple/index arithmetic shared by both product representations."""

    def __init__(self, base: FiniteGroup, top: FiniteGSet):
        self.base = base
        self.top = top
        self.n_base = base.order
        self.n_points = top.size
        self.n_top = top.group.order
        self.tuple_count = base.order**top.size
        self.order = self.tuple_count * self.n_top
        self.powers = [self.n_base**j for j in range(self.n_points)]
        self.identity = self.encode([base.identity] * self.n_points, top.group.identity)

    def encode(self, f: Sequence[int], h: int) -> int:
        if len(f) != self.n_points:
            raise WreathlabError(f"tuple length {len(f)} != |Omega| = {self.n_points}")
        t = 0
        for j in range(self.n_points):
            d = int(f[j])
            if not 0 <= d < self.n_base:
                raise WreathlabError(f"tuple digit {d} out of base-group range")
            t += d * self.powers[j]
        if not 0 <= h < self.n_top:
            raise WreathlabError(f"top index {h} out of range")
        return h * self.tuple_count + t

    def decode(self, x: int) -> tuple[tuple[int, ...], int]:
        if not 0 <= x < self.order:
            raise WreathlabError(f"wreath index {x} out of range")
        h, t = divmod(int(x), self.tuple_count)
        digits = []
        for _ in range(self.n_points):
            t, d = divmod(t, self.n_base)
            digits.append(d)
        # divmod peels from the least significant end, which is point 0
        return tuple(digits), h

    def _decode_fixed(self, x: int):
        h, t = divmod(int(x), self.tuple_count)
        digits = []
        for _ in range(self.n_points):
            t, d = divmod(t, self.n_base)
            digits.append(d)
        return digits, h

    def mul(self, x: int, y: int) -> int:
        f1, h1 = self._decode_fixed(x)
        f2, h2 = self._decode_fixed(y)
        row = self.top.act[self.top.group.inv(h1)]
        kt = self.base.table
        t = 0
        for j in range(self.n_points):
            t += int(kt[f1[j], f2[row[j]]]) * self.powers[j]
        return self.top.group.mul(h1, h2) * self.tuple_count + t

    def inv(self, x: int) -> int:
        f, h = self._decode_fixed(x)
        hinv = self.top.group.inv(h)
        row = self.top.act[h]
        kin = self.base.inverses
        t = 0
        for j in range(self.n_points):
            t += int(kin[f[row[j]]]) * self.powers[j]
        return hinv * self.tuple_count + t

    def digit_matrix(self) -> np.ndarray:
        """(tuple_count, n_points) array of tuple digits."""
        t = np.arange(self.tuple_count, dtype=np.int64)
        cols = [(t // p) % self.n_base for p in self.powers]
        return np.stack(cols, axis=1)

    def dense_table(self) -> np.ndarray:
        B, nH = self.tuple_count, self.n_top
        digits = self.digit_matrix()
        ktab = self.base.table.astype(np.int64)
        htab = self.top.group.table
        hinv = self.top.group.inverses
        pw = np.array(self.powers, dtype=np.int64)
        table = np.empty((self.order, self.order), dtype=np.int32)
        for h1 in range(nH):
            perm = self.top.act[hinv[h1]]
            d2 = digits[:, perm]
            vals = np.zeros((B, B), dtype=np.int64)
            for j in range(self.n_points):
                vals += ktab[digits[:, j][:, None], d2[:, j][None, :]] * pw[j]
            for h2 in range(nH):
                block = htab[h1, h2] * B + vals
                table[h1 * B:(h1 + 1) * B, h2 * B:(h2 + 1) * B] = block
        return table


class WreathGroup:
    """Structural wreath product used above the dense-table cap.

    Supports the same element protocol as FiniteGroup (order, identity, mul,
    inv, power, element_order, label) without materializing the Cayley table.
    """

    def __init__(self, codec: _Codec, name: str):
        self._codec = codec
        self.order = codec.order
        self.identity = codec.identity
        self.name = name

    def mul(self, a: int, b: int) -> int:
        return self._codec.mul(a, b)

    def inv(self, a: int) -> int:
        return self._codec.inv(a)

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv(x), -k)
        acc = self.identity
        for _ in range(k):
            acc = self.mul(acc, x)
        return acc

    def element_order(self, x: int) -> int:
        cur, k = x, 1
        while cur != self.identity:
            cur = self.mul(cur, x)
            k += 1
        return k

    def label(self, x: int) -> str:
        f, h = self._codec.decode(x)
        base, top = self._codec.base, self._codec.top.group
        inner = ",".join(base.labels[d] for d in f)
        return f"({inner}; {top.labels[h]})"

    def __repr__(self) -> str:
        return f"<{self.name} of order {self.order} (structural)>"


class WreathProduct:
    """K wr_Omega H with encode/decode, top projection and base inclusion."""

    def __init__(self, base_group: FiniteGroup, top: FiniteGSet,
                 size_cap: Optional[int] = None, dense_cap: Optional[int] = None):
        size_cap = SIZE_CAP_DEFAULT if size_cap is None else size_cap
        dense_cap = DENSE_CAP_DEFAULT if dense_cap is None else dense_cap
        codec = _Codec(base_group, top)
        if codec.order > size_cap:
            raise SizeLimitError(
                f"wreath order {codec.order} exceeds cap {size_cap}", codec.order)
        self.base_group = base_group
        self.top = top
        self._codec = codec
        self.order = codec.order
        name = f"{base_group.name or 'K'} wr {top.group.name or 'H'}"
        if codec.order <= dense_cap:
            labels = [self._format(*codec.decode(x)) for x in range(codec.order)]
            self.product: FiniteGroup | WreathGroup = FiniteGroup(
                codec.dense_table(), labels=labels, name=name)
        else:
            self.product = WreathGroup(codec, name)
        proj = np.arange(codec.order, dtype=np.int64) // codec.tuple_count
        self.top_projection = GroupHom(self.product, top.group, proj,
                                       validate=codec.order <= 512)

    # -- structure maps ------------------------------------------------------

    def encode(self, f: Sequence[int], h: int) -> int:
        return self._codec.encode(f, h)

    def decode(self, x: int) -> tuple[tuple[int, ...], int]:
        return self._codec.decode(x)

    def theta(self, h: int, f: Sequence[int]) -> tuple[int, ...]:
        return theta(self.top, h, f)

    def base_inclusion(self, f: Sequence[int]) -> int:
        """Index of the base tuple f at the identity top element."""
        return self._codec.encode(f, self.top.group.identity)

    def inverse(self, x: int) -> int:
        return self._codec.inv(x)

    def mul(self, x: int, y: int) -> int:
        return self._codec.mul(x, y)

    # -- formatting ------------------------------------------------------------

    def _format(self, f: tuple[int, ...], h: int) -> str:
        inner = ",".join(self.base_group.labels[d] for d in f)
        return f"({inner}; {self.top.group.labels[h]})"

    def element_str(self, x: int) -> str:
        return self._format(*self._codec.decode(x))

    def parse_element(self, text: str) -> int:
        s = text.strip()
        if not (s.startswith("(") and s.endswith(")")):
            raise WreathlabError(f"cannot parse wreath element {text!r}")
        body = s[1:-1]
        tuple_part, sep, top_part = body.rpartition(";")
        if not sep:
            raise WreathlabError(f"cannot parse wreath element {text!r}")
        base_labels = [p.strip() for p in tuple_part.split(",")]
        if len(base_labels) != self.top.size:
            raise WreathlabError(
                f"expected {self.top.size} tuple entries in {text!r}")
        f = [self.base_group.label_index(lbl) for lbl in base_labels]
        h = self.top.group.label_index(top_part.strip())
        return self._codec.encode(f, h)

    def __repr__(self) -> str:
        return f"<WreathProduct order {self.order}: {self.product!r}>"


def build_wreath(k: FiniteGroup, omega: FiniteGSet,
                 size_cap: Optional[int] = None,
                 dense_cap: Optional[int] = None) -> WreathProduct:
    """Complete wreath product K wr_Omega H for H = omega.group."""
    return WreathProduct(k, omega, size_cap=size_cap, dense_cap=dense_cap)


def regular_wreath(k: FiniteGroup, h: FiniteGroup,
                   size_cap: Optional[int] = None,
                   dense_cap: Optional[int] = None) -> WreathProduct:
    """Regular wreath product K wr_r H (Omega = H under left multiplication)."""
    return build_wreath(k, regular_action(h), size_cap=size_cap, dense_cap=dense_cap)


def wreath_inverse(w: WreathProduct, x: int) -> int:
    """(f, h)^-1 = (theta_{h^-1}(f^-1), h^-1), matching the product's table."""
    return w.inverse(x)
