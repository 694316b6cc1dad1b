"""Pass/fail ledgers with concrete counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Iterable

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class Witness:
    """Where an identity broke: basis indices plus both sides of the equation."""

    indices: tuple
    lhs: Any
    rhs: Any
    labels: tuple = ()


@dataclass(frozen=True)
class Check:
    id: str
    status: str
    witness: Witness | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL


@dataclass
class VerificationReport:
    """Ordered ledger of checks plus named informational values.

    Checks keep insertion order so rendered reports are stable.
    """

    entries: list[Check] = field(default_factory=list)
    values: dict[str, Any] = field(default_factory=dict)

    def add(self, check_id: str, witness: Witness | None = None, detail: str = "") -> Check:
        c = Check(check_id, PASS if witness is None else FAIL, witness, detail)
        self.entries.append(c)
        return c

    def expect(self, check_id: str, ok: bool, witness: Witness | None = None, detail: str = "") -> Check:
        if not ok and witness is None:
            raise ValueError(f"failed check {check_id!r} needs a witness")
        return self.add(check_id, None if ok else witness, detail)

    def skip(self, check_id: str, reason: str) -> Check:
        c = Check(check_id, SKIPPED, None, reason)
        self.entries.append(c)
        return c

    def compare(self, check_id: str, shape: Iterable[int] | int,
                lhs: Callable, rhs: Callable, names: tuple = (), detail: str = "") -> Check:
        """Exhaustively compare ``lhs(*idx)`` with ``rhs(*idx)``.

        ``shape`` gives the range of each index; indices are scanned in
        lexicographic order and the first mismatch becomes the witness.
        """
        if isinstance(shape, int):
            shape = (shape,)
        w = first_mismatch(shape, lhs, rhs, names)
        return self.add(check_id, w, detail)

    def extend(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for c in other.entries:
            self.entries.append(Check(prefix + c.id, c.status, c.witness, c.detail))
        for k, v in other.values.items():
            self.values[prefix + k] = v
        return self

    @property
    def ok(self) -> bool:
        return not any(c.failed for c in self.entries)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.entries if c.failed]

    def get(self, check_id: str) -> Check:
        for c in self.entries:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(c.id == check_id for c in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def first_mismatch(shape, lhs: Callable, rhs: Callable, names: tuple = ()) -> Witness | None:
    for idx in product(*(range(s) for s in shape)):
        left, right = lhs(*idx), rhs(*idx)
        if left != right:
            labels = tuple(names[i] for i in idx) if names else ()
            return Witness(idx, left, right, labels)
    return None
