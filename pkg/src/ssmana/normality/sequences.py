from dataclasses import dataclass
from typing import Tuple

SEQUENCE_KINDS = ("identity", "arithmetic", "geometric", "explicit")


@dataclass(frozen=True)
class SequenceSpec:
    """
    Strictly increasing sequence of positive integers.

    ``arithmetic`` params are (a, d) giving s_n = a + (n-1) d, ``geometric``
    is (b,) giving s_n = b**n, ``explicit`` lists the values.
    """

    kind: str = "identity"
    params: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in SEQUENCE_KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        params = tuple(int(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if self.kind == "arithmetic":
            if len(params) != 2 or params[0] < 1 or params[1] < 1:
                raise ValueError("arithmetic sequence needs a >= 1 and d >= 1")
        elif self.kind == "geometric":
            if len(params) != 1 or params[0] < 2:
                raise ValueError("geometric sequence needs an integer base >= 2")
        elif self.kind == "explicit":
            if not params or params[0] < 1:
                raise ValueError("explicit sequence needs positive values")
            if any(b <= a for a, b in zip(params, params[1:])):
                raise ValueError("explicit sequence must be strictly increasing")

    @classmethod
    def from_dict(cls, doc):
        return cls(doc.get("kind", "identity"), tuple(doc.get("params", ())))

    def as_dict(self):
        return {"kind": self.kind, "params": list(self.params)}

    @property
    def max_length(self):
        return len(self.params) if self.kind == "explicit" else None


def sequence_values(seq, N):
    """First N terms as Python integers (geometric terms are exact big integers)."""
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    if seq.max_length is not None and N > seq.max_length:
        raise ValueError(f"explicit sequence has only {seq.max_length} terms")
    if seq.kind == "identity":
        return list(range(1, N + 1))
    if seq.kind == "arithmetic":
        a, d = seq.params
        return [a + n * d for n in range(N)]
    if seq.kind == "geometric":
        (b,) = seq.params
        return [b**n for n in range(1, N + 1)]
    return list(seq.params[:N])
