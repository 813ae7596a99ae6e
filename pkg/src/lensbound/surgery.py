"""Conditional certificates for homology spheres bounding acyclic 4-manifolds.

Nothing here checks the topological hypotheses (sliceness, Lagrangian disks,
Seifert surfaces); they are recorded as caller-asserted flags.  What is
checked is arithmetic: the surgery coefficient and that the presented
3-manifold is an integral homology sphere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from lensbound.errors import InputError
from lensbound.homology import IntMatrix, is_homology_sphere
from lensbound.rational import Slope

CONCLUSIONS = ("contractible", "acyclic", "rationally_acyclic", "stein_contractible", "not_fillable")
AMBIENTS = {"acyclic": "acyclic", "rationally_acyclic": "rationally_acyclic", "rational": "rationally_acyclic"}

SLICE_REF = "1/m surgery on a knot slice in a contractible W: drill the disk, add a -m framed meridian"
FICKLE_REF = "1/(s+-1) surgery on a genus one knot whose surface curve b is slice with framing s"
PLUMBING_REF = "1/(m_i+-1) surgery on a plumbing of twisted ribbons along (rationally) slice knots"
STEIN_REF = "contact (1+1/m) surgery on a regular Lagrangian slice knot is Stein contractible iff m > 0"
FS_REF = "Fintushel-Stern: 1/(k(s+-1)) surgery bounds an acyclic manifold (known for k = 1)"


@dataclass(frozen=True)
class Certificate:
    coefficient: Slope
    conclusion: str
    hypotheses: tuple[tuple[str, bool], ...]
    status: str
    paper_ref: str
    homology_check: bool
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.conclusion not in CONCLUSIONS:
            raise InputError(f"unknown conclusion {self.conclusion!r}")
        if self.status not in ("theorem", "conjecture"):
            raise InputError(f"unknown status {self.status!r}")

    @property
    def trivial(self) -> bool:
        return self.coefficient.is_inf

    def to_json(self) -> dict:
        return {
            "coefficient": str(self.coefficient),
            "conclusion": self.conclusion,
            "status": self.status,
            "hypotheses": [{"name": n, "assumed": "true" if v else "false"} for n, v in self.hypotheses],
            "paper_ref": self.paper_ref,
            "homology_check": "true" if self.homology_check else "false",
            "notes": list(self.notes),
        }


def presentation_matrix(coefficient: Slope) -> IntMatrix:
    """Linking matrix of 1/n surgery: a 0-framed knot plus a (-n)-framed meridian.

    The coefficient 1/0 is no surgery at all and is presented by the empty link.
    """
    if not coefficient.is_inf and abs(coefficient.num) != 1:
        raise InputError(f"{coefficient} is not of the form 1/n")
    if coefficient.is_inf:
        return IntMatrix.of([])
    n = coefficient.den * coefficient.num
    return IntMatrix.of([[0, 1], [1, -n]])


def _certificate(n: int, conclusion, hypotheses, status, ref, notes=()) -> Certificate:
    coefficient = Slope(1, n)
    notes = tuple(notes)
    if coefficient.is_inf:
        notes += ("coefficient 1/0: no surgery, the boundary already bounds the ambient manifold",)
    check = is_homology_sphere(presentation_matrix(coefficient))
    return Certificate(coefficient, conclusion, tuple(hypotheses.items()), status, ref, check, notes)


def slice_surgery_certificate(m: int, slice_in_contractible: bool = True) -> Certificate:
    if m == 0:
        raise InputError("m = 0 is 0-surgery, not 1/m surgery")
    notes = []
    if m == 1:
        notes.append("e.g. Sigma(2,3,13) is +1 surgery on Stevedore's knot 6_1")
        notes.append("e.g. the Mazur cork boundary is +1 surgery on P(-3,3,-3)")
    return _certificate(
        m, "contractible", {"K slice in contractible W": slice_in_contractible}, "theorem", SLICE_REF, notes
    )


def _ambient(name: str) -> str:
    try:
        return AMBIENTS[name]
    except KeyError:
        raise InputError(f"ambient must be acyclic or rationally_acyclic, got {name!r}") from None


def _sign(sign: int) -> int:
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign}")
    return sign


def fickle_certificate(s: int, sign: int, ambient: str = "acyclic") -> Certificate:
    sign, ambient = _sign(sign), _ambient(ambient)
    hypotheses = {
        "genus one Seifert surface F": True,
        "[b] primitive in H1(F)": True,
        f"b slice in {ambient} W": True,
        f"b has F-framing {s}": True,
    }
    notes = []
    if (s, sign) == (-1, -1):
        notes.append("trefoil with an unknotted surface curve of framing -1 gives -1/2 surgery")
    if s == 0 and ambient == "rationally_acyclic":
        notes.append("e.g. +-1 surgery on the Whitehead doubles W+-(K_p) of rationally slice K_p")
    return _certificate(s + sign, ambient, hypotheses, "theorem", FICKLE_REF, notes)


def plumbing_certificate(m1: int, m2: int, sign: int, slice_class: str = "rationally_acyclic"):
    sign, slice_class = _sign(sign), _ambient(slice_class)
    hypotheses = {f"K1, K2 slice in {slice_class} manifolds": True, f"ribbons R_{m1}, R_{m2} plumbed": True}
    return tuple(
        _certificate(m + sign, slice_class, hypotheses, "theorem", PLUMBING_REF) for m in (m1, m2)
    )


def stein_contractible_verdict(m: int, regular_lagrangian: bool = True) -> Certificate:
    if m == 0:
        raise InputError("m = 0: contact coefficient 1 + 1/m is undefined")
    hypotheses = {"L bounds a regular Lagrangian disk in (B^4, omega_std)": regular_lagrangian}
    notes = [f"contact coefficient 1 + 1/{m}, smooth coefficient 1/{m}"]
    if m > 0:
        conclusion = "stein_contractible"
        if m == 1:
            notes.append("m = 1 needs a separate normal form argument for the handle diagram")
    else:
        conclusion = "not_fillable"
        notes.append("contact r surgery with 0 <= r < 1 on such L is never fillable, let alone Stein contractible")
    notes.append("open: no nontrivial Brieskorn sphere is 1/n surgery on a regular Lagrangian slice knot")
    return _certificate(m, conclusion, hypotheses, "theorem", STEIN_REF, notes)


def fs_conjecture_coefficient(k: int, s: int, sign: int) -> Certificate:
    sign = _sign(sign)
    if k < 1:
        raise InputError(f"k must be >= 1, got {k} (k = 0 is the trivial surgery)")
    status = "theorem" if k == 1 else "conjecture"
    notes = []
    if (s, sign) == (-1, -1) and k >= 2:
        notes.append(f"would give Sigma(2,3,{12 * k + 1}) bounding an acyclic manifold (-1/{2 * k} on the trefoil)")
    hypotheses = {"genus one Seifert surface F": True, "b slice in acyclic W": True, f"b has F-framing {s}": True}
    return _certificate(k * (s + sign), "acyclic", hypotheses, status, FS_REF, notes)
