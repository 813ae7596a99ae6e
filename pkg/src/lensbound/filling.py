"""Rational homology ball fillings and smooth embedding criteria for lens spaces.

Every decision returns a :class:`Verdict` whose derivation lists the checks
performed, in order, each tagged with the result it relies on.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd, isqrt

from lensbound.errors import InputError
from lensbound.rational import ConnectedSum, LensSpace, lens_normalize, lens_oriented_homeo, lens_reverse

LISCA = "Lisca: rational ball fillings of (L(p,q), xi_std) iff (p,q) = (m^2, mh-1), gcd(m,h) = 1"
SUM_THEOREM = "no rational ball filling of L(p,q) # L(p,p-q): only m = 2 survives, then 3 != 2k-1"
FS_GL = "Fintushel-Stern, Gilmer-Livingston: L(p,q) # L(p,q') embeds in S^4 iff L(p,q') = L(p,p-q), p odd"
DONALD = "Donald: a sum of lens spaces embeds in R^4 iff it is Y # -Y"
EPSTEIN_ZEEMAN = "Epstein, Zeeman: punctured L(p,q) embeds in R^4 iff p = 1 or p odd"
ORIENTATION = "-L(p,q) = L(p,p-q); L(p,q) = L(p,q') preserving orientation iff q' = q^(+-1) mod p"


@dataclass(frozen=True)
class Step:
    text: str
    ref: str

    def to_json(self) -> dict:
        return {"text": self.text, "ref": self.ref}


@dataclass
class Verdict:
    answer: bool
    witnesses: list[dict] = field(default_factory=list)
    derivation: list[Step] = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.answer and not self.witnesses:
            raise ValueError("a yes verdict needs a witness")

    def note(self, text: str, ref: str) -> None:
        self.derivation.append(Step(text, ref))

    @property
    def word(self) -> str:
        return "yes" if self.answer else "no"

    def to_json(self) -> dict:
        return {
            "answer": self.word,
            "witnesses": [{k: str(v) for k, v in w.items()} for w in self.witnesses],
            "derivation": [s.to_json() for s in self.derivation],
            "bounds": {k: str(v) for k, v in self.bounds.items()},
        }


def _verdict(answer, witnesses, steps, bounds) -> Verdict:
    v = Verdict(answer, witnesses, [], bounds)
    for text, ref in steps:
        v.note(text, ref)
    return v


def lisca_search(lens: LensSpace) -> tuple[list[dict], list[tuple[str, str]], dict]:
    """Exhaustive search for (m, h, q') with p = m^2 and q' = m*h - 1.

    q' ranges over the orientation preserving representatives {q, q^-1 mod p};
    p - q is never tried.
    """
    p, q = lens.p, lens.q
    reps = [q] + ([lens.q_inverse] if lens.q_inverse != q else [])
    mmax = isqrt(p)
    steps = [(f"orientation preserving representatives of {lens}: q' in {reps}", ORIENTATION)]
    bounds = {"m_min": 2, "m_max": mmax}
    witnesses = []
    for m in range(2, mmax + 1):
        if m * m != p:
            continue
        hmax = -(-p // m)
        bounds["h_max"] = hmax
        for qq in reps:
            if (qq + 1) % m:
                steps.append((f"m={m}: {qq} + 1 is not divisible by {m}, so {qq} != {m}h-1", LISCA))
                continue
            h = (qq + 1) // m
            if not 1 <= h <= hmax:
                steps.append((f"m={m}: h={h} is outside 1..{hmax}", LISCA))
                continue
            if gcd(m, h) != 1:
                steps.append(
                    (f"m={m}: {qq} = {m}*{h}-1 forces h={h}, but gcd({m},{h}) = {gcd(m, h)} != 1", LISCA)
                )
                continue
            steps.append((f"m={m}, h={h}: {qq} = {m}*{h}-1 with gcd({m},{h}) = 1", LISCA))
            witnesses.append({"m": m, "h": h, "q": qq})
    if mmax < 2 or mmax * mmax != p:
        steps.append((f"p={p} is not m^2 for any m in 2..{max(mmax, 1)}", LISCA))
    return witnesses, steps, bounds


def lisca_qhb_filling(lens: LensSpace) -> Verdict:
    if lens.p < 2:
        raise InputError(f"needs p >= 2, got {lens}")
    witnesses, steps, bounds = lisca_search(lens)
    return _verdict(bool(witnesses), witnesses, steps, bounds)


def sum_qhb_filling(p: int, q: int) -> Verdict:
    """Can L(p,q) # L(p,p-q) bound a symplectic rational homology ball?

    That needs both summands to pass the Lisca test, since a filling of the
    reducible sum splits as a boundary sum of fillings of the pieces.
    """
    if p < 2 or gcd(p, q) != 1:
        raise InputError(f"needs p >= 2 and gcd(p,q) = 1, got ({p},{q})")
    first = lens_normalize(p, q)
    second = lens_reverse(first)
    steps = [(f"a filling would split into fillings of {first} and {second}", SUM_THEOREM)]
    bounds = {"m_min": 2, "m_max": isqrt(p)}
    results = []
    for lens in (first, second):
        witnesses, sub, b = lisca_search(lens)
        steps.extend((f"{lens}: {text}", ref) for text, ref in sub)
        bounds.update(b)
        results.append((lens, witnesses))
    both = all(w for _, w in results)
    if both:
        witnesses = [{"summand": str(lens), **w[0]} for lens, w in results]
        steps.append(("both summands admit Lisca parameters", SUM_THEOREM))
        return _verdict(True, witnesses, steps, bounds)
    failing = [lens for lens, w in results if not w]
    steps.append((f"no rational ball filling: {', '.join(map(str, failing))} fails the Lisca test", SUM_THEOREM))
    if p == 4:
        steps.append(("p = 4 forces m = 2 and {q, p-q} = {1, 3}; 3 cannot be written as 2k-1 with k coprime to 2", SUM_THEOREM))
    return _verdict(False, [], steps, bounds)


def sum_qhb_answer(p: int, q: int) -> bool:
    """Answer of :func:`sum_qhb_filling` without building the derivation."""
    m = isqrt(p)
    if m < 2 or m * m != p:
        return False

    def ok(qq):
        inv = pow(qq, -1, p)
        return any((r + 1) % m == 0 and gcd(m, (r + 1) // m) == 1 for r in (qq, inv))

    return ok(q % p) and ok((p - q) % p)


def embeds_s4_pair(a: LensSpace, b: LensSpace) -> Verdict:
    if a.p < 2 or b.p < 2:
        raise InputError("pair criterion needs p >= 2 for both summands")
    steps = []
    if a.p != b.p:
        steps.append((f"p differs ({a.p} vs {b.p})", FS_GL))
        return _verdict(False, [], steps, {"p": a.p})
    if a.p % 2 == 0:
        steps.append((f"p = {a.p} is even", FS_GL))
        return _verdict(False, [], steps, {"p": a.p})
    rev = lens_reverse(a)
    if not lens_oriented_homeo(b, rev):
        steps.append((f"{b} is not orientation preservingly {rev} = -{a}", ORIENTATION))
        return _verdict(False, [], steps, {"p": a.p})
    steps.append((f"p = {a.p} odd and {b} = -{a} = {rev}", FS_GL))
    return _verdict(True, [{"Y": a.token}], steps, {"p": a.p})


def class_of(lens: LensSpace) -> LensSpace:
    return lens.canonical


def embeds_s4_sum(s: ConnectedSum, strict_odd: bool = True) -> Verdict:
    """Is the sum of the form Y # -Y?

    Classes c and -c must occur equally often; an amphichiral class (c = -c)
    must occur an even number of times.  With ``strict_odd`` every p must
    also be odd, matching the two-summand criterion.
    """
    counts = Counter(class_of(x) for x in s)
    steps = [(f"classes: {', '.join(f'{c}x{n}' for c, n in sorted(counts.items()))}", ORIENTATION)]
    bounds = {"summands": len(s)}
    if strict_odd:
        even = sorted({x.p for x in s if x.p % 2 == 0})
        if even:
            steps.append((f"even p present: {even}", FS_GL))
            return _verdict(False, [], steps, bounds)
    y = []
    for c, n in sorted(counts.items()):
        mirror = class_of(lens_reverse(c))
        if mirror == c:
            if n % 2:
                steps.append((f"amphichiral {c} occurs {n} times (odd)", DONALD))
                return _verdict(False, [], steps, bounds)
            y.extend([c] * (n // 2))
        elif counts.get(mirror, 0) != n:
            steps.append((f"{c} occurs {n} times but -{c} = {mirror} occurs {counts.get(mirror, 0)}", DONALD))
            return _verdict(False, [], steps, bounds)
        elif c < mirror:
            y.extend([c] * n)
    ysum = ConnectedSum.of(y)
    steps.append((f"sum = Y # -Y with Y = {ysum.token}", DONALD))
    return _verdict(True, [{"Y": ysum.token}], steps, bounds)


def punctured_embeds_r4(lens: LensSpace) -> bool:
    return lens.p == 1 or lens.p % 2 == 1


def punctured_verdict(lens: LensSpace) -> Verdict:
    ok = punctured_embeds_r4(lens)
    steps = [(f"p = {lens.p} is {'odd or 1' if ok else 'even'}", EPSTEIN_ZEEMAN)]
    return _verdict(ok, [{"p": lens.p}] if ok else [], steps, {"p": lens.p})
