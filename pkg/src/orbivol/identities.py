"""The 21 printed bracket identity families for sp(n,1) generators.

Each family states a closed form for the commutator of two generator
matrices.  The checker evaluates both sides with the matrix oracle over
every admissible index tuple and reports deviations; the oracle is
authoritative, so a printed-side deviation is reported but nothing
downstream depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .quaternion import (
    IMAGINARY_UNITS,
    GroundField,
    QuaternionMatrix,
    alpha,
    beta,
    elem,
    mat_bracket,
    quat_mul,
)

IDENTITY_TOL = 1e-10

_T = (1, 2, 3)
_TS = tuple(permutations(_T, 2))  # ordered pairs with t != s


def _ib(size, t, j, k):
    return beta(size, j, k).scale(IMAGINARY_UNITS[t])


def _ia(size, t, j, k):
    return alpha(size, j, k).scale(IMAGINARY_UNITS[t])


def _ie(size, t, i):
    return elem(size, i, i, IMAGINARY_UNITS[t])


def _d(a, b):
    return 1.0 if a == b else 0.0


def _combine(size, *terms):
    """Sum of (coefficient quaternion | float, matrix) terms."""
    out = QuaternionMatrix.zeros(size)
    for coeff, mat in terms:
        if isinstance(coeff, float):
            if coeff == 0.0:
                continue
            out = out + mat.scale(coeff)
        else:
            out = out + mat.scale(coeff)
    return out


def _family_table(n: int):
    """name -> list of (indices, lhs_a, lhs_b, rhs) for rank n."""
    size = n + 1
    jk = list(combinations(range(1, n + 1), 2))
    lm = jk
    ii = list(range(1, size + 1))
    ll = list(range(1, n + 1))
    u = IMAGINARY_UNITS

    fams: dict[str, list] = {}

    def fam(name):
        fams[name] = []
        return fams[name].append

    add = fam("alpha_alpha")
    for (j, k), (l, m) in product(jk, lm):
        rhs = _combine(size,
                       (_d(k, l), alpha(size, j, m)),
                       (_d(k, m), alpha(size, l, j)),
                       (_d(j, m), alpha(size, k, l)),
                       (_d(l, j), alpha(size, m, k)))
        add(((j, k, l, m), alpha(size, j, k), alpha(size, l, m), rhs))

    add = fam("alpha_im_beta")
    for (j, k), (l, m), t in product(jk, lm, _T):
        rhs = _combine(size,
                       (_d(k, l), beta(size, j, m)),
                       (_d(k, m), beta(size, j, l)),
                       (-_d(j, m), beta(size, k, l)),
                       (-_d(l, j), beta(size, k, m))).scale(u[t])
        add(((j, k, l, m, t), alpha(size, j, k), _ib(size, t, l, m), rhs))

    add = fam("alpha_im_diag")
    for (j, k), i, t in product(jk, ii, _T):
        rhs = _combine(size,
                       (_d(k, i), beta(size, j, i)),
                       (-_d(j, i), beta(size, k, i))).scale(u[t])
        add(((j, k, i, t), alpha(size, j, k), _ie(size, t, i), rhs))

    add = fam("alpha_beta_last")
    for (j, k), l in product(jk, ll):
        rhs = _combine(size,
                       (_d(l, k), beta(size, j, size)),
                       (-_d(j, l), beta(size, k, size)))
        add(((j, k, l), alpha(size, j, k), beta(size, l, size), rhs))

    add = fam("alpha_im_alpha_last")
    for (j, k), l, t in product(jk, ll, _T):
        rhs = _combine(size,
                       (_d(l, k), alpha(size, j, size)),
                       (-_d(l, j), alpha(size, k, size))).scale(u[t])
        add(((j, k, l, t), alpha(size, j, k), _ia(size, t, l, size), rhs))

    add = fam("im_beta_im_beta_same")
    for (j, k), (l, m), t in product(jk, lm, _T):
        rhs = _combine(size,
                       (-_d(k, l), alpha(size, j, m)),
                       (-_d(k, m), alpha(size, j, l)),
                       (-_d(j, m), alpha(size, k, l)),
                       (-_d(l, j), alpha(size, k, m)))
        add(((j, k, l, m, t), _ib(size, t, j, k), _ib(size, t, l, m), rhs))

    add = fam("im_beta_im_beta_mixed")
    for (j, k), (l, m), (t, s) in product(jk, lm, _TS):
        rhs = _combine(size,
                       (_d(k, l), beta(size, j, m)),
                       (_d(k, m), beta(size, j, l)),
                       (_d(j, m), beta(size, k, l)),
                       (_d(l, j), beta(size, k, m))).scale(quat_mul(u[t], u[s]))
        add(((j, k, l, m, t, s), _ib(size, t, j, k), _ib(size, s, l, m), rhs))

    add = fam("im_beta_im_diag_same")
    for (j, k), i, t in product(jk, ii, _T):
        rhs = _combine(size,
                       (-_d(k, i), alpha(size, j, i)),
                       (-_d(j, i), alpha(size, k, i)))
        add(((j, k, i, t), _ib(size, t, j, k), _ie(size, t, i), rhs))

    add = fam("im_beta_im_diag_mixed")
    for (j, k), i, (t, s) in product(jk, ii, _TS):
        rhs = _combine(size,
                       (_d(k, i), beta(size, j, i)),
                       (_d(j, i), beta(size, k, i))).scale(quat_mul(u[t], u[s]))
        add(((j, k, i, t, s), _ib(size, t, j, k), _ie(size, s, i), rhs))

    add = fam("im_beta_beta_last")
    for (j, k), l, t in product(jk, ll, _T):
        rhs = _combine(size,
                       (_d(l, k), alpha(size, j, size)),
                       (_d(j, l), alpha(size, k, size))).scale(u[t])
        add(((j, k, l, t), _ib(size, t, j, k), beta(size, l, size), rhs))

    add = fam("im_beta_im_alpha_last_same")
    for (j, k), l, t in product(jk, ll, _T):
        rhs = _combine(size,
                       (-_d(l, k), beta(size, j, size)),
                       (-_d(j, l), beta(size, k, size)))
        add(((j, k, l, t), _ib(size, t, j, k), _ia(size, t, l, size), rhs))

    add = fam("im_beta_im_alpha_last_mixed")
    for (j, k), l, (t, s) in product(jk, ll, _TS):
        rhs = _combine(size,
                       (_d(l, k), alpha(size, j, size)),
                       (_d(j, l), alpha(size, k, size))).scale(quat_mul(u[t], u[s]))
        add(((j, k, l, t, s), _ib(size, t, j, k), _ia(size, s, l, size), rhs))

    add = fam("im_diag_im_diag_same")
    for i, t in product(ii, _T):
        add(((i, t), _ie(size, t, i), _ie(size, t, i), QuaternionMatrix.zeros(size)))

    add = fam("im_diag_im_diag_mixed")
    for i, (t, s) in product(ii, _TS):
        rhs = elem(size, i, i, quat_mul(u[t], u[s])).scale(2.0)
        add(((i, t, s), _ie(size, t, i), _ie(size, s, i), rhs))

    add = fam("im_diag_beta_last")
    for i, j, t in product(ii, ll, _T):
        rhs = _combine(size,
                       (_d(i, j), alpha(size, i, size)),
                       (_d(i, size), alpha(size, i, j))).scale(u[t])
        add(((i, j, t), _ie(size, t, i), beta(size, j, size), rhs))

    add = fam("im_diag_im_alpha_last_same")
    for i, j, t in product(ii, ll, _T):
        rhs = _combine(size,
                       (-_d(i, j), beta(size, i, size)),
                       (_d(i, size), beta(size, i, j)))
        add(((i, j, t), _ie(size, t, i), _ia(size, t, j, size), rhs))

    add = fam("im_diag_im_alpha_last_mixed")
    for i, j, (t, s) in product(ii, ll, _TS):
        rhs = _combine(size,
                       (_d(i, j), alpha(size, i, size)),
                       (-_d(i, size), alpha(size, i, j))).scale(quat_mul(u[t], u[s]))
        add(((i, j, t, s), _ie(size, t, i), _ia(size, s, j, size), rhs))

    add = fam("beta_last_beta_last")
    for j, k in product(ll, ll):
        add(((j, k), beta(size, j, size), beta(size, k, size), alpha(size, j, k)))

    add = fam("beta_last_im_alpha_last")
    for j, k, t in product(ll, ll, _T):
        rhs = _combine(size,
                       (-1.0, beta(size, j, k)),
                       (2.0 * _d(j, k), elem(size, size, size))).scale(u[t])
        add(((j, k, t), beta(size, j, size), _ia(size, t, k, size), rhs))

    add = fam("im_alpha_last_im_alpha_last_same")
    for j, k, t in product(ll, ll, _T):
        add(((j, k, t), _ia(size, t, j, size), _ia(size, t, k, size),
             alpha(size, j, k)))

    add = fam("im_alpha_last_im_alpha_last_mixed")
    for j, k, (t, s) in product(ll, ll, _TS):
        # coefficient is I_s I_t, reversed relative to the operand order
        rhs = _combine(size,
                       (1.0, beta(size, j, k)),
                       (2.0 * _d(j, k), elem(size, size, size))
                       ).scale(quat_mul(u[s], u[t]))
        add(((j, k, t, s), _ia(size, t, j, size), _ia(size, s, k, size), rhs))

    return fams


@dataclass
class FamilyResult:
    family: str
    tuples_checked: int
    max_abs_deviation: float
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "tuples_checked": self.tuples_checked,
            "max_abs_deviation": self.max_abs_deviation,
            "failures": [{"indices": list(idx), "max_abs_deviation": dev}
                         for idx, dev in self.failures],
        }


@dataclass
class IdentityReport:
    n: int
    results: list[FamilyResult]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {"n": self.n, "families": [r.to_dict() for r in self.results]}


def verify_bracket_identities(model, tol: float = IDENTITY_TOL) -> IdentityReport:
    """Evaluate every printed identity family against the matrix oracle."""
    if model.field is not GroundField.QUATERNION:
        raise ValueError("the printed identity families are quaternionic")
    results = []
    for name, cases in _family_table(model.n).items():
        worst = 0.0
        failures = []
        for indices, a, b, rhs in cases:
            dev = (mat_bracket(a, b) - rhs).max_abs()
            worst = max(worst, dev)
            if dev > tol:
                failures.append((indices, dev))
        results.append(FamilyResult(name, len(cases), worst, failures))
    return IdentityReport(model.n, results)
