"""Fixed-point weights, chain-evaluated shuffle operators, and the
eigenvector property of the summed fixed-point classes.

The lowering operators indexed by the pairwise-product generators act on
the completed sum of all fixed-point classes; on each graded piece the
action is a finite weighted sum over n-box extensions, evaluated through an
ordered chain of one-box steps.  Both the K-theoretic and cohomological
weights are covered.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import partitions as pt
from .shuffle import K_element
from .toroidal import KTheoryFixedPointModule
from .yangian import CohomologyFixedPointModule

__all__ = [
    "fixed_weight",
    "box_chain",
    "chain_contents",
    "shuffle_matrix_coeff",
    "whittaker_sum",
    "whittaker_eigencheck",
    "C_constant",
    "D_constant",
    "bott_lefschetz_consistency",
]


class GenericityWeightError(ValueError):
    pass


def fixed_weight(mlam, flavor, params):
    """K flavor: product of (1-w)^-1 over tangent weights; H flavor: product
    of w^-1 over the additively evaluated weights.  Memoized per parameter
    pack (weights are reused heavily across overlapping extension sweeps)."""
    cache = getattr(params, "_weight_cache", None)
    if cache is None:
        cache = params._weight_cache = {}
    key = (flavor, mlam)
    if key in cache:
        return cache[key]
    val = _fixed_weight_raw(mlam, flavor, params)
    cache[key] = val
    return val


def _fixed_weight_raw(mlam, flavor, params):
    weights = pt.tangent_character(mlam)
    if flavor == "K":
        vals = pt.eval_mult(weights, params.q1, params.q2, params.chis)
        acc = Fraction(1)
        for sign, w in vals:
            if w == 1:
                raise GenericityWeightError(f"unit tangent weight at {mlam}")
            acc = acc / (1 - w) if sign > 0 else acc * (1 - w)
        return acc
    vals = pt.eval_add(weights, params.h1, params.h2, params.xs)
    acc = Fraction(1)
    for sign, w in vals:
        if w == 0:
            raise GenericityWeightError(f"zero tangent weight at {mlam}")
        acc = acc / w if sign > 0 else acc * w
    return acc


def box_chain(small, big, order="canonical"):
    """Ordered chain of one-box additions from small to big.

    canonical: boxes sorted by (component, row, col); alternative: by
    (-component, row, col).  Both orders keep every intermediate label a
    valid diagram tuple (rows grow top to bottom, columns left to right).
    """
    boxes = []
    for a in range(1, len(small) + 1):
        la, lb = small[a - 1], big[a - 1]
        for j in range(1, len(lb) + 1):
            for i in range(pt.part(la, j) + 1, pt.part(lb, j) + 1):
                boxes.append((a, i, j))
    if order == "canonical":
        boxes.sort(key=lambda b: (b[0], b[2], b[1]))
    elif order == "reverse-component":
        boxes.sort(key=lambda b: (-b[0], b[2], b[1]))
    else:
        raise ValueError("unknown chain order")
    chain = [small]
    cur = small
    for (a, i, j) in boxes:
        cur = pt.mp_add_box(cur, a, j)
        chain.append(cur)
    assert chain[-1] == big
    return boxes, chain


def chain_contents(boxes, flavor, params):
    if flavor == "K":
        return [pt.content_mult((i, j), params.q1, params.q2, params.chis[a - 1])
                for (a, i, j) in boxes]
    return [pt.content_add((i, j), params.h1, params.h2, params.xs[a - 1])
            for (a, i, j) in boxes]


def _kernel_value(flavor, params, x, y):
    """Full kernel weight omega(x, y) evaluated at scalars."""
    if flavor == "K":
        q1, q2, q3 = params.qs
        return ((x - q1 * y) * (x - q2 * y) * (x - q3 * y)) / (x - y) ** 3
    h1, h2, h3 = params.hs
    return ((x - y - h1) * (x - y - h2) * (x - y - h3)) / (x - y) ** 3


def shuffle_matrix_coeff(F, big, small, module, flavor, params, order="canonical"):
    """Matrix coefficient of a lowering shuffle element between fixed-point
    classes, via the ordered one-box chain.

    Value: F at the chain contents over the kernel product, times the
    product of mode-zero lowering coefficients along the chain.
    """
    boxes, chain = box_chain(small, big, order=order)
    n = len(boxes)
    if F.n != n:
        raise ValueError("arity mismatch")
    contents = chain_contents(boxes, flavor, params)
    # F evaluated as a rational function
    num = F.num.eval(contents)
    den = Fraction(1)
    for a in range(n):
        for b in range(a + 1, n):
            den = den * (contents[a] - contents[b]) ** 2
            den = den * _kernel_value(flavor, params, contents[a], contents[b])
    val = num / den
    for q in range(n, 0, -1):
        upper, lower = chain[q], chain[q - 1]
        f0 = None
        for (tgt, c, p) in module.f_transitions(upper):
            if tgt == lower:
                f0 = c
                break
        if f0 is None:
            return Fraction(0)
        val = val * f0
    return val


def whittaker_sum(mlam, F, flavor, params, module, check_chain_independence=True):
    """Sum over all n-box extensions of the weight ratio times the chain
    matrix coefficient; the eigenvalue candidate at the given label."""
    n = F.n
    r = len(mlam)
    total = Fraction(0)
    base_w = fixed_weight(mlam, flavor, params)
    for big in _extensions(mlam, n):
        if _two_in_a_row(mlam, big):
            # the pairwise-difference numerator kills these chains
            continue
        coeff = shuffle_matrix_coeff(F, big, mlam, module, flavor, params)
        if check_chain_independence and r > 1:
            alt = shuffle_matrix_coeff(F, big, mlam, module, flavor, params,
                                       order="reverse-component")
            if alt != coeff:
                raise ArithmeticError(f"chain-dependent value at {big}")
        w = fixed_weight(big, flavor, params)
        total += (w / base_w) * coeff
    return total


def _extensions(mlam, n):
    """All labels obtained by adding n boxes (no two in the same row of the
    same component are filtered by the caller)."""
    levels = [mlam]
    for _ in range(n):
        nxt = set()
        for lab in levels:
            for (a, i, j) in pt.addable_boxes(lab):
                nxt.add(pt.mp_add_box(lab, a, j))
        levels = sorted(nxt)
    return levels


def _two_in_a_row(small, big):
    for a in range(len(small)):
        for j in range(1, len(big[a]) + 1):
            if pt.part(big[a], j) - pt.part(small[a], j) >= 2:
                return True
    return False


def C_constant(j, n, r, params):
    """Closed-form eigenvalues in the K flavor for the weighted families."""
    t1, t2 = params.q1, params.q2
    chiprod = Fraction(1)
    for a in range(r):
        chiprod *= params.chis[a]
    qfac = Fraction(1)
    for m in range(1, n + 1):
        qfac *= (1 - t2 ** m)
    if j == 0:
        sign = (-1) ** (n * (n + 1) // 2 + n * r - n)
        return sign * (t1 * t2 * chiprod) ** n * t1 ** (n * (n - 1) // 2) / \
            ((1 - t1) ** n * qfac)
    if 1 <= j <= r - 1:
        return Fraction(0)
    if j == r:
        return (-t1 * t2) ** (n * (n + 1) // 2) / ((1 - t1) ** n * qfac)
    raise ValueError("0 <= j <= r")


def D_constant(j, n, r, params):
    """Closed-form eigenvalues in the H flavor (None when only the
    label-independence is asserted).

    Signs are rank-independent: (-1)^{n(n-1)/2} for the subleading family
    and an overall minus for the framing-linear one.  These are pinned by
    the one-box weight duality together with the verified module
    coefficients, and agree with the rank-dependent printed signs exactly
    when n*r (resp. r) is even.
    """
    s1, s2 = params.h1, params.h2
    if 0 <= j <= r - 2:
        return Fraction(0)
    if j == r - 1:
        return Fraction((-1) ** (n * (n - 1) // 2)) / \
            (factorial(n) * s1 ** n * s2 ** n)
    if j == r and n == 1:
        return -sum(params.xs[:r]) / (s1 * s2)
    if j == r:
        return None
    raise ValueError("0 <= j <= r")


def whittaker_eigencheck(flavor, r, n, j, level_bound, params, perturb=False):
    """Verify the eigenvector property at desk scale.

    Returns (constant, failures): the common eigenvalue over all labels up
    to the level bound, and any label-dependence or closed-form mismatches.
    perturb=True rescales one lowering coefficient as a negative control.
    """
    if flavor == "K":
        module = KTheoryFixedPointModule(params, r)
        F = K_element("m", n, params, power=j)
        want = C_constant(j, n, r, params)
    else:
        module = CohomologyFixedPointModule(params, r)
        F = K_element("a", n, params, power=j)
        want = D_constant(j, n, r, params)
    if perturb:
        from .repbase import PerturbedModule

        module = PerturbedModule(module, "f")
    failures = []
    ref = None
    ref_label = None
    for level in range(level_bound + 1):
        for mlam in pt.enum_multipartitions(r, level):
            val = whittaker_sum(mlam, F, flavor, params, module)
            if ref is None:
                ref, ref_label = val, mlam
            elif val != ref:
                failures.append(("label-dependence", ref_label, mlam))
    if want is not None and ref is not None and ref != want:
        failures.append(("closed-form", ref, want))
    return ref, failures


def bott_lefschetz_consistency(flavor, r, level_bound, params):
    """One-box duality: the weight ratio times the mode-zero lowering
    coefficient equals the transposed raising coefficient (mode -r with the
    K weights; mode 0 with the cohomological ones up to the rank sign).
    """
    module = (KTheoryFixedPointModule if flavor == "K"
              else CohomologyFixedPointModule)(params, r)
    fails = []
    for level in range(level_bound + 1):
        for mlam in pt.enum_multipartitions(r, level):
            w_lo = fixed_weight(mlam, flavor, params)
            for (a, i, jrow) in pt.addable_boxes(mlam):
                big = pt.mp_add_box(mlam, a, jrow)
                w_hi = fixed_weight(big, flavor, params)
                f0 = _coeff(module.f_transitions(big), mlam)
                if flavor == "K":
                    e_tr = [(t, c * p ** (-r)) for (t, c, p) in module.e_transitions(mlam)]
                else:
                    sign = (-1) ** (r - 1)
                    e_tr = [(t, c * sign) for (t, c, p) in module.e_transitions(mlam)]
                ecoeff = dict(e_tr)[big]
                if (w_hi / w_lo) * f0 != ecoeff:
                    fails.append((mlam, big))
    return fails


def _coeff(transitions, label):
    for (t, c, p) in transitions:
        if t == label:
            return c
    return Fraction(0)
