"""Independent oracles built on sympy.  They share no code with the package
beyond reading f's values, and use a different formulation: a general
matrix for each linear map instead of the graded decomposition."""

from sympy import I, Rational
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix


def to_qqi(s):
    return QQ_I.from_sympy(Rational(s.real.numerator, s.real.denominator) + I * Rational(s.imag.numerator, s.imag.denominator))


def _rank(rows, ncols):
    if not rows:
        return 0
    return DomainMatrix(rows, (len(rows), ncols), QQ_I).rank()


def _finite_setup(f):
    elems = f.group.elements()
    idx = {a: i for i, a in enumerate(elems)}
    fv = [to_qqi(f(a)) for a in elems]
    add = [[idx[f.group.add(a, b)] for b in elems] for a in elems]
    sub = [[idx[f.group.sub(a, b)] for b in elems] for a in elems]
    return elems, fv, add, sub


def halfder_dimension(f):
    """dim of {D : D[x,y] = 1/2([Dx,y] + [x,Dy])}, D a full n x n matrix.

    Unknown D[t][k] is the e_t coefficient of D(e_k).
    """
    elems, fv, add, sub = _finite_setup(f)
    n = len(elems)
    half = QQ_I.from_sympy(Rational(1, 2))
    zero = QQ_I.zero
    rows = []
    for a in range(n):
        for b in range(n):
            for t in range(n):
                row = [zero] * (n * n)
                # lhs: (f(b) - f(a)) D[t][a+b]
                row[t * n + add[a][b]] += fv[b] - fv[a]
                # [D e_a, e_b]_t = D[t-b][a] (f(b) - f(t-b))
                s = sub[t][b]
                row[s * n + a] -= half * (fv[b] - fv[s])
                # [e_a, D e_b]_t = D[t-a][b] (f(t-a) - f(a))
                s = sub[t][a]
                row[s * n + b] -= half * (fv[s] - fv[a])
                if any(row):
                    rows.append(row)
    return n * n - _rank(rows, n * n)


def tpp_linear_dimension(f):
    """dim of the commutative products satisfying 2 z*[x,y] = [z*x,y] + [x,z*y].

    Both conditions are linear in the structure constants C[a][b][t]
    (coefficient of e_t in e_a*e_b); associativity is quadratic and left out,
    so this bounds the space of transposed Poisson structures from above.
    """
    elems, fv, add, sub = _finite_setup(f)
    n = len(elems)
    zero = QQ_I.zero
    one = QQ_I.one

    def var(a, b, t):
        return (a * n + b) * n + t

    rows = []
    for a in range(n):
        for b in range(a + 1, n):
            for t in range(n):
                row = [zero] * n**3
                row[var(a, b, t)] = one
                row[var(b, a, t)] = -one
                rows.append(row)
    for c in range(n):
        for a in range(n):
            for b in range(n):
                for t in range(n):
                    row = [zero] * n**3
                    row[var(c, add[a][b], t)] += 2 * (fv[b] - fv[a])
                    s = sub[t][b]
                    row[var(c, a, s)] -= fv[b] - fv[s]
                    s = sub[t][a]
                    row[var(c, b, s)] -= fv[s] - fv[a]
                    if any(row):
                        rows.append(row)
    return n**3 - _rank(rows, n**3)
