"""Independent sympy oracle for the degree-n Virasoro functional equation.

Solves (lam-mu) f(D, lam+mu) = (D+lam+Dl*mu) f(D,lam) + (D+Db*lam) f(D+lam,mu)
 - (D+mu+Dl*lam) f(D,mu) - (D+Db*mu) f(D+mu,lam)
directly for homogeneous f of degree n, and compares with the a_k recursion
and the closed forms for a_4..a_8.
"""
import sympy as sp
from sympy import binomial as C, Rational as R

D, lam, mu, Db, n_ = sp.symbols('D lam mu Db n')


def direct_solutions(n, db, dl):
    a = sp.symbols(f'a0:{n+1}')
    f = lambda x, y: sum(a[j] * x**(n - j) * y**j for j in range(n + 1))
    expr = ((lam - mu) * f(D, lam + mu) - (D + lam + dl * mu) * f(D, lam)
            - (D + db * lam) * f(D + lam, mu) + (D + mu + dl * lam) * f(D, mu)
            + (D + db * mu) * f(D + mu, lam))
    eqs = sp.Poly(sp.expand(expr), D, lam, mu).coeffs()
    sol = sp.solve(eqs, a, dict=True)
    return a, sol


def recursion(n, db, a2, a3):
    a = {0: 0, 1: 0, 2: a2, 3: a3}
    for k in range(4, n + 1):
        if k < n:
            rhs = (sum((n - j) * C(n - j - 1, k - j) * a[j] for j in range(k))
                   + db * sum((n - j) * C(n - j - 1, k - j - 1) * a[j] for j in range(k))
                   - sum(j * C(n - j, k - j + 1) * a[j] for j in range(1, k))
                   - db * sum((j - 1) * C(n - j, k - j) * a[j] for j in range(1, k)))
        else:
            rhs = db * sum((n - 2 * j + 1) * a[j] for j in range(n))
        a[k] = sp.expand(rhs / (2**k - (k * k - k + 2)))
    return a


def closed(n, db, a):
    a = dict(a)
    for k in range(n + 1, 9):
        a[k] = 0
    out = {}
    out[4] = R(1, 12)*(n-2)*(n-3)*(n-4+3*db)*a[2] - R(1, 4)*(n-3)*(n-4+2*db)*a[3]
    out[5] = R(1, 120)*(n-2)*(n-3)*(n-4)*(n-5+4*db)*a[2] - R(1, 10)*(n-4)*(n-5+2*db)*a[4]
    if n == 6:
        out[6] = db*(3*a[2]+a[3]-a[4]-3*a[5])/32
    else:
        out[6] = (R(1, 40)*(n-2)*(n-3)*(n-4)*(n-5)*(n-6+5*db)*a[2]
                  + R(1, 24)*(n-3)*(n-4)*(n-5)*(n-6+4*db)*a[3]
                  - R(1, 6)*(n-4)*(n-5)*(n-6+3*db)*a[4]
                  - R(3, 2)*(n-5)*(n-6+2*db)*a[5])/32
    out[7] = (R(1, 180)*(n-2)*(n-3)*(n-4)*(n-5)*(n-6)*(n-7+6*db)*a[2]
              + R(1, 60)*(n-3)*(n-4)*(n-5)*(n-6)*(n-7+5*db)*a[3]
              - R(1, 3)*(n-5)*(n-6)*(n-7+3*db)*a[5]
              - 2*(n-6)*(n-7+2*db)*a[6])/84
    if n == 8:
        out[8] = db*(5*a[2]+3*a[3]+a[4]-a[5]-3*a[6]-5*a[7])/198
    else:
        out[8] = (R(1, 1008)*(n-2)*(n-3)*(n-4)*(n-5)*(n-6)*(n-7)*(n-8+7*db)*a[2]
                  + R(1, 240)*(n-3)*(n-4)*(n-5)*(n-6)*(n-7)*(n-8+6*db)*a[3]
                  + R(1, 120)*(n-4)*(n-5)*(n-6)*(n-7)*(n-8+5*db)*a[4]
                  - R(1, 24)*(n-5)*(n-6)*(n-7)*(n-8+4*db)*a[5]
                  - R(1, 2)*(n-6)*(n-7)*(n-8+3*db)*a[6]
                  - R(5, 2)*(n-7)*(n-8+2*db)*a[7])/198
    return {k: sp.expand(v) for k, v in out.items()}



if __name__ == '__main__':
    a2, a3 = sp.symbols('a2 a3')
    for n in range(6, 11):
        rec = recursion(n, Db, a2, a3)
        cl = closed(n, Db, rec)
        for k in range(4, min(n, 8) + 1):
            diff = sp.simplify(rec[k] - cl[k])
            print(n, k, 'OK' if diff == 0 else f'DIFF {sp.factor(diff)}')
