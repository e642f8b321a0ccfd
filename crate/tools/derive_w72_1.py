"""Derive the singly-even length-72, d>=12 weight enumerator family W_72,1
(shadow S_0 = 0, S_4 = 0) from Gleason's theorem, parameterised by
beta = A_12 / 2 and gamma = S_8.  Writes the template file to stdout."""
import sympy as sp

y = sp.symbols('y')
a = sp.symbols('a0:10')
beta, gamma = sp.symbols('beta gamma')
W = sum(a[j] * (1 + y**2)**(36 - 4*j) * (y**2 * (1 - y**2)**2)**j for j in range(10))
S = sum(a[j] * (-1)**j * sp.Rational(2)**(36 - 6*j) * y**(36 - 4*j) * (1 - y**4)**(2*j) for j in range(10))
Wp, Sp = sp.Poly(sp.expand(W), y), sp.Poly(sp.expand(S), y)
eqs = [sp.Eq(Wp.coeff_monomial(1), 1)] + [sp.Eq(Wp.coeff_monomial(y**w), 0) for w in (2, 4, 6, 8, 10)]
eqs += [sp.Eq(Sp.coeff_monomial(1), 0), sp.Eq(Sp.coeff_monomial(y**4), 0)]
eqs += [sp.Eq(Wp.coeff_monomial(y**12), 2*beta), sp.Eq(Sp.coeff_monomial(y**8), gamma)]
sol = sp.solve(eqs, a, dict=True)[0]
Ws = sp.Poly(sp.expand(W.subs(sol)), y)
print("# Singly-even self-dual [72,36,12] weight enumerator family W_72,1.")
print("# A_w = c_w + m_beta*beta + m_gamma*gamma")
print("params: beta,gamma")
for w in range(12, 73, 2):
    e = sp.expand(Ws.coeff_monomial(y**w))
    c = e.subs({beta: 0, gamma: 0}); mb = e.coeff(beta); mg = e.coeff(gamma)
    assert all(v.is_integer for v in (c, mb, mg)), (w, e)
    print(f"{w}\t{c}\t{mb},{mg}")
