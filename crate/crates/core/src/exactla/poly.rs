use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Matrix};

/// Univariate polynomial, coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![F::one()])
    }

    /// `x - r`
    pub fn linear(r: F) -> Self {
        Poly::new(vec![-r, F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = F::one() / l.clone();
                Poly::new(self.coeffs.iter().map(|c| c.clone() * inv.clone()).collect())
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(F::zero);
        Poly::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(F::zero);
        Poly::new((0..n).map(|i| get(self, i) - get(other, i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut out[i + j], F::zero());
                out[i + j] = cur + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![F::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let cur = std::mem::replace(&mut rem[k + j], F::zero());
                rem[k + j] = cur - c.clone() * dc.clone();
            }
            q[k] = c;
        }
        (Poly::new(q), Poly::new(rem))
    }

    /// Monic gcd together with Bezout cofactors: `u*self + v*other = g`.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(l) => {
                let inv = Poly::new(vec![F::one() / l]);
                (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
            }
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc.matmul(m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    /// Minimal polynomial of a square matrix: the first linear dependency
    /// among `I, m, m², …`, made monic.
    pub fn minimal_polynomial(m: &Matrix<F>) -> Self {
        assert!(m.is_square());
        let n = m.rows();
        let mut powers: Vec<Vec<F>> = vec![Matrix::<F>::identity(n).entries().to_vec()];
        let mut cur = Matrix::identity(n);
        loop {
            cur = cur.matmul(m);
            let target = cur.entries().to_vec();
            let basis = Matrix::from_columns(&powers, n * n);
            if let Some(x) = basis.solve(&target) {
                let mut coeffs: Vec<F> = x.into_iter().map(|c| -c).collect();
                coeffs.push(F::one());
                return Poly::new(coeffs);
            }
            powers.push(target);
        }
    }
}

/// Distinct rational roots of a polynomial with rational coefficients, in
/// increasing order, by the rational root theorem.
pub fn rational_roots(p: &Poly<BigRational>) -> Vec<BigRational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    // Clear denominators and strip factors of x.
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let shift = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let ints = &ints[shift..];
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    if ints.len() > 1 {
        let c0 = ints[0].abs();
        let cn = ints[ints.len() - 1].abs();
        for num in divisors(&c0) {
            for den in divisors(&cn) {
                for sign in [1i64, -1] {
                    let r = BigRational::new(num.clone() * BigInt::from(sign), den.clone());
                    if p.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    // Coefficients of minimal polynomials in scope are tiny; trial division is fine.
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}
