//! Order-3 jets of analytic functions: a value together with the first three
//! complex derivatives at a point, with arithmetic that propagates derivatives
//! exactly (Leibniz / quotient / Faà di Bruno rules written out).
//!
//! Everything downstream that needs h', h'', h''' or w', w'' is built on this
//! algebra, so closed-form catalog maps and their compositions carry exact
//! derivatives instead of nested finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Function value and first three derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet3 {
    pub f0: Complex64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub f3: Complex64,
}

impl Jet3 {
    pub const fn new(f0: Complex64, f1: Complex64, f2: Complex64, f3: Complex64) -> Self {
        Self { f0, f1, f2, f3 }
    }

    /// Jet of the constant function c.
    pub fn constant(c: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(c, zero, zero, zero)
    }

    /// Jet of the identity function evaluated at z.
    pub fn variable(z: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self::new(z, Complex64::new(1.0, 0.0), zero, zero)
    }

    pub fn scale(self, c: Complex64) -> Self {
        Self::new(c * self.f0, c * self.f1, c * self.f2, c * self.f3)
    }

    /// Principal-branch natural logarithm.
    ///
    /// (log u)'   = u'/u
    /// (log u)''  = u''/u - (u'/u)^2
    /// (log u)''' = u'''/u - 3 u'u''/u^2 + 2 (u'/u)^3
    pub fn ln(self) -> Self {
        let u = self;
        let q1 = u.f1 / u.f0;
        let q2 = u.f2 / u.f0;
        let q3 = u.f3 / u.f0;
        Self::new(u.f0.ln(), q1, q2 - q1 * q1, q3 - 3.0 * q1 * q2 + 2.0 * q1 * q1 * q1)
    }

    pub fn exp(self) -> Self {
        let e = self.f0.exp();
        Self::new(
            e,
            e * self.f1,
            e * (self.f2 + self.f1 * self.f1),
            e * (self.f3 + 3.0 * self.f1 * self.f2 + self.f1 * self.f1 * self.f1),
        )
    }

    /// Principal-branch real power u^alpha, via u v' = alpha v u'.
    pub fn powf(self, alpha: f64) -> Self {
        let u = self;
        let v0 = u.f0.powf(alpha);
        let v1 = alpha * v0 * u.f1 / u.f0;
        let v2 = (alpha * (v1 * u.f1 + v0 * u.f2) - u.f1 * v1) / u.f0;
        let v3 = (alpha * (v2 * u.f1 + 2.0 * v1 * u.f2 + v0 * u.f3)
            - u.f2 * v1
            - 2.0 * u.f1 * v2)
            / u.f0;
        Self::new(v0, v1, v2, v3)
    }

    /// Jet of f ∘ s at z, given the jet of f at s(z) (`outer`) and the jet of s
    /// at z (`inner`). Faà di Bruno through order 3:
    ///
    /// (f∘s)'   = f' s'
    /// (f∘s)''  = f'' s'^2 + f' s''
    /// (f∘s)''' = f''' s'^3 + 3 f'' s' s'' + f' s'''
    pub fn compose(outer: Jet3, inner: Jet3) -> Self {
        let s1 = inner.f1;
        let s2 = inner.f2;
        let s3 = inner.f3;
        Self::new(
            outer.f0,
            outer.f1 * s1,
            outer.f2 * s1 * s1 + outer.f1 * s2,
            outer.f3 * s1 * s1 * s1 + 3.0 * outer.f2 * s1 * s2 + outer.f1 * s3,
        )
    }
}

impl Add for Jet3 {
    type Output = Jet3;
    fn add(self, rhs: Jet3) -> Jet3 {
        Jet3::new(self.f0 + rhs.f0, self.f1 + rhs.f1, self.f2 + rhs.f2, self.f3 + rhs.f3)
    }
}

impl Sub for Jet3 {
    type Output = Jet3;
    fn sub(self, rhs: Jet3) -> Jet3 {
        Jet3::new(self.f0 - rhs.f0, self.f1 - rhs.f1, self.f2 - rhs.f2, self.f3 - rhs.f3)
    }
}

impl Neg for Jet3 {
    type Output = Jet3;
    fn neg(self) -> Jet3 {
        Jet3::new(-self.f0, -self.f1, -self.f2, -self.f3)
    }
}

impl Mul for Jet3 {
    type Output = Jet3;
    /// Leibniz rule.
    fn mul(self, rhs: Jet3) -> Jet3 {
        let (a, b) = (self, rhs);
        Jet3::new(
            a.f0 * b.f0,
            a.f1 * b.f0 + a.f0 * b.f1,
            a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
            a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3,
        )
    }
}

impl Div for Jet3 {
    type Output = Jet3;
    /// Quotient q = a/c, solved from the Leibniz expansion of a = q c.
    fn div(self, rhs: Jet3) -> Jet3 {
        let (a, c) = (self, rhs);
        let q0 = a.f0 / c.f0;
        let q1 = (a.f1 - q0 * c.f1) / c.f0;
        let q2 = (a.f2 - q0 * c.f2 - 2.0 * q1 * c.f1) / c.f0;
        let q3 = (a.f3 - q0 * c.f3 - 3.0 * q1 * c.f2 - 3.0 * q2 * c.f1) / c.f0;
        Jet3::new(q0, q1, q2, q3)
    }
}
