// SPDX-License-Identifier: Apache-2.0

//! Univariate polynomials over a [`Field`].
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector. Operations take the field explicitly
//! instead of storing it in every polynomial.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(Vec<Fe>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Fe::ONE])
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Poly {
        Poly(vec![Fe::ZERO, Fe::ONE])
    }

    /// `c * x^k`.
    pub fn monomial(c: Fe, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k + 1];
        v[k] = c;
        Poly(v)
    }

    /// `x - a`.
    pub fn linear(f: &Field, a: Fe) -> Poly {
        Poly::new(vec![f.neg(a), Fe::ONE])
    }

    pub fn new(mut c: Vec<Fe>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    /// Builds a polynomial from small integer coefficients (low degree first).
    pub fn from_ints(f: &Field, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| f.from_int(v)).collect())
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn deg_i(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.0.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn lead(&self) -> Fe {
        self.0.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, f: &Field, c: Fe) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Fe::ZERO; k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![Fe::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        Poly::new(r)
    }

    pub fn pow(&self, f: &Field, mut e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, f: &Field, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.0.clone();
        if r.len() < d.0.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let li = f.inv(d.lead())?;
        let dl = d.0.len();
        let mut q = vec![Fe::ZERO; r.len() - dl + 1];
        for s in (0..q.len()).rev() {
            let c = f.mul(r[s + dl - 1], li);
            if c.is_zero() {
                continue;
            }
            q[s] = c;
            for (i, &di) in d.0.iter().enumerate() {
                r[s + i] = f.sub(r[s + i], f.mul(c, di));
            }
        }
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn rem(&self, f: &Field, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(f, d)?.1)
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, f: &Field, d: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(f, d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let li = f.inv(self.lead()).expect("nonzero lead");
        self.scale(f, li)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &Field, x: Fe) -> Fe {
        self.0.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    /// Coefficients of `self(x + a)`, i.e. the Taylor expansion at `a`.
    pub fn taylor(&self, f: &Field, a: Fe) -> Vec<Fe> {
        // repeated synthetic division by (x - a)
        let mut cur = self.0.clone();
        let mut out = Vec::with_capacity(cur.len());
        while !cur.is_empty() {
            let mut carry = Fe::ZERO;
            let mut next = vec![Fe::ZERO; cur.len() - 1];
            for i in (0..cur.len()).rev() {
                let v = f.add(cur[i], carry);
                if i == 0 {
                    out.push(v);
                } else {
                    next[i - 1] = v;
                    carry = f.mul(v, a);
                }
            }
            cur = next;
        }
        out
    }

    /// Multiplicity of `a` as a root; `None` for the zero polynomial.
    pub fn ord_at(&self, f: &Field, a: Fe) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.taylor(f, a).iter().take_while(|c| c.is_zero()).count())
    }

    /// Distinct roots in the field, in enumeration order.
    pub fn roots(&self, f: &Field) -> Vec<Fe> {
        if self.is_zero() {
            return f.elements().collect();
        }
        if self.0.len() == 1 {
            return Vec::new();
        }
        f.elements().filter(|&a| self.eval(f, a).is_zero()).collect()
    }

    /// True when the polynomial factors into linear factors over the field.
    pub fn splits(&self, f: &Field) -> bool {
        let Some(d) = self.degree() else { return true };
        let total: usize = self.roots(f).iter().map(|&a| self.ord_at(f, a).unwrap()).sum();
        total == d
    }

    /// `self(g(x))`.
    pub fn compose(&self, f: &Field, g: &Poly) -> Poly {
        self.0
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, &c| acc.mul(f, g).add(f, &Poly::constant(c)))
    }

    /// Coefficients reversed with respect to degree `n`: `x^n self(1/x)`.
    pub fn reverse(&self, n: usize) -> Poly {
        let mut v = vec![Fe::ZERO; n + 1];
        for (i, &c) in self.0.iter().enumerate() {
            assert!(i <= n, "reverse degree too small");
            v[n - i] = c;
        }
        Poly::new(v)
    }

    pub fn format(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let digits = f.coeffs(c);
            let cs = if digits[1..].iter().all(|&d| d == 0) { digits[0].to_string() } else { format!("({})", f.format(c)) };
            terms.push(match (i, c == Fe::ONE) {
                (0, _) => cs,
                (1, true) => "x".into(),
                (1, false) => format!("{cs}*x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{cs}*x^{i}"),
            });
        }
        terms.join(" + ")
    }
}
