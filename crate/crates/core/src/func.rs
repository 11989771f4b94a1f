// SPDX-License-Identifier: Apache-2.0

//! Rational functions `(u(x) + v(x) y) / w(x)` on a curve, their
//! valuations, divisors and values at rational places.
//!
//! Valuations and leading coefficients are taken with respect to a fixed
//! uniformizer at each place:
//!
//! * affine, `b != 0`: `x - a`, with `y` expanded as a power series;
//! * affine, `b = 0`: `y` itself, so `v(x - a) = 2`;
//! * odd infinity: `x^2 / y`, so `v(x) = -2`, `v(y) = -5`;
//! * even infinities: `1/x`, so `v(x) = -1`, `v(y) = -3`.
//!
//! Fixing the uniformizers makes leading coefficients multiplicative, which
//! lets products of powers be evaluated from the leading terms of their
//! factors.

use std::collections::BTreeMap;

use crate::curve::{Curve, Infinity, Place};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Func {
    u: Poly,
    v: Poly,
    w: Poly,
}

/// Valuation and leading coefficient of a nonzero function at a place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lead {
    pub val: i64,
    pub coeff: Fe,
}

impl Lead {
    pub fn mul(self, f: &Field, o: Lead) -> Lead {
        Lead { val: self.val + o.val, coeff: f.mul(self.coeff, o.coeff) }
    }

    pub fn pow(self, f: &Field, e: i64) -> Lead {
        Lead { val: self.val * e, coeff: f.pow(self.coeff, e).expect("nonzero leading coefficient") }
    }

    /// Value at the place: the coefficient when the valuation is zero.
    pub fn value(self) -> std::result::Result<Fe, ()> {
        match self.val {
            0 => Ok(self.coeff),
            v if v > 0 => Ok(Fe::ZERO),
            _ => Err(()),
        }
    }
}

impl Func {
    /// Builds and normalizes `(u + v y) / w`.
    pub fn new(field: &Field, u: Poly, v: Poly, w: Poly) -> Result<Func> {
        if w.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(field, u, v, w))
    }

    fn normalized(field: &Field, u: Poly, v: Poly, w: Poly) -> Func {
        if u.is_zero() && v.is_zero() {
            return Func::zero();
        }
        let g = u.gcd(field, &v).gcd(field, &w);
        let (u, v, w) = if g.degree() == Some(0) {
            (u, v, w)
        } else {
            (
                u.div_exact(field, &g).unwrap(),
                v.div_exact(field, &g).unwrap(),
                w.div_exact(field, &g).unwrap(),
            )
        };
        let li = field.inv(w.lead()).unwrap();
        Func { u: u.scale(field, li), v: v.scale(field, li), w: w.scale(field, li) }
    }

    pub fn zero() -> Func {
        Func { u: Poly::zero(), v: Poly::zero(), w: Poly::one() }
    }

    pub fn one() -> Func {
        Func::from_poly(Poly::one())
    }

    pub fn constant(c: Fe) -> Func {
        Func::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Func {
        Func { u: p, v: Poly::zero(), w: Poly::one() }
    }

    pub fn x() -> Func {
        Func::from_poly(Poly::x())
    }

    pub fn y() -> Func {
        Func { u: Poly::zero(), v: Poly::one(), w: Poly::one() }
    }

    /// `1 / (x - a)`.
    pub fn inv_linear(field: &Field, a: Fe) -> Func {
        Func { u: Poly::one(), v: Poly::zero(), w: Poly::linear(field, a) }
    }

    pub fn u(&self) -> &Poly {
        &self.u
    }

    pub fn v(&self) -> &Poly {
        &self.v
    }

    pub fn w(&self) -> &Poly {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn add(&self, c: &Curve, o: &Func) -> Func {
        let f = c.field();
        if self.w == o.w {
            return Self::normalized(f, self.u.add(f, &o.u), self.v.add(f, &o.v), self.w.clone());
        }
        Self::normalized(
            f,
            self.u.mul(f, &o.w).add(f, &o.u.mul(f, &self.w)),
            self.v.mul(f, &o.w).add(f, &o.v.mul(f, &self.w)),
            self.w.mul(f, &o.w),
        )
    }

    pub fn neg(&self, c: &Curve) -> Func {
        let f = c.field();
        Func { u: self.u.neg(f), v: self.v.neg(f), w: self.w.clone() }
    }

    pub fn sub(&self, c: &Curve, o: &Func) -> Func {
        self.add(c, &o.neg(c))
    }

    pub fn scale(&self, c: &Curve, k: Fe) -> Func {
        let f = c.field();
        if k.is_zero() {
            return Func::zero();
        }
        Func { u: self.u.scale(f, k), v: self.v.scale(f, k), w: self.w.clone() }
    }

    pub fn mul(&self, c: &Curve, o: &Func) -> Func {
        let f = c.field();
        let vv = self.v.mul(f, &o.v).mul(f, c.f());
        Self::normalized(
            f,
            self.u.mul(f, &o.u).add(f, &vv),
            self.u.mul(f, &o.v).add(f, &self.v.mul(f, &o.u)),
            self.w.mul(f, &o.w),
        )
    }

    /// `u^2 - v^2 f`, the norm of the numerator down to `F_q(x)`.
    pub fn numerator_norm(&self, c: &Curve) -> Poly {
        norm(c, &self.u, &self.v)
    }

    pub fn inv(&self, c: &Curve) -> Result<Func> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = c.field();
        let n = self.numerator_norm(c);
        Ok(Self::normalized(f, self.w.mul(f, &self.u), self.w.mul(f, &self.v).neg(f), n))
    }

    pub fn div(&self, c: &Curve, o: &Func) -> Result<Func> {
        Ok(self.mul(c, &o.inv(c)?))
    }

    pub fn pow(&self, c: &Curve, e: i64) -> Result<Func> {
        let base = if e < 0 { self.inv(c)? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Func::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(c, &b);
            }
            b = b.mul(c, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image under the hyperelliptic involution `y -> -y`.
    pub fn conjugate(&self, c: &Curve) -> Func {
        Func { u: self.u.clone(), v: self.v.neg(c.field()), w: self.w.clone() }
    }

    pub fn format(&self, c: &Curve) -> String {
        let f = c.field();
        let num = match (self.u.is_zero(), self.v.is_zero()) {
            (true, true) => return "0".into(),
            (false, true) => self.u.format(f),
            (true, false) => format!("({})*y", self.v.format(f)),
            (false, false) => format!("{} + ({})*y", self.u.format(f), self.v.format(f)),
        };
        if self.w == Poly::one() {
            num
        } else {
            format!("({num}) / ({})", self.w.format(f))
        }
    }

    /// Leading term at a place.
    pub fn lead(&self, c: &Curve, p: &Place) -> Result<Lead> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let num = lead_elem(c, &self.u, &self.v, p);
        let den = lead_elem(c, &self.w, &Poly::zero(), p);
        let f = c.field();
        Ok(Lead { val: num.val - den.val, coeff: f.div(num.coeff, den.coeff) })
    }

    pub fn valuation(&self, c: &Curve, p: &Place) -> Result<i64> {
        Ok(self.lead(c, p)?.val)
    }

    /// Value at a place; errors when the function has a pole there.
    pub fn evaluate(&self, c: &Curve, p: &Place) -> Result<Fe> {
        if self.is_zero() {
            return Ok(Fe::ZERO);
        }
        if let Place::Affine(a, b) = *p {
            let f = c.field();
            let w = self.w.eval(f, a);
            if !w.is_zero() {
                let num = f.add(self.u.eval(f, a), f.mul(self.v.eval(f, a), b));
                return Ok(f.div(num, w));
            }
        }
        self.lead(c, p)?.value().map_err(|_| Error::PoleAtPlace(p.format(c.field())))
    }

    /// Divisor of zeros and poles. Errors if any zero or pole lies at a
    /// non-rational place.
    pub fn principal_divisor(&self, c: &Curve) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let f = c.field();
        let n = self.numerator_norm(c);
        let mut xs: Vec<Fe> = Vec::new();
        for poly in [&n, &self.w] {
            if !poly.splits(f) {
                return Err(Error::IrrationalSupport);
            }
            xs.extend(poly.roots(f));
        }
        xs.sort();
        xs.dedup();
        let mut d = Divisor::zero();
        for a in xs {
            let places = c.places_over(a);
            if places.is_empty() {
                // inert over a: only a zero of the norm without a pole can
                // cancel, and that still leaves a zero there
                return Err(Error::IrrationalSupport);
            }
            for p in places {
                d.add_term(p, self.valuation(c, &p)?);
            }
        }
        match c.infinity() {
            Infinity::Inert => {
                let deg_n = n.deg_i();
                if deg_n % 2 != 0 || self.w.deg_i() * 2 != deg_n {
                    return Err(Error::IrrationalSupport);
                }
            }
            _ => {
                for p in c.infinite_places() {
                    d.add_term(p, self.valuation(c, &p)?);
                }
            }
        }
        Ok(d)
    }

    /// Pole part of the principal divisor, as a positive divisor.
    pub fn pole_divisor(&self, c: &Curve) -> Result<Divisor> {
        let d = self.principal_divisor(c)?;
        Ok(Divisor::from_terms(d.iter().filter(|(_, k)| *k < 0).map(|(p, k)| (*p, -k))))
    }
}

fn norm(c: &Curve, u: &Poly, v: &Poly) -> Poly {
    let f = c.field();
    u.mul(f, u).sub(f, &v.mul(f, v).mul(f, c.f()))
}

/// Power series `Y` with `Y^2 = F` and `Y(0) = y0 != 0`, to `len` terms.
pub(crate) fn sqrt_series(f: &Field, big_f: &[Fe], y0: Fe, len: usize) -> Vec<Fe> {
    let mut y = Vec::with_capacity(len);
    if len == 0 {
        return y;
    }
    y.push(y0);
    let inv = f.inv(f.add(y0, y0)).expect("2*y0 is nonzero");
    for n in 1..len {
        let mut s = big_f.get(n).copied().unwrap_or(Fe::ZERO);
        for k in 1..n {
            s = f.sub(s, f.mul(y[k], y[n - k]));
        }
        y.push(f.mul(s, inv));
    }
    y
}

/// Series in the local parameter of `u + v y` at a non-Weierstrass place:
/// the first `len` coefficients, with the curve data `(U, V, Y)` supplied.
pub(crate) fn elem_series(f: &Field, uu: &[Fe], vv: &[Fe], yy: &[Fe], len: usize) -> Vec<Fe> {
    (0..len)
        .map(|n| {
            let mut s = uu.get(n).copied().unwrap_or(Fe::ZERO);
            for j in 0..=n.min(vv.len().saturating_sub(1)) {
                if j < vv.len() && n - j < yy.len() {
                    s = f.add(s, f.mul(vv[j], yy[n - j]));
                }
            }
            s
        })
        .collect()
}

/// Leading term of the nonzero element `u + v y` at a place.
pub(crate) fn lead_elem(c: &Curve, u: &Poly, v: &Poly, p: &Place) -> Lead {
    let f = c.field();
    match *p {
        Place::Affine(a, b) if !b.is_zero() => {
            let n = norm(c, u, v);
            let kmax = n.ord_at(f, a).expect("nonzero norm");
            let len = kmax + 1;
            let uu = u.taylor(f, a);
            let vv = v.taylor(f, a);
            let yy = sqrt_series(f, &c.f().taylor(f, a), b, len);
            let h = elem_series(f, &uu, &vv, &yy, len);
            let (i, &co) = h
                .iter()
                .enumerate()
                .find(|(_, x)| !x.is_zero())
                .expect("valuation bounded by the norm");
            Lead { val: i as i64, coeff: co }
        }
        Place::Affine(a, _) => {
            // uniformizer y; (x - a) = y^2 / f'(a) + ...
            let fp = c.f().derivative(f).eval(f, a);
            let cand = |poly: &Poly, odd: i64| -> Option<Lead> {
                let k = poly.ord_at(f, a)?;
                let co = poly.taylor(f, a)[k];
                Some(Lead {
                    val: 2 * k as i64 + odd,
                    coeff: f.mul(co, f.pow(fp, -(k as i64)).unwrap()),
                })
            };
            min_lead(cand(u, 0), cand(v, 1))
        }
        Place::InfOdd => {
            let f5 = c.f().lead();
            let cu = u.degree().map(|d| Lead {
                val: -2 * d as i64,
                coeff: f.mul(u.lead(), f.pow(f5, -(d as i64)).unwrap()),
            });
            let cv = v.degree().map(|d| Lead {
                val: -2 * d as i64 - 5,
                coeff: f.mul(v.lead(), f.pow(f5, -(d as i64 + 2)).unwrap()),
            });
            min_lead(cu, cv)
        }
        Place::InfPlus | Place::InfMinus => {
            let Infinity::Split { c: sc } = c.infinity() else {
                panic!("place not on curve");
            };
            let y0 = if *p == Place::InfPlus { sc } else { f.neg(sc) };
            let du = u.deg_i();
            let dv = v.deg_i();
            let d = du.max(dv + 3);
            let dn = norm(c, u, v).deg_i();
            let len = (2 * d - dn + 1) as usize;
            let uu = pad_rev(u, d);
            let vv = pad_rev(v, d - 3);
            let rev_f = pad_rev(c.f(), 6);
            let yy = sqrt_series(f, &rev_f, y0, len);
            let h = elem_series(f, &uu, &vv, &yy, len);
            let (i, &co) = h
                .iter()
                .enumerate()
                .find(|(_, x)| !x.is_zero())
                .expect("valuation bounded by the norm");
            Lead { val: i as i64 - d, coeff: co }
        }
    }
}

// Coefficients of s^d p(1/s), low degree first, untrimmed.
fn pad_rev(p: &Poly, d: i64) -> Vec<Fe> {
    if p.is_zero() || d < 0 {
        return Vec::new();
    }
    let d = d as usize;
    let mut out = vec![Fe::ZERO; d + 1];
    for (i, &c) in p.coeffs().iter().enumerate() {
        out[d - i] = c;
    }
    out
}

fn min_lead(a: Option<Lead>, b: Option<Lead>) -> Lead {
    match (a, b) {
        (Some(x), Some(y)) => {
            if x.val <= y.val {
                x
            } else {
                y
            }
        }
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => panic!("zero element has no leading term"),
    }
}

/// A divisor supported on rational places.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor(BTreeMap<Place, i64>);

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor(BTreeMap::new())
    }

    pub fn from_terms<I: IntoIterator<Item = (Place, i64)>>(it: I) -> Divisor {
        let mut d = Divisor::zero();
        for (p, k) in it {
            d.add_term(p, k);
        }
        d
    }

    pub fn add_term(&mut self, p: Place, k: i64) {
        if k == 0 {
            return;
        }
        let e = self.0.entry(p).or_insert(0);
        *e += k;
        if *e == 0 {
            self.0.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.0.iter().map(|(p, &k)| (p, k))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.0.keys()
    }

    pub fn plus(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, k) in o.iter() {
            d.add_term(*p, k);
        }
        d
    }

    pub fn negate(&self) -> Divisor {
        Divisor(self.0.iter().map(|(p, &k)| (*p, -k)).collect())
    }

    /// True when `self <= o` coefficientwise.
    pub fn le(&self, o: &Divisor) -> bool {
        o.plus(&self.negate()).is_effective()
    }

    pub fn is_effective(&self) -> bool {
        self.0.values().all(|&k| k >= 0)
    }

    pub fn format(&self, f: &Field) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0
            .iter()
            .map(|(p, k)| format!("{k}*{}", p.format(f)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f9_curve() -> Curve {
        let f = Field::new(3, 2, None).unwrap();
        Curve::new(&f, Poly::from_ints(&f, &[0, 2, 0, 1, 0, 1])).unwrap()
    }

    fn f25_odd() -> Curve {
        let f = Field::new(5, 2, None).unwrap();
        Curve::new(&f, Poly::from_ints(&f, &[0, 1, 0, 0, 0, 1])).unwrap()
    }

    fn f25_even() -> Curve {
        let f = Field::new(5, 2, None).unwrap();
        Curve::new(&f, Poly::from_ints(&f, &[2, 0, 0, 1, 0, 0, 1])).unwrap()
    }

    fn rand_poly(rng: &mut ChaCha8Rng, f: &Field, maxdeg: usize) -> Poly {
        let d = rng.gen_range(0..=maxdeg);
        Poly::new((0..=d).map(|_| Fe(rng.gen_range(0..f.order()))).collect())
    }

    fn rand_func(rng: &mut ChaCha8Rng, c: &Curve) -> Func {
        let f = c.field();
        loop {
            let u = rand_poly(rng, f, 3);
            let v = if rng.gen_bool(0.6) { rand_poly(rng, f, 2) } else { Poly::zero() };
            let mut w = rand_poly(rng, f, 2);
            if w.is_zero() {
                w = Poly::one();
            }
            let g = Func::new(f, u, v, w).unwrap();
            if !g.is_zero() {
                return g;
            }
        }
    }

    #[test]
    fn y_squared_is_f() {
        let c = f9_curve();
        let yy = Func::y().mul(&c, &Func::y());
        assert_eq!(yy, Func::from_poly(c.f().clone()));
    }

    #[test]
    fn common_denominator_example() {
        let c = f9_curve();
        let f = c.field();
        let a = Fe::ONE;
        let one = Func::inv_linear(f, a);
        // 1 / (-x - a)
        let two = Func::new(f, Poly::one(), Poly::zero(), Poly::new(vec![f.neg(a), f.neg(Fe::ONE)]))
            .unwrap();
        let s = one.add(&c, &two);
        let den = Poly::linear(f, a).mul(f, &Poly::new(vec![f.neg(a), f.neg(Fe::ONE)]));
        let expect = Func::new(f, Poly::constant(f.neg(f.add(a, a))), Poly::zero(), den).unwrap();
        assert_eq!(s, expect);
    }

    #[test]
    fn inverse_roundtrip_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for c in [f9_curve(), f25_odd(), f25_even()] {
            for _ in 0..1000 {
                let g = rand_func(&mut rng, &c);
                assert_eq!(g.mul(&c, &g.inv(&c).unwrap()), Func::one());
            }
        }
        assert!(matches!(Func::zero().inv(&f9_curve()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn basic_valuations() {
        let c = f25_odd();
        assert_eq!(Func::x().valuation(&c, &Place::InfOdd).unwrap(), -2);
        assert_eq!(Func::y().valuation(&c, &Place::InfOdd).unwrap(), -5);
        let e = f25_even();
        assert_eq!(Func::x().valuation(&e, &Place::InfPlus).unwrap(), -1);
        assert_eq!(Func::y().valuation(&e, &Place::InfMinus).unwrap(), -3);
        let f = c.field();
        for p in c.enumerate_places() {
            if let Place::Affine(a, b) = p {
                let g = Func::from_poly(Poly::linear(f, a));
                assert_eq!(g.valuation(&c, &p).unwrap(), if b.is_zero() { 2 } else { 1 });
            }
        }
        assert!(matches!(Func::zero().valuation(&c, &Place::InfOdd), Err(Error::ZeroFunction)));
    }

    #[test]
    fn valuation_is_additive_and_degree_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for c in [f9_curve(), f25_odd(), f25_even()] {
            let places = c.enumerate_places();
            for _ in 0..200 {
                let g = rand_func(&mut rng, &c);
                let h = rand_func(&mut rng, &c);
                let gh = g.mul(&c, &h);
                let p = places[rng.gen_range(0..places.len())];
                let lg = g.lead(&c, &p).unwrap();
                let lh = h.lead(&c, &p).unwrap();
                assert_eq!(gh.lead(&c, &p).unwrap(), lg.mul(c.field(), lh));
                if let Ok(d) = gh.principal_divisor(&c) {
                    assert_eq!(d.degree(), 0);
                }
            }
        }
    }

    // Independent value oracle: at affine places substitute (a, b) directly
    // when the denominator does not vanish.
    #[test]
    fn evaluate_matches_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in [f9_curve(), f25_odd(), f25_even()] {
            let f = c.field();
            for _ in 0..300 {
                let g = rand_func(&mut rng, &c);
                let h = rand_func(&mut rng, &c);
                for p in c.enumerate_places() {
                    let Place::Affine(a, b) = p else { continue };
                    let wa = g.w().eval(f, a);
                    if wa.is_zero() {
                        continue;
                    }
                    let direct = f.div(f.add(g.u().eval(f, a), f.mul(g.v().eval(f, a), b)), wa);
                    assert_eq!(g.evaluate(&c, &p).unwrap(), direct);
                    if let (Ok(x), Ok(y)) = (g.evaluate(&c, &p), h.evaluate(&c, &p)) {
                        assert_eq!(g.add(&c, &h).evaluate(&c, &p).unwrap(), f.add(x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn evaluation_cancels_common_zeros() {
        let c = f25_odd();
        let f = c.field();
        // (y - b) / (x - a) at (a, b), b != 0: value is f'(a) / (2b)
        let p = c.enumerate_places().into_iter().find(|p| matches!(p, Place::Affine(_, b) if !b.is_zero())).unwrap();
        let Place::Affine(a, b) = p else { unreachable!() };
        let g = Func::new(f, Poly::constant(f.neg(b)), Poly::one(), Poly::linear(f, a)).unwrap();
        let expect = f.div(c.f().derivative(f).eval(f, a), f.add(b, b));
        assert_eq!(g.evaluate(&c, &p).unwrap(), expect);
        assert!(matches!(Func::inv_linear(f, a).evaluate(&c, &p), Err(Error::PoleAtPlace(_))));
        // x/(x+4) = 1 + 1/(x-1) in characteristic 5: a pole over x = 1
        let g = Func::new(f, Poly::x(), Poly::zero(), Poly::from_ints(f, &[4, 1])).unwrap();
        for p1 in c.places_over(Fe::ONE) {
            assert!(matches!(g.evaluate(&c, &p1), Err(Error::PoleAtPlace(_))));
        }
        let p2 = c.places_over(f.from_int(2))[0];
        assert_eq!(g.evaluate(&c, &p2).unwrap(), f.div(f.from_int(2), f.from_int(6)));
    }

    #[test]
    fn divisor_of_linear_function() {
        for c in [f25_odd(), f25_even()] {
            let f = c.field();
            for a in f.elements() {
                let ps = c.places_over(a);
                let d = Func::from_poly(Poly::linear(f, a)).principal_divisor(&c);
                if ps.is_empty() {
                    assert!(matches!(d, Err(Error::IrrationalSupport)));
                    continue;
                }
                let mut expect = Divisor::from_terms(c.d_infinity().into_iter().map(|(p, k)| (p, -k)));
                if ps.len() == 2 {
                    expect.add_term(ps[0], 1);
                    expect.add_term(ps[1], 1);
                } else {
                    expect.add_term(ps[0], 2);
                }
                assert_eq!(d.unwrap(), expect);
            }
        }
    }

    #[test]
    fn invariant_function_pole_divisor() {
        // z = 1/(x^2 + 2) on the F_9 curve: poles at the places over x = +-1
        let c = f9_curve();
        let f = c.field();
        let z = Func::new(f, Poly::one(), Poly::zero(), Poly::from_ints(f, &[2, 0, 1])).unwrap();
        let poles = z.pole_divisor(&c).unwrap();
        assert_eq!(poles.degree(), 4);
        for (p, k) in poles.iter() {
            assert_eq!(k, 1);
            let x = p.x().unwrap();
            assert_eq!(f.mul(x, x), Fe::ONE);
        }
        assert_eq!(z.principal_divisor(&c).unwrap().degree(), 0);
    }
}
