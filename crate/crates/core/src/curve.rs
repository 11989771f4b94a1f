// SPDX-License-Identifier: Apache-2.0

//! Genus-2 curves `y^2 = f(x)` with `deg f` in `{5, 6}` and their rational
//! places.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Poly;

/// A rational place. The derived order (affine places by `(a, b)` index,
/// then the infinite places) is the canonical enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Affine(Fe, Fe),
    /// The single place at infinity of an odd-degree model.
    InfOdd,
    /// Infinite place of an even-degree model where `y/x^3` tends to `+c`.
    InfPlus,
    /// Infinite place of an even-degree model where `y/x^3` tends to `-c`.
    InfMinus,
}

impl Place {
    pub fn is_affine(&self) -> bool {
        matches!(self, Place::Affine(..))
    }

    pub fn x(&self) -> Option<Fe> {
        match *self {
            Place::Affine(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn y(&self) -> Option<Fe> {
        match *self {
            Place::Affine(_, b) => Some(b),
            _ => None,
        }
    }

    pub fn format(&self, f: &Field) -> String {
        match *self {
            Place::Affine(a, b) => format!("({}, {})", f.format(a), f.format(b)),
            Place::InfOdd => "inf".into(),
            Place::InfPlus => "inf+".into(),
            Place::InfMinus => "inf-".into(),
        }
    }
}

/// Shape of the model at `x = infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Infinity {
    /// `deg f = 5`: one place, ramified over `x = infinity`.
    Odd,
    /// `deg f = 6` with square leading coefficient `c^2`.
    Split { c: Fe },
    /// `deg f = 6` with non-square leading coefficient: no rational
    /// place at infinity.
    Inert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseWeil {
    pub count: usize,
    pub bound_ok: bool,
    pub maximal: bool,
}

#[derive(Clone, Debug)]
pub struct Curve {
    field: Field,
    f: Poly,
    infinity: Infinity,
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

impl Curve {
    pub fn new(field: &Field, f: Poly) -> Result<Curve> {
        let d = f.degree().unwrap_or(0);
        if d != 5 && d != 6 {
            return Err(Error::BadDegree(d));
        }
        let df = f.derivative(field);
        if df.is_zero() || f.gcd(field, &df).degree() != Some(0) {
            return Err(Error::SingularModel);
        }
        // deg f = 6 with f' of low degree is fine; a root of multiplicity
        // at infinity is impossible since the degree is exact.
        let infinity = if d == 5 {
            Infinity::Odd
        } else {
            match field.sqrt(f.lead()) {
                Some(c) => Infinity::Split { c },
                None => Infinity::Inert,
            }
        };
        Ok(Curve { field: field.clone(), f, infinity })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    pub fn genus(&self) -> u32 {
        2
    }

    pub fn infinity(&self) -> Infinity {
        self.infinity
    }

    /// Rational places at infinity in enumeration order.
    pub fn infinite_places(&self) -> Vec<Place> {
        match self.infinity {
            Infinity::Odd => vec![Place::InfOdd],
            Infinity::Split { .. } => vec![Place::InfPlus, Place::InfMinus],
            Infinity::Inert => Vec::new(),
        }
    }

    /// Rational places over `x = a`, in enumeration order.
    pub fn places_over(&self, a: Fe) -> Vec<Place> {
        let fa = self.f.eval(&self.field, a);
        if fa.is_zero() {
            return vec![Place::Affine(a, Fe::ZERO)];
        }
        match self.field.sqrt(fa) {
            Some(b) => {
                let nb = self.field.neg(b);
                let (lo, hi) = if b < nb { (b, nb) } else { (nb, b) };
                vec![Place::Affine(a, lo), Place::Affine(a, hi)]
            }
            None => Vec::new(),
        }
    }

    /// All rational places, affine ones ordered by `(a, b)` then infinite.
    pub fn enumerate_places(&self) -> Vec<Place> {
        let mut out: Vec<Place> =
            self.field.elements().flat_map(|a| self.places_over(a)).collect();
        out.extend(self.infinite_places());
        out
    }

    pub fn is_on_curve(&self, p: &Place) -> bool {
        match *p {
            Place::Affine(a, b) => {
                self.field.mul(b, b) == self.f.eval(&self.field, a)
            }
            Place::InfOdd => self.infinity == Infinity::Odd,
            Place::InfPlus | Place::InfMinus => matches!(self.infinity, Infinity::Split { .. }),
        }
    }

    /// True at places where `x` ramifies (fixed by the hyperelliptic
    /// involution).
    pub fn is_weierstrass(&self, p: &Place) -> bool {
        match *p {
            Place::Affine(_, b) => b.is_zero(),
            Place::InfOdd => true,
            _ => false,
        }
    }

    /// Ramification index of `x` at the place.
    pub fn ramification(&self, p: &Place) -> u32 {
        if self.is_weierstrass(p) {
            2
        } else {
            1
        }
    }

    /// Image under the hyperelliptic involution `y -> -y`.
    pub fn conjugate(&self, p: &Place) -> Place {
        match *p {
            Place::Affine(a, b) => Place::Affine(a, self.field.neg(b)),
            Place::InfOdd => Place::InfOdd,
            Place::InfPlus => Place::InfMinus,
            Place::InfMinus => Place::InfPlus,
        }
    }

    pub fn hasse_weil(&self) -> HasseWeil {
        let q = self.field.order() as u64;
        let n = self.enumerate_places().len();
        let bound = isqrt(16 * q);
        let diff = (n as i64 - (q as i64 + 1)).unsigned_abs();
        let s = isqrt(q);
        HasseWeil {
            count: n,
            bound_ok: diff <= bound,
            maximal: s * s == q && n as u64 == q + 1 + bound,
        }
    }

    /// The degree-2 divisor at infinity as `(place, coefficient)` pairs.
    pub fn d_infinity(&self) -> Vec<(Place, i64)> {
        match self.infinity {
            Infinity::Odd => vec![(Place::InfOdd, 2)],
            Infinity::Split { .. } => vec![(Place::InfPlus, 1), (Place::InfMinus, 1)],
            Infinity::Inert => Vec::new(),
        }
    }

    pub fn format(&self) -> String {
        format!("y^2 = {}", self.f.format(&self.field))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(field: &Field, f: &Poly) -> usize {
        let mut n = 0;
        for a in field.elements() {
            for b in field.elements() {
                if field.mul(b, b) == f.eval(field, a) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn make_curves() {
        let f9 = Field::new(3, 2, None).unwrap();
        let c = Curve::new(&f9, Poly::from_ints(&f9, &[0, 2, 0, 1, 0, 1])).unwrap();
        assert_eq!(c.infinity(), Infinity::Odd);
        let f25 = Field::new(5, 2, None).unwrap();
        let c6 = Curve::new(&f25, Poly::from_ints(&f25, &[2, 0, 0, 1, 0, 0, 1])).unwrap();
        assert!(matches!(c6.infinity(), Infinity::Split { .. }));
        assert_eq!(c6.infinite_places().len(), 2);
        assert!(matches!(
            Curve::new(&f9, Poly::from_ints(&f9, &[0, 0, 0, 0, 0, 1])),
            Err(Error::SingularModel)
        ));
        assert!(matches!(
            Curve::new(&f25, Poly::from_ints(&f25, &[1, 0, 0, 0, 0, 1])),
            Err(Error::SingularModel)
        ));
        assert!(matches!(Curve::new(&f9, Poly::from_ints(&f9, &[1, 1, 1])), Err(Error::BadDegree(2))));
    }

    #[test]
    fn place_counts_match_brute_force() {
        let f9 = Field::new(3, 2, None).unwrap();
        let f = Poly::from_ints(&f9, &[0, 2, 0, 1, 0, 1]);
        let c = Curve::new(&f9, f.clone()).unwrap();
        let places = c.enumerate_places();
        assert_eq!(places.len(), brute_count(&f9, &f) + 1);
        let hw = c.hasse_weil();
        assert!(hw.bound_ok);
        assert!((hw.count as i64 - 10).abs() <= 12);
        let mut sorted = places.clone();
        sorted.sort();
        assert_eq!(sorted, places);
        for p in &places {
            assert!(c.is_on_curve(p));
            assert_eq!(c.conjugate(&c.conjugate(p)), *p);
        }
    }

    #[test]
    fn maximal_curves() {
        let f25 = Field::new(5, 2, None).unwrap();
        let c = Curve::new(&f25, Poly::from_ints(&f25, &[0, 1, 0, 0, 0, 1])).unwrap();
        let hw = c.hasse_weil();
        assert_eq!(hw.count, 46);
        assert!(hw.maximal);
        let f81 = Field::new(3, 4, None).unwrap();
        let c = Curve::new(&f81, Poly::from_ints(&f81, &[1, 0, 0, 0, 0, 1])).unwrap();
        let hw = c.hasse_weil();
        assert_eq!(hw.count, 118);
        assert!(hw.maximal);
    }

    #[test]
    fn weierstrass_count_equals_roots() {
        let f25 = Field::new(5, 2, None).unwrap();
        let f = Poly::from_ints(&f25, &[0, 1, 0, 0, 0, 1]);
        let c = Curve::new(&f25, f.clone()).unwrap();
        let w = c.enumerate_places().iter().filter(|p| p.is_affine() && c.is_weierstrass(p)).count();
        assert_eq!(w, f.roots(&f25).len());
    }

    #[test]
    fn conjugate_examples() {
        let f9 = Field::new(3, 2, None).unwrap();
        let c = Curve::new(&f9, Poly::from_ints(&f9, &[0, 2, 0, 1, 0, 1])).unwrap();
        assert_eq!(c.conjugate(&Place::Affine(Fe(1), Fe(1))), Place::Affine(Fe(1), Fe(2)));
        assert_eq!(c.conjugate(&Place::InfOdd), Place::InfOdd);
        assert_eq!(c.conjugate(&Place::InfPlus), Place::InfMinus);
    }
}
