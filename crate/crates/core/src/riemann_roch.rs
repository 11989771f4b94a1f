// SPDX-License-Identifier: Apache-2.0

//! Bases of Riemann–Roch spaces `L(D)` for divisors supported on rational
//! places.
//!
//! Every element of `L(D)` is written as `(u(x) + v(x) y) / m(x)` with a
//! fixed denominator `m` that clears the affine poles allowed by `D`. The
//! pole allowance at infinity bounds `deg u` and `deg v`, and the remaining
//! requirements are linear conditions on the coefficients of `u` and `v`:
//! vanishing of low-order terms of local expansions.

use crate::curve::{Curve, Infinity, Place};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::func::{sqrt_series, Divisor, Func};
use crate::linalg::Matrix;
use crate::poly::Poly;

struct Ansatz {
    m: Poly,
    du: i64,
    dv: i64,
}

/// Coefficient vectors `(u_0, .., v_0, ..)` of a basis of `L(D)` over the
/// common denominator `m`, before normalization.
pub(crate) struct RawSpace {
    pub m: Poly,
    pub nu: usize,
    pub rows: Vec<Vec<Fe>>,
}

impl RawSpace {
    pub fn func(&self, f: &Field, row: &[Fe]) -> Result<Func> {
        let u = Poly::new(row[..self.nu].to_vec());
        let v = Poly::new(row[self.nu..].to_vec());
        Func::new(f, u, v, self.m.clone())
    }
}

impl Ansatz {
    fn nu(&self) -> usize {
        (self.du + 1).max(0) as usize
    }

    fn nv(&self) -> usize {
        (self.dv + 1).max(0) as usize
    }

    fn width(&self) -> usize {
        self.nu() + self.nv()
    }

}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Taylor coefficients at `a` of `x^i` for `i = 0..n`, as rows.
fn monomial_taylor(f: &Field, a: Fe, n: usize) -> Vec<Vec<Fe>> {
    (0..n).map(|i| Poly::monomial(Fe::ONE, i).taylor(f, a)).collect()
}

fn get(v: &[Fe], i: usize) -> Fe {
    v.get(i).copied().unwrap_or(Fe::ZERO)
}

/// A basis of `L(d)`, in reduced echelon form with respect to the
/// coefficient vector `(u_0, .., u_du, v_0, .., v_dv)` over the common
/// denominator.
pub fn riemann_roch_basis(c: &Curve, d: &Divisor) -> Result<Vec<Func>> {
    let f = c.field();
    let raw = riemann_roch_raw(c, d)?;
    raw.rows.iter().map(|row| raw.func(f, row)).collect()
}

pub(crate) fn riemann_roch_raw(c: &Curve, d: &Divisor) -> Result<RawSpace> {
    let f = c.field();
    for p in d.support() {
        if !c.is_on_curve(p) {
            return Err(Error::NonRationalSupport);
        }
    }
    // affine x-coordinates touched by the divisor, with their clearing exponent
    let mut xs: Vec<(Fe, i64)> = Vec::new();
    for (p, n) in d.iter() {
        if let Place::Affine(a, _) = *p {
            let k = ceil_div(n, c.ramification(p) as i64).max(0);
            match xs.iter_mut().find(|(b, _)| *b == a) {
                Some(e) => e.1 = e.1.max(k),
                None => xs.push((a, k)),
            }
        }
    }
    let mut m = Poly::one();
    for &(a, k) in &xs {
        m = m.mul(f, &Poly::linear(f, a).pow(f, k as u32));
    }
    let dm = m.deg_i();
    let (du, dv) = match c.infinity() {
        Infinity::Odd => {
            let n = d.coeff(&Place::InfOdd) + 2 * dm;
            (n.div_euclid(2), (n - 5).div_euclid(2))
        }
        Infinity::Split { .. } => {
            let a = d.coeff(&Place::InfPlus) + dm;
            let b = d.coeff(&Place::InfMinus) + dm;
            let dd = a.max(b);
            (dd, dd - 3)
        }
        Infinity::Inert => (dm, dm - 3),
    };
    let ans = Ansatz { m, du, dv };
    if ans.width() == 0 {
        return Ok(RawSpace { m: ans.m, nu: 0, rows: Vec::new() });
    }
    let nu = ans.nu();
    let nv = ans.nv();
    let width = ans.width();
    let mut rows: Vec<Vec<Fe>> = Vec::new();

    for &(a, k) in &xs {
        for p in c.places_over(a) {
            let r = c.ramification(&p) as i64 * k - d.coeff(&p);
            if r <= 0 {
                continue;
            }
            let r = r as usize;
            let Place::Affine(_, b) = p else { unreachable!() };
            let tay = monomial_taylor(f, a, nu.max(nv));
            if b.is_zero() {
                let ru = r.div_ceil(2);
                let rv = r / 2;
                for n in 0..ru {
                    let mut row = vec![Fe::ZERO; width];
                    for i in 0..nu {
                        row[i] = get(&tay[i], n);
                    }
                    rows.push(row);
                }
                for n in 0..rv {
                    let mut row = vec![Fe::ZERO; width];
                    for i in 0..nv {
                        row[nu + i] = get(&tay[i], n);
                    }
                    rows.push(row);
                }
            } else {
                let yy = sqrt_series(f, &c.f().taylor(f, a), b, r);
                for n in 0..r {
                    let mut row = vec![Fe::ZERO; width];
                    for i in 0..nu {
                        row[i] = get(&tay[i], n);
                    }
                    for i in 0..nv {
                        let mut s = Fe::ZERO;
                        for j in 0..=n {
                            s = f.add(s, f.mul(get(&tay[i], j), yy[n - j]));
                        }
                        row[nu + i] = s;
                    }
                    rows.push(row);
                }
            }
        }
    }

    if let Infinity::Split { c: sc } = c.infinity() {
        let rev_f: Vec<Fe> = (0..=6).map(|i| c.f().coeff(6 - i)).collect();
        let dd = du;
        for (p, y0) in [(Place::InfPlus, sc), (Place::InfMinus, f.neg(sc))] {
            let allowed = d.coeff(&p) + dm;
            let r = dd - allowed;
            if r <= 0 {
                continue;
            }
            let r = r as usize;
            let yy = sqrt_series(f, &rev_f, y0, r);
            for n in 0..r {
                let mut row = vec![Fe::ZERO; width];
                // coefficient of s^n in s^D u(1/s) + s^(D-3) v(1/s) Y(s)
                if (n as i64) <= dd {
                    let i = (dd - n as i64) as usize;
                    if i < nu {
                        row[i] = Fe::ONE;
                    }
                }
                for j in 0..=n {
                    let i = dd - 3 - j as i64;
                    if i >= 0 && (i as usize) < nv {
                        row[nu + i as usize] = f.add(row[nu + i as usize], yy[n - j]);
                    }
                }
                rows.push(row);
            }
        }
    }

    let basis = if rows.is_empty() {
        Matrix::identity(width)
    } else {
        let ns = Matrix::from_rows(rows).right_nullspace(f);
        if ns.is_empty() {
            return Ok(RawSpace { m: ans.m, nu, rows: Vec::new() });
        }
        let mut b = Matrix::from_rows(ns);
        b.rref(f);
        b
    };
    Ok(RawSpace { m: ans.m, nu, rows: basis.row_vecs() })
}

/// True when `g` lies in `L(d)`, checked place by place over every possible
/// pole of `g` and every point of the support of `d`.
pub fn in_space(c: &Curve, g: &Func, d: &Divisor) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    let f = c.field();
    if !g.w().splits(f) {
        return Ok(false);
    }
    let mut places: Vec<Place> = d.support().copied().collect();
    for a in g.w().roots(f) {
        let over = c.places_over(a);
        if over.is_empty() {
            return Ok(false);
        }
        places.extend(over);
    }
    places.extend(c.infinite_places());
    if c.infinity() == Infinity::Inert && g.numerator_norm(c).deg_i() > 2 * g.w().deg_i() {
        return Ok(false);
    }
    places.sort();
    places.dedup();
    for p in places {
        if g.valuation(c, &p)? < -d.coeff(&p) {
            return Ok(false);
        }
    }
    Ok(true)
}
