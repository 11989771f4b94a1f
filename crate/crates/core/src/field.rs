// SPDX-License-Identifier: Apache-2.0

//! Arithmetic in `F_{p^m}` for odd primes `p`.
//!
//! An element is stored as its position in the canonical enumeration of the
//! field: the index `c0 + c1*p + ... + c_{m-1}*p^{m-1}` of its coefficient
//! vector over `F_p` in the polynomial basis `1, u, ..., u^{m-1}`, where `u`
//! is a root of the modulus. Index 0 is zero and index 1 is one, so ordering
//! elements by index is the enumeration order every deterministic choice in
//! the crate relies on.
//!
//! Multiplication and addition go through log/antilog and Zech tables built
//! once per field; `q <= 10^6` keeps those tables small.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted.
pub const MAX_ORDER: u64 = 1_000_000;

const NONE: u32 = u32::MAX;

/// A field element, identified by its enumeration index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    /// Enumeration index of the element.
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp[k] = index of alpha^k for k in 0..2(q-1)
    exp: Vec<u32>,
    // log[idx] for idx != 0
    log: Vec<u32>,
    // zech[d] = log(1 + alpha^d), NONE when 1 + alpha^d = 0
    zech: Vec<u32>,
}

/// Description of a field as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

/// The finite field `F_{p^m}`. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.0.p, self.0.m, self.0.modulus)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p used only while building the field.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let b = trim(b.to_vec());
        let lb = inv(*b.last().unwrap(), p) as u64;
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let c = *a.last().unwrap() as u64 * lb % p as u64;
            for (i, &bi) in b.iter().enumerate() {
                let s = (c * bi as u64) % p as u64;
                a[shift + i] = ((a[shift + i] as u64 + p as u64 - s) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        rem(&r.into_iter().map(|v| v as u32).collect::<Vec<_>>(), m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin-style test: no factor of degree <= m/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        // h = x^(p^i) mod f
        let mut h = rem(&[0, 1], f, p);
        for _ in 1..=m / 2 {
            // raise to the p-th power
            let mut acc = vec![1u32];
            let mut base = h.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, f, p);
                }
                base = mulmod(&base, &base, f, p);
                e >>= 1;
            }
            h = acc;
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &trim(diff), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Field {
    /// Builds `F_{p^m}`. Without a modulus, the first monic irreducible
    /// polynomial of degree `m` in the canonical order (lower coefficients
    /// read as a base-`p` integer, counting up) is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(Error::FieldTooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 || c[m as usize] != 1 {
                    return Err(Error::BadModulus(format!(
                        "expected monic degree-{m} coefficients, got {c:?}"
                    )));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(Error::BadModulus(format!("coefficients must be < {p}")));
                }
                if !prime_poly::is_irreducible(c, p) {
                    return Err(Error::ReducibleModulus(c.to_vec()));
                }
                c.to_vec()
            }
            None => Self::default_modulus(p, m),
        };
        Ok(Field(Arc::new(Self::build_tables(p, m, q, modulus))))
    }

    /// Builds a field from its configuration record.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.p, spec.m, spec.modulus.as_deref())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.0.p, m: self.0.m, modulus: Some(self.0.modulus.clone()) }
    }

    fn default_modulus(p: u32, m: u32) -> Vec<u32> {
        if m == 1 {
            return vec![0, 1];
        }
        let count = (p as u64).pow(m);
        for n in 0..count {
            let mut c = Vec::with_capacity(m as usize + 1);
            let mut v = n;
            for _ in 0..m {
                c.push((v % p as u64) as u32);
                v /= p as u64;
            }
            c.push(1);
            if prime_poly::is_irreducible(&c, p) {
                return c;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Inner {
        let to_digits = |mut idx: u32| -> Vec<u32> {
            let mut d = vec![0u32; m as usize];
            for x in d.iter_mut() {
                *x = idx % p;
                idx /= p;
            }
            d
        };
        let from_digits = |d: &[u32]| -> u32 {
            d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
        };
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NONE; q as usize];
        // First primitive element in enumeration order.
        'cand: for g in 2..q.max(3) {
            let gd = to_digits(g);
            let mut cur = vec![1u32];
            let mut seq = Vec::with_capacity(order as usize);
            for k in 0..order {
                let mut dig = cur.clone();
                dig.resize(m as usize, 0);
                let idx = from_digits(&dig);
                if k > 0 && idx == 1 {
                    continue 'cand;
                }
                seq.push(idx);
                cur = prime_poly::mulmod(&cur, &gd, &modulus, p);
                if cur.is_empty() {
                    continue 'cand;
                }
            }
            for (k, &idx) in seq.iter().enumerate() {
                exp[k] = idx;
                exp[k + order as usize] = idx;
                log[idx as usize] = k as u32;
            }
            break;
        }
        let mut zech = vec![NONE; order as usize];
        for d in 0..order {
            let mut dig = to_digits(exp[d as usize]);
            dig[0] = (dig[0] + 1) % p;
            let s = from_digits(&dig);
            zech[d as usize] = if s == 0 { NONE } else { log[s as usize] };
        }
        Inner { p, m, q, modulus, exp, log, zech }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// All elements in enumeration order, starting `0, 1, ...`.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.0.q).map(Fe)
    }

    pub fn element(&self, index: u32) -> Result<Fe> {
        if index < self.0.q {
            Ok(Fe(index))
        } else {
            Err(Error::Parse(format!("element index {index} outside field of order {}", self.0.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.0.m as usize || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::Parse(format!("bad coefficient vector {c:?}")));
        }
        Ok(Fe(c.iter().rev().fold(0u32, |acc, &x| acc * self.0.p + x)))
    }

    /// Coefficient vector (length `m`, low to high) of an element.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut idx = a.0;
        (0..self.0.m)
            .map(|_| {
                let c = idx % self.0.p;
                idx /= self.0.p;
                c
            })
            .collect()
    }

    /// The generator `u` of the polynomial basis (equal to `p`'s index).
    pub fn generator(&self) -> Fe {
        if self.0.m == 1 {
            // u is a root of x, i.e. zero; callers never need it for prime fields
            Fe(0)
        } else {
            Fe(self.0.p)
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let i = &*self.0;
        let order = i.q - 1;
        let la = i.log[a.0 as usize];
        let lb = i.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = i.zech[d as usize];
        if z == NONE {
            Fe(0)
        } else {
            Fe(i.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        let i = &*self.0;
        let half = (i.q - 1) / 2;
        Fe(i.exp[(i.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let i = &*self.0;
        Fe(i.exp[(i.log[a.0 as usize] + i.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let i = &*self.0;
        let l = i.log[a.0 as usize];
        Ok(Fe(i.exp[((i.q - 1 - l) % (i.q - 1)) as usize]))
    }

    /// `a / b`. Panics on a zero divisor; use [`Field::try_div`] when the
    /// divisor is not known to be nonzero.
    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.try_div(a, b).expect("division by zero")
    }

    pub fn try_div(&self, a: Fe, b: Fe) -> Result<Fe> {
        let bi = self.inv(b)?;
        Ok(self.mul(a, bi))
    }

    /// `a^e`; negative exponents need a nonzero base.
    pub fn pow(&self, a: Fe, e: i64) -> Result<Fe> {
        if e == 0 {
            return Ok(Fe::ONE);
        }
        if a.0 == 0 {
            return if e > 0 { Ok(Fe(0)) } else { Err(Error::DivisionByZero) };
        }
        let i = &*self.0;
        let order = (i.q - 1) as i64;
        let l = (i.log[a.0 as usize] as i64 * e.rem_euclid(order)).rem_euclid(order);
        Ok(Fe(i.exp[l as usize]))
    }

    /// Discrete log to the internal primitive element; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.0.log[a.0 as usize])
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.0.q - 1) as u64;
        Some(n / gcd_u64(l, n))
    }

    /// First `b` in enumeration order with `b^n = a`, if any.
    pub fn nth_root(&self, a: Fe, n: u64) -> Option<Fe> {
        if n == 0 {
            return None;
        }
        if a.is_zero() {
            return Some(Fe(0));
        }
        let order = (self.0.q - 1) as u64;
        let la = self.0.log[a.0 as usize] as u64;
        let g = gcd_u64(n % order, order);
        let g = if n.is_multiple_of(order) { order } else { g };
        if !la.is_multiple_of(g) {
            return None;
        }
        // n*k = la (mod order) has g solutions spaced order/g apart.
        let step = order / g;
        let n_red = (n % order) / g;
        let la_red = la / g;
        let k0 = if step == 1 {
            0
        } else {
            la_red * mod_inverse(n_red % step, step) % step
        };
        (0..g)
            .map(|j| Fe(self.0.exp[((k0 + j * step) % order) as usize]))
            .min()
    }

    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        self.nth_root(a, 2)
    }

    pub fn is_square(&self, a: Fe) -> bool {
        self.sqrt(a).is_some()
    }

    /// First element in enumeration order of exact multiplicative order `n`.
    pub fn element_of_order(&self, n: u64) -> Option<Fe> {
        let order = (self.0.q - 1) as u64;
        if n == 0 || !order.is_multiple_of(n) {
            return None;
        }
        self.elements().skip(1).find(|&a| self.mult_order(a) == Some(n))
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |acc, x| self.add(acc, x))
    }

    /// Renders `a` as `c0+c1*u+c2*u^2...` (all `m` coefficients), or as a
    /// plain integer over a prime field.
    pub fn format(&self, a: Fe) -> String {
        let c = self.coeffs(a);
        if self.0.m == 1 {
            return c[0].to_string();
        }
        c.iter()
            .enumerate()
            .map(|(i, v)| match i {
                0 => v.to_string(),
                1 => format!("{v}*u"),
                _ => format!("{v}*u^{i}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parses the output of [`Field::format`]; also accepts a bare integer
    /// index-free form like `3` for prime-subfield elements.
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let mut coeffs = vec![0u32; self.0.m as usize];
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let split = term.split_once('*').or_else(|| term.find('u').map(|i| term.split_at(i)));
            let (c, pow) = match split {
                None => (term, 0usize),
                Some((c, var)) => {
                    let c = if c.trim().is_empty() { "1" } else { c };
                    let pow = match var.trim() {
                        "u" => 1,
                        v => v
                            .strip_prefix("u^")
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad monomial {var:?}")))?,
                    };
                    (c, pow)
                }
            };
            let c: i64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if pow >= coeffs.len() {
                return Err(Error::Parse(format!("power u^{pow} exceeds extension degree")));
            }
            coeffs[pow] = ((coeffs[pow] as i64 + c).rem_euclid(self.0.p as i64)) as u32;
        }
        self.from_coeffs(&coeffs)
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    old_s.rem_euclid(m as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_pow(f: &Field, a: Fe, n: u64) -> Fe {
        (0..n).fold(Fe::ONE, |acc, _| f.mul(acc, a))
    }

    #[test]
    fn make_f9() {
        let f = Field::new(3, 2, None).unwrap();
        assert_eq!(f.order(), 9);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els[0], Fe::ZERO);
        assert_eq!(els[1], Fe::ONE);
    }

    #[test]
    fn make_errors() {
        assert!(matches!(Field::new(2, 1, None), Err(Error::EvenCharacteristic)));
        assert!(matches!(Field::new(9, 1, None), Err(Error::CompositeCharacteristic(9))));
        assert!(matches!(Field::new(3, 2, Some(&[2, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(matches!(Field::new(3, 2, Some(&[1, 0, 2])), Err(Error::BadModulus(_))));
    }

    #[test]
    fn f169_default_modulus_is_irreducible() {
        let f = Field::new(13, 2, None).unwrap();
        assert_eq!(f.order(), 169);
        // u^2 = -c1 u - c0 must not have a root in F_13
        let m = f.modulus();
        assert!((0..13u64).all(|x| !(x * x + m[1] as u64 * x + m[0] as u64).is_multiple_of(13)));
    }

    #[test]
    fn inverses_f9() {
        let f = Field::new(3, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            }
        }
        assert!(matches!(f.inv(Fe::ZERO), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_in_f25_matches_schoolbook() {
        // u^2 = -c1 u - c0 over F_5; invert u+2 by solving (u+2)(x+yu) = 1
        let f = Field::new(5, 2, None).unwrap();
        let u2 = f.from_coeffs(&[2, 1]).unwrap();
        let inv = f.inv(u2).unwrap();
        let mut found = None;
        for x in 0..5 {
            for y in 0..5 {
                let cand = f.from_coeffs(&[x, y]).unwrap();
                // schoolbook product with reduction u^2 = -m1 u - m0
                let m = f.modulus();
                let (a0, a1) = (2u32, 1u32);
                let c0 = a0 * x;
                let c1 = a0 * y + a1 * x;
                let c2 = a1 * y;
                let r0 = (c0 + 5 * 25 - c2 * m[0]) % 5;
                let r1 = (c1 + 5 * 25 - c2 * m[1]) % 5;
                if r0 == 1 && r1 == 0 {
                    found = Some(cand);
                }
            }
        }
        assert_eq!(Some(inv), found);
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(3, 2), (5, 2), (13, 2), (3, 4), (7, 1)] {
            let f = Field::new(p, m, None).unwrap();
            let q = f.order();
            for _ in 0..10_000 {
                let a = Fe(rng.gen_range(0..q));
                let b = Fe(rng.gen_range(0..q));
                let c = Fe(rng.gen_range(0..q));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                let pa = f.pow(f.add(a, b), p as i64).unwrap();
                assert_eq!(pa, f.add(f.pow(a, p as i64).unwrap(), f.pow(b, p as i64).unwrap()));
            }
        }
    }

    #[test]
    fn addition_matches_coefficientwise() {
        let f = Field::new(5, 2, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let ca = f.coeffs(a);
                let cb = f.coeffs(b);
                let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 5).collect();
                assert_eq!(f.add(a, b), f.from_coeffs(&s).unwrap());
            }
        }
    }

    #[test]
    fn nth_root_matches_brute_force() {
        for (p, m) in [(3, 2), (13, 2), (5, 2)] {
            let f = Field::new(p, m, None).unwrap();
            for n in 1..=12u64 {
                for a in f.elements() {
                    let brute = f.elements().find(|&b| brute_pow(&f, b, n) == a);
                    assert_eq!(f.nth_root(a, n), brute, "p={p} m={m} n={n} a={a:?}");
                }
            }
        }
    }

    #[test]
    fn special_roots() {
        let f = Field::new(13, 2, None).unwrap();
        let two = f.from_int(2);
        let r = f.nth_root(two, 2).unwrap();
        assert_eq!(f.mul(r, r), two);
        let f81 = Field::new(3, 4, None).unwrap();
        let z = f81.element_of_order(5).unwrap();
        assert_eq!(f81.pow(z, 5).unwrap(), Fe::ONE);
        assert_ne!(z, Fe::ONE);
        let f9 = Field::new(3, 2, None).unwrap();
        assert_eq!(f9.element_of_order(5), None);
        assert_eq!(f9.element_of_order(1), Some(Fe::ONE));
        assert_eq!(f9.nth_root(Fe::ONE, 7).map(|r| f9.pow(r, 7).unwrap()), Some(Fe::ONE));
    }

    #[test]
    fn format_parse_roundtrip() {
        let f = Field::new(5, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse(&f.format(a)).unwrap(), a);
        }
        let p = Field::new(7, 1, None).unwrap();
        assert_eq!(p.format(p.from_int(-1)), "6");
        assert_eq!(f.parse("u+2").unwrap(), f.parse("2+1*u").unwrap());
        assert_eq!(f.parse("3u+4").unwrap(), f.from_coeffs(&[4, 3]).unwrap());
        assert!(f.parse("2+v").is_err());
    }
}
