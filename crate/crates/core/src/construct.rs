// SPDX-License-Identifier: Apache-2.0

//! Locally repairable codes from genus-2 curves.
//!
//! Odd locality uses a subgroup `G` of even order `r + 1` containing `-I`.
//! A generator `z` of the fixed field has its poles on one completely split
//! fiber `P_1, .., P_{r+1}`, and `e_1, .., e_r` span `L(P + P_1 + .. + P_r)`.
//! Codewords evaluate `sum_j z^j (a_1j e_1 + .. + a_rj e_r)` on further
//! fibers, optionally with the pole fiber appended after rescaling by a
//! power of `1/z`.
//!
//! Even locality uses a cyclic group of order 3 or 5 and the monomials
//! `z^j x^i`, so each local matrix is a Vandermonde matrix in `x`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aut::{aut_catalog, group_generate, orbit_analysis, Aut, AutGroup};
use crate::curve::{Curve, Infinity, Place};
use crate::error::{Error, Result};
use crate::field::{Fe, Field, FieldSpec};
use crate::func::{Divisor, Func};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::riemann_roch::{riemann_roch_raw, RawSpace};

/// Reproducibility record of a construction. Places, functions and
/// matrices are stored in their printed forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanRecord {
    pub kind: String,
    pub field: FieldSpec,
    pub curve: String,
    pub group: Vec<String>,
    pub r: usize,
    pub ell: usize,
    pub t: usize,
    pub extended: bool,
    pub variant: Option<String>,
    pub base: Option<String>,
    pub aux: Option<String>,
    pub z: String,
    pub basis: Vec<String>,
    pub fibers: Vec<Vec<String>>,
    pub n: usize,
    pub k: usize,
    pub d_lower: i64,
}

/// A generator matrix with its repair groups.
#[derive(Clone, Debug)]
pub struct LocalCode {
    pub field: Field,
    pub generator: Matrix,
    pub r: usize,
    /// Coordinate indices of each repair group.
    pub groups: Vec<Vec<usize>>,
    /// Per group, an `(r + 1) x r` matrix `M` with the group's symbols equal
    /// to `M beta` for some `beta`. Empty for codes read from files.
    pub local: Vec<Matrix>,
    /// Index into `groups` of the rescaled pole fiber.
    pub tail: Option<usize>,
    pub places: Vec<Place>,
    pub d_lower: Option<i64>,
    pub record: Option<PlanRecord>,
}

impl LocalCode {
    /// A bare code: generator matrix and repair groups only.
    pub fn from_parts(field: &Field, generator: Matrix, groups: Vec<Vec<usize>>) -> LocalCode {
        let r = groups.iter().map(|g| g.len().saturating_sub(1)).max().unwrap_or(0);
        LocalCode {
            field: field.clone(),
            generator,
            r,
            groups,
            local: Vec::new(),
            tail: None,
            places: Vec::new(),
            d_lower: None,
            record: None,
        }
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    /// Codeword `message * G`.
    pub fn encode(&self, message: &[Fe]) -> Vec<Fe> {
        self.generator.vec_mul(&self.field, message)
    }
}

/// True when every square submatrix obtained by deleting one row of an
/// `(r + 1) x r` matrix is invertible: the rank is `r` and the left kernel
/// vector has no zero entry.
pub fn local_matrix_ok(f: &Field, m: &Matrix) -> bool {
    if m.rows() != m.cols() + 1 || m.rank(f) != m.cols() {
        return false;
    }
    let ns = m.left_nullspace(f);
    ns.len() == 1 && ns[0].iter().all(|v| !v.is_zero())
}

fn check_locals(f: &Field, locals: &[Matrix]) -> Result<()> {
    for (i, m) in locals.iter().enumerate() {
        if !local_matrix_ok(f, m) {
            return Err(Error::SingularSubmatrix(format!("local matrix of group {i}")));
        }
    }
    Ok(())
}

fn group_strings(f: &Field, g: &AutGroup) -> Vec<String> {
    g.elements().iter().map(|a| a.format(f)).collect()
}

/// Full orbits, reordered so that orbits whose x-coordinates are disjoint
/// from the earlier picks come first; the rest follow in their original
/// order.
fn x_disjoint_first(orbits: Vec<Vec<Place>>) -> Vec<Vec<Place>> {
    let mut used = std::collections::HashSet::new();
    let mut first = Vec::new();
    let mut rest = Vec::new();
    for o in orbits {
        let xs: Vec<Option<Fe>> = o.iter().map(|p| p.x()).collect();
        if xs.iter().any(|x| used.contains(x)) {
            rest.push(o);
        } else {
            used.extend(xs);
            first.push(o);
        }
    }
    first.extend(rest);
    first
}

// ---------------------------------------------------------------------------
// Odd locality

/// Outcome of the base point scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseReport {
    pub place: String,
    pub orbit_full: bool,
    pub degree_ok: bool,
    /// Affine places examined before acceptance.
    pub scanned: usize,
}

/// Index of the first element (in group order) of each distinct x-action.
pub fn x_representatives(f: &Field, g: &AutGroup) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, a) in g.elements().iter().enumerate() {
        if seen.insert(a.projective_key(f)) {
            out.push(i);
        }
    }
    out
}

fn check_odd_group(f: &Field, g: &AutGroup) -> Result<()> {
    let o = g.order();
    if !o.is_multiple_of(2) || o < 4 {
        return Err(Error::ConditionNotMet(format!("group order {o} is not even and at least 4")));
    }
    if !g.has_minus_identity(f) {
        return Err(Error::ConditionNotMet("group does not contain -I".into()));
    }
    if g.distinct_x_count(f) != o / 2 {
        return Err(Error::ConditionNotMet("x-actions are not pairwise distinct modulo -I".into()));
    }
    Ok(())
}

/// Numerators and denominators of the factors `sigma(x) - a`.
fn z_factors(f: &Field, g: &AutGroup, reps: &[usize], a: Fe) -> Vec<(Poly, Poly)> {
    reps.iter()
        .map(|&i| {
            let s = g.elements()[i];
            let num = Poly::new(vec![f.sub(s.b, f.mul(a, s.d)), f.sub(s.a, f.mul(a, s.c))]);
            let den = Poly::new(vec![s.d, s.c]);
            (num, den)
        })
        .collect()
}

fn degree_condition(f: &Field, factors: &[(Poly, Poly)]) -> (bool, Poly, Poly) {
    let mut n = Poly::one();
    let mut d = Poly::one();
    let mut sum = 0;
    for (a, b) in factors {
        n = n.mul(f, a);
        d = d.mul(f, b);
        sum += a.deg_i();
    }
    let g = n.gcd(f, &d);
    let reduced = n.div_exact(f, &g).expect("gcd divides");
    (reduced.deg_i() == sum, n, d)
}

/// First affine place whose orbit is full and avoids infinity, and whose
/// x-value passes the numerator degree test.
pub fn find_base_point(c: &Curve, g: &AutGroup) -> Result<(Place, BaseReport)> {
    let f = c.field();
    check_odd_group(f, g)?;
    let reps = x_representatives(f, g);
    let mut scanned = 0;
    for p in c.enumerate_places() {
        let Place::Affine(a, _) = p else { continue };
        scanned += 1;
        let mut orbit: Vec<Place> = g.elements().iter().map(|s| s.act_on_place(c, &p)).collect();
        orbit.sort();
        orbit.dedup();
        if orbit.len() != g.order() || !orbit.iter().all(|q| q.is_affine()) {
            continue;
        }
        let (ok, _, _) = degree_condition(f, &z_factors(f, g, &reps, a));
        if ok {
            let report = BaseReport { place: p.format(f), orbit_full: true, degree_ok: true, scanned };
            return Ok((p, report));
        }
    }
    Err(Error::NoBasePoint)
}

/// `z = prod 1/(sigma(x) - a)` over one representative per x-action, with
/// its invariance and pole divisor checked. Returns `z` and the raw
/// numerator and denominator of `1/z`.
pub fn build_z_odd(c: &Curve, g: &AutGroup, base: &Place) -> Result<(Func, Poly, Poly)> {
    let f = c.field();
    let Place::Affine(a, _) = *base else {
        return Err(Error::PoleDegreeMismatch("base place is not affine".into()));
    };
    let reps = x_representatives(f, g);
    let (ok, n, d) = degree_condition(f, &z_factors(f, g, &reps, a));
    if !ok {
        return Err(Error::PoleDegreeMismatch(format!("x = {}", f.format(a))));
    }
    let z = Func::new(f, d.clone(), Poly::zero(), n.clone())?;
    for s in g.elements() {
        if s.apply(c, &z) != z {
            return Err(Error::InvarianceFailed(s.format(f)));
        }
    }
    let poles = z.pole_divisor(c)?;
    let mut orbit: Vec<Place> = g.elements().iter().map(|s| s.act_on_place(c, base)).collect();
    orbit.sort();
    orbit.dedup();
    let expect = Divisor::from_terms(orbit.iter().map(|p| (*p, 1)));
    if poles != expect || poles.degree() != g.order() as i64 {
        return Err(Error::PoleDegreeMismatch(format!(
            "pole divisor {} is not the fiber of {}",
            poles.format(f),
            base.format(f)
        )));
    }
    Ok((z, n, d))
}

/// Pole fiber ordered `P_1 = base, P_2 = conj(P_1), .., P_{2i-1} =
/// sigma_i(P_1), P_{2i} = conj(P_{2i-1})`.
fn base_fiber(c: &Curve, g: &AutGroup, base: &Place) -> Vec<Place> {
    let f = c.field();
    x_representatives(f, g)
        .iter()
        .flat_map(|&i| {
            let p = g.elements()[i].act_on_place(c, base);
            [p, c.conjugate(&p)]
        })
        .collect()
}

/// Linear functional on raw coefficient vectors giving the coefficient of
/// `(x - a)^-1` at a non-Weierstrass place `(a, b)` where the common
/// denominator has a simple zero.
fn residue_functional(f: &Field, raw: &RawSpace, width: usize, p: &Place) -> Result<Vec<Fe>> {
    let Place::Affine(a, b) = *p else {
        return Err(Error::PatternNotFound("pole fiber place at infinity".into()));
    };
    if raw.m.ord_at(f, a) != Some(1) {
        return Err(Error::PatternNotFound(format!("denominator not simple at {}", p.format(f))));
    }
    let mt = raw.m.div_exact(f, &Poly::linear(f, a)).expect("root divides").eval(f, a);
    let inv = f.inv(mt)?;
    let mut out = vec![Fe::ZERO; width];
    let mut pw = inv;
    for k in 0..width.max(raw.nu) {
        if k < raw.nu {
            out[k] = pw;
        }
        if raw.nu + k < width {
            out[raw.nu + k] = f.mul(pw, b);
        }
        pw = f.mul(pw, a);
    }
    Ok(out)
}

fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    f.sum(a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)))
}

fn axpy(f: &Field, y: &[Fe], k: Fe, x: &[Fe]) -> Vec<Fe> {
    y.iter().zip(x).map(|(&a, &b)| f.add(a, f.mul(k, b))).collect()
}

fn padded(p: &Poly, len: usize) -> Vec<Fe> {
    (0..len).map(|i| p.coeff(i)).collect()
}

/// Everything of the odd construction that does not depend on `ell` and
/// `t`.
#[derive(Clone, Debug)]
pub struct OddPlan {
    curve: Curve,
    group: AutGroup,
    base: Place,
    aux: Place,
    report: BaseReport,
    z: Func,
    inv_z_num: Poly,
    inv_z_den: Poly,
    base_fiber: Vec<Place>,
    e: Vec<Func>,
    /// `(e_i / z)(P_m)`, rows indexed by `m`.
    mz: Matrix,
    fibers: Vec<Vec<Place>>,
}

impl OddPlan {
    pub fn new(c: &Curve, g: &AutGroup) -> Result<OddPlan> {
        let f = c.field();
        let (base, report) = find_base_point(c, g)?;
        let (z, zn, zd) = build_z_odd(c, g, &base)?;
        let fiber = base_fiber(c, g, &base);
        let r = g.order() - 1;
        let orbits = orbit_analysis(c, g);
        let aux = match c.infinity() {
            Infinity::Odd => Place::InfOdd,
            _ => {
                let mut ram: Vec<Place> = orbits.ramified.iter().flatten().copied().collect();
                ram.sort();
                *ram.first().ok_or_else(|| {
                    Error::ConditionNotMet("no rational ramified place for the auxiliary pole".into())
                })?
            }
        };
        let (e_raw, raw, rho) = e_basis_raw(c, &base, &aux, &fiber)?;
        let e: Vec<Func> = e_raw.iter().map(|v| raw.func(f, v)).collect::<Result<_>>()?;
        // 1/z = N/D has a simple zero at each x-value of the fiber
        let dn = zn.derivative(f);
        let mut mz = Matrix::zeros(r + 1, r);
        for (m, p) in fiber.iter().enumerate() {
            let a = p.x().expect("affine fiber");
            let lz = f.div(dn.eval(f, a), zd.eval(f, a));
            mz.set(m, 0, Fe::ONE);
            for i in 1..r {
                mz.set(m, i, f.mul(dot(f, &e_raw[i], &rho[m]), lz));
            }
        }
        let base_orbit: std::collections::HashSet<Place> = fiber.iter().copied().collect();
        let plain: Vec<Vec<Place>> = orbits
            .fibers
            .into_iter()
            .filter(|o| !o.iter().any(|p| base_orbit.contains(p) || *p == aux || *p == c.conjugate(&aux)))
            .collect();
        Ok(OddPlan {
            curve: c.clone(),
            group: g.clone(),
            base,
            aux,
            report,
            z,
            inv_z_num: zn,
            inv_z_den: zd,
            base_fiber: fiber,
            e,
            mz,
            fibers: x_disjoint_first(plain),
        })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn group(&self) -> &AutGroup {
        &self.group
    }

    pub fn r(&self) -> usize {
        self.group.order() - 1
    }

    pub fn base(&self) -> Place {
        self.base
    }

    pub fn aux(&self) -> Place {
        self.aux
    }

    pub fn report(&self) -> &BaseReport {
        &self.report
    }

    pub fn z(&self) -> &Func {
        &self.z
    }

    /// Raw numerator and denominator of `1/z`.
    pub fn inv_z(&self) -> (&Poly, &Poly) {
        (&self.inv_z_num, &self.inv_z_den)
    }

    pub fn base_fiber(&self) -> &[Place] {
        &self.base_fiber
    }

    pub fn e_basis(&self) -> &[Func] {
        &self.e
    }

    /// The tail local matrix with entries `(e_i / z)(P_m)` (first column
    /// `e_1 = 1`).
    pub fn mz(&self) -> &Matrix {
        &self.mz
    }

    /// Full orbits available for evaluation, in selection order.
    pub fn fibers(&self) -> &[Vec<Place>] {
        &self.fibers
    }

    /// Largest admissible `ell` with or without the tail.
    pub fn max_ell(&self, extended: bool) -> usize {
        self.fibers.len() + usize::from(extended)
    }

    /// The `[n = ell (r+1), k = r t - r + 1]` code. With `extended`, the
    /// last of the `ell` groups is the rescaled pole fiber.
    pub fn build(&self, ell: usize, t: usize, extended: bool) -> Result<LocalCode> {
        let c = &self.curve;
        let f = c.field();
        let r = self.r();
        if ell == 0 || t == 0 || t > ell {
            return Err(Error::BudgetInvalid(format!("need 1 <= t <= ell, got ell = {ell}, t = {t}")));
        }
        let plain = if extended { ell - 1 } else { ell };
        if plain > self.fibers.len() {
            return Err(Error::FiberShortage { requested: plain, available: self.fibers.len() });
        }
        // (i, j) stands for z^j e_{i+1}
        let mut rows: Vec<(usize, usize)> = (0..t).map(|j| (0, j)).collect();
        for i in 1..r {
            rows.extend((0..t - 1).map(|j| (i, j)));
        }
        let chosen = &self.fibers[..plain];
        let mut places: Vec<Place> = chosen.iter().flatten().copied().collect();
        let evals: Vec<(Fe, Vec<Fe>)> = places
            .par_iter()
            .map(|p| {
                let zv = self.z.evaluate(c, p)?;
                let ev = self.e.iter().map(|e| e.evaluate(c, p)).collect::<Result<Vec<_>>>()?;
                Ok((zv, ev))
            })
            .collect::<Result<_>>()?;
        let mut cols: Vec<Vec<Fe>> = evals
            .par_iter()
            .map(|(zv, ev)| {
                let mut zp = vec![Fe::ONE; t];
                for j in 1..t {
                    zp[j] = f.mul(zp[j - 1], *zv);
                }
                rows.iter().map(|&(i, j)| f.mul(zp[j], ev[i])).collect()
            })
            .collect();
        let mut local: Vec<Matrix> = evals
            .chunks(r + 1)
            .map(|ch| Matrix::from_rows(ch.iter().map(|(_, ev)| ev.clone()).collect()))
            .collect();
        let mut tail = None;
        if extended {
            for m in 0..=r {
                cols.push(
                    rows.iter()
                        .map(|&(i, j)| match (i, j + 1) {
                            (0, jj) if jj == t => Fe::ONE,
                            (i, jj) if i > 0 && jj + 1 == t => self.mz.get(m, i),
                            _ => Fe::ZERO,
                        })
                        .collect(),
                );
            }
            places.extend(self.base_fiber.iter().copied());
            tail = Some(local.len());
            local.push(self.mz.clone());
        }
        let n = places.len();
        let mut gm = Matrix::zeros(rows.len(), n);
        for (ci, col) in cols.iter().enumerate() {
            for (ri, &v) in col.iter().enumerate() {
                gm.set(ri, ci, v);
            }
        }
        let k = gm.rank(f);
        if k != rows.len() {
            return Err(Error::RankDeficient(format!("rank {k} < {}", rows.len())));
        }
        check_locals(f, &local)?;
        let groups: Vec<Vec<usize>> = (0..ell).map(|g| (g * (r + 1)..(g + 1) * (r + 1)).collect()).collect();
        let d_lower = n as i64 - ((t - 1) * (r + 1)) as i64 - 1;
        let record = PlanRecord {
            kind: "odd".into(),
            field: f.spec(),
            curve: c.format(),
            group: group_strings(f, &self.group),
            r,
            ell,
            t,
            extended,
            variant: None,
            base: Some(self.base.format(f)),
            aux: Some(self.aux.format(f)),
            z: self.z.format(c),
            basis: self.e.iter().map(|e| e.format(c)).collect(),
            fibers: groups.iter().map(|g| g.iter().map(|&i| places[i].format(f)).collect()).collect(),
            n,
            k,
            d_lower,
        };
        Ok(LocalCode {
            field: f.clone(),
            generator: gm,
            r,
            groups,
            local,
            tail,
            places,
            d_lower: Some(d_lower),
            record: Some(record),
        })
    }
}

/// Raw vectors of `e_1, .., e_r` over the common denominator of
/// `L(P + P_1 + .. + P_r)`, with the residue functionals at `P_1..P_{r+1}`.
///
/// `e_1 = 1` and `e_2 = 1/(x - a)`. For `i >= 3`, `g_i` is the first basis
/// vector of `L(P + P_1 + .. + P_i)` with a pole at `P_i`, and `e_i = g_i +
/// c e_{i-1}` for the first `c` giving simple poles at all of `P_1..P_i`;
/// at most `i - 1` values of `c` fail.
#[allow(clippy::type_complexity)]
fn e_basis_raw(
    c: &Curve,
    base: &Place,
    aux: &Place,
    fiber: &[Place],
) -> Result<(Vec<Vec<Fe>>, RawSpace, Vec<Vec<Fe>>)> {
    let f = c.field();
    let r = fiber.len() - 1;
    let mut d = Divisor::from_terms([(*aux, 1)]);
    for p in &fiber[..r] {
        d.add_term(*p, 1);
    }
    let raw = riemann_roch_raw(c, &d)?;
    if raw.rows.len() != r {
        return Err(Error::RankDeficient(format!("dim L(P + P_1 + .. + P_r) = {} != {r}", raw.rows.len())));
    }
    let width = raw.rows[0].len();
    let rho: Vec<Vec<Fe>> =
        fiber.iter().map(|p| residue_functional(f, &raw, width, p)).collect::<Result<_>>()?;
    let a = base.x().expect("affine base");
    if raw.nu <= raw.m.deg_i() as usize {
        return Err(Error::PatternNotFound("constants outside the ansatz".into()));
    }
    let mut e: Vec<Vec<Fe>> = vec![padded(&raw.m, width)];
    if r >= 2 {
        let m1 = raw.m.div_exact(f, &Poly::linear(f, a)).expect("base x divides m");
        e.push(padded(&m1, width));
    }
    // g_i from the nested spaces, largest first
    let mut g: Vec<Option<Vec<Fe>>> = vec![None; r + 1];
    let mut basis = raw.rows.clone();
    for i in (3..=r).rev() {
        let phi = &rho[i - 1];
        let vals: Vec<Fe> = basis.iter().map(|b| dot(f, b, phi)).collect();
        let Some(piv) = vals.iter().position(|v| !v.is_zero()) else {
            return Err(Error::PatternNotFound(format!("no function with a pole at P_{i}")));
        };
        g[i] = Some(basis[piv].clone());
        let pv = basis[piv].clone();
        basis = basis
            .iter()
            .zip(&vals)
            .enumerate()
            .filter(|(k, _)| *k != piv)
            .map(|(_, (b, &v))| axpy(f, b, f.neg(f.div(v, vals[piv])), &pv))
            .collect();
    }
    for i in 3..=r {
        let gi = g[i].take().expect("filled above");
        let prev = e[i - 2].clone();
        let found = f.elements().find_map(|k| {
            let cand = axpy(f, &gi, k, &prev);
            (0..i).all(|j| !dot(f, &cand, &rho[j]).is_zero()).then_some(cand)
        });
        match found {
            Some(v) => e.push(v),
            None => return Err(Error::PatternNotFound(format!("e_{i}"))),
        }
    }
    for (i, v) in e.iter().enumerate().skip(1) {
        for (j, phi) in rho.iter().enumerate() {
            let nonzero = !dot(f, v, phi).is_zero();
            if nonzero != (j <= i) {
                return Err(Error::PatternNotFound(format!("valuation of e_{} at P_{}", i + 1, j + 1)));
            }
        }
    }
    Ok((e, raw, rho))
}

// ---------------------------------------------------------------------------
// Even locality

/// Degree budgets of the monomial space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvenVariant {
    /// `r = 4`, `k = 4t + 1`.
    #[serde(rename = "4t+1")]
    K4t1,
    /// `r = 4`, `k = 4t + 2`.
    #[serde(rename = "4t+2")]
    K4t2,
    /// `r = 2`, `k = 2t + 1`.
    #[serde(rename = "2t+1")]
    K2t1,
}

impl EvenVariant {
    pub fn name(self) -> &'static str {
        match self {
            EvenVariant::K4t1 => "4t+1",
            EvenVariant::K4t2 => "4t+2",
            EvenVariant::K2t1 => "2t+1",
        }
    }

    pub fn parse(s: &str) -> Result<EvenVariant> {
        match s.trim() {
            "4t+1" => Ok(EvenVariant::K4t1),
            "4t+2" => Ok(EvenVariant::K4t2),
            "2t+1" => Ok(EvenVariant::K2t1),
            o => Err(Error::Parse(format!("unknown variant {o:?}"))),
        }
    }

    pub fn locality(self) -> usize {
        match self {
            EvenVariant::K2t1 => 2,
            _ => 4,
        }
    }

    /// Maximal degree in `z` of the coefficient of `x^i`, or -1 if absent.
    pub fn budgets(self, t: usize) -> Vec<i64> {
        let t = t as i64;
        match self {
            EvenVariant::K4t1 => vec![t, t - 1, t - 1, t - 1],
            EvenVariant::K4t2 => vec![t, t, t - 1, t - 1],
            EvenVariant::K2t1 => vec![t, t - 1],
        }
    }

    pub fn dimension(self, t: usize) -> usize {
        self.budgets(t).iter().map(|&b| (b + 1).max(0) as usize).sum()
    }
}

fn order_of(f: &Field, a: &Aut) -> usize {
    let mut k = 1;
    let mut cur = *a;
    while cur != Aut::identity() && k <= 480 {
        cur = cur.mul(f, a);
        k += 1;
    }
    k
}

/// The cyclic generator used for even locality on a cataloged curve: `V`
/// for `C10`, `(UV)^2` normalized to order 5 for the `x^5 + x` family in
/// characteristic 5, and `U^2` for `D12`.
pub fn default_even_generator(c: &Curve) -> Result<Aut> {
    let f = c.field();
    let cat = aut_catalog(c)?;
    let gen = |n: &str| cat.generator(n).expect("catalog generator");
    let h = match cat.label.as_str() {
        "C10" => gen("V"),
        "S5~" => {
            let h = gen("U").mul(f, &gen("V")).pow(f, 2);
            if order_of(f, &h) == 5 {
                h
            } else {
                h.scale(f, f.neg(Fe::ONE))
            }
        }
        "D12" => gen("U").pow(f, 2),
        other => {
            return Err(Error::ConditionNotMet(format!("no cyclic subgroup of order 3 or 5 in {other}")))
        }
    };
    Ok(h)
}

/// The default `z`: `y` for locality 4, `y - c x^3` with `c^2` the leading
/// coefficient for locality 2.
pub fn default_even_z(c: &Curve, r: usize) -> Result<Func> {
    match (r, c.infinity()) {
        (4, _) => Ok(Func::y()),
        (2, Infinity::Split { c: sc }) => Ok(Func::y().sub(c, &Func::from_poly(Poly::monomial(sc, 3)))),
        _ => Err(Error::ConditionNotMet(format!("no default z for locality {r} on {}", c.format()))),
    }
}

/// Even-locality construction data independent of `ell` and `t`.
#[derive(Clone, Debug)]
pub struct EvenPlan {
    curve: Curve,
    h: Aut,
    group: AutGroup,
    z: Func,
    pole: Place,
    fibers: Vec<Vec<Place>>,
}

impl EvenPlan {
    pub fn new(c: &Curve, h: Option<Aut>, z: Option<Func>) -> Result<EvenPlan> {
        let f = c.field();
        let h = match h {
            Some(h) => h,
            None => default_even_generator(c)?,
        };
        let group = group_generate(c, &[h])?;
        let o = group.order();
        if o != 3 && o != 5 {
            return Err(Error::ConditionNotMet(format!("cyclic group of order {o}, need 3 or 5")));
        }
        let r = o - 1;
        let z = match z {
            Some(z) => z,
            None => default_even_z(c, r)?,
        };
        if h.apply(c, &z) != z {
            return Err(Error::InvarianceFailed(h.format(f)));
        }
        let poles = z.pole_divisor(c)?;
        let pole = match poles.iter().collect::<Vec<_>>().as_slice() {
            [(p, k)] if *k == o as i64 => **p,
            _ => {
                return Err(Error::PoleDegreeMismatch(format!(
                    "pole divisor {} is not {o} times one place",
                    poles.format(f)
                )))
            }
        };
        let vx = -Func::x().valuation(c, &pole)?;
        let mut residues: Vec<i64> = (0..r as i64).map(|i| (i * vx).rem_euclid(o as i64)).collect();
        residues.sort_unstable();
        residues.dedup();
        if residues.len() != r {
            return Err(Error::ConditionNotMet("pole orders of x^i are not distinct modulo |H|".into()));
        }
        let orbits = orbit_analysis(c, &group);
        let fibers: Vec<Vec<Place>> =
            orbits.fibers.into_iter().filter(|o| o.iter().all(|p| p.is_affine())).collect();
        // fibers through Weierstrass points are considered after the others
        let (mut fibers, weier): (Vec<_>, Vec<_>) =
            fibers.into_iter().partition(|o| o.iter().all(|p| p.y().is_some_and(|y| !y.is_zero())));
        fibers.extend(weier);
        Ok(EvenPlan { curve: c.clone(), h, group, z, pole, fibers: x_disjoint_first(fibers) })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn generator(&self) -> Aut {
        self.h
    }

    pub fn group(&self) -> &AutGroup {
        &self.group
    }

    pub fn r(&self) -> usize {
        self.group.order() - 1
    }

    pub fn z(&self) -> &Func {
        &self.z
    }

    /// The single pole of `z`.
    pub fn pole(&self) -> Place {
        self.pole
    }

    pub fn fibers(&self) -> &[Vec<Place>] {
        &self.fibers
    }

    pub fn max_ell(&self) -> usize {
        self.fibers.len()
    }

    /// The `[n = (r+1) ell, k]` code spanned by `z^j x^i` within the budgets
    /// of `variant`, for `0 <= t < ell`.
    pub fn build(&self, ell: usize, t: usize, variant: EvenVariant) -> Result<LocalCode> {
        if ell > self.fibers.len() {
            return Err(Error::FiberShortage { requested: ell, available: self.fibers.len() });
        }
        self.build_on(&(0..ell).collect::<Vec<_>>(), t, variant)
    }

    /// As [`EvenPlan::build`] on the fibers with the given indices into
    /// [`EvenPlan::fibers`], in that order.
    pub fn build_on(&self, selection: &[usize], t: usize, variant: EvenVariant) -> Result<LocalCode> {
        let ell = selection.len();
        let c = &self.curve;
        let f = c.field();
        let r = self.r();
        if variant.locality() != r {
            return Err(Error::BudgetInvalid(format!("variant {} needs locality {}", variant.name(), variant.locality())));
        }
        if t >= ell {
            return Err(Error::BudgetInvalid(format!("need 0 <= t < ell, got ell = {ell}, t = {t}")));
        }
        let mut seen = selection.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != ell || seen.last().is_some_and(|&i| i >= self.fibers.len()) {
            return Err(Error::FiberShortage { requested: ell, available: self.fibers.len() });
        }
        let chosen: Vec<&Vec<Place>> = selection.iter().map(|&i| &self.fibers[i]).collect();
        let budgets = variant.budgets(t);
        let rows: Vec<(usize, usize)> = budgets
            .iter()
            .enumerate()
            .flat_map(|(i, &b)| (0..=b).map(move |j| (i, j as usize)))
            .collect();
        let places: Vec<Place> = chosen.iter().copied().flatten().copied().collect();
        let n = places.len();
        let mut gm = Matrix::zeros(rows.len(), n);
        let mut local = Vec::with_capacity(ell);
        for (ci, p) in places.iter().enumerate() {
            let x = p.x().expect("affine");
            let zv = self.z.evaluate(c, p)?;
            for (ri, &(i, j)) in rows.iter().enumerate() {
                gm.set(ri, ci, f.mul(f.pow(zv, j as i64)?, f.pow(x, i as i64)?));
            }
        }
        for fib in &chosen {
            let m: Vec<Vec<Fe>> = fib
                .iter()
                .map(|p| (0..r).map(|i| f.pow(p.x().unwrap(), i as i64).unwrap()).collect())
                .collect();
            local.push(Matrix::from_rows(m));
        }
        let k = gm.rank(f);
        if k != rows.len() {
            return Err(Error::RankDeficient(format!("rank {k} < {}", rows.len())));
        }
        check_locals(f, &local)?;
        // largest pole order of the monomials at each place at infinity
        let mut deg_g = 0;
        for q in c.infinite_places() {
            let vz = self.z.valuation(c, &q)?;
            let vx = Func::x().valuation(c, &q)?;
            deg_g += rows.iter().map(|&(i, j)| -(j as i64 * vz + i as i64 * vx)).max().unwrap_or(0).max(0);
        }
        let d_lower = n as i64 - deg_g;
        let groups: Vec<Vec<usize>> = (0..ell).map(|g| (g * (r + 1)..(g + 1) * (r + 1)).collect()).collect();
        let basis = rows
            .iter()
            .map(|&(i, j)| match (i, j) {
                (0, 0) => "1".to_string(),
                (0, j) => format!("z^{j}"),
                (i, 0) => format!("x^{i}"),
                (i, j) => format!("z^{j} x^{i}"),
            })
            .collect();
        let record = PlanRecord {
            kind: "even".into(),
            field: f.spec(),
            curve: c.format(),
            group: group_strings(f, &self.group),
            r,
            ell,
            t,
            extended: false,
            variant: Some(variant.name().into()),
            base: None,
            aux: Some(self.pole.format(f)),
            z: self.z.format(c),
            basis,
            fibers: chosen.iter().map(|o| o.iter().map(|p| p.format(f)).collect()).collect(),
            n,
            k,
            d_lower,
        };
        Ok(LocalCode {
            field: f.clone(),
            generator: gm,
            r,
            groups,
            local,
            tail: None,
            places,
            d_lower: Some(d_lower),
            record: Some(record),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{parse_word, subgroups_with_minus_identity};

    fn f9() -> Field {
        Field::new(3, 2, Some(&[2, 2, 1])).unwrap()
    }

    fn f25() -> Field {
        Field::new(5, 2, Some(&[2, 4, 1])).unwrap()
    }

    fn d8_f9() -> (Curve, AutGroup) {
        let f = f9();
        let c = Curve::new(&f, Poly::from_ints(&f, &[0, 2, 0, 1, 0, 1])).unwrap();
        let cat = aut_catalog(&c).unwrap();
        let g = group_generate(&c, &[cat.generator("U").unwrap()]).unwrap();
        (c, g)
    }

    fn s5_f25(word: &str) -> (Curve, AutGroup) {
        let f = f25();
        let c = Curve::new(&f, Poly::from_ints(&f, &[0, 1, 0, 0, 0, 1])).unwrap();
        let cat = aut_catalog(&c).unwrap();
        let h = parse_word(&f, &cat.generators, word).unwrap();
        let g = group_generate(&c, &[h, Aut::minus_identity(&f)]).unwrap();
        (c, g)
    }

    fn el(f: &Field, s: &str) -> Fe {
        f.parse(s).unwrap()
    }

    fn pl(f: &Field, a: &str, b: &str) -> Place {
        Place::Affine(el(f, a), el(f, b))
    }

    /// The order-6 subgroup generated by `V'` with the eighth root of unity
    /// used in the worked example over F_25.
    fn v_prime_setting() -> (Curve, AutGroup) {
        let f = f25();
        let c = Curve::new(&f, Poly::from_ints(&f, &[0, 1, 0, 0, 0, 1])).unwrap();
        let w = el(&f, "3u+1");
        assert_eq!(f.mult_order(w), Some(8));
        let m2 = f.from_int(-2);
        let v = Aut::new(Fe::ZERO, f.mul(m2, f.inv(w).unwrap()), f.mul(m2, w), Fe::ONE);
        let g = group_generate(&c, &[v]).unwrap();
        (c, g)
    }

    fn check_pattern(c: &Curve, plan: &OddPlan) {
        let fib = plan.base_fiber();
        let r = plan.r();
        for (i, e) in plan.e_basis().iter().enumerate() {
            for (j, p) in fib.iter().enumerate() {
                let v = e.valuation(c, p).unwrap();
                if i == 0 {
                    assert_eq!(v, 0);
                } else if j <= i && j < r {
                    assert_eq!(v, -1, "e_{} at P_{}", i + 1, j + 1);
                } else {
                    assert!(v >= 0, "e_{} at P_{}", i + 1, j + 1);
                }
            }
            assert!(e.valuation(c, &plan.aux()).unwrap() >= -1);
            for a in e.w().roots(c.field()) {
                for p in c.places_over(a) {
                    assert!(fib.contains(&p) || e.valuation(c, &p).unwrap() >= 0);
                }
            }
        }
    }

    #[test]
    fn base_point_z_and_e3_over_f9() {
        let (c, g) = d8_f9();
        let f = c.field().clone();
        let plan = OddPlan::new(&c, &g).unwrap();
        assert_eq!(plan.base(), pl(&f, "1", "1"));
        assert_eq!(plan.aux(), Place::InfOdd);
        let z = plan.z();
        assert!(z.v().is_zero() && z.u().degree() == Some(0));
        assert_eq!(z.w(), &Poly::from_ints(&f, &[2, 0, 1]));
        assert_eq!(plan.base_fiber()[1], pl(&f, "1", "2"));
        check_pattern(&c, &plan);
        // the e_3 of the worked example agrees with ours modulo L(P + P_1 + P_2)
        let expected_e3 = Func::new(
            &f,
            Poly::constant(el(&f, "u+1")),
            Poly::one(),
            Poly::from_ints(&f, &[2, 0, 1]),
        )
        .unwrap();
        let e3 = &plan.e_basis()[2];
        let p3 = plan.base_fiber()[2];
        let lam = f.div(e3.lead(&c, &p3).unwrap().coeff, expected_e3.lead(&c, &p3).unwrap().coeff);
        let diff = e3.sub(&c, &expected_e3.scale(&c, lam));
        let d2 = Divisor::from_terms([(Place::InfOdd, 1), (plan.base_fiber()[0], 1), (plan.base_fiber()[1], 1)]);
        assert!(crate::riemann_roch::in_space(&c, &diff, &d2).unwrap());
    }

    #[test]
    fn worked_example_over_f25() {
        let (c, g) = v_prime_setting();
        let f = c.field().clone();
        assert_eq!(g.order(), 6);
        let (base, report) = find_base_point(&c, &g).unwrap();
        assert_eq!(base, pl(&f, "1", "u+2"));
        assert!(report.degree_ok && report.orbit_full);
        let plan = OddPlan::new(&c, &g).unwrap();
        let cubic = Poly::new(vec![el(&f, "4u+3"), el(&f, "u+3"), el(&f, "3"), Fe::ONE]);
        assert_eq!(plan.z().w(), &cubic);
        let mut fib = plan.base_fiber().to_vec();
        fib.sort();
        let mut expect = vec![
            pl(&f, "1", "u+2"),
            pl(&f, "1", "4u+3"),
            pl(&f, "3u+3", "2"),
            pl(&f, "3u+3", "3"),
            pl(&f, "2u+3", "2u+4"),
            pl(&f, "2u+3", "3u+1"),
        ];
        expect.sort();
        assert_eq!(fib, expect);
        check_pattern(&c, &plan);
        let listed = [
            [("2u", "u+2"), ("2u", "4u+3"), ("3u+4", "1"), ("3u+4", "4"), ("4", "2u+4"), ("4", "3u+1")],
            [("4u+4", "u+2"), ("4u+4", "4u+3"), ("2u+2", "1"), ("2u+2", "4"), ("u", "1"), ("u", "4")],
            [("u+4", "2"), ("u+4", "3"), ("2u+1", "2"), ("2u+1", "3"), ("4u+2", "2u+4"), ("4u+2", "3u+1")],
            [("3u+2", "u+2"), ("3u+2", "4u+3"), ("2", "2"), ("2", "3"), ("u+1", "2u+4"), ("u+1", "3u+1")],
            [("u+3", "u+2"), ("u+3", "4u+3"), ("3", "1"), ("3", "4"), ("3u", "2u+4"), ("3u", "3u+1")],
        ];
        let mut want: Vec<Vec<Place>> = listed
            .iter()
            .map(|s| {
                let mut v: Vec<Place> = s.iter().map(|(a, b)| pl(&f, a, b)).collect();
                v.sort();
                v
            })
            .collect();
        want.sort();
        let mut got = plan.fibers().to_vec();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn z_is_invariant_and_mz_matches_function_values() {
        for (c, g) in [d8_f9(), v_prime_setting(), s5_f25("V")] {
            let plan = OddPlan::new(&c, &g).unwrap();
            let f = c.field();
            for s in g.elements() {
                assert_eq!(s.apply(&c, plan.z()), *plan.z());
            }
            let mz = plan.mz();
            for (m, p) in plan.base_fiber().iter().enumerate() {
                assert_eq!(mz.get(m, 0), Fe::ONE);
                for (i, e) in plan.e_basis().iter().enumerate().skip(1) {
                    let v = e.div(&c, plan.z()).unwrap().evaluate(&c, p).unwrap();
                    assert_eq!(mz.get(m, i), v);
                }
            }
            assert!(local_matrix_ok(f, mz));
        }
    }

    #[test]
    fn odd_code_shapes_over_f9() {
        let (c, g) = d8_f9();
        let plan = OddPlan::new(&c, &g).unwrap();
        assert_eq!(plan.fibers().len(), 3);
        for (ell, t, ext, n, k) in [(2, 2, false, 8, 4), (3, 2, false, 12, 4), (3, 3, false, 12, 7), (4, 4, true, 16, 10)] {
            let code = plan.build(ell, t, ext).unwrap();
            assert_eq!((code.n(), code.k()), (n, k));
            assert_eq!(code.groups.len(), ell);
            assert_eq!(code.tail.is_some(), ext);
            assert_eq!(code.d_lower, Some(n as i64 - ((t - 1) * 4) as i64 - 1));
            for m in &code.local {
                assert!(local_matrix_ok(c.field(), m));
            }
        }
        let one = plan.build(2, 1, false).unwrap();
        assert_eq!(one.k(), 1);
        assert!(matches!(plan.build(4, 4, false), Err(Error::FiberShortage { requested: 4, available: 3 })));
        assert!(matches!(plan.build(2, 3, false), Err(Error::BudgetInvalid(_))));
        assert!(matches!(plan.build(2, 0, false), Err(Error::BudgetInvalid(_))));
    }

    #[test]
    fn local_matrices_reproduce_codeword_restrictions() {
        let (c, g) = d8_f9();
        let f = c.field();
        let code = OddPlan::new(&c, &g).unwrap().build(4, 3, true).unwrap();
        // every generator row restricted to a group lies in the column span
        // of that group's local matrix
        for (gi, grp) in code.groups.iter().enumerate() {
            let m = &code.local[gi];
            for row in 0..code.k() {
                let mut aug = m.clone();
                let vals: Vec<Fe> = grp.iter().map(|&j| code.generator.get(row, j)).collect();
                let mut rows = aug.row_vecs();
                for (rw, v) in rows.iter_mut().zip(&vals) {
                    rw.push(*v);
                }
                aug = Matrix::from_rows(rows);
                assert_eq!(aug.rank(f), m.rank(f));
            }
        }
    }

    #[test]
    fn group_conditions_are_checked() {
        let (c, g) = d8_f9();
        let f = c.field();
        let small = group_generate(&c, &[Aut::minus_identity(f)]).unwrap();
        assert!(matches!(find_base_point(&c, &small), Err(Error::ConditionNotMet(_))));
        let full = group_generate(&c, &aut_catalog(&c).unwrap().generators.iter().map(|x| x.1).collect::<Vec<_>>()).unwrap();
        assert_eq!(full.order(), 8);
        for sub in subgroups_with_minus_identity(f, &full) {
            let h = full.subgroup(f, &sub);
            if h.order() >= 4 && h.distinct_x_count(f) == h.order() / 2 {
                let _ = OddPlan::new(&c, &h).unwrap();
            }
        }
        let _ = g;
    }

    #[test]
    fn even_locality_four() {
        let f = f25();
        let c = Curve::new(&f, Poly::from_ints(&f, &[0, 1, 0, 0, 0, 1])).unwrap();
        let plan = EvenPlan::new(&c, None, None).unwrap();
        assert_eq!(plan.r(), 4);
        assert_eq!(plan.pole(), Place::InfOdd);
        assert_eq!(plan.max_ell(), 9);
        let code = plan.build(5, 0, EvenVariant::K4t2).unwrap();
        assert_eq!((code.n(), code.k(), code.d_lower), (25, 2, Some(23)));
        let code = plan.build(9, 8, EvenVariant::K4t2).unwrap();
        assert_eq!((code.n(), code.k(), code.d_lower), (45, 34, Some(45 - 42)));
        let code = plan.build(2, 1, EvenVariant::K4t1).unwrap();
        assert_eq!((code.n(), code.k(), code.d_lower), (10, 5, Some(4)));
        let code = plan.build(1, 0, EvenVariant::K4t1).unwrap();
        assert_eq!((code.n(), code.k()), (5, 1));
        assert!(matches!(plan.build(3, 3, EvenVariant::K4t1), Err(Error::BudgetInvalid(_))));
        assert!(matches!(plan.build(3, 1, EvenVariant::K2t1), Err(Error::BudgetInvalid(_))));
        assert!(matches!(plan.build(10, 1, EvenVariant::K4t1), Err(Error::FiberShortage { .. })));
        // the first five fibers have pairwise distinct x-coordinates
        let xs: std::collections::HashSet<Fe> =
            plan.fibers()[..5].iter().flatten().map(|p| p.x().unwrap()).collect();
        assert_eq!(xs.len(), 25);
    }

    #[test]
    fn even_locality_two() {
        let f = f25();
        let c = Curve::new(&f, Poly::from_ints(&f, &[2, 0, 0, 1, 0, 0, 1])).unwrap();
        let plan = EvenPlan::new(&c, None, None).unwrap();
        assert_eq!(plan.r(), 2);
        // y + 4x^3 from the worked example
        let z = Func::y().add(&c, &Func::from_poly(Poly::monomial(f.from_int(4), 3)));
        assert_eq!(plan.z(), &z);
        assert_eq!(plan.z().pole_divisor(&c).unwrap().degree(), 3);
        assert!(plan.max_ell() >= 12);
        let code = plan.build(10, 3, EvenVariant::K2t1).unwrap();
        assert_eq!((code.n(), code.k(), code.d_lower), (30, 7, Some(20)));
        let code = plan.build(12, 11, EvenVariant::K2t1).unwrap();
        assert_eq!((code.n(), code.k()), (36, 23));
    }

    proptest::proptest! {
        #[test]
        fn local_check_matches_determinants(vals in proptest::collection::vec(0u32..9, 12)) {
            let f = f9();
            let vals: Vec<Fe> = vals.iter().map(|&v| if v < 3 { Fe::ZERO } else { f.element(v).unwrap() }).collect();
            let m = Matrix::from_rows(vals.chunks(3).map(|c| c.to_vec()).collect());
            let all = (0..4).all(|skip| {
                let rows: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
                !m.select(&rows, &[0, 1, 2]).determinant(&f).is_zero()
            });
            proptest::prop_assert_eq!(local_matrix_ok(&f, &m), all);
        }
    }
}
