// SPDX-License-Identifier: Apache-2.0

//! Rank, exact minimum distance, local repair and Singleton-defect
//! classification of locally repairable codes.
//!
//! Two independent distance searches are provided. The support search looks
//! for the smallest set of linearly dependent parity-check columns; the
//! exhaustive search enumerates all messages up to scalars.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{local_matrix_ok, LocalCode};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    Support,
    Auto,
}

impl Strategy {
    pub fn parse(s: &str) -> Result<Strategy> {
        match s {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "support" => Ok(Strategy::Support),
            "auto" => Ok(Strategy::Auto),
            o => Err(Error::Parse(format!("unknown strategy {o:?}"))),
        }
    }
}

/// Work limits for the two searches: column subsets examined and messages
/// enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub support: u64,
    pub exhaustive: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget { support: 100_000_000, exhaustive: 1_000_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub d: usize,
    pub witness: Vec<Fe>,
    /// `Exhaustive` or `Support`; an exhaustive run cut short by the
    /// support check is tagged `Exhaustive`.
    pub method: Strategy,
}

/// Rank of the generator matrix and a parity-check matrix `H` with
/// `G H^T = 0`, of shape `(n - rank) x n`.
pub fn rank_and_parity(code: &LocalCode) -> (usize, Matrix) {
    let f = &code.field;
    let ns = code.generator.right_nullspace(f);
    let n = code.n();
    let h = if ns.is_empty() { Matrix::zeros(0, n) } else { Matrix::from_rows(ns) };
    (n - h.rows(), h)
}

/// `n - k - ceil(k/r) + 2`.
pub fn singleton_bound(n: usize, k: usize, r: usize) -> i64 {
    let r = r.max(1);
    n as i64 - k as i64 - k.div_ceil(r) as i64 + 2
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Column subsets of size at most `w`.
pub fn support_cost(n: usize, w: usize) -> u128 {
    (1..=w).fold(0u128, |a, i| a.saturating_add(binom(n, i)))
}

/// Messages up to scalars, `(q^k - 1)/(q - 1)`.
pub fn exhaustive_cost(q: u32, k: usize) -> u128 {
    let mut acc: u128 = 0;
    for _ in 0..k {
        acc = acc.saturating_mul(q as u128).saturating_add(1);
    }
    acc
}

// ---------------------------------------------------------------------------
// support search

struct Basis {
    /// Reduced vectors with pivot coordinate scaled to one.
    vecs: Vec<Vec<Fe>>,
    pivots: Vec<usize>,
    /// Coefficients over the chosen columns expressing each vector.
    combos: Vec<Vec<Fe>>,
}

struct Found {
    w: usize,
    cols: Vec<usize>,
    coeffs: Vec<Fe>,
}

struct SupportDfs<'a> {
    f: &'a Field,
    cols: Vec<Vec<Fe>>,
    width: usize,
    best: &'a AtomicUsize,
}

impl SupportDfs<'_> {
    /// Reduces column `c` against the basis; returns the residual and its
    /// combination over `chosen ++ [c]`.
    fn reduce(&self, basis: &Basis, c: usize) -> (Vec<Fe>, Vec<Fe>) {
        let f = self.f;
        let mut v = self.cols[c].clone();
        let depth = basis.vecs.len();
        let mut combo = vec![Fe::ZERO; self.width];
        combo[depth] = Fe::ONE;
        for (i, b) in basis.vecs.iter().enumerate() {
            let k = v[basis.pivots[i]];
            if k.is_zero() {
                continue;
            }
            let nk = f.neg(k);
            for (x, &y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = f.add(*x, f.mul(nk, y));
                }
            }
            for (x, &y) in combo.iter_mut().zip(&basis.combos[i]) {
                if !y.is_zero() {
                    *x = f.add(*x, f.mul(nk, y));
                }
            }
        }
        (v, combo)
    }

    fn run(&self, start: usize, chosen: &mut Vec<usize>, basis: &mut Basis, found: &mut Option<Found>) {
        let depth = chosen.len();
        for c in start..self.cols.len() {
            let limit = match found {
                Some(fd) => fd.w - 1,
                None => self.best.load(Ordering::Relaxed),
            };
            if depth + 1 > limit {
                return;
            }
            let (v, combo) = self.reduce(basis, c);
            match v.iter().position(|x| !x.is_zero()) {
                None => {
                    let mut cols = chosen.clone();
                    cols.push(c);
                    let w = depth + 1;
                    self.best.fetch_min(w, Ordering::Relaxed);
                    *found = Some(Found { w, cols, coeffs: combo[..w].to_vec() });
                }
                Some(p) => {
                    if depth + 2 > limit {
                        continue;
                    }
                    let inv = self.f.inv(v[p]).expect("nonzero pivot");
                    basis.vecs.push(v.iter().map(|&x| self.f.mul(x, inv)).collect());
                    basis.combos.push(combo.iter().map(|&x| self.f.mul(x, inv)).collect());
                    basis.pivots.push(p);
                    chosen.push(c);
                    self.run(c + 1, chosen, basis, found);
                    chosen.pop();
                    basis.vecs.pop();
                    basis.combos.pop();
                    basis.pivots.pop();
                }
            }
        }
    }
}

/// Smallest `w <= max_w` such that some `w` columns of `h` are dependent,
/// with the codeword supported on the lexicographically first such set.
pub fn support_search(f: &Field, h: &Matrix, n: usize, max_w: usize) -> Option<(usize, Vec<Fe>)> {
    let cols: Vec<Vec<Fe>> = (0..n).map(|c| h.column(c)).collect();
    let best = AtomicUsize::new(max_w);
    let dfs = SupportDfs { f, cols, width: max_w + 1, best: &best };
    let results: Vec<Option<Found>> = (0..n)
        .into_par_iter()
        .map(|c0| {
            let mut found = None;
            let mut basis = Basis { vecs: Vec::new(), pivots: Vec::new(), combos: Vec::new() };
            let mut chosen = Vec::new();
            // restrict the first chosen column to c0
            let (v, combo) = dfs.reduce(&basis, c0);
            match v.iter().position(|x| !x.is_zero()) {
                None => {
                    best.fetch_min(1, Ordering::Relaxed);
                    found = Some(Found { w: 1, cols: vec![c0], coeffs: vec![combo[0]] });
                }
                Some(p) => {
                    if max_w >= 2 {
                        let inv = f.inv(v[p]).unwrap();
                        basis.vecs.push(v.iter().map(|&x| f.mul(x, inv)).collect());
                        basis.combos.push(combo.iter().map(|&x| f.mul(x, inv)).collect());
                        basis.pivots.push(p);
                        chosen.push(c0);
                        dfs.run(c0 + 1, &mut chosen, &mut basis, &mut found);
                    }
                }
            }
            found
        })
        .collect();
    let fd = results.into_iter().flatten().min_by(|a, b| a.w.cmp(&b.w).then(a.cols.cmp(&b.cols)))?;
    let mut word = vec![Fe::ZERO; n];
    for (c, k) in fd.cols.iter().zip(&fd.coeffs) {
        word[*c] = *k;
    }
    Some((fd.w, word))
}

// ---------------------------------------------------------------------------
// exhaustive search

/// Field addition on element indices, tabulated for small fields.
struct Adder<'a> {
    f: &'a Field,
    q: usize,
    table: Option<Vec<u32>>,
}

impl<'a> Adder<'a> {
    fn new(f: &'a Field) -> Adder<'a> {
        let q = f.order() as usize;
        let table = (q <= 1024).then(|| {
            let mut t = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = f.add(Fe(a as u32), Fe(b as u32)).0;
                }
            }
            t
        });
        Adder { f, q, table }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.q + b as usize],
            None => self.f.add(Fe(a), Fe(b)).0,
        }
    }
}

/// Minimum weight over all nonzero codewords, enumerating messages whose
/// first nonzero entry is one. Stops early once a codeword of weight at
/// most `stop_at` is seen (earlier chunks still finish, so the witness is
/// deterministic).
pub fn exhaustive_search(f: &Field, g: &Matrix, stop_at: Option<usize>) -> Option<(usize, Vec<Fe>)> {
    let k = g.rows();
    if k == 0 {
        return None;
    }
    let q = f.order() as usize;
    let add = Adder::new(f);
    let rows: Vec<Vec<u32>> = (0..k).map(|i| g.row(i).iter().map(|x| x.0).collect()).collect();
    // delta[i][a] = (elem(a+1) - elem(a)) * G_i
    let delta: Vec<Vec<Vec<u32>>> = rows
        .iter()
        .map(|row| {
            (0..q)
                .map(|a| {
                    let d = f.sub(Fe(((a + 1) % q) as u32), Fe(a as u32));
                    row.iter().map(|&x| f.mul(d, Fe(x)).0).collect()
                })
                .collect()
        })
        .collect();
    // chunks: leading position and up to two top digits
    let mut chunks: Vec<(usize, Vec<u32>)> = Vec::new();
    for p in 0..k {
        let free = k - 1 - p;
        let h = free.min(2);
        let count = q.pow(h as u32);
        for v in 0..count {
            let mut digits = Vec::with_capacity(h);
            let mut x = v;
            for _ in 0..h {
                digits.push((x % q) as u32);
                x /= q;
            }
            digits.reverse();
            chunks.push((p, digits));
        }
    }
    let stop_chunk = AtomicUsize::new(usize::MAX);
    let results: Vec<Option<(usize, Vec<u32>)>> = chunks
        .par_iter()
        .enumerate()
        .map(|(ci, (p, prefix))| {
            let p = *p;
            let mut c = rows[p].clone();
            for (j, &dv) in prefix.iter().enumerate() {
                let i = p + 1 + j;
                let m = Fe(dv);
                for (x, &y) in c.iter_mut().zip(&rows[i]) {
                    *x = add.add(*x, f.mul(m, Fe(y)).0);
                }
            }
            let lo = p + 1 + prefix.len();
            let len = k - lo;
            let weight = |c: &[u32]| c.iter().filter(|&&x| x != 0).count();
            let mut best = (weight(&c), c.clone());
            let done = |w: usize| stop_at.is_some_and(|s| w <= s);
            if done(best.0) {
                stop_chunk.fetch_min(ci, Ordering::Relaxed);
                return Some(best);
            }
            let mut count = vec![0u32; len];
            let mut gray = vec![0u32; len];
            let mut steps: u64 = 0;
            loop {
                let Some(j) = count.iter().position(|&d| (d as usize) < q - 1) else { break };
                for d in count.iter_mut().take(j) {
                    *d = 0;
                }
                count[j] += 1;
                let a = gray[j] as usize;
                gray[j] = ((a + 1) % q) as u32;
                for (x, &y) in c.iter_mut().zip(&delta[lo + j][a]) {
                    *x = add.add(*x, y);
                }
                let w = weight(&c);
                if w < best.0 {
                    best = (w, c.clone());
                    if done(w) {
                        stop_chunk.fetch_min(ci, Ordering::Relaxed);
                        break;
                    }
                }
                steps += 1;
                if steps.is_multiple_of(4096) && stop_chunk.load(Ordering::Relaxed) < ci {
                    return None;
                }
            }
            Some(best)
        })
        .collect();
    let stop = stop_chunk.load(Ordering::Relaxed);
    let (w, c) = results
        .into_iter()
        .enumerate()
        .filter(|(i, _)| *i <= stop)
        .filter_map(|(_, r)| r)
        .min_by_key(|(w, _)| *w)?;
    Some((w, c.into_iter().map(Fe).collect()))
}

/// Row-reduced basis of the row space of `g`.
fn independent_rows(f: &Field, g: &Matrix) -> Matrix {
    let mut m = g.clone();
    let rank = m.rref(f).len();
    let rows: Vec<usize> = (0..rank).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    m.select(&rows, &cols)
}

/// Exact minimum distance with a witness codeword.
pub fn min_distance(code: &LocalCode, strategy: Strategy, budget: Budget) -> Result<Distance> {
    let f = &code.field;
    let n = code.n();
    let (k, h) = rank_and_parity(code);
    if k == 0 {
        return Err(Error::Infeasible("zero code has no minimum distance".into()));
    }
    let plain = (n - k + 1).max(1);
    let est_w = if code.r > 0 { (singleton_bound(n, k, code.r).max(1) as usize).min(plain) } else { plain };
    let s_cost = support_cost(n, est_w);
    let e_cost = exhaustive_cost(f.order(), k);
    let support_ok = s_cost <= budget.support as u128;
    let exhaustive_ok = e_cost <= budget.exhaustive as u128;
    let use_support = match strategy {
        Strategy::Support => {
            if !support_ok {
                return Err(Error::Infeasible(format!("support search needs {s_cost} subsets")));
            }
            true
        }
        Strategy::Exhaustive => {
            if !exhaustive_ok {
                return Err(Error::Infeasible(format!("exhaustive search needs {e_cost} messages")));
            }
            false
        }
        Strategy::Auto => match (support_ok, exhaustive_ok) {
            (true, true) => s_cost <= e_cost,
            (true, false) => true,
            (false, true) => false,
            (false, false) => {
                return Err(Error::Infeasible(format!(
                    "support needs {s_cost} subsets, exhaustive needs {e_cost} messages"
                )))
            }
        },
    };
    if use_support {
        let (d, witness) = support_search(f, &h, n, plain)
            .ok_or_else(|| Error::Infeasible("no dependent column set found".into()))?;
        return Ok(Distance { d, witness, method: Strategy::Support });
    }
    let g = independent_rows(f, &code.generator);
    // early exit at d_lower once nothing lighter exists, when that check is
    // cheaper than the enumeration it shortens
    let mut stop_at = None;
    if let Some(dl) = code.d_lower.filter(|&dl| dl >= 2) {
        let below = (dl - 1) as usize;
        let pre = support_cost(n, below);
        if pre <= budget.support as u128 && pre <= e_cost {
            if let Some((d, witness)) = support_search(f, &h, n, below) {
                return Ok(Distance { d, witness, method: Strategy::Support });
            }
            stop_at = Some(dl as usize);
        }
    }
    let (d, witness) = exhaustive_search(f, &g, stop_at).expect("nonzero code");
    Ok(Distance { d, witness, method: Strategy::Exhaustive })
}

// ---------------------------------------------------------------------------
// locality and repair

/// Linear relations among the columns of each repair group: vectors `lam`
/// with `sum_j lam_j column(grp_j) = 0`. From a stored local matrix this is
/// its left kernel; otherwise the null space of the group's columns of `G`.
#[derive(Clone, Debug)]
pub struct Relations {
    per_group: Vec<Vec<Vec<Fe>>>,
}

impl Relations {
    pub fn new(code: &LocalCode) -> Relations {
        let f = &code.field;
        let per_group = code
            .groups
            .iter()
            .enumerate()
            .map(|(g, grp)| match code.local.get(g) {
                Some(m) => m.left_nullspace(f),
                None => code.generator.select_cols(grp).right_nullspace(f),
            })
            .collect();
        Relations { per_group }
    }

    /// A relation involving member `i` of group `g`.
    pub fn covering(&self, g: usize, i: usize) -> Option<&[Fe]> {
        self.per_group[g].iter().find(|v| !v[i].is_zero()).map(Vec::as_slice)
    }

    /// `word[grp_i] = -lam_i^{-1} sum_{j != i} lam_j word[grp_j]`.
    pub fn recover(&self, code: &LocalCode, word: &[Fe], g: usize, i: usize) -> Option<Fe> {
        let f = &code.field;
        let lam = self.covering(g, i)?;
        let grp = &code.groups[g];
        let acc = f.sum(grp.iter().zip(lam).enumerate().filter(|(j, _)| *j != i).map(|(_, (&p, &l))| f.mul(l, word[p])));
        Some(f.neg(f.div(acc, lam[i])))
    }

    /// Every relation holds on the rows of `G`.
    fn annihilate(&self, code: &LocalCode) -> bool {
        let f = &code.field;
        self.per_group.iter().zip(&code.groups).all(|(rels, grp)| {
            rels.iter().all(|lam| {
                (0..code.k()).all(|r| {
                    let row = code.generator.row(r);
                    f.sum(grp.iter().zip(lam).map(|(&p, &l)| f.mul(l, row[p]))).is_zero()
                })
            })
        })
    }
}

fn group_of(code: &LocalCode, pos: usize) -> Option<(usize, usize)> {
    code.groups.iter().enumerate().find_map(|(g, grp)| grp.iter().position(|&p| p == pos).map(|i| (g, i)))
}

/// Groups partition the coordinates, each has at most `r + 1` members, and
/// every coordinate is a combination of the other coordinates of its group.
/// Stored local matrices must also pass the all-submatrices test and
/// describe the columns of `G`.
pub fn locality_ok(code: &LocalCode) -> bool {
    let n = code.n();
    let mut seen = vec![false; n];
    for grp in &code.groups {
        if grp.len() > code.r + 1 || grp.len() < 2 {
            return false;
        }
        for &p in grp {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return false;
    }
    if !code.local.is_empty()
        && (code.local.len() != code.groups.len() || !code.local.iter().all(|m| local_matrix_ok(&code.field, m)))
    {
        return false;
    }
    let rel = Relations::new(code);
    if !rel.annihilate(code) {
        return false;
    }
    code.groups.iter().enumerate().all(|(g, grp)| (0..grp.len()).all(|i| rel.covering(g, i).is_some()))
}

/// Recovers `word[erased]` from the other members of its repair group. With
/// a stored local matrix `M`, solves the `r x r` system for `beta` and
/// evaluates the erased row; otherwise uses a column relation of `G`.
pub fn repair(code: &LocalCode, word: &[Fe], erased: usize) -> Result<Fe> {
    let f = &code.field;
    let (g, i) = group_of(code, erased)
        .ok_or_else(|| Error::Infeasible(format!("position {erased} is in no repair group")))?;
    let grp = &code.groups[g];
    let rest: Vec<usize> = (0..grp.len()).filter(|&j| j != i).collect();
    if let Some(m) = code.local.get(g) {
        let all: Vec<usize> = (0..m.cols()).collect();
        let sub = m.select(&rest, &all);
        let vals: Vec<Fe> = rest.iter().map(|&j| word[grp[j]]).collect();
        let beta = sub.solve(f, &vals)?;
        return Ok(f.sum(m.row(i).iter().zip(&beta).map(|(&a, &b)| f.mul(a, b))));
    }
    let others: Vec<usize> = rest.iter().map(|&j| grp[j]).collect();
    let lam = code
        .generator
        .select_cols(&others)
        .solve_any(f, &code.generator.column(erased))
        .ok_or_else(|| Error::SingularSubmatrix(format!("position {erased} is not repairable")))?;
    Ok(f.sum(others.iter().zip(&lam).map(|(&p, &l)| f.mul(l, word[p]))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairStats {
    pub seed: u64,
    pub codewords: usize,
    pub attempts: usize,
    pub exact: usize,
    pub mismatches: usize,
    /// Attempts on the rescaled pole fiber, included in the totals.
    pub tail_attempts: usize,
}

/// Erases every coordinate of `trials` random codewords in turn and
/// compares the repaired symbol with the original. Groups larger than 17
/// are repaired through [`Relations`] instead of per-erasure solves.
pub fn repair_simulation(code: &LocalCode, trials: usize, seed: u64) -> RepairStats {
    let f = &code.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = f.order();
    let tail: Vec<usize> = code.tail.map(|t| code.groups[t].clone()).unwrap_or_default();
    let mut st = RepairStats { seed, codewords: trials, attempts: 0, exact: 0, mismatches: 0, tail_attempts: 0 };
    // per-erasure solves for small groups, one relation per group otherwise
    let small = code.r <= 16;
    let rel = Relations::new(code);
    for _ in 0..trials {
        let msg: Vec<Fe> = (0..code.k()).map(|_| Fe(rng.gen_range(0..q))).collect();
        let word = code.encode(&msg);
        for pos in 0..code.n() {
            st.attempts += 1;
            if tail.contains(&pos) {
                st.tail_attempts += 1;
            }
            let got = match group_of(code, pos) {
                Some(_) if small => repair(code, &word, pos).ok(),
                Some((g, i)) => rel.recover(code, &word, g, i),
                None => None,
            };
            if got == Some(word[pos]) {
                st.exact += 1;
            } else {
                st.mismatches += 1;
            }
        }
    }
    st
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "optimal")]
    Optimal,
    #[serde(rename = "almost-optimal")]
    AlmostOptimal,
    #[serde(rename = "bound-only")]
    BoundOnly,
    #[serde(rename = "rejected")]
    Rejected,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Optimal => "optimal",
            Verdict::AlmostOptimal => "almost-optimal",
            Verdict::BoundOnly => "bound-only",
            Verdict::Rejected => "rejected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub rank: usize,
    pub d_lower: Option<i64>,
    pub d_exact: Option<usize>,
    pub method: Option<Strategy>,
    pub locality_ok: bool,
    pub repair: Option<RepairStats>,
    pub singleton_bound: i64,
    pub defect: Option<i64>,
    /// `singleton_bound - d_lower`, an upper bound on the defect.
    pub defect_bound: Option<i64>,
    pub verdict: Verdict,
    pub witness: Option<Vec<String>>,
    /// Why the distance is missing, when it is.
    pub note: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub strategy: Strategy,
    pub budget: Budget,
    /// Random codewords for the repair simulation; zero skips it.
    pub repair_trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions { strategy: Strategy::Auto, budget: Budget::default(), repair_trials: 100, seed: 1 }
    }
}

/// Singleton-type bound, defect and verdict for the given parameters.
pub fn classify(n: usize, k: usize, r: usize, d_exact: Option<usize>) -> (i64, Option<i64>, Verdict) {
    let bound = singleton_bound(n, k, r);
    match d_exact {
        None => (bound, None, Verdict::BoundOnly),
        Some(d) => {
            let delta = bound - d as i64;
            let v = match delta {
                0 => Verdict::Optimal,
                1 => Verdict::AlmostOptimal,
                _ => Verdict::Rejected,
            };
            (bound, Some(delta), v)
        }
    }
}

pub fn verify(code: &LocalCode, opts: &VerifyOptions) -> VerifyReport {
    let f = &code.field;
    let (rank, _) = rank_and_parity(code);
    let loc = locality_ok(code);
    let repair = (opts.repair_trials > 0 && loc).then(|| repair_simulation(code, opts.repair_trials, opts.seed));
    let dist = if rank == code.k() { Some(min_distance(code, opts.strategy, opts.budget)) } else { None };
    let (d_exact, method, witness, note) = match dist {
        Some(Ok(d)) => (Some(d.d), Some(d.method), Some(d.witness.iter().map(|&x| f.format(x)).collect()), None),
        Some(Err(e)) => (None, None, None, Some(e.to_string())),
        None => (None, None, None, Some(format!("rank {rank} < {} rows", code.k()))),
    };
    let (bound, defect, mut verdict) = classify(code.n(), code.k(), code.r, d_exact);
    let repair_clean = repair.as_ref().is_none_or(|s| s.mismatches == 0);
    let below_lower = matches!((d_exact, code.d_lower), (Some(d), Some(l)) if (d as i64) < l);
    if !loc || rank != code.k() || !repair_clean || below_lower {
        verdict = Verdict::Rejected;
    }
    VerifyReport {
        n: code.n(),
        k: code.k(),
        r: code.r,
        rank,
        d_lower: code.d_lower,
        d_exact,
        method,
        locality_ok: loc,
        repair,
        singleton_bound: bound,
        defect,
        defect_bound: code.d_lower.map(|l| bound - l),
        verdict,
        witness,
        note,
    }
}
