// SPDX-License-Identifier: Apache-2.0

//! Text formats: field and curve specs, matrix CSV, repair-group files,
//! run configuration and versioned JSON records.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::aut::{aut_catalog, group_generate, parse_word};
use crate::construct::{EvenPlan, EvenVariant, LocalCode, OddPlan, PlanRecord};
use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::tables::Target;
use crate::verify::{Budget, Strategy};

pub const SCHEMA: u32 = 1;

fn field_err(s: &str, why: &str) -> Error {
    Error::Config(format!("field {s:?}: {why}"))
}

fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut v, mut m) = (q, 0);
    while v % p == 0 {
        v /= p;
        m += 1;
    }
    (v == 1).then_some((p as u32, m))
}

/// Parses `q`, `p^m`, optionally followed by `:c0,c1,...,cm` giving the
/// modulus coefficients from the constant term up.
pub fn parse_field(s: &str) -> Result<Field> {
    let t = s.trim();
    let t = t.strip_prefix("F_").unwrap_or(t);
    let (size, modulus) = match t.split_once(':') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let (p, m) = match size.split_once('^') {
        Some((p, m)) => {
            let p = p.trim().parse::<u32>().map_err(|_| field_err(s, "bad characteristic"))?;
            let m = m.trim().parse::<u32>().map_err(|_| field_err(s, "bad degree"))?;
            (p, m)
        }
        None => {
            let q = size.parse::<u64>().map_err(|_| field_err(s, "bad order"))?;
            prime_power(q).ok_or_else(|| field_err(s, "order is not a prime power"))?
        }
    };
    let coeffs = match modulus {
        Some(list) => Some(
            list.split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| field_err(s, "bad modulus coefficient")))
                .collect::<Result<Vec<u32>>>()?,
        ),
        None => None,
    };
    Field::new(p, m, coeffs.as_deref()).map_err(|e| field_err(s, &e.to_string()))
}

/// `p^m:c0,...,cm`, accepted by [`parse_field`].
pub fn format_field(f: &Field) -> String {
    let md: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
    format!("{}^{}:{}", f.characteristic(), f.degree(), md.join(","))
}

/// Splits at top-level `+`/`-`, keeping the sign with each term.
fn signed_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            } else if !out.is_empty() || neg {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parenthesis in {s:?}")));
    }
    if cur.is_empty() {
        return Err(Error::Parse(format!("empty polynomial term in {s:?}")));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses a polynomial in `x`: `x5+x3+2x`, `x^6 + x^3 + 2`,
/// `(u+2)*x^3 - x`. Coefficients are field elements, parenthesized when
/// they contain `+`.
pub fn parse_poly(f: &Field, s: &str) -> Result<Poly> {
    let mut coeffs: Vec<Fe> = Vec::new();
    for (neg, term) in signed_terms(s)? {
        let (c, deg) = match term.find('x') {
            None => (term.as_str(), 0usize),
            Some(i) => {
                let (c, rest) = term.split_at(i);
                let e = rest[1..].trim_start_matches('^');
                let deg = if e.is_empty() {
                    1
                } else {
                    e.parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                };
                (c.trim_end_matches('*'), deg)
            }
        };
        let c = c.trim_start_matches('(').trim_end_matches(')');
        let mut v = if c.is_empty() { Fe::ONE } else { f.parse(c)? };
        if neg {
            v = f.neg(v);
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Fe::ZERO);
        }
        coeffs[deg] = f.add(coeffs[deg], v);
    }
    Ok(Poly::new(coeffs))
}

pub fn parse_curve(f: &Field, s: &str) -> Result<Curve> {
    let s = s.trim();
    let s = s.strip_prefix("y^2=").or_else(|| s.strip_prefix("y2=")).unwrap_or(s);
    Curve::new(f, parse_poly(f, s)?)
}

// ---------------------------------------------------------------------------
// matrices and groups

/// CSV with a `# field p^m:modulus` header line. Entries are integers over
/// prime fields and `c0+c1*u` strings otherwise.
pub fn matrix_to_csv(f: &Field, m: &Matrix) -> String {
    let mut s = format!("# field {}\n", format_field(f));
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|&x| f.format(x)).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn matrix_from_csv(text: &str) -> Result<(Field, Matrix)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let spec = header
        .strip_prefix('#')
        .map(str::trim)
        .and_then(|h| h.strip_prefix("field"))
        .ok_or_else(|| Error::Parse("missing '# field' header line".into()))?;
    let f = parse_field(spec)?;
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let row = line.split(',').map(|e| f.parse(e)).collect::<Result<Vec<Fe>>>()?;
        if rows.first().is_some_and(|r: &Vec<Fe>| r.len() != row.len()) {
            return Err(Error::Parse(format!("row {i} has {} entries, expected {}", row.len(), rows[0].len())));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    Ok((f, Matrix::from_rows(rows)))
}

/// One repair group per line as comma-separated zero-based columns.
pub fn groups_to_text(groups: &[Vec<usize>]) -> String {
    groups.iter().map(|g| g.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",") + "\n").collect()
}

pub fn groups_from_text(text: &str) -> Result<Vec<Vec<usize>>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',')
                .map(|c| c.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad column index {c:?}"))))
                .collect()
        })
        .collect()
}

/// A code read back from its matrix and group files. Locality is one less
/// than the common group size.
pub fn load_code(matrix: &str, groups: &str) -> Result<LocalCode> {
    let (f, g) = matrix_from_csv(matrix)?;
    let groups = groups_from_text(groups)?;
    let n = g.cols();
    let mut seen = vec![false; n];
    for c in groups.iter().flatten() {
        if *c >= n || std::mem::replace(&mut seen[*c], true) {
            return Err(Error::Parse(format!("column {c} is out of range or repeated")));
        }
    }
    let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
    if sizes.windows(2).any(|w| w[0] != w[1]) || sizes.first() == Some(&0) {
        return Err(Error::Parse(format!("group sizes {sizes:?} are not all equal")));
    }
    Ok(LocalCode::from_parts(&f, g, groups))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// configuration and records

/// Inclusive range of a sweep parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: String,
    /// Catalog label or polynomial in `x`.
    pub curve: String,
    /// Words in the catalog generators, comma separated; `-I` is added for
    /// odd locality.
    #[serde(default)]
    pub subgroup: Option<String>,
    #[serde(default)]
    pub ell: Option<usize>,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub extended: bool,
    /// `4t+1`, `4t+2` or `2t+1` selects the even construction.
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub strategy: Option<Strategy>,
    #[serde(default)]
    pub budget: Option<Budget>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub sweep_ell: Option<Range>,
    #[serde(default)]
    pub sweep_t: Option<Range>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig> {
        Ok(serde_json::from_str(text)?)
    }
}

/// The construction a configuration describes. A `variant` selects the
/// even construction with `subgroup` as the word for its cyclic generator;
/// otherwise the odd construction on the group generated by the words and
/// `-I` (the whole catalog group when no words are given).
pub fn target_from(cfg: &RunConfig) -> Result<Target> {
    let f = parse_field(&cfg.field)?;
    let c = parse_curve(&f, &cfg.curve)?;
    let words: Vec<&str> =
        cfg.subgroup.as_deref().map(|s| s.split(',').map(str::trim).filter(|w| !w.is_empty()).collect()).unwrap_or_default();
    let gens = || -> Result<Vec<(String, crate::aut::Aut)>> { Ok(aut_catalog(&c)?.generators) };
    if let Some(v) = &cfg.variant {
        let variant = EvenVariant::parse(v)?;
        let h = match words.as_slice() {
            [] => None,
            [w] => Some(parse_word(&f, &gens()?, w)?),
            _ => return Err(Error::Config("even construction takes a single generator word".into())),
        };
        return Ok(Target::Even(EvenPlan::new(&c, h, None)?, variant));
    }
    let named = gens()?;
    let mut mats: Vec<crate::aut::Aut> = if words.is_empty() {
        named.iter().map(|g| g.1).collect()
    } else {
        words.iter().map(|w| parse_word(&f, &named, w)).collect::<Result<_>>()?
    };
    mats.push(crate::aut::Aut::minus_identity(&f));
    Ok(Target::Odd(OddPlan::new(&c, &group_generate(&c, &mats)?)?))
}

/// Builds the single code of a configuration; `ell` defaults to the
/// largest available and `t` to `ell` (odd) or `ell - 1` (even).
pub fn build_from(cfg: &RunConfig) -> Result<LocalCode> {
    let target = target_from(cfg)?;
    let ell = cfg.ell.unwrap_or(target.max_ell());
    let t = cfg.t.unwrap_or(*target.t_range(ell).end());
    match &target {
        Target::Odd(p) => p.build(ell, t, cfg.extended || ell > p.max_ell(false)),
        Target::Even(..) => target.build(ell, t),
    }
}

/// The plan record as written next to a matrix file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanFile {
    pub schema: u32,
    pub plan: PlanRecord,
    pub groups: Vec<Vec<usize>>,
    #[serde(default)]
    pub tail: Option<usize>,
}

impl PlanFile {
    pub fn of(code: &LocalCode) -> Option<PlanFile> {
        code.record.clone().map(|plan| PlanFile { schema: SCHEMA, plan, groups: code.groups.clone(), tail: code.tail })
    }
}

/// A serializable value tagged with the schema version.
#[derive(Clone, Debug, Serialize)]
pub struct Versioned<'a, T: Serialize> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn to_json<T: Serialize>(body: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Versioned { schema: SCHEMA, body })?)
}
