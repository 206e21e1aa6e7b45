use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arrangement::{FaceCode, Kind, RationalPoint};
use crate::error::{Error, Result};

/// The ranks `eta_s(k)` of the shifted pairs `(p_k + s, -s)` among all such
/// pairs (compared lexicographically, duplicates merged), together with the
/// sets `D_s` of indices `k` such that `p_k = p_j + s` for some `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MCatalanCode {
    n: usize,
    m: usize,
    /// `eta[s][k - 1]`
    eta: Vec<Vec<usize>>,
    /// `dashed[s - 1]` is `D_s`
    dashed: Vec<BTreeSet<usize>>,
    /// `types[t - 1]` is the type of site `t`
    types: Vec<usize>,
}

impl MCatalanCode {
    /// `side(k, j, d)` is the side of `p_k - p_j` relative to `d`, for `k != j`.
    fn build(n: usize, m: usize, side: impl Fn(usize, usize, i64) -> Ordering) -> Self {
        let cmp = |&(k, s): &(usize, usize), &(j, t): &(usize, usize)| -> Ordering {
            let first = if k == j {
                s.cmp(&t)
            } else {
                side(k, j, t as i64 - s as i64)
            };
            first.then(t.cmp(&s))
        };
        let mut pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|k| (0..=m).map(move |s| (k, s)))
            .collect();
        pairs.sort_by(cmp);
        let mut eta = vec![vec![0; n]; m + 1];
        let mut types = Vec::new();
        let mut prev: Option<(usize, usize)> = None;
        for pair in pairs {
            if prev.is_none_or(|p| cmp(&p, &pair) != Ordering::Equal) {
                types.push(pair.1);
            }
            eta[pair.1][pair.0 - 1] = types.len();
            prev = Some(pair);
        }
        let dashed = (1..=m)
            .map(|s| {
                (1..=n)
                    .filter(|&k| {
                        (1..=n).any(|j| j != k && side(k, j, s as i64) == Ordering::Equal)
                    })
                    .collect()
            })
            .collect();
        MCatalanCode {
            n,
            m,
            eta,
            dashed,
            types,
        }
    }

    /// The code of an exact point.
    pub fn of_point(p: &RationalPoint, m: usize) -> Result<Self> {
        if m == 0 || p.dim() == 0 {
            return Err(Error::InvalidArrangement("need n, m >= 1".into()));
        }
        let c = p.coords();
        Ok(Self::build(p.dim(), m, |k, j, d| {
            (&c[k - 1] - &c[j - 1]).cmp(&BigRational::from_integer(BigInt::from(d)))
        }))
    }

    /// The code of any point of an m-Catalan face. Every comparison the code
    /// needs is between `p_k - p_j` and an offset in `[-m, m]`, so the face
    /// determines it.
    pub fn of_face(code: &FaceCode) -> Result<Self> {
        let arr = code.arrangement();
        if arr.kind() != Kind::MCatalan {
            return Err(Error::WrongKind {
                expected: Kind::MCatalan,
                got: arr.kind(),
            });
        }
        Ok(Self::build(arr.n(), arr.m(), |k, j, d| {
            code.sign(k, j, d).expect("offset within [-m, m]")
        }))
    }

    /// Assembles a code from raw rows, e.g. to probe the inverse map with
    /// tuples that no point produces. `eta[s]` lists `eta_s(1..=n)` and
    /// `dashed[s - 1]` is `D_s`. The images must cover `1..=h` with one type per site.
    pub fn from_parts(eta: Vec<Vec<usize>>, dashed: Vec<BTreeSet<usize>>) -> Result<Self> {
        let m = eta.len().checked_sub(1).filter(|&m| m >= 1).ok_or_else(|| {
            Error::InvalidObject("need at least two eta rows".into())
        })?;
        let n = eta[0].len();
        if n == 0 || eta.iter().any(|row| row.len() != n) || dashed.len() != m {
            return Err(Error::InvalidObject("ragged code".into()));
        }
        if dashed.iter().flatten().any(|&k| k == 0 || k > n) {
            return Err(Error::InvalidObject("D_s must lie in [n]".into()));
        }
        let h = eta.iter().flatten().copied().max().unwrap_or(0);
        let mut types = vec![None; h];
        for (s, row) in eta.iter().enumerate() {
            for &t in row {
                if t == 0 {
                    return Err(Error::InvalidObject("sites start at 1".into()));
                }
                match types[t - 1] {
                    Some(prev) if prev != s => {
                        return Err(Error::InvalidObject(format!("site {t} has two types")))
                    }
                    _ => types[t - 1] = Some(s),
                }
            }
        }
        let types = types
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidObject("sites do not cover 1..=h".into()))?;
        Ok(MCatalanCode {
            n,
            m,
            eta,
            dashed,
            types,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `eta_s(k)`.
    pub fn eta(&self, s: usize, k: usize) -> usize {
        self.eta[s][k - 1]
    }

    /// The row `(eta_s(1), ..., eta_s(n))`.
    pub fn eta_row(&self, s: usize) -> &[usize] {
        &self.eta[s]
    }

    /// `D_s` for `s` in `1..=m`.
    pub fn dashed(&self, s: usize) -> &BTreeSet<usize> {
        &self.dashed[s - 1]
    }

    /// Union of all `D_s`.
    pub fn dashed_union(&self) -> BTreeSet<usize> {
        self.dashed.iter().flatten().copied().collect()
    }

    /// Number of sites.
    pub fn sites(&self) -> usize {
        self.types.len()
    }

    pub fn site_type(&self, t: usize) -> usize {
        self.types[t - 1]
    }

    /// `eta_s^{-1}(t)`.
    pub fn preimage(&self, s: usize, t: usize) -> Vec<usize> {
        (1..=self.n).filter(|&k| self.eta[s][k - 1] == t).collect()
    }

    /// A site `t` of type `s > 0` followed by a site of type `s' < s` whose
    /// `eta_{s'}` preimage lies in `D_{s - s'}`.
    pub fn is_dash_site(&self, t: usize) -> bool {
        if t == 0 || t >= self.sites() {
            return false;
        }
        let s = self.site_type(t);
        let next = self.site_type(t + 1);
        s > 0
            && next < s
            && self
                .preimage(next, t + 1)
                .iter()
                .all(|k| self.dashed(s - next).contains(k))
    }

    pub fn dash_sites(&self) -> Vec<usize> {
        (1..=self.sites()).filter(|&t| self.is_dash_site(t)).collect()
    }
}
