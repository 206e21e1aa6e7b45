//! Brute-force face enumeration over a rational grid.
//!
//! Faces are invariant under translation along `(1, …, 1)`, so the grid fixes
//! `x_n = 0` and lets the other coordinates range over `k / denominator` with
//! `|k / denominator| <= half_span`. With `denominator >= n + 1` and
//! `half_span >= (m + 1)(n - 1) + 1` every face contains a grid point: a face
//! is fixed by the clamped integer parts of the differences together with
//! the weak order of at most `n` fractional-part classes, and those classes
//! fit on the points `j / (n + 1)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{face_dimension, Arrangement, FaceCode, RationalPoint};
use crate::error::{Error, Result};

/// Environment variable holding the number of worker threads.
pub const WORKERS_ENV: &str = "SHI_FACES_WORKERS";

/// Grid resolution and extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridParams {
    pub denominator: i64,
    pub half_span: BigRational,
}

impl GridParams {
    /// The smallest parameters covered by the sufficiency argument.
    pub fn minimal(arr: &Arrangement) -> Self {
        GridParams {
            denominator: arr.n() as i64 + 1,
            half_span: BigRational::from_integer(BigInt::from(min_half_span(arr))),
        }
    }

    pub fn new(denominator: i64, half_span: BigRational) -> Self {
        GridParams {
            denominator,
            half_span,
        }
    }

    /// Largest grid numerator in absolute value.
    fn reach(&self) -> i64 {
        (&self.half_span * BigInt::from(self.denominator))
            .floor()
            .to_integer()
            .to_i64()
            .unwrap_or(i64::MAX)
    }

    fn check(&self, arr: &Arrangement) -> Result<()> {
        let n = arr.n() as i64;
        if self.denominator < n + 1 {
            return Err(Error::InsufficientGrid(format!(
                "denominator {} < n + 1 = {}",
                self.denominator,
                n + 1
            )));
        }
        let need = min_half_span(arr);
        if self.half_span < BigRational::from_integer(BigInt::from(need)) {
            return Err(Error::InsufficientGrid(format!(
                "half_span {} < (m + 1)(n - 1) + 1 = {need}",
                self.half_span
            )));
        }
        let side = 2 * self.reach() as u128 + 1;
        let points = side.checked_pow(arr.n() as u32 - 1).unwrap_or(u128::MAX);
        if points > 1 << 31 {
            return Err(Error::InsufficientGrid(format!(
                "grid of {points} points is too large"
            )));
        }
        Ok(())
    }
}

fn min_half_span(arr: &Arrangement) -> i64 {
    (arr.m() as i64 + 1) * (arr.n() as i64 - 1) + 1
}

/// All faces of an arrangement found on a grid, with one grid point in each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCensus {
    arrangement: Arrangement,
    params: GridParams,
    /// each face with its lexicographically least grid numerators
    faces: BTreeMap<FaceCode, Vec<i64>>,
    counts_by_dim: BTreeMap<usize, usize>,
}

impl FaceCensus {
    pub fn arrangement(&self) -> Arrangement {
        self.arrangement
    }

    pub fn params(&self) -> &GridParams {
        &self.params
    }

    pub fn faces(&self) -> impl Iterator<Item = &FaceCode> {
        self.faces.keys()
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, code: &FaceCode) -> bool {
        self.faces.contains_key(code)
    }

    pub fn counts_by_dim(&self) -> &BTreeMap<usize, usize> {
        &self.counts_by_dim
    }

    pub fn count(&self, dim: usize) -> usize {
        self.counts_by_dim.get(&dim).copied().unwrap_or(0)
    }

    /// A grid point lying in `code`, if the face was found.
    pub fn representative(&self, code: &FaceCode) -> Option<RationalPoint> {
        self.faces
            .get(code)
            .map(|nums| RationalPoint::from_integers(nums, self.params.denominator))
    }

    /// The `faces.json` document: codes sorted by their serialized form.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Doc {
            arrangement: ArrJson,
            parameters: ParamJson,
            faces: Vec<serde_json::Value>,
            counts_by_dim: BTreeMap<String, usize>,
        }
        #[derive(Serialize)]
        struct ArrJson {
            kind: String,
            n: usize,
            m: usize,
        }
        #[derive(Serialize)]
        struct ParamJson {
            denominator: i64,
            half_span: String,
        }
        let mut faces: Vec<(String, serde_json::Value)> = self
            .faces
            .keys()
            .map(|c| {
                let v = c.to_json();
                (v.to_string(), v)
            })
            .collect();
        faces.sort_by(|a, b| a.0.cmp(&b.0));
        let doc = Doc {
            arrangement: ArrJson {
                kind: self.arrangement.kind().to_string(),
                n: self.arrangement.n(),
                m: self.arrangement.m(),
            },
            parameters: ParamJson {
                denominator: self.params.denominator,
                half_span: self.params.half_span.to_string(),
            },
            faces: faces.into_iter().map(|(_, v)| v).collect(),
            counts_by_dim: self
                .counts_by_dim
                .iter()
                .map(|(d, c)| (d.to_string(), *c))
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data")
    }
}

/// Sign vectors (in hyperplane order) with their least grid representative.
type Shard = HashMap<Vec<Ordering>, Vec<i64>>;

fn keep_least(map: &mut Shard, signs: &[Ordering], nums: &[i64]) {
    match map.get_mut(signs) {
        Some(best) => {
            if nums < best.as_slice() {
                best.copy_from_slice(nums);
            }
        }
        None => {
            map.insert(signs.to_vec(), nums.to_vec());
        }
    }
}

fn merge(mut a: Shard, b: Shard) -> Shard {
    for (signs, nums) in b {
        keep_least(&mut a, &signs, &nums);
    }
    a
}

/// Scans the grid points whose first coordinate numerator lies in `firsts`.
fn scan(arr: &Arrangement, denom: i64, reach: i64, firsts: impl Iterator<Item = i64>) -> Shard {
    let n = arr.n();
    let planes: Vec<(usize, usize, i64)> = arr
        .hyperplane_triples()
        .into_iter()
        .map(|h| (h.i - 1, h.j - 1, h.s * denom))
        .collect();
    let mut signs = vec![Ordering::Equal; planes.len()];
    let fill = |nums: &[i64], signs: &mut [Ordering]| {
        for (slot, &(i, j, offset)) in signs.iter_mut().zip(&planes) {
            *slot = (nums[i] - nums[j]).cmp(&offset);
        }
    };
    let mut out = Shard::new();
    if n == 1 {
        fill(&[0], &mut signs);
        keep_least(&mut out, &signs, &[0]);
        return out;
    }
    let mut nums = vec![0i64; n];
    for first in firsts {
        nums[0] = first;
        for v in nums[1..n - 1].iter_mut() {
            *v = -reach;
        }
        loop {
            fill(&nums, &mut signs);
            keep_least(&mut out, &signs, &nums);
            if !advance(&mut nums[1..n - 1], reach) {
                break;
            }
        }
    }
    out
}

/// Odometer step over `[-reach, reach]^len`; false after the last point.
fn advance(slots: &mut [i64], reach: i64) -> bool {
    for v in slots.iter_mut().rev() {
        if *v < reach {
            *v += 1;
            return true;
        }
        *v = -reach;
    }
    false
}

fn finish(arr: Arrangement, params: GridParams, shard: Shard) -> Result<FaceCensus> {
    let faces: BTreeMap<FaceCode, Vec<i64>> = shard
        .into_iter()
        .map(|(signs, nums)| Ok((FaceCode::from_signs(arr, signs)?, nums)))
        .collect::<Result<_>>()?;
    let mut counts_by_dim = BTreeMap::new();
    for code in faces.keys() {
        *counts_by_dim.entry(face_dimension(code)?).or_insert(0) += 1;
    }
    Ok(FaceCensus {
        arrangement: arr,
        params,
        faces,
        counts_by_dim,
    })
}

/// Enumerates the faces of `arr` on the grid, in parallel over the first coordinate.
pub fn enumerate_faces(arr: &Arrangement, params: &GridParams) -> Result<FaceCensus> {
    params.check(arr)?;
    let reach = params.reach();
    let denom = params.denominator;
    let firsts: Vec<i64> = if arr.n() == 1 { vec![0] } else { (-reach..=reach).collect() };
    let shard = with_workers(|| {
        firsts
            .par_iter()
            .map(|&f| scan(arr, denom, reach, std::iter::once(f)))
            .reduce(Shard::new, merge)
    });
    finish(*arr, params.clone(), shard)
}

/// Same census computed sequentially over `shards` contiguous blocks of the
/// first coordinate, merged by set union. Used to check shard independence.
pub fn enumerate_faces_sharded(arr: &Arrangement, params: &GridParams, shards: usize) -> Result<FaceCensus> {
    params.check(arr)?;
    let reach = params.reach();
    let firsts: Vec<i64> = if arr.n() == 1 { vec![0] } else { (-reach..=reach).collect() };
    let size = firsts.len().div_ceil(shards.max(1));
    let merged = firsts
        .chunks(size.max(1))
        .map(|chunk| scan(arr, params.denominator, reach, chunk.iter().copied()))
        .rev()
        .fold(Shard::new(), merge);
    finish(*arr, params.clone(), merged)
}

/// Calls `f` for every grid point (as numerators over `params.denominator`).
pub fn for_each_grid_point(arr: &Arrangement, params: &GridParams, mut f: impl FnMut(&[i64])) -> Result<()> {
    params.check(arr)?;
    let n = arr.n();
    let reach = params.reach();
    let mut nums = vec![0i64; n];
    if n == 1 {
        f(&nums);
        return Ok(());
    }
    for v in nums[..n - 1].iter_mut() {
        *v = -reach;
    }
    loop {
        f(&nums);
        if !advance(&mut nums[..n - 1], reach) {
            return Ok(());
        }
    }
}

/// Runs `f` inside a thread pool sized by [`WORKERS_ENV`], if set.
pub fn with_workers<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let workers = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w > 0);
    match workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Codes missing from `other` and codes in `other` that the census lacks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CensusDiff {
    pub missing: Vec<FaceCode>,
    pub extra: Vec<FaceCode>,
}

impl CensusDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

pub fn census_diff<'a>(census: &FaceCensus, other: impl IntoIterator<Item = &'a FaceCode>) -> Result<CensusDiff> {
    let mut seen = BTreeSet::new();
    for code in other {
        if code.arrangement() != census.arrangement() {
            return Err(Error::ArrangementMismatch(format!(
                "{} vs {}",
                census.arrangement(),
                code.arrangement()
            )));
        }
        seen.insert(code);
    }
    Ok(CensusDiff {
        missing: census
            .faces()
            .filter(|c| !seen.contains(c))
            .cloned()
            .collect(),
        extra: seen
            .into_iter()
            .filter(|c| !census.contains(c))
            .cloned()
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{face_code_of_point, Kind};

    fn census(kind: Kind, n: usize, m: usize) -> FaceCensus {
        let arr = Arrangement::new(kind, n, m).unwrap();
        enumerate_faces(&arr, &GridParams::minimal(&arr)).unwrap()
    }

    fn counts(c: &FaceCensus) -> Vec<usize> {
        (1..=c.arrangement().n()).map(|d| c.count(d)).collect()
    }

    #[test]
    fn braid_three() {
        assert_eq!(counts(&census(Kind::Braid, 3, 1)), vec![1, 6, 6]);
    }

    #[test]
    fn shi_three() {
        let c = census(Kind::MShi, 3, 1);
        assert_eq!(counts(&c), vec![6, 21, 16]);
        assert_eq!(c.len(), 43);
    }

    #[test]
    fn catalan_three() {
        let c = census(Kind::MCatalan, 3, 1);
        assert_eq!(counts(&c), vec![13, 42, 30]);
        assert_eq!(c.len(), 85);
    }

    #[test]
    fn single_coordinate() {
        let c = census(Kind::MShi, 1, 2);
        assert_eq!(counts(&c), vec![1]);
    }

    #[test]
    fn refuses_small_grids() {
        let arr = Arrangement::shi(3, 1).unwrap();
        let small = GridParams::new(3, BigRational::from_integer(5.into()));
        assert!(matches!(enumerate_faces(&arr, &small), Err(Error::InsufficientGrid(_))));
        let short = GridParams::new(4, BigRational::from_integer(4.into()));
        assert!(matches!(enumerate_faces(&arr, &short), Err(Error::InsufficientGrid(_))));
    }

    #[test]
    fn idempotent_under_refinement() {
        for arr in [Arrangement::shi(3, 1).unwrap(), Arrangement::catalan(2, 2).unwrap()] {
            let base = GridParams::minimal(&arr);
            let a = enumerate_faces(&arr, &base).unwrap();
            let finer = GridParams::new(base.denominator * 2, base.half_span.clone());
            let wider = GridParams::new(base.denominator, &base.half_span * BigInt::from(2));
            let b = enumerate_faces(&arr, &finer).unwrap();
            let c = enumerate_faces(&arr, &wider).unwrap();
            assert!(census_diff(&a, b.faces()).unwrap().is_empty());
            assert!(census_diff(&a, c.faces()).unwrap().is_empty());
        }
    }

    #[test]
    fn sharding_is_deterministic() {
        let arr = Arrangement::catalan(3, 1).unwrap();
        let params = GridParams::minimal(&arr);
        let whole = enumerate_faces(&arr, &params).unwrap();
        for shards in [1, 3, 7] {
            assert_eq!(enumerate_faces_sharded(&arr, &params, shards).unwrap(), whole);
        }
    }

    #[test]
    fn representatives_lie_in_their_faces() {
        let c = census(Kind::MCatalan, 3, 1);
        for code in c.faces() {
            let p = c.representative(code).unwrap();
            assert_eq!(&face_code_of_point(&c.arrangement(), &p).unwrap(), code);
        }
    }

    #[test]
    fn grid_point_count() {
        let arr = Arrangement::shi(3, 1).unwrap();
        let params = GridParams::minimal(&arr);
        let mut count = 0;
        for_each_grid_point(&arr, &params, |_| count += 1).unwrap();
        // reach = 5 * 4 = 20, so 41 values in each of two free coordinates
        assert_eq!(count, 41 * 41);
    }

    #[test]
    fn diff_reports_both_sides() {
        let c = census(Kind::MShi, 2, 1);
        let other_arr = Arrangement::shi(2, 1).unwrap();
        let bogus = FaceCode::from_fn(other_arr, |_| std::cmp::Ordering::Equal);
        let some: Vec<&FaceCode> = c.faces().skip(1).chain(std::iter::once(&bogus)).collect();
        let d = census_diff(&c, some).unwrap();
        assert_eq!(d.missing.len(), 1);
        assert_eq!(d.extra, vec![bogus]);
        let cat = census(Kind::MCatalan, 2, 1);
        assert!(census_diff(&c, cat.faces()).is_err());
    }

    #[test]
    fn json_is_sorted() {
        let c = census(Kind::MShi, 2, 1);
        let doc = c.to_json();
        let faces = doc["faces"].as_array().unwrap();
        assert_eq!(faces.len(), 5);
        let keys: Vec<String> = faces.iter().map(|f| f.to_string()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(doc["counts_by_dim"]["2"], 3);
    }
}
