//! Arrangements, exact points and face sign vectors.
//!
//! Every hyperplane is stored once, as a triple `(i, j, s)` with `i < j`,
//! standing for `x_i - x_j = s`. A hyperplane written with `i > j` is the
//! same as `(j, i, -s)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Braid,
    MCatalan,
    MShi,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Braid => "braid",
            Kind::MCatalan => "m_catalan",
            Kind::MShi => "m_shi",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "braid" => Ok(Kind::Braid),
            "catalan" | "m_catalan" | "m-catalan" => Ok(Kind::MCatalan),
            "shi" | "m_shi" | "m-shi" => Ok(Kind::MShi),
            other => Err(Error::InvalidArrangement(format!(
                "unknown arrangement kind {other:?}"
            ))),
        }
    }
}

/// One of the braid, m-Catalan or m-Shi arrangements in `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrangement {
    kind: Kind,
    n: usize,
    m: usize,
}

/// The hyperplane `x_i - x_j = s` (1-based coordinates, `i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub s: i64,
}

impl Arrangement {
    /// `m` is ignored (forced to 1) for the braid arrangement.
    pub fn new(kind: Kind, n: usize, m: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArrangement("n must be at least 1".into()));
        }
        if m == 0 {
            return Err(Error::InvalidArrangement("m must be at least 1".into()));
        }
        let m = if kind == Kind::Braid { 1 } else { m };
        Ok(Arrangement { kind, n, m })
    }

    pub fn braid(n: usize) -> Result<Self> {
        Self::new(Kind::Braid, n, 1)
    }

    pub fn catalan(n: usize, m: usize) -> Result<Self> {
        Self::new(Kind::MCatalan, n, m)
    }

    pub fn shi(n: usize, m: usize) -> Result<Self> {
        Self::new(Kind::MShi, n, m)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Inclusive range of offsets `s` used for every pair.
    pub fn offsets(&self) -> (i64, i64) {
        let m = self.m as i64;
        match self.kind {
            Kind::Braid => (0, 0),
            Kind::MCatalan => (-m, m),
            Kind::MShi => (-m + 1, m),
        }
    }

    fn width(&self) -> usize {
        let (lo, hi) = self.offsets();
        (hi - lo + 1) as usize
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.n * (self.n - 1) / 2 * self.width()
    }

    /// All hyperplanes in lexicographic `(i, j, s)` order.
    pub fn hyperplane_triples(&self) -> Vec<Hyperplane> {
        let (lo, hi) = self.offsets();
        let mut out = Vec::with_capacity(self.num_hyperplanes());
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                for s in lo..=hi {
                    out.push(Hyperplane { i, j, s });
                }
            }
        }
        out
    }

    /// Position of `(i, j, s)` with `i < j` in [`Self::hyperplane_triples`].
    pub fn index_of(&self, i: usize, j: usize, s: i64) -> Option<usize> {
        let (lo, hi) = self.offsets();
        if i == 0 || i >= j || j > self.n || s < lo || s > hi {
            return None;
        }
        let pair = (i - 1) * (2 * self.n - i) / 2 + (j - i - 1);
        Some(pair * self.width() + (s - lo) as usize)
    }

    /// The hyperplane set restricted from the m-Catalan arrangement with the same `n, m`.
    pub fn contains(&self, h: Hyperplane) -> bool {
        self.index_of(h.i, h.j, h.s).is_some()
    }
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, m={})", self.kind, self.n, self.m)
    }
}

/// A point of `R^n` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint(coords)
    }

    pub fn from_integers(nums: &[i64], denom: i64) -> Self {
        RationalPoint(
            nums.iter()
                .map(|&k| BigRational::new(BigInt::from(k), BigInt::from(denom)))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    /// The point shifted by `t` along the all-ones direction.
    pub fn translate(&self, t: &BigRational) -> Self {
        RationalPoint(self.0.iter().map(|c| c + t).collect())
    }
}

/// Parses one exact rational: `-2`, `1.25`, `.5`, `3/8`.
pub fn parse_rational(text: &str) -> std::result::Result<BigRational, ParseError> {
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseError::new(0, format!("bad numerator in {t:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseError::new(0, format!("bad denominator in {t:?}")))?;
        if den.is_zero() {
            return Err(ParseError::new(0, format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(num, den));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(ParseError::new(0, format!("not a decimal number: {t:?}")));
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().expect("digits only")
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let q = BigRational::new(num, den);
    Ok(if neg { -q } else { q })
}

impl FromStr for RationalPoint {
    type Err = ParseError;

    /// Comma separated coordinates; decimal literals are read exactly, so
    /// `"1.1"` is `11/10`.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut coords = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let c = parse_rational(part).map_err(|e| ParseError::new(offset, e.msg))?;
            coords.push(c);
            offset += part.len() + 1;
        }
        Ok(RationalPoint(coords))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A choice of side for every hyperplane: `Less` means `x_i - x_j < s`.
///
/// Realizability is not checked here; realized codes come from
/// [`face_code_of_point`] or from the tree maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceCode {
    arrangement: Arrangement,
    signs: Vec<Ordering>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SignEntry {
    i: usize,
    j: usize,
    s: i64,
    sign: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct FaceCodeJson {
    kind: Kind,
    n: usize,
    m: usize,
    signs: Vec<SignEntry>,
}

pub(crate) fn sign_to_i8(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn i8_to_sign(v: i8) -> Option<Ordering> {
    match v {
        -1 => Some(Ordering::Less),
        0 => Some(Ordering::Equal),
        1 => Some(Ordering::Greater),
        _ => None,
    }
}

impl FaceCode {
    /// Builds a code from signs listed in [`Arrangement::hyperplane_triples`] order.
    pub fn from_signs(arrangement: Arrangement, signs: Vec<Ordering>) -> Result<Self> {
        if signs.len() != arrangement.num_hyperplanes() {
            return Err(Error::InvalidObject(format!(
                "{} signs given for {} hyperplanes",
                signs.len(),
                arrangement.num_hyperplanes()
            )));
        }
        Ok(FaceCode { arrangement, signs })
    }

    /// Builds a code from a sign function `(i, j, s) -> side`, queried with `i < j`.
    pub fn from_fn(arrangement: Arrangement, mut side: impl FnMut(Hyperplane) -> Ordering) -> Self {
        let signs = arrangement
            .hyperplane_triples()
            .into_iter()
            .map(&mut side)
            .collect();
        FaceCode { arrangement, signs }
    }

    pub fn arrangement(&self) -> Arrangement {
        self.arrangement
    }

    pub fn signs(&self) -> &[Ordering] {
        &self.signs
    }

    /// Side of `x_i - x_j` relative to `s`, for any `i != j`.
    pub fn sign(&self, i: usize, j: usize, s: i64) -> Option<Ordering> {
        if i < j {
            self.arrangement
                .index_of(i, j, s)
                .map(|idx| self.signs[idx])
        } else {
            self.arrangement
                .index_of(j, i, -s)
                .map(|idx| self.signs[idx].reverse())
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Hyperplane, Ordering)> + '_ {
        self.arrangement
            .hyperplane_triples()
            .into_iter()
            .zip(self.signs.iter().copied())
    }

    pub(crate) fn to_json_repr(&self) -> FaceCodeJson {
        FaceCodeJson {
            kind: self.arrangement.kind,
            n: self.arrangement.n,
            m: self.arrangement.m,
            signs: self
                .iter()
                .map(|(h, o)| SignEntry {
                    i: h.i,
                    j: h.j,
                    s: h.s,
                    sign: sign_to_i8(o),
                })
                .collect(),
        }
    }

    pub(crate) fn from_json_repr(repr: FaceCodeJson) -> Result<Self> {
        let arrangement = Arrangement::new(repr.kind, repr.n, repr.m)?;
        let mut signs = vec![None; arrangement.num_hyperplanes()];
        for e in repr.signs {
            let idx = arrangement.index_of(e.i, e.j, e.s).ok_or_else(|| {
                Error::InvalidObject(format!("({}, {}, {}) is not a hyperplane of {arrangement}", e.i, e.j, e.s))
            })?;
            let o = i8_to_sign(e.sign)
                .ok_or_else(|| Error::InvalidObject(format!("bad sign {}", e.sign)))?;
            if signs[idx].replace(o).is_some() {
                return Err(Error::InvalidObject(format!(
                    "duplicate entry for ({}, {}, {})",
                    e.i, e.j, e.s
                )));
            }
        }
        let signs = signs
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidObject("missing hyperplanes in sign list".into()))?;
        Ok(FaceCode { arrangement, signs })
    }

    /// Canonical JSON, signs sorted by `(i, j, s)`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json_repr()).expect("plain data")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let repr: FaceCodeJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidObject(e.to_string()))?;
        Self::from_json_repr(repr)
    }

    /// Readable list of the equalities and inequalities, e.g. `x1 - x2 < 1`.
    pub fn describe(&self) -> Vec<String> {
        self.iter()
            .map(|(h, o)| {
                let rel = match o {
                    Ordering::Less => "<",
                    Ordering::Equal => "=",
                    Ordering::Greater => ">",
                };
                format!("x{} - x{} {} {}", h.i, h.j, rel, h.s)
            })
            .collect()
    }
}

/// The face containing `p`: `sign(i, j, s) = sgn(p_i - p_j - s)`.
pub fn face_code_of_point(arr: &Arrangement, p: &RationalPoint) -> Result<FaceCode> {
    if p.dim() != arr.n() {
        return Err(Error::DimensionMismatch {
            expected: arr.n(),
            got: p.dim(),
        });
    }
    let c = p.coords();
    Ok(FaceCode::from_fn(*arr, |h| {
        let diff = &c[h.i - 1] - &c[h.j - 1];
        diff.cmp(&BigRational::from_integer(BigInt::from(h.s)))
    }))
}

/// Forgets the m-Catalan hyperplanes that are not in the m-Shi arrangement.
pub fn restrict_to_shi(code: &FaceCode) -> Result<FaceCode> {
    let arr = code.arrangement();
    if arr.kind() != Kind::MCatalan {
        return Err(Error::WrongKind {
            expected: Kind::MCatalan,
            got: arr.kind(),
        });
    }
    let shi = Arrangement::shi(arr.n(), arr.m())?;
    Ok(FaceCode::from_fn(shi, |h| {
        code.sign(h.i, h.j, h.s).expect("Shi hyperplanes are Catalan hyperplanes")
    }))
}

/// Union-find over coordinates carrying the offset `x_v - x_root`.
struct OffsetUnionFind {
    parent: Vec<usize>,
    offset: Vec<i64>,
}

impl OffsetUnionFind {
    fn new(n: usize) -> Self {
        OffsetUnionFind {
            parent: (0..n).collect(),
            offset: vec![0; n],
        }
    }

    fn find(&mut self, v: usize) -> (usize, i64) {
        let p = self.parent[v];
        if p == v {
            return (v, 0);
        }
        let (root, off) = self.find(p);
        self.parent[v] = root;
        self.offset[v] += off;
        (root, self.offset[v])
    }

    /// Records `x_a - x_b = d`. Returns false on contradiction.
    fn union(&mut self, a: usize, b: usize, d: i64) -> bool {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            return oa - ob == d;
        }
        // x_a = x_ra + oa, x_b = x_rb + ob, so x_ra - x_rb = d - oa + ob
        self.parent[ra] = rb;
        self.offset[ra] = d - oa + ob;
        true
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len()).filter(|&v| self.find(v).0 == v).count()
    }
}

/// Dimension of the face: `n` minus the rank of its equalities.
///
/// Fails when two equalities pin the same difference to different offsets,
/// which no realized face can do.
pub fn face_dimension(code: &FaceCode) -> Result<usize> {
    let n = code.arrangement().n();
    let mut uf = OffsetUnionFind::new(n);
    for (h, o) in code.iter() {
        if o == Ordering::Equal && !uf.union(h.i - 1, h.j - 1, h.s) {
            return Err(Error::InconsistentEqualities(format!(
                "x{} - x{} = {} contradicts earlier equalities",
                h.i, h.j, h.s
            )));
        }
    }
    Ok(uf.components())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Ordering::*;

    fn pt(s: &str) -> RationalPoint {
        s.parse().unwrap()
    }

    #[test]
    fn triples_small_cases() {
        let b = Arrangement::braid(2).unwrap();
        assert_eq!(b.hyperplane_triples(), vec![Hyperplane { i: 1, j: 2, s: 0 }]);
        let c = Arrangement::catalan(2, 1).unwrap();
        let got: Vec<_> = c.hyperplane_triples().iter().map(|h| (h.i, h.j, h.s)).collect();
        assert_eq!(got, vec![(1, 2, -1), (1, 2, 0), (1, 2, 1)]);
        let s = Arrangement::shi(3, 1).unwrap();
        let got: Vec<_> = s.hyperplane_triples().iter().map(|h| (h.i, h.j, h.s)).collect();
        assert_eq!(
            got,
            vec![(1, 2, 0), (1, 2, 1), (1, 3, 0), (1, 3, 1), (2, 3, 0), (2, 3, 1)]
        );
        for arr in [b, c, s, Arrangement::catalan(4, 3).unwrap()] {
            for (idx, h) in arr.hyperplane_triples().into_iter().enumerate() {
                assert_eq!(arr.index_of(h.i, h.j, h.s), Some(idx));
            }
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(Arrangement::catalan(0, 1).is_err());
        assert!(Arrangement::shi(2, 0).is_err());
        assert_eq!(Arrangement::new(Kind::Braid, 3, 5).unwrap().m(), 1);
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(
            parse_rational("1.1").unwrap(),
            BigRational::new(11.into(), 10.into())
        );
        assert_eq!(
            parse_rational("-0.25").unwrap(),
            BigRational::new((-1).into(), 4.into())
        );
        assert_eq!(parse_rational("3/8").unwrap(), BigRational::new(3.into(), 8.into()));
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn equal_coordinates() {
        let arr = Arrangement::catalan(2, 1).unwrap();
        let code = face_code_of_point(&arr, &pt("0,0")).unwrap();
        assert_eq!(code.sign(1, 2, -1), Some(Greater));
        assert_eq!(code.sign(1, 2, 0), Some(Equal));
        assert_eq!(code.sign(1, 2, 1), Some(Less));
        assert_eq!(face_dimension(&code).unwrap(), 1);
    }

    #[test]
    fn seven_point_example() {
        // x2 = x3 < x1 < x5 < x7 < x4 < x6 and x1 + 1 = x4
        let arr = Arrangement::catalan(7, 1).unwrap();
        let code = face_code_of_point(&arr, &pt("1.3,1.0,1.0,2.3,2.1,2.4,2.2")).unwrap();
        assert_eq!(code.sign(2, 3, 0), Some(Equal));
        for (a, b) in [(3, 1), (1, 5), (5, 7), (7, 4), (4, 6)] {
            assert_eq!(code.sign(a, b, 0), Some(Less), "x{a} < x{b}");
        }
        assert_eq!(code.sign(4, 1, 1), Some(Equal));
        assert_eq!(code.sign(1, 2, 1), Some(Less));
        assert_eq!(code.sign(5, 2, 1), Some(Greater));
        assert_eq!(face_dimension(&code).unwrap(), 5);
    }

    #[test]
    fn nine_point_example() {
        let arr = Arrangement::catalan(9, 2).unwrap();
        let code = face_code_of_point(&arr, &pt("2.3,1.5,3.3,1.4,1.4,1.0,3.1,4.3,4.2")).unwrap();
        assert_eq!(code.sign(8, 1, 2), Some(Equal));
        assert_eq!(code.sign(8, 3, 1), Some(Equal));
        assert_eq!(code.sign(3, 1, 1), Some(Equal));
        assert_eq!(code.sign(9, 7, 1), Some(Greater));
        assert_eq!(face_dimension(&code).unwrap(), 6);
    }

    #[test]
    fn restriction() {
        let cat = Arrangement::catalan(2, 1).unwrap();
        let shi = Arrangement::shi(2, 1).unwrap();
        let code = face_code_of_point(&cat, &pt("0,1")).unwrap();
        assert_eq!(code.sign(1, 2, -1), Some(Equal));
        let r = restrict_to_shi(&code).unwrap();
        assert_eq!(r.sign(1, 2, 0), Some(Less));
        assert_eq!(r.sign(1, 2, 1), Some(Less));
        assert_eq!(r, face_code_of_point(&shi, &pt("0,1")).unwrap());

        let code = face_code_of_point(&cat, &pt("0,0")).unwrap();
        let r = restrict_to_shi(&code).unwrap();
        assert_eq!(r.sign(1, 2, 0), Some(Equal));
        assert_eq!(r.sign(1, 2, 1), Some(Less));

        assert!(matches!(restrict_to_shi(&r), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn dimension_mismatch() {
        let arr = Arrangement::catalan(3, 1).unwrap();
        assert!(matches!(
            face_code_of_point(&arr, &pt("0,1")),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn inconsistent_equalities_detected() {
        let arr = Arrangement::catalan(3, 1).unwrap();
        // x1 - x2 = 0, x2 - x3 = 0, x1 - x3 = 1 cannot hold together
        let code = FaceCode::from_fn(arr, |h| match (h.i, h.j, h.s) {
            (1, 2, 0) | (2, 3, 0) | (1, 3, 1) => Equal,
            _ => Less,
        });
        assert!(matches!(
            face_dimension(&code),
            Err(Error::InconsistentEqualities(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let arr = Arrangement::shi(3, 2).unwrap();
        let code = face_code_of_point(&arr, &pt("0,1/2,3")).unwrap();
        let v = code.to_json();
        assert_eq!(v["kind"], "m_shi");
        assert_eq!(FaceCode::from_json(&v).unwrap(), code);
    }

    #[test]
    fn three_dim_region() {
        let shi = Arrangement::shi(3, 1).unwrap();
        let code = face_code_of_point(&shi, &pt("0,1/3,5")).unwrap();
        assert!(code.signs().iter().all(|&o| o != Equal));
        assert_eq!(face_dimension(&code).unwrap(), 3);
    }
}
