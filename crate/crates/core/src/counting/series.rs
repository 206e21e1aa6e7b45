use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A power series in `x` truncated after `x^order`, with polynomial
/// coefficients in `y`, exact over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    /// `coeffs[a][b]` is the coefficient of `x^a y^b`
    coeffs: Vec<Vec<BigRational>>,
}

fn trim(poly: &mut Vec<BigRational>) {
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_scale(a: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Vec::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 0, c);
        s
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.set(1, 0, BigRational::one());
        }
        s
    }

    /// The series `y`.
    pub fn y(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.set(0, 1, BigRational::one());
        s
    }

    /// `e^x - 1`.
    pub fn exp_x_minus_one(order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut fact = BigInt::one();
        for a in 1..=order {
            fact *= a;
            s.set(a, 0, BigRational::new(BigInt::one(), fact.clone()));
        }
        s
    }

    /// `sum count(a, b) x^a y^b / a!` over `a <= order`, `b <= a`.
    pub fn from_egf(order: usize, count: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut s = Self::zero(order);
        let mut fact = BigInt::one();
        for a in 0..=order {
            if a > 0 {
                fact *= a;
            }
            for b in 0..=a {
                let c = count(a, b);
                if !c.is_zero() {
                    s.set(a, b, BigRational::new(c, fact.clone()));
                }
            }
        }
        s
    }

    /// `sum count(a, b) x^a y^b` over `a <= order`, `b <= a`.
    pub fn from_ogf(order: usize, count: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut s = Self::zero(order);
        for a in 0..=order {
            for b in 0..=a {
                let c = count(a, b);
                if !c.is_zero() {
                    s.set(a, b, BigRational::from_integer(c));
                }
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, a: usize, b: usize) -> BigRational {
        self.coeffs
            .get(a)
            .and_then(|p| p.get(b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `a! [x^a y^b]`, the count when the series is exponential in `x`.
    pub fn egf_coeff(&self, a: usize, b: usize) -> BigRational {
        let fact: BigInt = (1..=a).map(BigInt::from).product();
        self.coeff(a, b) * BigRational::from_integer(fact)
    }

    pub fn set(&mut self, a: usize, b: usize, c: BigRational) {
        if a > self.order {
            return;
        }
        let poly = &mut self.coeffs[a];
        if poly.len() <= b {
            poly.resize(b + 1, BigRational::zero());
        }
        poly[b] = c;
        trim(poly);
    }

    pub fn max_y_degree(&self) -> usize {
        self.coeffs.iter().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| poly_scale(p, s)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(self.order);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        out
    }

    /// `exp(self)`; the `x^0` coefficient must vanish.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_empty(), "exp needs a zero constant term");
        let mut out = Self::zero(self.order);
        out.coeffs[0] = vec![BigRational::one()];
        // a f_a = sum_{k=1}^{a} k g_k f_{a-k}
        for a in 1..=self.order {
            let mut acc = Vec::new();
            for k in 1..=a {
                let term = poly_mul(&self.coeffs[k], &out.coeffs[a - k]);
                acc = poly_add(&acc, &poly_scale(&term, &BigRational::from_integer(k.into())));
            }
            out.coeffs[a] = poly_scale(&acc, &BigRational::new(BigInt::one(), a.into()));
        }
        out
    }

    /// `self(g(x, y), y)` for `g` without constant term in `x`.
    pub fn compose(&self, g: &TruncatedSeries) -> Self {
        assert!(g.coeffs[0].is_empty(), "inner series needs a zero constant term");
        let order = self.order.min(g.order);
        let mut out = Self::zero(order);
        let mut power = Self::one(order);
        for a in 0..=order {
            let mut term = power.clone();
            for p in term.coeffs.iter_mut() {
                *p = poly_mul(p, &self.coeffs[a]);
            }
            out = &out + &term;
            power = &power * g;
        }
        out
    }

    /// The first coefficient (by x-degree then y-degree) where the series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize, BigRational, BigRational)> {
        let order = self.order.min(other.order);
        let ydeg = self.max_y_degree().max(other.max_y_degree());
        for a in 0..=order {
            for b in 0..=ydeg {
                let (l, r) = (self.coeff(a, b), other.coeff(a, b));
                if l != r {
                    return Some((a, b, l, r));
                }
            }
        }
        None
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        TruncatedSeries {
            order,
            coeffs: (0..=order)
                .map(|a| poly_add(&self.coeffs[a], &rhs.coeffs[a]))
                .collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let mut out = TruncatedSeries::zero(order);
        for a in 0..=order {
            if self.coeffs[a].is_empty() {
                continue;
            }
            for b in 0..=order - a {
                if rhs.coeffs[b].is_empty() {
                    continue;
                }
                let prod = poly_mul(&self.coeffs[a], &rhs.coeffs[b]);
                out.coeffs[a + b] = poly_add(&out.coeffs[a + b], &prod);
            }
        }
        out
    }
}
