//! Closed-form face counts and exact checks of their generating functions.

mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arrangement::Kind;

pub use series::TruncatedSeries;

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

fn sign(j: usize) -> BigInt {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `sum_j (-1)^j C(i-k, j) C(i(m+1) - jm, i-1)`.
fn alternating_core(i: usize, k: usize, m: usize) -> BigInt {
    (0..=i - k)
        .map(|j| sign(j) * binomial(i - k, j) * binomial(i * (m + 1) - j * m, i - 1))
        .sum()
}

/// Unlabeled `(m+1)`-ary dash trees with `i` nodes of which `k` are free:
/// `(1/i) C(i,k) sum_j (-1)^j C(i-k,j) C(i(m+1)-jm, i-1)`.
pub fn dash_tree_count(i: usize, k: usize, m: usize) -> BigInt {
    if i == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if k == 0 || k > i {
        return BigInt::zero();
    }
    let total = binomial(i, k) * alternating_core(i, k, m);
    debug_assert!((&total % i).is_zero());
    total / i
}

/// k-dimensional faces of the m-Catalan arrangement in `R^n`.
pub fn catalan_face_count(n: usize, k: usize, m: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if k == 0 || k > n {
        return BigInt::zero();
    }
    (k..=n)
        .map(|i| stirling2(n, i) * factorial(i - 1) * binomial(i, k) * alternating_core(i, k, m))
        .sum()
}

/// k-dimensional faces of the m-Shi arrangement in `R^n`:
/// `C(n,k) sum_i (-1)^i C(n-k,i) (m(n-i)+1)^(n-1)`.
pub fn shi_face_count(n: usize, k: usize, m: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if k == 0 || k > n {
        return BigInt::zero();
    }
    let sum: BigInt = (0..=n - k)
        .map(|i| sign(i) * binomial(n - k, i) * BigInt::from(m * (n - i) + 1).pow(n as u32 - 1))
        .sum();
    binomial(n, k) * sum
}

/// Two-dimensional m-Shi faces: `n! (n-1) (m(n+2)+2) m^(n-2) / 4`.
pub fn shi_twodim_count(n: usize, m: usize) -> BigInt {
    if n < 2 {
        return BigInt::zero();
    }
    factorial(n) * (n - 1) * (m * (n + 2) + 2) * BigInt::from(m).pow(n as u32 - 2) / 4
}

/// k-dimensional braid faces: `k! S(n,k)`.
pub fn braid_face_count(n: usize, k: usize) -> BigInt {
    factorial(k) * stirling2(n, k)
}

pub fn face_count(kind: Kind, n: usize, k: usize, m: usize) -> BigInt {
    match kind {
        Kind::Braid => braid_face_count(n, k),
        Kind::MCatalan => catalan_face_count(n, k, m),
        Kind::MShi => shi_face_count(n, k, m),
    }
}

/// Outcome of checking an identity coefficient by coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub checked: usize,
    /// largest absolute difference between the two sides
    pub max_discrepancy: String,
    pub first_failure: Option<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    fn from_series(name: String, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Self {
        let order = lhs.order().min(rhs.order());
        let ydeg = lhs.max_y_degree().max(rhs.max_y_degree());
        let mut max = BigRational::zero();
        let mut checked = 0;
        for a in 0..=order {
            for b in 0..=ydeg {
                let d = (lhs.coeff(a, b) - rhs.coeff(a, b)).abs();
                if d > max {
                    max = d;
                }
                checked += 1;
            }
        }
        let first_failure = lhs
            .first_difference(rhs)
            .map(|(a, b, l, r)| format!("coefficient of x^{a} y^{b}: left {l}, right {r}"));
        IdentityReport {
            name,
            checked,
            max_discrepancy: max.to_string(),
            first_failure,
        }
    }
}

/// `C = sum c_{n,k} x^n y^k / n!` built from [`catalan_face_count`].
pub fn catalan_series(m: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_egf(order, |n, k| catalan_face_count(n, k, m))
}

/// `S = sum s_{n,k} x^n y^k / n!` built from [`shi_face_count`].
pub fn shi_series(m: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_egf(order, |n, k| shi_face_count(n, k, m))
}

/// `H = sum h_{i,k} x^i y^k` built from [`dash_tree_count`].
pub fn dash_tree_series(m: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_ogf(order, |i, k| dash_tree_count(i, k, m))
}

fn one_plus_y(order: usize) -> TruncatedSeries {
    &TruncatedSeries::one(order) + &TruncatedSeries::y(order)
}

/// `C = 1 + (e^x - 1)((1 + y) C^(m+1) - C)` through `x^order`.
pub fn verify_catalan_gf(m: usize, order: usize) -> IdentityReport {
    let c = catalan_series(m, order);
    let inner = &(&one_plus_y(order) * &c.pow(m + 1)) - &c;
    let rhs = &TruncatedSeries::one(order) + &(&TruncatedSeries::exp_x_minus_one(order) * &inner);
    IdentityReport::from_series(format!("catalan gf m={m} order={order}"), &c, &rhs)
}

/// `S = exp(x (y + 1) S^m - x)` through `x^order`.
pub fn verify_shi_gf(m: usize, order: usize) -> IdentityReport {
    let s = shi_series(m, order);
    let x = TruncatedSeries::x(order);
    let arg = &(&(&x * &one_plus_y(order)) * &s.pow(m)) - &x;
    IdentityReport::from_series(format!("shi gf m={m} order={order}"), &s, &arg.exp())
}

/// `H = 1 + x((y + 1) H^(m+1) - H)` through `x^order`.
pub fn verify_dash_tree_gf(m: usize, order: usize) -> IdentityReport {
    let h = dash_tree_series(m, order);
    let inner = &(&one_plus_y(order) * &h.pow(m + 1)) - &h;
    let rhs = &TruncatedSeries::one(order) + &(&TruncatedSeries::x(order) * &inner);
    IdentityReport::from_series(format!("dash tree gf m={m} order={order}"), &h, &rhs)
}

/// `C(x, y) = H(e^x - 1, y)` through `x^order`.
pub fn verify_catalan_from_dash_trees(m: usize, order: usize) -> IdentityReport {
    let h = dash_tree_series(m, order);
    let composed = h.compose(&TruncatedSeries::exp_x_minus_one(order));
    IdentityReport::from_series(
        format!("C = H(e^x - 1) m={m} order={order}"),
        &catalan_series(m, order),
        &composed,
    )
}

fn integer_report(name: String, checks: impl IntoIterator<Item = (String, BigInt, BigInt)>) -> IdentityReport {
    let mut checked = 0;
    let mut max = BigInt::zero();
    let mut first_failure = None;
    for (what, l, r) in checks {
        checked += 1;
        let d = (&l - &r).abs();
        if d > max {
            max = d;
        }
        if l != r && first_failure.is_none() {
            first_failure = Some(format!("{what}: left {l}, right {r}"));
        }
    }
    IdentityReport {
        name,
        checked,
        max_discrepancy: max.to_string(),
        first_failure,
    }
}

/// `sum_j (-1)^j C(i-k,j) C(2i-j,i-1) = C(i+k,k-1)` for `1 <= k <= i <= i_max`.
pub fn verify_m1_simplification(i_max: usize) -> IdentityReport {
    let checks = (1..=i_max).flat_map(|i| {
        (1..=i).map(move |k| {
            (
                format!("i={i} k={k}"),
                alternating_core(i, k, 1),
                binomial(i + k, k - 1),
            )
        })
    });
    integer_report(format!("m=1 simplification i<={i_max}"), checks)
}

/// `c_{n,k} = sum_i S(n,i) i! h_{i,k}` for `n <= n_max`.
pub fn verify_catalan_via_dash_trees(n_max: usize, m: usize) -> IdentityReport {
    let checks = (1..=n_max).flat_map(|n| {
        (1..=n).map(move |k| {
            let rhs: BigInt = (1..=n)
                .map(|i| stirling2(n, i) * factorial(i) * dash_tree_count(i, k, m))
                .sum();
            (format!("n={n} k={k}"), catalan_face_count(n, k, m), rhs)
        })
    });
    integer_report(format!("c = sum S(n,i) i! h, m={m}, n<={n_max}"), checks)
}

/// The two-dimensional Shi formula against the general one at `k = 2`.
pub fn verify_twodim(n_max: usize, m_max: usize) -> IdentityReport {
    let checks = (2..=n_max).flat_map(|n| {
        (1..=m_max).map(move |m| {
            (
                format!("n={n} m={m}"),
                shi_twodim_count(n, m),
                shi_face_count(n, 2, m),
            )
        })
    });
    integer_report(format!("two-dimensional Shi n<={n_max} m<={m_max}"), checks)
}
