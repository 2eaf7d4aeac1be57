//! Partial and complete Bell polynomials.
//!
//! Convention: for `f(x) = Σ_{j≥1} a_j x^j/j!`,
//! `f(x)^k/k! = Σ_n B_{n,k}(a_1, …, a_{n−k+1}) x^n/n!`.
//! Arguments are passed as a slice with `a[0] = a_1`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::Series;
use crate::rat::{binom, factorial, Rat};

/// Minimal ring interface so the recurrence can run over rationals as well
/// as over shift-invariant operators (indicator series).
pub trait BellRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rat) -> Self;
}

impl BellRing for Rat {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rat) -> Self {
        self * c
    }
}

impl BellRing for Series {
    fn add(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Series::mul(self, o)
    }
    fn scale(&self, c: &Rat) -> Self {
        Series::scale(self, c)
    }
}

/// Table `t[m][k] = B_{m,k}` for `0 ≤ k ≤ m ≤ n`, by
/// `B_{m,k} = Σ_{j=1}^{m−k+1} C(m−1, j−1) a_j B_{m−j,k−1}`.
pub fn partial_bell_table_in<R: BellRing>(n: usize, a: &[R], zero: &R, one: &R) -> Result<Vec<Vec<R>>> {
    if n > 0 && a.len() < n {
        return Err(Error::DimensionMismatch(format!("need {n} Bell arguments, got {}", a.len())));
    }
    let mut t: Vec<Vec<R>> = Vec::with_capacity(n + 1);
    t.push(vec![one.clone()]);
    for m in 1..=n {
        let mut row = vec![zero.clone(); m + 1];
        for (k, slot) in row.iter_mut().enumerate().skip(1) {
            let mut acc = zero.clone();
            for j in 1..=(m - k + 1) {
                let prev = &t[m - j][k - 1];
                acc = acc.add(&a[j - 1].mul(prev).scale(&binom(m - 1, j - 1)));
            }
            *slot = acc;
        }
        t.push(row);
    }
    Ok(t)
}

pub fn partial_bell_table(n: usize, a: &[Rat]) -> Result<Vec<Vec<Rat>>> {
    partial_bell_table_in(n, a, &Rat::zero(), &Rat::one())
}

/// `B_{n,k}(a_1, …, a_{n−k+1})`.
pub fn partial_bell(n: usize, k: usize, a: &[Rat]) -> Result<Rat> {
    if k > n {
        return Err(Error::Index { n, k });
    }
    if n == 0 {
        return Ok(Rat::one());
    }
    if k == 0 {
        return Ok(Rat::zero());
    }
    let need = n - k + 1;
    if a.len() < need {
        return Err(Error::DimensionMismatch(format!("need {need} Bell arguments, got {}", a.len())));
    }
    // Only a_1..a_{n−k+1} matter; pad the rest so the table is well defined.
    let mut padded = a[..need].to_vec();
    padded.resize(n, Rat::zero());
    Ok(partial_bell_table(n, &padded)?[n][k].clone())
}

/// `B_n = Σ_k B_{n,k}`, cross-checked against `n! [x^n] e^{f(x)}`.
pub fn complete_bell(n: usize, a: &[Rat]) -> Result<Rat> {
    if a.len() < n {
        return Err(Error::DimensionMismatch(format!("need {n} Bell arguments, got {}", a.len())));
    }
    let t = partial_bell_table(n, a)?;
    let sum = t[n].iter().fold(Rat::zero(), |s, v| s + v);
    debug_assert_eq!(sum, complete_bell_exp(n, a));
    Ok(sum)
}

/// `n! [x^n] exp(Σ a_j x^j/j!)`.
pub fn complete_bell_exp(n: usize, a: &[Rat]) -> Rat {
    let mut c = vec![Rat::zero(); n + 1];
    for j in 1..=n {
        c[j] = &a[j - 1] / factorial(j);
    }
    Series::new(c).exp().expect("zero constant term").coeff(n) * factorial(n)
}

/// `n! [x^n] f(x)^k/k!` with `f` built from `a`; the series-side definition.
pub fn partial_bell_series(n: usize, k: usize, a: &[Rat]) -> Rat {
    let mut c = vec![Rat::zero(); n + 1];
    for j in 1..=n.min(a.len()) {
        c[j] = &a[j - 1] / factorial(j);
    }
    Series::new(c).pow_u(k).coeff(n) * factorial(n) / factorial(k)
}
