use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{parse_rat, uint, Rat};

/// Order of a series: index of the first nonzero coefficient, or `Infinite`
/// for the zero series. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(usize),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "INF"),
        }
    }
}

/// Truncated formal power series `Σ_{i=0}^{N} c_i t^i`.
///
/// Coefficients beyond `trunc` are unknown, not zero. Every binary operation
/// produces `trunc = min` of the operands so no coefficient is ever invented.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson", into = "SeriesJson")]
pub struct Series {
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    kind: String,
    trunc: usize,
    coeffs: Vec<String>,
}

impl From<Series> for SeriesJson {
    fn from(s: Series) -> Self {
        SeriesJson { kind: "series".into(), trunc: s.trunc(), coeffs: s.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

impl TryFrom<SeriesJson> for Series {
    type Error = Error;
    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.kind != "series" {
            return Err(Error::InvalidParams(format!("expected kind \"series\", got \"{}\"", j.kind)));
        }
        if j.coeffs.len() != j.trunc + 1 {
            return Err(Error::DimensionMismatch(format!(
                "trunc {} needs {} coefficients, got {}",
                j.trunc,
                j.trunc + 1,
                j.coeffs.len()
            )));
        }
        let coeffs = j.coeffs.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>()?;
        Ok(Series { coeffs })
    }
}

impl Series {
    /// Builds a series from coefficients `c_0..=c_N`; `trunc = len - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        Series { coeffs }
    }

    pub fn from_ints(trunc: usize, c: &[i64]) -> Self {
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        for (i, v) in c.iter().enumerate().take(trunc + 1) {
            coeffs[i] = Rat::from_integer((*v).into());
        }
        Series { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        Series { coeffs: vec![Rat::zero(); trunc + 1] }
    }

    pub fn constant(c: Rat, trunc: usize) -> Self {
        Self::monomial(c, 0, trunc)
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(Rat::one(), trunc)
    }

    /// `c t^k`, silently zero if `k > trunc`.
    pub fn monomial(c: Rat, k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity series `t`.
    pub fn x(trunc: usize) -> Self {
        Self::monomial(Rat::one(), 1, trunc)
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `t^i`; zero past the truncation.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => Order::Finite(i),
            None => Order::Infinite,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.order() == Order::Infinite
    }

    /// Keeps coefficients up to `n` (no-op when `n >= trunc`).
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.trunc());
        Series { coeffs: self.coeffs[..=n].to_vec() }
    }

    fn zip(&self, g: &Series, f: impl Fn(&Rat, &Rat) -> Rat) -> Series {
        let n = self.trunc().min(g.trunc());
        Series { coeffs: (0..=n).map(|i| f(&self.coeffs[i], &g.coeffs[i])).collect() }
    }

    pub fn add(&self, g: &Series) -> Series {
        self.zip(g, |a, b| a + b)
    }

    pub fn sub(&self, g: &Series) -> Series {
        self.zip(g, |a, b| a - b)
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn add_scalar(&self, c: &Rat) -> Series {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, g: &Series) -> Series {
        let n = self.trunc().min(g.trunc());
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow_u(&self, mut k: usize) -> Series {
        let mut acc = Series::one(self.trunc());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents need an invertible series.
    pub fn pow_i(&self, k: i64) -> Result<Series> {
        if k >= 0 {
            Ok(self.pow_u(k as usize))
        } else {
            Ok(self.mul_inv()?.pow_u((-k) as usize))
        }
    }

    /// Formal derivative; the result has `trunc - 1` (or 0 for a constant).
    pub fn derive(&self) -> Series {
        if self.trunc() == 0 {
            return Series::zero(0);
        }
        Series { coeffs: (1..=self.trunc()).map(|i| &self.coeffs[i] * uint(i)).collect() }
    }

    /// Antiderivative with constant term `c0`, keeping the same `trunc`
    /// (the top coefficient of the integral is dropped).
    pub fn integrate(&self, c0: &Rat) -> Series {
        let n = self.trunc();
        let mut out = Vec::with_capacity(n + 1);
        out.push(c0.clone());
        for i in 1..=n {
            out.push(&self.coeffs[i - 1] / uint(i));
        }
        Series { coeffs: out }
    }

    /// Multiplies by `t^k`; the truncation grows by `k`.
    pub fn shift_up(&self, k: usize) -> Series {
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Divides by `t^k`; the truncation shrinks by `k`. The low `k`
    /// coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Result<Series> {
        if k == 0 {
            return Ok(self.clone());
        }
        if let Order::Finite(o) = self.order() {
            if o < k {
                return Err(Error::Order(format!("cannot divide a series of order {o} by t^{k}")));
            }
        }
        if k > self.trunc() {
            return Err(Error::Truncation { needed: k, available: self.trunc() });
        }
        Ok(Series { coeffs: self.coeffs[k..].to_vec() })
    }

    /// `f ∘ g` by Horner evaluation; requires `g(0) = 0`.
    pub fn compose(&self, g: &Series) -> Result<Series> {
        if !g.coeffs[0].is_zero() {
            return Err(Error::Order("inner series of a composition must have zero constant term".into()));
        }
        let n = self.trunc().min(g.trunc());
        let g = g.truncate(n);
        let mut acc = Series::constant(self.coeffs[n].clone(), n);
        for i in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn mul_inv(&self) -> Result<Series> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.recip();
        let n = self.trunc();
        let mut b: Vec<Rat> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for m in 1..=n {
            let mut s = Rat::zero();
            for j in 1..=m {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &b[m - j];
                }
            }
            b.push(-s * &inv0);
        }
        Ok(Series { coeffs: b })
    }

    /// Compositional inverse by coefficient-wise triangular solve.
    ///
    /// Keeps `pow[j][m] = [t^m] g^j` up to date column by column, so row `m`
    /// of the solve only needs already-known coefficients of `g`.
    pub fn comp_inv(&self) -> Result<Series> {
        if self.order() != Order::Finite(1) {
            return Err(Error::Order(format!(
                "compositional inverse needs order 1, series has order {}",
                self.order()
            )));
        }
        let n = self.trunc();
        let f1_inv = self.coeffs[1].recip();
        let mut g = vec![Rat::zero(); n + 1];
        // pow[j][m] for 1 <= j <= m <= n
        let mut pow: Vec<Vec<Rat>> = vec![vec![Rat::zero(); n + 1]; n + 1];
        for m in 1..=n {
            let mut rhs = if m == 1 { Rat::one() } else { Rat::zero() };
            for j in 2..=m {
                let mut acc = Rat::zero();
                for (i, gi) in g.iter().enumerate().take(m - j + 2).skip(1) {
                    if !gi.is_zero() {
                        acc += gi * &pow[j - 1][m - i];
                    }
                }
                pow[j][m] = acc;
                if !self.coeffs[j].is_zero() {
                    rhs -= &self.coeffs[j] * &pow[j][m];
                }
            }
            g[m] = rhs * &f1_inv;
            pow[1][m] = g[m].clone();
        }
        Ok(Series { coeffs: g })
    }

    /// `f^r` for rational `r`, requiring `f(0) = 1`, by the recurrence
    /// `n h_n = Σ_{k=1}^{n} ((r+1)k − n) f_k h_{n−k}`.
    pub fn pow_rat(&self, r: &Rat) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm(format!("rational power needs constant term 1, found {}", self.coeffs[0])));
        }
        let n = self.trunc();
        let mut h: Vec<Rat> = Vec::with_capacity(n + 1);
        h.push(Rat::one());
        let r1 = r + Rat::one();
        for m in 1..=n {
            let mut s = Rat::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += (&r1 * uint(k) - uint(m)) * &self.coeffs[k] * &h[m - k];
                }
            }
            h.push(s / uint(m));
        }
        Ok(Series { coeffs: h })
    }

    /// `exp(f)` for `f(0) = 0`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("exp needs constant term 0".into()));
        }
        let n = self.trunc();
        let mut g: Vec<Rat> = Vec::with_capacity(n + 1);
        g.push(Rat::one());
        for m in 1..=n {
            let mut s = Rat::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    s += uint(k) * &self.coeffs[k] * &g[m - k];
                }
            }
            g.push(s / uint(m));
        }
        Ok(Series { coeffs: g })
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm("log needs constant term 1".into()));
        }
        let n = self.trunc();
        let mut l: Vec<Rat> = vec![Rat::zero(); n + 1];
        for m in 1..=n {
            let mut s = uint(m) * &self.coeffs[m];
            for k in 1..m {
                if !l[k].is_zero() {
                    s -= uint(k) * &l[k] * &self.coeffs[m - k];
                }
            }
            l[m] = s / uint(m);
        }
        Ok(Series { coeffs: l })
    }

    /// Coefficients of `f^{-1}(t)^k` up to `t^N` by Lagrange–Bürmann:
    /// `[t^n] = (k/n) [x^{n−k}] (x/f(x))^n`.
    pub fn lagrange_power(&self, k: usize, big_n: usize) -> Result<Series> {
        if self.order() != Order::Finite(1) {
            return Err(Error::Order("Lagrange inversion needs a series of order 1".into()));
        }
        if k == 0 {
            return Err(Error::InvalidParams("lagrange_power needs k >= 1".into()));
        }
        let mut out = Series::zero(big_n);
        if k > big_n {
            return Ok(out);
        }
        let need = big_n - k + 1;
        if self.trunc() < need {
            return Err(Error::Truncation { needed: need, available: self.trunc() });
        }
        let h = self.truncate(need).shift_down(1)?.mul_inv()?;
        let mut hp = h.pow_u(k);
        for n in k..=big_n {
            out.coeffs[n] = uint(k) * hp.coeff(n - k) / uint(n);
            hp = hp.mul(&h);
        }
        Ok(out)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = super::format_terms(&self.coeffs, "x");
        write!(f, "{body} + O(x^{})", self.trunc() + 1)
    }
}
