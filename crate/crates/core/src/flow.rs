//! Iteration of unitary power series: integer and fractional iterates, the
//! iterative logarithm and fractional powers of umbral operators.
//!
//! The workhorse is the triangle of `f`, `coeff[n][k] = n! [x^n] f^k/k!`,
//! i.e. the umbral operator whose column-1 generating function is `f`.
//! Composition of series corresponds to composition of triangles.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fps::{Order, Poly, Series};
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{binom, binom_rat, factorial, uint, Rat};
use crate::umbral::Triangle;

fn require_order_one(f: &Series) -> Result<()> {
    if f.order() != Order::Finite(1) {
        return Err(Error::Order(format!("iteration needs a series of order 1, got order {}", f.order())));
    }
    Ok(())
}

fn require_unitary(f: &Series) -> Result<()> {
    if !f.coeff(0).is_zero() {
        return Err(Error::Order("iteration needs zero constant term".into()));
    }
    if !f.coeff(1).is_one() {
        return Err(Error::NotUnitary(f.coeff(1).to_string()));
    }
    Ok(())
}

/// `f^{∘m}`; negative `m` iterates the compositional inverse.
pub fn iterate_int(f: &Series, m: i64) -> Result<Series> {
    require_order_one(f)?;
    let step = if m >= 0 { f.clone() } else { f.comp_inv()? };
    let mut acc = Series::x(f.trunc());
    for _ in 0..m.unsigned_abs() {
        acc = step.compose(&acc)?;
    }
    Ok(acc)
}

/// Triangle of `f` up to row `n`: `coeff[i][k] = i! [x^i] f^k/k!`.
pub fn triangle_of(f: &Series, n: usize) -> Result<Triangle> {
    if !f.coeff(0).is_zero() {
        return Err(Error::Order("triangle of a series needs zero constant term".into()));
    }
    if f.trunc() < n {
        return Err(Error::Truncation { needed: n, available: f.trunc() });
    }
    let f = f.truncate(n);
    let mut t = Triangle::identity(n);
    let mut fk = Series::one(n);
    for k in 0..=n {
        let kf = factorial(k);
        for i in k..=n {
            t.set(i, k, fk.coeff(i) * factorial(i) / &kf);
        }
        fk = fk.mul(&f);
    }
    Ok(t)
}

/// `(φ − 1)^p` for `p = 0..=max_p`, by repeated composition of the strictly
/// lower part. Entry `(n, k)` of the `p`-th power vanishes when `p > n − k`.
fn minus_one_powers(phi: &Triangle, max_p: usize) -> Result<Vec<Triangle>> {
    let m = phi.sub(&Triangle::identity(phi.n()))?;
    let mut out = vec![Triangle::identity(phi.n())];
    for p in 1..=max_p {
        let next = out[p - 1].compose(&m)?;
        out.push(next);
    }
    Ok(out)
}

fn require_unitary_triangle(phi: &Triangle) -> Result<()> {
    for n in 0..=phi.n() {
        if !phi.get(n, n).is_one() {
            return Err(Error::NotUnitary(phi.get(n, n).to_string()));
        }
    }
    Ok(())
}

/// `coeff(n,k)` of `(φ − 1)^p` for a unitary triangle.
pub fn minus_one_power_coeff(phi: &Triangle, p: usize, n: usize, k: usize) -> Result<Rat> {
    require_unitary_triangle(phi)?;
    if n > phi.n() {
        return Err(Error::Truncation { needed: n, available: phi.n() });
    }
    if k > n {
        return Err(Error::Index { n, k });
    }
    if p > n - k {
        return Ok(Rat::zero());
    }
    let phi = phi.truncate(n);
    Ok(minus_one_powers(&phi, p)?[p].get(n, k))
}

/// `coeff(n,k)` of `φ^s` by the chain sum `Σ_{k=j_0≤…≤j_s=n} Π coeff[j_{i+1}][j_i]`,
/// evaluated left to right as a sequence of vector updates.
pub fn integer_power_chain_coeff(phi: &Triangle, s: usize, n: usize, k: usize) -> Result<Rat> {
    if n > phi.n() {
        return Err(Error::Truncation { needed: n, available: phi.n() });
    }
    if k > n {
        return Ok(Rat::zero());
    }
    let mut v = vec![Rat::zero(); n + 1];
    v[k] = Rat::one();
    for _ in 0..s {
        let mut w = vec![Rat::zero(); n + 1];
        for (m, slot) in w.iter_mut().enumerate().skip(k) {
            for (j, vj) in v.iter().enumerate().take(m + 1).skip(k) {
                if !vj.is_zero() {
                    *slot += phi.get(m, j) * vj;
                }
            }
        }
        v = w;
    }
    Ok(v[n].clone())
}

/// Iterative logarithm `f_*` of a unitary series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItLog {
    pub series: Series,
}

/// Computes `f_*` by the operator route
/// `Σ_{p≥1} (−1)^{p−1}/p (C_f − 1)^p x` over integer iterates, and by the
/// coefficient route on `(φ − 1)^p`; the two must agree.
pub fn itlog(f: &Series) -> Result<ItLog> {
    require_unitary(f)?;
    let op = itlog_operator(f)?;
    let coef = itlog_coeff(f)?;
    if op != coef {
        return Err(Error::IdentityFailure("iterative logarithm routes disagree".into()));
    }
    Ok(ItLog { series: op })
}

/// `(C_f − 1)^p x = Σ_ℓ C(p,ℓ)(−1)^{p−ℓ} f^{∘ℓ}`; has order at least `p+1`,
/// so `p ≤ N − 1` is enough.
pub fn itlog_operator(f: &Series) -> Result<Series> {
    require_unitary(f)?;
    let n = f.trunc();
    let mut iterates = vec![Series::x(n)];
    for l in 1..n {
        iterates.push(f.compose(&iterates[l - 1])?);
    }
    let mut acc = Series::zero(n);
    for p in 1..n {
        let mut term = Series::zero(n);
        for (l, it) in iterates.iter().enumerate().take(p + 1) {
            let sign = if (p - l) % 2 == 0 { Rat::one() } else { -Rat::one() };
            term = term.add(&it.scale(&(binom(p, l) * sign)));
        }
        let c = Rat::new(if p % 2 == 1 { 1.into() } else { (-1).into() }, p.into());
        acc = acc.add(&term.scale(&c));
    }
    Ok(acc)
}

/// `[x^n] f_* = (1/n!) Σ_{p=1}^{n−1} (−1)^{p−1}/p · coeff(n,1)_{(φ−1)^p}`.
pub fn itlog_coeff(f: &Series) -> Result<Series> {
    require_unitary(f)?;
    let n = f.trunc();
    let phi = triangle_of(f, n)?;
    let pows = minus_one_powers(&phi, n.saturating_sub(1))?;
    let mut c = vec![Rat::zero(); n + 1];
    for (m, slot) in c.iter_mut().enumerate().skip(2) {
        let mut s = Rat::zero();
        for (p, pw) in pows.iter().enumerate().take(m).skip(1) {
            let sign = if p % 2 == 1 { Rat::one() } else { -Rat::one() };
            s += sign * pw.get(m, 1) / uint(p);
        }
        *slot = s / factorial(m);
    }
    Ok(Series::new(c))
}

/// `f^s(x)^k / k!` to order `big_n`, from
/// `Σ_n x^n/n! Σ_{p=0}^{n−k} C(s,p) coeff(n,k)_{(φ−1)^p}`, cross-checked
/// against `Σ_p C(s,p) C(n−k−s, n−k−p) coeff(n,k)_{φ^p}`.
pub fn frac_iterate(f: &Series, s: &Rat, k: usize, big_n: usize) -> Result<Series> {
    require_unitary(f)?;
    if k == 0 {
        return Err(Error::InvalidParams("frac_iterate needs k >= 1".into()));
    }
    let phi = triangle_of(f, big_n)?;
    let span = big_n.saturating_sub(k);
    let mpows = minus_one_powers(&phi, span)?;
    let mut ppows = vec![Triangle::identity(big_n)];
    for p in 1..=span {
        let next = ppows[p - 1].compose(&phi)?;
        ppows.push(next);
    }
    let mut c = vec![Rat::zero(); big_n + 1];
    for (n, slot) in c.iter_mut().enumerate().skip(k) {
        let d = n - k;
        let mut a = Rat::zero();
        let mut b = Rat::zero();
        for p in 0..=d {
            let bs = binom_rat(s, p);
            a += &bs * mpows[p].get(n, k);
            b += bs * binom_rat(&(uint(d) - s), d - p) * ppows[p].get(n, k);
        }
        if a != b {
            return Err(Error::IdentityFailure(format!("fractional iterate forms disagree at x^{n}")));
        }
        *slot = a / factorial(n);
    }
    Ok(Series::new(c))
}

/// Triangle of `φ^s` for `φ ⇝ Q` unitary, as `e^{−s𝔛Q_*}` applied to monomials
/// with `Q_* = itlog(Q̃)`. The exponential terminates row-wise since
/// `𝔛Q_*(D)` lowers degrees. Checked against the coefficient formula.
pub fn phi_pow(q: &DeltaOp, s: &Rat, big_n: usize) -> Result<Triangle> {
    if !q.is_unitary() {
        return Err(Error::NotUnitary(q.unit().to_string()));
    }
    if q.trunc() < big_n {
        return Err(Error::Truncation { needed: big_n, available: q.trunc() });
    }
    let qi = q.indicator().truncate(big_n.max(1));
    let gen = ShiftOp::new(itlog(&qi)?.series);
    let mut images = Vec::with_capacity(big_n + 1);
    for n in 0..=big_n {
        let mut term = Poly::monomial(Rat::one(), n);
        let mut acc = term.clone();
        for j in 1..=n {
            term = gen.apply(&term)?.mulx().scale(&(-s / uint(j)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        images.push(acc);
    }
    let tri = Triangle::from_polys(&images)?;

    let phi = triangle_of(&qi.comp_inv()?, big_n)?;
    let mpows = minus_one_powers(&phi, big_n)?;
    let coef = Triangle::from_fn(big_n, |n, k| {
        (0..=(n - k)).fold(Rat::zero(), |acc, p| acc + binom_rat(s, p) * mpows[p].get(n, k))
    });
    if coef != tri {
        return Err(Error::IdentityFailure("umbral power routes disagree".into()));
    }
    Ok(tri)
}

/// `f^r ∘ f^s = f^{r+s}` and `(f^r)^s = f^{rs}` to order `n`.
pub fn group_law_check(f: &Series, r: &Rat, s: &Rat, n: usize) -> Result<bool> {
    let fr = frac_iterate(f, r, 1, n)?;
    let fs = frac_iterate(f, s, 1, n)?;
    let sum = frac_iterate(f, &(r + s), 1, n)?;
    if fr.compose(&fs)? != sum {
        return Ok(false);
    }
    let nested = frac_iterate(&fr, s, 1, n)?;
    Ok(nested == frac_iterate(f, &(r * s), 1, n)?)
}

/// Dense row-major matrix export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matrix {
    pub kind: &'static str,
    pub rows: Vec<Vec<String>>,
}

/// Jabotinsky matrix `k!/n! coeff[n][k]`. For the operator product,
/// `jab(φψ) = jab(ψ)·jab(φ)`.
pub fn jabotinsky(phi: &Triangle) -> Vec<Vec<Rat>> {
    phi.jabotinsky()
}

pub fn matrix_json(m: &[Vec<Rat>]) -> Matrix {
    Matrix { kind: "matrix", rows: m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect() }
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    (0..n).map(|i| (0..m).map(|j| (0..b.len()).fold(Rat::zero(), |s, l| s + &a[i][l] * &b[l][j])).collect()).collect()
}
