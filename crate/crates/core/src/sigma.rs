//! Sigma operators: the right inverse `Q^{-1}_{(a)}` of a delta operator,
//! anchored so that its output vanishes at `a`. These are not
//! shift-invariant, so they only ever act on polynomials here.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fps::{Poly, Series};
use crate::operators::{DeltaOp, ShiftOp};
use crate::rat::{binom, factorial, int, uint, Rat};
use crate::umbral::{basic, Route, Triangle};

/// Bernoulli numbers `B_0..=B_n` with `B_1 = −1/2`, from `t/(e^t − 1)`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rat> {
    let e = Series::x(n + 1).exp().expect("exp of order-1 series");
    let ratio = e.add_scalar(&int(-1)).shift_down(1).expect("order 1");
    let inv = ratio.mul_inv().expect("unit constant term");
    (0..=n).map(|k| inv.coeff(k) * factorial(k)).collect()
}

/// `Q^{-1}_{(a)}` on polynomials of degree at most `depth`.
#[derive(Debug, Clone)]
pub struct SigmaOp {
    q: DeltaOp,
    a: Rat,
    depth: usize,
    basic: Triangle,
    basic_inv: Triangle,
    bernoulli: Vec<Rat>,
}

impl SigmaOp {
    /// Needs the indicator of `q` to order `depth + 1`. The defining
    /// relations are verified on `1, x, …, x^depth` before returning.
    pub fn new(q: &DeltaOp, a: Rat, depth: usize) -> Result<SigmaOp> {
        if q.trunc() < depth + 1 {
            return Err(Error::Truncation { needed: depth + 1, available: q.trunc() });
        }
        let q = DeltaOp::from_indicator(q.indicator().truncate(depth + 1))?;
        let basic = basic(&q, depth + 1, Route::Genfunc)?.into_tri();
        let basic_inv = basic.invert()?;
        let s = SigmaOp { q, a, depth, basic, basic_inv, bernoulli: bernoulli_numbers(depth + 2) };
        for m in 0..=depth {
            let xm = Poly::monomial(Rat::one(), m);
            if s.q.apply(&s.apply(&xm)?)? != xm {
                return Err(Error::IdentityFailure(format!("Q Q^-1 x^{m} != x^{m}")));
            }
            let back = s.apply(&s.q.apply(&xm)?)?;
            if back != xm.sub(&Poly::constant(xm.eval(&s.a))) {
                return Err(Error::IdentityFailure(format!("Q^-1 Q x^{m} != x^{m} - a^{m}")));
            }
        }
        Ok(s)
    }

    pub fn delta(&self) -> &DeltaOp {
        &self.q
    }

    pub fn anchor(&self) -> &Rat {
        &self.a
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `B_0..=B_{depth+2}`.
    pub fn bernoulli(&self) -> &[Rat] {
        &self.bernoulli
    }

    fn check_degree(&self, p: &Poly) -> Result<()> {
        match p.deg() {
            Some(d) if d > self.depth => Err(Error::Truncation { needed: d, available: self.depth }),
            _ => Ok(()),
        }
    }

    /// `−Σ_{n≥1} φ_n(a − x)/n! · Q^{n−1} p`; the sum stops at `deg p + 1`.
    pub fn apply_series(&self, p: &Poly) -> Result<Poly> {
        self.check_degree(p)?;
        let Some(d) = p.deg() else { return Ok(Poly::zero()) };
        let a_minus_x = Poly::new(vec![self.a.clone(), -Rat::one()]);
        let mut acc = Poly::zero();
        let mut qp = p.clone();
        for n in 1..=(d + 1) {
            let w = self.basic.poly(n).compose(&a_minus_x);
            acc = acc.sub(&w.mul(&qp).scale(&factorial(n).recip()));
            qp = self.q.apply(&qp)?;
        }
        Ok(acc)
    }

    /// Expand `p = Σ c_k φ_k`, send `φ_k ↦ φ_{k+1}/(k+1)`, subtract the value at `a`.
    pub fn apply_basic(&self, p: &Poly) -> Result<Poly> {
        self.check_degree(p)?;
        let c = self.basic_inv.apply(p)?;
        let mut r = Poly::zero();
        for (k, ck) in c.coeffs().iter().enumerate() {
            if !ck.is_zero() {
                r = r.add(&self.basic.poly(k + 1).scale(&(ck / uint(k + 1))));
            }
        }
        let at = r.eval(&self.a);
        Ok(r.sub(&Poly::constant(at)))
    }

    /// Both constructions, asserted equal.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        let s = self.apply_series(p)?;
        if s != self.apply_basic(p)? {
            return Err(Error::IdentityFailure("sigma routes disagree".into()));
        }
        Ok(s)
    }
}

pub fn sigma_apply(s: &SigmaOp, p: &Poly) -> Result<Poly> {
    s.apply(p)
}

fn deg0(p: &Poly) -> usize {
    p.deg().unwrap_or(0)
}

/// Forward difference `Δ = e^D − 1` with indicator to order `n`.
pub fn forward_difference(n: usize) -> DeltaOp {
    let e = Series::x(n).exp().expect("exp");
    DeltaOp::from_indicator(e.add_scalar(&int(-1))).expect("order 1")
}

/// `Σ_{k=0}^{x−1} k^n`, by three routes asserted equal: the Bernoulli
/// closed form, the sigma operator of `Δ` anchored at 0, and `∫_0^x B_n(t) dt`.
pub fn faulhaber(n: usize) -> Result<Poly> {
    let b = bernoulli_numbers(n + 1);
    let closed = Poly::new(
        (0..=(n + 1))
            .map(|j| if j == 0 { Rat::zero() } else { binom(n + 1, n + 1 - j) * &b[n + 1 - j] / uint(n + 1) })
            .collect(),
    );
    let s = SigmaOp::new(&forward_difference(n + 1), Rat::zero(), n)?;
    let sig = s.apply(&Poly::monomial(Rat::one(), n))?;
    let bn = Poly::new((0..=n).map(|j| binom(n, j) * &b[n - j]).collect());
    let integ = bn.integrate();
    if closed != sig || closed != integ {
        return Err(Error::IdentityFailure(format!("Faulhaber routes disagree at n = {n}")));
    }
    Ok(closed)
}

/// Antiderivative vanishing at `a`.
fn integral_from(p: &Poly, a: &Rat) -> Poly {
    let i = p.integrate();
    let at = i.eval(a);
    i.sub(&Poly::constant(at))
}

/// `Σ_a p − ∫_a p`, checked against `Σ_{k≥1} B_k/k! (1 − Ev_a) p^{(k−1)}`.
pub fn euler_maclaurin_residual(p: &Poly, a: &Rat) -> Result<Poly> {
    let d = deg0(p);
    let s = SigmaOp::new(&forward_difference(d + 1), a.clone(), d)?;
    let lhs = s.apply(p)?.sub(&integral_from(p, a));
    let b = s.bernoulli();
    let mut rhs = Poly::zero();
    let mut der = p.clone();
    for k in 1..=(d + 1) {
        let at = der.eval(a);
        rhs = rhs.add(&der.sub(&Poly::constant(at)).scale(&(&b[k] / factorial(k))));
        der = der.derive();
    }
    if lhs != rhs {
        return Err(Error::IdentityFailure("Euler-Maclaurin routes disagree".into()));
    }
    Ok(lhs)
}

/// Appell operator used to exercise `(AQ)^{-1} = Q^{-1} A^{-1}`: `A = E(1 + D)`.
fn test_appell(n: usize) -> ShiftOp {
    ShiftOp::translation(&int(1), n).compose(&ShiftOp::new(Series::from_ints(n, &[1, 1])))
}

/// On `x^m`, `m ≤ depth`:
/// (a) `Ev_a Q^{-1}_{(a)} = 0`;
/// (b) `(AQ)^{-1}_{(a)} = Q^{-1}_{(a)} A^{-1}` with `A = E(1 + D)`;
/// (c) `Q^{-1}_{(a)} = R^{-1}_{(a)} (R/Q)`;
/// (d) `Q/R = Q R^{-1}_{(a)}`.
pub fn sigma_identities_check(q: &DeltaOp, r: &DeltaOp, a: &Rat, depth: usize) -> Result<bool> {
    let n = depth + 1;
    let sq = SigmaOp::new(q, a.clone(), depth)?;
    let sr = SigmaOp::new(r, a.clone(), depth)?;
    let qb = sq.delta().base().clone();
    let rb = sr.delta().base().clone();
    let app = test_appell(n);
    let aq = DeltaOp::from_indicator(app.compose(&qb).indicator().clone())?;
    let saq = SigmaOp::new(&aq, a.clone(), depth)?;
    let a_inv = app.inverse()?;
    let r_over_q = rb.divide(&qb)?;
    let q_over_r = qb.divide(&rb)?;
    for m in 0..=depth {
        let xm = Poly::monomial(Rat::one(), m);
        let qinv = sq.apply(&xm)?;
        if !qinv.eval(a).is_zero() {
            return Ok(false);
        }
        if saq.apply(&xm)? != sq.apply(&a_inv.apply(&xm)?)? {
            return Ok(false);
        }
        if qinv != sr.apply(&r_over_q.apply(&xm)?)? {
            return Ok(false);
        }
        if q_over_r.apply(&xm)? != sq.delta().apply(&sr.apply(&xm)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ_a p` evaluated at `x`; for integers `a ≤ x` this is `Σ_{k=a}^{x−1} p(k)`.
pub fn frac_sum_eval(p: &Poly, a: &Rat, x: &Rat) -> Result<Rat> {
    let d = deg0(p);
    let s = SigmaOp::new(&forward_difference(d + 1), a.clone(), d)?;
    Ok(s.apply(p)?.eval(x))
}

/// Bernoulli polynomials of the second kind `ψ_n = (Δ/D)(x)_n`, checked
/// against `∫_x^{x+1} (t)_n dt`.
pub fn bernoulli2_poly(n: usize) -> Result<Poly> {
    let delta = forward_difference(n + 1);
    let falling = basic(&delta, n, Route::Genfunc)?;
    let ratio = delta.base().divide(&ShiftOp::derivative(n + 1))?;
    let psi = ratio.apply(&falling.poly(n))?;
    let i = falling.poly(n).integrate();
    let integral = i.shift(&int(1)).sub(&i);
    if psi != integral {
        return Err(Error::IdentityFailure(format!("second-kind Bernoulli routes disagree at n = {n}")));
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn direct_sum(p: &Poly, a: i64, x: i64) -> Rat {
        (a..x).fold(Rat::zero(), |s, k| s + p.eval(&int(k)))
    }

    fn xpow(k: usize) -> Poly {
        Poly::monomial(Rat::one(), k)
    }

    /// Bernoulli numbers from `Σ_{j<n+1} C(n+1,j) B_j = 0`.
    fn bernoulli_oracle(n: usize) -> Vec<Rat> {
        let mut b = vec![Rat::one()];
        for m in 1..=n {
            let s = (0..m).fold(Rat::zero(), |s, j| s + binom(m + 1, j) * &b[j]);
            b.push(-s / uint(m + 1));
        }
        b
    }

    #[test]
    fn bernoulli_numbers_match_recurrence() {
        assert_eq!(bernoulli_numbers(20), bernoulli_oracle(20));
        assert_eq!(bernoulli_numbers(4)[1], rat(-1, 2));
        assert_eq!(bernoulli_numbers(4)[2], rat(1, 6));
    }

    #[test]
    fn sigma_examples() {
        let a = rat(2, 5);
        let s = SigmaOp::new(&DeltaOp::derivative(4), a.clone(), 3).unwrap();
        let expect = Poly::new(vec![-(&a * &a * &a) / int(3), int(0), int(0), rat(1, 3)]);
        assert_eq!(sigma_apply(&s, &xpow(2)).unwrap(), expect);

        let s = SigmaOp::new(&forward_difference(4), int(0), 3).unwrap();
        let r = sigma_apply(&s, &xpow(2)).unwrap();
        assert_eq!(r, Poly::new(vec![int(0), rat(1, 6), rat(-1, 2), rat(1, 3)]));
        assert_eq!(r.eval(&int(5)), int(30));
        assert_eq!(direct_sum(&xpow(2), 0, 5), int(30));
    }

    #[test]
    fn logistic_sigma_is_integral_of_geometric() {
        let n = 6;
        let lambda = DeltaOp::from_indicator(Series::from_ints(n, &[0, 1, -1])).unwrap();
        let s = SigmaOp::new(&lambda, int(0), 4).unwrap();
        let geo = ShiftOp::new(Series::from_ints(n, &[1, -1])).inverse().unwrap();
        for m in 0..=4 {
            let via = integral_from(&geo.apply(&xpow(m)).unwrap(), &int(0));
            assert_eq!(s.apply_series(&xpow(m)).unwrap(), via);
        }
    }

    #[test]
    fn faulhaber_examples() {
        assert_eq!(faulhaber(0).unwrap(), Poly::x());
        let f1 = faulhaber(1).unwrap();
        assert_eq!(f1, Poly::new(vec![int(0), rat(-1, 2), rat(1, 2)]));
        assert_eq!(f1.eval(&int(4)), int(6));
        assert_eq!(faulhaber(2).unwrap().eval(&int(5)), int(30));
        for n in 0..=10 {
            let f = faulhaber(n).unwrap();
            for x in 0..8 {
                assert_eq!(f.eval(&int(x)), direct_sum(&xpow(n), 0, x));
            }
        }
    }

    #[test]
    fn faulhaber_from_geometric_generating_function() {
        // n! [t^n] (e^{xt} − 1)/(e^t − 1) = Σ_j x^{j+1}/(j+1)! · B_{n−j}/(n−j)! · n!
        let b = bernoulli_oracle(12);
        for n in 0..=10 {
            let mut c = vec![Rat::zero(); n + 2];
            for j in 0..=n {
                c[j + 1] = &b[n - j] / (factorial(j + 1) * factorial(n - j)) * factorial(n);
            }
            assert_eq!(faulhaber(n).unwrap(), Poly::new(c));
        }
    }

    #[test]
    fn euler_maclaurin_examples() {
        assert!(euler_maclaurin_residual(&Poly::one(), &int(0)).unwrap().is_zero());
        assert_eq!(euler_maclaurin_residual(&Poly::x(), &int(0)).unwrap(), Poly::new(vec![int(0), rat(-1, 2)]));
        let r = euler_maclaurin_residual(&xpow(3), &int(0)).unwrap();
        // Σ x^3 − x^4/4 = −x^3/2 + x^2/4
        assert_eq!(r, Poly::new(vec![int(0), int(0), rat(1, 4), rat(-1, 2)]));
    }

    #[test]
    fn identities_examples() {
        let d = DeltaOp::derivative(8);
        let delta = forward_difference(8);
        assert!(sigma_identities_check(&d, &d, &int(0), 6).unwrap());
        assert!(sigma_identities_check(&d, &delta, &int(0), 6).unwrap());
        assert!(sigma_identities_check(&delta, &d, &rat(-1, 2), 6).unwrap());
        // Σ = 𝓘ℬ reproduces Faulhaber
        let b = ShiftOp::derivative(8).divide(delta.base()).unwrap();
        let integ = SigmaOp::new(&d, int(0), 6).unwrap();
        for n in 0..=6 {
            assert_eq!(integ.apply(&b.apply(&xpow(n)).unwrap()).unwrap(), faulhaber(n).unwrap());
        }
        // (Δ/D) f = Δ 𝓘 f = ∫_x^{x+1} f
        let binv = delta.base().divide(&ShiftOp::derivative(8)).unwrap();
        for n in 0..=6 {
            let i = xpow(n).integrate();
            assert_eq!(binv.apply(&xpow(n)).unwrap(), i.shift(&int(1)).sub(&i));
        }
    }

    #[test]
    fn frac_sum_examples() {
        assert_eq!(frac_sum_eval(&xpow(2), &int(0), &int(5)).unwrap(), int(30));
        assert_eq!(frac_sum_eval(&Poly::one(), &int(0), &rat(7, 2)).unwrap(), rat(7, 2));
        let p = Poly::new(vec![rat(1, 3), int(-2), int(0), rat(5, 7)]);
        assert!(frac_sum_eval(&p, &rat(3, 4), &rat(3, 4)).unwrap().is_zero());
        assert_eq!(frac_sum_eval(&p, &int(-2), &int(6)).unwrap(), direct_sum(&p, -2, 6));
    }

    #[test]
    fn bernoulli2_examples() {
        assert_eq!(bernoulli2_poly(0).unwrap(), Poly::one());
        assert_eq!(bernoulli2_poly(1).unwrap(), Poly::new(vec![rat(1, 2), int(1)]));
        assert_eq!(bernoulli2_poly(2).unwrap(), Poly::new(vec![rat(-1, 6), int(0), int(1)]));
        // φD = Dψ on monomials: n (x)_{n−1} = ψ_n'
        let falling = basic(&forward_difference(9), 8, Route::Genfunc).unwrap();
        for n in 1..=8 {
            assert_eq!(bernoulli2_poly(n).unwrap().derive(), falling.poly(n - 1).scale(&uint(n)));
        }
    }

    #[test]
    fn truncation_is_enforced() {
        assert!(matches!(SigmaOp::new(&DeltaOp::derivative(3), int(0), 3), Err(Error::Truncation { .. })));
        let s = SigmaOp::new(&DeltaOp::derivative(3), int(0), 2).unwrap();
        assert!(s.apply(&xpow(3)).is_err());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn frac_sum_telescopes(c in prop::collection::vec(small_rat(), 1..6), a in small_rat(), b in small_rat(), x in small_rat()) {
            let p = Poly::new(c);
            let ab = frac_sum_eval(&p, &a, &b).unwrap();
            let bx = frac_sum_eval(&p, &b, &x).unwrap();
            prop_assert_eq!(ab + bx, frac_sum_eval(&p, &a, &x).unwrap());
        }

        #[test]
        fn euler_maclaurin_random(c in prop::collection::vec(small_rat(), 1..9), a in small_rat()) {
            prop_assert!(euler_maclaurin_residual(&Poly::new(c), &a).is_ok());
        }

        #[test]
        fn random_delta_sigma(rest in prop::collection::vec(small_rat(), 7), c in 1i64..=3, a in small_rat()) {
            let mut coeffs = vec![Rat::zero(), int(c)];
            coeffs.extend(rest);
            let q = DeltaOp::from_indicator(Series::new(coeffs)).unwrap();
            // construction asserts both defining relations and route agreement
            let s = SigmaOp::new(&q, a.clone(), 6).unwrap();
            prop_assert!(sigma_identities_check(&q, &forward_difference(8), &a, 6).unwrap());
            prop_assert!(s.apply(&xpow(6)).unwrap().eval(&a).is_zero());
        }
    }
}
