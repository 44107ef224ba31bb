//! Sparse integer Laurent polynomials in one variable `v`, plus plain
//! integer polynomials used for coefficient tables.
//!
//! `LaurentPoly` is the coefficient ring for everything in this crate.
//! Coefficients are arbitrary-precision integers; the zero polynomial is
//! the empty support and no zero coefficient is ever stored, so `Eq` and
//! `Hash` are structural equality of canonical forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in `v`, kept in canonical sparse form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^n`.
    pub fn monomial<C: Into<BigInt>>(c: C, n: i32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (n, c) in it {
            p.add_term(&c.into(), n);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map_or(false, |c| c == &BigInt::from(1))
    }

    /// Coefficient of `v^n` (zero if absent).
    pub fn coeff(&self, n: i32) -> BigInt {
        self.terms.get(&n).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Iterate `(exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, c: &BigInt, n: i32) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (n, c) in other.iter() {
            self.add_term(c, n);
        }
    }

    pub fn sub_assign(&mut self, other: &LaurentPoly) {
        for (n, c) in other.iter() {
            self.add_term(&-c, n);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        r.sub_assign(other);
        r
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect() }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (n, c) in self.iter() {
            for (m, d) in other.iter() {
                r.add_term(&(c * d), n + m);
            }
        }
        r
    }

    /// Multiply by the monomial `v^n`.
    pub fn shifted(&self, n: i32) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&m, c)| (m + n, c.clone())).collect() }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&n, c)| (-n, c.clone())).collect() }
    }

    /// Sum of the terms with strictly negative exponent.
    pub fn negative_part(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.range(..0).map(|(&n, c)| (n, c.clone())).collect(),
        }
    }

    /// True if every coefficient is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// True if every exponent is even, i.e. the value lies in `Z[u, u^-1]`
    /// for `u = v^2`.
    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|n| n % 2 == 0)
    }

    /// Exact division. Errors when `self` is not a multiple of `d`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        if d.is_zero() {
            return Err(Error::NotDivisible { num: self.to_string(), den: d.to_string() });
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let not_divisible = || Error::NotDivisible { num: self.to_string(), den: d.to_string() };
        // Any exact quotient q satisfies min_exp(q) = min_exp(self) - min_exp(d).
        let qmin = self.min_exp().unwrap() - d.min_exp().unwrap();
        let dmax = d.max_exp().unwrap();
        let dlead = d.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while !rem.is_zero() {
            let rmax = rem.max_exp().unwrap();
            let qexp = rmax - dmax;
            if qexp < qmin {
                return Err(not_divisible());
            }
            let rlead = rem.coeff(rmax);
            let (q, r) = num_integer_div_rem(&rlead, &dlead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let t = LaurentPoly::monomial(q, qexp);
            rem.sub_assign(&t.mul(d));
            quot.add_assign(&t);
        }
        Ok(quot)
    }

    /// Halve exponents: interpret an even polynomial in `v` as a polynomial
    /// in `u = v^2` and return it with exponents divided by two.
    pub fn compress_even(&self) -> Result<LaurentPoly> {
        let mut terms = BTreeMap::new();
        for (n, c) in self.iter() {
            if n % 2 != 0 {
                return Err(Error::InternalInvariant(format!(
                    "odd exponent {n} in value expected to be even: {self}"
                )));
            }
            terms.insert(n / 2, c.clone());
        }
        Ok(LaurentPoly { terms })
    }

    /// Reinterpret as an ordinary polynomial: exponents must have the form
    /// `shift + step*i` with `i >= 0`; coefficient `i` of the result is the
    /// coefficient of `v^(shift + step*i)`.
    pub fn to_int_poly_scaled(&self, shift: i32, step: i32) -> Result<IntPoly> {
        debug_assert!(step > 0);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (n, c) in self.iter() {
            let d = n - shift;
            if d < 0 || d % step != 0 {
                return Err(Error::InternalInvariant(format!(
                    "exponent {n} does not fit grid {shift} + {step}*i in {self}"
                )));
            }
            let i = (d / step) as usize;
            if coeffs.len() <= i {
                coeffs.resize(i + 1, BigInt::zero());
            }
            coeffs[i] = c.clone();
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

impl fmt::Display for LaurentPoly {
    /// Terms ascending by exponent, `c*v^n` with `v^0` elided, for example
    /// `-1*v^-2 + 3 + 1*v^4`. The zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if n == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*v^{n}")?;
            }
        }
        Ok(())
    }
}

/// Ordinary integer polynomial with nonnegative exponents, dense form.
/// The coefficient vector never ends in zero; the zero polynomial is empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::from(1)] }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == BigInt::from(1)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i` (zero beyond the degree). Negative `i` reads
    /// as zero so callers can probe half-integral positions uniformly.
    pub fn coeff(&self, i: i64) -> BigInt {
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Substitute `x = v^k`, producing a Laurent polynomial.
    pub fn substitute_power(&self, k: i32) -> LaurentPoly {
        debug_assert!(k != 0);
        LaurentPoly::from_terms(
            self.coeffs.iter().enumerate().map(|(i, c)| (k * i as i32, c.clone())),
        )
    }

    /// Coefficientwise `(self + sign*other)/2`; errors unless every entry
    /// of the result is a nonnegative integer.
    pub fn half_combine(&self, other: &IntPoly, sign: i64, context: &str) -> Result<IntPoly> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let two = BigInt::from(2);
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let s = self.coeff(i as i64) + BigInt::from(sign) * other.coeff(i as i64);
            let (q, r) = num_integer_div_rem(&s, &two);
            if !r.is_zero() || q.is_negative() {
                return Err(Error::PositivityViolated(format!(
                    "{context}: coefficient {s} at degree {i} is not a doubled natural number"
                )));
            }
            out.push(q);
        }
        Ok(IntPoly::from_coeffs(out))
    }
}

impl fmt::Display for IntPoly {
    /// Dense rendering in the abstract variable `x`, ascending degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*x^{i}")?;
            }
        }
        Ok(())
    }
}

/// Coefficientwise `(a + sign*b)/2` on Laurent polynomials in one shared
/// variable; errors unless the result has nonnegative integer coefficients.
pub fn half_combine_laurent(
    a: &LaurentPoly,
    b: &LaurentPoly,
    sign: i64,
    context: &str,
) -> Result<LaurentPoly> {
    let mut s = a.clone();
    if sign >= 0 {
        s.add_assign(b);
    } else {
        s.sub_assign(b);
    }
    let two = BigInt::from(2);
    let mut out = LaurentPoly::zero();
    for (n, c) in s.iter() {
        let (q, r) = num_integer_div_rem(c, &two);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::PositivityViolated(format!(
                "{context}: coefficient {c} at exponent {n} is not a doubled natural number"
            )));
        }
        out.add_term(&q, n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(n, c)| (n, c)))
    }

    #[test]
    fn display_format() {
        assert_eq!(lp(&[(-2, -1), (0, 3), (4, 1)]).to_string(), "-1*v^-2 + 3 + 1*v^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(lp(&[(1, 1)]).to_string(), "1*v^1");
        assert_eq!(lp(&[(0, -2), (2, 1)]).to_string(), "-2 + 1*v^2");
    }

    #[test]
    fn canonical_zero_stripping() {
        let mut p = lp(&[(3, 5)]);
        p.add_term(&BigInt::from(-5), 3);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
        assert_eq!(lp(&[]), LaurentPoly::zero());
    }

    #[test]
    fn mul_and_shift() {
        let p = lp(&[(0, 1), (1, 1)]);
        let q = lp(&[(0, 1), (-1, -1)]);
        assert_eq!(p.mul(&q), lp(&[(1, 1), (-1, -1)]));
        assert_eq!(p.shifted(-3), lp(&[(-3, 1), (-2, 1)]));
    }

    #[test]
    fn bar_flips_exponents() {
        let p = lp(&[(-2, 4), (1, 7)]);
        assert_eq!(p.bar(), lp(&[(2, 4), (-1, 7)]));
        assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn negative_part_splits() {
        let p = lp(&[(-3, 2), (-1, -1), (0, 5), (2, 3)]);
        assert_eq!(p.negative_part(), lp(&[(-3, 2), (-1, -1)]));
    }

    #[test]
    fn exact_div_roundtrip_and_failure() {
        let p = lp(&[(0, 1), (-2, 1)]); // 1 + v^-2
        let d = lp(&[(0, 1), (-1, 1)]); // 1 + v^-1
        let q = lp(&[(0, 2), (1, 3), (-4, -7)]);
        assert_eq!(q.mul(&d).exact_div(&d).unwrap(), q);
        assert!(p.exact_div(&d).is_err());
        assert!(LaurentPoly::one().exact_div(&d).is_err());
        assert_eq!(LaurentPoly::zero().exact_div(&d).unwrap(), LaurentPoly::zero());
        assert!(lp(&[(0, 3)]).exact_div(&lp(&[(0, 2)])).is_err());
    }

    #[test]
    fn evenness_and_nonneg() {
        assert!(lp(&[(-2, 1), (4, 2)]).is_even());
        assert!(!lp(&[(1, 1)]).is_even());
        assert!(lp(&[(0, 1)]).is_nonneg());
        assert!(!lp(&[(0, -1)]).is_nonneg());
        assert!(LaurentPoly::zero().is_even() && LaurentPoly::zero().is_nonneg());
    }

    #[test]
    fn int_poly_scaling() {
        let p = IntPoly::from_ints(&[1, 0, 2]);
        assert_eq!(p.substitute_power(4), lp(&[(0, 1), (8, 2)]));
        assert_eq!(p.substitute_power(4).to_int_poly_scaled(0, 4).unwrap(), p);
        let shifted = p.substitute_power(2).shifted(-3);
        assert_eq!(shifted.to_int_poly_scaled(-3, 2).unwrap(), p);
        assert!(shifted.to_int_poly_scaled(0, 2).is_err());
    }

    #[test]
    fn half_combines() {
        let p = IntPoly::from_ints(&[3, 1]);
        let q = IntPoly::from_ints(&[1, 1]);
        assert_eq!(p.half_combine(&q, 1, "t").unwrap(), IntPoly::from_ints(&[2, 1]));
        assert_eq!(p.half_combine(&q, -1, "t").unwrap(), IntPoly::from_ints(&[1]));
        assert!(p.half_combine(&IntPoly::from_ints(&[2]), 1, "t").is_err());
        assert!(q.half_combine(&p, -1, "t").is_err());

        let a = lp(&[(-1, 2), (2, 4)]);
        let b = lp(&[(-1, 2), (2, -2)]);
        assert_eq!(half_combine_laurent(&a, &b, 1, "t").unwrap(), lp(&[(-1, 2), (2, 1)]));
        assert_eq!(half_combine_laurent(&a, &b, -1, "t").unwrap(), lp(&[(2, 3)]));
        assert!(half_combine_laurent(&a, &lp(&[(0, 1)]), 1, "t").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i32..=6, -9i64..=9), 0..6)
            .prop_map(|ts| LaurentPoly::from_terms(ts))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.sub(&a), LaurentPoly::zero());
        }

        #[test]
        fn bar_is_a_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!(a.add(&b).bar(), a.bar().add(&b.bar()));
            prop_assert_eq!(a.mul(&b).bar(), a.bar().mul(&b.bar()));
        }

        #[test]
        fn exact_div_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn negative_part_decomposition(a in arb_poly()) {
            // p = negative_part(p) + c0 + bar(negative_part(bar(p)))
            let mut rebuilt = a.negative_part();
            rebuilt.add_term(&a.constant_term(), 0);
            rebuilt.add_assign(&a.bar().negative_part().bar());
            prop_assert_eq!(rebuilt, a);
        }
    }
}
