//! Truncated power series with exact rational coefficients.
//!
//! A `SeriesQ` of order N stores the coefficients of z^0 ..= z^N and is exact
//! modulo z^(N+1). Operations track the order: derivatives lose one term,
//! shifting by z^k gains k.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Int, Nat, Rational};
use crate::error::{arg, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesQ {
    coeffs: Vec<Rational>,
}

impl SeriesQ {
    /// Coefficients of z^0 ..= z^order; missing entries are zero.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> SeriesQ {
        coeffs.resize(order + 1, Rational::zero());
        SeriesQ { coeffs }
    }

    pub fn from_ints(coeffs: &[Int], order: usize) -> SeriesQ {
        SeriesQ::from_coeffs(coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect(), order)
    }

    pub fn zero(order: usize) -> SeriesQ {
        SeriesQ::from_coeffs(Vec::new(), order)
    }

    pub fn one(order: usize) -> SeriesQ {
        SeriesQ::from_coeffs(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Rational {
        assert!(n <= self.order(), "coefficient z^{n} is beyond order {}", self.order());
        self.coeffs[n].clone()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> SeriesQ {
        assert!(order <= self.order());
        SeriesQ { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn scale(&self, c: &Rational) -> SeriesQ {
        SeriesQ { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by z^k.
    pub fn shift(&self, k: usize) -> SeriesQ {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        SeriesQ { coeffs }
    }

    pub fn derivative(&self) -> SeriesQ {
        if self.coeffs.len() == 1 {
            // only the constant is known, so nothing of the derivative is
            panic!("derivative of an order-0 series has no known coefficients");
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(i + 1))
            .collect();
        SeriesQ { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> SeriesQ {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / BigInt::from(i + 1)),
        );
        SeriesQ { coeffs }
    }

    pub fn pow(&self, k: u32) -> SeriesQ {
        let mut acc = SeriesQ::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn inverse(&self) -> Result<SeriesQ> {
        if self.coeffs[0].is_zero() {
            return arg("series with zero constant term has no inverse");
        }
        let n = self.order();
        let c0 = self.coeffs[0].clone();
        let mut inv = vec![Rational::zero(); n + 1];
        inv[0] = c0.recip();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -acc / &c0;
        }
        Ok(SeriesQ { coeffs: inv })
    }

    pub fn exp(&self) -> Result<SeriesQ> {
        if !self.coeffs[0].is_zero() {
            return arg("exp needs a series with zero constant term");
        }
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        // n e_n = Σ_{k=1}^{n} k g_k e_{n−k}
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                acc += &self.coeffs[k] * BigInt::from(k) * &e[m - k];
            }
            e[m] = acc / BigInt::from(m);
        }
        Ok(SeriesQ { coeffs: e })
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or None if one of them is fractional.
    pub fn to_ints(&self) -> Option<Vec<Int>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Agreement on coefficients 0 ..= n.
    pub fn agrees_to(&self, other: &SeriesQ, n: usize) -> bool {
        n <= self.order() && n <= other.order() && self.coeffs[..=n] == other.coeffs[..=n]
    }
}

impl Add for &SeriesQ {
    type Output = SeriesQ;
    fn add(self, rhs: &SeriesQ) -> SeriesQ {
        let n = self.order().min(rhs.order());
        SeriesQ { coeffs: (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &SeriesQ {
    type Output = SeriesQ;
    fn sub(self, rhs: &SeriesQ) -> SeriesQ {
        let n = self.order().min(rhs.order());
        SeriesQ { coeffs: (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

impl Neg for &SeriesQ {
    type Output = SeriesQ;
    fn neg(self) -> SeriesQ {
        SeriesQ { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &SeriesQ {
    type Output = SeriesQ;
    fn mul(self, rhs: &SeriesQ) -> SeriesQ {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        SeriesQ { coeffs }
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_nat(n: &Nat) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}
