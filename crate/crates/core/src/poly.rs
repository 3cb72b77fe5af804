//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, int, Rational};

/// `coeffs[k]` is the coefficient of `x^k`. The last stored coefficient is
/// never zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `x - root`.
    pub fn linear_root(root: &Rational) -> Self {
        Self::new(vec![-root.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, `-1` standing in for the zero polynomial.
    pub fn degree_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&int(t))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `p(x + l)`.
    pub fn shift(&self, l: &Rational) -> Self {
        self.compose_linear(&Rational::one(), l)
    }

    /// `p(alpha * x + beta)`.
    pub fn compose_linear(&self, alpha: &Rational, beta: &Rational) -> Self {
        // Horner over the linear polynomial.
        let lin = Polynomial::new(vec![beta.clone(), alpha.clone()]);
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &lin;
            acc += &Polynomial::constant(c.clone());
        }
        acc
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Quotient of an exact division; errors if a remainder is left.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Falling factorial `(x + offset)(x + offset - 1)...(x + offset - k + 1)`.
    pub fn falling_factorial(k: usize, offset: &Rational) -> Self {
        let mut acc = Polynomial::one();
        for i in 0..k {
            acc = &acc * &Polynomial::new(vec![offset - int(i as i64), Rational::one()]);
        }
        acc
    }

    /// `C(x, k) = x(x-1)...(x-k+1)/k!`.
    pub fn binomial_x(k: usize) -> Self {
        Self::falling_factorial(k, &Rational::zero()).scale(&rational::factorial(k as u64).recip())
    }

    /// Pochhammer symbol `(x + offset)_k = (x+offset)(x+offset+1)...(x+offset+k-1)`.
    pub fn rising_factorial(k: usize, offset: &Rational) -> Self {
        let mut acc = Polynomial::one();
        for i in 0..k {
            acc = &acc * &Polynomial::new(vec![offset + int(i as i64), Rational::one()]);
        }
        acc
    }

    /// `p'(x)`.
    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// The unique `P` with `P(x) - P(x-1) = self` and `P(-1) = 0`.
    ///
    /// Works in the falling-factorial basis: `self = sum c_k (x)_k` with
    /// `c_k = Delta^k self(0) / k!`, and `(x+1)_{k+1}/(k+1)` has backward
    /// difference `(x)_k` and vanishes at `-1`.
    pub fn antidifference(&self) -> Self {
        let Some(d) = self.degree() else {
            return Polynomial::zero();
        };
        // forward differences at 0
        let mut vals: Vec<Rational> = (0..=d as i64).map(|t| self.eval_int(t)).collect();
        let mut newton = Vec::with_capacity(d + 1);
        for k in 0..=d {
            newton.push(vals[0].clone() / rational::factorial(k as u64));
            for i in 0..vals.len() - 1 {
                vals[i] = &vals[i + 1] - &vals[i];
            }
            vals.pop();
        }
        let one = Rational::one();
        let mut acc = Polynomial::zero();
        for (k, c) in newton.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = Polynomial::falling_factorial(k + 1, &one);
            acc += &basis.scale(&(c / int(k as i64 + 1)));
        }
        acc
    }

    /// `prod (x - r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a Rational>) -> Self {
        roots
            .into_iter()
            .fold(Polynomial::one(), |acc, r| &acc * &Polynomial::linear_root(r))
    }

    /// Coefficients as `"p/q"` strings, ascending.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(coeffs: &[S]) -> Result<Self> {
        Ok(Self::new(
            coeffs
                .iter()
                .map(|s| rational::parse(s.as_ref()))
                .collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_str::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Polynomial::new(rational::serde_str::vec::deserialize(d)?))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        *self = Polynomial::new(std::mem::take(&mut self.coeffs));
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        *self = Polynomial::new(std::mem::take(&mut self.coeffs));
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

/// `p(x + l)` for an integer shift.
pub fn shift_poly(p: &Polynomial, l: i64) -> Polynomial {
    p.shift(&int(l))
}

/// Exact antidifference normalized by `P(-1) = 0`.
pub fn antidifference(q: &Polynomial) -> Polynomial {
    q.antidifference()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn shift_square() {
        let p = Polynomial::from_ints(&[0, 0, 1]);
        assert_eq!(shift_poly(&p, 1), Polynomial::from_ints(&[1, 2, 1]));
        assert_eq!(shift_poly(&p, 0), p);
    }

    #[test]
    fn shift_round_trip() {
        let p = Polynomial::from_ints(&[0, -1, 0, 3]);
        assert_eq!(shift_poly(&shift_poly(&p, 2), -2), p);
    }

    #[test]
    fn antidifference_examples() {
        assert_eq!(antidifference(&Polynomial::one()), Polynomial::from_ints(&[1, 1]));
        assert_eq!(
            antidifference(&Polynomial::from_ints(&[1, 2])),
            Polynomial::from_ints(&[1, 2, 1])
        );
        assert!(antidifference(&Polynomial::zero()).is_zero());
    }

    #[test]
    fn antidifference_degree_and_backward_difference() {
        let q = Polynomial::new(vec![rat(1, 3), int(-2), int(0), rat(5, 7)]);
        let p = antidifference(&q);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(&p - &shift_poly(&p, -1), q);
        assert!(p.eval_int(-1).is_zero());
    }

    #[test]
    fn division() {
        let a = Polynomial::from_ints(&[-1, 0, 1]);
        let b = Polynomial::from_ints(&[1, 1]);
        assert_eq!(a.exact_div(&b).unwrap(), Polynomial::from_ints(&[-1, 1]));
        let (q, r) = Polynomial::from_ints(&[1, 0, 1]).div_rem(&b).unwrap();
        assert_eq!(q, Polynomial::from_ints(&[-1, 1]));
        assert_eq!(r, Polynomial::from_ints(&[2]));
        assert!(a.div_rem(&Polynomial::zero()).is_err());
        assert_eq!(
            Polynomial::from_ints(&[1, 0, 1]).exact_div(&b),
            Err(Error::InexactDivision)
        );
    }

    #[test]
    fn degree_of_zero() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::new(vec![int(0), int(0)]), Polynomial::zero());
    }

    #[test]
    fn binomial_x_values() {
        let b = Polynomial::binomial_x(3);
        assert_eq!(b.eval_int(5), int(10));
        assert_eq!(b.eval_int(-1), int(-1));
    }
}
