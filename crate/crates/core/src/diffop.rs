//! Finite-genre difference operators `sum_{l=s}^{r} h_l(x) s_l` with
//! polynomial coefficients, where `s_l p(x) = p(x + l)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Mutex;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{int, Rational};

/// Coefficients are stored densely over `[low, low + coeffs.len())`, and the
/// first and last stored coefficients are nonzero unless the operator is zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    low: i64,
    coeffs: Vec<Polynomial>,
}

impl DiffOp {
    pub fn zero() -> Self {
        DiffOp::default()
    }

    pub fn identity() -> Self {
        Self::shift(0)
    }

    /// The bare shift `s_l`.
    pub fn shift(l: i64) -> Self {
        DiffOp {
            low: l,
            coeffs: vec![Polynomial::one()],
        }
    }

    /// Forward difference `Delta = s_1 - s_0`.
    pub fn delta() -> Self {
        Self::from_terms([(1, Polynomial::one()), (0, -Polynomial::one())])
    }

    /// Backward difference `nabla = s_0 - s_{-1}`.
    pub fn nabla() -> Self {
        Self::from_terms([(0, Polynomial::one()), (-1, -Polynomial::one())])
    }

    /// Builds from `(shift, coefficient)` pairs; repeated shifts accumulate.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Polynomial)>) -> Self {
        let mut map: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (l, h) in terms {
            *map.entry(l).or_default() += &h;
        }
        let Some((&lo, _)) = map.iter().next() else {
            return DiffOp::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![Polynomial::zero(); (hi - lo + 1) as usize];
        for (l, h) in map {
            coeffs[(l - lo) as usize] = h;
        }
        DiffOp { low: lo, coeffs }.tightened()
    }

    fn tightened(mut self) -> Self {
        while self.coeffs.last().is_some_and(Polynomial::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|h| h.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Tight `(s, r)`: lowest and highest shifts with nonzero coefficient.
    pub fn genre(&self) -> Result<(i64, i64)> {
        if self.is_zero() {
            return Err(Error::UndefinedGenre);
        }
        Ok((self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    /// `r - s`.
    pub fn order(&self) -> Result<i64> {
        self.genre().map(|(s, r)| r - s)
    }

    /// Coefficient `h_l`, zero outside the genre.
    pub fn coeff(&self, l: i64) -> Polynomial {
        let idx = l - self.low;
        if idx < 0 {
            return Polynomial::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Polynomial)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, h)| !h.is_zero())
            .map(move |(i, h)| (self.low + i as i64, h))
    }

    /// `sum_l h_l(x) p(x + l)`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (l, h) in self.terms() {
            acc += &(h * &p.shift(&int(l)));
        }
        acc
    }

    /// `self o other`: first `other`, then `self`.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        if self.is_zero() || other.is_zero() {
            return DiffOp::zero();
        }
        let mut coeffs = vec![Polynomial::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, h) in self.coeffs.iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let l = int(self.low + i as i64);
            for (j, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(h * &g.shift(&l));
            }
        }
        DiffOp {
            low: self.low + other.low,
            coeffs,
        }
        .tightened()
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp {
            low: self.low,
            coeffs: self.coeffs.iter().map(|h| h.scale(c)).collect(),
        }
        .tightened()
    }

    /// Left multiplication by the polynomial `q(x)`.
    pub fn mul_poly(&self, q: &Polynomial) -> DiffOp {
        DiffOp {
            low: self.low,
            coeffs: self.coeffs.iter().map(|h| h * q).collect(),
        }
        .tightened()
    }

    fn combine(&self, other: &DiffOp, sign: &Rational) -> DiffOp {
        let terms = self
            .terms()
            .map(|(l, h)| (l, h.clone()))
            .chain(other.terms().map(|(l, h)| (l, h.scale(sign))))
            .collect::<Vec<_>>();
        DiffOp::from_terms(terms)
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        self.combine(rhs, &int(1))
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self.combine(rhs, &int(-1))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(l, h)| format!("[{h}]s_{l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Lazily computed powers `D^0, D^1, ...` of a fixed operator, shared across
/// threads.
pub struct OperatorPowers {
    base: DiffOp,
    powers: Mutex<Vec<DiffOp>>,
}

impl OperatorPowers {
    pub fn new(base: DiffOp) -> Self {
        OperatorPowers {
            base,
            powers: Mutex::new(vec![DiffOp::identity()]),
        }
    }

    pub fn base(&self) -> &DiffOp {
        &self.base
    }

    pub fn power(&self, k: usize) -> DiffOp {
        let mut powers = self.powers.lock().expect("operator power cache poisoned");
        while powers.len() <= k {
            let next = self.base.compose(powers.last().unwrap());
            powers.push(next);
        }
        powers[k].clone()
    }

    /// `P(D) = sum_j a_j D^j`.
    pub fn poly_of_op(&self, p: &Polynomial) -> DiffOp {
        let mut terms: Vec<(i64, Polynomial)> = Vec::new();
        for (j, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let dj = self.power(j);
            terms.extend(dj.terms().map(|(l, h)| (l, h.scale(a))));
        }
        DiffOp::from_terms(terms)
    }
}

/// `P(D)` with `D^0` the identity.
pub fn poly_of_op(p: &Polynomial, d: &DiffOp) -> DiffOp {
    OperatorPowers::new(d.clone()).poly_of_op(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn shift_applies() {
        assert_eq!(DiffOp::shift(1).apply(&Polynomial::x()), Polynomial::from_ints(&[1, 1]));
        assert!(DiffOp::zero().apply(&Polynomial::x()).is_zero());
    }

    #[test]
    fn shifts_cancel() {
        assert_eq!(DiffOp::shift(1).compose(&DiffOp::shift(-1)), DiffOp::shift(0));
    }

    #[test]
    fn x_shift_composition() {
        let xs1 = DiffOp::from_terms([(1, Polynomial::x())]);
        let got = xs1.compose(&DiffOp::shift(1));
        assert_eq!(got, DiffOp::from_terms([(2, Polynomial::x())]));
        for k in 0..=3 {
            let mono = Polynomial::monomial(int(1), k);
            assert_eq!(got.apply(&mono), xs1.apply(&DiffOp::shift(1).apply(&mono)));
        }
    }

    #[test]
    fn compose_with_identity() {
        let d = DiffOp::from_terms([(-1, Polynomial::x()), (2, Polynomial::from_ints(&[3, 0, 1]))]);
        assert_eq!(d.compose(&DiffOp::identity()), d);
    }

    #[test]
    fn poly_of_op_examples() {
        let d = DiffOp::from_terms([(-1, Polynomial::x()), (1, Polynomial::one())]);
        assert_eq!(poly_of_op(&Polynomial::x(), &d), d);
        assert_eq!(poly_of_op(&Polynomial::from_ints(&[0, 0, 1]), &DiffOp::shift(1)), DiffOp::shift(2));
        assert_eq!(
            poly_of_op(&Polynomial::constant(rat(3, 2)), &d),
            DiffOp::identity().scale(&rat(3, 2))
        );
    }

    #[test]
    fn genre_tight() {
        assert_eq!(DiffOp::identity().genre().unwrap(), (0, 0));
        assert_eq!(DiffOp::zero().genre(), Err(Error::UndefinedGenre));
        let d = &DiffOp::delta() - &DiffOp::delta();
        assert!(d.is_zero());
        let d = DiffOp::from_terms([(-2, Polynomial::zero()), (1, Polynomial::x())]);
        assert_eq!(d.genre().unwrap(), (1, 1));
    }

    #[test]
    fn differences() {
        let p = Polynomial::from_ints(&[0, 0, 1]);
        assert_eq!(DiffOp::delta().apply(&p), Polynomial::from_ints(&[1, 2]));
        assert_eq!(DiffOp::nabla().apply(&p), Polynomial::from_ints(&[-1, 2]));
    }
}
