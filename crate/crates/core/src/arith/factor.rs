use std::fmt;

use num_integer::Integer;
use num_prime::nt_funcs::{factorize64, is_prime64};
use serde::{Serialize, Serializer};

use crate::error::{GbsError, Result};

/// Strictly increasing list of primes that every label of an instance is
/// factored over.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PrimeBasis {
    primes: Vec<u64>,
}

impl PrimeBasis {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        primes.sort_unstable();
        primes.dedup();
        if let Some(&p) = primes.iter().find(|&&p| !is_prime64(p)) {
            return Err(GbsError::DimensionMismatch(format!("{p} is not prime")));
        }
        Ok(PrimeBasis { primes })
    }

    /// Basis made of every prime dividing at least one of `values`.
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut primes = Vec::new();
        for v in values {
            primes.extend(factorize64(v.unsigned_abs()).into_keys());
        }
        primes.sort_unstable();
        primes.dedup();
        PrimeBasis { primes }
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    /// Exponent vector of `n` over the basis together with the cofactor
    /// coprime to it.
    pub fn valuations(&self, n: u64) -> (Vec<u32>, u64) {
        let mut rest = n;
        let exps = self
            .primes
            .iter()
            .map(|&p| {
                let mut k = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    k += 1;
                }
                k
            })
            .collect();
        (exps, rest)
    }
}

/// A nonzero integer written as `sign * unit * prod p_l^exponents_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    pub sign: i8,
    pub unit: u64,
    pub exponents: Vec<u32>,
    basis: PrimeBasis,
}

pub fn factor(n: i64, basis: &PrimeBasis) -> Result<FactoredInt> {
    if n == 0 {
        return Err(GbsError::ZeroLabel);
    }
    let (exponents, unit) = basis.valuations(n.unsigned_abs());
    Ok(FactoredInt { sign: if n < 0 { -1 } else { 1 }, unit, exponents, basis: basis.clone() })
}

/// `a | b` over the integers. Signs never affect divisibility.
pub fn divides(a: &FactoredInt, b: &FactoredInt) -> Result<bool> {
    if a.basis != b.basis {
        return Err(GbsError::BasisMismatch);
    }
    Ok(b.unit.is_multiple_of(a.unit) && a.exponents.iter().zip(&b.exponents).all(|(x, y)| x <= y))
}

impl FactoredInt {
    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn value(&self) -> Option<i128> {
        let mut acc = i128::from(self.unit);
        for (&p, &k) in self.basis.primes.iter().zip(&self.exponents) {
            acc = acc.checked_mul(i128::from(p).checked_pow(k)?)?;
        }
        Some(acc * i128::from(self.sign))
    }

    pub fn to_rational(&self) -> FactoredRational {
        FactoredRational {
            sign: self.sign,
            num_unit: self.unit,
            den_unit: 1,
            exponents: self.exponents.iter().map(|&k| i64::from(k)).collect(),
            basis: self.basis.clone(),
        }
    }
}

/// A nonzero rational `sign * num_unit / den_unit * prod p_l^exponents_l`
/// with signed exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    pub sign: i8,
    pub num_unit: u64,
    pub den_unit: u64,
    pub exponents: Vec<i64>,
    basis: PrimeBasis,
}

impl FactoredRational {
    pub fn one(basis: &PrimeBasis) -> Self {
        FactoredRational { sign: 1, num_unit: 1, den_unit: 1, exponents: vec![0; basis.len()], basis: basis.clone() }
    }

    pub fn from_ratio(num: i64, den: i64, basis: &PrimeBasis) -> Result<Self> {
        let n = factor(num, basis)?.to_rational();
        let d = factor(den, basis)?.to_rational();
        n.div(&d)
    }

    pub fn basis(&self) -> &PrimeBasis {
        &self.basis
    }

    pub fn mul(&self, other: &FactoredRational) -> Result<Self> {
        if self.basis != other.basis {
            return Err(GbsError::BasisMismatch);
        }
        let num = u128::from(self.num_unit) * u128::from(other.num_unit);
        let den = u128::from(self.den_unit) * u128::from(other.den_unit);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        let narrow = |x: u128| u64::try_from(x).map_err(|_| GbsError::Overflow("rational unit"));
        Ok(FactoredRational {
            sign: self.sign * other.sign,
            num_unit: narrow(num)?,
            den_unit: narrow(den)?,
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
            basis: self.basis.clone(),
        })
    }

    pub fn inv(&self) -> Self {
        FactoredRational {
            sign: self.sign,
            num_unit: self.den_unit,
            den_unit: self.num_unit,
            exponents: self.exponents.iter().map(|k| -k).collect(),
            basis: self.basis.clone(),
        }
    }

    pub fn div(&self, other: &FactoredRational) -> Result<Self> {
        self.mul(&other.inv())
    }

    pub fn is_integer(&self) -> bool {
        self.den_unit == 1 && self.exponents.iter().all(|&k| k >= 0)
    }

    /// `|q| = 1`.
    pub fn is_unit(&self) -> bool {
        self.num_unit == 1 && self.den_unit == 1 && self.exponents.iter().all(|&k| k == 0)
    }

    pub fn to_int(&self) -> Option<FactoredInt> {
        if !self.is_integer() {
            return None;
        }
        Some(FactoredInt {
            sign: self.sign,
            unit: self.num_unit,
            exponents: self.exponents.iter().map(|&k| k as u32).collect(),
            basis: self.basis.clone(),
        })
    }

    /// Numerator and denominator in lowest terms, denominator positive.
    pub fn to_fraction(&self) -> Option<(i128, i128)> {
        let mut num = i128::from(self.num_unit);
        let mut den = i128::from(self.den_unit);
        for (&p, &k) in self.basis.primes.iter().zip(&self.exponents) {
            let pk = i128::from(p).checked_pow(k.unsigned_abs() as u32)?;
            if k >= 0 {
                num = num.checked_mul(pk)?;
            } else {
                den = den.checked_mul(pk)?;
            }
        }
        Some((num * i128::from(self.sign), den))
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_fraction() {
            Some((n, 1)) => write!(f, "{n}"),
            Some((n, d)) => write!(f, "{n}/{d}"),
            None => write!(f, "<overflow>"),
        }
    }
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2357() -> PrimeBasis {
        PrimeBasis::new(vec![2, 3, 5, 7]).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f = factor(30, &b2357()).unwrap();
        assert_eq!((f.sign, f.unit, f.exponents.clone()), (1, 1, vec![1, 1, 1, 0]));
        let f = factor(-14, &b2357()).unwrap();
        assert_eq!((f.sign, f.unit, f.exponents.clone()), (-1, 1, vec![1, 0, 0, 1]));
        let f = factor(22, &b2357()).unwrap();
        assert_eq!((f.sign, f.unit, f.exponents.clone()), (1, 11, vec![1, 0, 0, 0]));
        assert_eq!(factor(0, &b2357()), Err(GbsError::ZeroLabel));
    }

    #[test]
    fn divides_examples() {
        let b = b2357();
        let f = |n| factor(n, &b).unwrap();
        assert!(divides(&f(10), &f(30)).unwrap());
        assert!(!divides(&f(10), &f(24)).unwrap());
        let q = FactoredRational::from_ratio(4, 5, &b).unwrap();
        let prod = f(30).to_rational().mul(&q).unwrap().to_int().unwrap();
        assert_eq!(prod.value(), Some(24));
        assert!(divides(&f(6), &prod).unwrap());
    }

    #[test]
    fn basis_mismatch() {
        let a = factor(2, &b2357()).unwrap();
        let b = factor(2, &PrimeBasis::new(vec![2]).unwrap()).unwrap();
        assert_eq!(divides(&a, &b), Err(GbsError::BasisMismatch));
    }

    #[test]
    fn rational_display_and_integrality() {
        let b = b2357();
        let q = FactoredRational::from_ratio(15, 6, &b).unwrap();
        assert_eq!(q.to_string(), "5/2");
        assert!(!q.is_integer());
        let r = q.mul(&FactoredRational::from_ratio(8, 10, &b).unwrap()).unwrap();
        assert_eq!(r.to_string(), "2");
        assert!(r.is_integer() && !r.is_unit());
        assert!(FactoredRational::from_ratio(-22, 22, &b).unwrap().is_unit());
    }

    #[test]
    fn basis_from_values() {
        let b = PrimeBasis::from_values([7, 30, 6, 15, 10, 8]);
        assert_eq!(b.primes(), &[2, 3, 5, 7]);
        assert!(PrimeBasis::new(vec![4]).is_err());
    }
}
