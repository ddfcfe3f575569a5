//! Truncated power series in `t = q^{-s}` and Euler factors.

use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `c_0 + c_1 t + ... + c_D t^D + O(t^{D+1})`, always holding exactly `D + 1`
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// Pads with zeros or truncates so that exactly `order + 1` coefficients
    /// remain.
    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> TruncatedSeries {
        coeffs.resize(order + 1, Scalar::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[k - i].is_zero())
                    .map(|i| self.coeffs[i].mul(&other.coeffs[k - i]))
                    .sum()
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Multiplies by the geometric series `1 / (1 - c t)`.
    pub fn mul_geometric(&self, c: &Scalar) -> TruncatedSeries {
        let mut coeffs = self.coeffs.clone();
        for k in 1..coeffs.len() {
            let carry = c.mul(&coeffs[k - 1]);
            coeffs[k] = coeffs[k].add(&carry);
        }
        TruncatedSeries { coeffs }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let text = c.to_string();
            let needs_parens = k > 0 && (text.contains(' ') || text.contains('/'));
            let body = if needs_parens { format!("({text})") } else { text };
            match k {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}*t")?,
                _ => write!(f, "{body}*t^{k}")?,
            }
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `prod_i 1 / (1 - c_i t)` given by its reciprocal roots `c_i`.
#[derive(Clone, Debug, Default)]
pub struct EulerFactor {
    roots: Vec<Scalar>,
}

impl EulerFactor {
    pub fn new(roots: Vec<Scalar>) -> Result<EulerFactor> {
        if let Some(i) = roots.iter().position(Scalar::is_zero) {
            return Err(Error::InvalidCharacter(format!("Euler root {i} is zero")));
        }
        Ok(EulerFactor { roots })
    }

    pub fn trivial() -> EulerFactor {
        EulerFactor { roots: Vec::new() }
    }

    pub fn roots(&self) -> &[Scalar] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Multiset equality of the roots.
    pub fn same_roots(&self, other: &EulerFactor) -> bool {
        if self.roots.len() != other.roots.len() {
            return false;
        }
        let mut remaining: Vec<&Scalar> = other.roots.iter().collect();
        for r in &self.roots {
            match remaining.iter().position(|s| *s == r) {
                Some(i) => {
                    remaining.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

impl PartialEq for EulerFactor {
    fn eq(&self, other: &Self) -> bool {
        self.same_roots(other)
    }
}

impl fmt::Display for EulerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.roots.is_empty() {
            return write!(f, "1");
        }
        for (i, r) in self.roots.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            let text = r.to_string();
            if text.contains(' ') {
                write!(f, "1/(1 - ({text})*t)")?;
            } else {
                write!(f, "1/(1 - {text}*t)")?;
            }
        }
        Ok(())
    }
}

/// Expands `prod_i 1/(1 - c_i t)` through `t^order`; the coefficient of
/// `t^k` is the complete homogeneous polynomial `h_k` of the roots.
pub fn euler_expand(factor: &EulerFactor, order: usize) -> TruncatedSeries {
    factor
        .roots
        .iter()
        .fold(TruncatedSeries::one(order), |acc, c| acc.mul_geometric(c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesComparison {
    Equal,
    Mismatch(usize),
}

/// Exact coefficientwise comparison through `t^order`.
pub fn series_equal(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
    order: usize,
) -> Result<SeriesComparison> {
    let available = a.order().min(b.order());
    if available < order {
        return Err(Error::InsufficientOrder { requested: order, available });
    }
    Ok((0..=order)
        .find(|&k| a.coeffs[k] != b.coeffs[k])
        .map_or(SeriesComparison::Equal, SeriesComparison::Mismatch))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Scalar {
        Scalar::var(name)
    }

    #[test]
    fn empty_product_is_one() {
        let s = euler_expand(&EulerFactor::trivial(), 5);
        assert_eq!(s, TruncatedSeries::one(5));
        assert_eq!(
            s.to_string(),
            "1 + 0*t + 0*t^2 + 0*t^3 + 0*t^4 + 0*t^5 + O(t^6)"
        );
    }

    #[test]
    fn single_root_is_geometric() {
        let c = v("c");
        let s = euler_expand(&EulerFactor::new(vec![c.clone()]).unwrap(), 3);
        for k in 0..=3 {
            assert_eq!(*s.coeff(k), c.pow(k as i64).unwrap());
        }
    }

    #[test]
    fn two_roots_against_brute_force_product() {
        let (c1, c2) = (v("c1"), v("c2"));
        let geo = |c: &Scalar| {
            TruncatedSeries::from_coeffs(
                vec![Scalar::one(), c.clone(), c.mul(c)],
                2,
            )
        };
        let brute = geo(&c1).mul(&geo(&c2));
        let s = euler_expand(&EulerFactor::new(vec![c1.clone(), c2.clone()]).unwrap(), 2);
        assert_eq!(s, brute);
        let expected = c1.mul(&c1).add(&c1.mul(&c2)).add(&c2.mul(&c2));
        assert_eq!(*s.coeff(2), expected);
    }

    #[test]
    fn comparison() {
        let t1 = TruncatedSeries::from_coeffs(vec![Scalar::one(), Scalar::one()], 1);
        let t2 = TruncatedSeries::from_coeffs(vec![Scalar::one(), Scalar::from_int(2)], 1);
        assert_eq!(series_equal(&t1, &t1, 1), Ok(SeriesComparison::Equal));
        assert_eq!(series_equal(&t1, &t2, 1), Ok(SeriesComparison::Mismatch(1)));
        assert_eq!(
            series_equal(&t1, &t2, 2),
            Err(Error::InsufficientOrder { requested: 2, available: 1 })
        );
        let c = v("c");
        let geo = TruncatedSeries::from_coeffs(
            (0..=3).map(|k| c.pow(k).unwrap()).collect(),
            3,
        );
        let e = euler_expand(&EulerFactor::new(vec![c]).unwrap(), 3);
        assert_eq!(series_equal(&e, &geo, 3), Ok(SeriesComparison::Equal));
    }

    #[test]
    fn root_multiset_equality_ignores_order() {
        let a = EulerFactor::new(vec![v("a"), v("b"), v("a")]).unwrap();
        let b = EulerFactor::new(vec![v("a"), v("a"), v("b")]).unwrap();
        let c = EulerFactor::new(vec![v("a"), v("b"), v("b")]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
